"""
Command-line front end: count, sum-monomial, sum-poly, ehrhart,
ehrhart-coeff, enumerate and vertices.

Results go to stdout as exact decimal or "num/den" strings; errors go to
stderr and map to the exit status carried by the exception.
"""

import argparse
import json
import logging
import sys
from typing import List, Optional

from config import ORACLE_CONFIG
from src.brion.summation import number_points_polygon, sum_monomial_polygon, sum_polynomial_polygon
from src.brion.weights import Weight, parse_weight
from src.cli.inputs import InputSpec, load_input, parse_multidegree, parse_points_inline
from src.ehrhart.euler_maclaurin import coeff_t_ehrhart, ehrhart_quasipolynomial
from src.errors import ConsistencyError, InputError, LatticeSumError
from src.geometry.polygon import Polygon, convex_hull, enumerate_lattice_points
from src.geometry.primitives import format_rational

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="latticesum",
        description="Exact lattice point sums and weighted Ehrhart quasi-polynomials of rational polygons",
    )
    common = argparse.ArgumentParser(add_help=False)
    source = common.add_mutually_exclusive_group()
    source.add_argument("--input", metavar="FILE", help="JSON input file, '-' for stdin")
    source.add_argument("--points", metavar="POINTS", help="inline points 'x,y;x,y;...'")
    common.add_argument("--threads", type=int, default=None,
                        help="worker processes for per-vertex work (0 = physical cores)")
    common.add_argument("--budget", type=int, default=None,
                        help="bounding-box cell budget of the enumeration oracle")
    common.add_argument("--verbose", action="store_true", help="debug logging on stderr")

    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("count", parents=[common], help="number of lattice points")

    p = sub.add_parser("sum-monomial", parents=[common], help="sum of x^a*y^b")
    p.add_argument("--m", metavar="A,B", help="multidegree")
    p.add_argument("--oracle-check", action="store_true", help="verify by enumeration")

    p = sub.add_parser("sum-poly", parents=[common], help="sum of a polynomial")
    p.add_argument("--h", metavar="EXPR", help="polynomial such as 'x^32*y^32+7'")
    p.add_argument("--oracle-check", action="store_true", help="verify by enumeration")

    p = sub.add_parser("ehrhart", parents=[common], help="weighted Ehrhart quasi-polynomial")
    p.add_argument("--m", metavar="A,B", help="multidegree")
    p.add_argument("--h", metavar="EXPR", help="polynomial weight")
    p.add_argument("--json", action="store_true", help="structured output")
    p.add_argument("--eval", type=int, metavar="T", help="print the value at t = T")

    p = sub.add_parser("ehrhart-coeff", parents=[common], help="one coefficient E_i(t)")
    p.add_argument("--i", type=int, required=True, metavar="N", help="power of t")
    p.add_argument("--m", metavar="A,B", help="multidegree")
    p.add_argument("--h", metavar="EXPR", help="polynomial weight")
    p.add_argument("--json", action="store_true", help="structured output")
    p.add_argument("--eval", type=int, metavar="T", help="print the value at t = T")

    sub.add_parser("enumerate", parents=[common], help="list lattice points")
    sub.add_parser("vertices", parents=[common], help="canonical counter-clockwise vertices")
    return parser


class LatticeSumApp:
    """
    Dispatches parsed arguments to the library and prints exact results
    """

    def __init__(self):
        self.handlers = {
            "count": self.cmd_count,
            "sum-monomial": self.cmd_sum_monomial,
            "sum-poly": self.cmd_sum_poly,
            "ehrhart": self.cmd_ehrhart,
            "ehrhart-coeff": self.cmd_ehrhart_coeff,
            "enumerate": self.cmd_enumerate,
            "vertices": self.cmd_vertices,
        }

    def run(self, argv: Optional[List[str]] = None) -> int:
        """Parse ``argv``, run one command and return its exit status"""
        try:
            args = build_parser().parse_args(argv)
        except SystemExit as e:
            return e.code if isinstance(e.code, int) else 2

        if args.verbose:
            logging.getLogger().setLevel(logging.DEBUG)

        try:
            self.handlers[args.command](args)
        except LatticeSumError as e:
            logger.debug("%s failed: %r", args.command, e)
            print(f"error: {e}", file=sys.stderr)
            return e.exit_code
        return 0

    def _emit(self, text) -> None:
        print(text, file=sys.stdout)

    def _input(self, args) -> InputSpec:
        if args.input:
            return load_input(args.input)
        if args.points:
            return InputSpec(parse_points_inline(args.points))
        raise InputError("no input: pass --input FILE or --points 'x,y;...'")

    def _polygon(self, spec: InputSpec) -> Polygon:
        return convex_hull(spec.points)

    def _weight(self, args, spec: InputSpec) -> Weight:
        if getattr(args, "m", None):
            return Weight.monomial(*parse_multidegree(args.m))
        if getattr(args, "h", None):
            return parse_weight(args.h)
        if spec.weight is not None:
            return spec.weight
        raise InputError("no weight: pass --m A,B, --h EXPR or a 'weight' entry in the input")

    def _budget(self, args) -> int:
        return args.budget if args.budget is not None else ORACLE_CONFIG["cell_budget"]

    def _oracle_check(self, args, polygon: Polygon, weight: Weight, value) -> None:
        if not getattr(args, "oracle_check", False):
            return
        budget = self._budget(args)
        if polygon.bounding_box_cells() > budget:
            logger.warning("oracle refused: %d cells over budget %d",
                           polygon.bounding_box_cells(), budget)
        points = enumerate_lattice_points(polygon, budget)
        expected = sum((weight.evaluate(x, y) for x, y in points), 0)
        if expected != value:
            raise ConsistencyError(f"oracle mismatch: enumeration gives {format_rational(expected)}, "
                                   f"summation gives {format_rational(value)}")
        logger.debug("oracle agrees on %d points", len(points))

    def _check_eval(self, args) -> None:
        if args.eval is not None and args.eval < 0:
            raise InputError(f"--eval needs t >= 0, got {args.eval}")

    def cmd_count(self, args) -> None:
        """Print the number of lattice points"""
        polygon = self._polygon(self._input(args))
        self._emit(number_points_polygon(polygon, args.threads))

    def cmd_sum_monomial(self, args) -> None:
        """Print the sum of one monomial; other weights are rejected"""
        spec = self._input(args)
        weight = self._weight(args, spec)
        if not weight.is_monomial():
            raise InputError(f"sum-monomial needs a monomial weight, got {weight}")
        polygon = self._polygon(spec)
        value = sum_monomial_polygon(polygon, weight.monomials()[0], args.threads)
        self._oracle_check(args, polygon, weight, value)
        self._emit(value)

    def cmd_sum_poly(self, args) -> None:
        """Print the exact sum of a polynomial weight"""
        spec = self._input(args)
        weight = self._weight(args, spec)
        polygon = self._polygon(spec)
        value = sum_polynomial_polygon(polygon, weight, args.threads)
        self._oracle_check(args, polygon, weight, value)
        self._emit(format_rational(value))

    def cmd_ehrhart(self, args) -> None:
        """Print the quasi-polynomial as text or JSON, or its value at --eval"""
        spec = self._input(args)
        weight = self._weight(args, spec)
        self._check_eval(args)
        quasi = ehrhart_quasipolynomial(self._polygon(spec), weight)
        if args.eval is not None:
            self._emit(format_rational(quasi.evaluate(args.eval)))
        elif args.json:
            self._emit(json.dumps(quasi.to_dict()))
        else:
            self._emit(str(quasi))

    def cmd_ehrhart_coeff(self, args) -> None:
        """Print one periodic coefficient, computed without the others"""
        spec = self._input(args)
        weight = self._weight(args, spec)
        self._check_eval(args)
        coefficient = coeff_t_ehrhart(args.i, self._polygon(spec), weight)
        if args.eval is not None:
            self._emit(format_rational(coefficient.evaluate(args.eval)))
        elif args.json:
            self._emit(json.dumps({"power": args.i, "terms": coefficient.to_json()}))
        else:
            self._emit(str(coefficient))

    def cmd_enumerate(self, args) -> None:
        """List lattice points column by column, within the oracle budget"""
        polygon = self._polygon(self._input(args))
        for x, y in enumerate_lattice_points(polygon, self._budget(args)):
            self._emit(f"{x} {y}")

    def cmd_vertices(self, args) -> None:
        """List the hull vertices counter-clockwise from the canonical start"""
        polygon = self._polygon(self._input(args))
        for v in polygon.vertices:
            self._emit(f"{format_rational(v.x)} {format_rational(v.y)}")


def main(argv: Optional[List[str]] = None) -> int:
    """Run one command and return its exit status"""
    return LatticeSumApp().run(argv)
