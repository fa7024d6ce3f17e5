"""
Input files and inline arguments of the command-line front end.

A file looks like

    {"points": [["0", "25/12"], ["16/73", "11/89"], ...],
     "weight": {"monomial": [32, 32]}}          or {"polynomial": "x^32*y^32+7"}

with every rational written as a string so nothing passes through a float.
"""

import json
import sys
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from src.brion.weights import Weight, parse_weight
from src.errors import InputError
from src.geometry.primitives import RatPoint2, format_rational, to_rational


@dataclass
class InputSpec:
    """Points and optional weight of one command invocation"""
    points: List[RatPoint2] = field(default_factory=list)
    weight: Optional[Weight] = None
    source: str = "inline"

    def to_dict(self) -> Dict:
        """Convert to dictionary for JSON serialization"""
        data = {"points": [[format_rational(p.x), format_rational(p.y)] for p in self.points]}
        if self.weight is not None:
            if self.weight.is_monomial():
                data["weight"] = {"monomial": list(self.weight.monomials()[0])}
            else:
                data["weight"] = {"polynomial": str(self.weight)}
        return data

    @classmethod
    def from_dict(cls, data: Dict, source: str = "inline") -> "InputSpec":
        if not isinstance(data, dict) or "points" not in data:
            raise InputError(f"{source}: expected an object with a 'points' list")
        points = [parse_point(p) for p in data["points"]]
        weight = None
        if data.get("weight") is not None:
            weight = parse_weight_spec(data["weight"])
        return cls(points, weight, source)


def parse_point(raw) -> RatPoint2:
    if isinstance(raw, (list, tuple)) and len(raw) == 2:
        return RatPoint2(to_rational(raw[0]), to_rational(raw[1]))
    raise InputError(f"a point is a pair of rationals, got {raw!r}")


def parse_points_inline(text: str) -> List[RatPoint2]:
    """'0,0; 1,0; 1/2,3' -> points"""
    points = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        parts = [p.strip() for p in chunk.split(",")]
        if len(parts) != 2:
            raise InputError(f"cannot read point {chunk!r}; use 'x,y' separated by ';'")
        points.append(parse_point(parts))
    return points


def parse_multidegree(text: str) -> Tuple[int, int]:
    try:
        m1, m2 = (int(part) for part in text.split(","))
    except ValueError as e:
        raise InputError(f"multidegree must look like 'a,b', got {text!r}") from e
    if m1 < 0 or m2 < 0:
        raise InputError(f"multidegree must be non-negative, got {text!r}")
    return m1, m2


def parse_weight_spec(raw: Dict) -> Weight:
    if not isinstance(raw, dict):
        raise InputError(f"weight must be an object, got {raw!r}")
    if "monomial" in raw:
        m = raw["monomial"]
        if (not isinstance(m, list) or len(m) != 2
                or not all(isinstance(e, int) and not isinstance(e, bool) for e in m)):
            raise InputError(f"monomial weight must be [a, b], got {m!r}")
        return Weight.monomial(*parse_multidegree(f"{m[0]},{m[1]}"))
    if "polynomial" in raw:
        return parse_weight(str(raw["polynomial"]))
    raise InputError(f"weight needs a 'monomial' or 'polynomial' entry, got {sorted(raw)}")


def load_input(path: str) -> InputSpec:
    """Read an input file; '-' reads standard input"""
    try:
        if path == "-":
            data = json.load(sys.stdin)
        else:
            with open(path, "r", encoding="utf-8") as f:
                data = json.load(f)
    except OSError as e:
        raise InputError(f"cannot read {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise InputError(f"{path} is not valid JSON: {e}") from e
    # json floats would already be inexact; to_rational rejects them
    return InputSpec.from_dict(data, source=path)
