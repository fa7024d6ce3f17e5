import json
import os
import sys
from fractions import Fraction

import numpy as np
import pytest

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if ROOT not in sys.path:
    sys.path.insert(0, ROOT)

from config import DATA_CONFIG, get_data_path  # noqa: E402
from src.cli.inputs import load_input  # noqa: E402
from src.errors import DegenerateHull  # noqa: E402
from src.geometry.polygon import convex_hull  # noqa: E402
from src.geometry.primitives import RatPoint2  # noqa: E402


def _points(name):
    return load_input(get_data_path(f"{name}.json")).points


@pytest.fixture(scope="session")
def golden():
    with open(get_data_path(DATA_CONFIG["golden_file"]), "r", encoding="utf-8") as f:
        return json.load(f)


@pytest.fixture(scope="session")
def square():
    return _points("square")


@pytest.fixture(scope="session")
def transsquare():
    return _points("transsquare")


@pytest.fixture(scope="session")
def example_p():
    return _points("P")


@pytest.fixture(scope="session")
def triangle_a():
    return _points("A")


@pytest.fixture(scope="session")
def large_a():
    return _points("largeA")


@pytest.fixture(scope="session")
def triangle_t():
    return _points("T")


@pytest.fixture
def rng():
    return np.random.default_rng(20070611)


def random_rational(rng, max_numerator=10, max_denominator=12):
    num = int(rng.integers(-max_numerator, max_numerator, endpoint=True))
    den = int(rng.integers(1, max_denominator, endpoint=True))
    return Fraction(num, den)


@pytest.fixture
def random_polygon():
    """Factory: hull of 3..8 random rational points, redrawn until non-degenerate"""
    def make(rng, max_numerator=10, max_denominator=12, integral=False):
        while True:
            count = int(rng.integers(3, 8, endpoint=True))
            if integral:
                points = [RatPoint2(int(rng.integers(-max_numerator, max_numerator, endpoint=True)),
                                    int(rng.integers(-max_numerator, max_numerator, endpoint=True)))
                          for _ in range(count)]
            else:
                points = [RatPoint2(random_rational(rng, max_numerator, max_denominator),
                                    random_rational(rng, max_numerator, max_denominator))
                          for _ in range(count)]
            try:
                return convex_hull(points)
            except DegenerateHull:
                continue
    return make
