import math
from fractions import Fraction as F

from hypothesis import given
from hypothesis import strategies as st

from convgeom.exact import (
    as_fraction,
    convex_hull,
    fraction_str,
    in_convex_polygon,
    in_simplex,
    is_strictly_convex_ccw,
    orient,
    sign_sqrt,
    violated_edge,
)

small = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def test_as_fraction_forms():
    assert as_fraction("3/4") == F(3, 4)
    assert as_fraction(0.1) == F(0.1)
    assert fraction_str(F(6, 4)) == "3/2" and fraction_str(F(4, 2)) == "2"


@given(small, small, st.fractions(min_value=0, max_value=50, max_denominator=12))
def test_sign_sqrt_matches_high_precision(a, b, d):
    value = float(a) + float(b) * math.sqrt(float(d))
    got = sign_sqrt(a, b, d)
    if abs(value) > 1e-9:
        assert got == (1 if value > 0 else -1)
    # an exact zero needs a*a == b*b*d with opposite signs or both zero
    if got == 0:
        assert a * a == b * b * d


def test_hull_and_membership():
    pts = [(0, 0), (2, 0), (2, 2), (0, 2), (1, 1), (1, 0)]
    hull = convex_hull(pts)
    assert hull == [(0, 0), (2, 0), (2, 2), (0, 2)]
    assert in_convex_polygon((1, 0), hull)
    assert in_convex_polygon((F(1, 2), F(3, 2)), hull)
    assert not in_convex_polygon((F(5, 2), 1), hull)
    assert violated_edge((3, 1), hull) == (2, 0)


def test_degenerate_hulls():
    assert in_convex_polygon((1, 1), convex_hull([(0, 0), (2, 2)]))
    assert not in_convex_polygon((3, 3), convex_hull([(0, 0), (2, 2)]))
    assert in_convex_polygon((0, 0), [(0, 0)])
    assert not in_convex_polygon((0, 0), [])


@given(st.lists(st.tuples(small, small), min_size=1, max_size=12))
def test_hull_contains_its_points(pts):
    hull = convex_hull(pts)
    assert all(in_convex_polygon(p, hull) for p in pts)
    if len(hull) >= 3:
        assert is_strictly_convex_ccw(hull)


def test_strict_convexity():
    assert is_strictly_convex_ccw([(0, 0), (1, 0), (0, 1)])
    assert not is_strictly_convex_ccw([(0, 0), (0, 1), (1, 0)])
    assert not is_strictly_convex_ccw([(0, 0), (1, 0), (2, 0), (0, 1)])
    # pentagram order winds twice
    star = [(math.cos(4 * math.pi * k / 5), math.sin(4 * math.pi * k / 5)) for k in range(5)]
    assert not is_strictly_convex_ccw([(F(x), F(y)) for x, y in star])


def test_orient_sign():
    assert orient((0, 0), (1, 0), (0, 1)) == 1
    assert orient((0, 0), (1, 0), (2, 0)) == 0


def test_in_simplex():
    tri = [(F(0), F(0)), (F(2), F(0)), (F(0), F(2))]
    assert in_simplex((F(1, 2), F(1, 2)), tri) is True
    assert in_simplex((F(2), F(2)), tri) is False
    assert in_simplex((F(1), F(0)), [(F(0), F(0)), (F(2), F(0))]) is True
    assert in_simplex((F(1), F(1)), [(F(0), F(0)), (F(2), F(0))]) is False
    assert in_simplex((F(1), F(0)), [(F(0), F(0)), (F(1), F(0)), (F(2), F(0))]) is None
