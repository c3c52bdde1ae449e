import math
import random
from fractions import Fraction as F

import pytest

from convgeom.bodies import BodyFamily, Polygon, geometry_from_bodies
from convgeom.core import GroundSet, OrderingFamily, free_geometry, geometry_from_orderings
from convgeom.errors import LinePropertyViolated
from convgeom.exact import convex_hull
from convgeom.planar import (
    SHAPES,
    Representation,
    _pairs,
    build_pinched,
    check_sandwich,
    default_epsilon,
    disjoint_property,
    float_frame,
    line_property_margin,
    rational_frame,
    represent_planar,
    representation_from_json,
    representation_to_json,
    verify_isomorphism_planar,
)

from oracles import random_orderings

ABC = GroundSet(("a", "b", "c"))
CHAIN = OrderingFamily(ABC, ((0, 1, 2),))
SEGMENT = OrderingFamily(ABC, ((0, 1, 2), (2, 1, 0)))


@pytest.mark.parametrize("m,eps", [(3, 0.5), (6, 0.5), (4, 0.5), (12, (1 / math.cos(math.pi / 6) - 1) / 2)])
def test_default_epsilon(m, eps):
    assert default_epsilon(m) == pytest.approx(eps)


def test_rational_frame_is_exactly_unit():
    for m in (3, 5, 7, 8):
        fr = rational_frame(m)
        for (x, y), k in zip(fr.directions, range(1, m + 1)):
            assert x * x + y * y == 1
            assert abs(math.remainder(math.atan2(float(y), float(x)) - 2 * math.pi * k / m, 2 * math.pi)) < 1e-3
    assert rational_frame(4).directions == ((0, 1), (-1, 0), (0, -1), (1, 0))


def test_radii_formula():
    fr = rational_frame(3, F(1, 2))
    o = OrderingFamily(ABC, ((0, 1, 2), (0, 1, 2), (0, 1, 2)))
    pairs = _pairs(o, fr)
    # N = max(m, n) = 3
    assert pairs[0].rho1[0] == F(13, 12) and pairs[0].rho2[0] == F(7, 6)
    for p in pairs:
        assert all(a < b for a, b in zip(p.rho1, p.rho2))
    assert disjoint_property(pairs, fr)


def test_line_property_validated_exactly():
    fr, pairs = build_pinched(SEGMENT.padded(3), rational_frame(3))
    assert line_property_margin(pairs, fr) > 0
    fr, pairs = build_pinched(CHAIN.padded(4), rational_frame(4))
    assert line_property_margin(pairs, fr) > 0


def test_shrink_loop_and_strict_mode():
    o = OrderingFamily(ABC, ((0, 1, 2), (1, 2, 0), (2, 1, 0))).padded(8)
    with pytest.raises(LinePropertyViolated):
        build_pinched(o, rational_frame(8, 10), auto_shrink=False)
    fr, _ = build_pinched(o, rational_frame(8, 10))
    assert fr.epsilon < 10


def test_two_elements_free():
    o = OrderingFamily(GroundSet(("a", "b")), ((0, 1), (1, 0)))
    rep = represent_planar(o)
    assert rep.frame.m == 3
    assert geometry_from_bodies(rep.bodies) == free_geometry(o.ground)


@pytest.mark.parametrize("shape", SHAPES)
@pytest.mark.parametrize("orderings", [CHAIN, SEGMENT], ids=["chain", "segment"])
def test_all_shapes_verify(shape, orderings):
    rep = represent_planar(orderings, shape=shape)
    assert verify_isomorphism_planar(geometry_from_orderings(orderings), rep)
    assert check_sandwich(rep)


def test_float_mode():
    rep = represent_planar(SEGMENT, exact=False)
    assert not rep.frame.exact
    assert verify_isomorphism_planar(geometry_from_orderings(SEGMENT), rep)


def test_random_instances_exact():
    rng = random.Random(77)
    for _ in range(15):
        o = random_orderings(rng)
        rep = represent_planar(o)
        assert verify_isomorphism_planar(geometry_from_orderings(o), rep)
        assert check_sandwich(rep)


def test_adversarial_epsilon_breaks_isomorphism():
    # epsilon far beyond the halfplane property, validation bypassed
    o = OrderingFamily(ABC, ((0, 1, 2), (1, 2, 0), (2, 1, 0))).padded(8)
    fr = rational_frame(8, 10)
    pairs = _pairs(o, fr)
    assert line_property_margin(pairs, fr) < 0
    bodies = BodyFamily(tuple(Polygon(tuple(convex_hull(p.f1))) for p in pairs), ABC.elements)
    report = verify_isomorphism_planar(geometry_from_orderings(o), Representation(fr, o, tuple(pairs), "inner", bodies))
    assert not report.ok and report.witness == 0b001


def test_larger_m_requested():
    rep = represent_planar(CHAIN, m=5)
    assert rep.frame.m == 5 and rep.orderings.m == 5
    with pytest.raises(ValueError):
        represent_planar(CHAIN, m=2)
    with pytest.raises(ValueError):
        represent_planar(CHAIN, shape="blob")


def test_json_round_trip():
    for exact in (True, False):
        rep = represent_planar(SEGMENT, exact=exact)
        back = representation_from_json(representation_to_json(rep))
        assert back.pairs == rep.pairs and back.frame == rep.frame
        assert verify_isomorphism_planar(geometry_from_orderings(SEGMENT), back)


def test_float_frame_directions():
    fr = float_frame(4)
    assert fr.float_directions[0] == pytest.approx((0, 1))
