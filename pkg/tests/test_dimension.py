import random
from fractions import Fraction as F

import pytest

from convgeom.core import GroundSet, OrderingFamily, geometry_from_orderings, indices_of
from convgeom.dimension import (
    RationalPointConfig,
    cdim,
    copoints,
    crosspolytope_config,
    crosspolytope_geometry,
    generating_orderings,
    geometry_from_points,
    points_from_json,
    points_to_json,
    poset_width,
    verify_crosspolytope_copoints,
)
from convgeom.errors import DimensionCap, SchemaError

from oracles import brute_convex_sets, brute_min_generating, brute_width, random_orderings


def test_chain_has_one_copoint_per_element():
    g = geometry_from_orderings(OrderingFamily(GroundSet(("a", "b", "c")), ((0, 1, 2),)))
    poset = copoints(g)
    assert {(c.set, c.attached) for c in poset.copoints} == {(0b011, 2), (0b001, 1), (0, 0)}
    assert cdim(g) == 1


def test_width_against_brute_force():
    rng = random.Random(17)
    for _ in range(200):
        sets = list({rng.getrandbits(5) for _ in range(rng.randint(1, 9))})
        res = poset_width(sets)
        frozen = [frozenset(indices_of(s)) for s in sets]
        assert res.width == brute_width(frozen)
        assert sorted(s for c in res.chains for s in c) == sorted(set(sets))


def test_cdim_is_minimum_number_of_orders():
    rng = random.Random(21)
    for _ in range(60):
        o = random_orderings(rng, max_n=4, max_m=3)
        g = geometry_from_orderings(o)
        sets = brute_convex_sets(o.orders, o.n)
        assert cdim(g) == brute_min_generating(sets, o.n)


def test_generating_orderings_round_trip():
    rng = random.Random(4)
    for _ in range(60):
        o = random_orderings(rng)
        g = geometry_from_orderings(o)
        go = generating_orderings(g)
        assert go.m == cdim(g) <= o.m
        assert geometry_from_orderings(go) == g


@pytest.mark.parametrize("n,expected", [(1, 2), (2, 4), (3, 8)])
def test_crosspolytope(n, expected):
    g = crosspolytope_geometry(n)
    assert cdim(g) == expected
    assert verify_crosspolytope_copoints(n)


@pytest.mark.slow
def test_crosspolytope_four():
    assert cdim(crosspolytope_geometry(4)) == 16


def test_crosspolytope_cap():
    with pytest.raises(DimensionCap):
        crosspolytope_geometry(5)


def test_crosspolytope_labels():
    cfg = crosspolytope_config(2)
    assert cfg.labels == ("0", "+e1", "-e1", "+e2", "-e2")
    assert cfg.points[3] == (F(0), F(1))


def test_collinear_points():
    cfg = RationalPointConfig(1, ((0,), (1,), (2,)), ("l", "m", "r"))
    g = geometry_from_points(cfg)
    # the middle point is in the hull of the ends
    assert set(g.family.members) == set(range(8)) - {0b101}


def test_square_with_centre():
    cfg = RationalPointConfig(2, ((0, 0), (2, 0), (2, 2), (0, 2), (1, 1)), ())
    g = geometry_from_points(cfg)
    assert not g.is_convex(0b00101)  # the diagonal passes through the centre
    assert g.is_convex(0b10101)
    assert g.is_convex(0b00011)
    assert not g.is_convex(0b00111)  # centre on the closed hypotenuse
    sets = {frozenset(indices_of(c)) for c in g.family.members}
    assert cdim(g) == brute_min_generating(sets, 5, limit=6)


def test_points_json_round_trip():
    cfg = RationalPointConfig(2, ((F(1, 3), 0), (1, 1)), ("p", "q"))
    assert points_from_json(points_to_json(cfg)) == cfg
    with pytest.raises(SchemaError):
        points_from_json({"dim": 2, "points": [{"coords": [1]}]})


def test_point_caps():
    with pytest.raises(DimensionCap):
        geometry_from_points(RationalPointConfig(7, ((0,) * 7,), ()))
    with pytest.raises(DimensionCap):
        geometry_from_points(RationalPointConfig(1, tuple((i,) for i in range(13)), ()))
