from fractions import Fraction as F

from hypothesis import given, settings
from hypothesis import strategies as st

from convgeom.bodies import BodyFamily, Circle, common_supporting_directions, geometry_from_bodies
from convgeom.core import (
    GroundSet,
    OrderingFamily,
    check_anti_exchange,
    check_axioms,
    check_closure_operator,
    closure_operator,
    geometry_from_orderings,
)
from convgeom.dimension import cdim, copoints, generating_orderings
from convgeom.ellipsoid import represent_ellipsoids, verify_isomorphism_ellipsoid
from convgeom.errors import InfiniteContactSuspected


@st.composite
def ordering_families(draw, max_n=6, max_m=3):
    n = draw(st.integers(1, max_n))
    m = draw(st.integers(1, max_m))
    orders = tuple(tuple(draw(st.permutations(range(n)))) for _ in range(m))
    return OrderingFamily(GroundSet.of_size(n), orders)


@given(ordering_families())
@settings(max_examples=80, deadline=None)
def test_generated_family_is_a_geometry(o):
    g = geometry_from_orderings(o)
    assert check_axioms(g.family)
    op = closure_operator(g)
    assert check_closure_operator(op, g.ground)
    assert check_anti_exchange(op, g.ground)


@given(ordering_families())
@settings(max_examples=80, deadline=None)
def test_cdim_bounded_by_order_count(o):
    g = geometry_from_orderings(o)
    d = cdim(g)
    assert 1 <= d <= o.m
    assert geometry_from_orderings(generating_orderings(g)) == g


@given(ordering_families())
@settings(max_examples=60, deadline=None)
def test_every_copoint_is_maximal_avoiding_its_point(o):
    g = geometry_from_orderings(o)
    members = g.family.members
    for c in copoints(g).copoints:
        assert not c.set >> c.attached & 1
        assert not any(m != c.set and m & c.set == c.set and not m >> c.attached & 1 for m in members)


@given(ordering_families(max_n=5))
@settings(max_examples=30, deadline=None)
def test_ellipsoid_representation_verifies(o):
    rep = represent_ellipsoids(o, F(5, 4))
    assert verify_isomorphism_ellipsoid(geometry_from_orderings(o), rep, samples=1000).ok


coord = st.fractions(min_value=-4, max_value=4, max_denominator=4)
radius = st.fractions(min_value=F(1, 4), max_value=3, max_denominator=4)


@given(st.lists(st.tuples(coord, coord, radius), min_size=2, max_size=4, unique=True))
@settings(max_examples=30, deadline=None)
def test_circle_families(specs):
    fam = BodyFamily(tuple(Circle((x, y), r) for x, y, r in specs))
    for i in range(fam.n):
        for j in range(i + 1, fam.n):
            assert len(common_supporting_directions(fam.bodies[i], fam.bodies[j])) <= 2
    try:
        g = geometry_from_bodies(fam)
    except InfiniteContactSuspected:
        return
    assert check_axioms(g.family)
