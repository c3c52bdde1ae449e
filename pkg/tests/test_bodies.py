import math
import random
from fractions import Fraction as F

import numpy as np
import pytest

from convgeom.bodies import (
    BodyFamily,
    Circle,
    Ellipse,
    Polygon,
    SampledBoundary,
    body_closure_operator,
    cdim_upper_bound_check,
    common_supporting_directions,
    conv_closure,
    convex_position,
    distance_to_unit_disk,
    family_from_json,
    family_to_json,
    geometry_from_bodies,
    hausdorff_distance,
    hull_support,
    in_hull,
    polygon_halfplanes,
    semialgebraic_body,
    support,
    sweep_orderings,
)
from convgeom.core import check_anti_exchange, check_axioms, geometry_from_orderings
from convgeom.dimension import cdim
from convgeom.errors import (
    AlphaTooLarge,
    DegenerateIdentical,
    EmptySubset,
    InfiniteContactSuspected,
    SchemaError,
    ToleranceInconclusive,
)

from oracles import circle_tangent_count, random_body_family, random_circle

UNIT = Circle((0, 0), 1)
SQUARE = Polygon(((0, 0), (1, 0), (1, 1), (0, 1)))


def disks(*centers, r=1):
    return BodyFamily(tuple(Circle(c, r) for c in centers))


def test_support_values():
    assert support(UNIT, (0.6, 0.8)) == pytest.approx(1)
    assert support(Ellipse((0, 0), 2, 1), (1, 0)) == pytest.approx(2)
    assert support(SQUARE, (1, 0)) == pytest.approx(1)
    assert support(SQUARE, (-1, 0)) == pytest.approx(0)


def test_hull_support():
    fam = disks((0, 0), (3, 0))
    assert hull_support(fam, [0], (1, 0)) == pytest.approx(1)
    assert hull_support(fam, [0, 1], (1, 0)) == pytest.approx(4)
    assert hull_support(fam, [0, 1], (0, 1)) == pytest.approx(1)
    with pytest.raises(EmptySubset):
        hull_support(fam, [], (1, 0))


def test_in_hull_examples():
    fam = disks((0, 0), (2, 0))
    assert in_hull(Circle((0, 0), 1), fam, [0, 1]).inside
    assert in_hull(Circle((1, 0), 1), fam, [0, 1]).inside
    cert = in_hull(Circle((0, 3), 1), fam, [0, 1])
    assert not cert.inside
    assert cert.margin == pytest.approx(-3)
    assert cert.direction == pytest.approx((0, 1))


def test_in_hull_numeric_certificate():
    fam = BodyFamily((Ellipse((0, 0), 1, 1), Ellipse((4, 0), 1, 1)))
    assert in_hull(Ellipse((2, 0), 0.9, 0.5), fam, [0, 1]).inside
    cert = in_hull(Ellipse((2, 0.5), 1, 0.6), fam, [0, 1])
    assert not cert.inside and cert.margin == pytest.approx(-0.1, abs=1e-6)


def test_in_hull_tolerance_band():
    # tangent from inside: the margin is zero
    fam = BodyFamily((Ellipse((0, 0), 1, 1), Ellipse((4, 0), 1, 1)))
    with pytest.raises(ToleranceInconclusive):
        in_hull(Ellipse((2, 0), 1, 1), fam, [0, 1], mode="numeric")


def test_tangent_disk_exact():
    fam = disks((0, 0), (4, 0))
    assert in_hull(Circle((2, 0), 1), fam, [0, 1]).inside


def test_conv_closure_examples():
    fam = disks((0, 0), (4, 0), (2, F(1, 10)))
    assert conv_closure(fam, [0, 1, 2]) == {0, 1, 2}
    assert conv_closure(fam, []) == frozenset()
    # the third disk pokes 0.1 above the stadium of the first two
    assert conv_closure(fam, [0, 1]) == {0, 1}
    assert conv_closure(disks((0, 0), (4, 0), (2, 0)), [0, 1]) == {0, 1, 2}


def test_geometry_examples():
    g = geometry_from_bodies(disks((0, 0), (3, 0)))
    assert g.family.members == (0, 1, 2, 3)
    g = geometry_from_bodies(disks((0, 0), (2, 0), (4, 0)))
    assert set(g.family.members) == set(range(8)) - {0b101}
    g = geometry_from_bodies(BodyFamily((UNIT,)))
    assert g.family.members == (0, 1)


def test_identical_bodies_rejected():
    with pytest.raises(DegenerateIdentical):
        geometry_from_bodies(BodyFamily((UNIT, Circle((0, 0), 1))))


def test_polygons_sharing_a_vertex_have_infinite_contact():
    a = Polygon(((0, 0), (2, 0), (0, 2)))
    b = Polygon(((0, 0), (1, 0), (0, 1)))
    with pytest.raises(InfiniteContactSuspected):
        common_supporting_directions(a, b)


def test_circle_crossings():
    dirs = common_supporting_directions(UNIT, Circle((3, 0), 1))
    assert np.allclose(sorted(map(tuple, dirs)), [(0, -1), (0, 1)])
    assert common_supporting_directions(UNIT, Circle((0, 0), 2)) == []


def test_circle_crossings_match_analytic_count():
    rng = random.Random(8)
    for _ in range(300):
        a, b = random_circle(rng), random_circle(rng)
        if a == b:
            continue
        want = circle_tangent_count(tuple(map(float, a.center)), float(a.radius),
                                    tuple(map(float, b.center)), float(b.radius))
        got = common_supporting_directions(a, b)
        assert len(got) == want
        for u in got:
            assert float(a.support_many(np.array([u]))[0]) == pytest.approx(float(b.support_many(np.array([u]))[0]))


def _dense_sign_changes(b1, b2, grid=1 << 18):
    t = 2 * np.pi * np.arange(grid) / grid
    dirs = np.stack([np.cos(t), np.sin(t)], axis=1)
    diff = b1.support_many(dirs) - b2.support_many(dirs)
    s = np.sign(diff)
    return int(np.sum(s != np.roll(s, 1)))


def test_ellipse_crossings_against_dense_grid():
    rng = random.Random(12)
    for _ in range(40):
        e1 = Ellipse((rng.uniform(-2, 2), rng.uniform(-2, 2)), 2.5, rng.uniform(0.3, 1), rng.uniform(0, 3))
        e2 = Ellipse((rng.uniform(-2, 2), rng.uniform(-2, 2)), 2.5, rng.uniform(0.3, 1), rng.uniform(0, 3))
        got = common_supporting_directions(e1, e2)
        assert len(got) <= 4
        assert len(got) == _dense_sign_changes(e1, e2)


def test_exact_and_numeric_tiers_agree():
    sq = Polygon(((-1, -1), (1, -1), (1, 1), (-1, 1)))
    c = Circle((F(1, 2), 0), F(6, 5))
    exact = common_supporting_directions(sq, c)
    numeric = common_supporting_directions(SampledBoundary(tuple(map(float, v) for v in sq.vertices)), c)
    assert len(exact) == len(numeric)
    assert np.allclose(exact, numeric, atol=1e-8)


def test_sweep_two_circles():
    fam = disks((0, 0), (3, 0))
    sw = sweep_orderings(fam)
    assert sw.crossings == 2 and sw.orderings.m == 2
    assert set(sw.orderings.orders) == {(0, 1), (1, 0)}
    one = sweep_orderings(BodyFamily((UNIT,)))
    assert one.crossings == 0 and one.orderings.orders == ((0,),)


def test_sweep_three_circles_bound():
    fam = BodyFamily((Circle((0, 0), 1), Circle((3, 1), F(3, 2)), Circle((1, 4), F(1, 2))))
    sw = sweep_orderings(fam)
    assert sw.orderings.m <= 6
    assert geometry_from_orderings(sw.orderings) == geometry_from_bodies(fam)


def test_bound_check():
    r = cdim_upper_bound_check(disks((0, 0), (3, 0)))
    assert (r.k, r.bound, r.cdim, r.holds) == (2, 2, 2, True)
    r = cdim_upper_bound_check(BodyFamily((UNIT,)))
    assert r.skipped and r.holds and r.cdim == 1
    nested = cdim_upper_bound_check(BodyFamily((UNIT, Circle((0, 0), 2))))
    assert nested.k == 0 and nested.cdim == 1 and nested.holds


def test_random_families_are_geometries():
    rng = random.Random(30)
    for _ in range(8):
        fam = random_body_family(rng, max_n=4)
        g = geometry_from_bodies(fam)
        assert check_axioms(g.family)
        assert check_anti_exchange(body_closure_operator(fam), fam.ground)
        assert cdim(g) <= max(1, cdim_upper_bound_check(fam).bound)


def test_convex_position():
    corners = disks((0, 0), (10, 0), (10, 10), (0, 10))
    assert convex_position(corners, [0, 1, 2, 3])
    fam = BodyFamily((Circle((0, 0), 5), Circle((20, 0), 5), Circle((10, 17), 5), Circle((10, 6), 1)))
    assert not convex_position(fam, [0, 1, 2, 3])
    assert convex_position(fam, [0, 1])
    with pytest.raises(ValueError):
        convex_position(fam, [0])


def test_semialgebraic_square():
    sq = Polygon(((-1, -1), (1, -1), (1, 1), (-1, 1)))
    hp = polygon_halfplanes(sq)
    body = semialgebraic_body(hp, 1e-7, samples=2048)
    assert hausdorff_distance(body, sq) < 1e-3
    pts = np.array(body.points)
    assert np.all(np.abs(pts) <= 1)


def test_semialgebraic_oval_and_limit():
    tri = Polygon(((0, 0), (3, 0), (0, 3)))
    hp = polygon_halfplanes(tri)
    # the product peaks at the centroid (1, 1) where each factor is 1 or sqrt(2)/2
    peak = 1 * 1 * (1 / math.sqrt(2))
    oval = semialgebraic_body(hp, 0.99 * peak)
    pts = np.array(oval.points)
    assert np.max(np.hypot(pts[:, 0] - 1, pts[:, 1] - 1)) < 0.3
    with pytest.raises(AlphaTooLarge):
        semialgebraic_body(hp, 1.01 * peak)


def test_distance_to_disk():
    hexagon = Polygon(tuple((F(math.cos(k * math.pi / 3)), F(math.sin(k * math.pi / 3))) for k in range(6)))
    assert distance_to_unit_disk(hexagon) == pytest.approx(1 - math.cos(math.pi / 6))
    assert distance_to_unit_disk(Circle((0, 0), F(11, 10))) == pytest.approx(0.1)


def test_json_round_trip():
    fam = BodyFamily((Circle((F(1, 3), 0), 2), SQUARE, Ellipse((1, 2), 3, 1, 0.5)), ("c", "s", "e"))
    back = family_from_json(family_to_json(fam))
    assert back == fam
    with pytest.raises(SchemaError):
        family_from_json({"bodies": [{"kind": "blob"}]})
    with pytest.raises(SchemaError):
        family_from_json({"bodies": [{"kind": "circle", "center": [0, 0], "r": -1}]})
