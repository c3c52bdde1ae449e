"""Copoints, convex dimension and affine point configurations."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .core import (
    ConvexGeometry,
    GroundSet,
    OrderingFamily,
    SetFamily,
    _check_size,
    geometry_from_orderings,
    indices_of,
    popcount,
)
from .errors import DimensionCap, SchemaError
from .exact import as_fraction, fraction_str, in_simplex

MAX_POINTS = 12
MAX_POINT_DIM = 6
MAX_CROSSPOLYTOPE = 4


@dataclass(frozen=True)
class Copoint:
    set: int
    attached: int


@dataclass(frozen=True)
class CopointPoset:
    ground: GroundSet
    copoints: tuple[Copoint, ...]

    @property
    def sets(self) -> tuple[int, ...]:
        return tuple(c.set for c in self.copoints)

    def attached_to(self, x: int) -> tuple[int, ...]:
        return tuple(c.set for c in self.copoints if c.attached == x)


def copoints(geometry: ConvexGeometry) -> CopointPoset:
    """All (copoint, attached point) pairs.

    For each x, keep the convex sets avoiding x that have no convex proper
    superset avoiding x. Scanning the family from the largest members down
    means every candidate superset is already known when a set is examined.
    """
    members = geometry.family.members
    out = []
    for x in range(geometry.n):
        bit = 1 << x
        maximal: list[int] = []
        for c in reversed(members):
            if c & bit:
                continue
            if any(m & c == c for m in maximal):
                continue
            maximal.append(c)
        out.extend(Copoint(c, x) for c in sorted(maximal))
    return CopointPoset(geometry.ground, tuple(out))


def _max_matching(left: int, adj: list[list[int]]) -> list[int]:
    """Augmenting-path bipartite matching; returns ``match_right``."""
    match_right = [-1] * left

    def augment(u: int, seen: list[bool]) -> bool:
        for v in adj[u]:
            if seen[v]:
                continue
            seen[v] = True
            if match_right[v] == -1 or augment(match_right[v], seen):
                match_right[v] = u
                return True
        return False

    for u in range(left):
        augment(u, [False] * left)
    return match_right


@dataclass(frozen=True)
class WidthResult:
    width: int
    antichain: tuple[int, ...]
    chains: tuple[tuple[int, ...], ...]


def poset_width(sets: Sequence[int]) -> WidthResult:
    """Largest antichain of distinct sets under inclusion.

    Uses Dilworth's theorem through König: width equals the number of sets
    minus a maximum matching in the strict-inclusion bipartite graph. The
    antichain is read off a minimum vertex cover and checked before return;
    ``chains`` is the matching chain cover, whose size equals the width.
    """
    items = sorted(set(sets), key=lambda s: (popcount(s), indices_of(s)))
    k = len(items)
    adj = [[j for j in range(k) if i != j and items[i] & items[j] == items[i]] for i in range(k)]
    match_right = _max_matching(k, adj)
    match_left = [-1] * k
    for v, u in enumerate(match_right):
        if u != -1:
            match_left[u] = v

    # König: Z = vertices reachable from unmatched left vertices by
    # alternating paths; cover = (L \ Z) + (R & Z)
    z_left = [False] * k
    z_right = [False] * k
    stack = [u for u in range(k) if match_left[u] == -1]
    for u in stack:
        z_left[u] = True
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if z_right[v]:
                continue
            z_right[v] = True
            w = match_right[v]
            if w != -1 and not z_left[w]:
                z_left[w] = True
                stack.append(w)
    antichain = tuple(items[i] for i in range(k) if z_left[i] and not z_right[i])

    chains = []
    for start in range(k):
        if match_right[start] != -1:
            continue
        chain = [start]
        while match_left[chain[-1]] != -1:
            chain.append(match_left[chain[-1]])
        chains.append(tuple(items[i] for i in chain))

    for a, b in combinations(antichain, 2):
        if a & b in (a, b):
            raise AssertionError("width witness is not an antichain")
    if len(antichain) != len(chains):
        raise AssertionError("antichain and chain cover disagree")
    return WidthResult(len(antichain), antichain, tuple(chains))


def cdim(geometry: ConvexGeometry) -> int:
    """Convex dimension as the width of the copoint poset."""
    return poset_width(copoints(geometry).sets).width


def _chain_down(geometry: ConvexGeometry, lower: int, upper: int) -> list[int]:
    # remove extreme points of `upper` outside `lower` one at a time
    members = geometry.family.member_set
    steps = [upper]
    cur = upper
    while cur != lower:
        for e in indices_of(cur & ~lower):
            if cur & ~(1 << e) in members:
                cur &= ~(1 << e)
                break
        else:
            raise AssertionError("no extreme point found; family is not a convex geometry")
        steps.append(cur)
    return steps[::-1]


def generating_orderings(geometry: ConvexGeometry) -> OrderingFamily:
    """A generating family of exactly ``cdim`` orders.

    Each chain of a minimum chain cover of the copoints is threaded through
    a maximal chain of convex sets; reading off the element added at each
    step gives an order whose prefixes are all convex, and every copoint is
    a prefix of some order.
    """
    n = geometry.n
    if n == 0:
        return OrderingFamily(geometry.ground, ((),))
    chains = poset_width(copoints(geometry).sets).chains
    orders = []
    for chain in chains:
        waypoints = [0, *chain, geometry.ground.full]
        seq = [0]
        for lo, hi in zip(waypoints, waypoints[1:]):
            seq.extend(_chain_down(geometry, lo, hi)[1:])
        orders.append(tuple((b & ~a).bit_length() - 1 for a, b in zip(seq, seq[1:])))
    result = OrderingFamily(geometry.ground, tuple(orders))
    if geometry_from_orderings(result) != geometry:
        raise AssertionError("extracted orderings do not regenerate the geometry")
    return result


# point configurations ------------------------------------------------------


@dataclass(frozen=True)
class RationalPointConfig:
    dim: int
    points: tuple[tuple[Fraction, ...], ...]
    labels: tuple[str, ...]

    def __post_init__(self):
        pts = tuple(tuple(as_fraction(c) for c in p) for p in self.points)
        if any(len(p) != self.dim for p in pts):
            raise ValueError("every point needs exactly `dim` coordinates")
        if len(set(pts)) != len(pts):
            raise ValueError("points must be pairwise distinct")
        labels = tuple(self.labels) if self.labels else tuple(str(i) for i in range(len(pts)))
        if len(labels) != len(pts):
            raise ValueError("one label per point")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "labels", labels)


def hull_witnesses(config: RationalPointConfig) -> list[tuple[int, int]]:
    """Pairs ``(p, T)`` with point ``p`` inside the simplex on index mask ``T``.

    Carathéodory: ``p`` lies in the hull of X iff it lies in a simplex on at
    most ``dim + 1`` affinely independent points of X, so these pairs
    describe hull membership for every subset at once.
    """
    pts = config.points
    n = len(pts)
    out = []
    for p in range(n):
        others = [i for i in range(n) if i != p]
        for size in range(1, min(config.dim + 1, n - 1) + 1):
            for combo in combinations(others, size):
                verdict = in_simplex(pts[p], [pts[i] for i in combo])
                if verdict:
                    mask = 0
                    for i in combo:
                        mask |= 1 << i
                    out.append((p, mask))
    return out


def geometry_from_points(config: RationalPointConfig) -> ConvexGeometry:
    """Affine convexity on a finite point set, decided exactly.

    X is convex iff no point outside X lies in the convex hull of X.
    """
    n = len(config.points)
    if config.dim > MAX_POINT_DIM:
        raise DimensionCap(f"dimension {config.dim} exceeds {MAX_POINT_DIM}")
    if n > MAX_POINTS:
        raise DimensionCap(f"{n} points exceeds {MAX_POINTS}")
    _check_size(n, None)
    witnesses = hull_witnesses(config)
    # keep only inclusion-minimal simplices per point
    by_point: dict[int, list[int]] = {}
    for p, t in witnesses:
        by_point.setdefault(p, []).append(t)
    for p, ts in by_point.items():
        ts.sort(key=popcount)
        minimal: list[int] = []
        for t in ts:
            if not any(m & t == m for m in minimal):
                minimal.append(t)
        by_point[p] = minimal
    full = (1 << n) - 1
    members = []
    for x in range(full + 1):
        ok = True
        for p, ts in by_point.items():
            if x >> p & 1:
                continue
            if any(t & x == t for t in ts):
                ok = False
                break
        if ok:
            members.append(x)
    return ConvexGeometry(SetFamily(GroundSet(config.labels), tuple(members)))


def crosspolytope_config(n: int) -> RationalPointConfig:
    """The origin together with the points +e_i and -e_i of Q^n."""
    if n < 1:
        raise ValueError("n must be at least 1")
    zero = tuple(Fraction(0) for _ in range(n))
    pts = [zero]
    labels = ["0"]
    for i in range(n):
        for s, tag in ((1, "+"), (-1, "-")):
            p = list(zero)
            p[i] = Fraction(s)
            pts.append(tuple(p))
            labels.append(f"{tag}e{i + 1}")
    return RationalPointConfig(n, tuple(pts), tuple(labels))


def crosspolytope_geometry(n: int) -> ConvexGeometry:
    if n > MAX_CROSSPOLYTOPE:
        raise DimensionCap(f"crosspolytope dimension {n} exceeds {MAX_CROSSPOLYTOPE}")
    return geometry_from_points(crosspolytope_config(n))


def verify_crosspolytope_copoints(n: int) -> bool:
    """Copoints of the origin are the 2^n sign-choice sets; each +/-e_i has
    its complement as unique copoint."""
    geometry = crosspolytope_geometry(n)
    poset = copoints(geometry)
    full = geometry.ground.full
    expected_origin = set()
    for signs in range(1 << n):
        mask = 0
        for i in range(n):
            # element 1 + 2i is +e_i, element 2 + 2i is -e_i
            mask |= 1 << (1 + 2 * i + (signs >> i & 1))
        expected_origin.add(mask)
    if set(poset.attached_to(0)) != expected_origin or len(poset.attached_to(0)) != 1 << n:
        return False
    for x in range(1, 2 * n + 1):
        if poset.attached_to(x) != (full & ~(1 << x),):
            return False
    return True


def points_from_json(data: dict) -> RationalPointConfig:
    try:
        dim = int(data["dim"])
        pts = tuple(tuple(as_fraction(c) for c in p["coords"]) for p in data["points"])
        labels = tuple(str(p.get("label", i)) for i, p in enumerate(data["points"]))
        return RationalPointConfig(dim, pts, labels)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"bad point-config JSON: {exc}") from exc


def points_to_json(config: RationalPointConfig) -> dict:
    return {
        "dim": config.dim,
        "points": [
            {"label": lab, "coords": [fraction_str(c) for c in p]} for lab, p in zip(config.labels, config.points)
        ],
    }
