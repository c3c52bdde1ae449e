"""Planar convex bodies through their support functions.

Two tiers of arithmetic:

* circles and polygons with rational data (floats are converted exactly) are
  handled without rounding. Both are treated as finite sets of disks, a
  polygon being the zero-radius disks at its vertices, so hull containment
  and support-function crossings reduce to sign tests of ``a + b*sqrt(D)``;
* ellipses and sampled boundaries use a dense direction grid with local
  refinement, and raise :class:`ToleranceInconclusive` instead of guessing
  when a margin lands within the tolerance band.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import ClassVar, Iterable, Sequence

import numpy as np

from .core import (
    ConvexGeometry,
    GroundSet,
    OrderingFamily,
    SetFamily,
    indices_of,
    to_mask,
)
from .errors import (
    AlphaTooLarge,
    DegenerateIdentical,
    EmptySubset,
    InfiniteContactSuspected,
    NonConvexTrace,
    NoRegularDirection,
    SchemaError,
    ToleranceInconclusive,
)
from .exact import (
    as_fraction,
    convex_hull,
    cross,
    dot,
    fraction_str,
    in_convex_polygon,
    integer_scale,
    is_strictly_convex_ccw,
    perp,
    sign_sqrt,
    violated_edge,
)

HULL_GRID = 4096
CROSSING_GRID = 8192
HULL_TOL = 1e-9
TANGENCY_TOL = 1e-10
ROOT_TOL = 1e-12
MAX_BODIES = 12


def _directions(angles: np.ndarray) -> np.ndarray:
    return np.stack([np.cos(angles), np.sin(angles)], axis=-1)


# bodies -----------------------------------------------------------------------


@dataclass(frozen=True)
class Circle:
    center: tuple[Fraction, Fraction]
    radius: Fraction
    kind: ClassVar[str] = "circle"

    def __post_init__(self):
        object.__setattr__(self, "center", tuple(as_fraction(c) for c in self.center))
        object.__setattr__(self, "radius", as_fraction(self.radius))
        if self.radius <= 0:
            raise ValueError("circle radius must be positive")

    def support_many(self, dirs: np.ndarray) -> np.ndarray:
        c = np.array([float(x) for x in self.center])
        return dirs @ c + float(self.radius)

    def exact_disks(self) -> list:
        return [(self.center, self.radius)]

    @property
    def rmax(self) -> float:
        return math.hypot(*map(float, self.center)) + float(self.radius)


@dataclass(frozen=True)
class Ellipse:
    center: tuple[float, float]
    a: float
    b: float
    theta: float = 0.0
    kind: ClassVar[str] = "ellipse"

    def __post_init__(self):
        object.__setattr__(self, "center", tuple(float(c) for c in self.center))
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "b", float(self.b))
        object.__setattr__(self, "theta", float(self.theta))
        if not self.a >= self.b > 0:
            raise ValueError("ellipse semiaxes must satisfy a >= b > 0")

    def support_many(self, dirs: np.ndarray) -> np.ndarray:
        c = np.array(self.center)
        e1 = np.array([math.cos(self.theta), math.sin(self.theta)])
        e2 = np.array([-math.sin(self.theta), math.cos(self.theta)])
        p, q = dirs @ e1, dirs @ e2
        return dirs @ c + np.sqrt(self.a**2 * p**2 + self.b**2 * q**2)

    @property
    def rmax(self) -> float:
        return math.hypot(*self.center) + self.a


@dataclass(frozen=True)
class Polygon:
    """Strictly convex polygon, vertices counterclockwise."""

    vertices: tuple[tuple[Fraction, Fraction], ...]
    kind: ClassVar[str] = "polygon"

    def __post_init__(self):
        verts = tuple(tuple(as_fraction(c) for c in v) for v in self.vertices)
        if not is_strictly_convex_ccw(verts):
            raise ValueError("polygon vertices must be in strictly convex counterclockwise position")
        object.__setattr__(self, "vertices", verts)

    @cached_property
    def _float_vertices(self) -> np.ndarray:
        return np.array([[float(x), float(y)] for x, y in self.vertices])

    def support_many(self, dirs: np.ndarray) -> np.ndarray:
        return (dirs @ self._float_vertices.T).max(axis=-1)

    def exact_disks(self) -> list:
        return [(v, Fraction(0)) for v in self.vertices]

    def edge_normals(self) -> list:
        k = len(self.vertices)
        out = []
        for i in range(k):
            a, b = self.vertices[i], self.vertices[(i + 1) % k]
            out.append((b[1] - a[1], a[0] - b[0]))
        return out

    @property
    def rmax(self) -> float:
        return float(np.max(np.hypot(*self._float_vertices.T)))


@dataclass(frozen=True)
class SampledBoundary:
    """Dense counterclockwise polyline standing in for a smooth convex curve."""

    points: tuple[tuple[float, float], ...]
    kind: ClassVar[str] = "sampled"

    def __post_init__(self):
        pts = tuple((float(x), float(y)) for x, y in self.points)
        if len(pts) < 3:
            raise ValueError("a sampled boundary needs at least three points")
        object.__setattr__(self, "points", pts)
        if not polyline_is_convex(np.array(pts)):
            raise NonConvexTrace("sampled boundary is not convex within tolerance")

    @cached_property
    def _array(self) -> np.ndarray:
        return np.array(self.points)

    def support_many(self, dirs: np.ndarray) -> np.ndarray:
        return (dirs @ self._array.T).max(axis=-1)

    @property
    def rmax(self) -> float:
        return float(np.max(np.hypot(*self._array.T)))


PlanarBody = Circle | Ellipse | Polygon | SampledBoundary
EXACT_KINDS = (Circle, Polygon)


def polyline_is_convex(pts: np.ndarray, rel_tol: float = 1e-12) -> bool:
    nxt = np.roll(pts, -1, axis=0)
    e = nxt - pts
    e2 = np.roll(e, -1, axis=0)
    turns = e[:, 0] * e2[:, 1] - e[:, 1] * e2[:, 0]
    scale = max(1.0, float(np.max(np.abs(pts)))) ** 2
    if np.any(turns < -rel_tol * scale):
        return False
    # must wind exactly once
    ang = np.arctan2(e[:, 1], e[:, 0])
    step = np.mod(np.diff(np.append(ang, ang[0])), 2 * np.pi)
    step[step > np.pi] -= 2 * np.pi
    return abs(step.sum() - 2 * np.pi) < 1e-6


def support(body: PlanarBody, u) -> float:
    """Support value ``max <u, y>`` over the body for a unit vector ``u``."""
    u = np.asarray(u, dtype=float)
    norm = float(np.hypot(*u))
    if abs(norm - 1.0) > 1e-12:
        u = u / norm
    return float(body.support_many(u[None, :])[0])


@dataclass(frozen=True)
class BodyFamily:
    bodies: tuple
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        bodies = tuple(self.bodies)
        labels = tuple(self.labels) if self.labels else tuple(str(i) for i in range(len(bodies)))
        if len(labels) != len(bodies):
            raise ValueError("one label per body")
        if len(set(labels)) != len(labels):
            raise ValueError("body labels must be distinct")
        object.__setattr__(self, "bodies", bodies)
        object.__setattr__(self, "labels", labels)

    def __len__(self) -> int:
        return len(self.bodies)

    @property
    def n(self) -> int:
        return len(self.bodies)

    @property
    def exact_capable(self) -> bool:
        return all(isinstance(b, EXACT_KINDS) for b in self.bodies)

    @property
    def ground(self) -> GroundSet:
        return GroundSet(self.labels)


def hull_support(family: BodyFamily, subset: Iterable[int], u) -> float:
    idx = list(subset)
    if not idx:
        raise EmptySubset("support of the hull of an empty subfamily is undefined")
    return max(support(family.bodies[i], u) for i in idx)


# exact containment ------------------------------------------------------------


def _disk_covered(c, r, disks) -> bool:
    """Whether the disk (c, r) lies in the convex hull of ``disks``.

    Equivalent to: for every direction u some disk j has
    ``<c_j - c, u> + (r_j - r) >= 0``. Each such set is a closed arc; the arcs
    cover the circle iff every arc's counterclockwise end is continued by
    another arc.
    """
    arcs = []
    for cj, rj in disks:
        d = (cj[0] - c[0], cj[1] - c[1])
        delta = rj - r
        dd = dot(d, d)
        if delta >= 0 and dd <= delta * delta:
            return True
        if delta < 0 and dd < delta * delta:
            continue
        arcs.append((d, delta, dd))
    if not arcs:
        return False
    for ia, (d, delta, dd) in enumerate(arcs):
        disc = dd - delta * delta
        # ccw end e = (P + Q sqrt(disc)) / dd
        p_vec = (-delta * d[0], -delta * d[1])
        q_vec = perp(d)
        continued = False
        for ib, (db, deltab, _) in enumerate(arcs):
            if ib == ia:
                continue
            value = sign_sqrt(dot(db, p_vec) + deltab * dd, dot(db, q_vec), disc)
            if value > 0:
                continued = True
                break
            if value == 0:
                # moving counterclockwise must enter arc b
                slope = sign_sqrt(dot(db, perp(p_vec)), dot(db, perp(q_vec)), disc)
                if slope > 0:
                    continued = True
                    break
        if not continued:
            return False
    return True


@dataclass(frozen=True)
class HullCertificate:
    """Outcome of a containment test.

    ``margin`` is the smallest observed ``hull_support - body_support`` and
    ``direction`` the unit vector where it occurred; both are ``None`` for
    exact positive answers.
    """

    inside: bool
    exact: bool
    margin: float | None = None
    direction: tuple[float, float] | None = None

    def __bool__(self) -> bool:
        return self.inside


class HullOracle:
    """Containment tests ``K_k ⊆ conv(∪ K_s, s in S)`` for a fixed family."""

    def __init__(self, family: BodyFamily, mode: str = "auto", grid: int = HULL_GRID, tol: float = HULL_TOL):
        if mode not in ("auto", "exact", "numeric"):
            raise ValueError(f"unknown mode {mode!r}")
        if mode == "auto":
            mode = "exact" if family.exact_capable else "numeric"
        if mode == "exact" and not family.exact_capable:
            raise ValueError("exact mode needs circles and polygons only")
        self.family = family
        self.mode = mode
        self.grid = grid
        self.tol = tol
        self._hulls: dict[int, list] = {}
        if mode == "exact":
            self.all_polygons = all(isinstance(b, Polygon) for b in family.bodies)
            if self.all_polygons:
                flat = [v for b in family.bodies for v in b.vertices]
                scaled, _ = integer_scale(flat)
                it = iter(scaled)
                self._int_vertices = [[next(it) for _ in b.vertices] for b in family.bodies]
        else:
            angles = 2 * np.pi * np.arange(grid) / grid
            self._angles = angles
            self._table = np.array([b.support_many(_directions(angles)) for b in family.bodies])
            self._lipschitz = 2 * max((b.rmax for b in family.bodies), default=0.0)

    def inside(self, k: int, subset_mask: int) -> HullCertificate:
        if subset_mask == 0:
            raise EmptySubset("containment in the hull of an empty subfamily")
        if subset_mask >> k & 1:
            return HullCertificate(True, True)
        if self.mode == "exact":
            return self._inside_exact(k, subset_mask)
        return self._inside_numeric(k, subset_mask)

    # exact tier

    def _inside_exact(self, k: int, subset_mask: int) -> HullCertificate:
        members = indices_of(subset_mask)
        if self.all_polygons:
            hull = self._hulls.get(subset_mask)
            if hull is None:
                hull = convex_hull([v for i in members for v in self._int_vertices[i]])
                self._hulls[subset_mask] = hull
            for v in self._int_vertices[k]:
                if not in_convex_polygon(v, hull):
                    normal = violated_edge(v, hull)
                    return self._negative_witness(k, members, normal)
            return HullCertificate(True, True)
        disks = [d for i in members for d in self.family.bodies[i].exact_disks()]
        for c, r in self.family.bodies[k].exact_disks():
            if not _disk_covered(c, r, disks):
                return self._negative_witness(k, members, None)
        return HullCertificate(True, True)

    def _negative_witness(self, k, members, normal) -> HullCertificate:
        fam = self.family.bodies
        if normal is not None:
            u = np.array([float(normal[0]), float(normal[1])])
            u /= np.hypot(*u)
            margin = max(support(fam[i], u) for i in members) - support(fam[k], u)
            return HullCertificate(False, True, margin, (float(u[0]), float(u[1])))
        angles = 2 * np.pi * np.arange(self.grid) / self.grid
        dirs = _directions(angles)
        m = np.max([fam[i].support_many(dirs) for i in members], axis=0) - fam[k].support_many(dirs)
        j = int(np.argmin(m))
        return HullCertificate(False, True, float(m[j]), (float(dirs[j, 0]), float(dirs[j, 1])))

    # numeric tier

    def _margin_at(self, k: int, members: Sequence[int], theta: float) -> float:
        u = np.array([[math.cos(theta), math.sin(theta)]])
        fam = self.family.bodies
        return float(max(fam[i].support_many(u)[0] for i in members) - fam[k].support_many(u)[0])

    def _inside_numeric(self, k: int, subset_mask: int) -> HullCertificate:
        members = indices_of(subset_mask)
        margin = self._table[list(members)].max(axis=0) - self._table[k]
        j = int(np.argmin(margin))
        worst = float(margin[j])
        theta = float(self._angles[j])
        if worst < -self.tol:
            return HullCertificate(False, False, worst, (math.cos(theta), math.sin(theta)))
        half_step = math.pi / self.grid
        if worst > self._lipschitz * half_step + self.tol:
            # no direction between grid points can dip below zero
            return HullCertificate(True, False, worst, (math.cos(theta), math.sin(theta)))
        # refine the lowest local minima
        left, right = np.roll(margin, 1), np.roll(margin, -1)
        minima = np.nonzero((margin <= left) & (margin <= right))[0]
        minima = minima[np.argsort(margin[minima])][:8]
        for idx in minima:
            if margin[idx] > self._lipschitz * half_step + self.tol:
                continue
            t0 = float(self._angles[idx])
            t, v = _golden_min(lambda t: self._margin_at(k, members, t), t0 - 2 * half_step, t0 + 2 * half_step)
            if v < worst:
                worst, theta = v, t
        direction = (math.cos(theta), math.sin(theta))
        if worst < -self.tol:
            return HullCertificate(False, False, worst, direction)
        if worst > self.tol:
            return HullCertificate(True, False, worst, direction)
        raise ToleranceInconclusive(
            f"margin {worst:.3e} within +/-{self.tol:g}; refine the grid or use exact bodies",
            margin=worst,
            direction=direction,
        )


def _golden_min(fn, lo: float, hi: float, tol: float = ROOT_TOL) -> tuple[float, float]:
    g = (math.sqrt(5) - 1) / 2
    c = hi - g * (hi - lo)
    d = lo + g * (hi - lo)
    fc, fd = fn(c), fn(d)
    while hi - lo > tol:
        if fc < fd:
            hi, d, fd = d, c, fc
            c = hi - g * (hi - lo)
            fc = fn(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + g * (hi - lo)
            fd = fn(d)
    t = (lo + hi) / 2
    return t, fn(t)


def _as_mask(subset) -> int:
    if isinstance(subset, int):
        return subset
    return to_mask(subset)


def in_hull(body: PlanarBody, family: BodyFamily, subset: Iterable[int], mode: str = "auto", **kw) -> HullCertificate:
    """Whether ``body`` lies in the convex hull of the bodies indexed by ``subset``."""
    mask = _as_mask(subset)
    if mask == 0:
        raise EmptySubset("empty subfamily")
    extended = BodyFamily(family.bodies + (body,), family.labels + ("__query__",))
    return HullOracle(extended, mode, **kw).inside(family.n, mask)


def conv_closure(family: BodyFamily, subset: Iterable[int], mode: str = "auto", oracle: HullOracle | None = None) -> frozenset[int]:
    """Indices of all bodies contained in the hull of the subfamily."""
    mask = _as_mask(subset)
    if mask == 0:
        return frozenset()
    oracle = oracle or HullOracle(family, mode)
    return frozenset(k for k in range(family.n) if oracle.inside(k, mask).inside)


def body_closure_operator(family: BodyFamily, mode: str = "auto"):
    """Memoised ``mask -> mask`` closure for :func:`check_anti_exchange`."""
    oracle = HullOracle(family, mode)
    cache: dict[int, int] = {}

    def op(mask: int) -> int:
        if mask not in cache:
            cache[mask] = to_mask(conv_closure(family, mask, oracle=oracle))
        return cache[mask]

    return op


def check_finite_contacts(family: BodyFamily) -> list[tuple[int, int, int]]:
    """Pairwise support-equality counts; raises on suspected infinite contact."""
    return [(i, j, len(common_supporting_directions(family.bodies[i], family.bodies[j])))
            for i, j in combinations(range(family.n), 2)]


def geometry_from_bodies(family: BodyFamily, mode: str = "auto", check_contacts: bool = True) -> ConvexGeometry:
    """Convex geometry whose closed sets are the subfamilies equal to their hull closure."""
    n = family.n
    if n > MAX_BODIES:
        raise ValueError(f"{n} bodies exceeds the exhaustive cap {MAX_BODIES}")
    if check_contacts:
        check_finite_contacts(family)
    oracle = HullOracle(family, mode)
    full = (1 << n) - 1
    members = [0]
    for x in range(1, full + 1):
        outside = indices_of(full & ~x)
        if not any(oracle.inside(k, x).inside for k in outside):
            members.append(x)
    return ConvexGeometry(SetFamily(family.ground, tuple(members)))


# common supporting lines ------------------------------------------------------


def _angle_key(v):
    # exact sort key on the circle: half-plane, then cross product comparison
    half = 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1
    return half


def _sorted_directions(vectors: list) -> list:
    from functools import cmp_to_key

    def cmp(a, b):
        ha, hb = _angle_key(a), _angle_key(b)
        if ha != hb:
            return ha - hb
        c = cross(a, b)
        return -1 if c > 0 else (1 if c < 0 else 0)

    out = []
    for v in sorted(vectors, key=cmp_to_key(cmp)):
        if out and _angle_key(out[-1]) == _angle_key(v) and cross(out[-1], v) == 0:
            continue
        out.append(v)
    return out


def _active_disk(body, w):
    disks = body.exact_disks()
    if len(disks) == 1:
        return disks[0]
    # polygon: zero radii, so the maximiser of <c, w> is exact
    return max(disks, key=lambda d: dot(d[0], w))


def _exact_crossings(b1, b2) -> list[tuple[float, float]]:
    normals = []
    for b in (b1, b2):
        if isinstance(b, Polygon):
            normals.extend(b.edge_normals())
    breaks = _sorted_directions(normals)
    if breaks:
        cells = [(breaks[i], breaks[(i + 1) % len(breaks)]) for i in range(len(breaks))]
    else:
        cells = [None]
    roots = []
    for cell in cells:
        if cell is None:
            w = (1, 0)
        else:
            w = (cell[0][0] + cell[1][0], cell[0][1] + cell[1][1])
        (c1, r1), (c2, r2) = _active_disk(b1, w), _active_disk(b2, w)
        d = (c1[0] - c2[0], c1[1] - c2[1])
        delta = r1 - r2
        dd = dot(d, d)
        if dd == 0:
            if delta == 0:
                if cell is None:
                    raise DegenerateIdentical("identical support functions")
                raise InfiniteContactSuspected("support functions agree on an arc of directions")
            continue
        disc = dd - delta * delta
        if disc < 0:
            continue
        p_vec = (-delta * d[0], -delta * d[1])
        q_vec = perp(d)
        for s in ((1,) if disc == 0 else (1, -1)):
            q = (s * q_vec[0], s * q_vec[1])
            if cell is not None:
                a, b = cell
                if sign_sqrt(cross(a, p_vec), cross(a, q), disc) < 0:
                    continue
                # cross(u, b) = -cross(b, u)
                if sign_sqrt(-cross(b, p_vec), -cross(b, q), disc) <= 0:
                    continue
            root = math.sqrt(float(disc))
            x = float(p_vec[0]) + float(q[0]) * root
            y = float(p_vec[1]) + float(q[1]) * root
            norm = math.hypot(x, y)
            roots.append((x / norm, y / norm))
    return roots


def _numeric_crossings(b1, b2, grid: int = CROSSING_GRID, tol: float = TANGENCY_TOL) -> list[tuple[float, float]]:
    angles = 2 * np.pi * np.arange(grid) / grid
    dirs = _directions(angles)
    diff = b1.support_many(dirs) - b2.support_many(dirs)

    def f(t: float) -> float:
        u = np.array([[math.cos(t), math.sin(t)]])
        return float(b1.support_many(u)[0] - b2.support_many(u)[0])

    near = np.abs(diff) <= tol
    if near.all():
        raise DegenerateIdentical("support functions agree on the whole sampled circle")
    # runs of near-zero samples
    if near.any():
        run = 0
        start = int(np.argmin(near))  # begin on a non-near sample so runs do not wrap
        for step in range(grid + 1):
            idx = (start + step) % grid
            if near[idx]:
                run += 1
                if run >= 3:
                    raise InfiniteContactSuspected("support functions agree on a sampled arc")
            else:
                run = 0
    step = 2 * math.pi / grid
    roots: list[float] = []

    def bisect(lo: float, hi: float) -> float:
        flo = f(lo)
        while hi - lo > ROOT_TOL:
            mid = (lo + hi) / 2
            fm = f(mid)
            if fm == 0:
                return mid
            if (fm > 0) == (flo > 0):
                lo, flo = mid, fm
            else:
                hi = mid
        return (lo + hi) / 2

    visited_near = np.zeros(grid, dtype=bool)
    for i in range(grid):
        j = (i + 1) % grid
        t0 = float(angles[i])
        if near[i]:
            if visited_near[i]:
                continue
            # a short run of near-zero samples holds exactly one root
            k = i
            while near[k % grid]:
                visited_near[k % grid] = True
                k += 1
            lo_t = t0 - step
            hi_t = float(angles[(k - 1) % grid]) + step
            if (k - 1) % grid < i:
                hi_t += 2 * math.pi
            t, _ = _golden_min(lambda t: abs(f(t)), lo_t, hi_t)
            roots.append(t)
            continue
        if near[j]:
            continue
        if (diff[i] > 0) != (diff[j] > 0):
            roots.append(bisect(t0, t0 + step))
    # interior extrema that may touch or cross zero between samples
    left, right = np.roll(diff, 1), np.roll(diff, -1)
    cand = (~near) & (~np.roll(near, 1)) & (~np.roll(near, -1))
    pos_min = cand & (diff > 0) & (diff <= left) & (diff <= right) & (left > 0) & (right > 0)
    neg_max = cand & (diff < 0) & (diff >= left) & (diff >= right) & (left < 0) & (right < 0)
    scale = 1.0 + max(b1.rmax, b2.rmax)
    for idx in np.nonzero(pos_min | neg_max)[0]:
        # Lipschitz bound: the difference moves by at most 2*scale*step between samples
        if abs(diff[idx]) > 2 * scale * step:
            continue
        sgn = 1.0 if diff[idx] > 0 else -1.0
        t0 = float(angles[idx])
        t, v = _golden_min(lambda t, s=sgn: s * f(t), t0 - step, t0 + step)
        if abs(v) <= tol:
            roots.append(t)
        elif v < 0:
            roots.append(bisect(t0 - step, t))
            roots.append(bisect(t, t0 + step))
    roots = sorted(r % (2 * math.pi) for r in roots)
    merged: list[float] = []
    for r in roots:
        if merged and abs(r - merged[-1]) < 1e-9:
            continue
        merged.append(r)
    if len(merged) > 1 and merged[0] + 2 * math.pi - merged[-1] < 1e-9:
        merged.pop()
    return [(math.cos(t), math.sin(t)) for t in merged]


def common_supporting_directions(b1: PlanarBody, b2: PlanarBody, grid: int = CROSSING_GRID) -> list[tuple[float, float]]:
    """Unit directions where the two support functions agree, sorted by angle.

    Each direction is one common supporting line with both bodies on the same
    side. Tangential agreements are counted once.
    """
    if isinstance(b1, EXACT_KINDS) and isinstance(b2, EXACT_KINDS):
        roots = _exact_crossings(b1, b2)
    else:
        roots = _numeric_crossings(b1, b2, grid)
    return sorted(roots, key=lambda u: math.atan2(u[1], u[0]) % (2 * math.pi))


# regular directions -----------------------------------------------------------


@dataclass(frozen=True)
class Sweep:
    orderings: OrderingFamily
    crossings: int
    k: int
    crossing_angles: tuple[float, ...]
    regular_angles: tuple[float, ...]


def sweep_orderings(family: BodyFamily) -> Sweep:
    """Orderings induced by one regular direction per arc between crossings."""
    n = family.n
    counts = []
    angles = []
    for i, j in combinations(range(n), 2):
        dirs = common_supporting_directions(family.bodies[i], family.bodies[j])
        counts.append(len(dirs))
        angles.extend(math.atan2(u[1], u[0]) % (2 * math.pi) for u in dirs)
    angles.sort()
    distinct: list[float] = []
    for a in angles:
        if distinct and a - distinct[-1] < 1e-12:
            continue
        distinct.append(a)
    if len(distinct) > 1 and distinct[0] + 2 * math.pi - distinct[-1] < 1e-12:
        distinct.pop()
    if distinct:
        arcs = [(distinct[i], distinct[i + 1] if i + 1 < len(distinct) else distinct[0] + 2 * math.pi)
                for i in range(len(distinct))]
    else:
        arcs = [(0.0, 2 * math.pi)]
    scale = 1.0 + max((b.rmax for b in family.bodies), default=0.0)
    orders = []
    regular = []
    for lo, hi in arcs:
        for frac in (0.5, 1 / 3, 2 / 3, 0.25, 0.75):
            t = lo + frac * (hi - lo)
            u = np.array([[math.cos(t), math.sin(t)]])
            vals = np.array([b.support_many(u)[0] for b in family.bodies])
            srt = np.sort(vals)
            if n < 2 or np.min(np.diff(srt)) > 1e-12 * scale:
                break
        else:
            raise NoRegularDirection(f"no regular direction found in arc ({lo:.6g}, {hi:.6g})")
        order = tuple(int(i) for i in np.argsort(vals, kind="stable"))
        regular.append(t % (2 * math.pi))
        if order not in orders:
            orders.append(order)
    return Sweep(
        OrderingFamily(family.ground, tuple(orders)),
        sum(counts),
        max(counts, default=0),
        tuple(distinct),
        tuple(regular),
    )


@dataclass(frozen=True)
class BoundReport:
    n: int
    k: int
    bound: int
    cdim: int
    holds: bool
    skipped: bool = False


def cdim_upper_bound_check(family: BodyFamily) -> BoundReport:
    """Compare the convex dimension with ``k * C(n, 2)``.

    ``k`` is the largest pairwise count of common supporting lines. When no
    pair has any (nested bodies), the arcs collapse to the whole circle, which
    still carries one ordering, so the bound is taken as at least 1.
    """
    from .dimension import cdim

    n = family.n
    geometry = geometry_from_bodies(family)
    dimension = cdim(geometry)
    if n < 2:
        return BoundReport(n, 0, 0, dimension, True, skipped=True)
    k = max(len(common_supporting_directions(a, b)) for a, b in combinations(family.bodies, 2))
    bound = k * n * (n - 1) // 2
    return BoundReport(n, k, bound, dimension, dimension <= max(bound, 1))


def convex_position(family: BodyFamily, subset: Iterable[int], mode: str = "auto") -> bool:
    """No member of the subfamily lies in the hull of the others."""
    idx = sorted(set(indices_of(subset) if isinstance(subset, int) else subset))
    if len(idx) < 2:
        raise ValueError("convex position needs at least two bodies")
    oracle = HullOracle(family, mode)
    full = to_mask(idx)
    return not any(oracle.inside(i, full & ~(1 << i)).inside for i in idx)


# semi-algebraic smoothing -----------------------------------------------------


def polygon_halfplanes(polygon: Polygon) -> list[tuple[float, float, float]]:
    """Unit-normal halfplanes ``a x + b y - c >= 0`` whose intersection is the polygon."""
    verts = [(float(x), float(y)) for x, y in polygon.vertices]
    k = len(verts)
    out = []
    for i in range(k):
        (px, py), (qx, qy) = verts[i], verts[(i + 1) % k]
        a, b = -(qy - py), qx - px
        norm = math.hypot(a, b)
        a, b = a / norm, b / norm
        out.append((a, b, a * px + b * py))
    return out


def _analytic_center(hp: np.ndarray, start: np.ndarray) -> np.ndarray:
    # damped Newton on sum(log(a x + b y - c))
    z = start.astype(float)
    normals, offsets = hp[:, :2], hp[:, 2]
    for _ in range(100):
        s = normals @ z - offsets
        grad = (normals / s[:, None]).sum(axis=0)
        hess = -(normals[:, :, None] * normals[:, None, :] / (s**2)[:, None, None]).sum(axis=0)
        stepv = -np.linalg.solve(hess, grad)
        t = 1.0
        while np.any(normals @ (z + t * stepv) - offsets <= 0):
            t /= 2
        z = z + t * stepv
        if np.linalg.norm(t * stepv) < 1e-15:
            break
    return z


def semialgebraic_body(halfplanes: Sequence[tuple[float, float, float]], alpha: float, samples: int = 720,
                       through: Sequence[tuple[float, float]] = ()) -> SampledBoundary:
    """Trace ``{prod(a x + b y - c) = alpha}`` inside the polygon.

    The log of the product is concave, so its superlevel set is convex and
    every ray from the analytic centre meets the level curve once. Rays are
    bisected to 1e-12; ``through`` adds the rays from the centre through the
    given points (e.g. points the trace must enclose) to the uniform fan.
    """
    hp = np.asarray(halfplanes, dtype=float)
    normals, offsets = hp[:, :2], hp[:, 2]
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    # a strictly interior start: average of pairwise line intersections inside
    pts = []
    for i in range(len(hp)):
        j = (i + 1) % len(hp)
        m = np.array([normals[i], normals[j]])
        if abs(np.linalg.det(m)) > 1e-14:
            pts.append(np.linalg.solve(m, offsets[[i, j]]))
    start = np.mean(pts, axis=0)
    if np.any(normals @ start - offsets <= 0):
        raise ValueError("halfplanes do not bound a polygon around their vertex centroid")
    center = _analytic_center(hp, start)
    log_max = float(np.sum(np.log(normals @ center - offsets)))
    log_alpha = math.log(alpha)
    if log_alpha >= log_max:
        raise AlphaTooLarge(f"alpha={alpha:g} is not below the maximum {math.exp(log_max):g} of the product")
    extra = [math.atan2(y - center[1], x - center[0]) % (2 * math.pi) for x, y in through]
    angles = np.concatenate([2 * np.pi * np.arange(samples) / samples, np.asarray(extra, dtype=float)])
    angles = np.unique(np.round(angles, 15))
    dirs = _directions(angles)
    # distance to the polygon boundary along each ray
    rate = dirs @ normals.T  # (rays, planes)
    slack = normals @ center - offsets
    with np.errstate(divide="ignore"):
        exits = np.where(rate < 0, slack[None, :] / -rate, np.inf)
    hi = exits.min(axis=1)
    lo = np.zeros_like(hi)

    def phi(t):
        z = center[None, :] + t[:, None] * dirs
        s = z @ normals.T - offsets
        with np.errstate(invalid="ignore", divide="ignore"):
            return np.where(np.all(s > 0, axis=1), np.sum(np.log(np.clip(s, 1e-300, None)), axis=1), -np.inf) - log_alpha

    while np.max(hi - lo) > ROOT_TOL:
        mid = (lo + hi) / 2
        pos = phi(mid) > 0
        lo = np.where(pos, mid, lo)
        hi = np.where(pos, hi, mid)
    pts = center[None, :] + lo[:, None] * dirs
    if not polyline_is_convex(pts):
        raise NonConvexTrace("traced level curve is not convex at this resolution; increase alpha")
    return SampledBoundary(tuple(map(tuple, pts)))


def hausdorff_distance(a: PlanarBody, b: PlanarBody, grid: int = 1 << 14) -> float:
    """``max |h_a - h_b|`` over a direction grid (the Hausdorff distance for convex bodies)."""
    dirs = _directions(2 * np.pi * np.arange(grid) / grid)
    return float(np.max(np.abs(a.support_many(dirs) - b.support_many(dirs))))


def distance_to_unit_disk(body: PlanarBody) -> float:
    """Hausdorff distance to the unit disk centred at the origin.

    For polygons containing the origin the support maximum sits at a vertex
    and the minimum at an edge normal, so no sampling is needed.
    """
    if isinstance(body, Polygon):
        verts = body._float_vertices
        hi = float(np.max(np.hypot(*verts.T)))
        k = len(verts)
        lo = math.inf
        for i in range(k):
            p, q = verts[i], verts[(i + 1) % k]
            e = q - p
            lo = min(lo, abs(p[0] * q[1] - p[1] * q[0]) / math.hypot(*e))
        return max(hi - 1.0, 1.0 - lo)
    return hausdorff_distance(body, Circle((0, 0), 1))


# JSON -------------------------------------------------------------------------


def _num_out(x):
    if isinstance(x, Fraction):
        return fraction_str(x) if x.denominator != 1 else int(x)
    return x


def body_to_json(body: PlanarBody, label: str) -> dict:
    if isinstance(body, Circle):
        return {"label": label, "kind": "circle", "center": [_num_out(c) for c in body.center], "r": _num_out(body.radius)}
    if isinstance(body, Ellipse):
        return {"label": label, "kind": "ellipse", "center": list(body.center), "a": body.a, "b": body.b, "theta": body.theta}
    if isinstance(body, Polygon):
        return {"label": label, "kind": "polygon", "vertices": [[_num_out(c) for c in v] for v in body.vertices]}
    return {"label": label, "kind": "sampled", "points": [list(p) for p in body.points]}


def family_to_json(family: BodyFamily) -> dict:
    return {"bodies": [body_to_json(b, lab) for b, lab in zip(family.bodies, family.labels)]}


def body_from_json(item: dict) -> PlanarBody:
    kind = item["kind"]
    if kind == "circle":
        return Circle(tuple(item["center"]), item["r"])
    if kind == "ellipse":
        return Ellipse(tuple(item["center"]), item["a"], item["b"], item.get("theta", 0.0))
    if kind == "polygon":
        return Polygon(tuple(tuple(v) for v in item["vertices"]))
    if kind == "sampled":
        return SampledBoundary(tuple(tuple(p) for p in item["points"]))
    raise SchemaError(f"unknown body kind {kind!r}")


def family_from_json(data: dict) -> BodyFamily:
    try:
        items = data["bodies"]
        bodies = tuple(body_from_json(item) for item in items)
        labels = tuple(str(item.get("label", i)) for i, item in enumerate(items))
        return BodyFamily(bodies, labels)
    except SchemaError:
        raise
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"bad bodies JSON: {exc}") from exc
