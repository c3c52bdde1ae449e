"""Representing an ordering-generated geometry by convex bodies in the plane.

Element x gets, on each direction ray v_i, a short radial segment whose
position along the ray encodes x's place in the i-th order. The inner and
outer polygons through the segment endpoints pinch a body K(x); any convex
body between them works.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .bodies import (
    BodyFamily,
    Polygon,
    SampledBoundary,
    family_to_json,
    geometry_from_bodies,
    polygon_halfplanes,
    semialgebraic_body,
)
from .core import ConvexGeometry, OrderingFamily, canonical_key
from .errors import LinePropertyViolated, ShapeContainmentFailed
from .exact import as_fraction, convex_hull, dot, fraction_str, in_convex_polygon

SHAPES = ("inner", "outer", "midpoint", "semialgebraic")
FLOAT_TOL = 1e-9
MAX_SHRINK = 60


def default_epsilon(m: int) -> float:
    """Half of ``min(|sec(2 pi / m)| - 1, 1)``.

    For m = 4 the secant is unbounded and the cap applies.
    """
    if m < 3:
        raise ValueError("at least three directions are needed")
    c = math.cos(2 * math.pi / m)
    bound = math.inf if abs(c) < 1e-12 else abs(1 / c) - 1
    return min(bound, 1.0) / 2


def _rational_unit(theta: float, max_den: int = 10**4) -> tuple[Fraction, Fraction]:
    # tan half-angle parametrisation gives points exactly on the unit circle
    theta = math.remainder(theta, 2 * math.pi)
    if abs(abs(theta) - math.pi) < 1e-15:
        return (Fraction(-1), Fraction(0))
    t = Fraction(math.tan(theta / 2)).limit_denominator(max_den)
    den = 1 + t * t
    return ((1 - t * t) / den, 2 * t / den)


@dataclass(frozen=True)
class DirectionFrame:
    m: int
    epsilon: float | Fraction
    directions: tuple[tuple, ...]
    exact: bool

    @property
    def float_directions(self) -> np.ndarray:
        return np.array([[float(x), float(y)] for x, y in self.directions])


def rational_frame(m: int, epsilon=None) -> DirectionFrame:
    """Exact frame: rational unit vectors within 1e-3 rad of angle 2 pi i / m."""
    if m < 3:
        raise ValueError("at least three directions are needed")
    dirs = []
    for i in range(1, m + 1):
        theta = 2 * math.pi * i / m
        u = _rational_unit(theta)
        err = abs(math.remainder(math.atan2(float(u[1]), float(u[0])) - theta, 2 * math.pi))
        if err > 1e-3:
            raise AssertionError(f"rational direction {i} is {err:.2e} rad off")
        dirs.append(u)
    eps = default_epsilon(m) if epsilon is None else epsilon
    eps = Fraction(eps).limit_denominator(10**6) if not isinstance(eps, Fraction) else eps
    return DirectionFrame(m, eps, tuple(dirs), True)


def float_frame(m: int, epsilon=None) -> DirectionFrame:
    if m < 3:
        raise ValueError("at least three directions are needed")
    dirs = tuple((math.cos(2 * math.pi * i / m), math.sin(2 * math.pi * i / m)) for i in range(1, m + 1))
    eps = default_epsilon(m) if epsilon is None else float(epsilon)
    return DirectionFrame(m, eps, dirs, False)


@dataclass(frozen=True)
class PinchedPair:
    element: int
    rho1: tuple
    rho2: tuple
    f1: tuple[tuple, ...]
    f2: tuple[tuple, ...]

    def inner(self) -> Polygon:
        return Polygon(self.f1)

    def outer(self) -> Polygon:
        return Polygon(self.f2)

    def midpoint(self) -> Polygon:
        return Polygon(tuple(((a[0] + b[0]) / 2, (a[1] + b[1]) / 2) for a, b in zip(self.f1, self.f2)))


def _radii(orderings: OrderingFamily, frame: DirectionFrame, x: int):
    m = frame.m
    step = frame.epsilon / (2 * max(m, orderings.n))
    rho1, rho2 = [], []
    for i in range(m):
        j = orderings.place(i, x)
        rho1.append(1 + (2 * j - 1) * step)
        rho2.append(1 + 2 * j * step)
    return rho1, rho2


def _pairs(orderings: OrderingFamily, frame: DirectionFrame) -> list[PinchedPair]:
    out = []
    for x in range(orderings.n):
        rho1, rho2 = _radii(orderings, frame, x)
        f1 = tuple((r * v[0], r * v[1]) for r, v in zip(rho1, frame.directions))
        f2 = tuple((r * v[0], r * v[1]) for r, v in zip(rho2, frame.directions))
        out.append(PinchedPair(x, tuple(rho1), tuple(rho2), f1, f2))
    return out


def line_property_margin(pairs: Sequence[PinchedPair], frame: DirectionFrame):
    """Smallest gap ``<P, v_i> - <Q, v_i>`` over P on ray i and Q on any other ray.

    Positive iff every point on another ray lies strictly inside the line
    through each point of ray i with normal v_i. Exact in an exact frame.
    """
    worst = None
    m = frame.m
    for i in range(m):
        v = frame.directions[i]
        lowest = min(dot(p.f1[i], v) for p in pairs)
        highest = max(dot(q, v) for p in pairs for k in range(m) if k != i for q in (p.f1[k], p.f2[k]))
        gap = lowest - highest
        worst = gap if worst is None or gap < worst else worst
    return worst


def disjoint_property(pairs: Sequence[PinchedPair], frame: DirectionFrame) -> bool:
    """Radial segments of distinct elements on a common ray do not meet."""
    for i in range(frame.m):
        spans = sorted((p.rho1[i], p.rho2[i]) for p in pairs)
        for (_, a2), (b1, _) in zip(spans, spans[1:]):
            if not a2 < b1:
                return False
    return True


def _padded(orderings: OrderingFamily, m: int | None) -> OrderingFamily:
    m = max(orderings.m, 3) if m is None else m
    if m < 3:
        raise ValueError("at least three directions are needed")
    return orderings.padded(m)


def build_pinched(orderings: OrderingFamily, frame: DirectionFrame, auto_shrink: bool = True) -> tuple[DirectionFrame, list[PinchedPair]]:
    """Radii, points and polygons for every element.

    Both the open-halfplane property and the disjointness of the radial
    segments are verified; with ``auto_shrink`` epsilon is halved until the
    halfplane property holds.
    """
    if orderings.m != frame.m:
        raise ValueError(f"{orderings.m} orders for a frame with {frame.m} directions")
    tol = 0 if frame.exact else FLOAT_TOL
    for _ in range(MAX_SHRINK):
        pairs = _pairs(orderings, frame)
        if not pairs or line_property_margin(pairs, frame) > tol:
            break
        if not auto_shrink:
            raise LinePropertyViolated(f"epsilon={float(frame.epsilon):g} breaks the halfplane property")
        frame = DirectionFrame(frame.m, frame.epsilon / 2, frame.directions, frame.exact)
    else:
        raise LinePropertyViolated("epsilon shrink loop exhausted")
    if not disjoint_property(pairs, frame):
        raise LinePropertyViolated("radial segments of distinct elements overlap")
    return frame, pairs


@dataclass(frozen=True)
class Representation:
    frame: DirectionFrame
    orderings: OrderingFamily
    pairs: tuple[PinchedPair, ...]
    shape: str
    bodies: BodyFamily
    alpha: tuple[float, ...] = ()


def _contains_exact(outer_vertices, points) -> bool:
    hull = convex_hull(list(outer_vertices))
    return all(in_convex_polygon(p, hull) for p in points)


def _float_inside(points: np.ndarray, polygon: np.ndarray, tol: float) -> bool:
    # polygon counterclockwise; strict inside by at least tol
    nxt = np.roll(polygon, -1, axis=0)
    e = nxt - polygon
    for a, ed in zip(polygon, e):
        s = ed[0] * (points[:, 1] - a[1]) - ed[1] * (points[:, 0] - a[0])
        if np.any(s / math.hypot(*ed) < tol):
            return False
    return True


def _semialgebraic_for(pair: PinchedPair) -> tuple[SampledBoundary, float]:
    mid = pair.midpoint()
    hp = polygon_halfplanes(mid)
    hp_arr = np.asarray(hp)
    inner = np.array([[float(x), float(y)] for x, y in pair.f1])
    outer = np.array([[float(x), float(y)] for x, y in pair.f2])
    values = np.prod(inner @ hp_arr[:, :2].T - hp_arr[:, 2], axis=1)
    alpha = 0.5 * float(values.min())
    anchors = [tuple(q) for q in inner] + [(float(x), float(y)) for x, y in mid.vertices]
    for _ in range(20):
        body = semialgebraic_body(hp, alpha, through=anchors)
        pts = np.array(body.points)
        if _float_inside(inner, pts, FLOAT_TOL) and _float_inside(pts, outer, -FLOAT_TOL):
            return body, alpha
        alpha /= 2
    raise ShapeContainmentFailed(f"no alpha keeps the traced curve between the pinching polygons for element {pair.element}")


def represent_planar(orderings: OrderingFamily, m: int | None = None, epsilon=None, shape: str = "inner",
                     exact: bool = True) -> Representation:
    """Bodies K(x) pinched between the inner and outer polygons.

    Fewer than three orders are padded cyclically, which generates the same
    geometry.
    """
    if shape not in SHAPES:
        raise ValueError(f"shape must be one of {SHAPES}")
    if shape == "semialgebraic" and exact:
        exact = False
    padded = _padded(orderings, m)
    frame = rational_frame(padded.m, epsilon) if exact else float_frame(padded.m, epsilon)
    frame, pairs = build_pinched(padded, frame)
    alphas = []
    bodies = []
    for p in pairs:
        if shape == "inner":
            body = p.inner()
        elif shape == "outer":
            body = p.outer()
        elif shape == "midpoint":
            body = p.midpoint()
        else:
            body, alpha = _semialgebraic_for(p)
            alphas.append(alpha)
        bodies.append(body)
    rep = Representation(frame, padded, tuple(pairs), shape, BodyFamily(tuple(bodies), orderings.ground.elements),
                         tuple(alphas))
    if shape in ("inner", "outer", "midpoint"):
        for p, body in zip(pairs, bodies):
            if not (_contains_exact(body.vertices, p.f1) and _contains_exact(p.f2, body.vertices)):
                raise ShapeContainmentFailed(f"element {p.element} escapes its pinching polygons")
    return rep


@dataclass(frozen=True)
class IsoReport:
    ok: bool
    derived: ConvexGeometry | None = None
    witness: int | None = None

    def __bool__(self) -> bool:
        return self.ok


def verify_isomorphism_planar(geometry: ConvexGeometry, rep: Representation) -> IsoReport:
    """Recompute the hull geometry of the bodies and compare under x -> K(x)."""
    derived = geometry_from_bodies(rep.bodies)
    a, b = set(geometry.family.members), set(derived.family.members)
    if a == b:
        return IsoReport(True, derived)
    witness = min(a ^ b, key=canonical_key)
    return IsoReport(False, derived, witness)


def check_sandwich(rep: Representation) -> bool:
    """R_m ⊆ K(x) ⊆ (1 + eps) R_m for every body.

    Exact for polygon shapes in an exact frame; the sampled shape is
    checked with a float margin.
    """
    dirs = rep.frame.directions
    eps = rep.frame.epsilon
    outer = [((1 + eps) * v[0], (1 + eps) * v[1]) for v in dirs]
    for body in rep.bodies.bodies:
        if isinstance(body, Polygon) and rep.frame.exact:
            if not _contains_exact(body.vertices, dirs) or not _contains_exact(outer, body.vertices):
                return False
        else:
            pts = np.array(body.points if isinstance(body, SampledBoundary) else [[float(x), float(y)] for x, y in body.vertices])
            reg = np.array([[float(x), float(y)] for x, y in dirs])
            big = np.array([[float(x), float(y)] for x, y in outer])
            if not _float_inside(reg, pts, -FLOAT_TOL) or not _float_inside(pts, big, -FLOAT_TOL):
                return False
    return True


def _num(x):
    return fraction_str(x) if isinstance(x, Fraction) else x


def representation_to_json(rep: Representation) -> dict:
    return {
        "frame": {
            "mode": "exact" if rep.frame.exact else "float",
            "m": rep.frame.m,
            "epsilon": _num(rep.frame.epsilon),
            "directions": [[_num(c) for c in v] for v in rep.frame.directions],
        },
        "orderings_used": [list(o) for o in rep.orderings.orders],
        "elements": [
            {
                "label": rep.orderings.ground.elements[p.element],
                "rho1": [_num(r) for r in p.rho1],
                "rho2": [_num(r) for r in p.rho2],
                "F1": [[_num(c) for c in q] for q in p.f1],
                "F2": [[_num(c) for c in q] for q in p.f2],
            }
            for p in rep.pairs
        ],
        "shape": rep.shape,
        "alpha": list(rep.alpha),
        "bodies": family_to_json(rep.bodies),
    }


def representation_from_json(data: dict) -> Representation:
    from .bodies import family_from_json
    from .core import GroundSet

    fr = data["frame"]
    exact = fr["mode"] == "exact"
    conv = as_fraction if exact else float
    frame = DirectionFrame(int(fr["m"]), conv(fr["epsilon"]), tuple(tuple(conv(c) for c in v) for v in fr["directions"]), exact)
    labels = tuple(e["label"] for e in data["elements"])
    orderings = OrderingFamily(GroundSet(labels), tuple(tuple(o) for o in data["orderings_used"]))
    pairs = tuple(
        PinchedPair(
            i,
            tuple(conv(r) for r in e["rho1"]),
            tuple(conv(r) for r in e["rho2"]),
            tuple(tuple(conv(c) for c in q) for q in e["F1"]),
            tuple(tuple(conv(c) for c in q) for q in e["F2"]),
        )
        for i, e in enumerate(data["elements"])
    )
    return Representation(frame, orderings, pairs, data["shape"], family_from_json(data["bodies"]), tuple(data.get("alpha", ())))
