"""Axis-aligned ellipsoids close to the unit ball representing a geometry.

Element g receives the ellipsoid whose i-th semi-axis is f(L + 1 - j_i(g)),
where j_i(g) is g's place in the i-th order and f is a slowly decreasing
sequence starting at s. Semi-axes therefore lie in (1, s].

The sequence is stored through its exact excess ``f(i)^2 - 1``, which is a
rational number whenever s is; floats of f itself collapse to 1.0 long
before the excess reaches zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .core import (
    MAX_EXHAUSTIVE,
    ConvexGeometry,
    GroundSet,
    OrderingFamily,
    _check_size,
    closure,
    geometry_from_orderings,
    indices_of,
    orderings_from_json,
)
from .errors import InvalidScale, OracleViolation, SchemaError
from .exact import as_fraction

DEFAULT_SAMPLES = 20_000
DEFAULT_TOL = 1e-9
IDENTITY_TOL = 1e-12
MAX_DIM = 8


def _excess_to_f(g: Fraction) -> float:
    return math.sqrt(1 + float(g))


def _f_minus_one(g: Fraction) -> float:
    # sqrt(1 + g) - 1 without cancellation
    gf = float(g)
    return gf / (1 + math.sqrt(1 + gf))


@dataclass(frozen=True)
class FSequence:
    """f(1) = s, f(i+1) = sqrt((f(i)^2 + d - 1) / d), for i = 1..N."""

    d: int
    s: Fraction
    excess: tuple[Fraction, ...]

    @property
    def n(self) -> int:
        return len(self.excess)

    def g(self, i: int) -> Fraction:
        """Exact ``f(i)^2 - 1`` (1-based)."""
        if not 1 <= i <= len(self.excess):
            raise IndexError(f"f({i}) outside 1..{len(self.excess)}")
        return self.excess[i - 1]

    def __call__(self, i: int) -> float:
        return _excess_to_f(self.g(i))

    def minus_one(self, i: int) -> float:
        return _f_minus_one(self.g(i))

    @property
    def values(self) -> tuple[float, ...]:
        return tuple(_excess_to_f(g) for g in self.excess)

    def identity_error(self) -> float:
        """Largest ``|d (f(i+1)^2 - 1) - (f(i)^2 - 1)|`` over consecutive floats."""
        vals = self.values
        worst = 0.0
        for a, b in zip(vals, vals[1:]):
            worst = max(worst, abs(self.d * (b * b - 1) - (a * a - 1)))
        return worst


def f_sequence(d: int, s, n: int) -> FSequence:
    s = as_fraction(s)
    if s <= 1:
        raise InvalidScale(f"s must exceed 1, got {float(s)}")
    if d < 1 or n < 1:
        raise ValueError("d and N must be positive")
    first = s * s - 1
    excess = tuple(first / Fraction(d) ** k for k in range(n))
    seq = FSequence(d, s, excess)
    if any(g <= 0 for g in excess):
        raise AssertionError("f(i) <= 1")
    if d > 1 and any(b >= a for a, b in zip(excess, excess[1:])):
        raise AssertionError("f is not strictly decreasing")
    if any(d * b != a for a, b in zip(excess, excess[1:])):
        raise AssertionError("recurrence identity broken")
    if seq.identity_error() >= IDENTITY_TOL:
        raise AssertionError(f"float identity error {seq.identity_error():.3e}")
    return seq


@dataclass(frozen=True)
class AxisEllipsoid:
    semiaxes: tuple[float, ...]

    def __post_init__(self):
        axes = tuple(float(a) for a in self.semiaxes)
        if not axes or any(not a > 0 for a in axes):
            raise ValueError("semi-axes must be positive")
        object.__setattr__(self, "semiaxes", axes)

    @property
    def dim(self) -> int:
        return len(self.semiaxes)

    def support_many(self, dirs: np.ndarray) -> np.ndarray:
        a = np.asarray(self.semiaxes)
        return np.sqrt(((dirs * a) ** 2).sum(axis=1))


def ellipsoid_support(e: AxisEllipsoid, x: Sequence[float]) -> float:
    x = np.asarray(x, dtype=float)
    if x.shape != (e.dim,):
        raise ValueError(f"direction needs {e.dim} coordinates")
    if abs(float(np.linalg.norm(x)) - 1) > 1e-12:
        raise ValueError("direction must be a unit vector")
    return float(e.support_many(x[None, :])[0])


@dataclass(frozen=True)
class EllipsoidRepresentation:
    """``index[g][i]`` is the f-index of element g on axis i."""

    dim: int
    s: Fraction
    orderings: OrderingFamily
    fseq: FSequence
    index: tuple[tuple[int, ...], ...]
    ellipsoids: tuple[AxisEllipsoid, ...] = field(repr=False)

    @property
    def ground(self) -> GroundSet:
        return self.orderings.ground

    @property
    def n(self) -> int:
        return self.orderings.n

    def excess(self, g: int, i: int) -> Fraction:
        return self.fseq.g(self.index[g][i])


def represent_ellipsoids(orderings: OrderingFamily, s, dim: int | None = None) -> EllipsoidRepresentation:
    """One ellipsoid per element, in dimension ``dim`` (default ``max(m, n)``).

    The orders are repeated cyclically to ``dim`` of them, which leaves the
    generated geometry unchanged. f-indices run from ``L + 1 - j`` with
    ``L = max(dim, n)`` so that none drops below 1.
    """
    s = as_fraction(s)
    if s <= 1:
        raise InvalidScale(f"s must exceed 1, got {float(s)}")
    n, m = orderings.n, orderings.m
    dim = max(m, n) if dim is None else dim
    if dim < m:
        raise ValueError(f"dimension {dim} is below the number of orders {m}")
    if dim < 2 and n > 1:
        raise ValueError("the sequence is constant in dimension 1; use dim >= 2")
    if dim > MAX_DIM:
        raise ValueError(f"dimension {dim} exceeds {MAX_DIM}")
    used = orderings.padded(dim)
    top = max(dim, n)
    fseq = f_sequence(dim, s, top)
    index = tuple(tuple(top + 1 - used.place(i, g) for i in range(dim)) for g in range(n))
    ellipsoids = tuple(AxisEllipsoid(tuple(fseq(k) for k in row)) for row in index)
    if len(set(index)) != len(index):
        raise AssertionError("two elements share an ellipsoid")
    return EllipsoidRepresentation(dim, s, used, fseq, index, ellipsoids)


def ball_closeness(rep: EllipsoidRepresentation) -> float:
    """Largest ``a_i(g) - 1``; every ellipsoid sits between B and (1 + value) B."""
    if rep.n == 0:
        return 0.0
    return max(rep.fseq.minus_one(k) for row in rep.index for k in row)


def axis_orderings(rep: EllipsoidRepresentation) -> OrderingFamily:
    """Orders read off the support values along each coordinate axis."""
    orders = tuple(
        tuple(sorted(range(rep.n), key=lambda g: rep.excess(g, i))) for i in range(rep.dim)
    )
    return OrderingFamily(rep.ground, orders)


def sample_directions(dim: int, samples: int, seed: int) -> np.ndarray:
    """Normalised Gaussian directions followed by the 2 * dim signed axes."""
    rng = np.random.default_rng(seed)
    dirs = rng.standard_normal((samples, dim))
    norms = np.linalg.norm(dirs, axis=1)
    dirs = dirs[norms > 0] / norms[norms > 0, None]
    axes = np.vstack([np.eye(dim), -np.eye(dim)])
    return np.vstack([dirs, axes])


def support_table(rep: EllipsoidRepresentation, dirs: np.ndarray) -> np.ndarray:
    if rep.n == 0:
        return np.zeros((0, len(dirs)))
    return np.vstack([e.support_many(dirs) for e in rep.ellipsoids])


def ellipsoid_closure(rep: EllipsoidRepresentation, samples: int = 2000, seed: int = 42, tol: float = DEFAULT_TOL):
    """Sampled ``mask -> mask`` hull closure over the ellipsoid family.

    g joins the closure of X when its support never exceeds the largest
    support over X by more than ``tol`` on the sampled directions. The
    signed axes are always among them.
    """
    table = support_table(rep, sample_directions(rep.dim, samples, seed))
    cache: dict[int, int] = {}

    def op(mask: int) -> int:
        if mask == 0:
            return 0
        if mask not in cache:
            top = table[list(indices_of(mask))].max(axis=0)
            inside = np.all(table <= top + tol, axis=1)
            out = mask
            for g in np.flatnonzero(inside):
                out |= 1 << int(g)
            cache[mask] = out
        return cache[mask]

    return op


@dataclass
class EllipsoidReport:
    ok: bool
    reason: str = ""
    convex_checked: int = 0
    nonconvex_checked: int = 0
    identity_error: float = 0.0
    worst_margin: float = math.inf
    worst_direction: tuple[float, ...] | None = None
    witness: tuple | None = None


def _separating_axis(rep: EllipsoidRepresentation, g: int, mask: int) -> int | None:
    for i in range(rep.dim):
        mine = rep.excess(g, i)
        if all(mine > rep.excess(h, i) for h in indices_of(mask)):
            return i
    return None


def _chain_witness(rep: EllipsoidRepresentation, g: int, mask: int) -> list[int] | None:
    # per axis, a member of X placed after g
    out = []
    for i in range(rep.dim):
        later = [h for h in indices_of(mask) if rep.index[h][i] < rep.index[g][i]]
        if not later:
            return None
        out.append(later[0])
    return out


def verify_isomorphism_ellipsoid(
    geometry: ConvexGeometry,
    rep: EllipsoidRepresentation,
    samples: int = DEFAULT_SAMPLES,
    seed: int = 42,
    tol: float = DEFAULT_TOL,
) -> EllipsoidReport:
    """Check that hull containment among the ellipsoids reproduces ``geometry``.

    Convex X: every g outside X has an axis along which its semi-axis beats
    all of X exactly, so a coordinate halfspace separates it.
    Non-convex X: some g outside X has, on every axis i, a member h_i of X
    after it. Then Phi(g) lies in the hull of the ellipsoids E_i that are
    unit balls stretched to f(index - 1) along axis i; this is certified by
    the exact recurrence identity, by E_i being inside Phi(h_i), and by a
    sampled support comparison. A failing sample raises OracleViolation.
    """
    n = geometry.n
    _check_size(n, MAX_EXHAUSTIVE)
    if tuple(rep.ground.elements) != tuple(geometry.ground.elements):
        return EllipsoidReport(False, "ground sets differ")
    if geometry_from_orderings(rep.orderings) != geometry:
        return EllipsoidReport(False, "representation orders do not generate the geometry")
    seq = rep.fseq
    report = EllipsoidReport(True, identity_error=seq.identity_error())
    if report.identity_error >= IDENTITY_TOL:
        return EllipsoidReport(False, f"identity error {report.identity_error:.3e}")

    dirs = sample_directions(rep.dim, samples, seed) if n else np.zeros((0, rep.dim))
    table = support_table(rep, dirs)
    d = rep.dim
    for mask in range(1, geometry.ground.full + 1):
        if geometry.is_convex(mask):
            for g in indices_of(geometry.ground.full & ~mask):
                if _separating_axis(rep, g, mask) is None:
                    return EllipsoidReport(False, "no separating axis", witness=(mask, g))
            report.convex_checked += 1
            continue
        g = next(x for x in indices_of(closure(geometry, mask) & ~mask))
        helpers = _chain_witness(rep, g, mask)
        if helpers is None:
            return EllipsoidReport(False, "no per-axis successors", witness=(mask, g))
        for i, h in enumerate(helpers):
            k = rep.index[g][i]
            # E_i has semi-axis f(k - 1) on axis i and 1 elsewhere
            if d * seq.g(k) != seq.g(k - 1):
                return EllipsoidReport(False, "recurrence identity fails", witness=(mask, g, i))
            if seq.g(k - 1) > rep.excess(h, i):
                return EllipsoidReport(False, "E_i not inside Phi(h_i)", witness=(mask, g, i, h))
        top = table[sorted(set(helpers))].max(axis=0)
        margin = top + tol - table[g]
        worst = int(np.argmin(margin))
        if margin[worst] < report.worst_margin:
            report.worst_margin = float(margin[worst])
            report.worst_direction = tuple(float(v) for v in dirs[worst])
        if margin[worst] < 0:
            raise OracleViolation(
                f"support of {geometry.ground.elements[g]} exceeds the hull by {-margin[worst]:.3e}",
                float(margin[worst]),
                tuple(float(v) for v in dirs[worst]),
            )
        report.nonconvex_checked += 1
    return report


def _s_json(s: Fraction):
    f = float(s)
    return f if Fraction(f) == s else f"{s.numerator}/{s.denominator}"


def representation_to_json(rep: EllipsoidRepresentation) -> dict:
    return {
        "dim": rep.dim,
        "s": _s_json(rep.s),
        "elements": [
            {"label": lab, "semiaxes": list(e.semiaxes)} for lab, e in zip(rep.ground.elements, rep.ellipsoids)
        ],
        "orderings_used": [list(o) for o in rep.orderings.orders],
    }


def representation_from_json(data: dict) -> EllipsoidRepresentation:
    """Rebuild from s and the orders; the stored semi-axes must agree."""
    try:
        labels = [str(e["label"]) for e in data["elements"]]
        semiaxes = [[float(a) for a in e["semiaxes"]] for e in data["elements"]]
        orderings = orderings_from_json({"elements": labels, "orders": data["orderings_used"]})
        rep = represent_ellipsoids(orderings, as_fraction(data["s"]), int(data["dim"]))
    except (KeyError, TypeError, ValueError, ZeroDivisionError, InvalidScale) as exc:
        raise SchemaError(f"bad ellipsoid JSON: {exc}") from exc
    for stored, e in zip(semiaxes, rep.ellipsoids):
        if len(stored) != rep.dim or any(abs(a - b) > 1e-12 for a, b in zip(stored, e.semiaxes)):
            raise SchemaError("semi-axes disagree with s and the orders")
    return rep
