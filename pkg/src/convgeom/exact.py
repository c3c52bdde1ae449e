"""Exact rational predicates.

Everything here works on ``int`` or ``fractions.Fraction`` inputs and never
rounds. Floats passed to :func:`as_fraction` are converted exactly.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

Number = int | Fraction
Point = tuple


def as_fraction(value) -> Fraction:
    """Exact conversion; strings may be ``"p/q"``, ``"p"`` or decimals."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(value, (int, float, str)):
        return Fraction(value)
    raise TypeError(f"cannot read {value!r} as a rational")


def fraction_str(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def sign(x) -> int:
    return (x > 0) - (x < 0)


def orient(a: Point, b: Point, c: Point):
    """Twice the signed area of triangle abc; positive for a left turn."""
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def cross(u: Point, v: Point):
    return u[0] * v[1] - u[1] * v[0]


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def perp(u: Point) -> Point:
    """Counterclockwise rotation by a right angle."""
    return (-u[1], u[0])


def sign_sqrt(a, b, d) -> int:
    """Sign of ``a + b*sqrt(d)`` for rational ``a, b`` and ``d >= 0``."""
    if d < 0:
        raise ValueError("negative radicand")
    sa = sign(a)
    sb = sign(b) if d else 0
    if sb == 0:
        return sa
    if sa == 0:
        return sb
    if sa == sb:
        return sa
    # opposite signs: compare magnitudes a^2 and b^2 d
    return sa * sign(a * a - b * b * d)


def integer_scale(points: Sequence[Point]) -> tuple[list[tuple[int, ...]], int]:
    """Multiply by the common denominator; orientation signs are preserved."""
    den = 1
    for p in points:
        for c in p:
            den = lcm(den, Fraction(c).denominator)
    out = [tuple(int(Fraction(c) * den) for c in p) for p in points]
    return out, den


def convex_hull(points: Sequence[Point]) -> list[Point]:
    """Monotone-chain hull, counterclockwise, collinear points dropped."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower: list = []
    for p in pts:
        while len(lower) >= 2 and orient(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and orient(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    return hull


def in_convex_polygon(p: Point, hull: Sequence[Point]) -> bool:
    """Closed membership of ``p`` in a hull returned by :func:`convex_hull`."""
    k = len(hull)
    if k == 0:
        return False
    if k == 1:
        return tuple(p) == tuple(hull[0])
    if k == 2:
        a, b = hull
        if orient(a, b, p) != 0:
            return False
        return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
    for i in range(k):
        if orient(hull[i], hull[(i + 1) % k], p) < 0:
            return False
    return True


def violated_edge(p: Point, hull: Sequence[Point]):
    """Outward normal of an edge separating ``p`` from the hull, or ``None``."""
    k = len(hull)
    if k >= 3:
        for i in range(k):
            a, b = hull[i], hull[(i + 1) % k]
            if orient(a, b, p) < 0:
                return (b[1] - a[1], a[0] - b[0])
        return None
    if k == 0:
        return None
    # degenerate hulls: separate along the offending direction
    if k == 1:
        d = (p[0] - hull[0][0], p[1] - hull[0][1])
        return d if d != (0, 0) else None
    a, b = hull
    o = orient(a, b, p)
    if o != 0:
        e = (b[0] - a[0], b[1] - a[1])
        return (-e[1], e[0]) if o > 0 else (e[1], -e[0])
    e = (b[0] - a[0], b[1] - a[1])
    if dot((p[0] - b[0], p[1] - b[1]), e) > 0:
        return e
    if dot((p[0] - a[0], p[1] - a[1]), e) < 0:
        return (-e[0], -e[1])
    return None


def _half(v: Point) -> int:
    return 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1


def is_strictly_convex_ccw(vertices: Sequence[Point]) -> bool:
    """Strictly convex, counterclockwise, winding exactly once."""
    k = len(vertices)
    if k < 3 or len(set(map(tuple, vertices))) != k:
        return False
    edges = [
        (vertices[(i + 1) % k][0] - vertices[i][0], vertices[(i + 1) % k][1] - vertices[i][1])
        for i in range(k)
    ]
    if any(cross(edges[i], edges[(i + 1) % k]) <= 0 for i in range(k)):
        return False
    wraps = sum(1 for i in range(k) if _half(edges[i]) == 1 and _half(edges[(i + 1) % k]) == 0)
    return wraps == 1


def solve_linear(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    """Unique solution of an over- or exactly-determined system, else ``None``.

    Returns ``None`` when the columns are dependent or the system is
    inconsistent.
    """
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    a = [list(map(Fraction, row)) + [Fraction(b)] for row, b in zip(matrix, rhs)]
    r = 0
    pivots = []
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if pivot is None:
            return None
        a[r], a[pivot] = a[pivot], a[r]
        pv = a[r][c]
        a[r] = [x / pv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    for i in range(r, rows):
        if a[i][cols] != 0:
            return None
    return [a[i][cols] for i in range(cols)]


def in_simplex(p: Sequence[Fraction], simplex: Sequence[Sequence[Fraction]]) -> bool | None:
    """Barycentric membership of ``p`` in the simplex spanned by ``simplex``.

    ``None`` signals affinely dependent vertices.
    """
    k = len(simplex)
    d = len(p)
    matrix = [[simplex[j][row] for j in range(k)] for row in range(d)]
    matrix.append([Fraction(1)] * k)
    rhs = list(p) + [Fraction(1)]
    lam = solve_linear(matrix, rhs)
    if lam is None:
        # dependent vertices, or p off the affine hull
        if affinely_independent(simplex):
            return False
        return None
    return all(x >= 0 for x in lam)


def affinely_independent(points: Sequence[Sequence[Fraction]]) -> bool:
    if len(points) <= 1:
        return True
    base = points[0]
    vecs = [[Fraction(x) - Fraction(y) for x, y in zip(p, base)] for p in points[1:]]
    return _rank(vecs) == len(vecs)


def _rank(rows: list[list[Fraction]]) -> int:
    a = [list(r) for r in rows]
    if not a:
        return 0
    rank = 0
    cols = len(a[0])
    for c in range(cols):
        pivot = next((i for i in range(rank, len(a)) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        for i in range(rank + 1, len(a)):
            if a[i][c] != 0:
                f = a[i][c] / a[rank][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[rank])]
        rank += 1
    return rank
