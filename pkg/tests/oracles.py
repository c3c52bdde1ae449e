"""Independent brute-force oracles and seeded generators used by the tests.

The oracles never call the library's algorithms and work on Python frozensets;
the generators only use it to build valid inputs.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from itertools import combinations, permutations

from convgeom.bodies import BodyFamily, Circle, Polygon
from convgeom.core import GroundSet, OrderingFamily
from convgeom.exact import convex_hull


def subsets(n):
    for k in range(n + 1):
        for c in combinations(range(n), k):
            yield frozenset(c)


def brute_convex_sets(orders, n):
    """X convex iff every y outside X comes after all of X in some order."""
    out = set()
    for x in subsets(n):
        ok = True
        for y in range(n):
            if y in x:
                continue
            found = False
            for order in orders:
                pos = {e: k for k, e in enumerate(order)}
                if all(pos[z] < pos[y] for z in x):
                    found = True
                    break
            if not found:
                ok = False
                break
        if ok:
            out.add(x)
    return out


def brute_closure(convex_sets, x):
    """Intersection of all convex supersets."""
    result = None
    for c in convex_sets:
        if x <= c:
            result = c if result is None else result & c
    return result


def brute_is_geometry(family, n):
    fam = set(family)
    if frozenset() not in fam or frozenset(range(n)) not in fam:
        return False
    for a in fam:
        for b in fam:
            if a & b not in fam:
                return False
    for c in fam:
        if len(c) == n:
            continue
        if not any(c | {y} in fam for y in range(n) if y not in c):
            return False
    return True


def brute_width(sets):
    """Largest antichain by trying every subfamily, biggest first."""
    sets = list(set(sets))
    for k in range(len(sets), 0, -1):
        for combo in combinations(sets, k):
            if all(not (a <= b or b <= a) for a, b in combinations(combo, 2)):
                return k
    return 0


def brute_min_generating(convex_sets, n, limit=4):
    """Fewest orders whose generated family equals ``convex_sets``."""
    target = set(convex_sets)
    candidates = []
    for p in permutations(range(n)):
        prefixes = {frozenset(p[:k]) for k in range(n + 1)}
        if prefixes <= target:
            candidates.append(p)
    for k in range(1, limit + 1):
        for combo in combinations(candidates, k):
            if brute_convex_sets(combo, n) == target:
                return k
    return None


def random_orderings(rng: random.Random, max_n=6, max_m=3) -> OrderingFamily:
    n = rng.randint(1, max_n)
    m = rng.randint(1, max_m)
    ground = GroundSet(tuple("abcdefghij"[:n]))
    orders = []
    for _ in range(m):
        o = list(range(n))
        rng.shuffle(o)
        orders.append(tuple(o))
    return OrderingFamily(ground, tuple(orders))


def random_circle(rng: random.Random) -> Circle:
    c = (Fraction(rng.randint(-40, 40), 8), Fraction(rng.randint(-40, 40), 8))
    return Circle(c, Fraction(rng.randint(2, 24), 8))


def random_polygon(rng: random.Random) -> Polygon:
    while True:
        cx, cy = rng.randint(-5, 5), rng.randint(-5, 5)
        pts = [(Fraction(cx * 4 + rng.randint(-8, 8), 4), Fraction(cy * 4 + rng.randint(-8, 8), 4)) for _ in range(6)]
        hull = convex_hull(pts)
        if len(hull) >= 3:
            return Polygon(tuple(hull))


def random_body_family(rng: random.Random, max_n=5) -> BodyFamily:
    n = rng.randint(2, max_n)
    bodies = []
    while len(bodies) < n:
        b = random_circle(rng) if rng.random() < 0.5 else random_polygon(rng)
        if b not in bodies:
            bodies.append(b)
    return BodyFamily(tuple(bodies), tuple(f"K{i}" for i in range(n)))


def circle_tangent_count(c1, r1, c2, r2):
    """Common supporting lines of two distinct circles from the centre distance."""
    d = math.dist(c1, c2)
    gap = abs(r1 - r2)
    if d < gap - 1e-12:
        return 0
    if abs(d - gap) <= 1e-12:
        return 1
    return 2
