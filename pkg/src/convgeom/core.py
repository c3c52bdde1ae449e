"""Finite convex geometries as set systems.

Subsets of a ground set of size ``n`` are plain ``int`` bit masks: bit ``i`` is
element ``i``. Every family emitted by this module is canonicalised (sorted by
cardinality, then lexicographically on the sorted index lists) so that two
geometries on the same ground set are equal iff their member tuples are equal.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import permutations
from typing import Callable, Iterable, Sequence

from .errors import GroundTooLarge, SchemaError, SearchCap

#: Cap on ground-set size for routines that scan all 2^n subsets.
MAX_EXHAUSTIVE = 20
#: Cap on ground-set size for the isomorphism search.
MAX_ISOMORPHISM = 10


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def indices_of(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def to_mask(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def canonical_key(mask: int) -> tuple:
    return (popcount(mask), indices_of(mask))


def _check_size(n: int, cap: int | None) -> None:
    cap = MAX_EXHAUSTIVE if cap is None else cap
    if n > cap:
        raise GroundTooLarge(f"2^{n} subsets exceeds the configured cap of 2^{cap}")


@dataclass(frozen=True)
class GroundSet:
    elements: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(str(e) for e in self.elements))
        if len(set(self.elements)) != len(self.elements):
            raise ValueError("ground set labels must be pairwise distinct")

    @classmethod
    def of_size(cls, n: int) -> "GroundSet":
        return cls(tuple(str(i) for i in range(n)))

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def full(self) -> int:
        return (1 << len(self.elements)) - 1

    def index(self, label: str) -> int:
        return self.elements.index(label)

    def mask(self, labels: Iterable[str]) -> int:
        return to_mask(self.index(x) for x in labels)

    def labels(self, mask: int) -> tuple[str, ...]:
        return tuple(self.elements[i] for i in indices_of(mask))


@dataclass(frozen=True)
class SetFamily:
    ground: GroundSet
    members: tuple[int, ...]

    def __post_init__(self):
        full = self.ground.full
        uniq = set(self.members)
        for x in uniq:
            if x < 0 or x & ~full:
                raise ValueError(f"member {x:b} is not a subset of the ground set")
        object.__setattr__(self, "members", tuple(sorted(uniq, key=canonical_key)))

    def __contains__(self, mask: int) -> bool:
        return mask in self.member_set

    def __iter__(self):
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    @property
    def member_set(self) -> frozenset[int]:
        # cached lazily; frozen dataclasses still own a __dict__
        try:
            return self.__dict__["_member_set"]
        except KeyError:
            s = frozenset(self.members)
            self.__dict__["_member_set"] = s
            return s


@dataclass(frozen=True)
class AxiomReport:
    valid: bool
    axiom: int | None = None
    witness: tuple = ()

    def __bool__(self) -> bool:
        return self.valid


def check_axioms(family: SetFamily) -> AxiomReport:
    """Check the three set-system axioms of a convex geometry.

    Axiom 1: the empty set and the ground set are members. Axiom 2: closure
    under pairwise intersection. Axiom 3: every member other than the ground
    set extends by a single element to another member. The witness is
    ``(missing_set,)`` for axiom 1, ``(X, Y)`` for axiom 2 and ``(X,)`` for
    axiom 3.
    """
    full = family.ground.full
    members = family.member_set
    for required in (0, full):
        if required not in members:
            return AxiomReport(False, 1, (required,))
    ms = family.members
    for a in range(len(ms)):
        for b in range(a + 1, len(ms)):
            if ms[a] & ms[b] not in members:
                return AxiomReport(False, 2, (ms[a], ms[b]))
    for x in ms:
        if x == full:
            continue
        outside = full & ~x
        if not any((x | (1 << e)) in members for e in indices_of(outside)):
            return AxiomReport(False, 3, (x,))
    return AxiomReport(True)


@dataclass(frozen=True)
class ConvexGeometry:
    family: SetFamily

    def __post_init__(self):
        report = check_axioms(self.family)
        if not report.valid:
            raise ValueError(f"family violates axiom {report.axiom}: witness {report.witness}")

    @classmethod
    def from_sets(cls, elements: Sequence[str], sets: Iterable[Iterable[int]]) -> "ConvexGeometry":
        ground = GroundSet(tuple(elements))
        return cls(SetFamily(ground, tuple(to_mask(s) for s in sets)))

    @property
    def ground(self) -> GroundSet:
        return self.family.ground

    @property
    def n(self) -> int:
        return len(self.family.ground)

    def is_convex(self, mask: int) -> bool:
        return mask in self.family

    def __eq__(self, other):
        if not isinstance(other, ConvexGeometry):
            return NotImplemented
        return self.ground == other.ground and self.family.members == other.family.members

    def __hash__(self):
        return hash((self.ground, self.family.members))


def free_geometry(ground: GroundSet) -> ConvexGeometry:
    return ConvexGeometry(SetFamily(ground, tuple(range(ground.full + 1))))


def closure(geometry: ConvexGeometry, mask: int) -> int:
    """Intersection of all convex sets containing ``mask``."""
    out = geometry.ground.full
    for c in geometry.family.members:
        if c & mask == mask:
            out &= c
    return out


def closure_operator(geometry: ConvexGeometry) -> Callable[[int], int]:
    """Tabulated closure; exhaustive, so subject to ``MAX_EXHAUSTIVE``."""
    n = geometry.n
    _check_size(n, None)
    full = geometry.ground.full
    members = geometry.family.member_set
    table = [full] * (full + 1)
    # closure(X) = intersection over the one-element extensions' closures,
    # filled top-down so every superset is final before X is read
    for x in range(full, -1, -1):
        if x in members:
            table[x] = x
            continue
        acc = full
        rest = full & ~x
        while rest:
            low = rest & -rest
            acc &= table[x | low]
            rest ^= low
        table[x] = acc
    return table.__getitem__


@dataclass(frozen=True)
class ClosureReport:
    valid: bool
    property: str | None = None
    witness: tuple = ()

    def __bool__(self) -> bool:
        return self.valid


def check_closure_operator(op: Callable[[int], int], ground: GroundSet, cap: int | None = None) -> ClosureReport:
    """Exhaustively test extensivity, monotonicity and idempotence."""
    n = len(ground)
    _check_size(n, cap)
    full = ground.full
    values = [op(x) for x in range(full + 1)]
    for x, cx in enumerate(values):
        if cx & x != x or cx & ~full:
            return ClosureReport(False, "extensive", (x,))
        if values[cx] != cx:
            return ClosureReport(False, "idempotent", (x,))
        rest = full & ~x
        while rest:
            low = rest & -rest
            if values[x | low] & cx != cx:
                return ClosureReport(False, "monotone", (x, x | low))
            rest ^= low
    return ClosureReport(True)


def check_anti_exchange(op: Callable[[int], int], ground: GroundSet, cap: int | None = None) -> ClosureReport:
    """Exhaustive anti-exchange test for an arbitrary closure evaluator.

    Returns a failing report with witness ``(A, x, y)`` when
    ``op(A | x) == op(A | y)`` for distinct ``x, y`` outside ``op(A)``.
    The closure-operator axioms and ``op(0) == 0`` are checked first.
    """
    pre = check_closure_operator(op, ground, cap)
    if not pre.valid:
        return pre
    if op(0) != 0:
        return ClosureReport(False, "empty", (0,))
    full = ground.full
    values = [op(x) for x in range(full + 1)]
    for a in range(full + 1):
        ca = values[a]
        outside = indices_of(full & ~ca)
        seen = {}
        for x in outside:
            c = values[a | (1 << x)]
            if c in seen:
                return ClosureReport(False, "anti-exchange", (a, seen[c], x))
            seen[c] = x
    return ClosureReport(True)


@dataclass(frozen=True)
class OrderingFamily:
    """A list of total orders on a ground set.

    ``orders[i]`` lists element indices from smallest to largest in the
    i-th order.
    """

    ground: GroundSet
    orders: tuple[tuple[int, ...], ...]
    _places: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        orders = tuple(tuple(int(x) for x in o) for o in self.orders)
        n = len(self.ground)
        if not orders:
            raise ValueError("an ordering family needs at least one order")
        for o in orders:
            if sorted(o) != list(range(n)):
                raise ValueError(f"{o} is not a permutation of 0..{n - 1}")
        object.__setattr__(self, "orders", orders)
        places = []
        for o in orders:
            p = [0] * n
            for pos, x in enumerate(o):
                p[x] = pos + 1
            places.append(tuple(p))
        object.__setattr__(self, "_places", tuple(places))

    @property
    def m(self) -> int:
        return len(self.orders)

    @property
    def n(self) -> int:
        return len(self.ground)

    def place(self, i: int, x: int) -> int:
        """1-based position of element ``x`` in order ``i``."""
        return self._places[i][x]

    def places(self, x: int) -> tuple[int, ...]:
        return tuple(p[x] for p in self._places)

    def padded(self, m: int) -> "OrderingFamily":
        """Cycle through the orders until there are ``m`` of them."""
        if m < self.m:
            raise ValueError(f"cannot pad {self.m} orders down to {m}")
        return OrderingFamily(self.ground, tuple(self.orders[k % self.m] for k in range(m)))

    def duplicated(self, s: int) -> "OrderingFamily":
        """Each order repeated ``s`` times in consecutive blocks."""
        if s < 1:
            raise ValueError("s must be positive")
        return OrderingFamily(self.ground, tuple(o for o in self.orders for _ in range(s)))


def geometry_from_orderings(orderings: OrderingFamily) -> ConvexGeometry:
    """Convex sets generated by a family of orders.

    X is convex iff X is empty or every y outside X is preceded by all of X
    in at least one order.
    """
    n = orderings.n
    _check_size(n, None)
    full = (1 << n) - 1
    # before[y] = masks of elements strictly preceding y, one per order
    before = [[0] * n for _ in range(orderings.m)]
    for i, order in enumerate(orderings.orders):
        acc = 0
        for x in order:
            before[i][x] = acc
            acc |= 1 << x
    per_element = [tuple(before[i][y] for i in range(orderings.m)) for y in range(n)]
    members = [0]
    for x in range(1, full + 1):
        ok = True
        for y in indices_of(full & ~x):
            if not any(x & ~b == 0 for b in per_element[y]):
                ok = False
                break
        if ok:
            members.append(x)
    return ConvexGeometry(SetFamily(orderings.ground, tuple(members)))


def _profiles(geometry: ConvexGeometry) -> list[tuple]:
    # per element: how many convex sets of each size contain it
    n = geometry.n
    prof = [[0] * (n + 1) for _ in range(n)]
    for c in geometry.family.members:
        k = popcount(c)
        for i in indices_of(c):
            prof[i][k] += 1
    return [tuple(p) for p in prof]


def isomorphic(g1: ConvexGeometry, g2: ConvexGeometry, cap: int | None = None) -> dict[int, int] | None:
    """Search for a bijection mapping the convex sets of ``g1`` onto those of ``g2``.

    Returns the map as ``{index in g1: index in g2}`` or ``None``.
    """
    n = g1.n
    if n != g2.n or len(g1.family) != len(g2.family):
        return None
    cap = MAX_ISOMORPHISM if cap is None else cap
    if n > cap:
        raise SearchCap(f"isomorphism search on {n} elements exceeds cap {cap}")
    p1, p2 = _profiles(g1), _profiles(g2)
    if sorted(p1) != sorted(p2):
        return None
    # assign most constrained elements first
    order = sorted(range(n), key=lambda i: sum(1 for j in range(n) if p1[j] == p1[i]))
    candidates = {i: [j for j in range(n) if p2[j] == p1[i]] for i in range(n)}
    members1 = g1.family.members
    members2 = g2.family.member_set
    assignment: dict[int, int] = {}
    used = set()

    def image(mask: int) -> int:
        return to_mask(assignment[i] for i in indices_of(mask))

    def consistent(domain: int, codomain: int) -> bool:
        inside1 = [c for c in members1 if c & ~domain == 0]
        inside2 = sum(1 for c in members2 if c & ~codomain == 0)
        if len(inside1) != inside2:
            return False
        return all(image(c) in members2 for c in inside1)

    def search(k: int, domain: int, codomain: int):
        if k == n:
            return dict(assignment)
        i = order[k]
        for j in candidates[i]:
            if j in used:
                continue
            assignment[i] = j
            used.add(j)
            if consistent(domain | (1 << i), codomain | (1 << j)):
                found = search(k + 1, domain | (1 << i), codomain | (1 << j))
                if found is not None:
                    return found
            used.discard(j)
            del assignment[i]
        return None

    return search(0, 0, 0)


# JSON --------------------------------------------------------------------


def geometry_to_json(geometry: ConvexGeometry) -> dict:
    return {
        "elements": list(geometry.ground.elements),
        "convex_sets": [list(indices_of(c)) for c in geometry.family.members],
    }


def geometry_from_json(data: dict) -> ConvexGeometry:
    try:
        elements = [str(e) for e in data["elements"]]
        sets = [[int(i) for i in s] for s in data["convex_sets"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"bad geometry JSON: {exc}") from exc
    for s in sets:
        if any(not 0 <= i < len(elements) for i in s):
            raise SchemaError(f"convex set {s} indexes outside the ground set")
    try:
        return ConvexGeometry.from_sets(elements, sets)
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc


def orderings_to_json(orderings: OrderingFamily) -> dict:
    return {"elements": list(orderings.ground.elements), "orders": [list(o) for o in orderings.orders]}


def orderings_from_json(data: dict) -> OrderingFamily:
    try:
        ground = GroundSet(tuple(str(e) for e in data["elements"]))
        return OrderingFamily(ground, tuple(tuple(int(x) for x in o) for o in data["orders"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"bad orderings JSON: {exc}") from exc


def dumps(data: dict) -> str:
    return json.dumps(data, indent=2, sort_keys=False) + "\n"


def all_orderings(n: int):
    """Every permutation of ``range(n)``; a helper for small enumerations."""
    return permutations(range(n))
