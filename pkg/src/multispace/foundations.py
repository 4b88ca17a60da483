"""Finite set machinery: Boolean laws, partial orders, equivalence classes,
and neutrosophic unions with scalar valuations.

Everything here is exhaustive over explicitly enumerated finite universes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import ContractError, SizeLimitError

BOOLEAN_LAW_BOUND = 6


@dataclass(frozen=True)
class FiniteUniverse:
    """An ordered list of distinct symbol names; order defines element indices."""

    elements: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(set(self.elements)) != len(self.elements):
            raise ContractError("universe contains duplicate symbols")

    @classmethod
    def of(cls, names: Sequence[str]) -> "FiniteUniverse":
        return cls(tuple(names))

    def index(self, name: str) -> int:
        try:
            return self.elements.index(name)
        except ValueError:
            raise KeyError(f"unknown symbol {name!r}") from None

    def name(self, idx: int) -> str:
        return self.elements[idx]

    def names(self, indices) -> tuple[str, ...]:
        return tuple(self.elements[i] for i in sorted(indices))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(range(len(self.elements)))

    def __contains__(self, name: str) -> bool:
        return name in self.elements


@dataclass(frozen=True)
class BinaryRelation:
    """A set of ordered index pairs over a finite universe."""

    universe: FiniteUniverse
    pairs: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        n = len(self.universe)
        for x, y in self.pairs:
            if not (0 <= x < n and 0 <= y < n):
                raise ContractError(f"pair ({x},{y}) out of range for universe of size {n}")

    @classmethod
    def from_names(cls, universe: FiniteUniverse, named_pairs) -> "BinaryRelation":
        pairs = frozenset((universe.index(a), universe.index(b)) for a, b in named_pairs)
        return cls(universe, pairs)

    def holds(self, x: int, y: int) -> bool:
        return (x, y) in self.pairs


@dataclass(frozen=True)
class LawResult:
    law: str
    name: str
    passed: bool
    witness: Optional[tuple]


@dataclass(frozen=True)
class LawReport:
    universe: FiniteUniverse
    results: tuple[LawResult, ...]

    @property
    def all_pass(self) -> bool:
        return all(r.passed for r in self.results)


def check_boolean_laws(universe: FiniteUniverse) -> LawReport:
    """Verify the seven lattice/complement laws over the full power set.

    Exhaustive over all subsets (and pairs/triples of subsets as each law
    requires), so the universe is capped at ``BOOLEAN_LAW_BOUND`` elements.
    """
    n = len(universe)
    if n > BOOLEAN_LAW_BOUND:
        raise SizeLimitError(
            f"boolean law check enumerates 2^|U| subsets; |U| = {n} exceeds bound {BOOLEAN_LAW_BOUND}"
        )
    full = frozenset(range(n))
    subsets = [frozenset(c) for r in range(n + 1) for c in itertools.combinations(range(n), r)]

    def comp(s: frozenset) -> frozenset:
        return full - s

    results = []

    def run(law: str, name: str, arity: int, pred) -> None:
        witness = None
        ok = True
        for combo in itertools.product(subsets, repeat=arity):
            if not pred(*combo):
                ok = False
                witness = combo
                break
        results.append(LawResult(law, name, ok, witness))

    run("L1", "idempotent", 1, lambda a: a | a == a and a & a == a)
    run("L2", "commutative", 2, lambda a, b: a | b == b | a and a & b == b & a)
    run(
        "L3",
        "associative",
        3,
        lambda a, b, c: a | (b | c) == (a | b) | c and a & (b & c) == (a & b) & c,
    )
    run("L4", "absorption", 2, lambda a, b: a & (a | b) == a and a | (a & b) == a)
    run(
        "L5",
        "distributive",
        3,
        lambda a, b, c: a | (b & c) == (a | b) & (a | c) and a & (b | c) == (a & b) | (a & c),
    )
    run(
        "L6",
        "universal bound",
        1,
        lambda a: frozenset() & a == frozenset()
        and frozenset() | a == a
        and full & a == a
        and full | a == full,
    )
    run("L7", "unary complement", 1, lambda a: a & comp(a) == frozenset() and a | comp(a) == full)
    return LawReport(universe, tuple(results))


@dataclass(frozen=True)
class PosetVerdict:
    is_poset: bool
    is_total: bool
    violated: Optional[str]
    witness: Optional[tuple[int, int]]


def poset_check(rel: BinaryRelation) -> PosetVerdict:
    """Check reflexivity, antisymmetry and transitivity; report the first failure."""
    n = len(rel.universe)
    for x in range(n):
        if not rel.holds(x, x):
            return PosetVerdict(False, False, "O1 reflexivity", (x, x))
    for x, y in rel.pairs:
        if x != y and rel.holds(y, x):
            return PosetVerdict(False, False, "O2 antisymmetry", (x, y))
    for x, y in rel.pairs:
        for z in range(n):
            if rel.holds(y, z) and not rel.holds(x, z):
                return PosetVerdict(False, False, "O3 transitivity", (x, z))
    total = all(rel.holds(x, y) or rel.holds(y, x) for x in range(n) for y in range(n))
    return PosetVerdict(True, total, None, None)


def poset_extremes(rel: BinaryRelation) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Maximal and minimal element sets of a verified non-empty poset.

    Both returned sets are non-empty for every finite non-empty poset.
    """
    if len(rel.universe) == 0:
        raise ContractError("extremes of an empty poset are undefined")
    verdict = poset_check(rel)
    if not verdict.is_poset:
        raise ContractError(f"relation is not a poset: {verdict.violated} at {verdict.witness}")
    n = len(rel.universe)
    maximal = tuple(
        a for a in range(n) if all(x == a for x in range(n) if rel.holds(a, x))
    )
    minimal = tuple(
        a for a in range(n) if all(x == a for x in range(n) if rel.holds(x, a))
    )
    return maximal, minimal


def hasse_pairs(rel: BinaryRelation) -> frozenset[tuple[int, int]]:
    """Transitive reduction of a verified poset, for documentation/export only."""
    verdict = poset_check(rel)
    if not verdict.is_poset:
        raise ContractError("hasse export requires a poset")
    n = len(rel.universe)
    covers = set()
    for x, y in rel.pairs:
        if x == y:
            continue
        if any(rel.holds(x, z) and rel.holds(z, y) and z not in (x, y) for z in range(n)):
            continue
        covers.add((x, y))
    return frozenset(covers)


@dataclass(frozen=True)
class Partition:
    classes: tuple[tuple[int, ...], ...]
    uniform_class_size: Optional[int]
    quotient_check: Optional[bool]

    @property
    def count(self) -> int:
        return len(self.classes)


def equivalence_classes(rel: BinaryRelation) -> Partition:
    """Partition the universe by an equivalence relation.

    When all classes share one size s, the class count is checked against
    |universe| / s and the outcome attached to the result.
    """
    n = len(rel.universe)
    for x in range(n):
        if not rel.holds(x, x):
            raise ContractError(f"not an equivalence: R1 reflexivity fails at {x}")
    for x, y in rel.pairs:
        if not rel.holds(y, x):
            raise ContractError(f"not an equivalence: R2 symmetry fails at ({x},{y})")
    for x, y in rel.pairs:
        for z in range(n):
            if rel.holds(y, z) and not rel.holds(x, z):
                raise ContractError(f"not an equivalence: R3 transitivity fails at ({x},{z})")
    seen: set[int] = set()
    classes = []
    for x in range(n):
        if x in seen:
            continue
        cls = tuple(y for y in range(n) if rel.holds(x, y))
        seen.update(cls)
        classes.append(cls)
    sizes = {len(c) for c in classes}
    if len(sizes) == 1 and n > 0:
        size = sizes.pop()
        return Partition(tuple(classes), size, len(classes) == n // size and n % size == 0)
    return Partition(tuple(classes), None, None)


class NeutrosophicComponent:
    """A carrier subset with truth/indeterminacy/falsehood values per element."""

    def __init__(self, carrier: Sequence[int], f_true, f_indet, f_false):
        self.carrier = tuple(sorted(carrier))
        self.f_true = dict(f_true)
        self.f_indet = dict(f_indet)
        self.f_false = dict(f_false)
        for table, label in ((self.f_true, "T"), (self.f_indet, "I"), (self.f_false, "F")):
            for x in self.carrier:
                v = table.get(x)
                if v is None:
                    raise ContractError(f"{label}-value missing for carrier element {x}")
                if not 0 <= v <= 1:
                    raise ContractError(f"{label}-value {v} out of [0,1] at element {x}")

    @classmethod
    def constant(cls, carrier: Sequence[int], t: float, i: float, f: float) -> "NeutrosophicComponent":
        carrier = tuple(carrier)
        return cls(carrier, {x: t for x in carrier}, {x: i for x in carrier}, {x: f for x in carrier})

    def is_true_extremal(self) -> bool:
        return all(
            self.f_true[x] == 1 and self.f_indet[x] == 0 and self.f_false[x] == 0
            for x in self.carrier
        )

    def is_false_extremal(self) -> bool:
        return all(
            self.f_false[x] == 1 and self.f_true[x] == 0 and self.f_indet[x] == 0
            for x in self.carrier
        )


@dataclass(frozen=True)
class UnionClassification:
    case: int
    abstract_set: Optional[frozenset[int]]
    description: str


def neutrosophic_union(
    parts: Sequence[NeutrosophicComponent], universe_size: Optional[int] = None
) -> UnionClassification:
    """Classify a union of valued components into one of four extremal cases.

    Cases 1-3 admit an equivalent abstract set (plain union, complement of
    the union, or a mixed split); case 4 has no abstract-set equivalent.
    Complements are taken in a universe of ``universe_size`` elements
    (default: 1 + the largest carrier index seen).
    """
    if not parts:
        raise ContractError("union of zero neutrosophic components")
    if universe_size is None:
        universe_size = 1 + max((x for p in parts for x in p.carrier), default=-1)
    full = frozenset(range(universe_size))
    t_parts = [p for p in parts if p.is_true_extremal()]
    f_parts = [p for p in parts if p.is_false_extremal()]
    if len(t_parts) == len(parts):
        union = frozenset(x for p in parts for x in p.carrier)
        return UnionClassification(1, union, "plain union of the carriers")
    if len(f_parts) == len(parts):
        union = frozenset(x for p in parts for x in p.carrier)
        return UnionClassification(2, full - union, "complement of the carrier union")
    if len(t_parts) + len(f_parts) == len(parts):
        t_union = frozenset(x for p in t_parts for x in p.carrier)
        f_union = frozenset(x for p in f_parts for x in p.carrier)
        return UnionClassification(
            3, t_union | (full - f_union), "union of true carriers plus complement of the rest"
        )
    return UnionClassification(4, None, "general neutrosophic set; no abstract-set equivalent")


def valuate_union(values: Sequence[float], carriers: Sequence[frozenset]) -> float:
    """Inclusion-exclusion valuation of a union of valued sets.

    Intersections that are actually empty contribute 0 (so pairwise-disjoint
    unions are valued additively); non-empty intersections are valued by the
    product of their members' values.
    """
    if len(values) != len(carriers):
        raise ContractError("values and carriers must pair up")
    for v in values:
        if not 0 <= v <= 1:
            raise ContractError(f"component value {v} out of [0,1]")
    k = len(values)
    total = 0
    for r in range(1, k + 1):
        for combo in itertools.combinations(range(k), r):
            meet = frozenset.intersection(*(frozenset(carriers[i]) for i in combo))
            if not meet:
                continue
            term = 1
            for i in combo:
                term = term * values[i]
            total = total + (term if r % 2 == 1 else -term)
    return total
