"""Multi-vector spaces: finite unions of subspaces of one ambient space over
a prime field, with mixed-chain (in)dependence, greedy bases, and the
inclusion-exclusion dimension formula checked against the greedy count.

All components carry nominally distinct operation labels but act through the
shared ambient arithmetic; a mixed chain is *defined* only when each partial
sum and its next term lie together in some component.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import ContractError, InternalCheckError, SizeLimitError

Vector = tuple[int, ...]

DIM_FORMULA_BOUND = 5
AMBIENT_SIZE_BOUND = 4096


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p**0.5) + 1))


@dataclass(frozen=True)
class AmbientSpace:
    """Coordinate tuples of length n over the prime field GF(p)."""

    p: int
    n: int

    def __post_init__(self) -> None:
        if not _is_prime(self.p):
            raise ContractError(f"field order {self.p} is not prime")
        if self.n < 1:
            raise ContractError("ambient dimension must be >= 1")
        if self.p**self.n > AMBIENT_SIZE_BOUND:
            raise SizeLimitError(f"ambient space of {self.p}^{self.n} vectors exceeds desk scale")

    def add(self, a: Vector, b: Vector) -> Vector:
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def scale(self, k: int, a: Vector) -> Vector:
        return tuple((k * x) % self.p for x in a)

    def zero(self) -> Vector:
        return (0,) * self.n

    def check_vector(self, v) -> Vector:
        v = tuple(int(c) % self.p for c in v)
        if len(v) != self.n:
            raise ContractError(f"vector {v} does not have {self.n} coordinates")
        return v


def span(ambient: AmbientSpace, generators: Iterable[Vector]) -> frozenset[Vector]:
    """The subspace generated: closure of the generators under add and scale."""
    vectors = {ambient.zero()}
    frontier = [ambient.check_vector(g) for g in generators]
    vectors.update(frontier)
    while frontier:
        v = frontier.pop()
        new = [ambient.scale(k, v) for k in range(2, ambient.p)]
        new.extend(ambient.add(v, w) for w in list(vectors))
        for w in new:
            if w not in vectors:
                vectors.add(w)
                frontier.append(w)
    return frozenset(vectors)


def rank(ambient: AmbientSpace, vectors: Iterable[Vector]) -> int:
    """Rank over GF(p) by Gaussian elimination."""
    p = ambient.p
    rows = [list(v) for v in vectors]
    r = 0
    for col in range(ambient.n):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col] % p), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = pow(rows[r][col], p - 2, p)
        rows[r] = [(x * inv) % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] % p:
                factor = rows[i][col]
                rows[i] = [(x - factor * y) % p for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def canonical_basis(ambient: AmbientSpace, vectors: Iterable[Vector]) -> tuple[Vector, ...]:
    """Reduced-echelon basis rows of the span of the given vectors."""
    p = ambient.p
    rows = [list(v) for v in vectors]
    basis: list[list[int]] = []
    for row in rows:
        row = row[:]
        for b in basis:
            lead = next(i for i, x in enumerate(b) if x)
            if row[lead]:
                factor = row[lead]
                row = [(x - factor * y) % p for x, y in zip(row, b)]
        if any(row):
            lead = next(i for i, x in enumerate(row) if x)
            inv = pow(row[lead], p - 2, p)
            row = [(x * inv) % p for x in row]
            basis.append(row)
    basis.sort(key=lambda b: next(i for i, x in enumerate(b) if x))
    # back-substitute to reduced form
    for i, b in enumerate(basis):
        lead = next(j for j, x in enumerate(b) if x)
        for other in basis[:i]:
            if other[lead]:
                factor = other[lead]
                for j in range(len(other)):
                    other[j] = (other[j] - factor * b[j]) % p
    return tuple(tuple(b) for b in basis)


@dataclass(frozen=True)
class VectorComponent:
    name: str
    generators: tuple[Vector, ...]
    vectors: frozenset[Vector]
    add_label: str
    scale_label: str


class MultiVectorSpace:
    """Named subspace components of a common ambient space."""

    def __init__(self, ambient: AmbientSpace, components: Sequence[VectorComponent]):
        self.ambient = ambient
        self.components = tuple(components)
        for comp in self.components:
            if comp.vectors != span(ambient, comp.generators):
                raise ContractError(f"component {comp.name!r} is not closed: not a subspace")

    @classmethod
    def from_generators(
        cls, ambient: AmbientSpace, generator_lists: Sequence[Sequence[Vector]], names=None
    ) -> "MultiVectorSpace":
        comps = []
        for i, gens in enumerate(generator_lists):
            gens = tuple(ambient.check_vector(g) for g in gens)
            name = names[i] if names else f"V{i + 1}"
            comps.append(
                VectorComponent(name, gens, span(ambient, gens), f"+{i + 1}", f".{i + 1}")
            )
        return cls(ambient, comps)

    def union_vectors(self) -> frozenset[Vector]:
        out: set[Vector] = set()
        for comp in self.components:
            out.update(comp.vectors)
        return frozenset(out)

    def components_containing(self, v: Vector) -> tuple[int, ...]:
        return tuple(i for i, comp in enumerate(self.components) if v in comp.vectors)

    def share_component(self, a: Vector, b: Vector) -> bool:
        return any(a in c.vectors and b in c.vectors for c in self.components)


@dataclass(frozen=True)
class SubspaceReport:
    verdict: bool
    witness: Optional[dict]


def is_multivector_subspace(
    sub_components: Sequence[Iterable[Vector]], parent: MultiVectorSpace
) -> SubspaceReport:
    """Subspace criterion for a union of per-component subsets.

    Direct route: every defined scale-then-add combination of union members
    stays in the union.  Componentwise route: each subset meets its component
    in a subspace (or not at all).  Both routes must agree.
    """
    ambient = parent.ambient
    if len(sub_components) != len(parent.components):
        raise ContractError("provide one (possibly empty) subset per parent component")
    subsets = []
    for comp, raw in zip(parent.components, sub_components):
        sub = frozenset(ambient.check_vector(v) for v in raw)
        if not sub <= comp.vectors:
            raise ContractError(f"subset of {comp.name!r} leaves its component")
        subsets.append(sub)
    union = frozenset().union(*subsets) if subsets else frozenset()

    direct = True
    witness = None
    if union:
        for i, comp_i in enumerate(parent.components):
            for j, comp_j in enumerate(parent.components):
                for a in union:
                    if a not in comp_i.vectors:
                        continue
                    for alpha in range(ambient.p):
                        w = ambient.scale(alpha, a)
                        if w not in comp_j.vectors:
                            continue
                        for b in union:
                            if b not in comp_j.vectors:
                                continue
                            out = ambient.add(w, b)
                            if out not in union:
                                direct = False
                                if witness is None:
                                    witness = {"alpha": alpha, "a": a, "b": b, "result": out}

    componentwise = True
    for comp, sub in zip(parent.components, subsets):
        if not sub:
            continue
        if sub != span(ambient, sub):
            componentwise = False

    if direct != componentwise:
        raise InternalCheckError(
            f"subspace criteria disagree: direct={direct}, componentwise={componentwise}"
        )
    return SubspaceReport(direct, witness)


@dataclass(frozen=True)
class IndependenceReport:
    independent: bool
    certificate: Optional[tuple[int, ...]]
    case: Optional[int]  # 1: all chains defined; 2: some chains undefined


def _chain_value(ms: MultiVectorSpace, scalars, vectors) -> Optional[Vector]:
    """Left-associative scaled sum; None when some step has no home component."""
    ambient = ms.ambient
    terms = [ambient.scale(k, v) for k, v in zip(scalars, vectors)]
    acc = terms[0]
    for term in terms[1:]:
        if not ms.share_component(acc, term):
            return None
        acc = ambient.add(acc, term)
    return acc


def linearly_independent(vectors: Sequence[Vector], ms: MultiVectorSpace) -> IndependenceReport:
    """Scan every scalar tuple for a defined chain that lands on zero.

    The first (lexicographically least) non-trivial such tuple is the
    dependence certificate.  Independent verdicts distinguish whether every
    non-trivial chain was defined (case 1) or some were undefined (case 2).
    """
    ambient = ms.ambient
    vectors = [ambient.check_vector(v) for v in vectors]
    for v in vectors:
        if not ms.components_containing(v):
            raise ContractError(f"vector {v} is outside the component union")
    if not vectors:
        return IndependenceReport(True, None, 1)
    zero = ambient.zero()
    all_defined = True
    for scalars in itertools.product(range(ambient.p), repeat=len(vectors)):
        if not any(scalars):
            continue
        value = _chain_value(ms, scalars, vectors)
        if value is None:
            all_defined = False
        elif value == zero:
            return IndependenceReport(False, scalars, None)
    return IndependenceReport(True, None, 1 if all_defined else 2)


def component_bases(ms: MultiVectorSpace) -> list[Vector]:
    """Concatenated canonical bases of the components, duplicates dropped."""
    out: list[Vector] = []
    for comp in ms.components:
        for v in canonical_basis(ms.ambient, comp.generators):
            if v not in out:
                out.append(v)
    return out


def greedy_basis(ms: MultiVectorSpace, order: Optional[Sequence[Vector]] = None) -> tuple[Vector, ...]:
    """Shrink the union of component bases one redundant vector at a time.

    A vector is removed while the remaining set still spans everything it
    spanned before (i.e. the vector lies in the span of the others); the
    result is an independent set whose span covers the component union.
    Deterministic: vectors are considered in the given order (default:
    canonical sorted order of the starting set).
    """
    start = component_bases(ms)
    if order is None:
        working = sorted(start)
    else:
        working = list(order)
        if sorted(working) != sorted(start):
            raise ContractError("order must permute the union of component bases")
    changed = True
    while changed:
        changed = False
        for i, v in enumerate(working):
            rest = working[:i] + working[i + 1 :]
            if rank(ms.ambient, rest) == rank(ms.ambient, working):
                working = rest
                changed = True
                break
    return tuple(working)


@dataclass(frozen=True)
class DimReport:
    formula_value: int
    greedy_value: int
    agree: bool
    intersection_dims: tuple[tuple[tuple[int, ...], int], ...]


def dim_formula(ms: MultiVectorSpace) -> DimReport:
    """Inclusion-exclusion over component intersections vs. the greedy count.

    The two values provably agree for k <= 2; for k >= 3 they can genuinely
    differ and the report flags (not hides) the disagreement.
    """
    k = len(ms.components)
    if k > DIM_FORMULA_BOUND:
        raise SizeLimitError(f"dimension formula enumerates 2^k - 1 terms; k = {k} exceeds {DIM_FORMULA_BOUND}")
    terms = []
    total = 0
    for r in range(1, k + 1):
        for combo in itertools.combinations(range(k), r):
            meet = frozenset.intersection(*(ms.components[i].vectors for i in combo))
            d = rank(ms.ambient, meet)
            terms.append((combo, d))
            total += d if r % 2 == 1 else -d
    greedy = len(greedy_basis(ms))
    return DimReport(total, greedy, total == greedy, tuple(terms))


@dataclass(frozen=True)
class AdditiveReport:
    dim_union: int
    dim_first: int
    dim_second: int
    dim_intersection: int
    holds: bool


def additive_formula_check(v1: MultiVectorSpace, v2: MultiVectorSpace) -> AdditiveReport:
    """dim(V1 u V2) = dim V1 + dim V2 - dim(V1 n V2), dims as greedy counts."""
    if v1.ambient != v2.ambient:
        raise ContractError("both spaces must share one ambient space")
    d1 = rank(v1.ambient, v1.union_vectors())
    d2 = rank(v2.ambient, v2.union_vectors())
    meet = v1.union_vectors() & v2.union_vectors()
    dmeet = rank(v1.ambient, meet)
    dunion = rank(v1.ambient, v1.union_vectors() | v2.union_vectors())
    return AdditiveReport(dunion, d1, d2, dmeet, dunion == d1 + d2 - dmeet)
