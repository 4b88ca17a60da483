"""The multi-space substrate: partial operation tables over an interned
universe, multi-space assembly, units/inverses, faithfulness, equation
solving, automorphism enumeration and table classification.

An undefined product is the value ``UNDEFINED`` (= ``None``), never an
exception; errors are reserved for contract violations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .errors import (
    ContractError,
    SizeLimitError,
    UnknownOperationError,
)
from .foundations import FiniteUniverse

UNDEFINED = None

AUTOMORPHISM_BOUND = 12


class OpTable:
    """A partial binary operation on a subset (the domain) of a universe.

    ``entries[i][j]`` holds the universe index of ``domain[i] * domain[j]``,
    or ``None`` when the product is undefined.
    """

    def __init__(self, name: str, universe: FiniteUniverse, domain: Sequence[int], entries):
        self.name = name
        self.universe = universe
        self.domain = tuple(domain)
        if list(self.domain) != sorted(set(self.domain)):
            raise ContractError(f"operation {name!r}: domain must be sorted and duplicate-free")
        for idx in self.domain:
            if not 0 <= idx < len(universe):
                raise ContractError(f"operation {name!r}: domain index {idx} out of universe")
        self.entries = tuple(tuple(row) for row in entries)
        d = len(self.domain)
        if len(self.entries) != d or any(len(row) != d for row in self.entries):
            raise ContractError(f"operation {name!r}: entries must be a {d}x{d} grid")
        for row in self.entries:
            for v in row:
                if v is not None and not 0 <= v < len(universe):
                    raise ContractError(f"operation {name!r}: entry {v} out of universe")
        self._pos = {u: i for i, u in enumerate(self.domain)}

    @classmethod
    def from_function(
        cls,
        name: str,
        universe: FiniteUniverse,
        domain: Sequence[int],
        fn: Callable[[int, int], Optional[int]],
    ) -> "OpTable":
        domain = tuple(sorted(domain))
        entries = [[fn(x, y) for y in domain] for x in domain]
        return cls(name, universe, domain, entries)

    def apply(self, x: int, y: int) -> Optional[int]:
        i = self._pos.get(x)
        j = self._pos.get(y)
        if i is None or j is None:
            return UNDEFINED
        return self.entries[i][j]

    def defined_pairs(self):
        for i, x in enumerate(self.domain):
            for j, y in enumerate(self.domain):
                if self.entries[i][j] is not None:
                    yield x, y, self.entries[i][j]

    def is_total_on_domain(self) -> bool:
        return all(v is not None for row in self.entries for v in row)

    def __repr__(self) -> str:
        return f"OpTable({self.name!r}, domain={self.universe.names(self.domain)})"


@dataclass(frozen=True)
class Component:
    """A named carrier bound to one or more operations.

    ``double=True`` marks a ring-style component whose two op names are the
    ordered pair (addition, multiplication).
    """

    name: str
    carrier: tuple[int, ...]
    op_names: tuple[str, ...]
    double: bool = False

    def __post_init__(self) -> None:
        if list(self.carrier) != sorted(set(self.carrier)):
            raise ContractError(f"component {self.name!r}: carrier must be sorted, duplicate-free")
        if not self.op_names:
            raise ContractError(f"component {self.name!r}: needs at least one operation")
        if self.double and len(self.op_names) != 2:
            raise ContractError(f"component {self.name!r}: double components bind exactly two ops")

    @property
    def add_name(self) -> str:
        if not self.double:
            raise ContractError(f"component {self.name!r} is not a double-operation component")
        return self.op_names[0]

    @property
    def mul_name(self) -> str:
        if not self.double:
            raise ContractError(f"component {self.name!r} is not a double-operation component")
        return self.op_names[1]


class MultiSpace:
    """A universe together with named components and their operation tables."""

    def __init__(
        self,
        universe: FiniteUniverse,
        components: Sequence[Component],
        ops: Sequence[OpTable],
    ):
        self.universe = universe
        self.components = tuple(components)
        self.ops = tuple(ops)
        names = [t.name for t in self.ops]
        if len(set(names)) != len(names):
            raise ContractError("operation names must be unique")
        self._op_map = {t.name: t for t in self.ops}
        for comp in self.components:
            for op_name in comp.op_names:
                table = self._op_map.get(op_name)
                if table is None:
                    raise ContractError(
                        f"component {comp.name!r} binds unknown operation {op_name!r}"
                    )
                if not set(comp.carrier) <= set(table.domain):
                    raise ContractError(
                        f"operation {op_name!r} domain does not cover component {comp.name!r}"
                    )

    def op(self, name: str) -> OpTable:
        table = self._op_map.get(name)
        if table is None:
            raise UnknownOperationError(f"no operation named {name!r}")
        return table

    def component(self, name: str) -> Component:
        for comp in self.components:
            if comp.name == name:
                return comp
        raise KeyError(f"no component named {name!r}")

    def element_union(self) -> tuple[int, ...]:
        out: set[int] = set()
        for comp in self.components:
            out.update(comp.carrier)
        return tuple(sorted(out))

    def is_completed(self) -> bool:
        """True iff every pair from the carrier union has some defined product."""
        union = self.element_union()
        for x in union:
            for y in union:
                if all(t.apply(x, y) is UNDEFINED for t in self.ops):
                    return False
        return True

    def carriers_of_op(self, op_name: str) -> tuple[int, ...]:
        """Union of the carriers of components bound to ``op_name``."""
        out: set[int] = set()
        for comp in self.components:
            if op_name in comp.op_names:
                out.update(comp.carrier)
        return tuple(sorted(out))

    def __repr__(self) -> str:
        return (
            f"MultiSpace(|U|={len(self.universe)}, "
            f"components={[c.name for c in self.components]}, "
            f"ops={[t.name for t in self.ops]})"
        )


@dataclass(frozen=True)
class ExprChain:
    """A left-associative mixed-operation expression: x1 op1 x2 op2 x3 ..."""

    operands: tuple[int, ...]
    op_names: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.operands:
            raise ContractError("expression chains must be non-empty")
        if len(self.op_names) != len(self.operands) - 1:
            raise ContractError("a chain of n operands needs exactly n-1 operations")


def eval_chain(ms: MultiSpace, chain: ExprChain) -> Optional[int]:
    """Fold the chain left to right; UNDEFINED as soon as a step is undefined."""
    acc: Optional[int] = chain.operands[0]
    for op_name, operand in zip(chain.op_names, chain.operands[1:]):
        table = ms.op(op_name)
        if acc is UNDEFINED:
            return UNDEFINED
        acc = table.apply(acc, operand)
    return acc


@dataclass(frozen=True)
class UnitReport:
    left_units: tuple[int, ...]
    right_units: tuple[int, ...]
    unit: Optional[int]


def find_units(t: OpTable) -> UnitReport:
    """Scan the domain for left/right units; a coinciding pair is the unit.

    Whenever both a left and a right unit exist they are equal, so both
    returned sets are then singletons.
    """
    lefts = tuple(
        e for e in t.domain if all(t.apply(e, a) == a for a in t.domain)
    )
    rights = tuple(
        e for e in t.domain if all(t.apply(a, e) == a for a in t.domain)
    )
    unit = None
    if lefts and rights:
        unit = lefts[0]
    return UnitReport(lefts, rights, unit)


@dataclass(frozen=True)
class InverseReport:
    element: int
    left: tuple[int, ...]
    right: tuple[int, ...]
    inverse: Optional[int]


def find_inverses(t: OpTable, unit: int) -> dict[int, InverseReport]:
    """Left/right inverse sets for every domain element, w.r.t. a two-sided unit."""
    if any(t.apply(unit, a) != a or t.apply(a, unit) != a for a in t.domain):
        raise ContractError(f"{t.universe.name(unit)!r} is not a two-sided unit of {t.name!r}")
    out = {}
    for a in t.domain:
        lefts = tuple(b for b in t.domain if t.apply(b, a) == unit)
        rights = tuple(b for b in t.domain if t.apply(a, b) == unit)
        two_sided = [b for b in lefts if b in rights]
        out[a] = InverseReport(a, lefts, rights, two_sided[0] if two_sided else None)
    return out


def is_faithful(t: OpTable, side: str) -> tuple[bool, Optional[tuple[int, int]]]:
    """True iff distinct elements induce distinct left (right) translations.

    The witness on failure is a pair of elements whose rows (columns)
    coincide entrywise, undefined entries included.
    """
    if side not in ("left", "right"):
        raise ContractError("side must be 'left' or 'right'")
    seen: dict[tuple, int] = {}
    for g in t.domain:
        if side == "left":
            translation = tuple(t.apply(g, a) for a in t.domain)
        else:
            translation = tuple(t.apply(a, g) for a in t.domain)
        if translation in seen:
            return False, (seen[translation], g)
        seen[translation] = g
    return True, None


def solve_equation(ms: MultiSpace, a: int, b: int) -> tuple[tuple[str, int], ...]:
    """All (op_name, x) with a op x = b, over every operation of the space."""
    union = set(ms.element_union())
    if a not in union or b not in union:
        raise ContractError("both sides of the equation must lie in some carrier")
    out = []
    for table in ms.ops:
        for x in table.domain:
            if table.apply(a, x) == b:
                out.append((table.name, x))
    return tuple(out)


class _Hole:
    def __repr__(self) -> str:
        return "HOLE"


HOLE = _Hole()


@dataclass(frozen=True)
class Equation:
    """A chain template with exactly one HOLE operand, equated to ``rhs``."""

    operands: tuple
    op_names: tuple[str, ...]
    rhs: int

    def __post_init__(self) -> None:
        holes = [i for i, x in enumerate(self.operands) if x is HOLE]
        if len(holes) != 1:
            raise ContractError("an equation template needs exactly one hole")
        if len(self.op_names) != len(self.operands) - 1:
            raise ContractError("a chain of n operands needs exactly n-1 operations")

    def substitute(self, value: int) -> ExprChain:
        ops = tuple(value if x is HOLE else x for x in self.operands)
        return ExprChain(ops, self.op_names)


def solve_system(ms: MultiSpace, equations: Sequence[Equation]) -> tuple[int, ...]:
    """Exhaustive-substitution solutions common to every equation."""
    solutions = None
    for eq in equations:
        sols = {x for x in ms.universe if eval_chain(ms, eq.substitute(x)) == eq.rhs}
        solutions = sols if solutions is None else solutions & sols
    return tuple(sorted(solutions or ()))


@dataclass(frozen=True)
class Classification:
    label: str
    unit: Optional[int]
    witness: Optional[dict]

    def is_group(self) -> bool:
        return self.label in ("group", "abelian_group")


def classify_table(t: OpTable) -> Classification:
    """Strongest of magma/semigroup/abelian_semigroup/group/abelian_group.

    Exhaustive over pairs and triples of the domain; the table must be
    total on its domain.
    """
    if not t.is_total_on_domain():
        raise ContractError(f"classification needs a total table; {t.name!r} is partial")
    for x in t.domain:
        for y in t.domain:
            if t.apply(x, y) not in t._pos:
                return Classification(
                    "magma", None, {"kind": "closure", "pair": (x, y), "result": t.apply(x, y)}
                )
    assoc_witness = None
    for x, y, z in itertools.product(t.domain, repeat=3):
        if t.apply(t.apply(x, y), z) != t.apply(x, t.apply(y, z)):
            assoc_witness = (x, y, z)
            break
    comm_witness = None
    for x, y in itertools.combinations(t.domain, 2):
        if t.apply(x, y) != t.apply(y, x):
            comm_witness = (x, y)
            break
    if assoc_witness is not None:
        return Classification("magma", None, {"kind": "associativity", "triple": assoc_witness})
    units = find_units(t)
    if units.unit is not None:
        inverses = find_inverses(t, units.unit)
        missing = [a for a, rep in inverses.items() if rep.inverse is None]
        if not missing:
            if comm_witness is None:
                return Classification("abelian_group", units.unit, None)
            return Classification(
                "group", units.unit, {"kind": "commutativity", "pair": comm_witness}
            )
        witness = {"kind": "missing_inverse", "element": missing[0]}
    else:
        witness = {"kind": "no_unit"}
    if comm_witness is None:
        return Classification("abelian_semigroup", units.unit, witness)
    return Classification("semigroup", units.unit, witness)


def is_group_on(t: OpTable, subset: frozenset[int]) -> tuple[bool, Optional[dict]]:
    """Group test for ``t`` restricted to ``subset``: closure, associativity,
    unit and inverses, all checked exhaustively inside the subset."""
    elems = sorted(subset)
    if not elems:
        return False, {"kind": "empty"}
    for x in elems:
        if x not in t._pos:
            return False, {"kind": "outside_domain", "element": x}
    for x in elems:
        for y in elems:
            v = t.apply(x, y)
            if v is UNDEFINED or v not in subset:
                return False, {"kind": "closure", "pair": (x, y), "result": v}
    for x, y, z in itertools.product(elems, repeat=3):
        if t.apply(t.apply(x, y), z) != t.apply(x, t.apply(y, z)):
            return False, {"kind": "associativity", "triple": (x, y, z)}
    unit = None
    for e in elems:
        if all(t.apply(e, a) == a and t.apply(a, e) == a for a in elems):
            unit = e
            break
    if unit is None:
        return False, {"kind": "no_unit"}
    for a in elems:
        if not any(t.apply(a, b) == unit and t.apply(b, a) == unit for b in elems):
            return False, {"kind": "missing_inverse", "element": a}
    return True, None


def group_identity_on(t: OpTable, subset: frozenset[int]) -> int:
    for e in sorted(subset):
        if all(t.apply(e, a) == a and t.apply(a, e) == a for a in subset):
            return e
    raise ContractError(f"no identity inside the given subset of {t.name!r}")


def group_inverse_on(t: OpTable, subset: frozenset[int], a: int) -> int:
    e = group_identity_on(t, subset)
    for b in sorted(subset):
        if t.apply(a, b) == e and t.apply(b, a) == e:
            return b
    raise ContractError(f"{a} has no inverse inside the given subset of {t.name!r}")


def _op_profile(t: OpTable, x: int) -> tuple:
    """Automorphism-invariant fingerprint of an element under one table."""
    if x not in t._pos:
        return ("out",)
    row = [t.apply(x, a) for a in t.domain]
    col = [t.apply(a, x) for a in t.domain]
    return (
        "in",
        t.apply(x, x) == x,
        sum(v is not None for v in row),
        sum(v is not None for v in col),
        all(t.apply(x, a) == a for a in t.domain),
        all(t.apply(a, x) == a for a in t.domain),
        row.count(x),
        col.count(x),
    )


def _table_signature(t: OpTable) -> tuple:
    """Permutation-invariant fingerprint of a whole table (for op matching)."""
    profiles = sorted(_op_profile(t, x) for x in t.domain)
    return (len(t.domain), sum(1 for _ in t.defined_pairs()), tuple(profiles))


def automorphisms(ms: MultiSpace, permute_ops: bool = True) -> tuple[tuple[int, ...], ...]:
    """All element bijections of the carrier union preserving the operations.

    With ``permute_ops`` (the default) a bijection may carry operation x to a
    different operation named by an induced permutation of the operation set,
    so e.g. componentwise-identical components may be swapped; with
    ``permute_ops=False`` each named operation must be preserved individually.
    Results are canonical: tuples aligned with ``ms.element_union()``, sorted.
    """
    union = ms.element_union()
    n = len(union)
    if n > AUTOMORPHISM_BOUND:
        raise SizeLimitError(
            f"automorphism search is factorial; union size {n} exceeds bound {AUTOMORPHISM_BOUND}"
        )
    pos = {x: i for i, x in enumerate(union)}
    tables = list(ms.ops)
    if permute_ops:
        sig = {t.name: _table_signature(t) for t in tables}
        candidates = [
            perm
            for perm in itertools.permutations(range(len(tables)))
            if all(sig[tables[i].name] == sig[tables[j].name] for i, j in enumerate(perm))
        ]
    else:
        candidates = [tuple(range(len(tables)))]

    found: set[tuple[int, ...]] = set()
    for perm in candidates:
        images = {tables[i].name: tables[j] for i, j in enumerate(perm)}
        profile = {
            x: tuple(sorted((t.name, _op_profile(t, x)) for t in tables)) for x in union
        }
        image_profile = {
            x: tuple(sorted((t.name, _op_profile(images[t.name], x)) for t in tables))
            for x in union
        }
        cand = {
            x: [y for y in union if image_profile[y] == profile[x]] for x in union
        }

        sigma: dict[int, int] = {}
        used: set[int] = set()

        def consistent(x: int, y: int) -> bool:
            for t in tables:
                img = images[t.name]
                for a, fa in sigma.items():
                    for (p, q), (fp, fq) in (((x, a), (y, fa)), ((a, x), (fa, y))):
                        v = t.apply(p, q)
                        w = img.apply(fp, fq)
                        if (v is UNDEFINED) != (w is UNDEFINED):
                            return False
                        if v is not UNDEFINED:
                            fv = sigma.get(v)
                            if v == x:
                                fv = y
                            if fv is not None and fv != w:
                                return False
                v = t.apply(x, x)
                w = img.apply(y, y)
                if (v is UNDEFINED) != (w is UNDEFINED):
                    return False
                if v is not UNDEFINED:
                    fv = y if v == x else sigma.get(v)
                    if fv is not None and fv != w:
                        return False
            return True

        def complete(mapping: dict[int, int]) -> bool:
            for t in tables:
                img = images[t.name]
                for x, y, v in t.defined_pairs():
                    if img.apply(mapping[x], mapping[y]) != mapping[v]:
                        return False
                if sum(1 for _ in t.defined_pairs()) != sum(1 for _ in img.defined_pairs()):
                    return False
            return True

        def search(i: int) -> None:
            if i == n:
                mapping = dict(sigma)
                if complete(mapping):
                    found.add(tuple(pos[mapping[x]] for x in union))
                return
            x = union[i]
            for y in cand[x]:
                if y in used:
                    continue
                if not consistent(x, y):
                    continue
                sigma[x] = y
                used.add(y)
                search(i + 1)
                del sigma[x]
                used.discard(y)

        search(0)
    return tuple(sorted(found))
