"""Multi-group verification: axiom checks, sub-structures, cosets, normality,
and the oriented maximal normal series with its length invariant.

Sub-structure and normality verdicts are always computed by two independent
routes (componentwise criterion vs. direct scan) that must agree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from .core import (
    Component,
    MultiSpace,
    OpTable,
    UNDEFINED,
    classify_table,
    group_identity_on,
    group_inverse_on,
    is_group_on,
)
from .errors import (
    ContractError,
    InternalCheckError,
    PartitionError,
    SizeLimitError,
)

SERIES_UNION_BOUND = 24
SERIES_CHAIN_BOUND = 50_000

NORMAL_SERIES = "normal_series"
IDEAL_CHAIN = "ideal_chain"


@dataclass(frozen=True)
class SubsetView:
    """A subset of a parent space's elements plus a subset of its operations."""

    parent: MultiSpace
    elements: frozenset[int]
    op_names: tuple[str, ...]

    def __post_init__(self) -> None:
        union = set(self.parent.element_union())
        if not self.elements <= union:
            raise ContractError("subset elements must lie in the parent carrier union")
        for name in self.op_names:
            self.parent.op(name)

    @classmethod
    def of_names(cls, parent: MultiSpace, names: Sequence[str], op_names=None) -> "SubsetView":
        elements = frozenset(parent.universe.index(n) for n in names)
        if op_names is None:
            op_names = tuple(t.name for t in parent.ops)
        return cls(parent, elements, tuple(op_names))


@dataclass(frozen=True)
class SeriesChain:
    levels: tuple[frozenset[int], ...]
    step_ops: tuple[str, ...]
    kind: str

    @property
    def length(self) -> int:
        return len(self.levels) - 1


def group_bindings(ms: MultiSpace) -> list[tuple[Component, str]]:
    """Expand components into (component, op) group bindings.

    A carrier bound to several single operations counts once per operation;
    double-operation (ring-style) components are rejected here.
    """
    out = []
    for comp in ms.components:
        if comp.double:
            raise ContractError(
                f"component {comp.name!r} is double-operation; use the multiring checks"
            )
        for op_name in comp.op_names:
            out.append((comp, op_name))
    return out


@dataclass(frozen=True)
class DistributionCheck:
    pair: tuple[str, str]
    orientation: Optional[str]  # "first", "second", "both", or None
    witness: Optional[tuple]


@dataclass(frozen=True)
class MultiGroupReport:
    verdict: bool
    group_checks: tuple[tuple[str, str, bool, Optional[dict]], ...]
    complete: bool
    distribution: tuple[DistributionCheck, ...]
    witness: Optional[dict]


def _distributes_over(ms: MultiSpace, f: OpTable, g: OpTable) -> Optional[tuple]:
    """First triple violating "f distributes over g" where all products exist."""
    union = ms.element_union()
    for x, y, z in itertools.product(union, repeat=3):
        yz = g.apply(y, z)
        if yz is not UNDEFINED:
            lhs = f.apply(x, yz)
            xy, xz = f.apply(x, y), f.apply(x, z)
            if lhs is not UNDEFINED and xy is not UNDEFINED and xz is not UNDEFINED:
                rhs = g.apply(xy, xz)
                if rhs is not UNDEFINED and lhs != rhs:
                    return (x, y, z, "left")
            lhs = f.apply(yz, x)
            yx, zx = f.apply(y, x), f.apply(z, x)
            if lhs is not UNDEFINED and yx is not UNDEFINED and zx is not UNDEFINED:
                rhs = g.apply(yx, zx)
                if rhs is not UNDEFINED and lhs != rhs:
                    return (x, y, z, "right")
    return None


def is_multigroup(ms: MultiSpace) -> MultiGroupReport:
    """Check every component is a group and distribution holds pairwise.

    Per operation pair, one of the two operations must distribute over the
    other on all fully-defined triples; which orientation holds is recorded.
    Completeness of the space is reported but not required for the verdict,
    so unions overlapping only in shared identities are accepted.
    """
    bindings = group_bindings(ms)
    group_checks = []
    witness = None
    for comp, op_name in bindings:
        ok, w = is_group_on(ms.op(op_name), frozenset(comp.carrier))
        group_checks.append((comp.name, op_name, ok, w))
        if not ok and witness is None:
            witness = {"component": comp.name, "op": op_name, **(w or {})}
    distribution = []
    op_names = sorted({name for _, name in bindings})
    for a, b in itertools.combinations(op_names, 2):
        fa, fb = ms.op(a), ms.op(b)
        first = _distributes_over(ms, fa, fb)
        second = _distributes_over(ms, fb, fa)
        if first is None and second is None:
            orientation = "both"
        elif first is None:
            orientation = "first"
        elif second is None:
            orientation = "second"
        else:
            orientation = None
        check = DistributionCheck((a, b), orientation, first if orientation is None else None)
        distribution.append(check)
        if orientation is None and witness is None:
            witness = {"kind": "distribution", "pair": (a, b), "triple": first}
    verdict = all(ok for _, _, ok, _ in group_checks) and all(
        d.orientation is not None for d in distribution
    )
    return MultiGroupReport(
        verdict, tuple(group_checks), ms.is_completed(), tuple(distribution), witness
    )


@dataclass(frozen=True)
class SubStructureReport:
    verdict: bool
    by_component: bool
    by_closure: bool
    witness: Optional[dict]


def _require_multigroup(ms: MultiSpace) -> None:
    # values are immutable after construction, so the verdict may be cached
    report = getattr(ms, "_multigroup_report", None)
    if report is None:
        report = is_multigroup(ms)
        ms._multigroup_report = report
    if not report.verdict:
        raise ContractError(f"parent is not a multi-group: {report.witness}")


def is_submultigroup(sub: SubsetView) -> SubStructureReport:
    """Dual-route sub-multi-group test.

    Route A (componentwise): the subset meets each component in a subgroup
    or not at all, and every subset element lies in some bound component.
    Route B (finite criterion): the subset is closed under each of its
    operations wherever they are defined.  The two verdicts must agree.
    """
    ms = sub.parent
    _require_multigroup(ms)
    if not sub.elements:
        raise ContractError("the empty subset is not a sub-multi-group candidate")

    witness_a: Optional[dict] = None
    covered: set[int] = set()
    by_component = True
    for comp, op_name in group_bindings(ms):
        if op_name not in sub.op_names:
            continue
        covered.update(comp.carrier)
        meet = sub.elements & frozenset(comp.carrier)
        if not meet:
            continue
        ok, w = is_group_on(ms.op(op_name), meet)
        if not ok:
            by_component = False
            if witness_a is None:
                witness_a = {"component": comp.name, "op": op_name, **(w or {})}
    if not sub.elements <= covered:
        by_component = False
        stray = sorted(sub.elements - covered)[0]
        witness_a = witness_a or {"kind": "uncovered_element", "element": stray}

    by_closure = True
    witness_b: Optional[dict] = None
    for op_name in sub.op_names:
        table = ms.op(op_name)
        for x in sub.elements:
            for y in sub.elements:
                v = table.apply(x, y)
                if v is not UNDEFINED and v not in sub.elements:
                    by_closure = False
                    if witness_b is None:
                        witness_b = {"kind": "closure", "op": op_name, "pair": (x, y), "result": v}
    if by_component != by_closure:
        raise InternalCheckError(
            f"sub-multi-group criteria disagree: componentwise={by_component} "
            f"({witness_a}), closure={by_closure} ({witness_b})"
        )
    return SubStructureReport(by_component, by_component, by_closure, witness_a or witness_b)


def coset_of(sub: SubsetView, x: int) -> frozenset[int]:
    """x(sub) = every defined x op h with h in the subset, over the sub's ops."""
    ms = sub.parent
    out = set()
    for op_name in sub.op_names:
        table = ms.op(op_name)
        for h in sub.elements:
            v = table.apply(x, h)
            if v is not UNDEFINED:
                out.add(v)
    return frozenset(out)


def coset_partition(sub: SubsetView) -> tuple[frozenset[int], ...]:
    """A representative set of cosets tiling the parent carrier union.

    Representatives are chosen greedily in canonical element order with
    backtracking, which realises the existence statement directly; if no
    choice of representatives tiles the union a PartitionError reports it.
    """
    report = is_submultigroup(sub)
    if not report.verdict:
        raise ContractError(f"not a sub-multi-group: {report.witness}")
    ms = sub.parent
    union = frozenset(ms.element_union())

    def choose(remaining: frozenset, acc: tuple) -> Optional[tuple]:
        if not remaining:
            return acc
        for x in sorted(remaining):
            coset = coset_of(sub, x)
            if coset and x in coset and coset <= remaining:
                result = choose(remaining - coset, acc + (coset,))
                if result is not None:
                    return result
        return None

    chosen = choose(union, ())
    if chosen is None:
        raise PartitionError("no representative set tiles the carrier union with cosets")
    return tuple(sorted(chosen, key=lambda c: sorted(c)))


# -- subgroup machinery ---------------------------------------------------

def subgroup_closure(table: OpTable, seed: frozenset[int]) -> frozenset[int]:
    """Closure of a seed under the product; in a finite group this is the
    generated subgroup."""
    out = set(seed)
    frontier = list(seed)
    while frontier:
        x = frontier.pop()
        for y in list(out):
            for v in (table.apply(x, y), table.apply(y, x)):
                if v is not UNDEFINED and v not in out:
                    out.add(v)
                    frontier.append(v)
    return frozenset(out)


def subgroups_of(table: OpTable, carrier: frozenset[int]) -> list[frozenset[int]]:
    """Every subgroup of the group (carrier; table), by closure growing.

    A closure escaping the carrier means no subgroup of the carrier contains
    that generating set, so such candidates are discarded.
    """
    e = group_identity_on(table, carrier)
    base = frozenset({e})
    found = {base}
    queue = [base]
    while queue:
        current = queue.pop()
        for x in carrier - current:
            bigger = subgroup_closure(table, current | {x})
            if bigger <= carrier and bigger not in found:
                found.add(bigger)
                queue.append(bigger)
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def is_normal_subgroup(table: OpTable, carrier: frozenset[int], sub: frozenset[int]) -> bool:
    for g in carrier:
        ginv = group_inverse_on(table, carrier, g)
        for h in sub:
            if table.apply(table.apply(g, h), ginv) not in sub:
                return False
    return True


def maximal_normal_subgroups(table: OpTable, carrier: frozenset[int]) -> list[frozenset[int]]:
    subs = subgroups_of(table, carrier)
    normal = [s for s in subs if s != carrier and is_normal_subgroup(table, carrier, s)]
    return [s for s in normal if not any(s < t for t in normal)]


@dataclass(frozen=True)
class LagrangeReport:
    group_order: int
    subgroup_orders: tuple[int, ...]
    all_divide: bool
    subgroups: tuple[frozenset[int], ...]


def lagrange_check(table: OpTable) -> LagrangeReport:
    """Enumerate every subgroup and confirm each order divides the group order."""
    if not classify_table(table).is_group():
        raise ContractError(f"{table.name!r} is not a group table")
    carrier = frozenset(table.domain)
    subs = subgroups_of(table, carrier)
    orders = tuple(sorted({len(s) for s in subs}))
    return LagrangeReport(
        len(carrier), orders, all(len(carrier) % len(s) == 0 for s in subs), tuple(subs)
    )


@dataclass(frozen=True)
class NormalReport:
    verdict: bool
    witness: Optional[dict]


def is_normal(sub: SubsetView) -> NormalReport:
    """Dual-route normality: conjugation scan vs. componentwise normal subgroups."""
    report = is_submultigroup(sub)
    if not report.verdict:
        raise ContractError(f"not a sub-multi-group: {report.witness}")
    ms = sub.parent

    direct = True
    witness = None
    for op_name in sub.op_names:
        table = ms.op(op_name)
        carrier = frozenset(ms.carriers_of_op(op_name))
        if not carrier:
            continue
        for g in carrier:
            ginv = group_inverse_on(table, carrier, g)
            for h in sub.elements:
                gh = table.apply(g, h)
                if gh is UNDEFINED:
                    continue
                v = table.apply(gh, ginv)
                if v is UNDEFINED:
                    continue
                if v not in sub.elements:
                    direct = False
                    if witness is None:
                        witness = {"op": op_name, "g": g, "h": h, "conjugate": v}

    componentwise = True
    for comp, op_name in group_bindings(ms):
        if op_name not in sub.op_names:
            continue
        meet = sub.elements & frozenset(comp.carrier)
        if meet and not is_normal_subgroup(ms.op(op_name), frozenset(comp.carrier), meet):
            componentwise = False

    if direct != componentwise:
        raise InternalCheckError(
            f"normality criteria disagree: direct={direct}, componentwise={componentwise}"
        )
    return NormalReport(direct, witness)


# -- the oriented series programming --------------------------------------

@dataclass(frozen=True)
class SeriesResult:
    chains: tuple[SeriesChain, ...]
    lengths: tuple[int, ...]
    invariant: bool
    chain_count: int

    @property
    def length(self) -> Optional[int]:
        return self.lengths[0] if self.invariant else None


def _series_graph(ms: MultiSpace, orientation: Sequence[str], kind: str):
    """Successors of a (level, op index) state under the series programming.

    For the operation currently oriented, the level's part in that
    operation's carrier descends through each maximal normal subgroup (or
    maximal ideal, for ideal chains); the rest of the level rides along
    untouched.  When the part bottoms out at the trivial subgroup the next
    operation takes over.
    """
    from . import multiring as _mr

    def successors(level: frozenset, k: int):
        while k < len(orientation):
            if kind == NORMAL_SERIES:
                table = ms.op(orientation[k])
                part = level & frozenset(ms.carriers_of_op(orientation[k]))
                bottom = frozenset({group_identity_on(table, part)})
            else:
                comp = ms.component(orientation[k])
                part = level & frozenset(comp.carrier)
                add = ms.op(comp.add_name)
                bottom = frozenset({group_identity_on(add, part)})
            if part == bottom:
                k += 1
                continue
            if kind == NORMAL_SERIES:
                subs = maximal_normal_subgroups(table, part)
            else:
                subs = _mr.maximal_ideals(ms.op(comp.add_name), ms.op(comp.mul_name), part)
            label = orientation[k]
            return [(level - (part - n), k, label) for n in subs]
        return []

    return successors


def _run_series(ms: MultiSpace, orientation: Sequence[str], kind: str) -> SeriesResult:
    union = ms.element_union()
    if len(union) > SERIES_UNION_BOUND:
        raise SizeLimitError(
            f"series programming bounded at {SERIES_UNION_BOUND} elements; got {len(union)}"
        )
    successors = _series_graph(ms, orientation, kind)
    start = frozenset(union)

    length_memo: dict[tuple, frozenset] = {}
    count_memo: dict[tuple, int] = {}

    def lengths_from(level: frozenset, k: int) -> frozenset:
        key = (level, k)
        if key not in length_memo:
            nexts = successors(level, k)
            if not nexts:
                length_memo[key] = frozenset({0})
            else:
                out = set()
                for nxt, kk, _ in nexts:
                    out.update(1 + l for l in lengths_from(nxt, kk))
                length_memo[key] = frozenset(out)
        return length_memo[key]

    def count_from(level: frozenset, k: int) -> int:
        key = (level, k)
        if key not in count_memo:
            nexts = successors(level, k)
            count_memo[key] = 1 if not nexts else sum(count_from(n, kk) for n, kk, _ in nexts)
        return count_memo[key]

    lengths = tuple(sorted(lengths_from(start, 0)))
    count = count_from(start, 0)
    if count > SERIES_CHAIN_BOUND:
        raise SizeLimitError(
            f"{count} maximal chains exceed the materialisation bound; "
            "use series_length_profile for the invariant alone"
        )

    chains: list[SeriesChain] = []

    def walk(level: frozenset, k: int, levels: tuple, ops: tuple) -> None:
        nexts = successors(level, k)
        if not nexts:
            chains.append(SeriesChain(levels, ops, kind))
            return
        for nxt, kk, label in nexts:
            walk(nxt, kk, levels + (nxt,), ops + (label,))

    walk(start, 0, (start,), ())
    return SeriesResult(tuple(chains), lengths, len(lengths) == 1, count)


def series_length_profile(
    ms: MultiSpace, orientation: Sequence[str], kind: str = NORMAL_SERIES
) -> tuple[tuple[int, ...], int]:
    """Exhaustive chain-length set and chain count without materialising chains."""
    union = ms.element_union()
    if len(union) > SERIES_UNION_BOUND:
        raise SizeLimitError(
            f"series programming bounded at {SERIES_UNION_BOUND} elements; got {len(union)}"
        )
    successors = _series_graph(ms, orientation, kind)
    start = frozenset(union)
    length_memo: dict[tuple, frozenset] = {}
    count_memo: dict[tuple, int] = {}

    def lengths_from(level: frozenset, k: int) -> frozenset:
        key = (level, k)
        if key not in length_memo:
            nexts = successors(level, k)
            if not nexts:
                length_memo[key] = frozenset({0})
            else:
                out = set()
                for nxt, kk, _ in nexts:
                    out.update(1 + l for l in lengths_from(nxt, kk))
                length_memo[key] = frozenset(out)
        return length_memo[key]

    def count_from(level: frozenset, k: int) -> int:
        key = (level, k)
        if key not in count_memo:
            nexts = successors(level, k)
            count_memo[key] = 1 if not nexts else sum(count_from(n, kk) for n, kk, _ in nexts)
        return count_memo[key]

    return tuple(sorted(lengths_from(start, 0))), count_from(start, 0)


def maximal_normal_series(ms: MultiSpace, orientation: Sequence[str]) -> SeriesResult:
    """All maximal normal series under an oriented operation sequence.

    Every chain is materialised; the report records whether all chains share
    one length (the invariant the theory predicts).
    """
    _require_multigroup(ms)
    bound_ops = {name for _, name in group_bindings(ms)}
    if set(orientation) != bound_ops or len(orientation) != len(bound_ops):
        raise ContractError("orientation must list each bound operation exactly once")
    return _run_series(ms, orientation, NORMAL_SERIES)


def composition_series(table: OpTable) -> SeriesResult:
    """Maximal normal series of a single classical group table."""
    from .constructions import single_component_space

    if not classify_table(table).is_group():
        raise ContractError(f"{table.name!r} is not a group table")
    ms = single_component_space(table)
    return _run_series(ms, (table.name,), NORMAL_SERIES)
