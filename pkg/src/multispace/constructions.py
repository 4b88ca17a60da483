"""Builders: Latin-square spaces, disjoint/shared-identity cyclic unions,
fan extensions of a group or ring, the partition-cyclic completed space,
plus the small-group table corpus used throughout the tests.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .core import Component, MultiSpace, OpTable
from .errors import CapacityError, ContractError, InputError, PartitionError, ShapeError
from .foundations import FiniteUniverse

LATIN_ENUMERATION_BOUND = 4


@dataclass(frozen=True)
class LatinSquare:
    """An n x n grid in which every symbol index appears once per row and column."""

    n: int
    grid: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        want = set(range(self.n))
        if len(self.grid) != self.n or any(len(row) != self.n for row in self.grid):
            raise ShapeError(f"grid is not {self.n}x{self.n}")
        for i, row in enumerate(self.grid):
            if set(row) != want:
                raise ShapeError(f"row {i} is not a permutation of 0..{self.n - 1}")
        for j in range(self.n):
            if {row[j] for row in self.grid} != want:
                raise ShapeError(f"column {j} is not a permutation of 0..{self.n - 1}")


def latin_lower_bound(n: int) -> int:
    """Product of s! for s = 1..n, a lower bound on the number of n x n squares."""
    return math.prod(math.factorial(s) for s in range(1, n + 1))


def enumerate_latin_squares(n: int) -> list[LatinSquare]:
    """All n x n Latin squares, by lexicographic row-by-row backtracking."""
    if n < 1:
        raise ContractError("side must be >= 1")
    rows: list[tuple[int, ...]] = []
    out: list[LatinSquare] = []

    def place(r: int) -> None:
        if r == n:
            out.append(LatinSquare(n, tuple(rows)))
            return
        used_cols = [set(row[j] for row in rows) for j in range(n)]
        row: list[int] = []

        def extend(j: int) -> None:
            if j == n:
                rows.append(tuple(row))
                place(r + 1)
                rows.pop()
                return
            for v in range(n):
                if v in row or v in used_cols[j]:
                    continue
                row.append(v)
                extend(j + 1)
                row.pop()

        extend(0)

    place(0)
    return out


def _random_latin_square(n: int, rng: random.Random) -> LatinSquare:
    while True:
        rows: list[tuple[int, ...]] = []

        def fill_row() -> Optional[tuple[int, ...]]:
            used_cols = [set(row[j] for row in rows) for j in range(n)]
            row: list[int] = []

            def extend(j: int) -> bool:
                if j == n:
                    return True
                order = list(range(n))
                rng.shuffle(order)
                for v in order:
                    if v in row or v in used_cols[j]:
                        continue
                    row.append(v)
                    if extend(j + 1):
                        return True
                    row.pop()
                return False

            return tuple(row) if extend(0) else None

        ok = True
        for _ in range(n):
            row = fill_row()
            if row is None:
                ok = False
                break
            rows.append(row)
        if ok:
            return LatinSquare(n, tuple(rows))


def gen_latin_squares(n: int, k: int, seed: int) -> list[LatinSquare]:
    """k pairwise-distinct n x n Latin squares, reproducible for a fixed seed."""
    if n < 2:
        raise ContractError("side must be >= 2")
    if k < 1:
        raise ContractError("must request at least one square")
    rng = random.Random(seed)
    if n <= LATIN_ENUMERATION_BOUND:
        squares = enumerate_latin_squares(n)
        if k > len(squares):
            raise CapacityError(f"only {len(squares)} Latin squares of side {n} exist; {k} requested")
        return rng.sample(squares, k)
    found: list[LatinSquare] = []
    seen: set[tuple] = set()
    attempts = 0
    while len(found) < k:
        attempts += 1
        if attempts > 100 * k + 100:
            raise CapacityError(f"could not produce {k} distinct squares of side {n}")
        sq = _random_latin_square(n, rng)
        if sq.grid not in seen:
            seen.add(sq.grid)
            found.append(sq)
    return found


def latin_multispace(symbols, squares: Sequence[LatinSquare]) -> MultiSpace:
    """One carrier with one total operation per square; always completed."""
    universe = symbols if isinstance(symbols, FiniteUniverse) else FiniteUniverse.of(symbols)
    n = len(universe)
    for sq in squares:
        if sq.n != n:
            raise ShapeError(f"square of side {sq.n} does not fit {n} symbols")
    domain = tuple(range(n))
    ops = [
        OpTable(f"x{i + 1}", universe, domain, sq.grid)
        for i, sq in enumerate(squares)
    ]
    comp = Component("S", domain, tuple(t.name for t in ops))
    return MultiSpace(universe, [comp], ops)


# -- group table corpus -------------------------------------------------

def group_table(labels: Sequence[str], mult: Callable, name: str = "*") -> tuple[FiniteUniverse, OpTable]:
    """Intern a Cayley table given element labels and a label-level product."""
    universe = FiniteUniverse.of(labels)
    index = {lab: i for i, lab in enumerate(labels)}
    table = OpTable.from_function(
        name, universe, range(len(labels)), lambda x, y: index[mult(labels[x], labels[y])]
    )
    return universe, table


def cyclic_group_table(n: int, name: str = "+") -> tuple[FiniteUniverse, OpTable]:
    labels = [str(i) for i in range(n)]
    return group_table(labels, lambda a, b: str((int(a) + int(b)) % n), name)


def direct_product_table(orders: Sequence[int], name: str = "+") -> tuple[FiniteUniverse, OpTable]:
    """Direct product of cyclic groups, elements labelled "i.j.k"."""
    tuples = list(itertools.product(*(range(m) for m in orders)))
    labels = [".".join(str(c) for c in t) for t in tuples]

    def mult(a: str, b: str) -> str:
        xs = [int(c) for c in a.split(".")]
        ys = [int(c) for c in b.split(".")]
        return ".".join(str((x + y) % m) for x, y, m in zip(xs, ys, orders))

    return group_table(labels, mult, name)


def dihedral_table(n: int, name: str = "*") -> tuple[FiniteUniverse, OpTable]:
    """Dihedral group of order 2n: rotations r{i} and reflections s{i}."""
    labels = [f"r{i}" for i in range(n)] + [f"s{i}" for i in range(n)]

    def mult(a: str, b: str) -> str:
        fa, ia = a[0], int(a[1:])
        fb, ib = b[0], int(b[1:])
        if fa == "r" and fb == "r":
            return f"r{(ia + ib) % n}"
        if fa == "r" and fb == "s":
            return f"s{(ib - ia) % n}"
        if fa == "s" and fb == "r":
            return f"s{(ia + ib) % n}"
        return f"r{(ib - ia) % n}"

    return group_table(labels, mult, name)


def quaternion_table(name: str = "*") -> tuple[FiniteUniverse, OpTable]:
    labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    base = {
        ("i", "i"): "-1", ("j", "j"): "-1", ("k", "k"): "-1",
        ("i", "j"): "k", ("j", "k"): "i", ("k", "i"): "j",
        ("j", "i"): "-k", ("k", "j"): "-i", ("i", "k"): "-j",
    }

    def mult(a: str, b: str) -> str:
        sign = 1
        if a.startswith("-"):
            sign, a = -sign, a[1:]
        if b.startswith("-"):
            sign, b = -sign, b[1:]
        if a == "1":
            out = b
        elif b == "1":
            out = a
        else:
            out = base[(a, b)]
        if out.startswith("-"):
            sign, out = -sign, out[1:]
        return out if sign == 1 else f"-{out}"

    return group_table(labels, mult, name)


def symmetric_table(n: int, name: str = "*") -> tuple[FiniteUniverse, OpTable]:
    """Symmetric group on 0..n-1; labels like "120" give images of 0,1,2."""
    perms = list(itertools.permutations(range(n)))
    labels = ["".join(str(i) for i in p) for p in perms]

    def mult(a: str, b: str) -> str:
        # composition: apply b first, then a
        return "".join(a[int(c)] for c in b)

    return group_table(labels, mult, name)


def all_groups_up_to_8() -> list[tuple[str, FiniteUniverse, OpTable]]:
    """Every group of order <= 8 up to isomorphism (14 tables)."""
    corpus: list[tuple[str, FiniteUniverse, OpTable]] = []
    for n in range(1, 9):
        u, t = cyclic_group_table(n)
        corpus.append((f"Z{n}", u, t))
    for orders, label in (
        ([2, 2], "Z2xZ2"),
        ([4, 2], "Z4xZ2"),
        ([2, 2, 2], "Z2xZ2xZ2"),
    ):
        u, t = direct_product_table(orders)
        corpus.append((label, u, t))
    u, t = symmetric_table(3)
    corpus.append(("S3", u, t))
    u, t = dihedral_table(4)
    corpus.append(("D4", u, t))
    u, t = quaternion_table()
    corpus.append(("Q8", u, t))
    return corpus


def _partitions_into_prime_powers(n: int) -> list[list[int]]:
    """All multisets of prime powers (each > 1) with product n."""
    if n == 1:
        return [[]]
    out = []
    for d in range(2, n + 1):
        if n % d:
            continue
        # d must be a prime power
        p = min(q for q in range(2, d + 1) if d % q == 0)
        m = d
        while m % p == 0:
            m //= p
        if m != 1:
            continue
        for rest in _partitions_into_prime_powers(n // d):
            if not rest or rest[0] >= d:
                out.append([d] + rest)
    return out


def abelian_groups_of_order(n: int) -> list[tuple[str, FiniteUniverse, OpTable]]:
    """Every abelian group of order n up to isomorphism, as direct products."""
    out = []
    for factors in _partitions_into_prime_powers(n):
        if not factors:
            u, t = cyclic_group_table(1)
            out.append(("Z1", u, t))
        else:
            u, t = direct_product_table(factors)
            out.append(("x".join(f"Z{m}" for m in factors), u, t))
    return out


def single_component_space(table: OpTable, name: str = "G") -> MultiSpace:
    comp = Component(name, table.domain, (table.name,))
    return MultiSpace(table.universe, [comp], [table])


# -- cyclic unions ------------------------------------------------------

def disjoint_cyclic_union(orders: Sequence[int]) -> MultiSpace:
    """m cyclic components on pairwise-disjoint carriers, one addition each.

    Cross-component products are undefined, so the space is not completed
    for m >= 2.
    """
    labels: list[str] = []
    components = []
    ops = []
    spans = []
    for i, order in enumerate(orders):
        if order < 1:
            raise ContractError("component orders must be >= 1")
        letter = chr(ord("a") + i % 26) + ("" if i < 26 else str(i // 26))
        start = len(labels)
        labels.extend(f"{letter}{j}" for j in range(order))
        spans.append((start, order))
    universe = FiniteUniverse.of(labels)
    for i, (start, order) in enumerate(spans):
        carrier = tuple(range(start, start + order))
        table = OpTable.from_function(
            f"+{i + 1}",
            universe,
            carrier,
            lambda x, y, s=start, m=order: s + ((x - s) + (y - s)) % m,
        )
        ops.append(table)
        components.append(Component(f"C{i + 1}", carrier, (table.name,)))
    return MultiSpace(universe, components, ops)


def shared_identity_union(tables: Sequence[OpTable]) -> MultiSpace:
    """Union of group tables overlapping in exactly one shared identity "e"."""
    from .core import find_units

    labels = ["e"]
    rename_maps = []
    for i, t in enumerate(tables):
        unit = find_units(t).unit
        if unit is None:
            raise ContractError(f"table {t.name!r} has no two-sided unit")
        rename = {}
        for x in t.domain:
            if x == unit:
                rename[x] = 0
            else:
                rename[x] = len(labels)
                labels.append(f"c{i + 1}_{t.universe.name(x)}")
        rename_maps.append(rename)
    universe = FiniteUniverse.of(labels)
    components = []
    ops = []
    for i, (t, rename) in enumerate(zip(tables, rename_maps)):
        carrier = tuple(sorted(rename.values()))
        back = {v: k for k, v in rename.items()}
        table = OpTable.from_function(
            f"+{i + 1}",
            universe,
            carrier,
            lambda x, y, t=t, rename=rename, back=back: rename[t.apply(back[x], back[y])],
        )
        ops.append(table)
        components.append(Component(f"C{i + 1}", carrier, (table.name,)))
    return MultiSpace(universe, components, ops)


# -- fan extensions ------------------------------------------------------

ABSORB = "absorb"
UNDEFINED_FILL = "undefined"
EXPLICIT = "explicit"


def _fan_entry(policy, h_idx, x, y, explicit, name):
    if policy == UNDEFINED_FILL:
        return None
    if policy == ABSORB:
        return h_idx
    if policy == EXPLICIT:
        try:
            return explicit[(x, y)]
        except (KeyError, TypeError):
            raise InputError(f"explicit policy for {name!r} misses pair ({x},{y})") from None
    raise InputError(f"unknown new-pair policy {policy!r}")


def fan_extension(
    base: OpTable,
    new_symbols: Sequence[str],
    policy: str = ABSORB,
    explicit: Optional[Sequence[dict]] = None,
) -> MultiSpace:
    """Extend one group by n fresh elements, one component and operation each.

    Every extension operation agrees with the base product on old pairs;
    pairs involving the fresh element follow the chosen policy (EXPLICIT
    grids map label pairs to a result label). The result is not completed
    for n >= 2 (distinct fresh elements never multiply).
    """
    from .core import classify_table

    if not classify_table(base).is_group():
        raise ContractError("fan extension needs a group table as its base")
    base_labels = [base.universe.name(i) for i in base.domain]
    for s in new_symbols:
        if s in base_labels:
            raise InputError(f"new symbol {s!r} collides with the base carrier")
    if len(set(new_symbols)) != len(new_symbols):
        raise InputError("new symbols must be pairwise distinct")
    labels = base_labels + list(new_symbols)
    universe = FiniteUniverse.of(labels)
    old = {i: universe.index(base.universe.name(i)) for i in base.domain}
    back = {v: k for k, v in old.items()}
    components = []
    ops = []
    for i, sym in enumerate(new_symbols):
        h = universe.index(sym)
        carrier = tuple(sorted(list(old.values()) + [h]))
        grid = None
        if policy == EXPLICIT:
            if explicit is None or len(explicit) <= i:
                raise InputError("explicit policy needs one grid per new symbol")
            grid = {
                (universe.index(a), universe.index(b)): None if v is None else universe.index(v)
                for (a, b), v in explicit[i].items()
            }

        def entry(x: int, y: int, h=h, grid=grid) -> Optional[int]:
            if x != h and y != h:
                return old[base.apply(back[x], back[y])]
            return _fan_entry(policy, h, x, y, grid, sym)

        table = OpTable.from_function(f"x{i + 1}", universe, carrier, entry)
        ops.append(table)
        components.append(Component(f"F{i + 1}", carrier, (table.name,)))
    return MultiSpace(universe, components, ops)


def fan_extension_ring(
    base_add: OpTable,
    base_mul: OpTable,
    new_symbols: Sequence[str],
    policy: str = ABSORB,
) -> MultiSpace:
    """Ring-like fan: each fresh element extends both operations of the base."""
    if base_add.domain != base_mul.domain:
        raise ContractError("ring base needs matching add/mul domains")
    base_labels = [base_add.universe.name(i) for i in base_add.domain]
    for s in new_symbols:
        if s in base_labels:
            raise InputError(f"new symbol {s!r} collides with the base carrier")
    labels = base_labels + list(new_symbols)
    universe = FiniteUniverse.of(labels)
    old = {i: universe.index(base_add.universe.name(i)) for i in base_add.domain}
    back = {v: k for k, v in old.items()}
    components = []
    ops = []
    for i, sym in enumerate(new_symbols):
        h = universe.index(sym)
        carrier = tuple(sorted(list(old.values()) + [h]))
        tables = []
        for marker, base in (("+", base_add), ("*", base_mul)):
            def entry(x: int, y: int, h=h, base=base) -> Optional[int]:
                if x != h and y != h:
                    return old[base.apply(back[x], back[y])]
                return _fan_entry(policy, h, x, y, None, sym)

            tables.append(OpTable.from_function(f"{marker}{i + 1}", universe, carrier, entry))
        ops.extend(tables)
        components.append(
            Component(f"F{i + 1}", carrier, (tables[0].name, tables[1].name), double=True)
        )
    return MultiSpace(universe, components, ops)


# -- partition-cyclic completion -----------------------------------------

def partition_cyclic(
    ambient: OpTable,
    blocks: Sequence[Sequence[str]],
    core: Sequence[str],
) -> MultiSpace:
    """Blocks of a partition-with-core each become a cyclic group; the ambient
    total operation stays as one more operation, so the space is completed.

    Each block must be listed in its cyclic generation order g1, g2, ..., gl;
    the recurrence g_j x g1 = g_{j+1} (wrapping) forces g_l to be the block
    identity and the completion to the full cyclic Cayley table is unique.
    """
    if not ambient.is_total_on_domain():
        raise ContractError("the ambient operation must be total")
    universe = ambient.universe
    sym = {universe.name(i): i for i in ambient.domain}
    core_set = frozenset(sym[s] for s in core)
    block_sets = [frozenset(sym[s] for s in block) for block in blocks]
    covered = frozenset().union(*block_sets) if block_sets else frozenset()
    if covered != frozenset(ambient.domain):
        raise PartitionError("blocks must cover the ambient carrier")
    for i in range(len(block_sets)):
        for j in range(i + 1, len(block_sets)):
            if block_sets[i] & block_sets[j] != core_set:
                raise PartitionError(
                    f"blocks {i + 1} and {j + 1} intersect in "
                    f"{universe.names(block_sets[i] & block_sets[j])}, not the core"
                )
        if not core_set <= block_sets[i]:
            raise PartitionError(f"block {i + 1} does not contain the core")
    components = []
    ops = [ambient]
    for k, block in enumerate(blocks):
        idxs = [sym[s] for s in block]
        if len(set(idxs)) != len(idxs):
            raise PartitionError(f"block {k + 1} lists duplicate elements")
        l = len(idxs)
        pos = {x: j for j, x in enumerate(idxs)}  # g_{j+1} has position j

        def entry(x: int, y: int, pos=pos, idxs=idxs, l=l) -> int:
            # g_i x g_j = g1^(i+j) with g_l the identity
            return idxs[(pos[x] + pos[y] + 1) % l]

        table = OpTable.from_function(f"x{k + 1}", universe, sorted(idxs), entry)
        ops.append(table)
        components.append(Component(f"B{k + 1}", tuple(sorted(idxs)), (table.name,)))
    components.append(Component("S", tuple(ambient.domain), (ambient.name,)))
    return MultiSpace(universe, components, ops)


def zn_ring_tables(n: int) -> tuple[FiniteUniverse, OpTable, OpTable]:
    """The ring of integers mod n as a pair of total tables."""
    labels = [str(i) for i in range(n)]
    universe = FiniteUniverse.of(labels)
    domain = range(n)
    add = OpTable.from_function("+", universe, domain, lambda x, y: (x + y) % n)
    mul = OpTable.from_function("*", universe, domain, lambda x, y: (x * y) % n)
    return universe, add, mul


def zn_ring_space(n: int) -> MultiSpace:
    universe, add, mul = zn_ring_tables(n)
    comp = Component("R1", tuple(range(n)), ("+", "*"), double=True)
    return MultiSpace(universe, [comp], [add, mul])


def shared_zero_ring_union(moduli: Sequence[int]) -> MultiSpace:
    """Z_n ring components overlapping in one shared zero element "0"."""
    labels = ["0"]
    spans = []
    for i, n in enumerate(moduli):
        if n < 1:
            raise ContractError("moduli must be >= 1")
        start = len(labels)
        labels.extend(f"c{i + 1}_{j}" for j in range(1, n))
        spans.append((start, n))
    universe = FiniteUniverse.of(labels)
    components = []
    ops = []
    for i, (start, n) in enumerate(spans):
        carrier = tuple([0] + list(range(start, start + n - 1)))
        to_resident = {0: 0}
        to_resident.update({start + j - 1: j for j in range(1, n)})
        to_index = {v: k for k, v in to_resident.items()}
        add = OpTable.from_function(
            f"+{i + 1}",
            universe,
            carrier,
            lambda x, y, m=n, f=to_resident, g=to_index: g[(f[x] + f[y]) % m],
        )
        mul = OpTable.from_function(
            f"*{i + 1}",
            universe,
            carrier,
            lambda x, y, m=n, f=to_resident, g=to_index: g[(f[x] * f[y]) % m],
        )
        ops.extend([add, mul])
        components.append(Component(f"R{i + 1}", carrier, (add.name, mul.name), double=True))
    return MultiSpace(universe, components, ops)
