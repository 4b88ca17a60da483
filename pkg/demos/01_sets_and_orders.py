"""Foundations tour: Boolean laws on a power set, partial orders with their
extremes, equivalence class counting, and neutrosophic unions.
"""

from multispace.foundations import (
    BinaryRelation,
    FiniteUniverse,
    NeutrosophicComponent,
    check_boolean_laws,
    equivalence_classes,
    neutrosophic_union,
    poset_check,
    poset_extremes,
    valuate_union,
)

print("== Boolean laws over the power set of {a, b, c} ==")
universe = FiniteUniverse.of(["a", "b", "c"])
report = check_boolean_laws(universe)
for result in report.results:
    print(f"  {result.law} ({result.name}): {'pass' if result.passed else 'FAIL'}")
print(f"  all seven laws hold: {report.all_pass}")

print()
print("== Divisibility on {1, 2, 3, 6} ==")
numbers = FiniteUniverse.of(["1", "2", "3", "6"])
divides = BinaryRelation.from_names(
    numbers,
    [(a, b) for a in "1236" for b in "1236" if int(b) % int(a) == 0],
)
verdict = poset_check(divides)
print(f"  poset: {verdict.is_poset}, total order: {verdict.is_total}")
maximal, minimal = poset_extremes(divides)
print(f"  maximal elements: {numbers.names(maximal)}, minimal: {numbers.names(minimal)}")

print()
print("== Counting residue classes mod 3 on {0..11} ==")
twelve = FiniteUniverse.of([str(i) for i in range(12)])
mod3 = BinaryRelation(
    twelve, frozenset((i, j) for i in range(12) for j in range(12) if (i - j) % 3 == 0)
)
partition = equivalence_classes(mod3)
print(f"  {partition.count} classes of size {partition.uniform_class_size}; "
      f"12 / {partition.uniform_class_size} = {partition.count}: {partition.quotient_check}")

print()
print("== Neutrosophic unions ==")
plain = [NeutrosophicComponent.constant([0, 1], 1, 0, 0),
         NeutrosophicComponent.constant([1, 2], 1, 0, 0)]
out = neutrosophic_union(plain, universe_size=4)
print(f"  all-true components -> case {out.case}, abstract set {sorted(out.abstract_set)}")
fuzzy = [NeutrosophicComponent.constant([0, 1], 0.5, 0.2, 0.1)]
out = neutrosophic_union(fuzzy, universe_size=4)
print(f"  half-true component -> case {out.case} (no abstract-set equivalent)")

print()
print("== Valuations ==")
overlap = valuate_union([0.5, 0.5], [frozenset({0, 1}), frozenset({1, 2})])
disjoint = valuate_union([0.5, 0.5], [frozenset({0}), frozenset({1})])
print(f"  overlapping halves: {overlap}   disjoint halves: {disjoint}")
