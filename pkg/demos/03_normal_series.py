"""Multi-group tour: coset tilings and the oriented maximal normal series,
whose length is an invariant of the space.
"""

from multispace.constructions import (
    cyclic_group_table,
    shared_identity_union,
    symmetric_table,
)
from multispace.multigroup import (
    SubsetView,
    composition_series,
    coset_partition,
    is_multigroup,
    maximal_normal_series,
)


def show_series(title, result, universe):
    print(f"== {title} ==")
    print(f"  chains: {result.chain_count}, lengths seen: {result.lengths}, "
          f"invariant: {result.invariant}")
    chain = result.chains[0]
    for level, op in zip(chain.levels, ("start",) + chain.step_ops):
        names = ",".join(universe.names(level))
        arrow = "" if op == "start" else f"  (descend under {op})"
        print(f"    [{names}]{arrow}")
    print()


_, z8 = cyclic_group_table(8)
show_series("Composition series of Z8", composition_series(z8), z8.universe)

_, s3 = symmetric_table(3)
show_series("Composition series of S3", composition_series(s3), s3.universe)

_, z4 = cyclic_group_table(4)
_, z6 = cyclic_group_table(6)
pair = shared_identity_union([z4, z6])
report = is_multigroup(pair)
print(f"Z4 and Z6 overlapping in one identity: multi-group={report.verdict}, "
      f"completed={report.complete}")
result = maximal_normal_series(pair, ["+1", "+2"])
show_series("Oriented series of the Z4|Z6 union", result, pair.universe)

print("== Cosets of a sub-multi-group of the union ==")
sub = SubsetView.of_names(pair, ["e", "c1_2", "c2_2", "c2_4"])
cosets = coset_partition(sub)
for coset in cosets:
    print(f"  {{{','.join(pair.universe.names(coset))}}}")
total = sum(len(c) for c in cosets)
print(f"  {len(cosets)} cosets tiling all {total} elements")
