"""Multi-ring tour: ideal chains of Z_n, idempotents, and the directed-sum
decomposition by orthogonal idempotent families.
"""

from multispace.constructions import shared_zero_ring_union, zn_ring_space
from multispace.multiring import (
    decompose_artin,
    idempotents,
    is_artin,
    is_multiring,
    multiideal_chain,
)


def names(ms, subset):
    return "{" + ",".join(ms.universe.names(subset)) + "}"


for n in (6, 4, 5):
    ms = zn_ring_space(n)
    result = multiideal_chain(ms, ["R1"])
    print(f"== Maximal ideal chains of Z{n} ==")
    for chain in result.chains:
        print("  " + " > ".join(names(ms, level) for level in chain.levels))
    print(f"  all {result.chain_count} chains have length {result.length}")
    print()

print("== Idempotents of Z6 ==")
z6 = zn_ring_space(6)
report = idempotents(z6, "R1")
print(f"  idempotents: {report.elements}")
print(f"  orthogonal families summing to 1: {report.orthogonal_unit_families}")

print()
print("== Directed-sum decompositions ==")
for n in (6, 12, 4):
    ms = zn_ring_space(n)
    comp = decompose_artin(ms).components[0]
    pieces = " (+) ".join(names(ms, p) for p in comp.pieces)
    print(f"  Z{n}: idempotents {comp.family} -> {pieces}")
    print(f"       reconstruction exact: {comp.reconstruction_exact}, "
          f"unique sums: {comp.unique_sums}, pieces are ideals: {comp.pieces_are_ideals}")

print()
print("== A two-component multi-ring sharing its zero ==")
union = shared_zero_ring_union([4, 9])
report = is_multiring(union)
print(f"  multi-ring: {report.verdict}, multi-field: {report.multifield}, "
      f"completed: {report.complete}")
chains = multiideal_chain(union, ["R1", "R2"])
print(f"  ideal chains: {chains.chain_count}, common length {chains.length}")
print(f"  Artin: {is_artin(union).verdict} "
      f"(every finite multi-ring is; longest component chain {is_artin(union).longest_chain})")
