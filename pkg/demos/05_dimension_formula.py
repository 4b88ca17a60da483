"""Multi-vector tour: mixed-chain independence with undefined outcomes,
greedy bases, and where the inclusion-exclusion dimension formula agrees
with (or diverges from) the greedy count.
"""

from multispace.multivector import (
    AmbientSpace,
    MultiVectorSpace,
    additive_formula_check,
    dim_formula,
    greedy_basis,
    linearly_independent,
)

print("== Two planes in GF(2)^3 meeting in a line ==")
amb = AmbientSpace(2, 3)
planes = MultiVectorSpace.from_generators(
    amb, [[(1, 0, 0), (0, 1, 0)], [(0, 1, 0), (0, 0, 1)]]
)
report = dim_formula(planes)
print(f"  inclusion-exclusion: {report.formula_value}, greedy basis: {report.greedy_value}, "
      f"agree: {report.agree}")

print()
print("== Three distinct lines in GF(2)^2 ==")
amb2 = AmbientSpace(2, 2)
lines = MultiVectorSpace.from_generators(amb2, [[(1, 0)], [(0, 1)], [(1, 1)]])
report = dim_formula(lines)
print(f"  inclusion-exclusion: {report.formula_value}, greedy basis: {report.greedy_value}, "
      f"agree: {report.agree}  <- genuine three-component divergence, flagged")
basis = greedy_basis(lines)
print(f"  greedy basis: {basis}")
independence = linearly_independent([(1, 0), (0, 1)], lines)
print(f"  e1, e2 independent: {independence.independent} "
      f"(case {independence.case}: some chains have no home component)")

print()
print("== Dependence certificates in a full component ==")
full = MultiVectorSpace.from_generators(amb2, [[(1, 0), (0, 1)]])
dep = linearly_independent([(1, 0), (0, 1), (1, 1)], full)
print(f"  e1, e2, e1+e2 dependent with scalar certificate {dep.certificate}")

print()
print("== Additive formula over GF(3)^3 ==")
amb3 = AmbientSpace(3, 3)
v1 = MultiVectorSpace.from_generators(amb3, [[(1, 0, 0), (0, 1, 0)]])
v2 = MultiVectorSpace.from_generators(amb3, [[(0, 1, 0), (0, 0, 1)]])
add = additive_formula_check(v1, v2)
print(f"  dim(V1 u V2) = {add.dim_union} = {add.dim_first} + {add.dim_second} - "
      f"{add.dim_intersection}: {add.holds}")
