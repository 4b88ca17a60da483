"""Multi-metric tour: exact-rational metric validation, combinators, disks,
sequence analysis, and contraction fixed points with orbit iteration.
"""

from fractions import Fraction as F

from multispace.multimetric import (
    CombinatorSpec,
    MappingTable,
    MetricTable,
    MultiMetricSpace,
    SequenceSpec,
    analyze_sequence,
    combine_metrics,
    fixed_points,
    is_contraction,
    r_disk,
    validate_metric,
)

print("== A metric from the rational line and the rho/(1+rho) combinator ==")
line = MetricTable.from_line({"0": F(0), "1": F(1), "3": F(3)})
print(f"  |x-y| on {{0,1,3}} valid: {validate_metric(line).valid}")
bounded = combine_metrics([line], CombinatorSpec("bounded_sum"))
print(f"  bounded distance d(0,3) = {bounded.dist('0', '3')}  (exact rational)")
doubled = combine_metrics([line, line], CombinatorSpec("sum"))
print(f"  summed with itself, d(0,3) = {doubled.dist('0', '3')}")

print()
print("== Disks are existential over components ==")
near = MetricTable.from_rows(["x", "y"], [[0, F(1, 4)], [F(1, 4), 0]])
far = MetricTable.from_rows(["x", "y"], [[0, 10], [10, 0]])
two_views = MultiMetricSpace([far, near])
print(f"  B(x, 1/2) = {r_disk(two_views, 'x', F(1, 2))} "
      "(y is close in one of the two components)")

print()
print("== Finitely presented sequences ==")
m1 = MetricTable.from_line({"a": F(0), "b": F(1)})
m2 = MetricTable.from_line({"c": F(0), "d": F(2)})
space = MultiMetricSpace([m1, m2])
settle = analyze_sequence(space, SequenceSpec(("a", "b"), "constant", ("c",)))
print(f"  a, b, c, c, ... converges: {settle.convergent}, limit {settle.limit}, "
      f"tail component {settle.tail_component}")
bounce = analyze_sequence(space, SequenceSpec((), "periodic", ("b", "c")))
print(f"  b, c, b, c, ... converges: {bounce.convergent}, Cauchy: {bounce.cauchy}")

print()
print("== A contraction across components and its fixed points ==")
big = MetricTable.from_line({"a": F(0), "b": F(4), "c": F(8)})
small = MetricTable.from_line({"x": F(0), "y": F(1), "z": F(2)})
chain_space = MultiMetricSpace([big, small])
mapping = MappingTable({"a": "x", "b": "y", "c": "z", "x": "x", "y": "x", "z": "x"})
contraction = is_contraction(chain_space, mapping)
print(f"  contraction: {contraction.verdict} with best ratio alpha = {contraction.alpha}")
report = fixed_points(chain_space, mapping)
print(f"  fixed points: {report.points} (count {report.count}, "
      f"bound 1 <= {report.count} <= {chain_space.m}: {report.bound_ok})")
for orbit in report.orbits:
    path = " -> ".join(orbit.path[:5])
    print(f"  orbit from {orbit.seed}: {path} ... settles at {orbit.settles_at}")
