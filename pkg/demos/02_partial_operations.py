"""Multi-space substrate tour: the two 3x3 Latin tables, mixed-operation
chain evaluation with undefined outcomes, units, equation solving, and the
automorphism count pattern for disjoint cyclic unions.
"""

import math

from multispace.constructions import LatinSquare, disjoint_cyclic_union, latin_multispace
from multispace.core import (
    ExprChain,
    automorphisms,
    classify_table,
    eval_chain,
    find_units,
    solve_equation,
)

L1 = LatinSquare(3, ((0, 1, 2), (1, 2, 0), (2, 0, 1)))
L2 = LatinSquare(3, ((0, 1, 2), (2, 0, 1), (1, 2, 0)))
space = latin_multispace(["1", "2", "3"], [L1, L2])
u = space.universe

print("== Two Latin operations on {1, 2, 3} ==")
for op in space.ops:
    label = classify_table(op).label
    print(f"  operation {op.name}: classifies as {label}")
print(f"  completed space: {space.is_completed()}")


def show(names, ops):
    chain = ExprChain(tuple(u.index(n) for n in names), ops)
    value = eval_chain(space, chain)
    pretty = f" {ops[0]} ".join(names[:2]) + (f" {ops[1]} {names[2]}" if len(names) > 2 else "")
    print(f"  {pretty} = {u.name(value) if value is not None else 'UNDEFINED'}")


print()
print("== Left-associative mixed chains ==")
show(["1", "2", "3"], ("x1", "x2"))
show(["2", "3", "3"], ("x1", "x2"))
show(["2", "3", "2"], ("x1", "x2"))

print()
print("== Disjoint cyclic union: partiality in action ==")
union = disjoint_cyclic_union([2, 3])
a = union.components[0].carrier[1]
b = union.components[1].carrier[1]
pair = ExprChain((a, b), ("+1",))
print(f"  {union.universe.name(a)} +1 {union.universe.name(b)} = "
      f"{eval_chain(union, pair) or 'UNDEFINED'} (cross-component)")
print(f"  completed: {union.is_completed()}")

print()
print("== Units and translation equations ==")
report = find_units(space.op("x1"))
print(f"  units of x1: left {report.left_units}, right {report.right_units}")
solutions = solve_equation(space, u.index("1"), u.index("3"))
print(f"  solutions of 1 * x = 3: "
      f"{[(op, u.name(x)) for op, x in solutions]} (one per operation)")

print()
print("== Automorphism counts for k disjoint copies of Z_m ==")


def phi(n):
    return sum(1 for i in range(1, n + 1) if math.gcd(i, n) == 1)


for m, k in ((2, 2), (3, 2), (3, 3), (4, 2)):
    count = len(automorphisms(disjoint_cyclic_union([m] * k)))
    print(f"  m={m}, k={k}: |Aut| = {count} = phi({m})^{k} * {k}! = {phi(m) ** k * math.factorial(k)}")
