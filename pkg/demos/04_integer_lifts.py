"""Lifting mod-p vertices back to integer solutions.

Integer solutions of x1^2 + x2^2 + x3^2 = 3*x1*x2*x3 form a tree under the
Vieta moves, rooted at (1,1,1).  Reduction mod p commutes with the moves,
so a move path that reaches a vertex mod p, replayed over the integers
from (1,1,1), lands on an integer solution reducing to that vertex.  This
is the constructive direction of the question whether every mod-p solution
lifts.
"""

from markoff import MarkoffGraph, decode, replay_moves

p = 23
g = MarkoffGraph(p)
print(f"--- integer lifts at p = {p} ---\n")

targets = [int(g.codes[i]) for i in (0, g.n // 3, g.n - 1)]
for code in targets:
    target = decode(code, p)
    path = g.path_from_base(code)
    lifted = g.lift(code)
    a1, a2, a3 = lifted.coords
    print(f"target {target.coords}:")
    print(f"  path from (1,1,1): {path}")
    print(f"  integer solution:  ({a1}, {a2}, {a3})")
    print(f"  equation over Z:   {a1*a1 + a2*a2 + a3*a3} = {3*a1*a2*a3}")
    print(f"  reduction mod {p}:  {lifted.reduce(p)}\n")

print("coordinates grow fast along a path -- replaying a fixed zig-zag:")
path = [1, 2, 3, 1, 2, 3, 1, 2, 3, 1, 2, 3]
triple = (1, 1, 1)
for k in range(0, len(path) + 1, 3):
    value = replay_moves((1, 1, 1), path[:k])
    print(f"  after {k:2d} moves: largest coordinate has {max(value).bit_length()} bits")

print("""
that growth is why lift replays carry a move-count guard: a few thousand
moves would produce numbers beyond any memory.  BFS paths at small p stay
short, so lifts remain cheap.
""")
