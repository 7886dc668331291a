"""The three summation identities behind the divisibility theorem.

Attach to each vertex x the half-coordinates y_i = x_i / (3*x_j*x_k) (or 0
and 1/2, 1/2 when a coordinate vanishes).  Three exact facts combine into
the divisibility of component sizes:

  1. y1 + y2 + y3 = 1 on every vertex (divide the equation by 3*x1*x2*x3);
  2. across any move-m edge, y_m + y_m' = 1 (the two roots of the
     coordinate quadratic sum to 3*x_j*x_k);
  3. summing 2. over a move-closed set C: sum of y_m over C = |C|/2.

Summing 1. over C gives |C| = sum of all three coordinates = 3*|C|/2,
hence |C|/2 = 0, i.e. p divides |C|.  This script evaluates each step
numerically on a real component.
"""

from markoff import MarkoffGraph, MarkoffTriple, component_sums, penner_map
from markoff.prime_field import inv_mod

p = 13
g = MarkoffGraph(p)
print(f"--- half-coordinate identities at p = {p} ---\n")

t = MarkoffTriple(1, 1, 1, p)
y = penner_map(t)
print(f"example: y({t.coords}) = {y.coords};  sum = {sum(y.coords) % p}  (identity 1)")

m = 1
image = t.vieta(m)
y_image = penner_map(image)
print(
    f"edge via move {m}: y_1({t.coords}) + y_1({image.coords}) = "
    f"{y.y1} + {y_image.y1} = {(y.y1 + y_image.y1) % p}  (identity 2)"
)

(summary,) = g.component_summaries()
sums = summary.penner_sums
half = summary.size * inv_mod(2, p) % p
print(f"\nthe single component has {summary.size} vertices; over all of them:")
print(f"  per-coordinate sums mod {p}: {sums.sums}")
print(f"  |C|/2 mod {p}:               {half}  (identity 3, all three match)")

print(f"\nchain: |C| = 3/2 * |C| mod {p}  =>  |C|/2 = 0  =>  {p} | {summary.size}")
print(f"check: {summary.size} = {summary.size // p} * {p}, divisible: {summary.chen_ok}")

print("\nthe same sums computed independently from the raw vertex set:")
independent = component_sums(g.codes, p)
print(f"  size mod p = {independent.size_mod_p}, sums = {independent.sums}, "
      f"identity holds: {independent.ok}")
