"""A first walk on the Markoff graph mod p.

Vertices are the nonzero solutions of x1^2 + x2^2 + x3^2 = 3*x1*x2*x3 over
F_p.  Fixing two coordinates turns the equation into a quadratic in the
third, and swapping a coordinate for the other root of its quadratic is a
Vieta move; the three moves give every vertex exactly three (not
necessarily distinct) neighbors.
"""

from markoff import MarkoffTriple, decode, enumerate_vertices, is_vertex

p = 5

print(f"--- the Markoff graph mod {p} ---\n")

print("(1,1,1) is always a vertex: 1+1+1 = 3 = 3*1*1*1")
print("  is_vertex(1,1,1) ->", is_vertex(1, 1, 1, p))
print("(1,2,3) mod 7 is not: 1+4+9 = 14 = 0, but 3*6 = 18 = 4 mod 7")
print("  is_vertex(1,2,3) mod 7 ->", is_vertex(1, 2, 3, 7), "\n")

t = MarkoffTriple(1, 1, 1, p)
print(f"the three Vieta moves from {t.coords}:")
for m in (1, 2, 3):
    image = t.vieta(m)
    print(f"  move {m}: {t.coords} -> {image.coords}"
          f"   (and back: {image.vieta(m).coords})")
print("each move is an involution: applying it twice returns the start.\n")

codes = enumerate_vertices(p)
print(f"mod {p} there are {len(codes)} vertices; the first five:")
for code in codes[:5]:
    print(f"  code {int(code):3d} = {decode(int(code), p).coords}")
print("\ncodes are (x1*p + x2)*p + x3, so the list is lexicographic.")

print("\nvertex counts follow p (exactly p*(p+3) or p*(p-3) for odd p):")
for q in (2, 3, 5, 7, 11, 13):
    print(f"  p={q:2d}: {len(enumerate_vertices(q)):4d} vertices")

print("""
a vertex can have a zero coordinate (never two), and a move can fix a
vertex: mod 2, (1,1,0) is its own move-1 image, a self-loop in the graph.
""")
t = MarkoffTriple(1, 1, 0, 2)
print(f"  vieta((1,1,0), 1) mod 2 -> {t.vieta(1).coords}")
