"""
Building a system and walking its division points
=================================================

"""

from fractions import Fraction

from nsystems import build_geometry, canonical_params, export_graph, NSystem

# the canonical point for n = 3: five free rationals fix the whole system
p = canonical_params(3)
print("A =", [str(a) for a in p.A])
print("B =", [str(b) for b in p.B], " C =", p.C, " D =", p.D)

g = build_geometry(p)
for bp in g.breakpoints:
    vals = ", ".join(str(v) for v in bp.values)
    print(f"{str(bp.q):>6}  {bp.label:<22} {bp.kind:<8} ({vals})")

# the same map continues to [1, oo) by scaling with C
s = NSystem(g)
q = Fraction(9, 8)
print(s(q), s(3 * q), s(9 * q))

# the combined graph as segments, ready for any plotting tool
data = export_graph(g)
print(len(data.segments), "segments,", len(data.division_points), "division points")
for j in range(1, p.n + 2):
    print(j, [(str(a), str(b)) for a, b in data.polyline(j)][:4], "...")
