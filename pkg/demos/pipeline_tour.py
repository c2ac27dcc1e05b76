"""A tour through the pipeline stages on one small graph.

Run:  python3 demos/pipeline_tour.py
"""

from twcanon import Graph, Params, canonize, improve, reduced_family, validate
from twcanon.atoms import atom_decomposition
from twcanon.decomposition import term_to_decomposition
from twcanon.terms import eval as eval_term
from twcanon.terms import serialize

# two triangles sharing an edge, plus a pendant path
g = Graph(
    7,
    [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 4), (4, 5), (5, 6)],
)
k = 3
print(f"input: {g}, k = {k}")

h = improve(g, k)
print(f"\n1. improved graph: {h.edge_count - g.edge_count} edges added")

dec = atom_decomposition(h)
print(f"2. atoms of the improved graph ({len(dec.bags)}):")
for bag, adh in zip(dec.bags, dec.adhesions):
    note = "" if adh is None else f"  (adhesion {sorted(adh)})"
    print(f"   {sorted(bag)}{note}")

params = Params.for_k(k)
family = reduced_family(h, params)
print(f"3. candidate family: {len(family.base)} base bags, "
      f"subset-closed up to size {family.cap}")
print(f"   member({{0, 1}}) = {family.member({0, 1})}, "
      f"member(V) = {family.member(range(g.n))}")

res = canonize(g, k, params)
print(f"\n4. canonical term ({res.term.length} operators):")
print("  ", serialize(res.term))
print("   phi:", res.phi)

td = term_to_decomposition(res.term)
report = validate(eval_term(res.term).graph, td)
print(f"\n5. the term encodes a tree decomposition: ok={report.ok}, "
      f"width={report.width}, adhesion width={report.adhesion_width}")
