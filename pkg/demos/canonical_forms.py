"""Canonical construction terms, and why relabelling does not change them.

Run:  python3 demos/canonical_forms.py
"""

import random

from twcanon import Graph, canonize
from twcanon.terms import serialize

rng = random.Random(2024)


def shuffled(g):
    perm = list(range(g.n))
    rng.shuffle(perm)
    return g.permuted(perm), perm


print("A 4-cycle, canonized with k = 3 (treewidth of C4 is 2):")
c4 = Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
base = canonize(c4, 3)
print("  term:", serialize(base.term))
print("  phi: ", base.phi)

print("\nThe same cycle under three random relabellings:")
for _ in range(3):
    g, perm = shuffled(c4)
    res = canonize(g, 3)
    same = serialize(res.term) == serialize(base.term)
    print(f"  perm {perm} -> identical term: {same}")

print("\nThe canonical copy is itself relabelling-invariant:")
g, _ = shuffled(c4)
print("  canonical edges (original): ", base.canonical_graph.edges())
print("  canonical edges (shuffled): ", canonize(g, 3).canonical_graph.edges())

print("\nA path and a star on 4 vertices get different terms:")
p4 = Graph(4, [(0, 1), (1, 2), (2, 3)])
star = Graph(4, [(0, 1), (0, 2), (0, 3)])
print("  path:", serialize(canonize(p4, 2).term))
print("  star:", serialize(canonize(star, 2).term))
