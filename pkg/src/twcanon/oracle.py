"""Brute-force ground truth for tests, plus a seeded instance generator.

Everything here is deliberately slow and simple, and shares no algorithmic
code with the main pipeline.
"""

from __future__ import annotations

import math
import random
from itertools import combinations

from .graph import Graph, Separation


def _adj_masks(g: Graph) -> list[int]:
    masks = [0] * g.n
    for u in range(g.n):
        for v in g.adj[u]:
            masks[u] |= 1 << v
    return masks


def brute_iso(g1: Graph, g2: Graph):
    """Some isomorphism g1 -> g2 as a dict, or None.

    Plain backtracking over vertex images, pruned by degree.
    """
    if g1.n != g2.n or g1.edge_count != g2.edge_count:
        return None
    n = g1.n
    deg1 = [len(g1.adj[v]) for v in range(n)]
    deg2 = [len(g2.adj[v]) for v in range(n)]
    if sorted(deg1) != sorted(deg2):
        return None
    # map high-degree vertices first to fail fast
    order = sorted(range(n), key=lambda v: -deg1[v])
    image = [-1] * n
    used = [False] * n

    def extend(idx):
        if idx == n:
            return True
        u = order[idx]
        for w in range(n):
            if used[w] or deg1[u] != deg2[w]:
                continue
            ok = True
            for prev in order[:idx]:
                if (prev in g1.adj[u]) != (image[prev] in g2.adj[w]):
                    ok = False
                    break
            if ok:
                image[u] = w
                used[w] = True
                if extend(idx + 1):
                    return True
                used[w] = False
                image[u] = -1
        return False

    if extend(0):
        return {v: image[v] for v in range(n)}
    return None


def brute_treewidth(g: Graph) -> int:
    """Exact treewidth by dynamic programming over elimination prefixes."""
    n = g.n
    if n == 0:
        return -1
    masks = _adj_masks(g)
    full = (1 << n) - 1

    def boundary(prefix, v):
        """Vertices outside prefix+v reachable from v through prefix."""
        seen = 1 << v
        stack = [v]
        outside = 0
        while stack:
            u = stack.pop()
            rest = masks[u] & ~seen
            seen |= rest
            w = rest
            while w:
                low = w & -w
                w ^= low
                x = low.bit_length() - 1
                if prefix & low:
                    stack.append(x)
                else:
                    outside |= low
        return bin(outside).count("1")

    dp = [n] * (1 << n)
    dp[0] = -1
    for s in range(1, 1 << n):
        best = n
        rest = s
        while rest:
            low = rest & -rest
            rest ^= low
            v = low.bit_length() - 1
            prev = s ^ low
            if dp[prev] >= best:
                continue
            width = boundary(prev, v)
            cand = dp[prev] if dp[prev] > width else width
            if cand < best:
                best = cand
        dp[s] = best
    return dp[full]


def brute_min_separator(g: Graph, x: int, y: int):
    """Minimum size of a vertex cut between x and y; math.inf if adjacent."""
    g.check_vertex(x)
    g.check_vertex(y)
    if x == y:
        raise ValueError("x and y must be distinct")
    if g.has_edge(x, y):
        return math.inf
    masks = _adj_masks(g)
    rest = [v for v in g.vertices() if v not in (x, y)]
    for size in range(len(rest) + 1):
        for cut in combinations(rest, size):
            removed = 0
            for v in cut:
                removed |= 1 << v
            if not _reaches(masks, x, y, removed):
                return size
    raise AssertionError("unreachable: full cut always separates")


def _reaches(masks, x, y, removed):
    seen = 1 << x
    stack = [x]
    target = 1 << y
    while stack:
        u = stack.pop()
        new = masks[u] & ~seen & ~removed
        if new & target:
            return True
        seen |= new
        while new:
            low = new & -new
            new ^= low
            stack.append(low.bit_length() - 1)
    return False


def brute_clique_separation(g: Graph):
    """Some clique separation of g, or None if g is clique-separator free."""
    n = g.n
    verts = list(g.vertices())
    for size in range(n):
        for cut in combinations(verts, size):
            cset = set(cut)
            if not all(g.has_edge(u, v) for u, v in combinations(cut, 2)):
                continue
            comps = _components_without(g, cset)
            if len(comps) >= 2:
                side_a = frozenset(cset | comps[0])
                side_b = frozenset(set().union(*comps[1:]) | cset)
                return Separation(side_a, side_b)
    return None


def _components_without(g, removed):
    out = []
    seen = set(removed)
    for start in range(g.n):
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        seen.add(start)
        while stack:
            u = stack.pop()
            for w in g.adj[u]:
                if w not in seen:
                    seen.add(w)
                    comp.add(w)
                    stack.append(w)
        out.append(comp)
    return out


def gen_partial_ktree(n: int, k: int, keep_prob: float, seed: int) -> Graph:
    """Random partial k-tree: grow a k-tree, then keep each edge with the
    given probability. Deterministic for a fixed seed."""
    if n < k + 1:
        raise ValueError(f"need n >= k+1, got n={n}, k={k}")
    if not 0 <= keep_prob <= 1:
        raise ValueError("keep_prob must be within [0, 1]")
    rng = random.Random(seed)
    edges = set()
    cliques = [tuple(c) for c in combinations(range(k + 1), k)]
    for u in range(k + 1):
        for v in range(u + 1, k + 1):
            edges.add((u, v))
    for v in range(k + 1, n):
        base = cliques[rng.randrange(len(cliques))]
        for u in base:
            edges.add((u, v) if u < v else (v, u))
        for dropped in base:
            cliques.append(tuple(sorted((set(base) - {dropped}) | {v})))
    kept = [e for e in sorted(edges) if rng.random() < keep_prob]
    return Graph(n, kept)
