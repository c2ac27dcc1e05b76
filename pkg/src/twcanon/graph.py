"""Simple undirected graphs with contiguous integer vertex ids.

All set-valued results are frozensets; list-valued results come back in a
deterministic order so that downstream serialization is reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class Graph:
    """Undirected simple graph on vertices 0..n-1 with set adjacency.

    Instances are immutable after construction and safe to share read-only
    between concurrent callers; every derived graph (induced subgraph,
    supergraph, permuted copy) is a fresh object.
    """

    __slots__ = ("n", "adj", "_m")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError(f"vertex count must be nonnegative, got {n}")
        self.n = n
        sets: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            sets[u].add(v)
            sets[v].add(u)
        self.adj: tuple[frozenset[int], ...] = tuple(frozenset(s) for s in sets)
        self._m = sum(len(s) for s in sets) // 2

    @property
    def edge_count(self) -> int:
        return self._m

    def vertices(self) -> range:
        return range(self.n)

    def check_vertex(self, v: int) -> None:
        if not (0 <= v < self.n):
            raise ValueError(f"vertex {v} out of range for n={self.n}")

    def neighbors(self, v: int) -> frozenset[int]:
        self.check_vertex(v)
        return self.adj[v]

    def degree(self, v: int) -> int:
        self.check_vertex(v)
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        self.check_vertex(u)
        self.check_vertex(v)
        return v in self.adj[u]

    def edges(self) -> list[tuple[int, int]]:
        """All edges as (u, v) pairs with u < v, sorted."""
        return [
            (u, v)
            for u in range(self.n)
            for v in sorted(self.adj[u])
            if u < v
        ]

    def with_edges(self, extra: Iterable[tuple[int, int]]) -> "Graph":
        """A copy of this graph with additional edges."""
        return Graph(self.n, self.edges() + [tuple(e) for e in extra])

    def induced(self, verts: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph plus the sorted list mapping new ids to old ones."""
        vlist = sorted(set(verts))
        for v in vlist:
            self.check_vertex(v)
        index = {v: i for i, v in enumerate(vlist)}
        edges = [
            (index[u], index[v])
            for u in vlist
            for v in self.adj[u]
            if u < v and v in index
        ]
        return Graph(len(vlist), edges), vlist

    def permuted(self, perm: Sequence[int]) -> "Graph":
        """Relabelled copy; perm[old] = new, perm must be a permutation."""
        if sorted(perm) != list(range(self.n)):
            raise ValueError("not a permutation of the vertex set")
        return Graph(self.n, [(perm[u], perm[v]) for u, v in self.edges()])

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for w in self.adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __hash__(self):
        return hash((self.n, self.adj))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self._m})"


@dataclass(frozen=True)
class Separation:
    """An ordered separation (A, B): A and B cover V and no edge joins
    A \\ B to B \\ A. The separator is A intersect B."""

    side_a: frozenset[int]
    side_b: frozenset[int]

    @property
    def separator(self) -> frozenset[int]:
        return self.side_a & self.side_b

    @property
    def order(self) -> int:
        return len(self.side_a & self.side_b)

    def violations_for(self, g: Graph) -> list[str]:
        out = []
        if self.side_a | self.side_b != frozenset(g.vertices()):
            out.append("sides do not cover the vertex set")
        for u in self.side_a - self.side_b:
            if g.adj[u] & (self.side_b - self.side_a):
                out.append(f"edge crosses from {u} into side_b")
                break
        return out

    def is_valid_for(self, g: Graph) -> bool:
        return not self.violations_for(g)


def neighborhood(g: Graph, zs: Iterable[int]) -> tuple[frozenset[int], frozenset[int]]:
    """Open and closed neighborhood of a vertex set: (N(Z), N[Z])."""
    z = frozenset(zs)
    for v in z:
        g.check_vertex(v)
    open_nb = frozenset(w for v in z for w in g.adj[v]) - z
    return open_nb, z | open_nb


def components(g: Graph, removed: Iterable[int] = ()) -> list[frozenset[int]]:
    """Connected components of g minus `removed`, sorted by smallest member.

    The order is deterministic for reproducibility only; nothing canonical
    depends on it because downstream consumers re-sort by term order.
    """
    gone = set(removed)
    for v in gone:
        g.check_vertex(v)
    out = []
    seen = set(gone)
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
        out.append(frozenset(comp))
    return out


def induced_components(g: Graph, inside: Iterable[int]) -> list[frozenset[int]]:
    """Connected components of g[inside], sorted by smallest member."""
    live = set(inside)
    for v in live:
        g.check_vertex(v)
    out = []
    seen: set[int] = set()
    for start in sorted(live):
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        seen.add(start)
        while stack:
            u = stack.pop()
            for w in g.adj[u]:
                if w in live and w not in seen:
                    seen.add(w)
                    comp.add(w)
                    stack.append(w)
        out.append(frozenset(comp))
    return out


def is_clique(g: Graph, s: Iterable[int]) -> bool:
    """True iff every pair in s is adjacent; the empty set is a clique."""
    vs = sorted(set(s))
    for v in vs:
        g.check_vertex(v)
    return all(v in g.adj[u] for i, u in enumerate(vs) for v in vs[i + 1 :])
