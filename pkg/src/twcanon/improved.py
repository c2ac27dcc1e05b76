"""The k-improved graph: add an edge wherever vertex connectivity reaches k.

Working on the improved graph is harmless for tree decompositions of width
below k, and it removes low-connectivity noise before clique separators are
extracted.
"""

from __future__ import annotations

from .errors import TooWideError
from .graph import Graph
from .separations import Adjacent, AtLeastCap, min_separation_pair


def improve(g: Graph, k: int) -> Graph:
    """The k-improved supergraph of g.

    Raises TooWideError when the edge count already exceeds (k-1)*n, which
    certifies treewidth at least k by degeneracy. Otherwise returns the
    graph with an edge for every pair of connectivity at least k (adjacent
    pairs count as infinitely connected and are always kept).
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if g.edge_count > (k - 1) * g.n:
        raise TooWideError(k, f"{g.edge_count} edges exceed ({k}-1)*{g.n}")
    extra = []
    for x in range(g.n):
        for y in range(x + 1, g.n):
            if y in g.adj[x]:
                continue
            if isinstance(min_separation_pair(g, x, y, cap=k), AtLeastCap):
                extra.append((x, y))
    return g.with_edges(extra)


def is_k_complemented(g: Graph, k: int) -> bool:
    """True iff every nonadjacent pair has connectivity below k."""
    if k < 1:
        raise ValueError("k must be at least 1")
    for x in range(g.n):
        for y in range(x + 1, g.n):
            if y in g.adj[x]:
                continue
            res = min_separation_pair(g, x, y, cap=k)
            assert not isinstance(res, Adjacent)
            if isinstance(res, AtLeastCap):
                return False
    return True
