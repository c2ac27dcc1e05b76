"""Clique minimal separator decomposition.

A connected graph splits along its clique minimal separators into atoms,
the inclusion-maximal induced subgraphs without clique separations.  The
set of atoms is relabelling-invariant even though the tree shape is not.

The implementation follows the classic two-phase scheme: a minimal
elimination ordering (MCS-M) marks the vertices whose higher neighborhoods
generate minimal separators of the triangulation, and a second sweep in
elimination order splits off one component per generated separator that is
a clique in the original graph.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Optional

from .decomposition import TreeDecomposition
from .graph import Graph, induced_components, is_clique


@dataclass(frozen=True)
class AtomDecomposition:
    """Atoms arranged as a rooted tree; adhesions[i] is the intersection
    with the parent's bag (None at the root) and is always a clique."""

    bags: tuple[frozenset[int], ...]
    parent: tuple[Optional[int], ...]
    adhesions: tuple[Optional[frozenset[int]], ...]

    def tree_decomposition(self) -> TreeDecomposition:
        return TreeDecomposition(self.parent, self.bags)


def _mcs_m(g: Graph):
    """Minimal elimination ordering with separator generators.

    Returns (selection, generators): selection is the order vertices were
    picked (numbered n..1), generators maps a vertex to its higher
    neighborhood in the triangulation when that set is a minimal separator
    candidate (weight failed to increase at selection).
    """
    n = g.n
    reached_by: list[set[int]] = [set() for _ in range(n)]
    numbered = [False] * n
    selection: list[int] = []
    generators: dict[int, frozenset[int]] = {}
    prev_weight = None
    for _ in range(n):
        x = max(
            (v for v in range(n) if not numbered[v]),
            key=lambda v: (len(reached_by[v]), -v),
        )
        weight = len(reached_by[x])
        if prev_weight is not None and weight <= prev_weight:
            generators[x] = frozenset(reached_by[x])
        prev_weight = weight
        numbered[x] = True
        selection.append(x)

        # minimax search: reach y when some x..y path keeps every internal
        # unnumbered vertex strictly below y's current weight
        best: dict[int, int] = {}
        heap = []
        for y in g.adj[x]:
            if not numbered[y]:
                best[y] = -1
                heapq.heappush(heap, (-1, y))
        while heap:
            d, v = heapq.heappop(heap)
            if d > best.get(v, n):
                continue
            through = max(d, len(reached_by[v]))
            for w in g.adj[v]:
                if numbered[w]:
                    continue
                if through < best.get(w, n + 1):
                    best[w] = through
                    heapq.heappush(heap, (through, w))
        for y, d in best.items():
            if d < len(reached_by[y]):
                reached_by[y].add(x)
    return selection, generators


def atom_decomposition(g: Graph) -> AtomDecomposition:
    """Split a connected graph into its atoms.

    The bag set is invariant under relabelling; the tree arrangement
    depends on tie-breaking and is only guaranteed to be a valid
    decomposition with clique adhesions.
    """
    if g.n < 1:
        raise ValueError("atom decomposition needs at least one vertex")
    if not g.is_connected():
        raise ValueError("atom decomposition requires a connected graph")

    selection, generators = _mcs_m(g)
    alive = set(g.vertices())
    emitted: list[tuple[frozenset[int], frozenset[int]]] = []
    for x in reversed(selection):  # elimination order
        if x not in alive:
            continue
        sep = generators.get(x)
        if sep is None:
            continue
        if not sep <= alive or not is_clique(g, sep):
            continue
        comp = next(
            c for c in induced_components(g, alive - sep) if x in c
        )
        if alive - sep - comp:
            emitted.append((frozenset(sep | comp), frozenset(sep)))
            alive -= comp

    bags = [bag for bag, _ in emitted] + [frozenset(alive)]
    adhesions: list[Optional[frozenset[int]]] = [adh for _, adh in emitted] + [None]
    parent: list[Optional[int]] = []
    for i, (_, adh) in enumerate(emitted):
        parent.append(
            next(j for j in range(i + 1, len(bags)) if adh <= bags[j])
        )
    parent.append(None)
    return AtomDecomposition(tuple(bags), tuple(parent), tuple(adhesions))
