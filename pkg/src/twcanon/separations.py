"""Minimum-order vertex separations via max flow on a vertex-split network.

Every vertex v becomes an arc v_in -> v_out of capacity 1 (infinite for
vertices that may not end up in a separator); each edge uv becomes the two
infinite arcs u_out -> v_in and v_out -> u_in.  Augmenting paths are found
by BFS visiting neighbors in ascending id order, so results are
reproducible.  The two extreme minimum separations are read off residual
reachability: the forward-reachable side gives the separation pushed
towards the source, the backward-reachable side the one pushed towards the
sink.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .graph import Graph, Separation

_INF = 1 << 30


@dataclass(frozen=True)
class Adjacent:
    """The queried pair is an edge, so no separation exists (infinite order)."""


@dataclass(frozen=True)
class AtLeastCap:
    """Every separation has order >= cap; search stopped early."""

    cap: int


@dataclass(frozen=True)
class MinSeparation:
    order: int
    pushed_x: Separation
    pushed_y: Separation


class _SplitNetwork:
    """Residual network over nodes 2v (v_in) and 2v+1 (v_out)."""

    def __init__(self, g: Graph, extra_nodes: int = 0):
        self.g = g
        self.node_count = 2 * g.n + extra_nodes
        self.to: list[int] = []
        self.cap: list[int] = []
        self.out: list[list[int]] = [[] for _ in range(self.node_count)]
        for v in range(g.n):
            self.add_arc(2 * v, 2 * v + 1, 1)
        for v in range(g.n):
            for w in sorted(g.adj[v]):
                self.add_arc(2 * v + 1, 2 * w, _INF)

    def add_arc(self, a: int, b: int, c: int) -> None:
        self.out[a].append(len(self.to))
        self.to.append(b)
        self.cap.append(c)
        self.out[b].append(len(self.to))
        self.to.append(a)
        self.cap.append(0)

    def set_vertex_capacity(self, v: int, c: int) -> None:
        # vertex arcs were added first, in vertex order
        self.cap[2 * v] = c

    def augment(self, source: int, sink: int) -> bool:
        """Push one unit along a shortest residual path; False if none exists."""
        prev_arc = [-1] * self.node_count
        prev_arc[source] = -2
        queue = deque([source])
        while queue:
            u = queue.popleft()
            if u == sink:
                break
            for i in self.out[u]:
                w = self.to[i]
                if self.cap[i] > 0 and prev_arc[w] == -1:
                    prev_arc[w] = i
                    queue.append(w)
        if prev_arc[sink] == -1:
            return False
        u = sink
        while u != source:
            i = prev_arc[u]
            self.cap[i] -= 1
            self.cap[i ^ 1] += 1
            u = self.to[i ^ 1]
        return True

    def reachable_from(self, source: int) -> set[int]:
        seen = {source}
        stack = [source]
        while stack:
            u = stack.pop()
            for i in self.out[u]:
                w = self.to[i]
                if self.cap[i] > 0 and w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen

    def reaching_to(self, sink: int) -> set[int]:
        seen = {sink}
        stack = [sink]
        while stack:
            u = stack.pop()
            for i in self.out[u]:
                # arc i is u -> w; its twin w -> u has residual cap[i ^ 1]
                w = self.to[i]
                if self.cap[i ^ 1] > 0 and w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen

    def source_side_separation(self, source: int) -> Separation:
        reach = self.reachable_from(source)
        n = self.g.n
        cut = frozenset(v for v in range(n) if 2 * v in reach and 2 * v + 1 not in reach)
        side_a = frozenset(v for v in range(n) if 2 * v + 1 in reach) | cut
        side_b = frozenset(range(n)) - (side_a - cut)
        return Separation(side_a, side_b)

    def sink_side_separation(self, sink: int) -> Separation:
        reach = self.reaching_to(sink)
        n = self.g.n
        cut = frozenset(v for v in range(n) if 2 * v + 1 in reach and 2 * v not in reach)
        side_b = frozenset(v for v in range(n) if 2 * v in reach) | cut
        side_a = frozenset(range(n)) - (side_b - cut)
        return Separation(side_a, side_b)


def min_separation_pair(g: Graph, x: int, y: int, cap: int):
    """Minimum-order x-y separation with both pushed optima.

    The separator may not contain x or y.  Returns Adjacent() when xy is an
    edge, AtLeastCap(cap) once cap augmenting paths were found, and
    otherwise MinSeparation with the inclusion-minimal-A and
    inclusion-minimal-B optima.
    """
    g.check_vertex(x)
    g.check_vertex(y)
    if x == y:
        raise ValueError("x and y must be distinct vertices")
    if cap < 1:
        raise ValueError("cap must be at least 1")
    if y in g.adj[x]:
        return Adjacent()
    net = _SplitNetwork(g)
    source, sink = 2 * x + 1, 2 * y
    flow = 0
    while flow < cap and net.augment(source, sink):
        flow += 1
    if flow >= cap:
        return AtLeastCap(cap)
    return MinSeparation(
        order=flow,
        pushed_x=net.source_side_separation(source),
        pushed_y=net.sink_side_separation(sink),
    )


def min_separation_sets(g: Graph, xs: Iterable[int], ys: Iterable[int], cap: int):
    """Minimum-order X-Y separation (X inside A, Y inside B) with pushed optima.

    Vertices of X and Y may lie in the separator; in particular members of
    X intersect Y always do.  Returns AtLeastCap(cap) when the minimum
    order is at least cap.
    """
    xset = frozenset(xs)
    yset = frozenset(ys)
    if not xset or not yset:
        raise ValueError("xs and ys must be nonempty")
    if cap < 1:
        raise ValueError("cap must be at least 1")
    for v in xset | yset:
        g.check_vertex(v)
    net = _SplitNetwork(g, extra_nodes=2)
    source, sink = 2 * g.n, 2 * g.n + 1
    for v in sorted(xset):
        net.add_arc(source, 2 * v, _INF)
    for v in sorted(yset):
        net.add_arc(2 * v + 1, sink, _INF)
    flow = 0
    while flow < cap and net.augment(source, sink):
        flow += 1
    if flow >= cap:
        return AtLeastCap(cap)
    return MinSeparation(
        order=flow,
        pushed_x=net.source_side_separation(source),
        pushed_y=net.sink_side_separation(sink),
    )
