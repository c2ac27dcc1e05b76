"""Rooted tree decompositions: validation, connectivity-sensitive rewriting,
and the two bridges between decompositions and construction terms."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import terms as tm
from .graph import Graph, induced_components, neighborhood


@dataclass(frozen=True)
class TreeDecomposition:
    """Rooted tree stored as a parent array plus one bag per node.

    parent[i] is the parent node index, None exactly for the root.
    """

    parent: tuple[Optional[int], ...]
    bags: tuple[frozenset[int], ...]

    def __post_init__(self):
        if len(self.parent) != len(self.bags):
            raise ValueError("parent and bag arrays differ in length")

    @property
    def node_count(self) -> int:
        return len(self.bags)

    def root(self) -> int:
        roots = [i for i, p in enumerate(self.parent) if p is None]
        if len(roots) != 1:
            raise ValueError(f"expected one root, found {len(roots)}")
        return roots[0]

    def children(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in self.bags]
        for i, p in enumerate(self.parent):
            if p is not None:
                out[p].append(i)
        return out  # ascending node id by construction

    def sigma(self, t: int) -> frozenset[int]:
        p = self.parent[t]
        return frozenset() if p is None else self.bags[t] & self.bags[p]

    def gamma(self) -> list[frozenset[int]]:
        """Union of bags below each node (node included)."""
        order = self.topological_order()
        kids = self.children()
        out: list[frozenset[int]] = [frozenset()] * self.node_count
        for t in reversed(order):
            acc = set(self.bags[t])
            for c in kids[t]:
                acc |= out[c]
            out[t] = frozenset(acc)
        return out

    def alpha(self) -> list[frozenset[int]]:
        gam = self.gamma()
        return [gam[t] - self.sigma(t) for t in range(self.node_count)]

    def topological_order(self) -> list[int]:
        """Nodes ordered so parents precede children; raises on cycles."""
        kids = self.children()
        order = [self.root()]
        i = 0
        while i < len(order):
            order.extend(kids[order[i]])
            i += 1
        if len(order) != self.node_count:
            raise ValueError("parent array is not a tree")
        return order

    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def adhesion_width(self) -> int:
        return max(
            (len(self.sigma(t)) for t in range(self.node_count)
             if self.parent[t] is not None),
            default=0,
        )


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    width: int
    adhesion_width: int
    violations: tuple[str, ...]


def validate(g: Graph, td: TreeDecomposition) -> ValidationReport:
    """Check the three decomposition axioms; reports, never raises."""
    problems: list[str] = []
    n_nodes = td.node_count
    if n_nodes == 0:
        return ValidationReport(False, -1, 0, ("decomposition has no nodes",))
    for i, p in enumerate(td.parent):
        if p is not None and not (0 <= p < n_nodes):
            return ValidationReport(
                False, td.width(), 0, (f"node {i} has out-of-range parent {p}",)
            )
    try:
        td.topological_order()
    except ValueError as exc:
        return ValidationReport(False, td.width(), 0, (str(exc),))

    occurrences: dict[int, list[int]] = {v: [] for v in g.vertices()}
    for t, bag in enumerate(td.bags):
        for v in bag:
            if not (0 <= v < g.n):
                problems.append(f"bag {t} contains foreign vertex {v}")
            else:
                occurrences[v].append(t)
    for v, nodes in occurrences.items():
        if not nodes:
            problems.append(f"vertex {v} occurs in no bag")
            continue
        node_set = set(nodes)
        tops = [t for t in nodes if td.parent[t] not in node_set]
        if len(tops) != 1:
            problems.append(f"occurrence nodes of vertex {v} are disconnected")
    for u, v in g.edges():
        if not any(u in bag and v in bag for bag in td.bags):
            problems.append(f"edge ({u}, {v}) is covered by no bag")
    return ValidationReport(
        ok=not problems,
        width=td.width(),
        adhesion_width=td.adhesion_width(),
        violations=tuple(problems),
    )


def make_cs(g: Graph, td: TreeDecomposition) -> TreeDecomposition:
    """Connectivity-sensitive rewrite of a valid decomposition.

    In the output, every node's strictly-below vertex set induces a
    connected subgraph whose open neighborhood is exactly the adhesion.
    Width and adhesion width do not increase and every output bag is a
    subset of some input bag.
    """
    if not g.is_connected():
        raise ValueError("make_cs requires a connected graph")
    report = validate(g, td)
    if not report.ok:
        raise ValueError(f"invalid decomposition: {report.violations[0]}")
    if g.n == 0:
        return TreeDecomposition((None,), (frozenset(),))

    alpha = td.alpha()
    kids = td.children()
    out_parent: list[Optional[int]] = []
    out_bags: list[frozenset[int]] = []

    def build(t: int, zone: frozenset[int], parent_id: Optional[int]) -> None:
        _, closed = neighborhood(g, zone)
        node_id = len(out_bags)
        out_parent.append(parent_id)
        out_bags.append(td.bags[t] & closed)
        for c in kids[t]:
            for comp in induced_components(g, zone & alpha[c]):
                build(c, comp, node_id)

    root = td.root()
    build(root, frozenset(g.vertices()), None)
    return TreeDecomposition(tuple(out_parent), tuple(out_bags))


def term_to_decomposition(t: tm.Term) -> TreeDecomposition:
    """One node per operator position; the bag is the labelling domain there,
    expressed in the vertices of the evaluated graph."""
    full = tm._eval_full(t)
    return TreeDecomposition(tuple(full.parent), tuple(full.position_bag))


def decomposition_to_term(g: Graph, td: TreeDecomposition, label_pool: int) -> tm.Term:
    """A construction term for g read off a valid decomposition.

    Uses at most label_pool labels; free choices are resolved by ascending
    vertex id and ascending label. The result is verified to rebuild g
    exactly before it is returned.
    """
    report = validate(g, td)
    if not report.ok:
        raise ValueError(f"invalid decomposition: {report.violations[0]}")
    oversized = [t for t, bag in enumerate(td.bags) if len(bag) > label_pool]
    if oversized:
        raise ValueError(
            f"bag {oversized[0]} has {len(td.bags[oversized[0]])} vertices, "
            f"pool is {label_pool}"
        )
    if g.n == 0:
        return tm.leaf()

    kids = td.children()
    intro_vertex: dict[tm.Term, int] = {}

    def wrap_introduce(term, lam_inv, labels):
        for i in sorted(labels):
            term = tm.introduce(i, term)
            intro_vertex[term] = lam_inv[i]
        return term

    def build(t: int, lam: dict[int, int]) -> tm.Term:
        """Term constructing g[subtree of t] with adhesion edges cleared,
        labelled by lam on the adhesion."""
        bag = td.bags[t]
        lam_full = dict(lam)
        free = (i for i in range(1, label_pool + 1) if i not in lam.values())
        for v in sorted(bag - set(lam)):
            lam_full[v] = next(free)
        lam_inv = {i: v for v, i in lam_full.items()}
        bag_labels = frozenset(lam_full[v] for v in bag)

        if not kids[t]:
            term = wrap_introduce(tm.leaf(), lam_inv, bag_labels)
        else:
            parts = []
            for c in kids[t]:
                sub_lam = {v: lam_full[v] for v in td.bags[c] & bag}
                sub = build(c, sub_lam)
                parts.append(
                    wrap_introduce(sub, lam_inv, bag_labels - sub.used)
                )
            term = parts[0] if len(parts) == 1 else tm.join(parts)

        adhesion_labels = frozenset(lam[v] for v in lam)
        for i in sorted(bag_labels):
            for j in sorted(bag_labels):
                if i >= j:
                    continue
                if i in adhesion_labels and j in adhesion_labels:
                    continue
                if g.has_edge(lam_inv[i], lam_inv[j]):
                    term = tm.edge(i, j, term)
        for i in sorted(bag_labels - adhesion_labels):
            term = tm.forget(i, term)
        return term

    result = build(td.root(), {})
    tm.check_witnessed_eval(result, g, intro_vertex)
    return result
