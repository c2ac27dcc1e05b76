"""Canonical construction terms via dynamic programming over candidate bags.

For each state (B, lam, Z), a candidate bag B with an injective labelling
lam and one connected component Z of G minus B, the solver computes the
order-minimal term constructing G[B+Z] with the edges inside B cleared,
labelled lam on B.  The output for a connected graph is the term of
(empty, empty, V); disconnected graphs join their components' terms in
sorted order.  Because every choice is resolved by the total term order
over a relabelling-invariant candidate set, the resulting term depends
only on the isomorphism class of the input.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import Optional

from . import terms as tm
from .bags import Params, Recorder, ReducedBagFamily, reduced_family
from .errors import TooWideError
from .graph import Graph, components, induced_components
from .improved import improve


@dataclass(frozen=True)
class State:
    """bag with labelling, plus one component of the graph minus the bag
    (or an empty zone)."""

    bag: frozenset[int]
    labelling: tuple[tuple[int, int], ...]  # sorted (vertex, label) pairs
    zone: frozenset[int]

    @staticmethod
    def make(bag, labelling, zone) -> "State":
        lam = tuple(sorted(dict(labelling).items()))
        bag = frozenset(bag)
        if {v for v, _ in lam} != bag:
            raise ValueError("labelling domain must equal the bag")
        labels = [i for _, i in lam]
        if len(set(labels)) != len(labels):
            raise ValueError("labelling must be injective")
        return State(bag, lam, frozenset(zone))

    @property
    def pot(self) -> int:
        return 2 * len(self.zone) + len(self.bag)


@dataclass
class CanonResult:
    """term: the canonical construction term.
    phi: vertex -> position in 1..n; an isomorphism onto canonical_graph.
    canonical_graph: the relabelled copy, vertex i stored as id i-1."""

    term: tm.Term
    phi: dict[int, int]
    canonical_graph: Graph


class CanonContext:
    """One canonization run: the graph, parameters, candidate family, and
    the memo table.  Owned by a single canonize() invocation."""

    def __init__(self, g: Graph, params: Params, family: ReducedBagFamily):
        self.g = g
        self.params = params
        self.family = family
        self.memo: dict[tuple, Optional[tm.Term]] = {}
        self.intro_vertex: dict[tm.Term, int] = {}
        self.forget_vertex: dict[tm.Term, int] = {}

    # -- the dynamic program ------------------------------------------------

    def solve_state(self, st: State, _caller_pot: Optional[int] = None) -> Optional[tm.Term]:
        """Order-minimal term for the state, or None when no candidate exists.

        Only states of strictly smaller potential are consulted.
        """
        if _caller_pot is not None:
            assert st.pot < _caller_pot, "state recursion failed to progress"
        key = (st.labelling, tuple(sorted(st.zone)))
        if key in self.memo:
            return self.memo[key]
        if not self.family.member(st.bag):
            raise ValueError("state bag is not in the candidate family")
        if any(i > self.params.k_prime for _, i in st.labelling):
            raise ValueError(f"labels must lie in 1..{self.params.k_prime}")

        term = self._solve_uncached(st)
        if term is not None:
            bound = (self.params.k_prime + 2) * max(2 * len(st.zone) - 1, 0) \
                + len(st.bag) + 2
            assert term.length <= bound, "term length bound violated"
        self.memo[key] = term
        return term

    def _solve_uncached(self, st: State) -> Optional[tm.Term]:
        g = self.g
        bag, zone = st.bag, st.zone
        lam = dict(st.labelling)
        if not bag and not zone:
            return tm.leaf()

        # introduce candidates: vertices of the bag with no neighbor in the
        # zone, in ascending label order.  The first feasible one is the
        # order minimum: the topmost operator decides, introduce labels
        # differ across candidates, and introduce precedes forget.
        for u in sorted(bag, key=lam.__getitem__):
            if g.adj[u] & zone:
                continue
            sub = State.make(bag - {u}, {v: i for v, i in lam.items() if v != u}, zone)
            child = self.solve_state(sub, st.pot)
            if child is not None:
                term = tm.introduce(lam[u], child)
                self.intro_vertex[term] = u
                return term

        if not zone:
            return None

        # forget candidates: only the smallest free label can win (smaller
        # forget labels beat larger ones at the top operator, and
        # feasibility does not depend on the label value), so candidates
        # range over the zone vertices only.
        used_labels = set(lam.values())
        if len(used_labels) >= self.params.k_prime:
            return None
        label = next(i for i in range(1, self.params.k_prime + 1)
                     if i not in used_labels)
        best = None
        for v in sorted(zone):
            new_bag = bag | {v}
            if not self.family.member(new_bag):
                continue
            new_lam = dict(lam)
            new_lam[v] = label
            inner = self.break_op(new_bag, new_lam, zone - {v}, _caller_pot=st.pot)
            if inner is None:
                continue
            for j in sorted((lam[w] for w in g.adj[v] & bag), reverse=True):
                inner = tm.edge(label, j, inner)
            candidate = tm.forget(label, inner)
            self.forget_vertex[candidate] = v
            if best is None or candidate.key < best.key:
                best = candidate
        return best

    def break_op(self, bag, labelling, zone, _caller_pot: Optional[int] = None) -> Optional[tm.Term]:
        """Term for a zone made of zero or more components of G minus bag:
        solve each component and join the results in sorted order
        (duplicates retained); None as soon as any component has none."""
        zone = frozenset(zone)
        parts = induced_components(self.g, zone)
        if len(parts) <= 1:
            st = State.make(bag, labelling, zone)
            return self.solve_state(st, _caller_pot)
        terms = []
        for comp in parts:
            t = self.solve_state(State.make(bag, labelling, comp), _caller_pot)
            if t is None:
                return None
            terms.append(t)
        terms.sort(key=lambda t: t.key)
        return tm.join(terms)


def _single_vertex_term(ctx: CanonContext, v: int) -> tm.Term:
    intro = tm.introduce(1, tm.leaf())
    ctx.intro_vertex[intro] = v
    term = tm.forget(1, intro)
    ctx.forget_vertex[term] = v
    return term


def canonize(
    g: Graph,
    k: int,
    params: Optional[Params] = None,
    recorder: Optional[Recorder] = None,
) -> CanonResult:
    """Isomorphism-invariant construction term, vertex numbering, and
    canonical copy of g, provided its treewidth is below k.

    Raises TooWideError when some stage verifies treewidth >= k, and
    BudgetExceededError when the bag enumeration budget is exhausted
    (no treewidth conclusion in that case).
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if params is None:
        params = Params.for_k(k)
    elif params.k != k:
        raise ValueError(f"params were built for k={params.k}, not k={k}")
    sys.setrecursionlimit(max(10_000, 40 * g.n + 1_000))

    comps = components(g)
    ctxs: list[CanonContext] = []
    built: list[tm.Term] = []
    for comp in comps:
        if len(comp) == 1:
            ctx = CanonContext(g, params, ReducedBagFamily([], params.k_prime))
            built.append(_single_vertex_term(ctx, next(iter(comp))))
            ctxs.append(ctx)
            continue
        sub, vmap = g.induced(comp)
        improved = improve(sub, k)
        fam_local = reduced_family(improved, params, recorder)
        base = frozenset(
            frozenset(vmap[i] for i in bag) for bag in fam_local.base
        )
        if not base:
            raise TooWideError(k, "candidate bag family is empty")
        ctx = CanonContext(g, params, ReducedBagFamily(base, params.k_prime))
        term = ctx.solve_state(State.make(frozenset(), {}, comp))
        if term is None:
            raise TooWideError(k, "no construction term over the bag family")
        built.append(term)
        ctxs.append(ctx)

    if not built:
        term = tm.leaf()
    elif len(built) == 1:
        term = built[0]
    else:
        term = tm.join(sorted(built, key=lambda t: t.key))

    intro_vertex: dict[tm.Term, int] = {}
    forget_vertex: dict[tm.Term, int] = {}
    for ctx in ctxs:
        intro_vertex.update(ctx.intro_vertex)
        forget_vertex.update(ctx.forget_vertex)
    return _finish(g, term, intro_vertex, forget_vertex)


def _finish(g, term, intro_vertex, forget_vertex) -> CanonResult:
    """Derive and verify phi and the canonical copy from the term."""
    full = tm._eval_full(term)
    ev_to_g = tm.check_witnessed_eval(term, g, intro_vertex)

    # number evaluated vertices by the pre-order positions of their forgets;
    # a term with no used labels forgets every vertex exactly once
    assert len(full.forgotten) == g.n, "not every vertex is forgotten"
    phi_ev: dict[int, int] = {}
    for rank, pos in enumerate(sorted(full.forgotten), start=1):
        ev = full.forgotten[pos]
        assert ev not in phi_ev, "vertex forgotten twice"
        phi_ev[ev] = rank
        # cross-check the construction bookkeeping against the evaluation
        node = full.position_node[pos]
        if node in forget_vertex:
            assert forget_vertex[node] == ev_to_g[ev]

    phi = {ev_to_g[ev]: rank for ev, rank in phi_ev.items()}
    canonical = Graph(
        g.n,
        [(phi_ev[a] - 1, phi_ev[b] - 1) for a, b in full.graph.edges()],
    )
    # verify phi is a true isomorphism before returning
    assert sorted(phi) == list(g.vertices())
    assert sorted(phi.values()) == list(range(1, g.n + 1))
    for u in g.vertices():
        for v in range(u + 1, g.n):
            assert g.has_edge(u, v) == canonical.has_edge(phi[u] - 1, phi[v] - 1), (
                "phi is not an isomorphism"
            )
    return CanonResult(term=term, phi=phi, canonical_graph=canonical)


def isomorphic(
    g1: Graph,
    g2: Graph,
    k: int,
    params: Optional[Params] = None,
) -> Optional[dict[int, int]]:
    """A verified isomorphism g1 -> g2, or None when the graphs differ.

    Both graphs are canonized with the same parameters; equality of the
    serialized terms decides.  Raises TooWideError if either canonization
    reports treewidth >= k, BudgetExceededError on resource exhaustion.
    """
    r1 = canonize(g1, k, params)
    r2 = canonize(g2, k, params)
    if r1.term.ser != r2.term.ser:
        return None
    inverse2 = {pos: v for v, pos in r2.phi.items()}
    mapping = {u: inverse2[r1.phi[u]] for u in g1.vertices()}
    assert sorted(mapping.values()) == list(g2.vertices())
    for u in g1.vertices():
        for v in range(u + 1, g1.n):
            assert g1.has_edge(u, v) == g2.has_edge(mapping[u], mapping[v]), (
                "mapping is not an isomorphism"
            )
    return mapping
