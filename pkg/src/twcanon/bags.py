"""Isomorphism-invariant enumeration of candidate bags.

The pipeline enumerates, for a connected k-complemented graph, a family of
vertex sets that (whenever treewidth is below k) captures some tree
decomposition of bounded width.  It combines three layers:

* ``local_step`` grows a boundary set by the union of all extreme minimum
  separators between parts of the boundary; the union is invariant under
  automorphisms of (graph, boundary).
* ``bags_no_cliqueseps`` runs the recursive top-down decomposition from
  every low-degree start vertex of a clique-separator-free graph and
  collects all produced bags.
* ``bags_with_atoms`` splits an arbitrary connected graph into atoms first
  and unions the per-atom families; ``reduced_family`` finally closes the
  family under bounded-size subsets, implicitly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Iterable, Optional

from .atoms import atom_decomposition
from .decomposition import TreeDecomposition
from .errors import BudgetExceededError, TooWideError
from .graph import Graph, induced_components, is_clique, neighborhood
from .separations import AtLeastCap, MinSeparation, min_separation_pair, min_separation_sets


@dataclass(frozen=True)
class Params:
    """Size thresholds for the bag enumeration.

    tau bounds the boundary size handled by pairwise separators, rho the
    boundary size overall, zeta the bag size, and k_prime the label count
    (always (k+1)*rho).  zeta is astronomically large already for small k;
    it is a correctness cap, rarely binding.  pair_budget limits the (L, R)
    pairs examined by one local step; hitting it is a resource signal and
    never a treewidth claim.
    """

    k: int
    tau: int
    rho: int
    zeta: int
    k_prime: int
    pair_budget: int = 2_000_000
    non_canonical: bool = False

    @staticmethod
    def for_k(k: int, pair_budget: int = 2_000_000) -> "Params":
        if k < 1:
            raise ValueError("k must be at least 1")
        tau = 6 * k
        rho = tau + 2 * (k - 1) * comb(tau, 2)
        zeta = rho + 2 * k * comb(rho, k + 1) ** 2
        return Params(
            k=k,
            tau=tau,
            rho=rho,
            zeta=zeta,
            k_prime=(k + 1) * rho,
            pair_budget=pair_budget,
        )

    def override(self, **kw) -> "Params":
        """Experimental parameter overrides.

        Changing tau, rho or zeta marks the result non-canonical (rho also
        recomputes k_prime, which is always (k+1)*rho).  Changing only the
        pair budget does not affect canonicity.
        """
        allowed = {"tau", "rho", "zeta", "pair_budget"}
        bad = set(kw) - allowed
        if bad:
            raise ValueError(f"cannot override {sorted(bad)}")
        tau = kw.get("tau", self.tau)
        rho = kw.get("rho", self.rho)
        zeta = kw.get("zeta", self.zeta)
        budget = kw.get("pair_budget", self.pair_budget)
        shape_changed = (tau, rho, zeta) != (self.tau, self.rho, self.zeta)
        return Params(
            k=self.k,
            tau=tau,
            rho=rho,
            zeta=zeta,
            k_prime=(self.k + 1) * rho,
            pair_budget=budget,
            non_canonical=self.non_canonical or shape_changed,
        )


@dataclass
class LocalStepEvent:
    graph: Graph
    boundary: frozenset[int]
    grown: frozenset[int]


@dataclass
class Recorder:
    """Instrumentation sink for the enumeration internals."""

    local_steps: list = field(default_factory=list)
    per_start: list = field(default_factory=list)  # (graph, TreeDecomposition)


def local_step(h: Graph, s: Iterable[int], p: Params, recorder: Optional[Recorder] = None) -> frozenset[int]:
    """Grow the boundary s of a connected k-complemented graph h.

    Adds the extreme minimum separators between all nonadjacent boundary
    pairs (small boundaries) or between all disjoint (k+1)-subsets of the
    boundary with connectivity at most k (large boundaries).  The result X
    is a proper superset of s, has at most zeta vertices, and every
    component of h minus X sees at most rho vertices.

    Raises TooWideError when a large boundary cannot be grown (treewidth is
    then at least k), BudgetExceededError when the pair enumeration would
    be too large, and ValueError on contract violations.
    """
    s = frozenset(s)
    verts = frozenset(h.vertices())
    for v in s:
        h.check_vertex(v)
    if not h.is_connected():
        raise ValueError("local_step requires a connected graph")
    if not s or s == verts:
        raise ValueError("boundary must be a nonempty proper subset")
    if len(s) > p.rho:
        raise ValueError(f"boundary has {len(s)} vertices, limit is rho={p.rho}")
    if is_clique(h, s):
        raise ValueError("boundary must not induce a clique")
    inner = induced_components(h, verts - s)
    if len(inner) != 1:
        raise ValueError("graph minus boundary must be connected")
    opened, _ = neighborhood(h, inner[0])
    if opened != s:
        raise ValueError("boundary must equal the neighborhood of the interior")

    x = set(s)
    if len(s) <= p.tau:
        for a, b in combinations(sorted(s), 2):
            if h.has_edge(a, b):
                continue
            res = min_separation_pair(h, a, b, cap=p.k)
            if isinstance(res, AtLeastCap):
                raise ValueError(
                    f"graph is not {p.k}-complemented: conn({a},{b}) >= {p.k}"
                )
            x |= res.pushed_x.separator
            x |= res.pushed_y.separator
    else:
        planned = comb(len(s), p.k + 1) ** 2
        if planned > p.pair_budget:
            raise BudgetExceededError(planned, p.pair_budget)
        tuples = list(combinations(sorted(s), p.k + 1))
        for i, left in enumerate(tuples):
            lset = frozenset(left)
            for right in tuples[i + 1 :]:
                rset = frozenset(right)
                if lset & rset:
                    continue
                res = min_separation_sets(h, lset, rset, cap=p.k + 1)
                if isinstance(res, MinSeparation):
                    x |= res.pushed_x.separator
                    x |= res.pushed_y.separator
        if x == s:
            raise TooWideError(p.k, "no stable separator grows the boundary")

    x = frozenset(x)
    assert s < x, "boundary growth failed"
    assert len(x) <= p.zeta
    for comp in induced_components(h, verts - x):
        boundary, _ = neighborhood(h, comp)
        assert len(boundary) <= p.rho
        if len(s) > p.tau:
            assert len(boundary) <= len(s)
    if recorder is not None:
        recorder.local_steps.append(LocalStepEvent(h, s, x))
    return x


@dataclass(frozen=True)
class BagsResult:
    family: frozenset[frozenset[int]]
    per_start: tuple[TreeDecomposition, ...]


def _potential(live_size: int, bag_size: int, p: Params) -> int:
    return (live_size + 1) * (p.zeta + 1) - bag_size


def bags_no_cliqueseps(g: Graph, p: Params, recorder: Optional[Recorder] = None) -> BagsResult:
    """Candidate bags of a connected, clique-separator-free, k-complemented
    graph: the union, over every vertex of degree below k, of the bags of
    the recursive decomposition started at that vertex.

    An empty family is a verified claim that treewidth is at least k.
    per_start holds one decomposition per start vertex, for inspection.
    """
    if not g.is_connected():
        raise ValueError("bags_no_cliqueseps requires a connected graph")
    verts = frozenset(g.vertices())
    if is_clique(g, verts):
        fam = frozenset([verts]) if g.n <= p.k else frozenset()
        return BagsResult(fam, ())
    starts = [u for u in g.vertices() if g.degree(u) < p.k]
    if not starts:
        return BagsResult(frozenset(), ())

    # the expansion is a pure function of (live, bag): share it across starts
    memo: dict[tuple[frozenset[int], frozenset[int]], tuple] = {}

    def expand(live: frozenset[int], bag: frozenset[int], caller_pot) -> tuple:
        pot = _potential(len(live), len(bag), p)
        assert pot < caller_pot, "decomposition recursion failed to progress"
        key = (live, bag)
        hit = memo.get(key)
        if hit is not None:
            return hit
        assert len(bag) <= p.zeta and bag <= live
        children = []
        for comp in induced_components(g, live - bag):
            boundary, closed = neighborhood(g, comp)
            assert boundary <= bag
            assert len(boundary) <= p.rho
            h, vmap = g.induced(closed)
            to_local = {v: i for i, v in enumerate(vmap)}
            grown_local = local_step(h, {to_local[v] for v in boundary}, p, recorder)
            grown = frozenset(vmap[i] for i in grown_local)
            children.append(expand(closed, grown, pot))
        node = (bag, tuple(children))
        memo[key] = node
        return node

    try:
        top_pot = _potential(g.n, 0, p) + 1
        roots = []
        for u in starts:
            _, closed = neighborhood(g, {u})
            roots.append(expand(verts, closed, top_pot))
    except TooWideError:
        return BagsResult(frozenset(), ())

    per_start = []
    family: set[frozenset[int]] = set()
    for root in roots:
        td = _flatten(root)
        per_start.append(td)
        family.update(td.bags)
        if recorder is not None:
            recorder.per_start.append((g, td))
    return BagsResult(frozenset(family), tuple(per_start))


def _flatten(root: tuple) -> TreeDecomposition:
    parent: list[Optional[int]] = []
    bags: list[frozenset[int]] = []
    stack = [(root, None)]
    while stack:
        (bag, children), par = stack.pop()
        idx = len(bags)
        parent.append(par)
        bags.append(bag)
        for child in reversed(children):
            stack.append((child, idx))
    return TreeDecomposition(tuple(parent), tuple(bags))


def bags_with_atoms(g: Graph, p: Params, recorder: Optional[Recorder] = None) -> frozenset[frozenset[int]]:
    """Candidate bags of a connected k-complemented graph: union of the
    per-atom families.  Empty when some adhesion exceeds k vertices (it is
    a clique, so treewidth is at least k) or when an atom proves too wide.
    """
    if not g.is_connected():
        raise ValueError("bags_with_atoms requires a connected graph")
    dec = atom_decomposition(g)
    if any(adh is not None and len(adh) > p.k for adh in dec.adhesions):
        return frozenset()
    family: set[frozenset[int]] = set()
    for bag in dec.bags:
        sub, vmap = g.induced(bag)
        res = bags_no_cliqueseps(sub, p, recorder)
        family.update(
            frozenset(vmap[i] for i in b) for b in res.family
        )
    return frozenset(family)


class ReducedBagFamily:
    """Implicit subset closure of a base family, capped at cap vertices.

    member(X) holds exactly when |X| <= cap and X is contained in some base
    bag; the closure is never materialized.
    """

    def __init__(self, base: Iterable[frozenset[int]], cap: int):
        self.base = tuple(
            sorted({frozenset(b) for b in base}, key=lambda b: (len(b), sorted(b)))
        )
        self.cap = cap
        index: dict[int, list[int]] = {}
        for idx, bag in enumerate(self.base):
            for v in bag:
                index.setdefault(v, []).append(idx)
        self.superset_index = {v: tuple(ids) for v, ids in index.items()}

    def member(self, xs: Iterable[int]) -> bool:
        x = frozenset(xs)
        if len(x) > self.cap:
            return False
        if not x:
            return bool(self.base)
        candidates = self.superset_index.get(min(x))
        if candidates is None:
            return False
        return any(x <= self.base[i] for i in candidates)

    def __repr__(self):
        return f"ReducedBagFamily({len(self.base)} base bags, cap={self.cap})"


def reduced_family(g: Graph, p: Params, recorder: Optional[Recorder] = None) -> ReducedBagFamily:
    """The subset-closed candidate family used by the canonizer."""
    return ReducedBagFamily(bags_with_atoms(g, p, recorder), cap=p.k_prime)
