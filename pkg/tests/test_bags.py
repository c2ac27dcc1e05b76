import random
from math import comb

import pytest

from twcanon.bags import (
    Params,
    Recorder,
    ReducedBagFamily,
    bags_no_cliqueseps,
    bags_with_atoms,
    local_step,
    reduced_family,
)
from twcanon.decomposition import validate
from twcanon.errors import BudgetExceededError, TooWideError
from twcanon.graph import Graph, induced_components, neighborhood
from twcanon.improved import improve

from conftest import (
    complete_graph,
    cycle_graph,
    path_graph,
    random_connected_graph,
    random_permutation,
)


def test_params_defaults():
    p = Params.for_k(2)
    assert (p.tau, p.rho) == (12, 144)
    assert p.zeta == 144 + 4 * comb(144, 3) ** 2
    assert p.k_prime == 3 * 144
    assert not p.non_canonical
    p3 = Params.for_k(3)
    assert (p3.tau, p3.rho, p3.k_prime) == (18, 630, 4 * 630)


def test_params_override():
    p = Params.for_k(2).override(rho=20)
    assert p.non_canonical
    assert p.k_prime == 60
    q = Params.for_k(2).override(pair_budget=10)
    assert not q.non_canonical
    with pytest.raises(ValueError):
        Params.for_k(2).override(k_prime=5)


def test_local_step_path_small_case():
    h = path_graph(3)
    p = Params.for_k(3)
    x = local_step(h, {0, 2}, p)
    assert x == frozenset({0, 1, 2})


def test_local_step_contract_checks():
    p = Params.for_k(3)
    with pytest.raises(ValueError):
        local_step(cycle_graph(4), {0, 2}, p)  # interior disconnected
    with pytest.raises(ValueError):
        local_step(path_graph(3), set(), p)
    with pytest.raises(ValueError):
        local_step(path_graph(3), {0, 1, 2}, p)
    with pytest.raises(ValueError):
        local_step(path_graph(3), {0}, p)  # boundary is a clique
    with pytest.raises(ValueError):
        local_step(path_graph(4), {0}, p)  # clique, and N(interior) != {0}
    with pytest.raises(ValueError):
        local_step(Graph(3, [(0, 1)]), {0}, p)  # disconnected graph


def test_local_step_properties_random():
    rng = random.Random(71)
    p2 = Params.for_k(2)
    checked = 0
    while checked < 40:
        n = rng.randint(4, 9)
        g = random_connected_graph(rng, n, rng.uniform(0.25, 0.6))
        k = rng.randint(2, 3)
        p = Params.for_k(k)
        try:
            h = improve(g, k)
        except TooWideError:
            continue
        # pick a boundary: neighborhood of a connected interior
        v = rng.randrange(n)
        interior = max(induced_components(h, {v} | h.adj[v]), key=len, default=None)
        if not interior:
            continue
        s, _ = neighborhood(h, interior)
        live = interior | s
        if live != frozenset(h.vertices()):
            sub, vmap = h.induced(live)
            inv = {v: i for i, v in enumerate(vmap)}
            h_local, s_local = sub, frozenset(inv[u] for u in s)
        else:
            h_local, s_local = h, s
        from twcanon.graph import is_clique

        if not s_local or is_clique(h_local, s_local):
            continue
        x = local_step(h_local, s_local, p)
        assert s_local < x
        assert len(x) <= p.zeta
        for comp in induced_components(h_local, frozenset(h_local.vertices()) - x):
            boundary, _ = neighborhood(h_local, comp)
            assert len(boundary) <= p.rho
        checked += 1


def test_local_step_budget():
    # star with three leaves: boundary = leaves, interior = center;
    # a tiny tau forces the subset-pair case, a tiny budget aborts it
    h = Graph(4, [(3, 0), (3, 1), (3, 2)])
    p = Params.for_k(1).override(tau=1, pair_budget=1)
    with pytest.raises(BudgetExceededError) as exc:
        local_step(h, {0, 1, 2}, p)
    assert exc.value.pairs_needed == comb(3, 2) ** 2


def test_bags_no_cliqueseps_clique_cases():
    p = Params.for_k(2)
    res = bags_no_cliqueseps(complete_graph(2), p)
    assert res.family == frozenset({frozenset({0, 1})})
    res3 = bags_no_cliqueseps(complete_graph(3), p)
    assert res3.family == frozenset()


def test_bags_no_cliqueseps_rejects_clique_separators():
    # P4 has clique separators, so the recursion must hit the boundary
    # contract of local_step; a clique-separator-free input is required
    p = Params.for_k(2)
    with pytest.raises(ValueError):
        bags_no_cliqueseps(path_graph(4), p)


def test_path4_family_via_atoms():
    p = Params.for_k(2)
    g = path_graph(4)
    fam = bags_with_atoms(g, p)
    assert fam == frozenset(
        {frozenset({0, 1}), frozenset({1, 2}), frozenset({2, 3})}
    )


def test_bags_no_cliqueseps_c4():
    p = Params.for_k(3)
    g = cycle_graph(4)
    res = bags_no_cliqueseps(g, p)
    # every start vertex contributes its closed neighborhood
    for u in range(4):
        assert frozenset({u} | g.adj[u]) in res.family
    for td in res.per_start:
        assert validate(g, td).ok


def test_bags_with_atoms_examples():
    p = Params.for_k(3)
    # K5: one atom, clique larger than k
    assert bags_with_atoms(complete_graph(5), p) == frozenset()
    # two triangles sharing an edge
    g = Graph(4, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)])
    fam = bags_with_atoms(g, p)
    assert fam == frozenset({frozenset({0, 1, 2}), frozenset({0, 1, 3})})
    with pytest.raises(ValueError):
        bags_with_atoms(Graph(3, [(0, 1)]), p)


def test_bags_with_atoms_adhesion_guard():
    # adhesions larger than k force an empty family
    p = Params.for_k(1)
    g = Graph(4, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)])
    assert bags_with_atoms(g, p) == frozenset()


def test_family_permutation_invariance():
    rng = random.Random(83)
    for _ in range(25):
        k = rng.randint(2, 3)
        n = rng.randint(4, 10)
        g = random_connected_graph(rng, n, rng.uniform(0.2, 0.5))
        try:
            h = improve(g, k)
        except TooWideError:
            continue
        p = Params.for_k(k)
        fam = bags_with_atoms(h, p)
        perm = random_permutation(rng, n)
        fam_perm = bags_with_atoms(h.permuted(perm), p)
        mapped = frozenset(frozenset(perm[v] for v in bag) for bag in fam)
        assert fam_perm == mapped


def test_recorder_collects_events():
    rec = Recorder()
    p = Params.for_k(3)
    g = cycle_graph(4)  # already 3-complemented and clique-separator free
    res = bags_no_cliqueseps(g, p, rec)
    assert res.family
    assert len(rec.per_start) == 4
    assert rec.local_steps
    for event in rec.local_steps:
        assert event.boundary < event.grown


def test_reduced_family_membership():
    fam = ReducedBagFamily([frozenset({1, 2, 3})], cap=2)
    assert fam.member({1, 3})
    assert not fam.member({1, 2, 3})  # size cap
    assert fam.member(set())
    assert not fam.member({4})
    empty = ReducedBagFamily([], cap=2)
    assert not empty.member(set())


def test_reduced_family_from_graph():
    p = Params.for_k(2)
    fam = reduced_family(complete_graph(2), p)
    assert fam.cap == p.k_prime
    assert fam.member({0}) and fam.member({0, 1})
