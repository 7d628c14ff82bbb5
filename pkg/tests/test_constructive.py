import itertools

import pytest
from hypothesis import given, settings

import oracles
from conftest import complete, digraphs, directed_cycle
from dipaths import certificates as certs
from dipaths.constructive import (
    ConstructionError,
    DirectedMatching,
    GreedyDicoloring,
    HallViolator,
    NotMinimumDicoloring,
    directed_matching_cover,
    forward_arc_subdigraph,
    good_path_partition,
    greedy_dicoloring,
    linial_dual_certificate,
    linial_primal_certificate,
    orthogonal_partition_to_mas,
    orthogonal_path,
)
from dipaths.digraph import Digraph, is_acyclic
from dipaths.generators import all_digraphs, gnp_digraph
from dipaths.solvers import all_max_induced_acyclic, iter_min_partitions, min_dicoloring

DAG4 = Digraph(4, frozenset({(0, 1), (1, 2), (0, 3)}))


# ---------------------------------------------------------------- matchings


def test_matching_triangle(triangle):
    m = directed_matching_cover(triangle, {0, 1}, {2})
    assert isinstance(m, DirectedMatching)
    assert m.arcs == {(1, 2)}


def test_matching_empty_side2(c5):
    m = directed_matching_cover(c5, {0, 1}, set())
    assert isinstance(m, DirectedMatching) and not m.arcs


def test_hall_violator_isolated_vertices():
    res = directed_matching_cover(Digraph(2, frozenset()), {0}, {1})
    assert isinstance(res, HallViolator)
    assert res.S == {1} and res.neighborhood == frozenset() and res.improved == {0, 1}


def test_matching_uses_only_forward_arcs():
    # the only arc runs from side 2 to side 1
    res = directed_matching_cover(Digraph(2, frozenset({(1, 0)})), {0}, {1})
    assert isinstance(res, HallViolator)


def test_matching_preconditions(triangle, digon):
    with pytest.raises(ValueError):
        directed_matching_cover(triangle, {0, 1}, {1, 2})
    with pytest.raises(ValueError):
        directed_matching_cover(digon, {0, 1}, set())


def _acyclic_subsets(D, within):
    within = sorted(within)
    for r in range(len(within) + 1):
        for S in itertools.combinations(within, r):
            if is_acyclic(D, S):
                yield frozenset(S)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_matching_both_branches_exhaustive(n):
    for D in all_digraphs(n):
        top = max(len(S) for S in _acyclic_subsets(D, range(n)))
        for T1 in _acyclic_subsets(D, range(n)):
            for T2 in _acyclic_subsets(D, set(range(n)) - T1):
                res = directed_matching_cover(D, T1, T2)
                if isinstance(res, DirectedMatching):
                    assert res.covers_side2
                    assert all((u, v) in D.arcs and u in T1 and v in T2 for u, v in res.arcs)
                else:
                    assert len(T1) < top
                    assert len(res.S) > len(res.neighborhood)
                    assert len(res.improved) > len(T1)
                    assert is_acyclic(D, res.improved)
                    assert not oracles.has_cycle(D, res.improved)


# ---------------------------------------------------------------- greedy


def test_greedy_examples(triangle, bidirected_k3):
    assert greedy_dicoloring(DAG4).classes == (frozenset(range(4)),)
    assert greedy_dicoloring(triangle).classes == (frozenset({0, 1}), frozenset({2}))
    assert greedy_dicoloring(bidirected_k3).classes == tuple(frozenset({v}) for v in range(3))


def test_greedy_seed_must_be_maximum(triangle):
    assert greedy_dicoloring(triangle, first={1, 2}).classes[0] == {1, 2}
    with pytest.raises(ValueError):
        greedy_dicoloring(triangle, first={0})
    with pytest.raises(ValueError):
        greedy_dicoloring(triangle, first={0, 1, 2})


@given(digraphs(max_n=7))
def test_greedy_invariants(D):
    G = greedy_dicoloring(D)
    sizes = G.sizes()
    assert sizes == sorted(sizes, reverse=True)
    assert certs.check_greedy_dicoloring(D, [sorted(c) for c in G.classes])


# ---------------------------------------------------------------- good path partitions


def test_good_partition_examples(triangle, bidirected_k3):
    assert set(good_path_partition(triangle, greedy_dicoloring(triangle)).paths) == {(1, 2), (0,)}
    assert good_path_partition(DAG4, greedy_dicoloring(DAG4)).paths == ((0,), (1,), (2,), (3,))
    assert good_path_partition(bidirected_k3, greedy_dicoloring(bidirected_k3)).paths == ((0, 1, 2),)


def test_good_partition_rejects_non_greedy_input():
    D = Digraph(2, frozenset())
    with pytest.raises(ConstructionError):
        good_path_partition(D, GreedyDicoloring((frozenset({0}), frozenset({1}))))


@settings(max_examples=200, deadline=None)
@given(digraphs(max_n=7))
def test_good_partition_verifies_and_stage_counts(D):
    G = greedy_dicoloring(D)
    good = good_path_partition(D, G)
    assert certs.check_good_path_partition(D, [sorted(c) for c in G.classes], [list(p) for p in good.paths])
    if G.classes:
        assert certs.check_orthogonal(good.paths, G.classes[0])
    for i, m in enumerate(good.matchings):
        assert len(m.arcs) == len(G.classes[i + 1])
    for i, cls in enumerate(G.classes):
        assert sum(1 for p in good.paths if len(p) > i) == len(cls)


# ---------------------------------------------------------------- orthogonal witnesses


def test_orthogonal_partition_examples(triangle, c5):
    T, paths = orthogonal_partition_to_mas(DAG4)
    assert T == set(range(4)) and all(len(p) == 1 for p in paths)
    assert orthogonal_partition_to_mas(triangle)[0] == {0, 1}
    assert set(orthogonal_partition_to_mas(triangle)[1]) == {(1, 2), (0,)}
    T, paths = orthogonal_partition_to_mas(c5)
    assert len(T) == 4
    assert certs.check_path_partition(c5, paths) and certs.check_orthogonal(paths, T)


def test_orthogonal_partition_every_maximum_set_n6():
    for seed in range(30):
        D = gnp_digraph(6, 0.5, seed)
        for T in all_max_induced_acyclic(D):
            T2, paths = orthogonal_partition_to_mas(D, T)
            assert T2 == T
            assert certs.check_path_partition(D, paths)
            assert certs.check_orthogonal(paths, T)


def test_orthogonal_path_examples(bidirected_k3, c5):
    assert orthogonal_path(bidirected_k3, [{0}, {1}, {2}]) == (0, 1, 2)
    assert len(orthogonal_path(DAG4, [set(range(4))])) == 1
    assert orthogonal_path(c5, [{0, 1, 2, 3}, {4}]) == (3, 4)


def test_forward_subdigraph(c5):
    assert forward_arc_subdigraph(c5, [{0, 1, 2, 3}, {4}]).arcs == {(3, 4)}
    with pytest.raises(ValueError):
        forward_arc_subdigraph(c5, [{0, 1}, {2}])


def test_orthogonal_path_non_minimum_diagnostic(c5):
    with pytest.raises(NotMinimumDicoloring) as err:
        orthogonal_path(c5, [{0, 1}, {2, 3}, {4}])
    smaller = err.value.smaller
    assert len(smaller) < 3
    assert certs.check_dicoloring(c5, [sorted(c) for c in smaller])


def test_orthogonal_path_rejects_non_dicoloring(triangle):
    with pytest.raises(ValueError):
        orthogonal_path(triangle, [{0, 1, 2}])


def test_orthogonal_path_exhaustive_n4():
    for n in range(1, 5):
        for D in all_digraphs(n):
            t = len(min_dicoloring(D))
            for classes in iter_min_partitions(D, "acyclic"):
                assert is_acyclic(forward_arc_subdigraph(D, classes))
                path = orthogonal_path(D, classes)
                assert len(path) == t
                assert certs.check_orthogonal(classes, path)


@settings(max_examples=60, deadline=None)
@given(digraphs(min_n=5, max_n=8))
def test_orthogonal_path_random(D):
    classes = min_dicoloring(D)
    path = orthogonal_path(D, classes)
    assert len(path) == len(classes)
    assert [next(i for i, c in enumerate(classes) if v in c) for v in path] == list(range(len(classes)))


# ---------------------------------------------------------------- Linial chains


def test_primal_chain_triangle(triangle):
    chain = linial_primal_certificate(triangle, 1)
    assert (chain.pi_k.value, chain.norm, chain.union_k, chain.alpha_prime_k.value) == (1, 2, 2, 2)
    assert chain.violations() == []


def test_primal_chain_bidirected_k3(bidirected_k3):
    chain = linial_primal_certificate(bidirected_k3, 2)
    assert chain.union_k == 2 == chain.norm
    assert chain.pi_k.value <= 2 <= chain.alpha_prime_k.value
    assert chain.long_paths == chain.size_s_k == 1
    assert chain.violations() == []


def test_primal_chain_t_at_most_k(triangle):
    chain = linial_primal_certificate(triangle, 2)
    assert chain.alpha_prime_k.value == 3 and chain.long_paths is None
    assert chain.violations() == []


def test_dual_chain_examples(bidirected_k3, triangle):
    chain = linial_dual_certificate(bidirected_k3, 1)
    assert chain.chi_prime_k.value == 3 == chain.lambda_k.value
    assert chain.j is None
    assert chain.violations() == []
    chain = linial_dual_certificate(triangle, 1)
    assert (chain.chi_prime_k.value, chain.lambda_k.value) == (2, 3)
    assert chain.violations() == []


def test_dual_chain_few_paths(bidirected_k3):
    chain = linial_dual_certificate(bidirected_k3, 2)
    assert chain.j is None and chain.lambda_k.value == 3
    assert chain.violations() == []


def test_dual_chain_j_can_exceed_k():
    # four disjoint digons: classes of size 4 then 4, so j = 2 > k = 1
    D = Digraph(8, frozenset(a for i in range(0, 8, 2) for a in ((i, i + 1), (i + 1, i))))
    chain = linial_dual_certificate(D, 1)
    assert chain.good.greedy.sizes() == [4, 4]
    assert chain.j == 2
    assert chain.violations() == []


@settings(max_examples=80, deadline=None)
@given(digraphs(max_n=7))
def test_chains_hold(D):
    good = good_path_partition(D, greedy_dicoloring(D))
    for k in range(1, D.n + 1):
        assert linial_primal_certificate(D, k, good=good).violations() == []
        assert linial_dual_certificate(D, k, good=good).violations() == []
