import itertools

import numpy as np
import pytest
from hypothesis import given

from conftest import bichains, posets
from width2lab import catalog
from width2lab.decomposition import (chain_module_quotient, embedding_equivalence_audit,
                                     is_chain, is_prime, is_prime_brute,
                                     is_uniquely_realizable, module_masks, modules_of,
                                     orientation_audit, prime_bipartite_check,
                                     realizability_report, strong_module_audit)
from width2lab.families import half_graph, path_graph
from width2lab.structures import (Bichain, Graph, Poset, StructureError, comp, cycle_graph,
                                  dual, inc, is_bipartite, o, poset_from_relations,
                                  realizers, transitive_orientations, width)


def _is_module_brute(S, M):
    code = S.relation_code()
    out = [v for v in range(S.n) if v not in M]
    return all(code[a, v] == code[b, v] and code[v, a] == code[v, b]
               for a in M for b in M for v in out)


@given(posets(min_n=1, max_n=6))
def test_module_list_matches_brute_force(P):
    got = {frozenset(v for v in range(P.n) if m >> v & 1) for m in module_masks(P)}
    want = {frozenset(S) for r in range(1, P.n + 1)
            for S in itertools.combinations(range(P.n), r) if _is_module_brute(P, S)}
    assert got == want


@given(bichains(min_n=1, max_n=6))
def test_bichain_modules_are_common_intervals(B):
    got = {frozenset(v for v in range(B.n) if m >> v & 1) for m in module_masks(B)}
    pos2 = B.sigma
    want = set()
    for i in range(B.n):
        for j in range(i, B.n):
            vals = sorted(pos2[i:j + 1])
            if vals[-1] - vals[0] == j - i:
                want.add(frozenset(range(i, j + 1)))
    assert got == want


@given(posets(min_n=1, max_n=7))
def test_family_invariants(P):
    fam = modules_of(P)
    for M, N in itertools.combinations(fam.strong, 2):
        assert M <= N or N <= M or not M & N
    if P.n >= 2:
        assert sorted(v for c in fam.components for v in c) == list(range(P.n))
    for v in range(P.n):
        assert frozenset([v]) in fam.strong


def test_primality_small_cases(n_poset):
    assert is_prime(Poset.chain(2))
    assert not is_prime(Poset.chain(3))
    assert is_prime(n_poset)
    assert is_prime_brute(n_poset)


def test_chain_quotient(n_poset):
    cq = chain_module_quotient(Poset.chain(5))
    assert len(cq.classes) == 1 and cq.quotient.n == 1
    cq = chain_module_quotient(n_poset)
    assert len(cq.classes) == 4 and cq.quotient == n_poset
    # a 3-chain substituted for element 0 of N
    rel = [(0, 1), (1, 2), (2, 4), (3, 4), (3, 5)]
    P = poset_from_relations(rel, 6)
    cq = chain_module_quotient(P)
    assert frozenset({0, 1, 2}) in cq.classes
    assert cq.lex_sum_ok and cq.quotient_chain_free
    assert catalog.is_isomorphic(cq.quotient, n_poset)


@given(posets(min_n=1, max_n=7))
def test_chain_quotient_reconstructs(P):
    cq = chain_module_quotient(P)
    assert cq.lex_sum_ok and cq.quotient_chain_free


def test_overlapping_chain_modules_merge():
    for n in range(1, 7):
        for P in catalog.posets(n):
            chains = [frozenset(v for v in range(n) if m >> v & 1) for m in module_masks(P)]
            chains = [M for M in chains if is_chain(P, M)]
            for M, N in itertools.combinations(chains, 2):
                if M & N and not M <= N and not N <= M:
                    U = M | N
                    assert _is_module_brute(P, U) and is_chain(P, U)


def test_module_with_maximal_antichain_disconnects():
    for n in range(1, 8):
        for P in catalog.posets(n):
            w = width(P)
            for m in module_masks(P):
                M = [v for v in range(n) if m >> v & 1]
                if len(M) == n:
                    continue
                sub = P.leq[np.ix_(M, M)]
                # does M contain an antichain of maximum size?
                has = any(not (sub[np.ix_(S, S)] | sub[np.ix_(S, S)].T)[~np.eye(w, dtype=bool)].any()
                          for S in itertools.combinations(range(len(M)), w)) if len(M) >= w else False
                if has and w >= 2:
                    assert not inc(P).is_connected()


def test_connected_width2_modules_are_chains():
    for n in range(1, 9):
        for P in catalog.connected_width2_posets(n):
            assert all(is_chain(P, M) for M in modules_of(P).modules)


def test_strong_modules_match_comparability_graph(n_poset):
    assert strong_module_audit(Poset.chain(4)).ok
    assert strong_module_audit(n_poset).ok
    for n in range(1, 7):
        for P in catalog.posets(n):
            assert strong_module_audit(P).ok


def test_orientations(n_poset):
    assert transitive_orientations(Graph.from_edges(3, [])) == [Poset.antichain(3)]
    assert set(transitive_orientations(comp(n_poset))) == {n_poset, dual(n_poset)}
    assert transitive_orientations(cycle_graph(5)) == []
    assert orientation_audit(comp(n_poset)).ok


def test_prime_bipartite():
    assert prime_bipartite_check(path_graph(4))
    assert not prime_bipartite_check(cycle_graph(4))
    assert prime_bipartite_check(half_graph(4))
    with pytest.raises(StructureError):
        prime_bipartite_check(cycle_graph(3))
    for n in range(1, 9):
        for G in catalog.graphs(n):
            if is_bipartite(G):
                assert prime_bipartite_check(G) == is_prime(G)


def test_unique_realizability(n_poset):
    assert is_uniquely_realizable(n_poset)
    assert is_uniquely_realizable(Poset.chain(4))
    assert is_uniquely_realizable(Poset.antichain(2))
    # two 2-antichains, side by side and stacked
    assert not is_uniquely_realizable(Poset.antichain(4))
    stacked = poset_from_relations([(0, 2), (0, 3), (1, 2), (1, 3)], 4)
    assert not is_uniquely_realizable(stacked)
    assert not is_uniquely_realizable(stacked, method="oracle")
    with pytest.raises(StructureError, match="dimension exceeds two"):
        rel = [(i, 3 + j) for i in range(3) for j in range(3) if i != j]
        is_uniquely_realizable(poset_from_relations(rel, 6))
    with pytest.raises(ValueError):
        is_uniquely_realizable(n_poset, method="guess")


def test_unique_realizability_exhaustive_up_to_six():
    for n in range(1, 7):
        for P in catalog.dimension2_posets(n):
            assert realizability_report(P).agree


def test_realizers_restrict_to_lex_sum_components():
    # chains substituted into the elements of a 2-dimensional index poset
    for k in range(1, 5):
        for index in catalog.dimension2_posets(k):
            for sizes in itertools.product((1, 2), repeat=k):
                if sum(sizes) > 6:
                    continue
                owner = [i for i, s in enumerate(sizes) for _ in range(s)]
                n = len(owner)
                leq = np.array([[owner[u] == owner[v] and u <= v or
                                 owner[u] != owner[v] and index.leq[owner[u], owner[v]]
                                 for v in range(n)] for u in range(n)])
                P = Poset(leq)
                for L1, L2 in realizers(P):
                    for L in (L1, L2):
                        seen = []
                        for v in L:
                            if owner[v] not in seen:
                                seen.append(owner[v])
                        r = {x: i for i, x in enumerate(seen)}
                        assert all(r[a] <= r[b] for a in range(k) for b in range(k)
                                   if index.leq[a, b])
                        for part in range(k):
                            block = [L.index(v) for v in range(n) if owner[v] == part]
                            assert block == sorted(block)


def test_embedding_equivalence_posets_and_graphs():
    pool = [P for n in range(1, 6) for P in catalog.posets(n)]
    primes = [P for P in pool if is_prime(P)]
    for P in primes:
        for Q in pool:
            if Q.n >= P.n:
                assert embedding_equivalence_audit("poset-graph", P, Q).ok
    assert embedding_equivalence_audit("poset-graph", Poset.chain(3), Poset.chain(3)).ok


def test_embedding_equivalence_bichains():
    pool = [P for n in range(1, 5) for P in catalog.dimension2_posets(n)]
    for P in pool:
        for Q in pool:
            assert embedding_equivalence_audit("bichain-poset", P, Q).ok


def test_prime_transfer_up_to_five():
    for n in range(1, 6):
        for p in itertools.permutations(range(n)):
            B = Bichain(p)
            assert is_prime(B) == is_prime(o(B))


def test_unknown_audit_kind():
    with pytest.raises(StructureError):
        embedding_equivalence_audit("nope", Poset.chain(1))
