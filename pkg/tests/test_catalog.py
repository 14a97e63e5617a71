import itertools

import numpy as np
from hypothesis import given, strategies as st

from conftest import graphs, posets
from width2lab import catalog
from width2lab.structures import Bichain, Graph, LabelledStructure, Poset, embeds, width


def test_graph_counts():
    assert [len(catalog.graphs(n)) for n in range(7)] == [1, 1, 2, 4, 11, 34, 156]


def test_poset_counts():
    assert [len(catalog.posets(n)) for n in range(7)] == [1, 1, 2, 5, 16, 63, 318]


def test_321_avoider_counts_are_catalan():
    assert [len(catalog.avoiders_321(n)) for n in range(1, 9)] == \
        [1, 2, 5, 14, 42, 132, 429, 1430]


def test_avoiders_match_brute_force():
    for n in range(1, 7):
        brute = [p for p in itertools.permutations(range(n))
                 if not any(p[i] > p[j] > p[k] for i, j, k in itertools.combinations(range(n), 3))]
        assert list(catalog.avoiders_321(n)) == sorted(brute)


def test_width2_posets_are_exactly_width_two():
    for n in range(1, 7):
        expect = {catalog.canonical_key(P) for P in catalog.posets(n) if width(P) <= 2}
        got = {catalog.canonical_key(P) for P in catalog.width2_posets(n)}
        assert got == expect


def test_bp_graphs_are_inc_images():
    for G in catalog.bp_graphs(6):
        assert not any(G.adj[a, b] and G.adj[b, c] and G.adj[a, c]
                       for a, b, c in itertools.combinations(range(6), 3))


def _brute_key(G):
    return min(G.adj[np.ix_(p, p)].tobytes() for p in itertools.permutations(range(G.n)))


@given(graphs(max_n=6), st.randoms(use_true_random=False))
def test_canonical_key_invariant(G, rnd):
    perm = list(range(G.n))
    rnd.shuffle(perm)
    H = Graph(G.adj[np.ix_(perm, perm)])
    assert catalog.canonical_key(G) == catalog.canonical_key(H)
    assert catalog.canonical_form(G) == catalog.canonical_form(H)


def test_canonical_key_separates_classes():
    # equal keys iff equal brute-force minimal encodings
    pool = list(catalog.graphs(5))
    assert len({catalog.canonical_key(G) for G in pool}) == len(pool)
    assert len({_brute_key(G) for G in pool}) == len(pool)


@given(posets(max_n=6))
def test_isomorphic_agrees_with_embedding(P):
    Q = catalog.canonical_form(P)
    assert catalog.is_isomorphic(P, Q)
    assert embeds(P, Q) is not None and embeds(Q, P) is not None


def test_labelled_keys_respect_labels():
    base = Graph.from_edges(3, [(0, 1), (1, 2)])
    A = LabelledStructure.with_constants(base, [0])
    B = LabelledStructure.with_constants(base, [2])
    C = LabelledStructure.with_constants(base, [1])
    assert catalog.canonical_key(A) == catalog.canonical_key(B)
    assert catalog.canonical_key(A) != catalog.canonical_key(C)


def test_dedupe_is_deterministic():
    items = [Poset.chain(3), Poset.antichain(3), Poset.chain(3)]
    assert catalog.dedupe(items) == catalog.dedupe(list(reversed(items)))
    assert len(catalog.dedupe(items)) == 2


def test_dimension_two_posets_up_to_five():
    # the smallest poset of dimension three has six elements
    for n in range(1, 6):
        assert len(catalog.dimension2_posets(n)) == len(catalog.posets(n))


def test_bichain_key_is_sigma():
    assert catalog.canonical_key(Bichain([1, 0])) != catalog.canonical_key(Bichain([0, 1]))
