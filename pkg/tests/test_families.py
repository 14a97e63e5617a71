import itertools

import pytest

from width2lab import catalog
from width2lab.families import (FAMILY_TAGS, b2_sigma, bichain_B1, bichain_B2, comb,
                                direct_sum, double_fork, family, fork_orientation,
                                half_graph, kite_truncation, path_graph, poset_P1,
                                poset_P2, self_test, sturmian_orientation)
from width2lab.metrics import longest_double_fork
from width2lab.structures import (StructureError, embeds, has_triangle, inc,
                                  is_bipartite, o, width)


def test_small_fork_shape():
    G = double_fork(2)
    assert G.n == 6
    assert sorted(G.degrees.tolist(), reverse=True) == [3, 3, 1, 1, 1, 1]


def test_fork_needs_two():
    with pytest.raises(StructureError):
        double_fork(1)


@pytest.mark.parametrize("n", range(2, 7))
def test_fork_orientation(n):
    P = fork_orientation(n)
    assert catalog.is_isomorphic(inc(P), double_fork(n))
    assert width(P) == 2 and inc(P).is_connected()


def test_fork_antichain():
    for i, j in itertools.permutations(range(2, 9), 2):
        assert embeds(double_fork(i), double_fork(j)) is None


def test_half_graph_and_paths():
    assert half_graph(1).edges() == [(0, 1)]
    assert catalog.is_isomorphic(inc(poset_P2(7)), path_graph(7))
    with pytest.raises(StructureError):
        half_graph(0)


def test_b2_prefix():
    assert [b2_sigma(x) for x in range(8)] == [1, 3, 0, 5, 2, 7, 4, 9]
    # second order begins 2, 0, 4, 1
    ranks = sorted(range(5), key=b2_sigma)
    assert ranks[:4] == [2, 0, 4, 1]
    assert bichain_B2(8).sigma == (1, 3, 0, 5, 2, 7, 4, 6)
    assert o(bichain_B2(8)) == poset_P2(8)


@pytest.mark.parametrize("k", range(1, 11))
def test_family_identities(k):
    assert catalog.is_isomorphic(o(bichain_B1(2 * k)), poset_P1(2 * k))
    assert catalog.is_isomorphic(o(bichain_B2(2 * k)), poset_P2(2 * k))
    assert catalog.is_isomorphic(inc(poset_P1(2 * k)), half_graph(k))
    assert catalog.is_isomorphic(inc(poset_P2(k)), path_graph(k))


def test_kites_and_combs():
    K3 = kite_truncation(3, 8)
    assert is_bipartite(K3)
    assert longest_double_fork(K3) is not None
    assert has_triangle(kite_truncation(2, 8))
    assert not is_bipartite(kite_truncation(2, 8))
    with pytest.raises(StructureError):
        kite_truncation(4, 5)
    assert comb(3).n == 6 and len(comb(3).edges()) == 5


def test_direct_sum():
    assert direct_sum([]).n == 0
    G = direct_sum([path_graph(2), path_graph(3)])
    assert G.n == 5 and len(G.components()) == 2


def test_sturmian():
    s = sturmian_orientation(1, 2, 6)
    assert set(s.word) == {"0", "1"} and "00" not in s.word and "11" not in s.word
    assert sturmian_orientation(1, 3, 20).factors(4) == sturmian_orientation(1, 3, 20).factors(4)
    a = sturmian_orientation(1, 3, 30).factors(6)
    b = sturmian_orientation(2, 5, 30).factors(6)
    assert not a <= b and not b <= a
    # a mechanical word has length + 1 factors of each short length
    assert len(sturmian_orientation(2, 5, 40).factors(3)) == 4
    with pytest.raises(StructureError, match="not coprime"):
        sturmian_orientation(2, 4, 10)


@pytest.mark.parametrize("tag", [t for t in FAMILY_TAGS if t != "SturmianOrientation"])
def test_self_tests(tag):
    sizes = {"DF": [2, 3, 6], "H": [1, 3, 5]}.get(tag, [1, 2, 5, 8])
    for k in sizes:
        assert self_test(tag, family(tag, k)), (tag, k)


def test_unknown_family():
    with pytest.raises(StructureError):
        family("Nope", 3)
