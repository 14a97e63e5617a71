import pytest
from hypothesis import HealthCheck, settings, strategies as st

from width2lab.structures import Bichain, Graph, poset_from_relations

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def graphs(draw, min_n=0, max_n=8):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [p for p, k in zip(pairs, keep) if k])


@st.composite
def posets(draw, min_n=0, max_n=8):
    """Random DAG on a random labelling, closed transitively."""
    n = draw(st.integers(min_n, max_n))
    perm = draw(st.permutations(range(n)))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    rel = [(perm[u], perm[v]) for (u, v), k in zip(pairs, keep) if k]
    return poset_from_relations(rel, n)


@st.composite
def bichains(draw, min_n=0, max_n=7):
    n = draw(st.integers(min_n, max_n))
    return Bichain(draw(st.permutations(range(n))))


@pytest.fixture
def n_poset():
    # a < c, b < c, b < d
    return poset_from_relations([(0, 2), (1, 2), (1, 3)], 4)

