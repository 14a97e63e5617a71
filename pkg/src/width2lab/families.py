"""Generators for the named graphs, posets and bichains.

Prefix conventions: ``poset_P1(k)``/``bichain_B1(k)`` live on ``0..k-1``.
``poset_P2(k)``/``bichain_B2(k)`` live on the first ``k`` vertices of the
incomparability path ``0, 2, 1, 4, 3, 6, 5, ...``, renumbered in their
natural order, so that their incomparability graph is always ``P_k``.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np

from .structures import (Bichain, Graph, Poset, StructureError, is_bipartite,
                         recognize_bipartite_permutation)

FAMILY_TAGS = ("DF", "H", "Path", "P1", "P2", "B1", "B2", "Comb",
               "Kite1", "Kite2", "Kite3", "SturmianOrientation")


def _need(k: int, least: int, what: str) -> None:
    if int(k) != k or k < least:
        raise StructureError(f"{what} needs an integer >= {least}, got {k}")


def double_fork(n: int) -> Graph:
    """DF_n: path ``0..n-1``, pendants ``n, n+1`` on 0 and ``n+2, n+3`` on n-1."""
    _need(n, 2, "double_fork")
    edges = [(i, i + 1) for i in range(n - 1)]
    edges += [(0, n), (0, n + 1), (n - 1, n + 2), (n - 1, n + 3)]
    return Graph.from_edges(n + 4, edges)


def fork_orientation(n: int) -> Poset:
    """A width-two poset whose incomparability graph is DF_n."""
    P = recognize_bipartite_permutation(double_fork(n))
    if P is None:  # pragma: no cover - DF_n is a bipartite permutation graph
        raise StructureError("double fork not recognized")
    return P


def half_graph(k: int) -> Graph:
    """H_k with ``a_i = 2i`` adjacent to ``b_j = 2j+1`` iff ``i <= j``."""
    _need(k, 1, "half_graph")
    return Graph.from_edges(2 * k, [(2 * i, 2 * j + 1)
                                    for i in range(k) for j in range(i, k)])


def path_graph(k: int) -> Graph:
    _need(k, 1, "path_graph")
    return Graph.from_edges(k, [(i, i + 1) for i in range(k - 1)])


def poset_P1(k: int) -> Poset:
    """``i < j`` unless ``i`` is even and ``j`` is odd."""
    _need(k, 1, "poset_P1")
    i = np.arange(k)
    lt = (i[:, None] < i[None, :]) & ~((i[:, None] % 2 == 0) & (i[None, :] % 2 == 1))
    return Poset(lt | np.eye(k, dtype=bool))


def bichain_B1(k: int) -> Bichain:
    """Natural order against odds-then-evens."""
    _need(k, 1, "bichain_B1")
    second = sorted(range(k), key=lambda x: (x % 2 == 0, x))
    rank = {x: r for r, x in enumerate(second)}
    return Bichain(rank[x] for x in range(k))


def b2_sigma(x: int) -> int:
    if x <= 1:
        return 2 * x + 1
    return x - 2 if x % 2 == 0 else x + 2


def _path_position(x: int) -> int:
    if x == 0:
        return 0
    return x - 1 if x % 2 == 0 else x + 1


def _p2_elements(k: int) -> list[int]:
    order = [0] + [p + 1 if p % 2 == 1 else p - 1 for p in range(1, k)]
    return sorted(order)


def poset_P2(k: int) -> Poset:
    """Elements at path positions ``p < q`` compare iff ``q >= p + 2``."""
    _need(k, 1, "poset_P2")
    pos = np.array([_path_position(x) for x in _p2_elements(k)])
    lt = pos[None, :] >= pos[:, None] + 2
    return Poset(lt | np.eye(k, dtype=bool))


def bichain_B2(k: int) -> Bichain:
    _need(k, 1, "bichain_B2")
    values = [b2_sigma(x) for x in _p2_elements(k)]
    ranks = sorted(range(k), key=lambda i: values[i])
    sigma = [0] * k
    for r, i in enumerate(ranks):
        sigma[i] = r
    return Bichain(sigma)


def comb(k: int) -> Graph:
    """Path ``0..k-1`` with pendant ``k+i`` on each path vertex ``i``."""
    _need(k, 1, "comb")
    edges = [(i, i + 1) for i in range(k - 1)] + [(i, k + i) for i in range(k)]
    return Graph.from_edges(2 * k, edges)


def kite_truncation(kind: int, k: int) -> Graph:
    """Path ``0..k-1`` plus every extra vertex the kite type allows:
    type 1 one vertex per edge, type 2 one vertex on ``i, i+1, i+2`` and
    type 3 one vertex on ``i, i+2``, for even ``i`` in types 2 and 3."""
    if kind not in (1, 2, 3):
        raise StructureError(f"invalid kite type {kind}")
    _need(k, 1, "kite_truncation")
    edges = [(i, i + 1) for i in range(k - 1)]
    if kind == 1:
        attach = [(i, i + 1) for i in range(k - 1)]
    elif kind == 2:
        attach = [(i, i + 1, i + 2) for i in range(0, k - 2, 2)]
    else:
        attach = [(i, i + 2) for i in range(0, k - 2, 2)]
    n = k
    for group in attach:
        edges += [(v, n) for v in group]
        n += 1
    return Graph.from_edges(n, edges)


def direct_sum(graphs) -> Graph:
    graphs = list(graphs)
    n = sum(G.n for G in graphs)
    adj = np.zeros((n, n), dtype=bool)
    at = 0
    for G in graphs:
        adj[at:at + G.n, at:at + G.n] = G.adj
        at += G.n
    return Graph(adj)


@dataclass(frozen=True)
class SturmianOrientation:
    p: int
    q: int
    word: str
    arcs: tuple[tuple[int, int], ...]

    def factors(self, length: int) -> frozenset[str]:
        w = self.word
        return frozenset(w[i:i + length] for i in range(len(w) - length + 1))

    def factor_sets(self) -> dict[int, frozenset[str]]:
        return {ell: self.factors(ell) for ell in range(1, len(self.word) + 1)}


def sturmian_orientation(p: int, q: int, length: int) -> SturmianOrientation:
    """Mechanical word of slope ``p/q``; edge ``{i, i+1}`` of the path points
    forward when letter ``i`` is 1."""
    if not (0 < p < q):
        raise StructureError("need 0 < p < q")
    if gcd(p, q) != 1:
        raise StructureError("p, q not coprime")
    _need(length, 1, "sturmian_orientation")
    letters = [((i + 1) * p) // q - (i * p) // q for i in range(length)]
    arcs = tuple((i, i + 1) if s else (i + 1, i) for i, s in enumerate(letters))
    return SturmianOrientation(p, q, "".join(map(str, letters)), arcs)


def comparable_sets(a: frozenset, b: frozenset) -> bool:
    return a <= b or b <= a


def family(tag: str, *params: int):
    """Dispatch by family tag (as used on the command line)."""
    table = {
        "DF": double_fork, "H": half_graph, "Path": path_graph,
        "P1": poset_P1, "P2": poset_P2, "B1": bichain_B1, "B2": bichain_B2,
        "Comb": comb, "SturmianOrientation": sturmian_orientation,
        "Kite1": lambda k: kite_truncation(1, k),
        "Kite2": lambda k: kite_truncation(2, k),
        "Kite3": lambda k: kite_truncation(3, k),
    }
    if tag not in table:
        raise StructureError(f"unknown family {tag!r}")
    return table[tag](*params)


def self_test(tag: str, X) -> bool:
    """Defining predicate of each generated family instance."""
    from .structures import has_triangle, inc, o
    if tag == "DF":
        deg = sorted(X.degrees.tolist(), reverse=True)
        return (is_bipartite(X) and not has_triangle(X) and X.is_connected()
                and deg == [3, 3] + [2] * (X.n - 6) + [1] * 4)
    if tag == "H":
        k = X.n // 2
        return (X.n % 2 == 0
                and all(X.adj[2 * i, 2 * j + 1] == (i <= j) for i in range(k) for j in range(k))
                and not X.adj[0::2, 0::2].any() and not X.adj[1::2, 1::2].any())
    if tag == "Path":
        return X.is_connected() and len(X.edges()) == X.n - 1 and X.degrees.max(initial=0) <= 2
    if tag == "P1":
        return self_test("H", inc(X).induced(range(2 * (X.n // 2))))
    if tag == "P2":
        return self_test("Path", inc(X))
    if tag in ("B1", "B2"):
        return self_test("P" + tag[1], o(X))
    if tag == "Comb":
        k = X.n // 2
        return X.is_connected() and len(X.edges()) == X.n - 1 and (X.degrees[k:] == 1).all()
    if tag in ("Kite1", "Kite2", "Kite3"):
        return X.is_connected() and (is_bipartite(X) if tag == "Kite3"
                                     else has_triangle(X) or X.n < 4)
    raise StructureError(f"no self-test for {tag!r}")
