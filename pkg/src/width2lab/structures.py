"""Posets, graphs, bichains and labelled structures, plus induced embeddings.

All objects are immutable: the underlying boolean tables are made read-only
on construction and every operation returns a new value.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import kernels

VARIANTS = ("direct", "dual", "transpose")


class StructureError(ValueError):
    """Invalid structure or a precondition failure on one."""


def _frozen(table, dtype=bool) -> np.ndarray:
    arr = np.array(table, dtype=dtype, copy=True)
    arr.setflags(write=False)
    return arr


def _masks(table: np.ndarray) -> np.ndarray:
    n = table.shape[0]
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    weights = np.left_shift(np.int64(1), np.arange(n, dtype=np.int64))
    return (table.astype(np.int64) * weights[None, :]).sum(axis=1)


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


# ------------------------------------------------------------------ graph

class Graph:
    kind = "graph"

    def __init__(self, adj):
        adj = _frozen(adj)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise StructureError("adjacency table must be square")
        if (adj != adj.T).any():
            raise StructureError("adjacency not symmetric")
        if adj.diagonal().any():
            raise StructureError("loop in simple graph")
        if adj.shape[0] > kernels.MAX_VERTICES:
            raise StructureError("too many vertices")
        self.adj = adj

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj = np.zeros((n, n), dtype=bool)
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n) or u == v:
                raise StructureError(f"bad edge ({u}, {v})")
            adj[u, v] = adj[v, u] = True
        return cls(adj)

    @property
    def n(self) -> int:
        return self.adj.shape[0]

    def edges(self) -> list[tuple[int, int]]:
        us, vs = np.nonzero(np.triu(self.adj, 1))
        return list(zip(us.tolist(), vs.tolist()))

    @cached_property
    def masks(self) -> np.ndarray:
        return _masks(self.adj)

    @cached_property
    def degrees(self) -> np.ndarray:
        return self.adj.sum(axis=1)

    def neighbors(self, v: int) -> list[int]:
        return np.nonzero(self.adj[v])[0].tolist()

    def complement(self) -> "Graph":
        return Graph(~self.adj & ~np.eye(self.n, dtype=bool))

    def induced(self, vertices: Sequence[int]) -> "Graph":
        idx = np.asarray(list(vertices), dtype=np.int64)
        return Graph(self.adj[np.ix_(idx, idx)])

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp, queue = [], deque([s])
            while queue:
                u = queue.popleft()
                comp.append(u)
                for w in self.neighbors(u):
                    if not seen[w]:
                        seen[w] = True
                        queue.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def relation_code(self) -> np.ndarray:
        return self.adj.astype(np.int8)

    def module_rows(self) -> np.ndarray:
        return self.masks[None, :]

    def __eq__(self, other):
        return isinstance(other, Graph) and np.array_equal(self.adj, other.adj)

    def __hash__(self):
        return hash((self.kind, self.n, self.adj.tobytes()))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edges()})"


# ------------------------------------------------------------------ poset

class Poset:
    kind = "poset"

    def __init__(self, leq, check: bool = True):
        leq = _frozen(leq)
        if leq.ndim != 2 or leq.shape[0] != leq.shape[1]:
            raise StructureError("relation table must be square")
        if leq.shape[0] > kernels.MAX_VERTICES:
            raise StructureError("too many elements")
        if check:
            n = leq.shape[0]
            if not leq.diagonal().all():
                raise StructureError("not reflexive")
            off = leq & ~np.eye(n, dtype=bool)
            if (off & off.T).any():
                raise StructureError("not antisymmetric")
            li = leq.astype(np.int64)
            if ((li @ li > 0) & ~leq).any():
                raise StructureError("not transitive")
        self.leq = leq

    @classmethod
    def chain(cls, n: int) -> "Poset":
        return cls(np.triu(np.ones((n, n), dtype=bool)), check=False)

    @classmethod
    def antichain(cls, n: int) -> "Poset":
        return cls(np.eye(n, dtype=bool), check=False)

    @property
    def n(self) -> int:
        return self.leq.shape[0]

    @cached_property
    def lt(self) -> np.ndarray:
        return _frozen(self.leq & ~np.eye(self.n, dtype=bool))

    @cached_property
    def relation_count(self) -> int:
        """Number of strict pairs ``u < v``."""
        return int(self.lt.sum())

    @cached_property
    def up_masks(self) -> np.ndarray:
        return _masks(self.lt)

    @cached_property
    def down_masks(self) -> np.ndarray:
        return _masks(self.lt.T)

    def comparable(self, u: int, v: int) -> bool:
        return bool(self.leq[u, v] or self.leq[v, u])

    def induced(self, vertices: Sequence[int]) -> "Poset":
        idx = np.asarray(list(vertices), dtype=np.int64)
        return Poset(self.leq[np.ix_(idx, idx)], check=False)

    def relabel(self, perm: Sequence[int]) -> "Poset":
        """Poset whose element ``i`` is element ``perm[i]`` of ``self``."""
        return self.induced(perm)

    def cover_pairs(self) -> list[tuple[int, int]]:
        lt = self.lt.astype(np.int64)
        covers = self.lt & ~((lt @ lt) > 0)
        us, vs = np.nonzero(covers)
        return list(zip(us.tolist(), vs.tolist()))

    def relation_code(self) -> np.ndarray:
        return self.lt.astype(np.int8)

    def module_rows(self) -> np.ndarray:
        return np.stack([self.up_masks, self.down_masks])

    def __eq__(self, other):
        return isinstance(other, Poset) and np.array_equal(self.leq, other.leq)

    def __hash__(self):
        return hash((self.kind, self.n, self.leq.tobytes()))

    def __repr__(self):
        return f"Poset(n={self.n}, covers={self.cover_pairs()})"


# ---------------------------------------------------------------- bichain

Permutation = tuple


def check_perm(seq: Iterable[int]) -> tuple[int, ...]:
    perm = tuple(int(x) for x in seq)
    if sorted(perm) != list(range(len(perm))):
        raise StructureError("not a bijection of 0..n-1")
    return perm


class Bichain:
    """Two linear orders on ``0..n-1``: the natural one and ``i <=2 j`` iff
    ``sigma[i] <= sigma[j]``."""

    kind = "bichain"

    def __init__(self, sigma: Iterable[int]):
        self.sigma = check_perm(sigma)
        if len(self.sigma) > kernels.MAX_VERTICES:
            raise StructureError("too many elements")

    @property
    def n(self) -> int:
        return len(self.sigma)

    @cached_property
    def _s(self) -> np.ndarray:
        return np.asarray(self.sigma, dtype=np.int64)

    @cached_property
    def leq1(self) -> np.ndarray:
        return _frozen(np.triu(np.ones((self.n, self.n), dtype=bool)))

    @cached_property
    def leq2(self) -> np.ndarray:
        return _frozen(self._s[:, None] <= self._s[None, :])

    def relation_code(self) -> np.ndarray:
        # bit 0: i <1 j, bit 1: i <2 j
        idx = np.arange(self.n)
        code = (idx[:, None] < idx[None, :]).astype(np.int8)
        code += 2 * (self._s[:, None] < self._s[None, :]).astype(np.int8)
        np.fill_diagonal(code, 0)
        return code

    def module_rows(self) -> np.ndarray:
        idx = np.arange(self.n)
        up1 = _masks(idx[:, None] < idx[None, :])
        up2 = _masks(self._s[:, None] < self._s[None, :])
        return np.stack([up1, up2])

    def __eq__(self, other):
        return isinstance(other, Bichain) and self.sigma == other.sigma

    def __hash__(self):
        return hash((self.kind, self.sigma))

    def __repr__(self):
        return f"Bichain({list(self.sigma)})"


# --------------------------------------------------------------- labelled

class LabelledStructure:
    kind = "labelled"

    def __init__(self, base, labels: Sequence[int], label_order):
        if not isinstance(base, (Graph, Poset, Bichain)):
            raise StructureError("base must be a graph, poset or bichain")
        labels = tuple(int(x) for x in labels)
        order = _frozen(label_order)
        if len(labels) != base.n:
            raise StructureError("every vertex needs a label")
        k = order.shape[0]
        if order.ndim != 2 or order.shape[1] != k:
            raise StructureError("label order must be square")
        if any(not 0 <= x < k for x in labels):
            raise StructureError("label index out of range")
        if not order.diagonal().all():
            raise StructureError("label order not reflexive")
        oi = order.astype(np.int64)
        if ((oi @ oi > 0) & ~order).any():
            raise StructureError("label order not transitive")
        self.base = base
        self.labels = labels
        self.label_order = order

    @classmethod
    def with_constants(cls, base, constants: Sequence[int]) -> "LabelledStructure":
        """Mark the given vertices as distinct constants; the rest share label 0."""
        labels = [0] * base.n
        for i, v in enumerate(constants):
            labels[v] = i + 1
        return cls(base, labels, np.eye(len(constants) + 1, dtype=bool))

    @property
    def n(self) -> int:
        return self.base.n

    def __eq__(self, other):
        return (isinstance(other, LabelledStructure) and self.base == other.base
                and self.labels == other.labels
                and np.array_equal(self.label_order, other.label_order))

    def __hash__(self):
        return hash((self.kind, self.base, self.labels, self.label_order.tobytes()))

    def __repr__(self):
        return f"LabelledStructure({self.base!r}, labels={list(self.labels)})"


@dataclass(frozen=True)
class Embedding:
    map: tuple[int, ...]
    variant: str = "direct"


# ------------------------------------------------------------ conversions

def poset_from_relations(pairs: Iterable[tuple[int, int]], n: int | None = None) -> Poset:
    """Reflexive-transitive closure of ``pairs``; ``n`` defaults to 1 + max index."""
    pairs = [(int(u), int(v)) for u, v in pairs]
    if n is None:
        n = 1 + max((max(p) for p in pairs), default=-1)
    leq = np.eye(n, dtype=bool)
    for u, v in pairs:
        if not (0 <= u < n and 0 <= v < n):
            raise StructureError(f"pair ({u}, {v}) out of range")
        leq[u, v] = True
    for k in range(n):
        leq |= leq[:, k:k + 1] & leq[k:k + 1, :]
    off = leq & ~np.eye(n, dtype=bool)
    if (off & off.T).any():
        raise StructureError("not antisymmetric")
    return Poset(leq, check=False)


def comp(P: Poset) -> Graph:
    return Graph(P.lt | P.lt.T)


def inc(P: Poset) -> Graph:
    return Graph(~(P.leq | P.leq.T))


def o(B: Bichain) -> Poset:
    return Poset(B.leq1 & B.leq2, check=False)


def dual(X):
    """Dual poset, or the bichain with both orders reversed (relabelled so the
    first order stays natural)."""
    if isinstance(X, Poset):
        return Poset(X.leq.T, check=False)
    if isinstance(X, Bichain):
        n = X.n
        return Bichain(n - 1 - X.sigma[n - 1 - i] for i in range(n))
    raise StructureError(f"dual undefined for {type(X).__name__}")


def transpose(B: Bichain) -> Bichain:
    """Swap the two orders; element ``x`` becomes ``sigma[x]``."""
    inv = [0] * B.n
    for i, s in enumerate(B.sigma):
        inv[s] = i
    return Bichain(inv)


def bichain_of_realizer(L1: Sequence[int], L2: Sequence[int]) -> Bichain:
    """Bichain on the elements renamed by their position in ``L1``."""
    pos2 = {v: i for i, v in enumerate(L2)}
    return Bichain(pos2[v] for v in L1)


def _max_matching(adj: list[list[int]], n_right: int) -> int:
    match_r = [-1] * n_right

    def augment(u, seen):
        for w in adj[u]:
            if not seen[w]:
                seen[w] = True
                if match_r[w] < 0 or augment(match_r[w], seen):
                    match_r[w] = u
                    return True
        return False

    return sum(augment(u, [False] * n_right) for u in range(len(adj)))


def width(P: Poset) -> int:
    """Maximum antichain size, via Dilworth: n minus a maximum matching in
    the strict-order bipartite graph."""
    if P.n == 0:
        return 0
    adj = [np.nonzero(P.lt[u])[0].tolist() for u in range(P.n)]
    return P.n - _max_matching(adj, P.n)


def two_chain_partition(P: Poset) -> tuple[tuple[int, ...], tuple[int, ...]]:
    if width(P) > 2:
        raise StructureError("width exceeds two")
    G = inc(P)
    if not G.is_connected():
        raise StructureError("partition not unique")
    side = [-1] * P.n
    if P.n:
        side[0] = 0
        queue = deque([0])
        while queue:
            u = queue.popleft()
            for w in G.neighbors(u):
                if side[w] < 0:
                    side[w] = 1 - side[u]
                    queue.append(w)
    first = tuple(v for v in range(P.n) if side[v] == 0)
    second = tuple(v for v in range(P.n) if side[v] == 1)
    return first, second


# -------------------------------------------------------------- embedding

def _variant_code(Y, variant: str) -> np.ndarray:
    code = Y.relation_code()
    if variant == "direct":
        return code
    if variant == "dual":
        return np.ascontiguousarray(code.T)
    # transpose of a bichain: swap the bit of each order
    return ((code >> 1) & 1) | ((code & 1) << 1)


def _valid_variants(kind: str) -> tuple[str, ...]:
    return {"graph": ("direct",), "poset": ("direct", "dual"),
            "bichain": VARIANTS}[kind]


def _search_order(code: np.ndarray) -> list[int]:
    # greedy: keep the next vertex as constrained as possible by earlier ones
    n = code.shape[0]
    if n == 0:
        return []
    info = ((code != 0) | (code.T != 0)).astype(np.int64)
    np.fill_diagonal(info, 0)
    deg = info.sum(axis=1)
    order = [int(np.argmax(deg))]
    score = info[order[0]].copy()
    chosen = np.zeros(n, dtype=bool)
    chosen[order[0]] = True
    while len(order) < n:
        key = np.where(chosen, -1, score * (n + 1) + deg)
        v = int(np.argmax(key))
        order.append(v)
        chosen[v] = True
        score += info[v]
    return order


def _count_profile(code: np.ndarray, values) -> np.ndarray:
    n = code.shape[0]
    off = ~np.eye(n, dtype=bool)
    cols = []
    for c in values:
        hit = (code == c) & off
        cols.append(hit.sum(axis=1))
        cols.append(hit.sum(axis=0))
    return np.stack(cols, axis=1) if cols else np.zeros((n, 0), dtype=np.int64)


def _embed_codes(S: np.ndarray, T: np.ndarray, allowed: np.ndarray):
    n = S.shape[0]
    if n > T.shape[0]:
        return None
    values = sorted(set(np.unique(S).tolist()) | set(np.unique(T).tolist()))
    prof_s = _count_profile(S, values)
    prof_t = _count_profile(T, values)
    allowed = allowed & (prof_s[:, None, :] <= prof_t[None, :, :]).all(axis=2)
    if n and not allowed.any(axis=1).all():
        return None
    order = _search_order(S)
    idx = np.asarray(order, dtype=np.int64)
    image = kernels.find_embedding(S[np.ix_(idx, idx)], T, allowed[idx])
    if image is None:
        return None
    out = [0] * n
    for pos, v in enumerate(order):
        out[v] = int(image[pos])
    return tuple(out)


def embeds(X, Y, symmetries: Iterable[str] = ("direct",)) -> Embedding | None:
    """Induced embedding of ``X`` into ``Y`` under any allowed symmetry of ``Y``.

    Variants are tried in the order direct, dual, transpose; target vertices
    are scanned smallest-index-first so witnesses are reproducible.
    """
    if X.kind != Y.kind:
        raise StructureError(f"kind mismatch: {X.kind} vs {Y.kind}")
    symmetries = set(symmetries)
    if X.kind == "labelled":
        if X.base.kind != Y.base.kind:
            raise StructureError(f"kind mismatch: {X.base.kind} vs {Y.base.kind}")
        if not np.array_equal(X.label_order, Y.label_order):
            raise StructureError("labelled structures use different label orders")
        base_x, base_y = X.base, Y.base
        lx = np.asarray(X.labels, dtype=np.int64)
        ly = np.asarray(Y.labels, dtype=np.int64)
        allowed = X.label_order[lx[:, None], ly[None, :]] if X.n and Y.n else \
            np.zeros((X.n, Y.n), dtype=bool)
    else:
        base_x, base_y = X, Y
        allowed = np.ones((X.n, Y.n), dtype=bool)
    valid = _valid_variants(base_x.kind)
    bad = symmetries - set(valid)
    if bad:
        raise StructureError(f"variant(s) {sorted(bad)} invalid for {base_x.kind}")
    S = base_x.relation_code()
    for variant in VARIANTS:
        if variant not in symmetries:
            continue
        found = _embed_codes(S, _variant_code(base_y, variant), allowed)
        if found is not None:
            return Embedding(found, variant)
    return None


def verify_embedding(X, Y, emb: Embedding) -> bool:
    base_x = X.base if X.kind == "labelled" else X
    base_y = Y.base if Y.kind == "labelled" else Y
    f = list(emb.map)
    if len(set(f)) != len(f) or len(f) != base_x.n:
        return False
    if X.kind == "labelled":
        if not all(X.label_order[X.labels[i], Y.labels[f[i]]] for i in range(X.n)):
            return False
    T = _variant_code(base_y, emb.variant)
    idx = np.asarray(f, dtype=np.int64)
    return bool(np.array_equal(base_x.relation_code(), T[np.ix_(idx, idx)]))


def isomorphic(X, Y) -> bool:
    return X.kind == Y.kind and X.n == Y.n and embeds(X, Y) is not None


# --------------------------------------------------------------- realizers

def linear_extensions(P: Poset):
    """Yield every linear extension as a tuple listing elements bottom-up."""
    n = P.n
    down = [int(m) for m in P.down_masks]
    prefix: list[int] = []

    def rec(placed):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for v in range(n):
            if not (placed >> v) & 1 and down[v] & ~placed == 0:
                prefix.append(v)
                yield from rec(placed | (1 << v))
                prefix.pop()

    yield from rec(0)


def realizers(P: Poset) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Unordered pairs ``{L1, L2}`` of linear extensions with intersection P."""
    n = P.n
    lt = P.lt
    found = set()
    for L1 in linear_extensions(P):
        pos1 = np.empty(n, dtype=np.int64)
        pos1[list(L1)] = np.arange(n)
        # L2 keeps P's comparabilities and reverses every incomparable pair
        before = lt | (~(lt | lt.T) & (pos1[None, :] < pos1[:, None]))
        np.fill_diagonal(before, False)
        score = before.sum(axis=1)
        if len(set(score.tolist())) != n:
            continue
        L2 = tuple(np.argsort(-score, kind="stable").tolist())
        found.add((min(L1, L2), max(L1, L2)))
    return sorted(found)


# ------------------------------------------------------------ permutations

def pattern_of(seq: Sequence[int]) -> tuple[int, ...]:
    ranks = sorted(range(len(seq)), key=lambda i: seq[i])
    out = [0] * len(seq)
    for r, i in enumerate(ranks):
        out[i] = r
    return tuple(out)


def avoids(pi: Sequence[int], pattern: Sequence[int]) -> bool:
    """True when no subsequence of ``pi`` is order isomorphic to ``pattern``."""
    pi = check_perm(pi)
    pattern = check_perm(pattern)
    k = len(pattern)
    return not any(pattern_of([pi[i] for i in idx]) == pattern
                   for idx in itertools.combinations(range(len(pi)), k))


def bichain_perm_roundtrip(sigma: Sequence[int]) -> tuple[int, ...]:
    return Bichain(sigma).sigma


# ------------------------------------------------------------- orientations

def _orientation_search(G: Graph, first_only: bool = False) -> list[Poset]:
    """Every transitive orientation of ``G``.

    Backtracking over edges, each choice closed under the two forcing rules:
    ``u->v`` with ``uw`` an edge and ``vw`` a non-edge forces ``u->w``
    (mirrored on the head side), and ``u->v->w`` forces ``u->w`` or fails.
    """
    n = G.n
    adj = G.adj.tolist()
    nbrs = [G.neighbors(v) for v in range(n)]
    results: list[Poset] = []

    def assign(arc, u, v, stack):
        queue = [(u, v)]
        while queue:
            a, b = queue.pop()
            cur = arc[a][b]
            if cur == 1:
                continue
            if cur == -1:
                return False
            arc[a][b], arc[b][a] = 1, -1
            stack.append((a, b))
            for w in nbrs[a]:
                if w != b and not adj[b][w]:
                    queue.append((a, w))
            for w in nbrs[b]:
                if w != a and not adj[a][w]:
                    queue.append((w, b))
            for w in nbrs[b]:
                if w != a and arc[b][w] == 1:
                    if not adj[a][w]:
                        return False
                    queue.append((a, w))
            for w in nbrs[a]:
                if w != b and arc[w][a] == 1:
                    if not adj[w][b]:
                        return False
                    queue.append((w, b))
        return True

    edges = G.edges()
    arc = [[0] * n for _ in range(n)]

    def rec(i):
        while i < len(edges) and arc[edges[i][0]][edges[i][1]] != 0:
            i += 1
        if i == len(edges):
            leq = np.eye(n, dtype=bool) | (np.array(arc, dtype=np.int8).reshape(n, n) == 1)
            P = Poset(leq, check=False)
            li = leq.astype(np.int64)
            if not ((li @ li > 0) & ~leq).any():
                results.append(P)
            return first_only and bool(results)
        u, v = edges[i]
        for a, b in ((u, v), (v, u)):
            stack: list[tuple[int, int]] = []
            ok = assign(arc, a, b, stack)
            if ok and rec(i + 1):
                return True
            for x, y in stack:
                arc[x][y] = arc[y][x] = 0
        return False

    rec(0)
    return results


def transitive_orientations(G: Graph) -> list[Poset]:
    """All posets ``P`` with ``comp(P) == G``, sorted by relation table."""
    return sorted(_orientation_search(G), key=lambda P: P.leq.tobytes(), reverse=True)


def is_comparability_graph(G: Graph) -> bool:
    return bool(_orientation_search(G, first_only=True))


def has_triangle(G: Graph) -> bool:
    m = G.masks
    return any(int(m[u]) & int(m[v]) for u, v in G.edges())


def recognize_bipartite_permutation(G: Graph) -> Poset | None:
    """A width-two poset whose incomparability graph is ``G``, or None."""
    if has_triangle(G):
        return None
    found = _orientation_search(G.complement(), first_only=True)
    return found[0] if found else None


def is_bipartite(G: Graph) -> bool:
    side = [-1] * G.n
    for s in range(G.n):
        if side[s] >= 0:
            continue
        side[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in G.neighbors(u):
                if side[w] < 0:
                    side[w] = 1 - side[u]
                    queue.append(w)
                elif side[w] == side[u]:
                    return False
    return True


def cycle_graph(k: int) -> Graph:
    return Graph.from_edges(k, [(i, (i + 1) % k) for i in range(k)])


def spider() -> Graph:
    """The claw with each edge subdivided once."""
    return Graph.from_edges(7, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)])


def obstructions(G: Graph) -> list[str]:
    """Named obstructions to being a bipartite permutation graph found in ``G``:
    odd cycles, induced even cycles of length at least six, and the spider."""
    found = []
    if not is_bipartite(G):
        found.append("odd-cycle")
    for k in range(6, G.n + 1, 2):
        if embeds(cycle_graph(k), G) is not None:
            found.append(f"C{k}")
    if G.n >= 7 and embeds(spider(), G) is not None:
        found.append("spider")
    return found
