"""Canonical forms and exhaustive isomorphism-class enumeration.

Canonical labelling is individualization-refinement: colour refinement on
the relation code matrix, branching on the first non-singleton cell (with
twin pruning), keeping the least relabelled matrix over all leaves.
"""
from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from . import kernels
from .structures import (Bichain, Graph, LabelledStructure, Poset, inc, o,
                         StructureError)


def _twins(code: np.ndarray, u: int, v: int) -> bool:
    if code[u, v] != code[v, u]:
        return False
    mask = np.ones(code.shape[0], dtype=bool)
    mask[[u, v]] = False
    return bool(np.array_equal(code[u, mask], code[v, mask])
                and np.array_equal(code[mask, u], code[mask, v]))


def canonical_labelling(code, colors=None) -> tuple[bytes, tuple[int, ...]]:
    """``(key, order)``: relabelling vertex ``order[i]`` as ``i`` gives the
    canonical matrix, whose bytes (plus colours) form ``key``."""
    code = np.ascontiguousarray(code, dtype=np.int8)
    n = code.shape[0]
    if n == 0:
        return b"", ()
    if colors is None:
        colors = np.zeros(n, dtype=np.int64)
    else:
        _, colors = np.unique(np.asarray(colors), return_inverse=True)
        colors = colors.reshape(-1).astype(np.int64)
    start_colors = colors
    base = int(code.max()) + 1
    pair = code.astype(np.int64) * base + code.T
    best: list = [None, None]

    def visit(cols):
        cols = kernels.refine_colours(pair, cols)
        if int(cols.max()) + 1 == n:
            order = np.argsort(cols)
            enc = code[np.ix_(order, order)].tobytes()
            if best[0] is None or enc < best[0]:
                best[0], best[1] = enc, order
            return
        sizes = np.bincount(cols)
        target = int(np.nonzero(sizes > 1)[0][0])
        tried: list[int] = []
        for v in np.nonzero(cols == target)[0].tolist():
            if any(_twins(code, u, v) for u in tried):
                continue
            tried.append(v)
            nxt = 2 * cols + 1
            nxt[v] = 2 * target
            visit(nxt)

    visit(colors)
    order = best[1]
    key = bytes([n]) + np.sort(start_colors).astype(np.int8).tobytes() + best[0]
    return key, tuple(int(x) for x in order)


def canonical_key(X) -> bytes:
    """Isomorphism-invariant key; equal keys iff isomorphic (same kind)."""
    if isinstance(X, Bichain):
        return b"B" + bytes(X.sigma)
    if isinstance(X, LabelledStructure):
        labels = np.asarray(sorted(X.labels), dtype=np.int32).tobytes()
        return (b"L" + X.base.kind[0].encode() + X.label_order.tobytes() + labels
                + canonical_labelling(X.base.relation_code(), X.labels)[0])
    tag = b"G" if isinstance(X, Graph) else b"P"
    return tag + canonical_labelling(X.relation_code())[0]


def canonical_form(X):
    """Canonical representative of the isomorphism class of ``X``."""
    if isinstance(X, Bichain):
        return X
    if isinstance(X, LabelledStructure):
        _, order = canonical_labelling(X.base.relation_code(), X.labels)
        return LabelledStructure(canonical_form_by(X.base, order),
                                 [X.labels[v] for v in order], X.label_order)
    _, order = canonical_labelling(X.relation_code())
    return canonical_form_by(X, order)


def canonical_form_by(X, order):
    idx = np.asarray(order, dtype=np.int64)
    if isinstance(X, Graph):
        return Graph(X.adj[np.ix_(idx, idx)])
    if isinstance(X, Poset):
        return Poset(X.leq[np.ix_(idx, idx)], check=False)
    raise StructureError(f"cannot relabel {type(X).__name__}")


def is_isomorphic(X, Y) -> bool:
    return X.kind == Y.kind and X.n == Y.n and canonical_key(X) == canonical_key(Y)


def dedupe(structures) -> list:
    """Keep one structure per isomorphism class, ordered by canonical key."""
    seen = {}
    for X in structures:
        key = canonical_key(X)
        if key not in seen:
            seen[key] = canonical_form(X)
    return [seen[k] for k in sorted(seen)]


# ------------------------------------------------------------ enumeration

@lru_cache(maxsize=None)
def graphs(n: int) -> tuple[Graph, ...]:
    """All graphs on ``n`` vertices up to isomorphism."""
    if n == 0:
        return (Graph(np.zeros((0, 0), dtype=bool)),)
    out = {}
    for G in graphs(n - 1):
        for S in range(1 << (n - 1)):
            adj = np.zeros((n, n), dtype=bool)
            adj[:-1, :-1] = G.adj
            nb = [(S >> i) & 1 == 1 for i in range(n - 1)]
            adj[-1, :-1] = nb
            adj[:-1, -1] = nb
            code = adj.astype(np.int8)
            key, order = canonical_labelling(code)
            if key not in out:
                idx = np.asarray(order)
                out[key] = Graph(adj[np.ix_(idx, idx)])
    return tuple(out[k] for k in sorted(out))


@lru_cache(maxsize=None)
def posets(n: int) -> tuple[Poset, ...]:
    """All posets on ``n`` elements up to isomorphism (new maximal element
    added above every down-closed subset)."""
    if n == 0:
        return (Poset(np.zeros((0, 0), dtype=bool), check=False),)
    out = {}
    for P in posets(n - 1):
        down = [int(m) for m in P.down_masks]
        for D in range(1 << (n - 1)):
            if any((D >> v) & 1 and down[v] & ~D for v in range(n - 1)):
                continue
            leq = np.eye(n, dtype=bool)
            leq[:-1, :-1] = P.leq
            leq[:-1, -1] = [(D >> i) & 1 == 1 for i in range(n - 1)]
            key, order = canonical_labelling(leq.astype(np.int8))
            if key not in out:
                idx = np.asarray(order)
                out[key] = Poset(leq[np.ix_(idx, idx)], check=False)
    return tuple(out[k] for k in sorted(out))


def permutations(n: int):
    return [tuple(p) for p in itertools.permutations(range(n))]


@lru_cache(maxsize=None)
def avoiders_321(n: int) -> tuple[tuple[int, ...], ...]:
    """321-avoiding permutations of size ``n`` (no decreasing triple)."""
    out = []

    def rec(prefix, used, big, second):
        # big: largest value so far; second: largest value that has a
        # larger value before it (the middle of a potential 321)
        if len(prefix) == n:
            out.append(tuple(prefix))
            return
        for v in range(n):
            if used >> v & 1 or v < second:
                continue
            rec(prefix + [v], used | 1 << v, max(big, v),
                max(second, v) if v < big else second)

    rec([], 0, -1, -1)
    return tuple(out)


@lru_cache(maxsize=None)
def dimension2_posets(n: int) -> tuple[Poset, ...]:
    """Posets of dimension at most two, as ``o(B)`` over all bichains."""
    return tuple(dedupe(o(Bichain(p)) for p in permutations(n)))


@lru_cache(maxsize=None)
def width2_posets(n: int) -> tuple[Poset, ...]:
    return tuple(dedupe(o(Bichain(p)) for p in avoiders_321(n)))


@lru_cache(maxsize=None)
def connected_width2_posets(n: int) -> tuple[Poset, ...]:
    return tuple(P for P in width2_posets(n) if inc(P).is_connected())


@lru_cache(maxsize=None)
def bp_graphs(n: int) -> tuple[Graph, ...]:
    """Bipartite permutation graphs on ``n`` vertices."""
    return tuple(dedupe(inc(P) for P in width2_posets(n)))
