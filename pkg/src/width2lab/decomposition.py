"""Modules, strong modules, primality, chain quotients and realizer theory."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .metrics import AuditReport
from .structures import (Bichain, Graph, Poset, StructureError, bichain_of_realizer,
                         comp, dual, embeds, inc, is_bipartite, o, realizers,
                         transitive_orientations)

__all__ = [
    "ModuleFamily", "modules_of", "is_prime", "chain_module_quotient",
    "strong_module_audit", "transitive_orientations", "prime_bipartite_check",
    "is_uniquely_realizable", "realizability_report", "embedding_equivalence_audit",
    "module_masks", "is_chain", "orientation_audit",
]

MAX_MODULE_SCAN = 20


def _mask_set(mask: int) -> frozenset[int]:
    out, v = [], 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return frozenset(out)


def module_masks(S) -> list[int]:
    """Bitmasks of every nonempty module of ``S``, increasing."""
    if S.n > MAX_MODULE_SCAN:
        raise StructureError(f"module enumeration limited to {MAX_MODULE_SCAN} elements")
    if S.n == 0:
        return []
    hits = kernels.module_scan(S.module_rows(), S.n)
    return np.nonzero(hits)[0].tolist()


def _restrict(S, vertices):
    vertices = sorted(vertices)
    if isinstance(S, Bichain):
        vals = [S.sigma[v] for v in vertices]
        ranks = sorted(range(len(vals)), key=lambda i: vals[i])
        sigma = [0] * len(vals)
        for r, i in enumerate(ranks):
            sigma[i] = r
        return Bichain(sigma)
    return S.induced(vertices)


@dataclass(frozen=True)
class ModuleFamily:
    n: int
    modules: tuple[frozenset, ...]
    strong: tuple[frozenset, ...]
    components: tuple[frozenset, ...]
    quotient: object

    @property
    def nontrivial(self) -> tuple[frozenset, ...]:
        return tuple(M for M in self.modules if 1 < len(M) < self.n)


def modules_of(S) -> ModuleFamily:
    """All proper nonempty modules, the strong ones and the Gallai components
    (maximal proper strong modules) with the quotient on one representative
    per component."""
    n = S.n
    full = (1 << n) - 1
    masks = module_masks(S)
    arr = np.asarray(masks, dtype=np.int64)
    strong = []
    for M in masks:
        inter = arr & M
        if not ((inter != 0) & (inter != M) & (inter != arr)).any():
            strong.append(M)
    proper_strong = [M for M in strong if M != full]
    comps = [M for M in proper_strong
             if not any(M != N and M & N == M for N in proper_strong)]
    comps.sort(key=lambda M: (M & -M))
    reps = [(M & -M).bit_length() - 1 for M in comps]
    quotient = _restrict(S, reps) if n >= 2 else S
    return ModuleFamily(
        n=n,
        modules=tuple(_mask_set(M) for M in masks if M != full),
        strong=tuple(_mask_set(M) for M in strong),
        components=tuple(_mask_set(M) for M in comps),
        quotient=quotient)


def is_prime(S) -> bool:
    """No module besides the empty set, singletons and the whole set."""
    if S.n <= 2:
        return True
    return kernels.is_prime_subset(S.module_rows(), (1 << S.n) - 1)


def is_prime_brute(S) -> bool:
    """Primality from the exhaustive module list (oracle for :func:`is_prime`)."""
    return S.n <= 2 or all(not 1 < len(_mask_set(M)) < S.n for M in module_masks(S))


def is_chain(P: Poset, vertices) -> bool:
    v = sorted(vertices)
    sub = P.leq[np.ix_(v, v)]
    return bool((sub | sub.T).all())


# ------------------------------------------------------- chain quotients

@dataclass(frozen=True)
class ChainQuotient:
    classes: tuple[frozenset, ...]
    quotient: Poset
    lex_sum_ok: bool
    quotient_chain_free: bool


def chain_module_quotient(P: Poset) -> ChainQuotient:
    """Classes are unions of totally ordered modules through each element."""
    n = P.n
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for M in module_masks(P):
        verts = sorted(_mask_set(M))
        if len(verts) > 1 and is_chain(P, verts):
            for v in verts[1:]:
                parent[find(v)] = find(verts[0])
    groups: dict[int, list[int]] = {}
    for v in range(n):
        groups.setdefault(find(v), []).append(v)
    classes = sorted((frozenset(g) for g in groups.values()), key=min)
    reps = [min(c) for c in classes]
    Q = P.induced(reps)
    cls = {v: i for i, c in enumerate(classes) for v in c}
    lex_ok = all(
        (P.leq[u, v] == Q.leq[cls[u], cls[v]]) if cls[u] != cls[v] else True
        for u in range(n) for v in range(n))
    lex_ok = lex_ok and all(is_chain(P, c) for c in classes)
    chain_free = all(not (1 < len(M) < Q.n and is_chain(Q, M))
                     for M in (_mask_set(m) for m in module_masks(Q)))
    return ChainQuotient(tuple(classes), Q, lex_ok, chain_free)


# ------------------------------------------------------ gallai / kelly

def strong_module_audit(P: Poset) -> AuditReport:
    sp = set(modules_of(P).strong)
    sg = set(modules_of(comp(P)).strong)
    rep = AuditReport(ok=sp == sg, checks={"same_strong_modules": sp == sg})
    if sp != sg:
        rep.counterexample = ("strong module mismatch", sorted(map(sorted, sp ^ sg)))
    return rep


def prime_bipartite_check(G: Graph) -> bool:
    """Connected and twin-free; graphs on at most two vertices count as prime."""
    if not is_bipartite(G):
        raise StructureError("graph is not bipartite")
    if G.n <= 2:
        return True
    masks = [int(m) for m in G.masks]
    return G.is_connected() and len(set(masks)) == G.n


# ------------------------------------------------------------ realizers

@dataclass(frozen=True)
class RealizabilityReport:
    criterion: bool
    oracle: bool
    realizer_count: int

    @property
    def agree(self) -> bool:
        return self.criterion == self.oracle


def _criterion(P: Poset) -> bool:
    G = inc(P)
    nontrivial = [c for c in G.components() if len(c) > 1]
    if len(nontrivial) > 1:
        return False
    if not nontrivial:
        return True
    Q = P.induced(nontrivial[0])
    return all(is_chain(Q, M) for M in modules_of(Q).modules)


def realizability_report(P: Poset) -> RealizabilityReport:
    count = len(realizers(P))
    if count == 0:
        raise StructureError("dimension exceeds two")
    return RealizabilityReport(_criterion(P), count == 1, count)


def is_uniquely_realizable(P: Poset, method: str = "criterion") -> bool:
    """Exactly one unordered realizer pair (a chain's pair is ``{L, L}``).

    ``method`` is ``"criterion"`` (component and module test) or
    ``"oracle"`` (count realizers).
    """
    rep = realizability_report(P)
    if method == "criterion":
        return rep.criterion
    if method == "oracle":
        return rep.oracle
    raise ValueError(f"unknown method {method!r}")


# --------------------------------------------- cross-level embeddings

def _poset_embeds_direct_or_dual(P: Poset, Q: Poset) -> bool:
    return embeds(P, Q, {"direct", "dual"}) is not None


def embedding_equivalence_audit(kind: str, P, Q=None) -> AuditReport:
    """``kind``: ``"poset-graph"`` (P, Q posets whose proper modules in P are
    chains), ``"bichain-poset"`` (P uniquely realizable, Q of dimension two)
    or ``"prime-transfer"`` (P a bichain)."""
    rep = AuditReport(ok=True)
    if kind == "poset-graph":
        if not all(is_chain(P, M) for M in modules_of(P).modules):
            rep.stats["skipped"] = "P has a proper module that is not a chain"
            return rep
        a = _poset_embeds_direct_or_dual(P, Q)
        b = embeds(comp(P), comp(Q)) is not None
        c = embeds(inc(P), inc(Q)) is not None
        rep.checks = {"poset": a, "comp": b, "inc": c}
        if not a == b == c:
            rep.fail("equivalence", (a, b, c))
        return rep
    if kind == "bichain-poset":
        if not realizers(P) or len(realizers(P)) != 1:
            rep.stats["skipped"] = "P is not uniquely realizable"
            return rep
        if not realizers(Q):
            rep.stats["skipped"] = "Q has dimension above two"
            return rep
        L1, L2 = realizers(P)[0]
        BP = bichain_of_realizer(L1, L2)
        poset_side = embeds(P, Q) is not None
        rep.checks["poset"] = poset_side
        for M1, M2 in realizers(Q):
            BQ = bichain_of_realizer(M1, M2)
            bichain_side = embeds(BP, BQ, {"direct", "transpose"}) is not None
            if bichain_side != poset_side:
                rep.fail("equivalence", ((M1, M2), poset_side, bichain_side))
        return rep
    if kind == "prime-transfer":
        a, b = is_prime(P), is_prime(o(P))
        rep.checks = {"bichain_prime": a, "poset_prime": b}
        if a != b:
            rep.fail("equivalence", (a, b))
        return rep
    raise StructureError(f"unknown audit kind {kind!r}")


def orientation_audit(G: Graph) -> AuditReport:
    """A prime comparability graph has exactly the orientations ``P`` and ``P*``."""
    found = transitive_orientations(G)
    rep = AuditReport(ok=True, stats={"orientations": len(found)})
    if not found or not is_prime(G):
        rep.stats["skipped"] = "not a prime comparability graph"
        return rep
    P = found[0]
    expected = {P, dual(P)}
    if set(found) != expected:
        rep.fail("orientations", len(found))
    # an edgeless prime graph (at most two vertices) has one orientation,
    # which is its own dual
    if G.edges() and len(found) != 2:
        rep.fail("count", len(found))
    return rep

