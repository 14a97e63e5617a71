"""Finitely presented hereditary classes and the fork-based wqo decision."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from . import catalog, kernels
from .families import direct_sum, double_fork, fork_orientation, path_graph
from .metrics import (AuditReport, deg3_diameter, fork_tail_decomposition,
                      longest_double_fork)
from .structures import (Bichain, Graph, Poset, StructureError, avoids,
                         bichain_of_realizer, dual, embeds, inc, o, realizers,
                         recognize_bipartite_permutation, width, LabelledStructure)
from .universal import embed_into_D

UNIVERSES = ("All", "BipartitePermutation", "WidthTwoPosets", "Bichains321")
UNIVERSE_ALIASES = {
    "all": "All", "bp": "BipartitePermutation", "w2": "WidthTwoPosets",
    "b321": "Bichains321",
}
UNIVERSE_KIND = {
    "All": "graph", "BipartitePermutation": "graph",
    "WidthTwoPosets": "poset", "Bichains321": "bichain",
}
WQO_SCOPE = ("BipartitePermutation", "WidthTwoPosets", "Bichains321")

STABILIZATION_FMAX = 7
STABILIZATION_NMAX = 12


def universe_name(name: str) -> str:
    if name in UNIVERSES:
        return name
    if name.lower() in UNIVERSE_ALIASES:
        return UNIVERSE_ALIASES[name.lower()]
    raise StructureError(f"unknown universe {name!r}")


@dataclass(frozen=True)
class ClassSpec:
    """``presentation`` is ``"age"`` (structures embedding into a generator)
    or ``"avoid"`` (universe members avoiding every forbidden structure)."""
    presentation: str
    structures: tuple
    universe: str = "All"
    size_cap: int = 7

    def __post_init__(self):
        if self.presentation not in ("age", "avoid"):
            raise StructureError(f"unknown presentation {self.presentation!r}")
        object.__setattr__(self, "universe", universe_name(self.universe))
        object.__setattr__(self, "structures", tuple(self.structures))
        for X in self.structures:
            if X.kind != self.kind:
                raise StructureError(f"kind mismatch: {X.kind} in a {self.kind} universe")

    @property
    def kind(self) -> str:
        return UNIVERSE_KIND[self.universe]


def age_of(*generators, universe: str | None = None, size_cap: int = 7) -> ClassSpec:
    """Age of the generators; the universe defaults to the narrowest one
    containing them."""
    if not generators:
        raise StructureError("age needs at least one generator")
    if universe is None:
        kind = generators[0].kind
        universe = {"graph": "BipartitePermutation", "poset": "WidthTwoPosets",
                    "bichain": "Bichains321"}[kind]
        if not all(in_universe(universe, X) for X in generators):
            if kind != "graph":
                raise StructureError(f"generator outside {universe}")
            universe = "All"
    return ClassSpec("age", tuple(generators), universe, size_cap)


def avoiders(*forbidden, universe: str = "BipartitePermutation", size_cap: int = 7) -> ClassSpec:
    return ClassSpec("avoid", tuple(forbidden), universe, size_cap)


# ---------------------------------------------------------------- basics

def in_universe(universe: str, X) -> bool:
    universe = universe_name(universe)
    if X.kind != UNIVERSE_KIND[universe]:
        raise StructureError(f"kind mismatch: {X.kind} vs {UNIVERSE_KIND[universe]}")
    if universe == "All":
        return True
    if universe == "BipartitePermutation":
        return recognize_bipartite_permutation(X) is not None
    if universe == "WidthTwoPosets":
        return width(X) <= 2
    return avoids(X.sigma, (2, 1, 0))


def restrict(X, vertices):
    """Induced substructure on ``vertices`` (bichains relabelled in the
    first order)."""
    vertices = sorted(vertices)
    if isinstance(X, Bichain):
        vals = [X.sigma[v] for v in vertices]
        rank = {v: r for r, v in enumerate(sorted(vals))}
        return Bichain(rank[v] for v in vals)
    return X.induced(vertices)


def member(C: ClassSpec, X) -> bool:
    if X.kind != C.kind:
        raise StructureError(f"kind mismatch: {X.kind} vs {C.kind}")
    if C.presentation == "age":
        return any(embeds(X, Y) is not None for Y in C.structures)
    if not in_universe(C.universe, X):
        return False
    return all(embeds(F, X) is None for F in C.structures)


def universe_members(universe: str, n: int) -> tuple:
    universe = universe_name(universe)
    if universe == "All":
        return catalog.graphs(n)
    if universe == "BipartitePermutation":
        return catalog.bp_graphs(n)
    if universe == "WidthTwoPosets":
        return catalog.width2_posets(n)
    return tuple(Bichain(p) for p in catalog.avoiders_321(n))


def ambient(kind: str, n: int) -> tuple:
    """Every structure of ``kind`` on ``n`` elements up to isomorphism."""
    if kind == "graph":
        return catalog.graphs(n)
    if kind == "poset":
        return catalog.posets(n)
    return tuple(Bichain(p) for p in catalog.permutations(n))


def _enumerate_size(C: ClassSpec, n: int) -> list:
    if C.presentation == "avoid":
        return [X for X in universe_members(C.universe, n)
                if all(embeds(F, X) is None for F in C.structures)]
    subs = [restrict(Y, S) for Y in C.structures if Y.n >= n
            for S in itertools.combinations(range(Y.n), n)]
    return catalog.dedupe(subs)


def enumerate_class(C: ClassSpec, N: int) -> list:
    """Members with 1..N elements up to isomorphism, by size then canonical key."""
    out = []
    for n in range(1, N + 1):
        out.extend(_enumerate_size(C, n))
    return out


def bounds_up_to(C: ClassSpec, N: int) -> list:
    """Minimal non-members with at most ``N`` elements, drawn from every
    structure of the class's kind."""
    if N < 1:
        raise StructureError("N must be at least 1")
    keys = {0: None}
    out = []
    for n in range(1, N + 1):
        members = {catalog.canonical_key(X) for X in _enumerate_size(C, n)}
        keys[n] = members
        for X in ambient(C.kind, n):
            if catalog.canonical_key(X) in members:
                continue
            if n == 1 or all(catalog.canonical_key(restrict(X, [u for u in range(n) if u != v]))
                             in keys[n - 1] for v in range(n)):
                out.append(X)
    return out


def bounds_pairwise_incomparable(bounds) -> bool:
    return all(embeds(X, Y) is None for X, Y in itertools.permutations(bounds, 2))


# ------------------------------------------------------------ wqo decision

@lru_cache(maxsize=None)
def fork_members(kind: str, n: int) -> tuple:
    """The structures of ``kind`` whose incomparability graph is DF_n."""
    if kind == "graph":
        return (double_fork(n),)
    P = fork_orientation(n)
    if kind == "poset":
        return tuple(catalog.dedupe([P, dual(P)]))
    out = []
    for Q in (P, dual(P)):
        for L1, L2 in realizers(Q):
            out += [bichain_of_realizer(L1, L2), bichain_of_realizer(L2, L1)]
    return tuple(sorted(set(out), key=lambda B: B.sigma))


def embeds_in_fork(f, n: int) -> bool:
    return any(embeds(f, Y) is not None for Y in fork_members(f.kind, n))


@dataclass(frozen=True)
class StabilizationReport:
    kind: str
    fmax: int
    nmax: int
    checked: int
    ok: bool
    counterexample: object = None


@lru_cache(maxsize=None)
def validate_stabilization(kind: str = "graph", fmax: int = STABILIZATION_FMAX,
                           nmax: int = STABILIZATION_NMAX) -> StabilizationReport:
    """Brute force: for each ``f`` with at most ``fmax`` elements, embedding
    into the fork of size ``n`` is the same for every ``|f|+1 <= n <= nmax``."""
    checked = 0
    for m in range(1, fmax + 1):
        for f in ambient(kind, m):
            hits = {embeds_in_fork(f, n) for n in range(max(2, m + 1), nmax + 1)}
            checked += 1
            if len(hits) > 1:
                return StabilizationReport(kind, fmax, nmax, checked, False, f)
    return StabilizationReport(kind, fmax, nmax, checked, True)


@dataclass(frozen=True)
class WqoVerdict:
    verdict: str
    max_fork_length: int | None
    deg3_diameter_sup: float | None
    witnesses: tuple
    stabilization: StabilizationReport | None = None
    notes: tuple[str, ...] = ()

    @property
    def is_wqo(self) -> bool:
        return self.verdict == "WQO"


def as_graph(X) -> Graph:
    if isinstance(X, Graph):
        return X
    if isinstance(X, Poset):
        return inc(X)
    if isinstance(X, Bichain):
        return inc(o(X))
    raise StructureError(f"no incomparability graph for {type(X).__name__}")


def as_poset(X) -> Poset | None:
    if isinstance(X, Poset):
        return X
    if isinstance(X, Bichain):
        return o(X)
    return recognize_bipartite_permutation(X)


def _deg3_sup(C: ClassSpec, N: int) -> float:
    best = 0
    for X in enumerate_class(C, N):
        G = as_graph(X)
        if G.is_connected():
            d = deg3_diameter(G)
            if d != float("-inf"):
                best = max(best, d)
    return best


def decide_wqo(C: ClassSpec) -> WqoVerdict:
    if C.universe not in WQO_SCOPE:
        raise StructureError(f"unsupported universe {C.universe}")
    if C.presentation == "age":
        best, witness = 0, None
        for Y in C.structures:
            w = longest_double_fork(as_graph(Y))
            if w is not None and w.length > best:
                best, witness = w.length, w
        sup = max((deg3_diameter(as_graph(Y).induced(c))
                   for Y in C.structures for c in as_graph(Y).components()), default=0)
        return WqoVerdict("WQO", best, max(sup, 0), (witness,) if witness else (),
                          notes=("forks bounded by the generators",))
    m = max((F.n for F in C.structures), default=0)
    start = max(2, m + 1)
    stab = None
    if m <= STABILIZATION_FMAX:
        stab = validate_stabilization(C.kind) if C.kind == "graph" else \
            validate_stabilization(C.kind, min(STABILIZATION_FMAX, 5), 9)
        if not stab.ok:
            raise StructureError("stabilization rule failed its brute-force check")
        stable = [not any(embeds_in_fork(F, start) for F in C.structures)]
    else:
        # beyond the validated range test a window of fork sizes directly
        stable = [not any(embeds_in_fork(F, n) for F in C.structures)
                  for n in range(start, start + 4)]
        if len(set(stable)) > 1:
            raise StructureError("fork membership did not stabilize")
    if stable[0]:
        witnesses = tuple(Y for n in range(start, start + 7) for Y in fork_members(C.kind, n)
                          if member(C, Y))
        return WqoVerdict("NOT_WQO", None, None, witnesses, stab,
                          (f"DF_n in the class for every n >= {start}",))
    longest = max((n for n in range(2, start)
                   if any(member(C, Y) for Y in fork_members(C.kind, n))), default=0)
    return WqoVerdict("WQO", longest, _deg3_sup(C, C.size_cap), (), stab,
                      (f"no DF_n with n >= {start}",))


# ------------------------------------------------------------------ audits

def theorem2_audit(C: ClassSpec, N: int) -> AuditReport:
    """Finite proxies over members up to size ``N``: longest fork, the
    degree-3 diameter, and the core-plus-two-tails decomposition."""
    verdict = decide_wqo(C)
    rep = AuditReport(ok=True)
    fork_by_size: dict[int, int] = {}
    deg3_by_size: dict[int, float] = {}
    core_sup = 0
    for X in enumerate_class(C, N):
        G = as_graph(X)
        w = longest_double_fork(G)
        length = w.length if w else 0
        fork_by_size[X.n] = max(fork_by_size.get(X.n, 0), length)
        if not G.is_connected():
            continue
        d3 = deg3_diameter(G)
        if d3 != float("-inf"):
            deg3_by_size[X.n] = max(deg3_by_size.get(X.n, 0), d3)
        if verdict.is_wqo and length > verdict.max_fork_length:
            rep.fail("verdict", X)
        P = as_poset(X)
        dec = fork_tail_decomposition(P)
        if not dec.ok:
            rep.fail("decomposition", X)
        elif dec.core and d3 != float("-inf") and dec.core_diameter > d3 + 4:
            rep.fail("core_diameter", X)
        core_sup = max(core_sup, dec.core_diameter if dec.core else 0)
    # each fork is itself a member, with its branch vertices length - 1 apart
    max_fork = max(fork_by_size.values(), default=0)
    max_d3 = max(deg3_by_size.values(), default=0)
    rep.checks["fork_vs_deg3"] = not max_fork or max_d3 >= max_fork - 1
    if not rep.checks["fork_vs_deg3"]:
        rep.fail("fork_vs_deg3", (max_fork, max_d3))
    rep.checks.setdefault("verdict", True)
    rep.checks.setdefault("decomposition", True)
    rep.checks.setdefault("core_diameter", True)
    rep.stats = {
        "verdict": verdict.verdict,
        "max_fork_length": max_fork,
        "deg3_diameter_sup": max_d3,
        "core_diameter_sup": core_sup,
        "fork_by_size": fork_by_size,
        "deg3_by_size": deg3_by_size,
    }
    return rep


def labelled_path(k: int) -> LabelledStructure:
    """The path on ``k`` vertices with its two endpoints as constants."""
    return LabelledStructure.with_constants(path_graph(k), [0, k - 1])


def labelled_path_antichain(kmax: int) -> AuditReport:
    if kmax < 3:
        raise StructureError("kmax must be at least 3")
    items = {k: labelled_path(k) for k in range(3, kmax + 1)}
    rep = AuditReport(ok=True, checks={"antichain": True})
    for i, j in itertools.permutations(items, 2):
        if embeds(items[i], items[j]) is not None:
            rep.fail("antichain", (i, j))
    rep.stats["pairs"] = len(items) * (len(items) - 1)
    return rep


def fork_sum(F) -> Graph:
    F = sorted(F)
    if not F:
        return Graph.from_edges(0, [])
    return direct_sum(double_fork(n) for n in F)


def powerset_embedding_check(index_set) -> AuditReport:
    index_set = sorted(set(index_set))
    if any(n < 2 for n in index_set):
        raise StructureError("fork indices start at 2")
    subsets = [frozenset(c) for r in range(len(index_set) + 1)
               for c in itertools.combinations(index_set, r)]
    sums = {F: fork_sum(F) for F in subsets}
    rep = AuditReport(ok=True, checks={"embeds_iff_subset": True})
    for F, G in itertools.product(subsets, repeat=2):
        if (embeds(sums[F], sums[G]) is not None) != (F <= G):
            rep.fail("embeds_iff_subset", (sorted(F), sorted(G)))
    rep.stats["pairs"] = len(subsets) ** 2
    return rep


def longest_induced_path(G: Graph) -> int:
    """Vertex count of a longest induced path."""
    if G.n == 0:
        return 0
    return int(kernels.induced_path_lengths(G.masks).max()) + 1


def theorem1_audit(C: ClassSpec, N: int) -> AuditReport:
    """Longest induced path in the incomparability graphs against the least
    ``m`` with every connected member inside ``D(m)``."""
    if C.universe != "WidthTwoPosets":
        raise StructureError(f"unsupported universe {C.universe}")
    rep = AuditReport(ok=True, checks={"embedded": True, "path_fits": True})
    path_by_size: dict[int, int] = {}
    m_by_size: dict[int, int] = {}
    for P in enumerate_class(C, N):
        G = inc(P)
        k = longest_induced_path(G)
        path_by_size[P.n] = max(path_by_size.get(P.n, 0), k)
        if not G.is_connected():
            continue
        e = embed_into_D(P)
        m_by_size[P.n] = max(m_by_size.get(P.n, 0), e.m)
        if not e.verified:
            rep.fail("embedded", P)
        if k > 6 * e.m + 1:
            rep.fail("path_fits", P)
    rep.stats = {
        "max_path": max(path_by_size.values(), default=0),
        "max_m": max(m_by_size.values(), default=0),
        "path_by_size": path_by_size,
        "m_by_size": m_by_size,
    }
    return rep
