"""Graphic distance, detour, the oscillation distance and convexity audits.

Distance tables are ``int64`` with ``-1`` standing for an infinite distance
(vertices in different components).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import kernels
from .structures import (Graph, Poset, StructureError, inc, two_chain_partition,
                         width)

INF = -1


@dataclass(frozen=True)
class MetricReport:
    dist: np.ndarray
    diameter: int
    detour: int
    detour_pairs: np.ndarray
    oscillation: np.ndarray | None
    deg3_diameter: float


@dataclass
class AuditReport:
    """Outcome of a property audit: ``ok`` plus per-check results, the first
    counterexample found and any measured quantities."""
    ok: bool
    checks: dict = field(default_factory=dict)
    counterexample: object = None
    stats: dict = field(default_factory=dict)

    def fail(self, check: str, witness) -> None:
        self.checks[check] = False
        self.ok = False
        if self.counterexample is None:
            self.counterexample = (check, witness)


def distances(G: Graph) -> np.ndarray:
    return kernels.bfs_distances(G.masks)


def detour_table(G: Graph) -> np.ndarray:
    """Longest induced path (edges) between each pair, ``-1`` if none."""
    return kernels.induced_path_lengths(G.masks)


def diameter(dist: np.ndarray) -> int:
    return int(dist.max(initial=0))


def degree3_set(G: Graph) -> list[int]:
    return np.nonzero(G.degrees >= 3)[0].tolist()


def deg3_diameter(G: Graph, dist: np.ndarray | None = None) -> float:
    """Diameter in ``G`` of the degree->=3 vertices; ``-inf`` with fewer than
    two of them, ``inf`` when two lie in different components."""
    A = degree3_set(G)
    if len(A) < 2:
        return -math.inf
    if dist is None:
        dist = distances(G)
    sub = dist[np.ix_(A, A)]
    if (sub == INF).any():
        return math.inf
    return int(sub.max())


def oscillation_distance(P: Poset) -> np.ndarray:
    """The oscillation distance on a width-two poset with connected
    incomparability graph: longest chain-switching monotone sequence."""
    first, _ = two_chain_partition(P)
    n = P.n
    side = np.ones(n, dtype=np.int64)
    side[list(first)] = 0
    lt = P.lt
    switch = lt & (side[:, None] != side[None, :])
    # topological order: by number of elements below
    order = np.argsort(lt.sum(axis=0), kind="stable").tolist()
    d = np.zeros((n, n), dtype=np.int64)
    for x in range(n):
        best = np.full(n, -1, dtype=np.int64)
        best[x] = 0
        for w in order:
            if not lt[x, w]:
                continue
            preds = [u for u in order if (u == x or lt[x, u]) and switch[u, w] and best[u] >= 0]
            if preds:
                best[w] = max(best[u] for u in preds) + 1
        for y in range(n):
            if x == y:
                continue
            if lt[x, y]:
                osc = int(best[y])
                d[x, y] = d[y, x] = 2 if osc <= 0 else osc + 2
            elif not lt[y, x]:
                d[x, y] = 1
    return d


def metric_report(G: Graph, P: Poset | None = None) -> MetricReport:
    if P is not None:
        if P.n != G.n or inc(P) != G:
            raise StructureError("graph is not the incomparability graph of the poset")
        if width(P) > 2:
            raise StructureError("oscillation distance needs width at most two")
        if not G.is_connected():
            raise StructureError("oscillation distance needs a connected graph")
    dist = distances(G)
    det = detour_table(G)
    return MetricReport(
        dist=dist, diameter=diameter(dist), detour=int(det.max(initial=0)),
        detour_pairs=det,
        oscillation=None if P is None else oscillation_distance(P),
        deg3_diameter=deg3_diameter(G, dist))


# ------------------------------------------------------------- convexity

def ball(G: Graph, X, r: int, dist: np.ndarray | None = None) -> frozenset[int]:
    """Vertices within distance ``r`` of some vertex of ``X``."""
    X = list(X)
    if dist is None:
        dist = distances(G)
    if not X:
        return frozenset()
    sub = dist[X]
    hit = ((sub >= 0) & (sub <= r)).any(axis=0)
    return frozenset(np.nonzero(hit)[0].tolist())


def down_set(P: Poset, X) -> frozenset[int]:
    X = list(X)
    if not X:
        return frozenset()
    return frozenset(np.nonzero(P.leq[:, X].any(axis=1))[0].tolist())


def up_set(P: Poset, X) -> frozenset[int]:
    X = list(X)
    if not X:
        return frozenset()
    return frozenset(np.nonzero(P.leq[X, :].any(axis=0))[0].tolist())


def conv_P(P: Poset, X) -> frozenset[int]:
    return down_set(P, X) & up_set(P, X)


def conv_G(G: Graph, X, dist: np.ndarray | None = None) -> frozenset[int]:
    """Intersection of all balls ``B(v, r)`` that contain ``X``."""
    X = list(X)
    if dist is None:
        dist = distances(G)
    out = frozenset(range(G.n))
    for v in range(G.n):
        row = dist[v, X]
        if (row == INF).any():
            continue
        r = int(row.max(initial=0))
        out &= ball(G, [v], r, dist)
    return out


def is_order_convex(P: Poset, S) -> bool:
    S = frozenset(S)
    return conv_P(P, S) == S


def is_isometric(G: Graph, S, dist: np.ndarray | None = None) -> bool:
    S = sorted(S)
    if dist is None:
        dist = distances(G)
    sub = distances(G.induced(S))
    return bool(np.array_equal(sub, dist[np.ix_(S, S)]))


# ---------------------------------------------------------------- audits

def _require_connected_width2(P: Poset) -> Graph:
    if width(P) > 2:
        raise StructureError("width exceeds two")
    G = inc(P)
    if not G.is_connected():
        raise StructureError("incomparability graph not connected")
    return G


def audit_metric_inequalities(P: Poset) -> AuditReport:
    G = _require_connected_width2(P)
    n = P.n
    dG = distances(G)
    Dt = detour_table(G)
    dP = oscillation_distance(P)
    delta, D = diameter(dG), int(Dt.max(initial=0))
    rep = AuditReport(ok=True, stats={"diameter": delta, "detour": D})
    names = ("gap", "detour_lower", "diameter_detour", "monotone",
             "ball_convex", "ball_isometric", "oscillation_metric")
    rep.checks = {k: True for k in names}
    for x in range(n):
        for y in range(n):
            gap = dG[x, y] - dP[x, y]
            if not 0 <= gap <= 2 * (dG[x, y] // 3):
                rep.fail("gap", (x, y))
            if x != y:
                Dxy = int(Dt[x, y])
                eps = 1 if Dxy % 3 == 1 else 2
                if dP[x, y] < Dxy // 3 + eps:
                    rep.fail("detour_lower", (x, y))
    # the upper bound 3*delta - 1 is negative for a single vertex
    if n >= 2 and not delta <= D <= 3 * delta - 1:
        rep.fail("diameter_detour", (delta, D))
    leq = P.leq
    for x in range(n):
        for y in range(n):
            if not leq[x, y]:
                continue
            inside = [u for u in range(n) if leq[x, u] and leq[u, y]]
            for u in inside:
                for v in inside:
                    if leq[u, v] and dG[u, v] > dG[x, y]:
                        rep.fail("monotone", (x, u, v, y))
    for x in range(n):
        for r in range(delta + 1):
            B = ball(G, [x], r, dG)
            if not is_order_convex(P, B):
                rep.fail("ball_convex", (x, r))
            if not is_isometric(G, B, dG):
                rep.fail("ball_isometric", (x, r))
    via = dP[:, :, None] + dP[None, :, :]
    bad = np.argwhere(dP[:, None, :] > via)
    if len(bad):
        rep.fail("oscillation_metric", tuple(int(v) for v in bad[0]))
    return rep


def convex_ball_identities(P: Poset, X, r: int, dist: np.ndarray | None = None) -> dict:
    """The four ball/segment identities for ``X`` and radius ``r``."""
    G = inc(P)
    if dist is None:
        dist = distances(G)
    B = lambda S: ball(G, S, r, dist)  # noqa: E731
    dX, uX, BX = down_set(P, X), up_set(P, X), B(X)
    cX = conv_P(P, X)
    return {
        "down": B(dX) == dX | BX == down_set(P, BX),
        "up": B(uX) == uX | BX == up_set(P, BX),
        "meet": B(uX & dX) == B(uX) & B(dX),
        "conv": B(cX) == cX | BX == conv_P(P, BX),
    }


# ------------------------------------------------------------ caterpillars

def has_short_cycle(G: Graph) -> bool:
    """Cycle of length three or four as a (not necessarily induced) subgraph."""
    m = [int(x) for x in G.masks]
    for u, v in combinations(range(G.n), 2):
        common = m[u] & m[v]
        if (m[u] >> v) & 1 and common:
            return True
        if common & (common - 1):
            return True
    return False


def is_forest(G: Graph) -> bool:
    return len(G.edges()) == G.n - len(G.components())


def is_path(G: Graph) -> bool:
    return G.n == 0 or (G.is_connected() and len(G.edges()) == G.n - 1
                        and int(G.degrees.max(initial=0)) <= 2)


def is_caterpillar(G: Graph) -> bool:
    """Connected, and deleting the degree-one vertices leaves a path."""
    if not G.is_connected():
        return False
    spine = [v for v in range(G.n) if G.degrees[v] != 1]
    return is_path(G.induced(spine)) and is_forest(G)


def is_comb(G: Graph) -> bool:
    if not is_caterpillar(G):
        return False
    leaves = G.degrees == 1
    return all(int((G.adj[v] & leaves).sum()) <= 1 for v in range(G.n))


def caterpillar_audit(P: Poset) -> AuditReport:
    if width(P) > 2:
        raise StructureError("width exceeds two")
    G = inc(P)
    no_short = not has_short_cycle(G)
    acyclic = is_forest(G)
    caterpillars = all(is_caterpillar(G.induced(c)) for c in G.components())
    rep = AuditReport(ok=no_short == acyclic == caterpillars,
                      checks={"no_short_cycle": no_short, "acyclic": acyclic,
                              "caterpillar_components": caterpillars})
    rep.stats["comb_components"] = [is_comb(G.induced(c)) for c in G.components()]
    if not rep.ok:
        rep.counterexample = ("disagreement", dict(rep.checks))
    return rep


# ------------------------------------------------------------------ forks

@dataclass(frozen=True)
class ForkWitness:
    path: tuple[int, ...]
    ends: tuple[tuple[int, int], tuple[int, int]]

    @property
    def length(self) -> int:
        return len(self.path)

    @property
    def vertices(self) -> tuple[int, ...]:
        return self.path + self.ends[0] + self.ends[1]


def _fork_ends(m, path_mask, a, b):
    cand_a = [w for w in range(len(m)) if (m[a] >> w) & 1 and not (path_mask >> w) & 1
              and (m[w] & path_mask) == (1 << a)]
    cand_b = [w for w in range(len(m)) if (m[b] >> w) & 1 and not (path_mask >> w) & 1
              and (m[w] & path_mask) == (1 << b)]
    for a1, a2 in combinations(cand_a, 2):
        if (m[a1] >> a2) & 1:
            continue
        for b1, b2 in combinations(cand_b, 2):
            if (m[b1] >> b2) & 1 or len({a1, a2, b1, b2}) < 4:
                continue
            ma = (1 << a1) | (1 << a2)
            if m[b1] & ma or m[b2] & ma:
                continue
            return (a1, a2), (b1, b2)
    return None


def find_double_forks(G: Graph, min_length: int = 2):
    """Yield every induced double-ended fork (inner path of at least
    ``min_length`` vertices, each path listed once)."""
    m = [int(x) for x in G.masks]
    n = G.n

    def extend(path, path_mask, blocked):
        if len(path) >= min_length and path[0] < path[-1]:
            ends = _fork_ends(m, path_mask, path[0], path[-1])
            if ends is not None:
                yield ForkWitness(tuple(path), ends)
        last = path[-1]
        cand = m[last] & ~blocked
        while cand:
            low = cand & -cand
            cand ^= low
            v = low.bit_length() - 1
            yield from extend(path + [v], path_mask | low, blocked | m[last] | low)

    for s in range(n):
        yield from extend([s], 1 << s, 1 << s)


def longest_double_fork(G: Graph) -> ForkWitness | None:
    best = None
    for w in find_double_forks(G):
        if best is None or w.length > best.length:
            best = w
    return best


@dataclass(frozen=True)
class ForkTailDecomposition:
    core: frozenset
    lower_tail: tuple[int, ...]
    upper_tail: tuple[int, ...]
    core_diameter: int
    deg3_diameter: float
    ok: bool
    notes: tuple[str, ...] = ()


def _ordered_path(G: Graph, verts) -> tuple[int, ...]:
    verts = sorted(verts)
    if len(verts) <= 1:
        return tuple(verts)
    H = G.induced(verts)
    ends = [i for i in range(H.n) if H.degrees[i] <= 1]
    order, prev, cur = [], -1, ends[0]
    while True:
        order.append(verts[cur])
        nxt = [w for w in H.neighbors(cur) if w != prev]
        if not nxt:
            break
        prev, cur = cur, nxt[0]
    return tuple(order)


def fork_tail_decomposition(P: Poset) -> ForkTailDecomposition:
    """Core ``K`` = radius-2 ball around the order-convex hull of the
    degree->=3 vertices; the rest splits into at most two paths, one below
    and one above ``K``."""
    G = _require_connected_width2(P)
    dist = distances(G)
    A = degree3_set(G)
    d3 = deg3_diameter(G, dist)
    K = ball(G, conv_P(P, A), 2, dist) if A else frozenset()
    rest = [v for v in range(G.n) if v not in K]
    comps = [[rest[i] for i in c] for c in G.induced(rest).components()] if rest else []
    notes = []
    ok = True
    Kl = sorted(K)
    core_diam = diameter(dist[np.ix_(Kl, Kl)]) if Kl else 0
    if A and len(A) >= 2 and core_diam > d3 + 4:
        ok = False
        notes.append("core diameter exceeds bound")
    lower: tuple[int, ...] = ()
    upper: tuple[int, ...] = ()
    if not K and not is_path(G):
        # the 4-cycle is the one connected case with all degrees 2
        K = frozenset(range(G.n))
        core_diam = diameter(dist)
        notes.append("cycle without degree-3 vertices kept whole")
    elif not K:
        lower = _ordered_path(G, range(G.n))
    else:
        if len(comps) > 2:
            ok = False
            notes.append("more than two tails")
        attach = []
        for c in comps:
            if not is_path(G.induced(c)):
                ok = False
                notes.append("tail is not a path")
            hooks = {(t, k) for t in c for k in K if G.adj[t, k]}
            if len({k for _, k in hooks}) != 1:
                ok = False
                notes.append("tail not attached to a single core vertex")
            attach.append(next(iter(hooks))[1] if hooks else None)
            above_any = any(P.lt[k, t] for t in c for k in K)
            below_any = any(P.lt[t, k] for t in c for k in K)
            path = _ordered_path(G, c)
            if below_any and not above_any:
                if lower:
                    ok = False
                    notes.append("two lower tails")
                lower = path
            elif above_any and not below_any:
                if upper:
                    ok = False
                    notes.append("two upper tails")
                upper = path
            else:
                ok = False
                notes.append("tail neither below nor above the core")
        if len(attach) == 2 and attach[0] == attach[1]:
            ok = False
            notes.append("tails attached to the same vertex")
    return ForkTailDecomposition(frozenset(K), lower, upper, core_diam, d3, ok,
                                 tuple(notes))
