"""The universal width-two poset ``D = [0, 2pi) x Z`` and its truncations.

First coordinates live in ``Q + Q*pi`` (:class:`PiRational`) and are
compared exactly by bracketing pi in a certified rational interval.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, total_ordering

import mpmath
import numpy as np

from . import kernels
from .structures import Graph, Poset, StructureError, inc, width

PI_LO = Fraction(314159265358979, 10 ** 14)
PI_HI = Fraction(314159265358980, 10 ** 14)


@lru_cache(maxsize=None)
def pi_interval(bits: int) -> tuple[Fraction, Fraction]:
    """Rationals ``lo < pi < hi``; ``bits=0`` gives the 14-digit bracket."""
    if bits == 0:
        return PI_LO, PI_HI
    with mpmath.workprec(bits + 8):
        x = +mpmath.pi
        approx = Fraction(int(x.man)) * Fraction(2) ** int(x.exp)
    err = Fraction(1, 2 ** bits)
    return approx - err, approx + err


def _sign(a: Fraction, b: Fraction) -> int:
    """Sign of ``a + b*pi``."""
    if b == 0:
        return (a > 0) - (a < 0)
    bits = 0
    while True:
        lo, hi = pi_interval(bits)
        ends = (a + b * lo, a + b * hi)
        if min(ends) > 0:
            return 1
        if max(ends) < 0:
            return -1
        bits = 64 if bits == 0 else 2 * bits


@total_ordering
class PiRational:
    """Exact value ``a + b*pi`` with rational ``a`` and ``b``."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = Fraction(a)
        self.b = Fraction(b)

    @classmethod
    def coerce(cls, x) -> "PiRational":
        return x if isinstance(x, PiRational) else cls(x, 0)

    def __add__(self, other):
        other = PiRational.coerce(other)
        return PiRational(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other):
        other = PiRational.coerce(other)
        return PiRational(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        return PiRational.coerce(other) - self

    def __neg__(self):
        return PiRational(-self.a, -self.b)

    def __mul__(self, k):
        if isinstance(k, PiRational):
            if k.b != 0 and self.b != 0:
                raise TypeError("product leaves Q + Q*pi")
            if k.b == 0:
                k = k.a
            else:
                return k * self.a
        k = Fraction(k)
        return PiRational(self.a * k, self.b * k)

    __rmul__ = __mul__

    def __truediv__(self, k):
        k = Fraction(k)
        return PiRational(self.a / k, self.b / k)

    def sign(self) -> int:
        return _sign(self.a, self.b)

    def __eq__(self, other):
        if not isinstance(other, (PiRational, int, Fraction)):
            return NotImplemented
        other = PiRational.coerce(other)
        return self.a == other.a and self.b == other.b

    def __lt__(self, other):
        return (self - PiRational.coerce(other)).sign() < 0

    def __hash__(self):
        return hash((self.a, self.b))

    def __float__(self):
        return float(self.a) + float(self.b) * float(mpmath.pi)

    def __repr__(self):
        return f"PiRational({self.a}, {self.b})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}*pi"
        return f"{self.a}+{self.b}*pi"


PI = PiRational(0, 1)
TWO_PI = PiRational(0, 2)


@dataclass(frozen=True)
class DPoint:
    q: PiRational
    level: int

    def __post_init__(self):
        q = PiRational.coerce(self.q)
        object.__setattr__(self, "q", q)
        if not (PiRational(0) <= q < TWO_PI):
            raise StructureError(f"first coordinate {q} outside [0, 2pi)")
        if int(self.level) != self.level:
            raise StructureError("level must be an integer")


def d_le(p: DPoint, r: DPoint) -> bool:
    return (p.q <= r.q and p.level <= r.level) or (p.q > r.q and r.level >= p.level + 2)


def d_leq(p: DPoint, r: DPoint) -> str:
    """Three-way comparison: ``"eq"``, ``"lt"``, ``"gt"`` or ``"inc"``."""
    if p == r:
        return "eq"
    up, down = d_le(p, r), d_le(r, p)
    if up and down:  # pragma: no cover - antisymmetry
        raise AssertionError("order on D not antisymmetric")
    return "lt" if up else "gt" if down else "inc"


def d_incomparable(p: DPoint, r: DPoint) -> bool:
    """The closed form of incomparability in D."""
    return ((p.q < r.q and r.level == p.level - 1)
            or (r.q < p.q and p.level == r.level - 1))


def to_Rpi2(p: DPoint) -> tuple[PiRational, int]:
    return PI * p.level + p.q, p.level % 2


def rpi2_le(x: tuple[PiRational, int], y: tuple[PiRational, int]) -> bool:
    if x[1] == y[1]:
        return x[0] <= y[0]
    return x[0] + PI <= y[0]


def order_matrix(points, le=d_le) -> np.ndarray:
    n = len(points)
    return np.array([[le(points[i], points[j]) for j in range(n)] for i in range(n)],
                    dtype=bool).reshape(n, n)


def sample_poset(points) -> Poset:
    return Poset(order_matrix(points), check=False)


# --------------------------------------------------------------- long path

@dataclass(frozen=True)
class LongPath:
    n: int
    variant: str
    points: tuple[DPoint, ...]
    valid: bool
    in_range: bool
    edges_per_level_pair: dict
    failure: tuple | None = None


def long_path_points(n: int, variant: str = "corrected") -> list[tuple[PiRational, int]]:
    """Raw coordinates ``(q, level)`` of ``x_0 .. x_{6n}``.

    ``variant="literal"`` shifts block ``k`` by ``1/(2k)`` in the first
    coordinate; ``"corrected"`` shifts it by ``k/(2n)``. The two agree at
    ``n = 1``.
    """
    if n < 1:
        raise StructureError("n must be at least 1")
    base = [
        (PI / n, -n),
        (PI / n - Fraction(1, 2 * n), -n + 1),
        ((PI + 1) / n, -n),
        (PI / n + Fraction(1, 2 * n), -n + 1),
    ]
    pts = list(base)
    for k in range(1, 2 * n):
        shift = Fraction(1, 2 * k) if variant == "literal" else Fraction(k, 2 * n)
        for i in (1, 2, 3):
            q, lev = base[i]
            pts.append((q + shift, lev + k))
    return pts


def construct_long_path(n: int, variant: str = "corrected") -> LongPath:
    if variant not in ("corrected", "literal"):
        raise StructureError(f"unknown variant {variant!r}")
    raw = long_path_points(n, variant)
    in_range = all(PiRational(0) <= q < TWO_PI and -n <= lev <= n for q, lev in raw)
    if not in_range:
        return LongPath(n, variant, (), False, False, {}, ("out of range",))
    pts = tuple(DPoint(q, lev) for q, lev in raw)
    valid, failure = True, None
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            incomparable = d_leq(pts[i], pts[j]) == "inc"
            if incomparable != (j == i + 1):
                valid = False
                failure = failure or (i, j)
    per_pair: dict = {}
    for i in range(len(pts) - 1):
        key = min(pts[i].level, pts[i + 1].level)
        per_pair[key] = per_pair.get(key, 0) + 1
    return LongPath(n, variant, pts, valid, True, per_pair, failure)


@dataclass(frozen=True)
class GridSearch:
    n: int
    bound: int
    max_vertices: int
    max_edges_per_level_pair: int
    within_bound: bool


def _grid(n: int, bound: int) -> list[DPoint]:
    return [DPoint(TWO_PI * Fraction(p, bound), lev)
            for lev in range(-n, n + 1) for p in range(bound)]


def max_induced_path_sample(n: int, bound: int) -> int:
    return induced_path_grid_search(n, bound).max_vertices


def induced_path_grid_search(n: int, bound: int) -> GridSearch:
    """Longest induced path of ``inc`` on the grid ``{2*pi*p/bound} x [-n, n]``,
    plus the longest one confined to two adjacent levels."""
    if n < 1 or bound < 2:
        raise StructureError("need n >= 1 and bound >= 2")
    pts = _grid(n, bound)
    if len(pts) > kernels.MAX_VERTICES:
        raise StructureError("grid too large for the bitmask search")
    G = inc(sample_poset(pts))
    longest = int(kernels.induced_path_lengths(G.masks).max()) + 1
    pair_edges = 0
    for lev in range(-n, n):
        idx = [i for i, p in enumerate(pts) if p.level in (lev, lev + 1)]
        sub = G.induced(idx)
        pair_edges = max(pair_edges, int(kernels.induced_path_lengths(sub.masks).max()))
    return GridSearch(n, bound, longest, pair_edges,
                      longest <= 6 * n + 1 and pair_edges <= 3)


# ------------------------------------------------------------- embeddings

def _level_search(P: Poset, m: int):
    n = P.n
    G = inc(P)
    lt = P.lt
    # BFS order over the incomparability graph keeps levels tightly linked
    order, seen = [], [False] * n
    for s in range(n):
        if seen[s]:
            continue
        seen[s] = True
        queue = [s]
        while queue:
            u = queue.pop(0)
            order.append(u)
            for w in G.neighbors(u):
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
    domain = [0] + [x for k in range(1, m + 1) for x in (-k, k)]
    level = [None] * n

    def consistent(u):
        for v in range(n):
            if level[v] is None or v == u:
                continue
            a, b = level[u], level[v]
            if lt[u, v] and a > b or lt[v, u] and b > a:
                return False
            if G.adj[u, v] and abs(a - b) != 1:
                return False
        return True

    def q_order():
        # arcs u -> v mean q_u < q_v
        arcs = [[] for _ in range(n)]
        indeg = [0] * n
        for u in range(n):
            for v in range(n):
                if u == v:
                    continue
                a, b = level[u], level[v]
                need = (lt[u, v] and b - a in (0, 1)) or (G.adj[u, v] and b == a - 1)
                if need:
                    arcs[u].append(v)
                    indeg[v] += 1
        ready = [v for v in range(n) if indeg[v] == 0]
        topo = []
        while ready:
            ready.sort()
            u = ready.pop(0)
            topo.append(u)
            for v in arcs[u]:
                indeg[v] -= 1
                if indeg[v] == 0:
                    ready.append(v)
        return topo if len(topo) == n else None

    def rec(i):
        if i == n:
            return q_order()
        u = order[i]
        for lev in domain:
            level[u] = lev
            if consistent(u):
                found = rec(i + 1)
                if found is not None:
                    return found
        level[u] = None
        return None

    topo = rec(0)
    if topo is None:
        return None
    rank = {v: r for r, v in enumerate(topo)}
    return [DPoint(PiRational(Fraction(rank[v] + 1, n + 1)), level[v]) for v in range(n)]


def embeds_in_Dm(P: Poset, m: int):
    """Points of ``D(m)`` realizing ``P`` (``None`` when impossible)."""
    return _level_search(P, m)


@dataclass(frozen=True)
class DEmbedding:
    m: int
    points: tuple[DPoint, ...]
    verified: bool


def embed_into_D(P: Poset, max_m: int | None = None) -> DEmbedding:
    """Least ``m >= 1`` with ``P`` embedded in ``D(m)``, by iterative deepening."""
    if width(P) > 2:
        raise StructureError("width exceeds two")
    if not inc(P).is_connected():
        raise StructureError("incomparability graph not connected")
    cap = max_m if max_m is not None else max(1, P.n)
    for m in range(1, cap + 1):
        pts = _level_search(P, m)
        if pts is not None:
            verified = bool(np.array_equal(order_matrix(pts), P.leq))
            return DEmbedding(m, tuple(pts), verified)
    raise StructureError(f"no embedding found with m <= {cap}")


# ---------------------------------------------------------- multichains

@dataclass(frozen=True)
class LiftReport:
    trials: int
    passed: int
    failure: tuple | None

    @property
    def ok(self) -> bool:
        return self.passed == self.trials


def random_partial_isomorphism(chain, rng: random.Random) -> dict:
    """Order-preserving injection between two random equal-size subsets."""
    k = rng.randint(1, len(chain))
    dom = sorted(rng.sample(range(len(chain)), k))
    img = sorted(rng.sample(range(len(chain)), k))
    return {chain[a]: chain[b] for a, b in zip(dom, img)}


def lift_is_local_isomorphism(f: dict, m: int) -> bool:
    """``(x, n) -> (f(x), n)`` preserves the order of ``D(m)`` and its
    incomparability graph on ``dom(f) x [-m, m]``."""
    dom = sorted(f, key=PiRational.coerce)
    src = [DPoint(x, n) for x in dom for n in range(-m, m + 1)]
    dst = [DPoint(f[x], n) for x in dom for n in range(-m, m + 1)]
    A, B = order_matrix(src), order_matrix(dst)
    if not np.array_equal(A, B):
        return False
    incA = ~(A | A.T)
    incB = ~(B | B.T)
    return bool(np.array_equal(incA, incB))


def multichain_lift_check(sample_chain, m: int, trials: int = 100, seed: int = 0,
                          maps=None) -> LiftReport:
    chain = [PiRational.coerce(x) for x in sample_chain]
    if any(not a < b for a, b in zip(chain, chain[1:])):
        raise StructureError("sample chain must be strictly increasing")
    rng = random.Random(seed)
    maps = list(maps) if maps is not None else [
        random_partial_isomorphism(chain, rng) for _ in range(trials)]
    passed, failure = 0, None
    for f in maps:
        f = {PiRational.coerce(a): PiRational.coerce(b) for a, b in f.items()}
        if lift_is_local_isomorphism(f, m):
            passed += 1
        elif failure is None:
            failure = tuple(sorted(f.items(), key=lambda kv: kv[0]))
    return LiftReport(len(maps), passed, failure)


def inc_of_sample(points) -> Graph:
    return inc(sample_poset(points))
