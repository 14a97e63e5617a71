"""Bitmask search kernels.

Every kernel has a numba version (``*_nb``) and a pure-Python/numpy version
(``*_py``); the public name dispatches on :data:`width2lab._accel.USE_NUMBA`.
Structures are passed as relation matrices (``int8``) or as rows of
neighbourhood bitmasks (``int64``, one row per relation direction), so at
most 62 vertices are supported.
"""
import numpy as np

from ._accel import USE_NUMBA, njit

MAX_VERTICES = 62


# ---------------------------------------------------------------- embedding

@njit
def _find_embedding_nb(S, T, allowed):
    n = S.shape[0]
    m = T.shape[0]
    f = np.full(n, -1, dtype=np.int64)
    if n == 0:
        return f
    used = np.zeros(m, dtype=np.bool_)
    nxt = np.zeros(n + 1, dtype=np.int64)
    i = 0
    while i >= 0:
        if i == n:
            return f
        v = nxt[i]
        found = -1
        while v < m:
            if not used[v] and allowed[i, v]:
                ok = True
                for j in range(i):
                    w = f[j]
                    if S[i, j] != T[v, w] or S[j, i] != T[w, v]:
                        ok = False
                        break
                if ok:
                    found = v
                    break
            v += 1
        if found >= 0:
            f[i] = found
            used[found] = True
            nxt[i] = found + 1
            i += 1
            nxt[i] = 0
        else:
            nxt[i] = 0
            i -= 1
            if i >= 0:
                used[f[i]] = False
                f[i] = -1
    return np.full(0, -1, dtype=np.int64)


def _find_embedding_py(S, T, allowed):
    n, m = S.shape[0], T.shape[0]
    if n == 0:
        return np.full(0, -1, dtype=np.int64)
    S_ = S.tolist()
    T_ = T.tolist()
    cand = [[v for v in range(m) if allowed[i, v]] for i in range(n)]
    f = [-1] * n
    used = [False] * m

    def rec(i):
        if i == n:
            return True
        Si = S_[i]
        for v in cand[i]:
            if used[v]:
                continue
            Tv = T_[v]
            ok = True
            for j in range(i):
                w = f[j]
                if Si[j] != Tv[w] or S_[j][i] != T_[w][v]:
                    ok = False
                    break
            if ok:
                f[i] = v
                used[v] = True
                if rec(i + 1):
                    return True
                used[v] = False
                f[i] = -1
        return False

    if rec(0):
        return np.array(f, dtype=np.int64)
    return None


def find_embedding(S, T, allowed):
    """Smallest-index-first backtracking for an injective ``f`` with
    ``T[f(i), f(j)] == S[i, j]`` for all ``i != j`` and ``allowed[i, f(i)]``.

    Returns the image array, or ``None`` when no embedding exists.
    """
    S = np.ascontiguousarray(S, dtype=np.int8)
    T = np.ascontiguousarray(T, dtype=np.int8)
    allowed = np.ascontiguousarray(allowed, dtype=np.bool_)
    n, m = S.shape[0], T.shape[0]
    if n > m:
        return None
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    if USE_NUMBA:
        out = _find_embedding_nb(S, T, allowed)
        return out if out.shape[0] == n else None
    return _find_embedding_py(S, T, allowed)


# ---------------------------------------------------------------- distances

@njit
def _bfs_distances_nb(adj):
    n = adj.shape[0]
    dist = np.full((n, n), -1, dtype=np.int64)
    one = np.int64(1)
    for s in range(n):
        seen = one << s
        frontier = seen
        d = 0
        dist[s, s] = 0
        while frontier != 0:
            d += 1
            nxt = np.int64(0)
            for v in range(n):
                if (frontier >> v) & one:
                    nxt |= adj[v]
            nxt &= ~seen
            for v in range(n):
                if (nxt >> v) & one:
                    dist[s, v] = d
            seen |= nxt
            frontier = nxt
    return dist


def _bfs_distances_py(adj):
    n = len(adj)
    rows = [int(a) for a in adj]
    dist = np.full((n, n), -1, dtype=np.int64)
    for s in range(n):
        seen = frontier = 1 << s
        dist[s, s] = 0
        d = 0
        while frontier:
            d += 1
            nxt = 0
            f = frontier
            while f:
                low = f & -f
                nxt |= rows[low.bit_length() - 1]
                f ^= low
            nxt &= ~seen
            f = nxt
            while f:
                low = f & -f
                dist[s, low.bit_length() - 1] = d
                f ^= low
            seen |= nxt
            frontier = nxt
    return dist


def bfs_distances(adj_masks):
    """All-pairs graphic distance from adjacency bitmasks; ``-1`` = unreachable."""
    adj = np.ascontiguousarray(adj_masks, dtype=np.int64)
    if USE_NUMBA:
        return _bfs_distances_nb(adj)
    return _bfs_distances_py(adj)


# ---------------------------------------------------------- induced paths

@njit
def _induced_paths_nb(adj):
    # longest[x, y] = max number of edges of an induced x-y path, -1 if none
    n = adj.shape[0]
    one = np.int64(1)
    longest = np.full((n, n), -1, dtype=np.int64)
    path = np.zeros(n + 1, dtype=np.int64)
    blocked = np.zeros(n + 1, dtype=np.int64)  # closed nbhds of path[:k-1]
    cand = np.zeros(n + 1, dtype=np.int64)
    for s in range(n):
        longest[s, s] = 0
        path[0] = s
        blocked[0] = one << s  # vertices forbidden for the next extension
        cand[0] = adj[s] & ~(one << s)
        k = 0
        while k >= 0:
            c = cand[k]
            if c == 0:
                k -= 1
                continue
            v = 0
            while not ((c >> v) & one):
                v += 1
            cand[k] = c & ~(one << v)
            k += 1
            path[k] = v
            if k > longest[s, v]:
                longest[s, v] = k
            # everything adjacent to path[0..k-1] or on the path is blocked
            blocked[k] = blocked[k - 1] | adj[path[k - 1]] | (one << v)
            cand[k] = adj[v] & ~blocked[k]
    return longest


def _induced_paths_py(adj):
    n = len(adj)
    rows = [int(a) for a in adj]
    longest = [[-1] * n for _ in range(n)]

    def extend(s, last, k, blocked):
        c = rows[last] & ~blocked
        nb = blocked | rows[last]
        while c:
            low = c & -c
            c ^= low
            v = low.bit_length() - 1
            if k + 1 > longest[s][v]:
                longest[s][v] = k + 1
            extend(s, v, k + 1, nb | low)

    for s in range(n):
        longest[s][s] = 0
        extend(s, s, 0, 1 << s)
    return np.array(longest, dtype=np.int64).reshape(n, n)


def induced_path_lengths(adj_masks):
    """Pairwise detour table: longest induced path (in edges) between x and y."""
    adj = np.ascontiguousarray(adj_masks, dtype=np.int64)
    if adj.shape[0] == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if USE_NUMBA:
        return _induced_paths_nb(adj)
    return _induced_paths_py(adj)


# ------------------------------------------------------------------ modules

@njit
def _module_scan_nb(rows, n):
    total = np.int64(1) << n
    out = np.zeros(total, dtype=np.bool_)
    one = np.int64(1)
    R = rows.shape[0]
    for M in range(1, total):
        ok = True
        for v in range(n):
            if (M >> v) & one:
                continue
            for r in range(R):
                x = rows[r, v] & M
                if x != 0 and x != M:
                    ok = False
                    break
            if not ok:
                break
        out[M] = ok
    return out


def _module_scan_py(rows, n):
    Ms = np.arange(1 << n, dtype=np.int64)
    ok = Ms != 0
    for v in range(n):
        outside = ((Ms >> v) & 1) == 0
        for r in range(rows.shape[0]):
            x = rows[r, v] & Ms
            ok &= ~outside | (x == 0) | (x == Ms)
    return ok


def module_scan(rows, n):
    """Boolean vector over all bitmasks ``M`` of ``n`` vertices: is ``M`` a
    nonempty module?  ``rows[r, v]`` is the ``r``-th neighbourhood mask of v."""
    rows = np.ascontiguousarray(rows, dtype=np.int64)
    if USE_NUMBA:
        return _module_scan_nb(rows, n)
    return _module_scan_py(rows, n)


@njit
def _is_prime_nb(rows, S):
    one = np.int64(1)
    R = rows.shape[0]
    n = rows.shape[1]
    k = 0
    a = -1
    for v in range(n):
        if (S >> v) & one:
            k += 1
            if a < 0:
                a = v
    if k <= 2:
        return True
    # modules containing a: closure of {a, b}
    for b in range(a + 1, n):
        if not ((S >> b) & one):
            continue
        M = (one << a) | (one << b)
        changed = True
        while changed and M != S:
            changed = False
            for v in range(n):
                if not ((S >> v) & one) or ((M >> v) & one):
                    continue
                for r in range(R):
                    x = rows[r, v] & M
                    if x != 0 and x != M:
                        M |= one << v
                        changed = True
                        break
        if M != S:
            return False
    # maximal modules avoiding a: refine S - {a} until no outside vertex splits
    parts = np.zeros(n, dtype=np.int64)
    parts[0] = S & ~(one << a)
    np_ = 1
    changed = True
    while changed:
        changed = False
        for p in range(np_):
            X = parts[p]
            if X & (X - 1) == 0:
                continue
            for v in range(n):
                if not ((S >> v) & one) or ((X >> v) & one):
                    continue
                for r in range(R):
                    X1 = X & rows[r, v]
                    if X1 != 0 and X1 != X:
                        parts[p] = X1
                        parts[np_] = X & ~X1
                        np_ += 1
                        X = X1
                        changed = True
                if X & (X - 1) == 0:
                    break
    for p in range(np_):
        X = parts[p]
        if X & (X - 1) != 0:
            return False
    return True


def _is_prime_py(rows, S):
    rows = [[int(x) for x in row] for row in rows]
    n = len(rows[0]) if rows else 0
    verts = [v for v in range(n) if (S >> v) & 1]
    if len(verts) <= 2:
        return True
    a = verts[0]

    def splits(v, X):
        for row in rows:
            x = row[v] & X
            if x and x != X:
                return row[v]
        return 0

    for b in verts[1:]:
        M = (1 << a) | (1 << b)
        changed = True
        while changed and M != S:
            changed = False
            for v in verts:
                if (M >> v) & 1:
                    continue
                if splits(v, M):
                    M |= 1 << v
                    changed = True
        if M != S:
            return False
    parts = [S & ~(1 << a)]
    while True:
        split = False
        for p, X in enumerate(parts):
            if X & (X - 1) == 0:
                continue
            for v in verts:
                if (X >> v) & 1:
                    continue
                X1 = X & splits(v, X)
                if X1:
                    parts[p] = X1
                    parts.append(X ^ X1)
                    split = True
                    break
            if split:
                break
        if not split:
            break
    return all(X & (X - 1) == 0 for X in parts if X)


def is_prime_subset(rows, subset):
    """Primality of the substructure induced on the bitmask ``subset``."""
    rows = np.ascontiguousarray(rows, dtype=np.int64)
    if USE_NUMBA:
        return bool(_is_prime_nb(rows, np.int64(subset)))
    return _is_prime_py(rows, int(subset))


@njit
def _prime_subsets_nb(rows, min_size):
    n = rows.shape[1]
    total = np.int64(1) << n
    hits = np.zeros(total, dtype=np.bool_)
    for S in range(1, total):
        k = 0
        x = S
        while x:
            x &= x - 1
            k += 1
        if k >= min_size:
            hits[S] = _is_prime_nb(rows, np.int64(S))
    return np.nonzero(hits)[0]


def prime_subsets(rows, min_size=1):
    """Bitmasks of every vertex subset (size >= ``min_size``) inducing a prime
    substructure."""
    rows = np.ascontiguousarray(rows, dtype=np.int64)
    n = rows.shape[1]
    if USE_NUMBA:
        return [int(s) for s in _prime_subsets_nb(rows, min_size)]
    out = []
    for S in range(1, 1 << n):
        if S.bit_count() >= min_size and _is_prime_py(rows, S):
            out.append(S)
    return out


# ------------------------------------------------------- colour refinement

@njit
def _row_less(sig, a, b):
    for k in range(sig.shape[1]):
        if sig[a, k] != sig[b, k]:
            return sig[a, k] < sig[b, k]
    return False


@njit
def _refine_nb(pair, colors):
    n = pair.shape[0]
    colors = colors.copy()
    seen = np.zeros(n + 1, dtype=np.bool_)
    count = 0
    for v in range(n):
        if not seen[colors[v]]:
            seen[colors[v]] = True
            count += 1
    sig = np.empty((n, n + 1), dtype=np.int64)
    idx = np.empty(n, dtype=np.int64)
    while True:
        for v in range(n):
            sig[v, 0] = colors[v]
            for w in range(n):
                sig[v, w + 1] = -1 if w == v else pair[v, w] * n + colors[w]
            sig[v, 1:] = np.sort(sig[v, 1:])
        for v in range(n):
            idx[v] = v
        for i in range(1, n):
            j = i
            while j > 0 and _row_less(sig, idx[j], idx[j - 1]):
                t = idx[j]
                idx[j] = idx[j - 1]
                idx[j - 1] = t
                j -= 1
        rank = 0
        colors[idx[0]] = 0
        for i in range(1, n):
            if _row_less(sig, idx[i - 1], idx[i]):
                rank += 1
            colors[idx[i]] = rank
        if rank + 1 == count:
            return colors
        count = rank + 1


def _refine_py(pair, colors):
    n = pair.shape[0]
    count = len(np.unique(colors))
    while True:
        keys = pair * n + colors[None, :]
        np.fill_diagonal(keys, -1)
        keys.sort(axis=1)
        sig = np.concatenate([colors[:, None], keys], axis=1)
        _, colors = np.unique(sig, axis=0, return_inverse=True)
        colors = colors.reshape(-1).astype(np.int64)
        new = int(colors.max()) + 1
        if new == count:
            return colors
        count = new


def refine_colours(pair, colors):
    """Equitable refinement of a vertex colouring (colours ``0..k-1``).

    ``pair[v, w]`` is an integer code for the ordered pair ``(v, w)``; new
    colours are ranks of ``(colour, sorted multiset of (pair, colour))``
    signatures, so the result is isomorphism invariant.
    """
    pair = np.ascontiguousarray(pair, dtype=np.int64)
    colors = np.ascontiguousarray(colors, dtype=np.int64)
    if pair.shape[0] == 0:
        return colors
    if USE_NUMBA:
        return _refine_nb(pair, colors)
    return _refine_py(pair, colors)
