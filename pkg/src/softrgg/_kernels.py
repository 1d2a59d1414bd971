"""Numba kernels for the pair-coupled edge sampling hot paths.

Every edge decision in the package goes through the same keyed hash
(`pair uniform`): a splitmix64-style finalizer chain over
(master_seed, stream_id, i, j) with i < j in sorted-position order.
All enumeration strategies below therefore realize the *same* edge set
for the same seed, which is what makes the lazy, naive and bulk
longest-edge extractors exactly interchangeable.

Kernels are compiled with ``nogil=True`` so replication workers can run
them concurrently from a thread pool.
"""

from __future__ import annotations

import numpy as np
from numba import njit

U64 = np.uint64

_GOLDEN = U64(0x9E3779B97F4A7C15)
_MIX1 = U64(0xBF58476D1CE4E5B9)
_MIX2 = U64(0x94D049BB133111EB)
_INV_2_53 = 1.0 / 9007199254740992.0  # 2**-53

# connection-function form codes (mirrored in connection.py)
CAPPED_POWER = 0
EXP_FORM = 1
HARD_THRESHOLD = 2
ALWAYS_ONE = 3
ALWAYS_ZERO = 4


@njit(cache=True, inline="always")
def _mix64(z):
    z = (z ^ (z >> U64(30))) * _MIX1
    z = (z ^ (z >> U64(27))) * _MIX2
    return z ^ (z >> U64(31))


@njit(cache=True, inline="always")
def _stream_key(master, stream):
    # per-replication base key; hoisted out of pair loops
    return _mix64(_mix64(master + _GOLDEN) ^ stream)


@njit(cache=True, inline="always")
def _pair_u_from_key(key, lo, hi):
    z = _mix64(_mix64(key ^ lo) ^ hi)
    return (z >> U64(11)) * _INV_2_53


@njit(cache=True)
def pair_uniform_kernel(master, stream, lo, hi):
    return _pair_u_from_key(_stream_key(U64(master), U64(stream)), U64(lo), U64(hi))


@njit(cache=True)
def pair_uniform_batch(master, stream, lo_arr, hi_arr):
    key = _stream_key(U64(master), U64(stream))
    out = np.empty(lo_arr.shape[0], np.float64)
    for k in range(lo_arr.shape[0]):
        out[k] = _pair_u_from_key(key, U64(lo_arr[k]), U64(hi_arr[k]))
    return out


@njit(cache=True, inline="always")
def _g_eval(form, alpha, radius, d):
    # d > 0 in every kernel call (positions are strictly increasing)
    if form == 0:  # capped power: min(1, d^-alpha)
        if d <= 1.0:
            return 1.0
        return d ** (-alpha)
    elif form == 1:  # 1 - exp(-d^-alpha)
        return -np.expm1(-(d ** (-alpha)))
    elif form == 2:  # hard threshold (Gilbert graph)
        return 1.0 if d <= radius else 0.0
    elif form == 3:
        return 1.0
    return 0.0


@njit(cache=True, inline="always")
def _g_sup(form, alpha, radius, c):
    # upper bound of g over distances strictly greater than c >= 0;
    # used for a cheap per-pair rejection before the exact evaluation
    if form == 0 or form == 1:
        if c <= 1.0:
            return 1.0
        return c ** (-alpha)  # 1 - exp(-u) <= u covers the exp form
    elif form == 2:
        return 1.0 if c < radius else 0.0
    elif form == 3:
        return 1.0
    return 0.0


# ---------------------------------------------------------------------------
# max-heap over index pairs, priority (distance desc, i asc, j asc)
# ---------------------------------------------------------------------------


@njit(cache=True, inline="always")
def _before(da, ia, ja, db, ib, jb):
    if da != db:
        return da > db
    if ia != ib:
        return ia < ib
    return ja < jb


@njit(cache=True)
def _heap_push(hd, hi, hj, size, d, i, j):
    k = size
    hd[k] = d
    hi[k] = i
    hj[k] = j
    while k > 0:
        p = (k - 1) // 2
        if _before(hd[k], hi[k], hj[k], hd[p], hi[p], hj[p]):
            hd[k], hd[p] = hd[p], hd[k]
            hi[k], hi[p] = hi[p], hi[k]
            hj[k], hj[p] = hj[p], hj[k]
            k = p
        else:
            break
    return size + 1


@njit(cache=True)
def _heap_pop(hd, hi, hj, size):
    # caller has read the root; returns the new size
    size -= 1
    hd[0] = hd[size]
    hi[0] = hi[size]
    hj[0] = hj[size]
    k = 0
    while True:
        l = 2 * k + 1
        if l >= size:
            break
        b = l
        rgt = l + 1
        if rgt < size and _before(hd[rgt], hi[rgt], hj[rgt], hd[l], hi[l], hj[l]):
            b = rgt
        if _before(hd[b], hi[b], hj[b], hd[k], hi[k], hj[k]):
            hd[k], hd[b] = hd[b], hd[k]
            hi[k], hi[b] = hi[b], hi[k]
            hj[k], hj[b] = hj[b], hj[k]
            k = b
        else:
            break
    return size


@njit(cache=True, nogil=True)
def longest_edge_lazy_kernel(pos, master, stream, form, alpha, radius, check_order):
    """Largest-first pair enumeration; stops at the first realized edge.

    Pairs are generated from (0, K-1) by the unique-parent rule:
    popping (i, j) emits (i+1, j) always and (0, j-1) only when i == 0.
    Each pair then enters the heap exactly once, so no visited set is
    needed, and the pop order is (distance desc, i asc, j asc).

    Returns (length, i, j, pairs_examined, order_ok); length < 0 means
    no edge exists.
    """
    K = pos.shape[0]
    examined = 0
    order_ok = 1
    if K < 2:
        return -1.0, -1, -1, examined, order_ok
    key = _stream_key(U64(master), U64(stream))
    hd = np.empty(K, np.float64)
    hi = np.empty(K, np.int64)
    hj = np.empty(K, np.int64)
    size = _heap_push(hd, hi, hj, 0, pos[K - 1] - pos[0], 0, K - 1)
    prev = np.inf
    while size > 0:
        d = hd[0]
        i = hi[0]
        j = hj[0]
        size = _heap_pop(hd, hi, hj, size)
        examined += 1
        if check_order and d > prev:
            order_ok = 0
        prev = d
        u = _pair_u_from_key(key, U64(i), U64(j))
        if u <= _g_eval(form, alpha, radius, d):
            return d, i, j, examined, order_ok
        if i + 1 < j:
            size = _heap_push(hd, hi, hj, size, pos[j] - pos[i + 1], i + 1, j)
        if i == 0 and j - 1 > 0:
            size = _heap_push(hd, hi, hj, size, pos[j - 1] - pos[0], 0, j - 1)
    return -1.0, -1, -1, examined, order_ok


@njit(cache=True, nogil=True)
def longest_edge_naive_kernel(pos, master, stream, form, alpha, radius):
    """Brute-force oracle: decide every pair, return the longest edge."""
    K = pos.shape[0]
    key = _stream_key(U64(master), U64(stream))
    best = -1.0
    bi = -1
    bj = -1
    examined = 0
    for i in range(K - 1):
        for j in range(i + 1, K):
            examined += 1
            d = pos[j] - pos[i]
            u = _pair_u_from_key(key, U64(i), U64(j))
            if u <= _g_eval(form, alpha, radius, d) and d > best:
                best = d
                bi = i
                bj = j
    return best, bi, bj, examined


@njit(cache=True, nogil=True)
def longest_edge_bulk_kernel(pos, master, stream, form, alpha, radius):
    """Longest edge by descending-cutoff block scans.

    Examines pairs in distance annuli (c_next, c], widening the annulus
    geometrically until a realized edge is found, and rejects most pairs
    with a single hash compare against sup g on the annulus.  Decisions
    are keyed exactly as in the lazy/naive kernels, so the returned edge
    is identical to theirs; only pairs_examined differs.
    """
    K = pos.shape[0]
    if K < 2:
        return -1.0, -1, -1, 0
    key = _stream_key(U64(master), U64(stream))
    examined = 0
    nxt = np.empty(K - 1, np.int64)  # largest not-yet-examined j per i
    for i in range(K - 1):
        nxt[i] = K - 1
    d_max = pos[K - 1] - pos[0]
    c = d_max - 8.0 * d_max / K  # first annulus: a few mean spacings
    if c < 0.0:
        c = 0.0
    best = -1.0
    bi = -1
    bj = -1
    while True:
        gsup = _g_sup(form, alpha, radius, c)
        for i in range(K - 1):
            j = nxt[i]
            while j > i and pos[j] - pos[i] > c:
                examined += 1
                u = _pair_u_from_key(key, U64(i), U64(j))
                if u <= gsup:
                    d = pos[j] - pos[i]
                    if u <= _g_eval(form, alpha, radius, d):
                        if d > best or (
                            d == best and (i < bi or (i == bi and j < bj))
                        ):
                            best = d
                            bi = i
                            bj = j
                j -= 1
            nxt[i] = j
        if best >= 0.0:
            return best, bi, bj, examined
        if c <= 0.0:
            return -1.0, -1, -1, examined
        # widen: double the gap from d_max, but never drop below c/2
        nc = 2.0 * c - d_max
        if nc < 0.5 * c:
            nc = 0.5 * c
        if nc <= d_max * 1e-12:
            nc = 0.0
        c = nc


@njit(cache=True, nogil=True)
def count_exceedances_kernel(pos, master, stream, form, alpha, radius, r):
    """Number of realized edges strictly longer than r."""
    K = pos.shape[0]
    key = _stream_key(U64(master), U64(stream))
    gsup = _g_sup(form, alpha, radius, r)
    count = 0
    examined = 0
    for i in range(K - 1):
        j = K - 1
        while j > i and pos[j] - pos[i] > r:
            examined += 1
            u = _pair_u_from_key(key, U64(i), U64(j))
            if u <= gsup:
                d = pos[j] - pos[i]
                if u <= _g_eval(form, alpha, radius, d):
                    count += 1
            j -= 1
    return count, examined
