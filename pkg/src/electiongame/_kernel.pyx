# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled subset-search kernel.

Mirrors `electiongame._kernel_py.search_subsets` exactly (same node order,
same node counts); the hot depth-first loop runs without the GIL.
"""

from libc.stdlib cimport malloc, free

import numpy as np

cdef long long NEG_INF = -(2**62)


cdef bint _dfs(int start, int r, int depth, int d, int m, int lo, int hi,
               bint prune, long long* margin, long long* thresh,
               long long* gain, long long* suf, int* chosen,
               long long* nodes) nogil:
    cdef int i, c, first, last
    cdef bint feasible
    cdef long long* gi
    cdef long long* sn
    if r == 0:
        for c in range(m):
            if margin[c] < thresh[c]:
                return False
        return True
    last = d - r
    first = start
    if depth == 0:
        if lo > first:
            first = lo
        if hi - 1 < last:
            last = hi - 1
    for i in range(first, last + 1):
        nodes[0] += 1
        gi = gain + i * m
        for c in range(m):
            margin[c] += gi[c]
        feasible = True
        if prune:
            sn = suf + (i + 1) * m
            for c in range(m):
                if margin[c] + sn[c] < thresh[c]:
                    feasible = False
                    break
        if feasible:
            chosen[depth] = i
            if _dfs(i + 1, r - 1, depth + 1, d, m, lo, hi, prune,
                    margin, thresh, gain, suf, chosen, nodes):
                return True
        for c in range(m):
            margin[c] -= gi[c]
    return False


def search_subsets(base, deltas, target, rank, size, lo=0, hi=None, prune=True):
    """See `electiongame._kernel_py.search_subsets`."""
    cdef const long long[::1] base_v = np.ascontiguousarray(base, dtype=np.int64)
    cdef const long long[:, ::1] deltas_v = np.ascontiguousarray(deltas, dtype=np.int64).reshape(
        len(deltas), -1) if len(deltas) else np.zeros((0, len(base_v)), dtype=np.int64)
    cdef const long long[::1] rank_v = np.ascontiguousarray(rank, dtype=np.int64)
    cdef int d = deltas_v.shape[0]
    cdef int m = base_v.shape[0]
    cdef int t = target
    cdef int c_size = size
    cdef int c_lo = lo
    cdef int c_hi = d if hi is None else hi
    cdef bint c_prune = prune
    cdef int i, c
    cdef long long g
    cdef long long nodes = 0
    cdef bint found

    margin_a = np.empty(m, dtype=np.int64)
    thresh_a = np.empty(m, dtype=np.int64)
    cdef long long[::1] margin = margin_a
    cdef long long[::1] thresh = thresh_a
    for c in range(m):
        margin[c] = base_v[t] - base_v[c]
        thresh[c] = 1 if rank_v[c] < rank_v[t] else 0
    thresh[t] = NEG_INF

    if c_size == 0:
        if c_lo > 0:
            return None, 0
        for c in range(m):
            if margin[c] < thresh[c]:
                return None, 1
        return (), 1
    if c_size > d:
        return None, 0

    gain_a = np.empty((d, m), dtype=np.int64)
    suf_a = np.zeros((d + 1, m), dtype=np.int64)
    cdef long long[:, ::1] gain = gain_a
    cdef long long[:, ::1] suf = suf_a
    for i in range(d):
        for c in range(m):
            gain[i, c] = deltas_v[i, t] - deltas_v[i, c]
    for i in range(d - 1, -1, -1):
        for c in range(m):
            g = gain[i, c]
            suf[i, c] = suf[i + 1, c] + (g if g > 0 else 0)

    chosen_a = np.zeros(c_size, dtype=np.int32)
    cdef int[::1] chosen = chosen_a

    with nogil:
        found = _dfs(0, c_size, 0, d, m, c_lo, c_hi, c_prune,
                     &margin[0], &thresh[0], &gain[0, 0], &suf[0, 0],
                     &chosen[0], &nodes)
    if found:
        return tuple(int(x) for x in chosen_a), int(nodes)
    return None, int(nodes)
