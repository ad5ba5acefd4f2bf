"""Pure-Python subset-search kernel.

Fallback for the compiled extension `electiongame._kernel`; both expose the
same `search_subsets` contract and must visit nodes in the same order so
solver output and statistics are kernel-independent.
"""

from __future__ import annotations

NEG_INF = -(2**62)


def search_subsets(base, deltas, target, rank, size, lo=0, hi=None, prune=True):
    """Find the lexicographically least subset of exactly `size` delta rows
    whose sum, added to `base`, makes `target` beat every other candidate.

    base:   per-candidate scores with no rows applied (length m).
    deltas: d rows of per-candidate score changes.
    rank:   tie-break ranks (smaller = favored).
    lo/hi:  restrict the first chosen index to [lo, hi); used for
            partitioning the search across workers.

    Returns (subset tuple | None, nodes visited).  Pruning uses per-rival
    suffix bounds and never changes the outcome.
    """
    d = len(deltas)
    m = len(base)
    if hi is None:
        hi = d
    base = [int(x) for x in base]
    rows = [[int(x) for x in row] for row in deltas]
    rank = [int(x) for x in rank]

    # margin[c] = score(target) - score(c); target beats c iff margin >= thresh[c]
    margin = [base[target] - base[c] for c in range(m)]
    thresh = [1 if rank[c] < rank[target] else 0 for c in range(m)]
    thresh[target] = NEG_INF

    if size == 0:
        if lo > 0:
            return None, 0
        ok = all(margin[c] >= thresh[c] for c in range(m))
        return ((), 1) if ok else (None, 1)
    if size > d:
        return None, 0

    gain = [[row[target] - row[c] for c in range(m)] for row in rows]
    # suf[j][c]: sum of positive margin gains available from rows j..d-1
    suf = [[0] * m for _ in range(d + 1)]
    for j in range(d - 1, -1, -1):
        gj, s_next, s_here = gain[j], suf[j + 1], suf[j]
        for c in range(m):
            g = gj[c]
            s_here[c] = s_next[c] + (g if g > 0 else 0)

    nodes = 0
    chosen = [0] * size

    def rec(start: int, r: int, depth: int) -> bool:
        nonlocal nodes
        if r == 0:
            return all(margin[c] >= thresh[c] for c in range(m))
        last = d - r
        first = start
        if depth == 0:
            first = max(first, lo)
            last = min(last, hi - 1)
        for i in range(first, last + 1):
            nodes += 1
            gi = gain[i]
            for c in range(m):
                margin[c] += gi[c]
            feasible = True
            if prune:
                sn = suf[i + 1]
                for c in range(m):
                    if margin[c] + sn[c] < thresh[c]:
                        feasible = False
                        break
            if feasible:
                chosen[depth] = i
                if rec(i + 1, r - 1, depth + 1):
                    return True
            for c in range(m):
                margin[c] -= gi[c]
        return False

    if rec(0, size, 0):
        return tuple(chosen), nodes
    return None, nodes
