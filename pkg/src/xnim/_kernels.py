"""Numba kernels for layered retrograde solving.

The solver walks stone-sum layers upward; every move strictly lowers the
stone sum, so each layer only consults finished ones.  Losing positions
are indexed by the untouched part of a move: an entry keyed by the rank
of the n-j piles a j-pile move leaves alone stores the j replaced values
(sorted) plus the position's remoteness.  A position then has a move into
the indexed set iff some j-subset of its piles matches an entry key and
dominates the stored values componentwise (for sorted tuples, a strictly
dominating assignment exists exactly when the sorted values dominate).

All kernels are deterministic under any thread count: parallel loops
write only to their own row and perform no cross-iteration reductions.
"""

from __future__ import annotations

import numpy as np
from numba import njit, prange

BIG = np.int64(1) << np.int64(62)


@njit(cache=True)
def fill_layer(n, bound, total, out, store):
    """Enumerate canonical n-tuples with entries <= bound summing to total.

    Rows are produced in colexicographic (hence rank) order.  When store
    is False only the count is computed; out may then be any 2-d int64
    array.  Returns the number of rows in the layer.
    """
    x = np.zeros(n, np.int64)
    v = np.full(n, -1, np.int64)
    rem = np.zeros(n, np.int64)
    cap = np.zeros(n, np.int64)
    rem[n - 1] = total
    cap[n - 1] = bound
    idx = 0
    d = n - 1
    while True:
        r = rem[d]
        c = cap[d]
        if v[d] < 0:
            v[d] = (r + d) // (d + 1)  # smallest feasible digit: ceil(r/(d+1))
        else:
            v[d] += 1
        hi = c if c < r else r
        if v[d] > hi:
            v[d] = -1
            d += 1
            if d >= n:
                break
            continue
        x[d] = v[d]
        if d == 0:
            if store:
                for i in range(n):
                    out[idx, i] = x[i]
            idx += 1
        else:
            rem[d - 1] = r - v[d]
            cap[d - 1] = v[d]
            d -= 1
    return idx


@njit(cache=True, parallel=True)
def scan_layer(pos, sel, comp, binom, starts, ent_vals, ent_rem, want_rem, hit, minrem):
    """Mark rows of pos that have a move into the indexed position set.

    sel/comp hold the index subsets of one arity (sel: removed columns,
    comp: kept columns, both ascending).  starts/ent_vals/ent_rem form a
    CSR bucket table keyed by the rank of the kept values.  hit is OR-ed
    into; when want_rem, minrem folds in the minimum entry remoteness.
    """
    m = pos.shape[0]
    nsub = sel.shape[0]
    j = sel.shape[1]
    nc = comp.shape[1]
    for t in prange(m):
        found = False
        best = BIG
        for si in range(nsub):
            key = np.int64(0)
            for ci in range(nc):
                key += binom[pos[t, comp[si, ci]] + ci, ci + 1]
            for e in range(starts[key], starts[key + 1]):
                ok = True
                for ji in range(j):
                    if ent_vals[e, ji] >= pos[t, sel[si, ji]]:
                        ok = False
                        break
                if ok:
                    found = True
                    if want_rem:
                        rr = np.int64(ent_rem[e])
                        if rr < best:
                            best = rr
                    else:
                        break
            if found and not want_rem:
                break
        if found:
            hit[t] = 1
            if want_rem and best < minrem[t]:
                minrem[t] = best


@njit(cache=True, parallel=True)
def prem_layer(pos, sel, comp, binom, rem, best):
    """Fold the maximum successor remoteness of one arity into best.

    Enumerates every replacement of the sel piles by strictly smaller
    values, ranks the resulting position, and gathers its remoteness.
    Subsets repeating an earlier removed-value profile are skipped; they
    generate the same successor set.
    """
    m = pos.shape[0]
    n = pos.shape[1]
    nsub = sel.shape[0]
    j = sel.shape[1]
    nc = comp.shape[1]
    for t in prange(m):
        bb = best[t]
        scratch = np.empty(n, np.int64)
        digits = np.empty(j, np.int64)
        for si in range(nsub):
            dup = False
            for s2 in range(si):
                same = True
                for ji in range(j):
                    if pos[t, sel[si, ji]] != pos[t, sel[s2, ji]]:
                        same = False
                        break
                if same:
                    dup = True
                    break
            if dup:
                continue
            feasible = True
            for ji in range(j):
                if pos[t, sel[si, ji]] == 0:
                    feasible = False
                    break
            if not feasible:
                continue
            for ji in range(j):
                digits[ji] = 0
            while True:
                for ci in range(nc):
                    scratch[ci] = pos[t, comp[si, ci]]
                for ji in range(j):
                    scratch[nc + ji] = digits[ji]
                for a in range(1, n):
                    keyv = scratch[a]
                    b = a - 1
                    while b >= 0 and scratch[b] > keyv:
                        scratch[b + 1] = scratch[b]
                        b -= 1
                    scratch[b + 1] = keyv
                rk = np.int64(0)
                for i in range(n):
                    rk += binom[scratch[i] + i, i + 1]
                rr = np.int64(rem[rk])
                if rr > bb:
                    bb = rr
                ji = 0
                while ji < j:
                    digits[ji] += 1
                    if digits[ji] < pos[t, sel[si, ji]]:
                        break
                    digits[ji] = 0
                    ji += 1
                if ji == j:
                    break
        best[t] = bb


@njit(cache=True, parallel=True)
def mask_hit(pos, sel, comp, binom, mask, out):
    """Set out[t] when some move of this arity from pos[t] lands in mask.

    mask is a per-rank byte array over the full position space.  Rows
    whose out flag is already set are skipped, so arities accumulate.
    """
    m = pos.shape[0]
    n = pos.shape[1]
    nsub = sel.shape[0]
    j = sel.shape[1]
    nc = comp.shape[1]
    for t in prange(m):
        if out[t] != 0:
            continue
        scratch = np.empty(n, np.int64)
        digits = np.empty(j, np.int64)
        found = False
        for si in range(nsub):
            if found:
                break
            dup = False
            for s2 in range(si):
                same = True
                for ji in range(j):
                    if pos[t, sel[si, ji]] != pos[t, sel[s2, ji]]:
                        same = False
                        break
                if same:
                    dup = True
                    break
            if dup:
                continue
            feasible = True
            for ji in range(j):
                if pos[t, sel[si, ji]] == 0:
                    feasible = False
                    break
            if not feasible:
                continue
            for ji in range(j):
                digits[ji] = 0
            while True:
                for ci in range(nc):
                    scratch[ci] = pos[t, comp[si, ci]]
                for ji in range(j):
                    scratch[nc + ji] = digits[ji]
                for a in range(1, n):
                    keyv = scratch[a]
                    b = a - 1
                    while b >= 0 and scratch[b] > keyv:
                        scratch[b + 1] = scratch[b]
                        b -= 1
                    scratch[b + 1] = keyv
                rk = np.int64(0)
                for i in range(n):
                    rk += binom[scratch[i] + i, i + 1]
                if mask[rk] != 0:
                    found = True
                    break
                ji = 0
                while ji < j:
                    digits[ji] += 1
                    if digits[ji] < pos[t, sel[si, ji]]:
                        break
                    digits[ji] = 0
                    ji += 1
                if ji == j:
                    break
        if found:
            out[t] = 1


@njit(cache=True, parallel=True)
def unrank_many(ranks, n, bound, binom, out):
    """Decode combinatorial ranks into canonical rows of out."""
    for t in prange(ranks.shape[0]):
        r = ranks[t]
        cap = bound
        for i in range(n, 0, -1):
            lo = np.int64(0)
            hi = np.int64(cap)
            while lo < hi:
                mid = (lo + hi + 1) // 2
                if binom[mid + i - 1, i] <= r:
                    lo = mid
                else:
                    hi = mid - 1
            out[t, i - 1] = lo
            r -= binom[lo + i - 1, i]
            cap = lo
