"""Optional fixed-width global-count kernel (numba JIT).

Accumulates in 64-bit integers with mandatory overflow detection: any
wraparound raises CounterOverflowError instead of returning a wrong
count. Subproblem masks live in a single int64 word, so the kernel only
applies when the degeneracy is at most MAX_ALPHA; callers fall back to
the exact engine otherwise. Results within range are identical to the
exact engine's.
"""

from __future__ import annotations

import numpy as np

from .errors import CounterOverflowError

MAX_ALPHA = 62

try:
    from numba import njit
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is an optional extra
    HAVE_NUMBA = False

    def njit(*args, **kwargs):  # pragma: no cover
        def wrap(fn):
            return fn
        return wrap


@njit(cache=True)
def _kernel(out_offsets, out_targets, roots, counts, local_index, binomial,
            max_hold):
    # max_hold <= 0 means unlimited. Returns (nodes, leaves, depth, overflow).
    # Overflow is checked by headroom before each add (post-add wraparound
    # tests are signed-overflow UB and get folded away by the compiler);
    # counters therefore never hold a wrapped value.
    one = np.int64(1)
    int64_max = np.int64(0x7FFFFFFFFFFFFFFF)
    nodes = np.int64(0)
    leaves = np.int64(0)
    max_depth = np.int64(0)
    overflow = False
    width = binomial.shape[0]  # alpha + 2
    rows = np.zeros(width, dtype=np.int64)
    stack_mask = np.zeros(width * width + 2, dtype=np.int64)
    stack_h = np.zeros(width * width + 2, dtype=np.int64)
    stack_p = np.zeros(width * width + 2, dtype=np.int64)
    for r in range(roots.shape[0]):
        v = roots[r]
        lo = out_offsets[v]
        s = np.int64(out_offsets[v + 1] - lo)
        if s == 0:
            nodes += 1
            leaves += 1
            if counts[1] == int64_max:
                overflow = True
            else:
                counts[1] += 1
            if max_depth < 1:
                max_depth = 1
            continue
        for j in range(s):
            local_index[out_targets[lo + j]] = j
            rows[j] = 0
        for j in range(s):
            u = out_targets[lo + j]
            for t in range(out_offsets[u], out_offsets[u + 1]):
                jj = local_index[out_targets[t]]
                if jj >= 0:
                    rows[j] |= one << jj
                    rows[jj] |= one << j
        for j in range(s):
            local_index[out_targets[lo + j]] = -1
        top = 0
        stack_mask[top] = (one << s) - 1
        stack_h[top] = 1
        stack_p[top] = 0
        top += 1
        while top > 0:
            top -= 1
            mask = stack_mask[top]
            h = stack_h[top]
            p = stack_p[top]
            nodes += 1
            if mask == 0:
                leaves += 1
                if h + p > max_depth:
                    max_depth = h + p
                for i in range(p + 1):
                    inc = binomial[p, i]
                    if counts[h + i] > int64_max - inc:
                        overflow = True
                    else:
                        counts[h + i] += inc
                continue
            m = mask
            best = np.int64(-1)
            best_deg = np.int64(-1)
            best_row = np.int64(0)
            while m != 0:
                low = m & (-m)
                i = np.int64(0)
                t = low
                while t > 1:
                    t >>= 1
                    i += 1
                row = rows[i] & mask
                d = np.int64(0)
                t = row
                while t != 0:
                    t &= t - 1
                    d += 1
                if d > best_deg:
                    best = i
                    best_deg = d
                    best_row = row
                m ^= low
            if max_hold <= 0 or h < max_hold:
                m = mask & ~(best_row | (one << best))
                dropped = np.int64(0)
                while m != 0:
                    low = m & (-m)
                    i = np.int64(0)
                    t = low
                    while t > 1:
                        t >>= 1
                        i += 1
                    stack_mask[top] = rows[i] & mask & ~dropped
                    stack_h[top] = h + 1
                    stack_p[top] = p
                    top += 1
                    dropped |= low
                    m ^= low
            stack_mask[top] = best_row
            stack_h[top] = h
            stack_p[top] = p + 1
            top += 1
    return nodes, leaves, max_depth, overflow


def usable(alpha: int) -> bool:
    return HAVE_NUMBA and alpha <= MAX_ALPHA


def prepare(orientation):
    """Kernel-ready CSR arrays; share these across repeated calls."""
    return (np.ascontiguousarray(orientation.out_offsets, dtype=np.int64),
            np.ascontiguousarray(orientation.out_targets, dtype=np.int64))


def count_global(orientation, roots=None, max_hold=None, prepared=None):
    """Run the fixed-width kernel; returns (counts list, nodes, leaves, depth).

    ``roots`` defaults to all vertices. Raises CounterOverflowError if any
    64-bit accumulator wraps.
    """
    alpha = orientation.alpha
    if not usable(alpha):
        raise RuntimeError(
            f"fast counters need numba and alpha <= {MAX_ALPHA} (alpha={alpha})")
    n = orientation.n
    if roots is None:
        roots = np.arange(n, dtype=np.int64)
    else:
        roots = np.asarray(roots, dtype=np.int64)
    counts = np.zeros(alpha + 2, dtype=np.int64)
    local_index = np.full(n, -1, dtype=np.int64)
    binomial = np.zeros((alpha + 2, alpha + 2), dtype=np.int64)
    for r in range(alpha + 2):
        binomial[r, 0] = 1
        for i in range(1, r + 1):
            binomial[r, i] = binomial[r - 1, i - 1] + binomial[r - 1, i]
    out_offsets, out_targets = prepared if prepared is not None else prepare(orientation)
    nodes, leaves, depth, overflow = _kernel(
        out_offsets, out_targets, roots, counts, local_index, binomial,
        np.int64(max_hold if max_hold is not None else 0))
    if overflow:
        raise CounterOverflowError()
    return [int(c) for c in counts], int(nodes), int(leaves), int(depth)


def warm_up() -> bool:
    """Compile the kernel ahead of use (e.g. before forking workers)."""
    if not HAVE_NUMBA:
        return False
    _kernel(np.zeros(1, dtype=np.int64), np.zeros(0, dtype=np.int64),
            np.zeros(0, dtype=np.int64), np.zeros(2, dtype=np.int64),
            np.zeros(0, dtype=np.int64), np.zeros((2, 2), dtype=np.int64),
            np.int64(0))
    return True
