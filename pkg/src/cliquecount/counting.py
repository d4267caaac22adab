"""Clique-count accumulation from clique-tree leaves.

Every leaf of the clique tree contributes binomial-weighted increments:
a path with hold set H and pivot set P represents C(|P|, i) cliques of
size |H| + i for each i, and membership of a vertex or edge in H versus P
decides which binomial row applies. Counters are exact Python integers by
default; a fixed-width checked mode is available for speed on graphs
whose counts fit 64 bits.
"""

from __future__ import annotations

import logging
from typing import Sequence

from .degeneracy import DegeneracyOrientation, degeneracy_orient
from .errors import CounterOverflowError
from .graph import Graph
from .sct import TraversalStats, traverse

log = logging.getLogger(__name__)

# Envelope of the fixed-width counter mode (signed 64-bit range).
FAST_COUNTER_MAX = 2 ** 63 - 1

EXACT = "exact"
FAST = "fast"


def pascal_rows(limit: int) -> list[list[int]]:
    """Rows 0..limit of Pascal's triangle, as exact integers."""
    rows = [[1]]
    for r in range(1, limit + 1):
        prev = rows[-1]
        rows.append([1] + [prev[i - 1] + prev[i] for i in range(1, r)] + [1])
    return rows


class CountTables:
    """Global, per-vertex, and per-edge k-clique counts.

    ``global_counts[k]`` is the number of k-cliques; the list is sized to
    the largest k ever touched. Per-vertex tables mirror that layout per
    vertex. Per-edge tables are keyed by position in the canonical edge
    order (u < v, ascending) and start at k = 2, the smallest clique an
    edge can be part of.
    """

    __slots__ = ("n", "global_counts", "per_vertex", "per_edge",
                 "edge_keys", "edge_index", "counter_bound", "stats", "alpha")

    def __init__(self, graph: Graph, per_vertex=False, per_edge=False,
                 counter_bound=None):
        self.n = graph.n
        self.global_counts: list[int] = [0]
        self.per_vertex = [[] for _ in range(graph.n)] if per_vertex else None
        if per_edge:
            self.edge_keys = list(graph.edges())
            self.edge_index = {e: i for i, e in enumerate(self.edge_keys)}
            self.per_edge = [[] for _ in self.edge_keys]
        else:
            self.edge_keys = None
            self.edge_index = None
            self.per_edge = None
        self.counter_bound = counter_bound
        self.stats: TraversalStats | None = None
        self.alpha: int | None = None

    # -- queries ---------------------------------------------------------

    def global_count(self, k: int) -> int:
        if 0 <= k < len(self.global_counts):
            return self.global_counts[k]
        return 0

    def vertex_count(self, v: int, k: int) -> int:
        row = self.per_vertex[v]
        return row[k] if k < len(row) else 0

    def edge_count(self, u: int, v: int, k: int) -> int:
        if u > v:
            u, v = v, u
        row = self.per_edge[self.edge_index[(u, v)]]
        i = k - 2
        return row[i] if 0 <= i < len(row) else 0

    def max_clique_size(self) -> int:
        for k in range(len(self.global_counts) - 1, 0, -1):
            if self.global_counts[k]:
                return k
        return 0

    def global_nonzero(self) -> dict[int, int]:
        return {k: c for k, c in enumerate(self.global_counts) if c and k > 0}

    # -- mutation --------------------------------------------------------

    def _bump_global(self, k: int, amount: int) -> None:
        tbl = self.global_counts
        while len(tbl) <= k:
            tbl.append(0)
        tbl[k] += amount

    def _bump_vertex(self, v: int, k: int, amount: int) -> None:
        row = self.per_vertex[v]
        while len(row) <= k:
            row.append(0)
        row[k] += amount

    def _bump_edge(self, u: int, v: int, k: int, amount: int) -> None:
        if u > v:
            u, v = v, u
        row = self.per_edge[self.edge_index[(u, v)]]
        i = k - 2
        while len(row) <= i:
            row.append(0)
        row[i] += amount

    def _trim(self, max_k: int | None) -> None:
        """Drop truncation garbage past max_k, then trailing zeros."""
        if max_k is not None:
            del self.global_counts[max_k + 1:]
        while len(self.global_counts) > 1 and self.global_counts[-1] == 0:
            self.global_counts.pop()
        if self.per_vertex is not None and max_k is not None:
            for row in self.per_vertex:
                del row[max_k + 1:]
        if self.per_edge is not None and max_k is not None:
            for row in self.per_edge:
                del row[max_k - 1:]

    def _enforce_bound(self) -> None:
        bound = self.counter_bound
        if bound is None:
            return
        if any(c > bound for c in self.global_counts):
            raise CounterOverflowError()
        if self.per_vertex is not None:
            for row in self.per_vertex:
                if any(c > bound for c in row):
                    raise CounterOverflowError()
        if self.per_edge is not None:
            for row in self.per_edge:
                if any(c > bound for c in row):
                    raise CounterOverflowError()


def accumulate_leaf(tables: CountTables, hold: Sequence[int],
                    pivots: Sequence[int], binomial: list[list[int]],
                    max_k: int | None = None) -> int:
    """Apply one leaf's increments to the tables; returns how many were made.

    With h = |hold| and p = |pivots| the increment rules are:

      global:             C_{h+i}      += C(p, i)    for 0 <= i <= p
      vertex v in hold:   c_{h+i}(v)   += C(p, i)    for 0 <= i <= p
      vertex v in pivots: c_{h+i+1}(v) += C(p-1, i)  for 0 <= i <= p-1
      edge within hold:   c_{h+i}(e)   += C(p, i)    for 0 <= i <= p
      edge hold-pivot:    c_{h+i+1}(e) += C(p-1, i)  for 0 <= i <= p-1
      edge within pivots: c_{h+i+2}(e) += C(p-2, i)  for 0 <= i <= p-2

    ``max_k`` caps the target clique size; increments beyond it are skipped.
    """
    h = len(hold)
    p = len(pivots)
    applied = 0

    def span(width, shift):
        # Largest i (inclusive) for increments landing at k = h + i + shift.
        hi = width
        if max_k is not None:
            hi = min(hi, max_k - h - shift)
        return hi

    row_p = binomial[p]
    hi = span(p, 0)
    for i in range(hi + 1):
        tables._bump_global(h + i, row_p[i])
        applied += 1

    if tables.per_vertex is not None:
        for v in hold:
            for i in range(hi + 1):
                tables._bump_vertex(v, h + i, row_p[i])
                applied += 1
        if p:
            row_p1 = binomial[p - 1]
            hi1 = span(p - 1, 1)
            for v in pivots:
                for i in range(hi1 + 1):
                    tables._bump_vertex(v, h + i + 1, row_p1[i])
                    applied += 1

    if tables.per_edge is not None:
        for a in range(h):
            for b in range(a + 1, h):
                for i in range(hi + 1):
                    tables._bump_edge(hold[a], hold[b], h + i, row_p[i])
                    applied += 1
        if p:
            row_p1 = binomial[p - 1]
            hi1 = span(p - 1, 1)
            for u in pivots:
                for v in hold:
                    for i in range(hi1 + 1):
                        tables._bump_edge(u, v, h + i + 1, row_p1[i])
                        applied += 1
        if p >= 2:
            row_p2 = binomial[p - 2]
            hi2 = span(p - 2, 2)
            for a in range(p):
                for b in range(a + 1, p):
                    for i in range(hi2 + 1):
                        tables._bump_edge(pivots[a], pivots[b], h + i + 2,
                                          row_p2[i])
                        applied += 1
    return applied


def count_roots_global(out_lists: list[list[int]], roots,
                       counts: list[int], local_index: list[int],
                       binomial: list[list[int]],
                       max_hold: int | None = None) -> tuple[int, int, int]:
    """Global-count walk over the given root vertices (fused hot path).

    Semantically identical to running ``traverse`` with a global-only
    accumulate sink, but iterative and tracking only (hold size, pivot
    size) per tree node, which is all global counting needs. Mutates
    ``counts`` (length alpha + 2) and uses ``local_index`` as scratch
    (length n, all -1, restored before returning). Returns (nodes, leaves,
    max depth).
    """
    nodes = 0
    leaves = 0
    max_depth = 0
    if max_hold is not None and max_hold < 1:
        return 0, 0, 0
    for v in roots:
        members = out_lists[v]
        s = len(members)
        if s == 0:
            nodes += 1
            leaves += 1
            counts[1] += 1
            if max_depth < 1:
                max_depth = 1
            continue
        for j, u in enumerate(members):
            local_index[u] = j
        rows = [0] * s
        for j, u in enumerate(members):
            for w in out_lists[u]:
                jj = local_index[w]
                if jj >= 0:
                    rows[j] |= 1 << jj
                    rows[jj] |= 1 << j
        for u in members:
            local_index[u] = -1
        # Each stack entry is one tree node: (subproblem mask, |H|, |P|).
        stack = [((1 << s) - 1, 1, 0)]
        push = stack.append
        pop = stack.pop
        while stack:
            mask, h, p = pop()
            nodes += 1
            if mask == 0:
                leaves += 1
                if h + p > max_depth:
                    max_depth = h + p
                row = binomial[p]
                for i in range(p + 1):
                    counts[h + i] += row[i]
                continue
            m = mask
            best = -1
            best_deg = -1
            best_row = 0
            while m:
                low = m & -m
                i = low.bit_length() - 1
                row = rows[i] & mask
                d = row.bit_count()
                if d > best_deg:
                    best, best_deg, best_row = i, d, row
                m ^= low
            # Visit order differs from the recursive walk (LIFO stack), but
            # counts, node counts, and depth are order-independent.
            if max_hold is None or h < max_hold:
                m = mask & ~(best_row | (1 << best))
                dropped = 0
                while m:
                    low = m & -m
                    i = low.bit_length() - 1
                    push((rows[i] & mask & ~dropped, h + 1, p))
                    dropped |= low
                    m ^= low
            push((best_row, h, p + 1))
    return nodes, leaves, max_depth


def max_clique_size(tables: CountTables) -> int:
    """Largest k with a nonzero global count; 0 for the empty graph."""
    return tables.max_clique_size()


def count(graph: Graph, *, per_vertex: bool = False, per_edge: bool = False,
          max_k: int | None = None, threads: int = 1,
          counters: str = EXACT,
          orientation: DegeneracyOrientation | None = None) -> CountTables:
    """Count k-cliques for all k (or up to ``max_k``).

    Runs the degeneracy orientation and the clique-tree walk with the
    leaf-accumulation rules. Global-only counting uses a fused kernel and
    can fan root subproblems across ``threads`` worker processes; local
    counting is single-threaded. ``counters`` selects "exact" (unbounded
    integers, the default) or "fast" (fixed-width with overflow checking;
    aborts rather than wrap).
    """
    if counters not in (EXACT, FAST):
        raise ValueError(f"unknown counter mode: {counters!r}")
    if max_k is not None and max_k < 1:
        raise ValueError("max_k must be >= 1")
    if threads < 1:
        raise ValueError("threads must be >= 1")
    if orientation is None:
        orientation = degeneracy_orient(graph)
    bound = FAST_COUNTER_MAX if counters == FAST else None

    if per_vertex or per_edge:
        if threads > 1:
            log.warning("local clique counting is single-threaded; "
                        "ignoring threads=%d", threads)
        tables = CountTables(graph, per_vertex=per_vertex, per_edge=per_edge,
                             counter_bound=bound)
        binomial = pascal_rows(orientation.alpha + 1)
        sink = lambda hold, pivots: accumulate_leaf(
            tables, hold, pivots, binomial, max_k)
        tables.stats = traverse(graph, orientation, sink, max_hold=max_k)
    elif threads > 1:
        from .parallel import count_global_parallel
        tables = count_global_parallel(graph, orientation, workers=threads,
                                       max_k=max_k, counters=counters)
    else:
        tables = _count_global_sequential(graph, orientation, max_k, counters)
    tables._trim(max_k)
    tables._enforce_bound()
    tables.alpha = orientation.alpha
    return tables


def _count_global_sequential(graph, orientation, max_k, counters) -> CountTables:
    bound = FAST_COUNTER_MAX if counters == FAST else None
    tables = CountTables(graph, counter_bound=bound)
    alpha = orientation.alpha
    if counters == FAST:
        from . import fastpath
        if fastpath.usable(alpha):
            counts, nodes, leaves, depth = fastpath.count_global(
                orientation, max_hold=max_k)
            tables.global_counts = counts
            tables.stats = TraversalStats(nodes, leaves, depth)
            return tables
        log.info("fast counters unavailable here (alpha=%d, numba=%s); "
                 "using checked exact counters", alpha, fastpath.HAVE_NUMBA)
    counts = [0] * (alpha + 2)
    local_index = [-1] * graph.n
    binomial = pascal_rows(alpha + 1)
    nodes, leaves, depth = count_roots_global(
        orientation.out_neighbors, range(graph.n), counts,
        local_index, binomial, max_hold=max_k)
    tables.global_counts = counts
    tables.stats = TraversalStats(nodes, leaves, depth)
    return tables
