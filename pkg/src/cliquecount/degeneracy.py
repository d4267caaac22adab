"""Degeneracy ordering, core numbers, and the low-out-degree orientation.

The ordering repeatedly removes a vertex of minimum residual degree,
breaking ties toward the lowest dense id. Orienting every edge from
earlier to later in this order bounds each out-neighborhood by the
degeneracy alpha, which is what keeps the clique-tree subproblems small.
"""

from __future__ import annotations

import heapq

import numpy as np

from .graph import Graph

# Heap entries encode (residual degree, vertex id) in one int so that the
# lexicographic order gives the lowest-id tie-break for free.
_ID_BITS = 40
_ID_MASK = (1 << _ID_BITS) - 1


class DegeneracyOrientation:
    """Removal order plus the induced acyclic orientation of a Graph.

    Attributes:
        order: vertex ids in removal order.
        rank: inverse permutation of ``order``.
        alpha: graph degeneracy; equals the maximum out-degree and the
            maximum core number.
        core_numbers: per-vertex core value.

    ``out_neighbors[v]`` lists the neighbors of v that come later in the
    order, sorted ascending by id. The orientation is immutable; build it
    once and share it freely across threads or worker processes.
    """

    __slots__ = ("n", "order", "rank", "alpha", "core_numbers",
                 "out_offsets", "out_targets", "_out_lists")

    def __init__(self, n, order, rank, alpha, core_numbers, out_offsets, out_targets):
        self.n = n
        self.order = order
        self.rank = rank
        self.alpha = alpha
        self.core_numbers = core_numbers
        self.out_offsets = out_offsets
        self.out_targets = out_targets
        self._out_lists = None

    @property
    def out_neighbors(self) -> list[list[int]]:
        """Per-vertex sorted out-neighbor lists (built lazily, then cached)."""
        if self._out_lists is None:
            offs, tgt = self.out_offsets, self.out_targets
            self._out_lists = [tgt[offs[v]:offs[v + 1]].tolist() for v in range(self.n)]
        return self._out_lists

    def out_degree(self, v: int) -> int:
        return int(self.out_offsets[v + 1] - self.out_offsets[v])

    def out_degrees(self) -> np.ndarray:
        return np.diff(self.out_offsets)

    def max_core_size(self) -> int:
        """Number of vertices whose core number equals alpha."""
        if self.n == 0:
            return 0
        return int(np.count_nonzero(np.asarray(self.core_numbers) == self.alpha))


def degeneracy_orient(graph: Graph) -> DegeneracyOrientation:
    """Compute the degeneracy ordering and orientation of ``graph``.

    Uses a lazy-deletion heap keyed on (residual degree, id). Whenever a
    neighbor's degree drops, a fresh entry is pushed and stale entries are
    discarded on pop, so the heap realizes exactly the minimum-degree,
    lowest-id removal rule. Core numbers fall out of the same pass as the
    running maximum of removal-time residual degrees.
    """
    n = graph.n
    if n == 0:
        return DegeneracyOrientation(
            0, [], [], 0, [],
            np.zeros(1, dtype=np.int64), np.empty(0, dtype=np.int32))
    adj = graph.adjacency_lists()
    deg = [len(a) for a in adj]
    heap = [(d << _ID_BITS) | v for v, d in enumerate(deg)]
    heapq.heapify(heap)
    push = heapq.heappush
    pop = heapq.heappop
    removed = bytearray(n)
    order: list[int] = []
    rank = [0] * n
    core_numbers = [0] * n
    running_core = 0
    while heap:
        entry = pop(heap)
        v = entry & _ID_MASK
        if removed[v] or (entry >> _ID_BITS) != deg[v]:
            continue
        removed[v] = 1
        rank[v] = len(order)
        order.append(v)
        if deg[v] > running_core:
            running_core = deg[v]
        core_numbers[v] = running_core
        for u in adj[v]:
            if not removed[u]:
                du = deg[u] - 1
                deg[u] = du
                push(heap, (du << _ID_BITS) | u)
    alpha = running_core

    # Orient edges toward higher rank; CSR rows are id-sorted already, so
    # filtering preserves the ascending order the traversal relies on.
    rank_arr = np.asarray(rank, dtype=np.int64)
    offsets = graph._offsets
    targets = graph._neighbors
    if len(targets):
        row_of = np.repeat(np.arange(n, dtype=np.int64), np.diff(offsets))
        keep = rank_arr[targets] > rank_arr[row_of]
        out_targets = np.ascontiguousarray(targets[keep])
        counts = np.bincount(row_of[keep], minlength=n)
    else:
        out_targets = np.empty(0, dtype=np.int32)
        counts = np.zeros(n, dtype=np.int64)
    out_offsets = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=out_offsets[1:])
    return DegeneracyOrientation(n, order, rank, alpha, core_numbers,
                                 out_offsets, out_targets)


def degeneracy_stats(orientation: DegeneracyOrientation) -> dict:
    """Read-only summary: degeneracy, innermost-core size, removal order."""
    return {
        "alpha": orientation.alpha,
        "max_core_size": orientation.max_core_size(),
        "order": list(orientation.order),
    }
