"""Pivoted clique-tree construction and traversal.

The tree explored here compresses every clique of the graph into a unique
(hold set, pivot set) pair: each root-to-leaf path T carries the vertices
of its hold-labeled links H(T) and pivot-labeled links P(T), and the
cliques represented by T are exactly H(T) union Q over all subsets Q of
P(T), each produced by exactly one (path, subset) pair.

Two realizations are provided. ``traverse`` walks the tree depth-first
while storing only the current path (the production path: counting hooks
in at the leaves). ``materialize_sct`` builds the explicit node structure
breadth-first for inspection and cross-checking on small graphs.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterator, NamedTuple, Sequence

from .degeneracy import DegeneracyOrientation, degeneracy_orient
from .errors import SizeLimitError
from .graph import Graph

DEFAULT_NODE_CAP = 10 ** 6


class PathLabels(NamedTuple):
    """Hold and pivot vertices of one root-to-leaf path."""
    hold: tuple
    pivots: tuple


@dataclass
class TraversalStats:
    """Shape of the (implicit) clique tree.

    ``node_count`` counts every node created below the root, including
    empty-labeled leaves; the root itself is not counted. ``max_depth`` is
    the longest path length in links.
    """
    node_count: int = 0
    leaf_count: int = 0
    max_depth: int = 0


class SubProblem:
    """An induced subgraph, locally re-indexed with bitmask adjacency rows.

    ``members`` maps local index -> global vertex id, ascending, so the
    lowest local index is also the lowest global id; pivot tie-breaking
    and child ordering rely on this. ``rows[i]`` has bit j set iff local
    vertices i and j are adjacent.
    """

    __slots__ = ("size", "members", "rows")

    def __init__(self, members: Sequence[int], rows: Sequence[int]):
        self.size = len(members)
        self.members = tuple(members)
        self.rows = list(rows)

    @classmethod
    def from_vertices(cls, graph: Graph, vertices: Sequence[int]) -> "SubProblem":
        members = sorted(int(v) for v in vertices)
        index = {v: i for i, v in enumerate(members)}
        rows = [0] * len(members)
        for i, v in enumerate(members):
            for u in graph.neighbors(v):
                j = index.get(int(u))
                if j is not None:
                    rows[i] |= 1 << j
        return cls(members, rows)

    def restrict(self, keep: Sequence[int]) -> "SubProblem":
        """Induced subproblem on the given local indices, re-indexed."""
        keep = sorted(keep)
        mask = 0
        for i in keep:
            if not 0 <= i < self.size:
                raise ValueError(f"local index {i} out of range [0, {self.size})")
            mask |= 1 << i
        members = [self.members[i] for i in keep]
        rows = []
        for i in keep:
            row = self.rows[i] & mask
            packed = 0
            for new_j, j in enumerate(keep):
                if row >> j & 1:
                    packed |= 1 << new_j
            rows.append(packed)
        return SubProblem(members, rows)

    def select_pivot(self) -> int:
        """Local index with the most in-subproblem neighbors, lowest id on ties."""
        if self.size == 0:
            raise ValueError("cannot select a pivot in an empty subproblem")
        best, best_deg = 0, -1
        for i in range(self.size):
            d = self.rows[i].bit_count()
            if d > best_deg:
                best, best_deg = i, d
        return best

    def neighbor_indices(self, i: int) -> list[int]:
        row = self.rows[i]
        return [j for j in range(self.size) if row >> j & 1]


def traverse(graph: Graph,
             orientation: DegeneracyOrientation | None = None,
             sink: Callable[[list, list], None] | None = None,
             max_hold: int | None = None) -> TraversalStats:
    """Depth-first walk of the clique tree, storing only the current path.

    For every vertex v (a hold link at the root) the walk recurses on the
    subproblem induced on the out-neighborhood of v. At each non-empty
    subproblem it picks the pivot p of maximum subproblem degree, recurses
    on p's neighborhood with p pushed as a pivot, then visits the
    non-neighbors of p in ascending id order, recursing on each one's
    neighborhood minus the earlier non-neighbors with the vertex pushed as
    a hold. Children are created even when their label is empty; an empty
    subproblem is a leaf and fires ``sink(hold, pivots)``.

    The sink receives the live path lists; they are only valid during the
    call, so copy them if you keep them. With ``max_hold`` set, branches
    whose hold count would exceed it are pruned before recursing, which
    preserves all leaves with at most ``max_hold`` hold vertices.

    Native recursion is used deliberately: the path length is bounded by
    alpha + 1 links, far below the interpreter limit.
    """
    if orientation is None:
        orientation = degeneracy_orient(graph)
    stats = TraversalStats()
    if graph.n == 0 or (max_hold is not None and max_hold < 1):
        return stats
    if sink is None:
        sink = _ignore_leaf
    out = orientation.out_neighbors
    local_index = [-1] * graph.n
    hold: list[int] = []
    pivots: list[int] = []
    members: list[int] = []
    rows: list[int] = []

    def walk(mask: int) -> None:
        stats.node_count += 1
        if mask == 0:
            stats.leaf_count += 1
            depth = len(hold) + len(pivots)
            if depth > stats.max_depth:
                stats.max_depth = depth
            sink(hold, pivots)
            return
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
        pivots.append(members[best])
        walk(best_row)
        pivots.pop()
        if max_hold is not None and len(hold) >= max_hold:
            return
        m = mask & ~(best_row | (1 << best))
        dropped = 0
        while m:
            low = m & -m
            i = low.bit_length() - 1
            hold.append(members[i])
            walk(rows[i] & mask & ~dropped)
            hold.pop()
            dropped |= low
            m ^= low

    for v in range(graph.n):
        members = out[v]
        s = len(members)
        hold.append(v)
        if s == 0:
            stats.node_count += 1
            stats.leaf_count += 1
            if not stats.max_depth:
                stats.max_depth = 1
            sink(hold, pivots)
        else:
            for j, u in enumerate(members):
                local_index[u] = j
            rows = [0] * s
            for j, u in enumerate(members):
                for w in out[u]:
                    jj = local_index[w]
                    if jj >= 0:
                        rows[j] |= 1 << jj
                        rows[jj] |= 1 << j
            for u in members:
                local_index[u] = -1
            walk((1 << s) - 1)
        hold.pop()
    return stats


def _ignore_leaf(hold, pivots):
    return None


class SctNode:
    """Explicit tree node for inspection mode.

    ``link_kind`` is "root", "hold", or "pivot"; ``link_vertex`` is the
    vertex on the link from the parent (None at the root). Labels are
    tuples of global vertex ids; parent labels strictly contain child
    labels and leaves carry the empty label.
    """

    __slots__ = ("label", "link_vertex", "link_kind", "children")

    def __init__(self, label, link_vertex, link_kind):
        self.label = tuple(label)
        self.link_vertex = link_vertex
        self.link_kind = link_kind
        self.children: list[SctNode] = []

    def is_leaf(self) -> bool:
        return not self.children

    def node_count(self) -> int:
        """Nodes below (and excluding) this node."""
        return sum(1 + child.node_count() for child in self.children)

    def leaf_count(self) -> int:
        if not self.children:
            return 1
        return sum(child.leaf_count() for child in self.children)

    def iter_paths(self) -> Iterator[PathLabels]:
        """Yield (hold, pivot) labels of every root-to-leaf path."""
        hold: list[int] = []
        pivots: list[int] = []

        def rec(node: SctNode) -> Iterator[PathLabels]:
            if node.link_kind == "hold":
                hold.append(node.link_vertex)
            elif node.link_kind == "pivot":
                pivots.append(node.link_vertex)
            if node.is_leaf() and node.link_kind != "root":
                yield PathLabels(tuple(hold), tuple(pivots))
            else:
                for child in node.children:
                    yield from rec(child)
            if node.link_kind == "hold":
                hold.pop()
            elif node.link_kind == "pivot":
                pivots.pop()

        yield from rec(self)

    def to_text(self, max_label: int = 16) -> str:
        """Indented dump: one node per line, "<link> {label}" under parents."""
        lines: list[str] = []

        def rec(node: SctNode, depth: int) -> None:
            if node.link_kind == "root":
                link = "root"
            else:
                mark = "h" if node.link_kind == "hold" else "p"
                link = f"({node.link_vertex},{mark})"
            label = ",".join(map(str, node.label[:max_label]))
            if len(node.label) > max_label:
                label += ",..."
            lines.append(f"{'  ' * depth}{link} {{{label}}}")
            for child in node.children:
                rec(child, depth + 1)

        rec(self, 0)
        return "\n".join(lines) + "\n"

    def to_records(self) -> list[tuple]:
        """Flat node list: (node id, parent id, link kind, link vertex, label)."""
        records: list[tuple] = []

        def rec(node: SctNode, parent_id: int) -> None:
            node_id = len(records)
            records.append((node_id, parent_id, node.link_kind,
                            node.link_vertex, node.label))
            for child in node.children:
                rec(child, node_id)

        rec(self, -1)
        return records


def materialize_sct(graph: Graph,
                    orientation: DegeneracyOrientation | None = None,
                    node_cap: int = DEFAULT_NODE_CAP) -> SctNode:
    """Build the explicit clique tree breadth-first.

    Intended for small graphs; raises SizeLimitError once more than
    ``node_cap`` non-root nodes have been created. The resulting tree has
    the same leaf multiset of (hold, pivot) path labels as ``traverse``.
    """
    if orientation is None:
        orientation = degeneracy_orient(graph)
    root = SctNode(range(graph.n), None, "root")
    created = 0
    queue: deque[tuple[SctNode, SubProblem]] = deque()

    def attach(parent, members_rows, link_vertex, link_kind):
        nonlocal created
        created += 1
        if created > node_cap:
            raise SizeLimitError(
                f"clique tree exceeds the node cap ({node_cap}); "
                "raise node_cap to materialize anyway")
        sub = members_rows
        node = SctNode(sub.members, link_vertex, link_kind)
        parent.children.append(node)
        queue.append((node, sub))
        return node

    for v in range(graph.n):
        out = orientation.out_neighbors[v]
        attach(root, SubProblem.from_vertices(graph, out), v, "hold")

    while queue:
        node, sub = queue.popleft()
        if sub.size == 0:
            continue
        p = sub.select_pivot()
        attach(node, sub.restrict(sub.neighbor_indices(p)),
               sub.members[p], "pivot")
        non_neighbors = [i for i in range(sub.size)
                         if i != p and not sub.rows[p] >> i & 1]
        for seen, i in enumerate(non_neighbors):
            earlier = set(non_neighbors[:seen])
            keep = [j for j in sub.neighbor_indices(i) if j not in earlier]
            attach(node, sub.restrict(keep), sub.members[i], "hold")
    return root


@dataclass
class VerificationResult:
    ok: bool
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


def verify_unique_representation(graph: Graph, tree: SctNode,
                                 oracle_cliques) -> VerificationResult:
    """Check that path expansions cover every clique exactly once.

    Expands each root-to-leaf path (H, P) into all sets H union Q for Q a
    subset of P and verifies that (a) each expansion is a clique of the
    graph, (b) no clique arises from two (path, subset) pairs, and (c) the
    expansions equal ``oracle_cliques`` exactly. The verdict carries the
    first counterexample found.
    """
    expected = {frozenset(c) for c in oracle_cliques}
    seen: set[frozenset] = set()
    for hold, pivots in tree.iter_paths():
        for bits in range(1 << len(pivots)):
            chosen = [p for j, p in enumerate(pivots) if bits >> j & 1]
            clique = frozenset(hold) | frozenset(chosen)
            members = sorted(clique)
            for a in range(len(members)):
                for b in range(a + 1, len(members)):
                    if not graph.are_adjacent(members[a], members[b]):
                        return VerificationResult(
                            False,
                            f"expansion {members} of path H={sorted(hold)} "
                            f"P={sorted(pivots)} is not a clique")
            if clique in seen:
                return VerificationResult(
                    False, f"clique {members} produced by two distinct "
                           f"(path, subset) pairs")
            seen.add(clique)
    if seen != expected:
        missing = expected - seen
        extra = seen - expected
        sample = sorted(next(iter(missing))) if missing else sorted(next(iter(extra)))
        kind = "missing" if missing else "spurious"
        return VerificationResult(
            False, f"{kind} clique {sample} "
                   f"({len(missing)} missing, {len(extra)} spurious)")
    return VerificationResult(True)
