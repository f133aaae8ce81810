"""Weighted simple graphs with +/-1 edge weights and the structural operations on them.

Graphs are immutable.  Edges are stored canonically as ``(u, v, w)`` with
``u < v`` and the whole edge sequence sorted, so two equal graphs compare and
serialize identically.  Subsets of edges are passed around as sorted tuples of
edge indices into that sequence.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

Edge = tuple[int, int, int]
EdgeSubset = tuple[int, ...]


class GraphError(ValueError):
    """A graph violates the precondition of an operation."""


class GraphFormatError(GraphError):
    """Malformed graph interchange document."""


@dataclass(frozen=True)
class WeightedGraph:
    vertex_count: int
    edges: tuple[Edge, ...]

    def __post_init__(self):
        if self.vertex_count < 0:
            raise GraphError("vertex_count must be nonnegative")
        prev = None
        for i, (u, v, w) in enumerate(self.edges):
            if not 0 <= u < v < self.vertex_count:
                raise GraphError(f"edge {i} ({u}, {v}) needs 0 <= u < v < {self.vertex_count}")
            if w not in (-1, 1):
                raise GraphError(f"edge {i} has weight {w}, expected -1 or 1")
            if prev is not None and (u, v) <= prev:
                raise GraphError(f"edge {i} ({u}, {v}) is duplicated or out of canonical order")
            prev = (u, v)

    @classmethod
    def from_edges(cls, vertex_count: int, edges: Iterable[Sequence[int]]) -> WeightedGraph:
        """Build a graph from ``(u, v)`` or ``(u, v, w)`` items in any order.

        Missing weights default to +1.  Self-loops and repeated edges raise.
        """
        norm = []
        for e in edges:
            u, v = int(e[0]), int(e[1])
            w = int(e[2]) if len(e) > 2 else 1
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            norm.append((min(u, v), max(u, v), w))
        norm.sort()
        return cls(vertex_count, tuple(norm))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def weights(self) -> tuple[int, ...]:
        return tuple(w for _, _, w in self.edges)

    @cached_property
    def adjacency(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Per vertex, the ``(neighbour, edge index)`` pairs."""
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.vertex_count)]
        for i, (u, v, _) in enumerate(self.edges):
            adj[u].append((v, i))
            adj[v].append((u, i))
        return tuple(tuple(a) for a in adj)

    @cached_property
    def edge_index(self) -> dict[tuple[int, int], int]:
        return {(u, v): i for i, (u, v, _) in enumerate(self.edges)}

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def with_weights(self, weights: Sequence[int]) -> WeightedGraph:
        """Same graph, new weights aligned to the edge order."""
        if len(weights) != self.edge_count:
            raise GraphError(f"expected {self.edge_count} weights, got {len(weights)}")
        return WeightedGraph(
            self.vertex_count,
            tuple((u, v, int(w)) for (u, v, _), w in zip(self.edges, weights)),
        )

    def subgraph_weight(self, subset: Iterable[int]) -> int:
        return sum(self.edges[i][2] for i in subset)

    def to_dict(self) -> dict:
        return {"vertices": self.vertex_count, "edges": [list(e) for e in self.edges]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> WeightedGraph:
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GraphFormatError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
        return parse_graph_document(doc)


def parse_graph_document(doc) -> WeightedGraph:
    """Validate a decoded interchange document and build the graph."""
    if not isinstance(doc, dict):
        raise GraphFormatError("document: expected an object with 'vertices' and 'edges'")
    for key in ("vertices", "edges"):
        if key not in doc:
            raise GraphFormatError(f"{key}: missing field")
    n = doc["vertices"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise GraphFormatError("vertices: expected a nonnegative integer")
    if not isinstance(doc["edges"], list):
        raise GraphFormatError("edges: expected a list")
    edges = []
    prev = None
    for i, e in enumerate(doc["edges"]):
        if not isinstance(e, list) or len(e) != 3:
            raise GraphFormatError(f"edges[{i}]: expected [u, v, w]")
        for j, x in enumerate(e):
            if not isinstance(x, int) or isinstance(x, bool):
                raise GraphFormatError(f"edges[{i}][{j}]: expected an integer")
        u, v, w = e
        if not 0 <= u < v < n:
            raise GraphFormatError(f"edges[{i}]: need 0 <= u < v < {n}, got [{u}, {v}]")
        if w not in (-1, 1):
            raise GraphFormatError(f"edges[{i}][2]: weight must be -1 or 1, got {w}")
        if prev is not None and (u, v) <= prev:
            raise GraphFormatError(f"edges[{i}]: duplicate or not in sorted order")
        prev = (u, v)
        edges.append((u, v, w))
    return WeightedGraph(n, tuple(edges))


def total_weight(g: WeightedGraph) -> int:
    return sum(w for _, _, w in g.edges)


def _reach(g: WeightedGraph, start: int, skip_edge: int = -1) -> set[int]:
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y, i in g.adjacency[x]:
            if i != skip_edge and y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def is_connected(g: WeightedGraph) -> bool:
    if g.vertex_count == 0:
        return True
    return len(_reach(g, 0)) == g.vertex_count


def is_tree(g: WeightedGraph) -> bool:
    return g.edge_count == g.vertex_count - 1 and is_connected(g)


def edges_connected(g: WeightedGraph, subset: Iterable[int]) -> bool:
    """Whether the edges in ``subset`` and their endpoints form a connected graph."""
    subset = list(subset)
    if not subset:
        return False
    parent: dict[int, int] = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in subset:
        u, v, _ = g.edges[i]
        parent[find(u)] = find(v)
    return len({find(x) for x in parent}) == 1


def max_degree(g: WeightedGraph) -> int:
    return max((len(a) for a in g.adjacency), default=0)


def average_degree(g: WeightedGraph) -> Fraction:
    if g.vertex_count == 0:
        return Fraction(0)
    return Fraction(2 * g.edge_count, g.vertex_count)


def bridges(g: WeightedGraph) -> EdgeSubset:
    """Indices of the edges whose removal disconnects their component (Tarjan lowlink)."""
    n = g.vertex_count
    disc = [-1] * n
    low = [0] * n
    found = []
    clock = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = clock
        clock += 1
        # frames: (vertex, edge index used to enter it, iterator over adjacency)
        stack = [(root, -1, iter(g.adjacency[root]))]
        while stack:
            x, via, it = stack[-1]
            advanced = False
            for y, i in it:
                if i == via:
                    continue
                if disc[y] == -1:
                    disc[y] = low[y] = clock
                    clock += 1
                    stack.append((y, i, iter(g.adjacency[y])))
                    advanced = True
                    break
                low[x] = min(low[x], disc[y])
            if advanced:
                continue
            stack.pop()
            if stack:
                p = stack[-1][0]
                low[p] = min(low[p], low[x])
                if low[x] > disc[p]:
                    found.append(via)
    return tuple(sorted(found))


def split_tree(t: WeightedGraph) -> tuple[EdgeSubset, EdgeSubset]:
    """Split a tree into two edge-disjoint subtrees that together cover every edge.

    Any such split meets at a single vertex and groups whole branches at that
    vertex, so each vertex is solved as a subset-sum over its branch sizes.
    The returned first part is the smaller one; among splits, the smaller part
    is made as large as possible, then lexicographically least.  For ``n``
    edges its size always lies in ``[ceil(n/3), floor(n/2)]``.
    """
    n = t.edge_count
    if n < 2:
        raise GraphError("split_tree needs a tree with at least 2 edges")
    if not is_tree(t):
        raise GraphError("split_tree needs a tree")
    half = n // 2
    best: tuple[int, EdgeSubset] | None = None
    for v in range(t.vertex_count):
        if t.degree(v) < 2:
            continue
        branches = []
        for y, i in t.adjacency[v]:
            part = [i]
            seen = {v, y}
            stack = [y]
            while stack:
                x = stack.pop()
                for z, j in t.adjacency[x]:
                    if z not in seen:
                        seen.add(z)
                        part.append(j)
                        stack.append(z)
            branches.append(tuple(sorted(part)))
        branches.sort()
        # reachable[i]: sums attainable using branches[i:], capped at half
        reachable = [set() for _ in range(len(branches) + 1)]
        reachable[-1] = {0}
        for i in range(len(branches) - 1, -1, -1):
            size = len(branches[i])
            reachable[i] = reachable[i + 1] | {s + size for s in reachable[i + 1] if s + size <= half}
        j = max(reachable[0])
        if j == 0 or (best is not None and j < best[0]):
            continue
        chosen: list[int] = []
        need = j
        for i, b in enumerate(branches):
            if need >= len(b) and need - len(b) in reachable[i + 1]:
                chosen.extend(b)
                need -= len(b)
        part = tuple(sorted(chosen))
        if best is None or (j, _neg(part)) > (best[0], _neg(best[1])):
            best = (j, part)
    assert best is not None
    small = best[1]
    rest = tuple(i for i in range(n) if i not in set(small))
    return small, rest


def _neg(part: EdgeSubset) -> tuple[int, ...]:
    # reverses lexicographic order for equal-length tuples
    return tuple(-x for x in part)


def cycle_vertices(g: WeightedGraph, cycle: Sequence[int]) -> list[int]:
    """Vertices of a simple cycle given by edge indices, in traversal order."""
    cycle = sorted(set(cycle))
    if len(cycle) < 3:
        raise GraphError("a cycle needs at least 3 edges")
    for i in cycle:
        if not 0 <= i < g.edge_count:
            raise GraphError(f"edge index {i} out of range")
    nbrs: dict[int, list[int]] = {}
    for i in cycle:
        u, v, _ = g.edges[i]
        nbrs.setdefault(u, []).append(v)
        nbrs.setdefault(v, []).append(u)
    if any(len(x) != 2 for x in nbrs.values()) or len(nbrs) != len(cycle):
        raise GraphError("edges do not form a simple cycle")
    start = min(nbrs)
    order = [start]
    prev, cur = start, nbrs[start][0]
    while cur != start:
        order.append(cur)
        a, b = nbrs[cur]
        prev, cur = cur, (b if a == prev else a)
    if len(order) != len(cycle):
        raise GraphError("edges do not form a single cycle")
    return order


def y_delta_transform(g: WeightedGraph, cycle: Sequence[int]) -> WeightedGraph:
    """Replace an all-negative cycle by a negative star on a new centre vertex.

    The centre gets id ``g.vertex_count``.  Total weight is unchanged and no
    original vertex gains degree.
    """
    verts = cycle_vertices(g, cycle)
    cyc = set(cycle)
    if any(g.edges[i][2] != -1 for i in cyc):
        raise GraphError("cycle contains a +1 edge; only all-negative cycles may be transformed")
    z = g.vertex_count
    kept = [e for i, e in enumerate(g.edges) if i not in cyc]
    kept.extend((v, z, -1) for v in verts)
    return WeightedGraph.from_edges(z + 1, kept)


def peel_positive_cycle_edges(g: WeightedGraph) -> tuple[WeightedGraph, int]:
    """Delete +1 edges lying on cycles, least edge first, until none remain.

    Returns the peeled graph and the number of deleted edges.
    """
    if not is_connected(g):
        raise GraphError("peel_positive_cycle_edges needs a connected graph")
    removed = 0
    while True:
        cut = set(bridges(g))
        target = next((i for i, e in enumerate(g.edges) if e[2] == 1 and i not in cut), None)
        if target is None:
            return g, removed
        g = WeightedGraph(g.vertex_count, g.edges[:target] + g.edges[target + 1:])
        removed += 1


def complete_graph_prefix(q: int, count: int) -> list[tuple[int, int]]:
    """First ``count`` edges of K_q in lexicographic order."""
    pairs = list(combinations(range(q), 2))
    if count > len(pairs):
        raise GraphError(f"K_{q} has only {len(pairs)} edges, {count} requested")
    return pairs[:count]
