"""Connected k-edge subgraphs: enumeration, minimum weight, and k-local positivity.

A set of k edges counts as a connected k-edge subgraph when those edges
together with their endpoints form a connected graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .graph import EdgeSubset, WeightedGraph, is_tree


@dataclass(frozen=True)
class SubgraphWitness:
    weight: int
    edges: EdgeSubset

    def to_dict(self) -> dict:
        return {"weight": self.weight, "edges": list(self.edges)}


@dataclass(frozen=True)
class LocalPositivity:
    """Outcome of a k-local positivity check.

    ``vacuous`` is set when the graph has no connected k-edge subgraph at all,
    in which case ``positive`` holds trivially and ``witness`` is None.
    """

    k: int
    positive: bool
    vacuous: bool
    witness: SubgraphWitness | None


def _check_k(k: int) -> None:
    if k <= 0:
        raise ValueError(f"k must be a positive integer, got {k}")


def _connected_without(g: WeightedGraph, subset: list[int] | set[int], drop: int) -> bool:
    parent: dict[int, int] = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in subset:
        if i == drop:
            continue
        u, v, _ = g.edges[i]
        parent[find(u)] = find(v)
    return len({find(x) for x in parent}) <= 1


def _removable(g: WeightedGraph, members: set[int], vdeg: dict[int, int], e: int) -> bool:
    u, v, _ = g.edges[e]
    if vdeg[u] == 1 or vdeg[v] == 1:
        return True
    return _connected_without(g, members, e)


def enumerate_connected_edge_subsets(g: WeightedGraph, k: int) -> Iterator[EdgeSubset]:
    """Yield every connected k-edge subset of ``g`` exactly once, as sorted index tuples.

    Reverse search: the parent of a set is obtained by dropping its largest
    edge whose removal keeps the rest connected.  A set is only extended by a
    frontier edge ``f`` when ``f`` would be that edge, so every set is reached
    from exactly one parent and nothing needs to be remembered.
    """
    _check_k(k)
    if k > g.edge_count:
        return
    adj = g.adjacency

    members: set[int] = set()
    vdeg: dict[int, int] = {}

    def add(e):
        members.add(e)
        u, v, _ = g.edges[e]
        vdeg[u] = vdeg.get(u, 0) + 1
        vdeg[v] = vdeg.get(v, 0) + 1

    def remove(e):
        members.discard(e)
        u, v, _ = g.edges[e]
        for x in (u, v):
            vdeg[x] -= 1
            if vdeg[x] == 0:
                del vdeg[x]

    def canonical_children():
        frontier = sorted({i for x in vdeg for _, i in adj[x] if i not in members})
        out = []
        for f in frontier:
            add(f)
            ok = all(not _removable(g, members, vdeg, e) for e in members if e > f)
            remove(f)
            if ok:
                out.append(f)
        return out

    def grow(size):
        if size == k:
            yield tuple(sorted(members))
            return
        for f in canonical_children():
            add(f)
            yield from grow(size + 1)
            remove(f)

    for e in range(g.edge_count):
        add(e)
        yield from grow(1)
        remove(e)


def connected_edge_masks(g: WeightedGraph, k: int) -> list[int]:
    """The same sets as :func:`enumerate_connected_edge_subsets`, as bitmasks over edge indices.

    Extension-set enumeration on the line graph: each set is grown from its
    smallest edge, and an edge joins the extension set only the first time
    it becomes adjacent, so no set is produced twice.  Much faster in Python
    than the reverse search, and used by the exhaustive solvers.
    """
    _check_k(k)
    m = g.edge_count
    if k > m:
        return []
    at_vertex = [0] * g.vertex_count
    for i, (u, v, _) in enumerate(g.edges):
        at_vertex[u] |= 1 << i
        at_vertex[v] |= 1 << i
    nbr = [(at_vertex[u] | at_vertex[v]) & ~(1 << i) for i, (u, v, _) in enumerate(g.edges)]
    out: list[int] = []

    def extend(sub: int, ext: int, seen: int, size: int, above: int) -> None:
        if size == k:
            out.append(sub)
            return
        while ext:
            bit = ext & -ext
            ext ^= bit
            i = bit.bit_length() - 1
            fresh = nbr[i] & ~seen & above
            extend(sub | bit, ext | fresh, seen | fresh, size + 1, above)

    for v in range(m):
        above = ~((1 << (v + 1)) - 1)
        start = nbr[v] & above
        extend(1 << v, start, start | (1 << v) | (nbr[v] & ~above), 1, above)
    return out


def _min_by_enumeration(g: WeightedGraph, k: int) -> SubgraphWitness | None:
    best = None
    for s in enumerate_connected_edge_subsets(g, k):
        cand = (g.subgraph_weight(s), s)
        if best is None or cand < best:
            best = cand
    return None if best is None else SubgraphWitness(*best)


def _min_by_tree_dp(t: WeightedGraph, k: int) -> SubgraphWitness | None:
    """Rooted subtree knapsack: for each vertex, the best piece hanging below it of each size."""
    if k > t.edge_count:
        return None
    adj = t.adjacency
    parent = [-1] * t.vertex_count
    order = []
    seen = [False] * t.vertex_count
    seen[0] = True
    stack = [0]
    while stack:
        x = stack.pop()
        order.append(x)
        for y, _ in adj[x]:
            if not seen[y]:
                seen[y] = True
                parent[y] = x
                stack.append(y)

    table: list[dict[int, tuple[int, EdgeSubset]]] = [dict() for _ in range(t.vertex_count)]
    best = None
    for x in reversed(order):
        cur: dict[int, tuple[int, EdgeSubset]] = {0: (0, ())}
        for y, e in adj[x]:
            if y == parent[x]:
                continue
            w = t.edges[e][2]
            opts = {s + 1: (wt + w, tuple(sorted(es + (e,)))) for s, (wt, es) in table[y].items() if s < k}
            merged = dict(cur)
            for a, (wa, ea) in cur.items():
                for b, (wb, eb) in opts.items():
                    if a + b > k:
                        continue
                    cand = (wa + wb, tuple(sorted(ea + eb)))
                    if a + b not in merged or cand < merged[a + b]:
                        merged[a + b] = cand
            cur = merged
        table[x] = cur
        if k in cur and (best is None or cur[k] < best):
            best = cur[k]
    return None if best is None else SubgraphWitness(*best)


def min_weight_connected_k_subgraph(
    g: WeightedGraph, k: int, method: str = "auto"
) -> SubgraphWitness | None:
    """Minimum-weight connected k-edge subgraph, or None if there is none.

    Ties go to the lexicographically least edge subset.  ``method`` is
    ``"auto"`` (tree DP when ``g`` is a tree), ``"tree-dp"`` or ``"enumerate"``.
    """
    _check_k(k)
    if method == "auto":
        method = "tree-dp" if is_tree(g) and g.vertex_count > 0 else "enumerate"
    if method == "tree-dp":
        if not is_tree(g):
            raise ValueError("tree-dp needs a tree")
        return _min_by_tree_dp(g, k)
    if method == "enumerate":
        return _min_by_enumeration(g, k)
    raise ValueError(f"unknown method {method!r}")


def check_local_positivity(g: WeightedGraph, k: int) -> LocalPositivity:
    w = min_weight_connected_k_subgraph(g, k)
    if w is None:
        return LocalPositivity(k, True, True, None)
    return LocalPositivity(k, w.weight > 0, False, w)


def is_k_local_positive(g: WeightedGraph, k: int) -> bool:
    """True iff every connected k-edge subgraph has positive weight (vacuously true if none)."""
    _check_k(k)
    if is_tree(g) and g.vertex_count > 0:
        w = _min_by_tree_dp(g, k)
        return w is None or w.weight > 0
    return all(g.subgraph_weight(s) > 0 for s in enumerate_connected_edge_subsets(g, k))
