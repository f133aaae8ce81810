"""Free trees: non-isomorphic generation and AHU canonical forms.

Every free tree has one centroid or two adjacent ones.  Generating the tree
rooted at its centroid, with each vertex's subtrees kept as a sorted
multiset, gives exactly one representative per isomorphism class.  A degree
cap is applied while children are chosen, so capped runs never build trees
they would later discard.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator

from .graph import GraphError, WeightedGraph, is_tree

RootedTree = tuple  # tuple of child RootedTrees, in canonical order


@lru_cache(maxsize=None)
def _size(t: RootedTree) -> int:
    return 1 + sum(_size(c) for c in t)


@lru_cache(maxsize=None)
def _rooted(size: int, root_cap: int | None, inner_cap: int | None) -> tuple[RootedTree, ...]:
    """All rooted trees on ``size`` vertices; root has <= root_cap children, others <= inner_cap."""
    if size == 1:
        return ((),)
    cands = _candidates(size - 1, inner_cap)
    return tuple(_multisets(size - 1, root_cap, cands, 0))


@lru_cache(maxsize=None)
def _candidates(max_size: int, inner_cap: int | None) -> tuple[tuple[int, RootedTree], ...]:
    # largest subtrees first; the position in this list fixes child order
    out = []
    for s in range(max_size, 0, -1):
        out.extend((s, t) for t in _rooted(s, inner_cap, inner_cap))
    return tuple(out)


def _multisets(total: int, max_count: int | None, cands, start: int) -> Iterator[RootedTree]:
    if total == 0:
        yield ()
        return
    if max_count == 0:
        return
    rest_count = None if max_count is None else max_count - 1
    for i in range(start, len(cands)):
        s, t = cands[i]
        if s > total:
            continue
        if rest_count is not None and total - s > rest_count * s:
            # later candidates are no larger than s
            break
        for rest in _multisets(total - s, rest_count, cands, i):
            yield (t,) + rest


def _cap(max_degree: int | None, used: int) -> int | None:
    return None if max_degree is None else max_degree - used


def rooted_free_trees(n_edges: int, max_degree: int | None = None) -> Iterator[tuple[RootedTree, RootedTree | None]]:
    """Centroid-rooted representatives: ``(tree, None)`` or ``(half, other_half)`` for bicentroidal trees."""
    if n_edges < 1:
        raise GraphError("n_edges must be at least 1")
    if max_degree is not None and max_degree < 1:
        return
    n = n_edges + 1
    inner = _cap(max_degree, 1)
    if max_degree is None or max_degree >= 2:
        cands = [(s, t) for s, t in _candidates((n - 1) // 2, inner)]
        for t in _multisets(n - 1, max_degree, cands, 0):
            yield t, None
    if n % 2 == 0:
        halves = _rooted(n // 2, inner, inner)
        for i, a in enumerate(halves):
            for b in halves[i:]:
                yield a, b


def _to_graph(root: RootedTree, other: RootedTree | None) -> WeightedGraph:
    edges = []
    counter = [0]

    def place(t: RootedTree) -> int:
        # preorder numbering, iterative to stay clear of recursion limits
        me = counter[0]
        counter[0] += 1
        stack = [(me, iter(t))]
        while stack:
            v, it = stack[-1]
            child = next(it, None)
            if child is None:
                stack.pop()
                continue
            c = counter[0]
            counter[0] += 1
            edges.append((v, c))
            stack.append((c, iter(child)))
        return me

    r = place(root)
    if other is not None:
        s = place(other)
        edges.append((r, s))
    return WeightedGraph.from_edges(counter[0], edges)


def enumerate_free_trees(n_edges: int, max_degree: int | None = None) -> Iterator[WeightedGraph]:
    """One all-positive tree per isomorphism class with ``n_edges`` edges and degree <= max_degree."""
    for a, b in rooted_free_trees(n_edges, max_degree):
        yield _to_graph(a, b)


def tree_centers(t: WeightedGraph) -> list[int]:
    if not is_tree(t):
        raise GraphError("tree_centers needs a tree")
    n = t.vertex_count
    if n <= 2:
        return list(range(n))
    deg = [t.degree(v) for v in range(n)]
    layer = [v for v in range(n) if deg[v] == 1]
    left = n
    while left > 2:
        left -= len(layer)
        nxt = []
        for v in layer:
            for y, _ in t.adjacency[v]:
                deg[y] -= 1
                if deg[y] == 1:
                    nxt.append(y)
        layer = nxt
    return sorted(layer)


def _rooted_code(t: WeightedGraph, root: int) -> str:
    parent = {root: -1}
    order = [root]
    for x in order:
        for y, _ in t.adjacency[x]:
            if y != parent[x]:
                parent[y] = x
                order.append(y)
    codes: dict[int, list[str]] = {v: [] for v in order}
    out = ""
    for x in reversed(order):
        out = "(" + "".join(sorted(codes[x])) + ")"
        if parent[x] != -1:
            codes[parent[x]].append(out)
    return out


def canonical_form(t: WeightedGraph) -> str:
    """AHU parenthesis code of an (unweighted) tree, rooted at its centre."""
    if t.vertex_count == 0:
        return ""
    return min(_rooted_code(t, c) for c in tree_centers(t))


def trees_isomorphic(a: WeightedGraph, b: WeightedGraph) -> bool:
    return a.edge_count == b.edge_count and canonical_form(a) == canonical_form(b)
