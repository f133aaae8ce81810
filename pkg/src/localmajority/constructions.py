"""Named graph families and their canonical weighings.

Vertex numbering is fixed per family so outputs are reproducible:

* stars: centre 0, then each branch as consecutive ids walking away from the centre;
* combs: central path 0..t-1, then each pendant path as consecutive ids;
* dense blocks: shared vertex 0, then per copy its path ids followed by its block ids.

Generators return all-positive graphs; :func:`paper_weighing` applies the
negative layers for a given locality ``k``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import ceil, isqrt

from .graph import GraphError, WeightedGraph, complete_graph_prefix

FAMILIES = ("subdivided_star", "clipped_star", "comb", "alternating_comb", "dense_block")


@dataclass(frozen=True)
class ConstructionSpec:
    family: str
    t: int
    r: int | None = None
    k: int | None = None
    q: int | None = field(default=None)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise GraphError(f"unknown family {self.family!r}; expected one of {', '.join(FAMILIES)}")
        if self.t < 1:
            raise GraphError("t must be at least 1")
        if self.r is not None and self.r < 1:
            raise GraphError("r must be at least 1")

    def build(self) -> WeightedGraph:
        if self.family == "dense_block":
            if self.k is None:
                raise GraphError("dense_block needs k")
            return dense_block_graph(self.k, self.t)
        if self.r is None:
            raise GraphError(f"{self.family} needs r")
        return {
            "subdivided_star": subdivided_star,
            "clipped_star": clipped_star,
            "comb": comb,
            "alternating_comb": alternating_comb,
        }[self.family](self.t, self.r)


def _attach_path(edges: list, start: int, next_id: int, length: int) -> int:
    prev = start
    for _ in range(length):
        edges.append((prev, next_id))
        prev = next_id
        next_id += 1
    return next_id


def _star_with_lengths(lengths: list[int]) -> WeightedGraph:
    edges: list[tuple[int, int]] = []
    nxt = 1
    for length in lengths:
        nxt = _attach_path(edges, 0, nxt, length)
    return WeightedGraph.from_edges(nxt, edges)


def subdivided_star(t: int, r: int) -> WeightedGraph:
    """S_{t,r}: t paths of r edges sharing the centre vertex 0."""
    if t < 1 or r < 1:
        raise GraphError("subdivided_star needs t >= 1 and r >= 1")
    return _star_with_lengths([r] * t)


def clipped_star(t: int, r: int) -> WeightedGraph:
    """R_{t,r}: S_{t,r} with the leaf edge of its last branch removed."""
    if t < 1 or r < 2:
        raise GraphError("clipped_star needs t >= 1 and r >= 2")
    return _star_with_lengths([r] * (t - 1) + [r - 1])


def _comb_with_lengths(lengths: list[int]) -> WeightedGraph:
    t = len(lengths)
    edges = [(i, i + 1) for i in range(t - 1)]
    nxt = t
    for i, length in enumerate(lengths):
        nxt = _attach_path(edges, i, nxt, length)
    return WeightedGraph.from_edges(nxt, edges)


def comb(t: int, r: int) -> WeightedGraph:
    """C_{t,r}: a path on t vertices with a pendant path of r edges at each."""
    if t < 1 or r < 1:
        raise GraphError("comb needs t >= 1 and r >= 1")
    return _comb_with_lengths([r] * t)


def alternating_comb(t: int, r: int) -> WeightedGraph:
    """A_{t,r}: pendant paths of r edges at odd (1-based) positions and r+1 at even ones."""
    if t < 1 or r < 1:
        raise GraphError("alternating_comb needs t >= 1 and r >= 1")
    if t % 2 == 0:
        raise GraphError("alternating_comb is only defined for odd t")
    return _comb_with_lengths([r if i % 2 == 0 else r + 1 for i in range(t)])


def block_order(k: int) -> int:
    """Least q such that K_q has at least 3(k-3)/4 edges."""
    need = 3 * (k - 3) // 4
    q = max(1, (1 + isqrt(1 + 8 * need)) // 2)
    while q * (q - 1) // 2 < need:
        q += 1
    while q > 1 and (q - 1) * (q - 2) // 2 >= need:
        q -= 1
    return q


def _check_dense_k(k: int) -> None:
    if k % 4 != 3 or k < 11:
        raise GraphError(f"dense_block needs k = 3 (mod 4) and k >= 11, got {k}")


def dense_block_graph(k: int, t: int) -> WeightedGraph:
    """H_{k,t}: t copies of (path of (k+1)/4 edges ending in a dense block) glued at vertex 0."""
    _check_dense_k(k)
    if t < 1:
        raise GraphError("dense_block needs t >= 1")
    q = block_order(k)
    block = complete_graph_prefix(q, 3 * (k - 3) // 4)
    edges: list[tuple[int, int]] = []
    nxt = 1
    for _ in range(t):
        nxt = _attach_path(edges, 0, nxt, (k + 1) // 4)
        y = nxt - 1
        local = [y] + list(range(nxt, nxt + q - 1))
        nxt += q - 1
        edges.extend((local[a], local[b]) for a, b in block)
    return WeightedGraph.from_edges(nxt, edges)


def _negate_near_leaves(g: WeightedGraph, hub_count: int, layers: int) -> WeightedGraph:
    """Weight -1 on the ``layers`` edges nearest the leaf of every pendant path.

    Pendant paths are the paths hanging off vertices ``0..hub_count-1``.
    """
    dist_to_leaf: dict[int, int] = {}
    for h in range(hub_count):
        for y, _ in g.adjacency[h]:
            if y < hub_count:
                continue
            path = [h, y]
            while True:
                nxt = [z for z, _ in g.adjacency[path[-1]] if z != path[-2]]
                if not nxt:
                    break
                path.append(nxt[0])
            for pos in range(len(path) - 1):
                e = g.edge_index[(min(path[pos], path[pos + 1]), max(path[pos], path[pos + 1]))]
                dist_to_leaf[e] = len(path) - 2 - pos
    weights = [-1 if dist_to_leaf.get(i, layers) < layers else 1 for i in range(g.edge_count)]
    return g.with_weights(weights)


def paper_weighing(spec: ConstructionSpec, k: int | None = None) -> WeightedGraph:
    """The canonical k-local positive weighing for a construction.

    ``spec.r`` may be left as None and is then derived from ``k``; if given it
    must agree with the length the weighing requires.  For alternating combs
    ``spec.t`` is the central path length ``2q+1``.
    """
    k = spec.k if k is None else k
    if k is None:
        raise GraphError("paper_weighing needs k")
    fam, t = spec.family, spec.t
    m, res = divmod(k, 4)

    def need_r(r):
        if spec.r is not None and spec.r != r:
            raise GraphError(f"{fam} with k={k} uses r={r}, got r={spec.r}")
        return r

    if fam == "subdivided_star":
        if k < 3:
            raise GraphError("subdivided_star weighing needs k >= 3")
        r, layers = {3: (3 * m + 2, 2 * m + 1), 2: (3 * m + 1, 2 * m),
                     1: (3 * m + 1, 2 * m), 0: (3 * m, 2 * m - 1)}[res]
        return _negate_near_leaves(subdivided_star(t, need_r(r)), 1, layers)
    if fam == "clipped_star":
        if k not in (5, 8):
            raise GraphError("clipped_star weighing is defined for k = 5 and k = 8 only")
        r, layers = (4, 2) if k == 5 else (6, 3)
        return _negate_near_leaves(clipped_star(t, need_r(r)), 1, layers)
    if fam == "comb":
        if res not in (0, 1) or m < 1:
            raise GraphError("comb weighing is defined for k = 4m or 4m+1 with m >= 1")
        r, layers = (3 * m - 1, 2 * m - 1) if res == 0 else (3 * m, 2 * m)
        return _negate_near_leaves(comb(t, need_r(r)), t, layers)
    if fam == "alternating_comb":
        if res not in (2, 3) or m < 1:
            raise GraphError("alternating_comb weighing is defined for k = 4m+2 or 4m+3 with m >= 1")
        r, layers = (3 * m, 2 * m) if res == 2 else (3 * m + 1, 2 * m + 1)
        return _negate_near_leaves(alternating_comb(t, need_r(r)), t, layers)
    if fam == "dense_block":
        if spec.k is not None and spec.k != k:
            raise GraphError(f"dense_block built for k={spec.k} cannot be weighed for k={k}")
        g = dense_block_graph(k, t)
        q = block_order(k)
        path_len = (k + 1) // 4
        weights = [1] * g.edge_count
        for c in range(t):
            y = c * (path_len + q - 1) + path_len
            # block ids are increasing in local label, so canonical edge order is local lex order
            block_edges = [i for i, (u, v, _) in enumerate(g.edges) if y <= u and v < y + q]
            for i in block_edges[:(k - 1) // 2]:
                weights[i] = -1
        return g.with_weights(weights)
    raise GraphError(f"no weighing defined for family {fam!r}")


def closed_form_weight(spec: ConstructionSpec, k: int) -> int:
    """Total weight the canonical weighing is known to have, from its layer counts."""
    fam, t = spec.family, spec.t
    m, res = divmod(k, 4)
    if fam == "subdivided_star":
        return {3: -m * t, 2: -(m - 1) * t, 1: -(m - 1) * t, 0: -(m - 2) * t}[res]
    if fam == "clipped_star":
        return -1
    if fam == "comb":
        return -(m - 2) * t - 1 if res == 0 else -(m - 1) * t - 1
    if fam == "alternating_comb":
        q = (t - 1) // 2
        return -q * (2 * m - 3) - m if res == 2 else -q * (2 * m - 1) - m - 1
    if fam == "dense_block":
        return -t
    raise GraphError(f"no closed form for family {fam!r}")


def expected_edge_count(spec: ConstructionSpec) -> int:
    t, r = spec.t, spec.r
    if spec.family == "subdivided_star":
        return t * r
    if spec.family == "clipped_star":
        return t * r - 1
    if spec.family == "comb":
        return r * t + t - 1
    if spec.family == "alternating_comb":
        return (t - 1) + r * ceil(t / 2) + (r + 1) * (t // 2)
    if spec.family == "dense_block":
        return t * (spec.k - 2)
    raise GraphError(f"unknown family {spec.family!r}")
