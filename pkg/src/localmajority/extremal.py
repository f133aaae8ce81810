"""Exact minimum total weight over k-local positive weighings.

For one graph the search is a branch and bound over the sign of each edge.
For a tree size it runs over every non-isomorphic tree from
:mod:`localmajority.trees`.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .graph import GraphError, WeightedGraph, average_degree, is_connected, max_degree
from .subgraphs import connected_edge_masks, enumerate_connected_edge_subsets
from .trees import enumerate_free_trees


@dataclass(frozen=True)
class FamilyConstraint:
    max_degree: int | None = None
    min_avg_degree: Fraction | None = None

    def __post_init__(self):
        if self.max_degree is not None and self.max_degree < 2:
            raise ValueError("max_degree must be at least 2")

    def admits(self, g: WeightedGraph) -> bool:
        if self.max_degree is not None and max_degree(g) > self.max_degree:
            return False
        if self.min_avg_degree is not None and average_degree(g) < self.min_avg_degree:
            return False
        return True

    def describe(self) -> str:
        parts = ["trees"]
        if self.max_degree is not None:
            parts.append(f"max degree <= {self.max_degree}")
        if self.min_avg_degree is not None:
            parts.append(f"average degree >= {self.min_avg_degree}")
        return ", ".join(parts)


@dataclass
class ExtremalResult:
    """Minimum achievable total weight and a weighing that attains it.

    ``vacuous`` marks instances with no connected k-edge subgraph; their value
    is -|E| and they carry no information about k.
    """

    k: int
    value: int
    witness_graph: WeightedGraph
    witness_weighing: tuple[int, ...]
    stats: dict = field(default_factory=dict)
    vacuous: bool = False

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "value": self.value,
            "vacuous": self.vacuous,
            "witness_graph": self.witness_graph.to_dict(),
            "witness_weighing": list(self.witness_weighing),
            "stats": {key: v for key, v in sorted(self.stats.items()) if key != "elapsed"},
        }


def _packing(masks: list[int]) -> list[int]:
    # greedy family of pairwise disjoint k-subsets, smallest masks first
    chosen, used = [], 0
    for s in sorted(masks):
        if not s & used:
            chosen.append(s)
            used |= s
    return chosen


def _max_negatives(
    g: WeightedGraph, k: int, masks: list[int], floor: int, neg_fixed: int = 0, pos_fixed: int = 0
) -> tuple[int, int | None, int, int]:
    """Largest number of -1 edges in a k-local positive weighing, if it exceeds ``floor``.

    Edges in ``neg_fixed`` / ``pos_fixed`` are forced to -1 / +1.  Returns
    ``(best, mask, nodes, prunes)``; ``mask`` is None when nothing beats ``floor``.
    """
    m = g.edge_count
    limit = (k - 1) // 2
    cover = [0] * m
    touching: list[list[int]] = [[] for _ in range(m)]
    for s in masks:
        for i in range(m):
            if s >> i & 1:
                cover[i] += 1
                touching[i].append(s)
    order = sorted(range(m), key=lambda i: (-cover[i], i))
    undecided = [0] * (m + 1)
    for d in range(m - 1, -1, -1):
        undecided[d] = undecided[d + 1] | (1 << order[d])
    packing = _packing(masks)
    outside = ((1 << m) - 1) & ~sum(packing)

    best_neg = floor
    best_mask = None
    nodes = prunes = 0

    def bound(d: int, neg_mask: int) -> int:
        # each packed subgraph holds at most `limit` negatives whatever happens elsewhere
        free = undecided[d]
        total = ((neg_mask | free) & outside).bit_count()
        for s in packing:
            total += min(limit, ((neg_mask | free) & s).bit_count())
        return total

    def dfs(d: int, neg_mask: int, neg_count: int) -> None:
        nonlocal best_neg, best_mask, nodes, prunes
        nodes += 1
        if neg_count + (m - d) <= best_neg or bound(d, neg_mask) <= best_neg:
            prunes += 1
            return
        if d == m:
            best_neg, best_mask = neg_count, neg_mask
            return
        e = order[d]
        bit = 1 << e
        if not pos_fixed & bit:
            trial = neg_mask | bit
            for s in touching[e]:
                if (trial & s).bit_count() > limit:
                    prunes += 1
                    break
            else:
                dfs(d + 1, trial, neg_count + 1)
        if not neg_fixed & bit:
            dfs(d + 1, neg_mask, neg_count)

    dfs(0, 0, 0)
    return best_neg, best_mask, nodes, prunes


def _lex_least(g: WeightedGraph, k: int, masks: list[int], best: int, mask: int) -> int:
    """Among weighings with ``best`` negatives, the lexicographically least one (-1 before +1).

    ``mask`` is any optimal weighing; it is re-used as long as it agrees with the prefix fixed so far.
    """
    neg_fixed = pos_fixed = 0
    for i in range(g.edge_count):
        bit = 1 << i
        if not mask & bit:
            _, found, _, _ = _max_negatives(g, k, masks, best - 1, neg_fixed | bit, pos_fixed)
            if found is not None:
                mask = found
        if mask & bit:
            neg_fixed |= bit
        else:
            pos_fixed |= bit
    return mask


def _check_input(g: WeightedGraph, k: int) -> None:
    if not is_connected(g):
        raise GraphError("min_weighing needs a connected graph")
    if k <= 0:
        raise ValueError("k must be positive")


def min_weighing(g: WeightedGraph, k: int) -> ExtremalResult:
    """Minimum of w(G) over all k-local positive weighings of the connected graph ``g``.

    Edges are decided most-constrained first (by how many connected k-edge
    subgraphs contain them), trying -1 before +1.  A partial assignment dies
    as soon as a k-edge subgraph holds more than floor((k-1)/2) negative
    edges, or when an upper bound on the reachable number of negatives (from
    a fixed packing of disjoint k-edge subgraphs) cannot beat the incumbent.
    Among optimal weighings the lexicographically least one (reading -1
    before +1 in edge order) is returned.
    """
    _check_input(g, k)
    return _weigh(g, k, None)[0]


def _weigh(
    g: WeightedGraph, k: int, beat: int | None, canonical: bool = True
) -> tuple[ExtremalResult | None, dict]:
    """Search ``g``; with ``beat`` set, only weighings of total weight below it are reported.

    Returns ``(result, stats)`` where result is None if nothing beats ``beat``.
    With ``canonical`` the reported weighing is the lexicographically least optimum.
    """
    start = time.perf_counter()
    m = g.edge_count
    masks = connected_edge_masks(g, k)
    if not masks:
        stats = {"nodes": 0, "prunes": 0, "subgraphs": 0, "elapsed": time.perf_counter() - start}
        return ExtremalResult(k, -m, g.with_weights([-1] * m), (-1,) * m, stats, vacuous=True), stats
    # weight m - 2*neg < beat  <=>  neg > (m - beat) / 2
    floor = -1 if beat is None else (m - beat) // 2
    best, mask, nodes, prunes = _max_negatives(g, k, masks, floor)
    stats = {"nodes": nodes, "prunes": prunes, "subgraphs": len(masks),
             "elapsed": time.perf_counter() - start}
    if mask is None:
        return None, stats
    if canonical:
        mask = _lex_least(g, k, masks, best, mask)
    weighing = tuple(-1 if mask >> i & 1 else 1 for i in range(m))
    return ExtremalResult(k, m - 2 * best, g.with_weights(weighing), weighing, stats), stats


def exhaustive_min_weight(g: WeightedGraph, k: int) -> int | None:
    """Minimum over all 2^|E| weighings with no pruning, or None when vacuous.

    Kept independent of :func:`min_weighing` to cross-check it.
    """
    m = g.edge_count
    subsets = list(enumerate_connected_edge_subsets(g, k))
    if not subsets:
        return None
    if m > 22:
        raise ValueError("exhaustive search is limited to 22 edges")
    incidence = np.zeros((m, len(subsets)), dtype=np.int16)
    for j, s in enumerate(subsets):
        incidence[list(s), j] = 1
    codes = np.arange(1 << m, dtype=np.int64)
    neg = ((codes[:, None] >> np.arange(m)) & 1).astype(np.int16)
    per_subset = neg @ incidence
    weights = k - 2 * per_subset
    ok = (weights > 0).all(axis=1)
    totals = m - 2 * neg.sum(axis=1)
    return int(totals[ok].min())


def _search_chunk(args) -> tuple[int, int, ExtremalResult | None, int, int, int]:
    k, base, trees = args
    best = None
    best_idx = -1
    vac = nodes = 0
    for off, t in enumerate(trees):
        # a later tree only matters if strictly better, which keeps the earliest optimum
        r, stats = _weigh(t, k, None if best is None else best.value, canonical=False)
        nodes += stats["nodes"]
        if r is None:
            continue
        if r.vacuous:
            vac += 1
            continue
        best, best_idx = r, base + off
    return best_idx, len(trees), best, vac, nodes, base


def _chunks(items: Iterable[WeightedGraph], size: int):
    batch: list[WeightedGraph] = []
    base = 0
    for t in items:
        batch.append(t)
        if len(batch) == size:
            yield base, batch
            base += len(batch)
            batch = []
    if batch:
        yield base, batch


def extremal_over_trees(
    n_edges: int,
    k: int,
    constraint: FamilyConstraint | None = None,
    jobs: int = 1,
) -> ExtremalResult:
    """W(n, k): minimum weight over every tree with ``n_edges`` edges in the family.

    Trees are visited in generation order and the earliest optimal tree wins,
    so the result does not depend on ``jobs``.  If every tree is vacuous
    (``n_edges < k``) the result is flagged vacuous.
    """
    constraint = constraint or FamilyConstraint()
    start = time.perf_counter()
    trees = (t for t in enumerate_free_trees(n_edges, constraint.max_degree) if constraint.admits(t))
    chunk = 64
    work = ((k, base, batch) for base, batch in _chunks(trees, chunk))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_search_chunk, work))
    else:
        parts = [_search_chunk(w) for w in work]

    examined = sum(p[1] for p in parts)
    vacuous = sum(p[3] for p in parts)
    nodes = sum(p[4] for p in parts)
    found = [(p[2].value, p[0], p[2]) for p in parts if p[2] is not None]
    stats = {"trees": examined, "vacuous_trees": vacuous, "nodes": nodes}
    if not found:
        if examined == 0:
            raise GraphError(f"no tree with {n_edges} edges satisfies {constraint.describe()}")
        path = next(iter(enumerate_free_trees(n_edges, constraint.max_degree)))
        res = ExtremalResult(k, -n_edges, path.with_weights([-1] * n_edges), (-1,) * n_edges, stats, True)
    else:
        _, idx, res = min(found, key=lambda x: (x[0], x[1]))
        res = _weigh(res.witness_graph.with_weights([1] * n_edges), k, None)[0]
        res = ExtremalResult(k, res.value, res.witness_graph, res.witness_weighing, dict(stats, tree_index=idx))
    res.stats["elapsed"] = time.perf_counter() - start
    return res


def extremal_profile(
    k: int,
    constraint: FamilyConstraint | None,
    n_range: Sequence[int],
    jobs: int = 1,
    lookup=None,
) -> dict[int, ExtremalResult]:
    """W(n, k) for each n in ``n_range``.  ``lookup(n, k, max_degree)`` may supply cached results."""
    out = {}
    for n in n_range:
        hit = lookup(n, k, (constraint or FamilyConstraint()).max_degree) if lookup else None
        out[n] = hit if hit is not None else extremal_over_trees(n, k, constraint, jobs)
    return out


def estimate_slope(
    k: int,
    constraint: FamilyConstraint | None,
    n_range: Sequence[int],
    jobs: int = 1,
) -> Fraction:
    """min W(n, k)/n over the non-vacuous sizes in ``n_range``: a finite-size view of the slope."""
    prof = extremal_profile(k, constraint, n_range, jobs)
    ratios = [Fraction(r.value, n) for n, r in prof.items() if not r.vacuous]
    if not ratios:
        raise ValueError("every size in the range is vacuous for this k")
    return min(ratios)
