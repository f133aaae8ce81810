"""Acceptance suite: one test per criterion, each at its stated tolerance and time limit.

Every test records a PASS/FAIL line through the ``report`` fixture; the
lines are printed together at the end of the pytest run.
"""

import contextlib
import io
import random
import time
from fractions import Fraction

from localmajority.classify import construction_claims
from localmajority.cli import main
from localmajority.constructions import ConstructionSpec, clipped_star, dense_block_graph, paper_weighing, subdivided_star
from localmajority.extremal import FamilyConstraint, exhaustive_min_weight, extremal_over_trees, min_weighing
from localmajority.gnk import REFERENCE_TABLE, certify_ratio_bound, gnk_table
from localmajority.graph import (
    WeightedGraph,
    average_degree,
    bridges,
    is_connected,
    peel_positive_cycle_edges,
    split_tree,
    total_weight,
    y_delta_transform,
)
from localmajority.subgraphs import is_k_local_positive, min_weight_connected_k_subgraph
from localmajority.trees import enumerate_free_trees, trees_isomorphic

from oracles import bridges_by_removal, connected_subsets, free_trees_by_growth


def test_criterion_01_reference_table(report):
    start = time.perf_counter()
    mismatches = []
    for k in range(7, 16):
        buf = io.StringIO()
        with contextlib.redirect_stdout(buf):
            code = main(["gnk", "--k", str(k), "--n-max", "35"])
        rows = buf.getvalue().splitlines()[1:]
        for n, row in enumerate(rows, start=1):
            if code != 0 or int(row.split(",")[1]) != REFERENCE_TABLE[n][k - 7]:
                mismatches.append((n, k))
        if len(rows) != 35:
            mismatches.append(("rows", k))
    elapsed = time.perf_counter() - start
    ok = not mismatches and elapsed < 1
    report(1, "gnk reproduces all 315 reference entries", ok, elapsed, 1,
           f"mismatches={mismatches[:5]}" if mismatches else "315/315 match")
    assert ok


def test_criterion_02_small_k_extremal(report):
    start = time.perf_counter()
    problems = []

    # completeness: pruned search equals the unpruned 2^m search on every tree up to 10 edges
    for n in range(1, 11):
        for t in enumerate_free_trees(n):
            for k in (3, 4, 5, 6, 8):
                r = min_weighing(t, k)
                if (None if r.vacuous else r.value) != exhaustive_min_weight(t, k):
                    problems.append(f"pruned != unpruned at n={n} k={k}")

    W = {}
    for k, lo in ((3, 4), (4, 5), (5, 7), (6, 8)):
        for n in range(lo, 13):
            W[n, k] = extremal_over_trees(n, k)

    bad4 = [n for n in range(5, 13) if W[n, 4].value < 1]
    if bad4:
        problems.append(f"W(n,4) >= 1 fails at n={bad4}")
    bad5 = {n: W[n, 5].value for n in range(7, 13) if W[n, 5].value != -1}
    if bad5:
        problems.append(f"W(n,5) = -1 fails: actual {bad5}")
    bad6 = {n: W[n, 6].value for n in range(8, 13) if W[n, 6].value != 0}
    if bad6:
        problems.append(f"W(n,6) = 0 fails: actual {bad6}")
    bad3 = [n for n in range(4, 13) if W[n, 3].value < 0 or (n % 2 == 0 and W[n, 3].value != 0)]
    if bad3:
        problems.append(f"W(n,3) claim fails at n={bad3}")
    r = extremal_over_trees(11, 8)
    if r.value != -1 or not trees_isomorphic(r.witness_graph, clipped_star(2, 6)):
        problems.append(f"W(11,8) = {r.value}, witness R_(2,6): {trees_isomorphic(r.witness_graph, clipped_star(2, 6))}")

    elapsed = time.perf_counter() - start
    ok = not problems and elapsed < 600
    report(2, "small-k exhaustive values over all trees", ok, elapsed, 600, "; ".join(problems))
    assert ok, problems


def test_criterion_03_degree_three_k6(report):
    start = time.perf_counter()
    c3 = FamilyConstraint(max_degree=3)
    at12 = extremal_over_trees(12, 6, c3)
    at13 = extremal_over_trees(13, 6, c3)
    elapsed = time.perf_counter() - start
    ok = (at12.value == 0 and trees_isomorphic(at12.witness_graph, subdivided_star(3, 4))
          and at13.value >= 1 and elapsed < 900)
    report(3, "max degree 3, k=6 threshold at 12 edges", ok, elapsed, 900,
           f"W_3(12,6)={at12.value}, W_3(13,6)={at13.value}")
    assert ok


def test_criterion_04_construction_identities(report):
    start = time.perf_counter()
    claims = construction_claims(max_edges=40, m_max=3, t_max=5, q_max=3)
    elapsed = time.perf_counter() - start
    failed = [c.line() for c in claims if not c.passed]
    ok = bool(claims) and not failed and elapsed < 300
    report(4, "closed-form weights and local positivity of every construction", ok, elapsed, 300,
           f"{len(claims) - len(failed)}/{len(claims)} instances" + (f"; {failed[:3]}" if failed else ""))
    assert ok, failed


def test_criterion_05_ratio_certificates(report):
    start = time.perf_counter()
    c7 = certify_ratio_bound(7, 5).c
    c10 = certify_ratio_bound(10, 7).c
    table = gnk_table(9, 42, {26: -4})
    c9 = min(table.ratio(n) for n in range(14, 43))
    elapsed = time.perf_counter() - start
    ok = c7 == Fraction(-1, 5) and c10 == Fraction(-1, 7) and c9 >= Fraction(-7, 31) and elapsed < 1
    report(5, "ratio certificates", ok, elapsed, 1, f"c(7,5)={c7}, c(10,7)={c10}, min g(n,9)/n={c9}")
    assert ok


def _random_positive_weighing(tree: WeightedGraph, k: int, rng: random.Random) -> WeightedGraph:
    # flip edges to -1 in random order while k-local positivity survives, up to a random budget
    weights = [1] * tree.edge_count
    budget = rng.randint(0, tree.edge_count)
    order = list(range(tree.edge_count))
    rng.shuffle(order)
    for i in order:
        if budget == 0:
            break
        weights[i] = -1
        if is_k_local_positive(tree.with_weights(weights), k):
            budget -= 1
        else:
            weights[i] = 1
    return tree.with_weights(weights)


def test_criterion_06_subtrees_respect_recurrence(report):
    start = time.perf_counter()
    rng = random.Random(20240601)
    trees = {n: list(enumerate_free_trees(n)) for n in range(5, 14)}
    tables = {k: gnk_table(k, 13) for k in range(5, 10)}
    violations = []
    samples = 0
    while samples < 200:
        k = rng.randint(5, 9)
        # trees with fewer than k edges are vacuously k-local positive and carry no constraint
        n = rng.randint(k, 13)
        tree = rng.choice(trees[n])
        if samples % 4 == 0:
            g = min_weighing(tree, k).witness_graph
        else:
            g = _random_positive_weighing(tree, k, rng)
        assert is_k_local_positive(g, k)
        samples += 1
        for size in range(1, n + 1):
            w = min_weight_connected_k_subgraph(g, size).weight
            if w < tables[k][size]:
                violations.append((g.edges, k, size, w))
    elapsed = time.perf_counter() - start
    ok = not violations and elapsed < 300
    report(6, "connected subtrees never weigh less than g(n',k)", ok, elapsed, 300,
           f"{samples} samples, {len(violations)} violations")
    assert ok, violations[:3]


def _graph_with_negative_cycle(rng: random.Random) -> tuple[WeightedGraph, list[int]]:
    s = rng.randint(3, 5)
    n = s + rng.randint(0, 4)
    cycle = rng.sample(range(n), s)
    edges = {}
    for i in range(s):
        a, b = cycle[i], cycle[(i + 1) % s]
        edges[min(a, b), max(a, b)] = -1
    placed = list(cycle)
    for v in range(n):
        if v not in cycle:
            u = rng.choice(placed)
            edges.setdefault((min(u, v), max(u, v)), rng.choice((-1, 1)))
            placed.append(v)
    for _ in range(rng.randint(0, 3)):
        a, b = rng.sample(range(n), 2)
        edges.setdefault((min(a, b), max(a, b)), rng.choice((-1, 1)))
    g = WeightedGraph.from_edges(n, [(u, v, w) for (u, v), w in edges.items()])
    idx = [g.edge_index[min(cycle[i], cycle[(i + 1) % s]), max(cycle[i], cycle[(i + 1) % s])] for i in range(s)]
    return g, idx


def test_criterion_07_ydelta_and_peeling(report):
    start = time.perf_counter()
    rng = random.Random(7)
    violations = []
    for _ in range(500):
        g, cycle = _graph_with_negative_cycle(rng)
        h = y_delta_transform(g, cycle)
        if total_weight(h) != total_weight(g):
            violations.append(("y-delta weight", g.edges))
        if any(h.degree(v) > g.degree(v) for v in range(g.vertex_count)):
            violations.append(("y-delta degree", g.edges))
        for k in range(1, g.edge_count + 1):
            before = min_weight_connected_k_subgraph(g, k).weight
            after = min_weight_connected_k_subgraph(h, k).weight
            if after < before:
                violations.append(("y-delta min", g.edges, k))

        # peeling on a re-signed copy so that positive cycle edges actually occur
        p = g.with_weights([rng.choice((-1, 1)) for _ in range(g.edge_count)])
        peeled, removed = peel_positive_cycle_edges(p)
        cut = set(bridges_by_removal(peeled))
        if total_weight(p) != total_weight(peeled) + removed:
            violations.append(("peel weight", p.edges))
        if not is_connected(peeled):
            violations.append(("peel connected", p.edges))
        if any(w == 1 and i not in cut for i, (_, _, w) in enumerate(peeled.edges)):
            violations.append(("peel bridges", p.edges))
    elapsed = time.perf_counter() - start
    ok = not violations and elapsed < 120
    report(7, "Y-Delta and peeling invariants on 500 random graphs", ok, elapsed, 120,
           f"{len(violations)} violations")
    assert ok, violations[:3]


def test_criterion_08_tree_split(report):
    start = time.perf_counter()
    bad = []
    checked = 0
    for n in range(2, 13):
        lo, hi = -(-n // 3), n // 2
        for t in enumerate_free_trees(n):
            small, rest = split_tree(t)
            checked += 1
            if not lo <= len(small) <= hi or len(small) + len(rest) != n or set(small) & set(rest):
                bad.append((t.edges, len(small)))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 60
    report(8, "tree split sizes within [ceil(n/3), floor(n/2)]", ok, elapsed, 60,
           f"{checked} trees, {len(bad)} bad")
    assert ok


def test_criterion_09_dense_block_instance(report):
    start = time.perf_counter()
    g = dense_block_graph(11, 2)
    # path edges: every vertex on the two pendant paths (hub included) has degree 2; block vertices have degree >= 3
    path_edges = tuple(i for i, (u, v, _) in enumerate(g.edges) if min(g.degree(u), g.degree(v)) <= 2)
    weighed = paper_weighing(ConstructionSpec("dense_block", 2, k=11))
    # oracle: every connected 11-edge subset, found by checking all C(18, 11) subsets
    subsets = connected_subsets(weighed, 11)
    oracle_positive = all(weighed.subgraph_weight(s) > 0 for s in subsets)
    facts = {
        "vertices": g.vertex_count == 13,
        "edges": g.edge_count == 18,
        "average degree": average_degree(g) == Fraction(36, 13),
        "bridges": bridges(g) == bridges_by_removal(g) == path_edges and len(path_edges) == 6
        and all(weighed.edges[i][2] == 1 for i in bridges(g)),
        "weight": total_weight(weighed) == -2,
        "11-local positive": oracle_positive and bool(subsets) and is_k_local_positive(weighed, 11),
    }
    elapsed = time.perf_counter() - start
    ok = all(facts.values()) and elapsed < 60
    report(9, "dense-block instance k=11, t=2", ok, elapsed, 60,
           ", ".join(f"{name}: {'ok' if v else 'WRONG'}" for name, v in facts.items()))
    assert ok, facts


def test_criterion_10_free_tree_counts(report):
    start = time.perf_counter()
    oracle = {v: len(free_trees_by_growth(v)) for v in range(2, 14)}
    ours = {v: sum(1 for _ in enumerate_free_trees(v - 1)) for v in range(2, 14)}
    elapsed = time.perf_counter() - start
    ok = oracle == ours and elapsed < 120
    report(10, "free-tree counts for 2..13 vertices match the growth oracle", ok, elapsed, 120,
           f"counts {list(ours.values())}")
    assert ok, (oracle, ours)
