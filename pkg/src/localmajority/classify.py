"""Finite-window evidence for forcing / weakly forcing / collapse, and scripted claim checks.

Nothing here proves anything about infinite families.  Status labels come
from heuristics over a window of W(n, k) values; the thresholds live in
:class:`EvidencePolicy` and can be changed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .cache import fmt_rational
from .constructions import ConstructionSpec, closed_form_weight, paper_weighing, subdivided_star, clipped_star
from .extremal import ExtremalResult, FamilyConstraint, extremal_over_trees
from .gnk import NON_COLLAPSING, REFERENCE_KS, REFERENCE_TABLE, TheoremBounds, gnk_table, theorem_c_bounds
from .graph import (
    average_degree,
    bridges,
    max_degree,
    peel_positive_cycle_edges,
    total_weight,
)
from .subgraphs import check_local_positivity
from .trees import trees_isomorphic

FORCING = "forcing-evidence"
WEAKLY = "weakly-forcing-evidence"
COLLAPSE = "collapse-evidence"
INCONCLUSIVE = "inconclusive"

Lookup = Callable[[int, int, "int | None"], "ExtremalResult | None"]


@dataclass(frozen=True)
class EvidencePolicy:
    """Heuristic thresholds for reading a finite window.

    upper_fraction: share of the window (from the top) that must be positive for forcing.
    min_attainments: how many distinct n must hit the plateau minimum for weak forcing.
    ratio_fraction: for collapse, the final third's worst W/n must reach this share of
        the window's worst W/n (keeps a slowly vanishing dip from counting).
    """

    upper_fraction: Fraction = Fraction(1, 2)
    min_attainments: int = 2
    ratio_fraction: Fraction = Fraction(1, 2)


@dataclass(frozen=True)
class Claim:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name}" + (f"  [{self.detail}]" if self.detail else "")


def _thirds(items: list) -> list[list]:
    n = len(items)
    cuts = [0, (n + 2) // 3, (2 * n + 2) // 3, n]
    return [items[cuts[i]:cuts[i + 1]] for i in range(3)]


def status_from_values(
    per_n: Mapping[int, int], policy: EvidencePolicy = EvidencePolicy()
) -> tuple[str, int | None, Fraction | None]:
    """Return ``(status, f_estimate, c_estimate)`` for a window of W(n, k) values."""
    pts = sorted(per_n.items())
    if not pts:
        return INCONCLUSIVE, None, None
    c_est = min(Fraction(w, n) for n, w in pts)
    cut = int(len(pts) * (1 - policy.upper_fraction))
    if all(w > 0 for _, w in pts[cut:]):
        return FORCING, None, c_est

    parts = _thirds(pts)
    if all(parts):
        mins = [min(w for _, w in p) for p in parts]
        final_ratio = min(Fraction(w, n) for n, w in parts[2])
        if (mins[0] > mins[1] > mins[2] and c_est < 0
                and final_ratio <= policy.ratio_fraction * c_est):
            return COLLAPSE, None, c_est

    head = parts[0] + parts[1] if all(parts) else pts
    plateau = min(w for _, w in head)
    hits = sum(1 for _, w in pts if w == plateau)
    tail_min = min(w for _, w in (parts[2] if all(parts) else pts))
    if plateau <= 0 and hits >= policy.min_attainments and tail_min >= plateau:
        return WEAKLY, plateau, c_est
    return INCONCLUSIVE, None, c_est


def expected_status(k: int, max_degree: int | None) -> str:
    """Classification the theorems assign to trees (and families containing them)."""
    if max_degree == 2:
        return FORCING
    if max_degree is None:
        if k in (1, 2, 4):
            return FORCING
        if k in (3, 5, 6, 8):
            return WEAKLY
        return COLLAPSE
    if k in (1, 2, 3, 4, 6):
        return FORCING
    if k in (5, 8):
        return WEAKLY
    return COLLAPSE


@dataclass
class ClassificationReport:
    k: int
    family: str
    max_degree: int | None
    per_n: dict[int, int]
    status: str
    f_estimate: int | None
    c_estimate: Fraction | None
    witnesses: dict[int, ExtremalResult] = field(default_factory=dict)
    vacuous_n: list[int] = field(default_factory=list)
    bounds: TheoremBounds | None = None
    theorem_verdicts: list[Claim] = field(default_factory=list)

    @property
    def cache_keys(self) -> list[tuple[int, int, int | None]]:
        return [(n, self.k, self.max_degree) for n in sorted(self.per_n)]

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "family": self.family,
            "max_degree": self.max_degree,
            "status": self.status,
            "per_n": {str(n): w for n, w in sorted(self.per_n.items())},
            "ratios": {str(n): fmt_rational(Fraction(w, n)) for n, w in sorted(self.per_n.items())},
            "f_estimate": self.f_estimate,
            "c_estimate": None if self.c_estimate is None else fmt_rational(self.c_estimate),
            "vacuous_n": self.vacuous_n,
            "bounds": None if self.bounds is None else {
                "family": self.bounds.family,
                "lower": fmt_rational(self.bounds.lower),
                "upper": fmt_rational(self.bounds.upper),
            },
            "witnesses": {
                str(n): {"graph": r.witness_graph.to_dict(), "weighing": list(r.witness_weighing)}
                for n, r in sorted(self.witnesses.items())
            },
            "theorem_verdicts": [{"claim": c.name, "passed": c.passed} for c in self.theorem_verdicts],
            "cache_keys": [list(key) for key in self.cache_keys],
        }

    def table(self) -> str:
        rows = [f"k={self.k}  family: {self.family}", f"{'n':>4}  {'W(n,k)':>7}  {'W/n':>8}  {'g(n,k)':>7}"]
        g = gnk_table(self.k, max(list(self.per_n) + self.vacuous_n + [1]))
        for n in sorted(self.per_n):
            rows.append(f"{n:>4}  {self.per_n[n]:>7}  {fmt_rational(Fraction(self.per_n[n], n)):>8}  {g[n]:>7}")
        rows.append(f"status: {self.status}")
        if self.f_estimate is not None:
            rows.append(f"f estimate: {self.f_estimate}")
        if self.c_estimate is not None:
            rows.append(f"c estimate: {fmt_rational(self.c_estimate)}")
        if self.bounds is not None:
            rows.append(f"slope bounds: [{fmt_rational(self.bounds.lower)}, {fmt_rational(self.bounds.upper)}]")
        rows.extend(c.line() for c in self.theorem_verdicts)
        return "\n".join(rows)


def _w(n: int, k: int, constraint: FamilyConstraint, lookup: Lookup | None, jobs: int) -> ExtremalResult:
    hit = lookup(n, k, constraint.max_degree) if lookup else None
    return hit if hit is not None else extremal_over_trees(n, k, constraint, jobs)


def classify(
    k: int,
    constraint: FamilyConstraint | None = None,
    n_window: Sequence[int] = (),
    policy: EvidencePolicy = EvidencePolicy(),
    lookup: Lookup | None = None,
    jobs: int = 1,
) -> ClassificationReport:
    constraint = constraint or FamilyConstraint()
    results = {n: _w(n, k, constraint, lookup, jobs) for n in n_window}
    per_n = {n: r.value for n, r in results.items() if not r.vacuous}
    vac = sorted(n for n, r in results.items() if r.vacuous)
    status, f_est, c_est = status_from_values(per_n, policy)

    delta = constraint.max_degree
    verdicts = []
    if per_n:
        g = gnk_table(k, max(per_n))
        verdicts.append(Claim(
            "W(n,k) >= g(n,k) on the window",
            all(w >= g[n] for n, w in per_n.items() if n >= k),
        ))
    want = expected_status(k, delta)
    verdicts.append(Claim(f"status matches theorem ({want})", status == want))
    bounds = None
    if k not in NON_COLLAPSING and delta != 2:
        bounds = theorem_c_bounds(k, "general" if delta is None else "degree_bounded")
        if c_est is not None:
            verdicts.append(Claim(
                f"c estimate >= slope lower bound {fmt_rational(bounds.lower)}",
                c_est >= bounds.lower,
            ))
    return ClassificationReport(
        k, constraint.describe(), delta, per_n, status, f_est, c_est,
        witnesses={n: r for n, r in results.items() if not r.vacuous},
        vacuous_n=vac, bounds=bounds, theorem_verdicts=verdicts,
    )


def check_table(n_max: int = 35) -> list[Claim]:
    """Recompute the reference g(n, k) table for k = 7..15."""
    claims = []
    for k in REFERENCE_KS:
        g = gnk_table(k, n_max)
        bad = [n for n in range(1, min(n_max, 35) + 1) if g[n] != REFERENCE_TABLE[n][k - 7]]
        claims.append(Claim(f"g(n,{k}) matches reference for n=1..{min(n_max, 35)}", not bad,
                            f"mismatch at n={bad}" if bad else ""))
    return claims


def check_small_k_claims(n_max: int = 12, lookup: Lookup | None = None, jobs: int = 1) -> list[Claim]:
    """Exhaustive checks of the weak-forcing values for k = 3, 4, 5, 6, 8 on all trees.

    Total weight always has the parity of the edge count, so the attained
    minima are checked at the sizes where they can occur.
    """
    tc = FamilyConstraint()
    W = {}

    def w(n, k):
        if (n, k) not in W:
            W[n, k] = _w(n, k, tc, lookup, jobs)
        return W[n, k]

    claims = []
    rng4 = range(5, n_max + 1)
    claims.append(Claim(f"W(n,4) >= 1 for n in [5,{n_max}]", all(w(n, 4).value >= 1 for n in rng4)))
    rng3 = range(4, n_max + 1)
    claims.append(Claim(f"W(n,3) >= 0 for n in [4,{n_max}]", all(w(n, 3).value >= 0 for n in rng3)))
    claims.append(Claim("W(n,3) = 0 at even n", all(w(n, 3).value == 0 for n in rng3 if n % 2 == 0)))
    rng5 = range(5, n_max + 1)
    claims.append(Claim(f"W(n,5) >= -1 for n in [5,{n_max}]", all(w(n, 5).value >= -1 for n in rng5)))
    for n in range(7, n_max + 1, 4):
        r = w(n, 5)
        ok = r.value == -1 and trees_isomorphic(r.witness_graph, clipped_star((n + 1) // 4, 4))
        claims.append(Claim(f"W({n},5) = -1, clipped star R_{{{(n + 1) // 4},4}} attains it",
                            r.value == -1 and _attains(clipped_star((n + 1) // 4, 4), 5, -1),
                            "" if ok else "reported witness is another optimal tree"))
    rng6 = range(6, n_max + 1)
    claims.append(Claim(f"W(n,6) >= 0 for n in [6,{n_max}]", all(w(n, 6).value >= 0 for n in rng6)))
    for n in range(8, n_max + 1, 4):
        claims.append(Claim(f"W({n},6) = 0, subdivided star S_{{{n // 4},4}} attains it",
                            w(n, 6).value == 0 and _attains(subdivided_star(n // 4, 4), 6, 0)))
    rng8 = range(8, n_max + 1)
    claims.append(Claim(f"W(n,8) >= -1 for n in [8,{n_max}]", all(w(n, 8).value >= -1 for n in rng8)))
    if n_max >= 11:
        r = w(11, 8)
        claims.append(Claim("W(11,8) = -1 with witness isomorphic to R_{2,6}",
                            r.value == -1 and trees_isomorphic(r.witness_graph, clipped_star(2, 6))))
    return claims


def _attains(tree, k: int, value: int) -> bool:
    from .extremal import min_weighing

    return min_weighing(tree, k).value == value


def check_degree_bounded_claims(delta: int = 3, n_max: int = 13, lookup: Lookup | None = None,
                                jobs: int = 1) -> list[Claim]:
    """The 4*delta threshold for k = 6 and the comb witnesses for k = 5, 8 at bounded degree."""
    tc = FamilyConstraint(max_degree=delta)
    claims = []
    n0 = 4 * delta
    if n0 <= n_max:
        r = _w(n0, 6, tc, lookup, jobs)
        claims.append(Claim(
            f"W_{delta}({n0},6) = 0 with witness isomorphic to S_{{{delta},4}}",
            r.value == 0 and trees_isomorphic(r.witness_graph, subdivided_star(delta, 4)),
        ))
    for n in range(n0 + 1, n_max + 1):
        r = _w(n, 6, tc, lookup, jobs)
        claims.append(Claim(f"W_{delta}({n},6) >= 1", r.value >= 1, f"W={r.value}"))
    for k, r_len in ((5, 3), (8, 5)):
        for t in range(1, 6):
            spec = ConstructionSpec("comb", t, r_len, k)
            g = paper_weighing(spec)
            n = g.edge_count
            if n > max(n_max, 20) or n < k:
                continue
            lp = check_local_positivity(g, k)
            ok = lp.positive and total_weight(g) == -1 and max_degree(g) <= delta
            claims.append(Claim(f"C_{{{t},{r_len}}} shows W_{delta}({n},{k}) <= -1", ok))
            if n <= n_max:
                w = _w(n, k, tc, lookup, jobs)
                claims.append(Claim(f"W_{delta}({n},{k}) = -1", w.value == -1, f"W={w.value}"))
    return claims


@dataclass(frozen=True)
class AvgDegreeVerdict:
    k: int
    t: int
    alpha: Fraction
    average_degree: Fraction
    member: bool
    weight: int
    local_positive: bool
    peeled_edges: int
    bridges_after_peel: int
    edges: int
    vertices: int

    @property
    def passed(self) -> bool:
        return self.local_positive and self.weight == -self.t

    def to_dict(self) -> dict:
        return {
            "k": self.k, "t": self.t, "alpha": fmt_rational(self.alpha),
            "average_degree": fmt_rational(self.average_degree), "member": self.member,
            "weight": self.weight, "local_positive": self.local_positive,
            "peeled_edges": self.peeled_edges, "bridges_after_peel": self.bridges_after_peel,
            "edges": self.edges, "vertices": self.vertices,
        }


def check_avg_degree_instances(k: int, t: int, alpha: Fraction | int | str) -> AvgDegreeVerdict:
    """Weighed dense-block graph: membership at average degree alpha, weight -t, k-local positivity."""
    alpha = Fraction(alpha)
    spec = ConstructionSpec("dense_block", t, k=k)
    g = paper_weighing(spec)
    avg = average_degree(g)
    peeled, x = peel_positive_cycle_edges(g)
    return AvgDegreeVerdict(
        k, t, alpha, avg, avg >= alpha, total_weight(g), check_local_positivity(g, k).positive,
        x, len(bridges(peeled)), g.edge_count, g.vertex_count,
    )


def construction_claims(max_edges: int = 40, m_max: int = 3, t_max: int = 5, q_max: int = 3) -> list[Claim]:
    """Every canonical weighing in the sampled range has its closed-form weight and is k-local positive."""
    specs = []
    for m in range(0, m_max + 1):
        for k in (4 * m, 4 * m + 1, 4 * m + 2, 4 * m + 3):
            if k < 3:
                continue
            for t in range(1, t_max + 1):
                specs.append((ConstructionSpec("subdivided_star", t), k))
                if k % 4 in (0, 1) and m >= 1:
                    specs.append((ConstructionSpec("comb", t), k))
                if k % 4 == 3 and k >= 11:
                    specs.append((ConstructionSpec("dense_block", t, k=k), k))
            if k % 4 in (2, 3) and m >= 1:
                for q in range(0, q_max + 1):
                    specs.append((ConstructionSpec("alternating_comb", 2 * q + 1), k))
    for t in range(1, t_max + 1):
        specs.append((ConstructionSpec("clipped_star", t), 5))
        specs.append((ConstructionSpec("clipped_star", t), 8))
    claims = []
    for spec, k in specs:
        g = paper_weighing(spec, k)
        if g.edge_count > max_edges:
            continue
        want = closed_form_weight(spec, k)
        lp = check_local_positivity(g, k)
        name = f"{spec.family} t={spec.t} k={k} ({g.edge_count} edges)"
        claims.append(Claim(name, total_weight(g) == want and lp.positive,
                            f"weight {total_weight(g)} vs {want}, positive={lp.positive}"))
    return claims
