"""Command-line entry point: ``lml <command> ...``.

Exit status is 0 on success, 1 when a domain precondition fails or a
scripted check reports a failure, and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .cache import ResultCache, extremal_record, fmt_rational, result_from_record
from .classify import (
    check_avg_degree_instances,
    check_degree_bounded_claims,
    check_small_k_claims,
    check_table,
    classify,
)
from .constructions import FAMILIES, ConstructionSpec, paper_weighing
from .extremal import ExtremalResult, FamilyConstraint, extremal_over_trees
from .gnk import gnk_table
from .graph import (
    GraphError,
    WeightedGraph,
    bridges,
    peel_positive_cycle_edges,
    split_tree,
    total_weight,
    y_delta_transform,
)

log = logging.getLogger("localmajority")


def _override(text: str) -> tuple[int, int]:
    try:
        n, v = text.split("=")
        return int(n), int(v)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected n=v with integers, got {text!r}") from None


def _positive(text: str) -> int:
    try:
        x = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if x < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {x}")
    return x


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational like 5/2, got {text!r}") from None


def _edge_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated edge indices, got {text!r}") from None


def _read_graph(path: str) -> WeightedGraph:
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise GraphError(f"cannot read {path}: {exc.strerror}") from None
    return WeightedGraph.from_json(text)


def _emit_json(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _cache(args) -> ResultCache | None:
    if getattr(args, "no_cache", False):
        return None
    return ResultCache(args.cache_dir)


def _solver(cache: ResultCache | None, jobs: int):
    """lookup(n, k, max_degree) that reads the cache, computes on a miss and records the result."""

    def solve(n: int, k: int, max_degree: int | None) -> ExtremalResult:
        if cache is not None:
            rec = cache.lookup(n, k, max_degree)
            if rec is not None:
                log.info("cache hit for n=%d k=%d max_degree=%s", n, k, max_degree)
                return result_from_record(rec)
        res = extremal_over_trees(n, k, FamilyConstraint(max_degree), jobs)
        if cache is not None:
            cache.append(extremal_record(res, n, k, max_degree))
        return res

    return solve


def cmd_gnk(args) -> int:
    table = gnk_table(args.k, args.n_max, dict(args.override))
    out = csv.writer(sys.stdout, lineterminator="\n")
    out.writerow(["n", "g", "g_over_n"])
    for n in range(1, args.n_max + 1):
        out.writerow([n, table[n], fmt_rational(table.ratio(n))])
    if table.uses_unproven_overrides:
        log.warning("overrides include a claimed, not machine-checked, value")
    return 0


def cmd_construct(args) -> int:
    spec = ConstructionSpec(args.family, args.t, args.r, args.k)
    if args.weighing == "paper":
        g = paper_weighing(spec, args.k)
    else:
        g = spec.build()
    sys.stdout.write(g.to_json() + "\n")
    log.info("%d vertices, %d edges, total weight %d", g.vertex_count, g.edge_count, total_weight(g))
    return 0


def cmd_check(args) -> int:
    lookup = _solver(_cache(args), args.jobs)
    if args.suite == "table1":
        claims = check_table()
    elif args.suite == "small-k":
        claims = check_small_k_claims(args.n_max or 12, lookup=lookup)
    elif args.suite == "degree":
        delta = args.max_degree or 3
        claims = check_degree_bounded_claims(delta, args.n_max or 4 * delta + 1, lookup=lookup)
    else:
        verdict = check_avg_degree_instances(args.k or 11, args.t or 2, args.alpha)
        _emit_json(verdict.to_dict())
        return 0 if verdict.passed else 1
    for c in claims:
        print(c.line())
    failed = sum(not c.passed for c in claims)
    print(f"{len(claims) - failed}/{len(claims)} claims passed")
    return 1 if failed else 0


def cmd_extremal(args) -> int:
    res = _solver(_cache(args), args.jobs)(args.n, args.k, args.max_degree)
    out = res.to_dict()
    out["stats"].pop("cached", None)
    out["n"] = args.n
    out["max_degree"] = args.max_degree
    _emit_json(out)
    return 0


def cmd_classify(args) -> int:
    lo = args.n_from if args.n_from is not None else args.k
    hi = args.n_to if args.n_to is not None else lo + 8
    if hi < lo:
        raise ValueError(f"--n-to ({hi}) must be at least --n-from ({lo})")
    constraint = FamilyConstraint(args.max_degree)
    report = classify(args.k, constraint, range(lo, hi + 1), lookup=_solver(_cache(args), args.jobs))
    if args.format == "json":
        _emit_json(report.to_dict())
    elif args.format == "csv":
        out = csv.writer(sys.stdout, lineterminator="\n")
        out.writerow(["n", "W", "W_over_n"])
        for n, w in sorted(report.per_n.items()):
            out.writerow([n, w, fmt_rational(Fraction(w, n))])
    else:
        print(report.table())
    if args.report:
        Path(args.report).write_text(json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n")
    return 0


def cmd_split(args) -> int:
    g = _read_graph(args.graph)
    small, rest = split_tree(g)
    _emit_json({"edges": g.edge_count, "parts": [list(small), list(rest)], "sizes": [len(small), len(rest)]})
    return 0


def cmd_ydelta(args) -> int:
    g = _read_graph(args.graph)
    h = y_delta_transform(g, args.cycle)
    sys.stdout.write(h.to_json() + "\n")
    return 0


def cmd_peel(args) -> int:
    g = _read_graph(args.graph)
    h, removed = peel_positive_cycle_edges(g)
    _emit_json({
        "graph": h.to_dict(),
        "removed": removed,
        "bridges": len(bridges(h)),
        "weight_before": total_weight(g),
        "weight_after": total_weight(h),
    })
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lml", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def cached(sp):
        sp.add_argument("--jobs", type=_positive, default=1, help="worker processes for tree searches")
        sp.add_argument("--no-cache", action="store_true", help="ignore and do not write the results cache")
        sp.add_argument("--cache-dir", default=None, help="cache directory (default: $LML_CACHE_DIR or ~/.cache/localmajority)")

    sp = sub.add_parser("gnk", help="tabulate g(n, k) as CSV")
    sp.add_argument("--k", type=_positive, required=True)
    sp.add_argument("--n-max", type=_positive, required=True)
    sp.add_argument("--override", type=_override, action="append", default=[], metavar="N=V",
                    help="replace g(N, k) by V before later values are computed; repeatable")
    sp.set_defaults(func=cmd_gnk)

    sp = sub.add_parser("construct", help="build a construction family member as interchange JSON")
    sp.add_argument("--family", choices=FAMILIES, required=True)
    sp.add_argument("--t", type=int, required=True)
    sp.add_argument("--r", type=int)
    sp.add_argument("--k", type=int)
    sp.add_argument("--weighing", choices=("paper", "positive"), default="positive",
                    help="'paper' applies the canonical k-local positive weighing")
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("check", help="run a scripted claim suite")
    sp.add_argument("--suite", choices=("small-k", "degree", "avg-degree", "table1"), required=True)
    sp.add_argument("--n-max", type=_positive)
    sp.add_argument("--max-degree", type=int)
    sp.add_argument("--k", type=int, help="avg-degree suite: locality (default 11)")
    sp.add_argument("--t", type=int, help="avg-degree suite: number of copies (default 2)")
    sp.add_argument("--alpha", type=_rational, default=Fraction(5, 2), help="avg-degree suite: threshold")
    cached(sp)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("extremal", help="W(n, k) over all trees with n edges")
    sp.add_argument("--n", type=_positive, required=True)
    sp.add_argument("--k", type=_positive, required=True)
    sp.add_argument("--max-degree", type=int)
    cached(sp)
    sp.set_defaults(func=cmd_extremal)

    sp = sub.add_parser("classify", help="evidence band for one k over a window of tree sizes")
    sp.add_argument("--k", type=_positive, required=True)
    sp.add_argument("--max-degree", type=int)
    sp.add_argument("--n-from", type=_positive)
    sp.add_argument("--n-to", type=_positive)
    sp.add_argument("--format", choices=("table", "json", "csv"), default="table")
    sp.add_argument("--report", metavar="FILE", help="also write the JSON report here")
    cached(sp)
    sp.set_defaults(func=cmd_classify)

    for name, func, text in (
        ("split", cmd_split, "split a tree into two subtrees"),
        ("ydelta", cmd_ydelta, "replace an all-negative cycle by a star"),
        ("peel", cmd_peel, "delete +1 edges on cycles until all are bridges"),
    ):
        sp = sub.add_parser(name, help=text)
        sp.add_argument("--graph", required=True, metavar="FILE", help="interchange JSON, or - for stdin")
        if name == "ydelta":
            sp.add_argument("--cycle", type=_edge_list, required=True, metavar="I,J,...",
                            help="edge indices of the cycle")
        sp.set_defaults(func=func)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except (GraphError, ValueError) as exc:
        print(f"lml {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
