"""Append-only JSON-lines store of extremal search results.

Records are keyed by ``(n, k, max_degree)``.  A record is only trusted after
its witness has been re-checked, so a bad line degrades to a cache miss.
"""

from __future__ import annotations

import fcntl
import json
import logging
import os
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path

from . import __version__
from .graph import GraphError, is_tree, max_degree, parse_graph_document, total_weight
from .subgraphs import is_k_local_positive

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1
CACHE_ENV = "LML_CACHE_DIR"


def fmt_rational(x: Fraction | int) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s: str) -> Fraction:
    return Fraction(s)


def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "localmajority"


@dataclass
class ResultRecord:
    command: str
    parameters: dict
    outputs: dict
    schema_version: int = SCHEMA_VERSION
    timestamps: dict = field(default_factory=dict)
    revision: str = __version__

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @property
    def key(self) -> tuple[int, int, int | None]:
        p = self.parameters
        return p["n"], p["k"], p.get("max_degree")


def verify_record(rec: ResultRecord) -> None:
    """Raise ValueError unless the stored witness really attains the stored value."""
    out = rec.outputs
    n, k, delta = rec.key
    g = parse_graph_document(out["witness_graph"])
    if g.edge_count != n or not is_tree(g):
        raise ValueError("witness is not a tree of the recorded size")
    if delta is not None and max_degree(g) > delta:
        raise ValueError("witness exceeds the recorded maximum degree")
    if list(g.weights) != list(out["witness_weighing"]):
        raise ValueError("witness weighing does not match the witness graph")
    if total_weight(g) != out["value"]:
        raise ValueError("witness weight differs from recorded value")
    if not out.get("vacuous") and not is_k_local_positive(g, k):
        raise ValueError("witness is not k-local positive")


class ResultCache:
    def __init__(self, directory: str | Path | None = None):
        self.directory = Path(directory) if directory is not None else default_cache_dir()
        self.path = self.directory / "results.jsonl"

    def records(self):
        if not self.path.exists():
            return
        with open(self.path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.strip()
                if not line:
                    continue
                try:
                    yield lineno, ResultRecord(**json.loads(line))
                except (TypeError, ValueError) as exc:
                    log.warning("cache line %d unreadable: %s", lineno, exc)

    def lookup(self, n: int, k: int, max_degree: int | None = None) -> ResultRecord | None:
        """Newest record for the key whose witness re-verifies, else None."""
        found = None
        for lineno, rec in self.records():
            if rec.command != "extremal":
                continue
            try:
                if rec.key != (n, k, max_degree):
                    continue
            except (KeyError, TypeError):
                continue
            try:
                verify_record(rec)
            except (ValueError, KeyError, TypeError, GraphError) as exc:
                log.warning("cache line %d failed verification, ignoring: %s", lineno, exc)
                continue
            found = rec
        return found

    def append(self, rec: ResultRecord) -> None:
        self.directory.mkdir(parents=True, exist_ok=True)
        rec.timestamps.setdefault("written", datetime.now(timezone.utc).isoformat())
        line = rec.to_json() + "\n"
        with open(self.path, "a", encoding="utf-8") as fh:
            fcntl.flock(fh, fcntl.LOCK_EX)
            try:
                fh.write(line)
                fh.flush()
            finally:
                fcntl.flock(fh, fcntl.LOCK_UN)


def extremal_record(result, n: int, k: int, max_degree: int | None) -> ResultRecord:
    outputs = result.to_dict()
    outputs.pop("k", None)
    return ResultRecord(
        command="extremal",
        parameters={"n": n, "k": k, "max_degree": max_degree},
        outputs=outputs,
        timestamps={"elapsed_seconds": round(result.stats.get("elapsed", 0.0), 6)},
    )


def result_from_record(rec: ResultRecord):
    from .extremal import ExtremalResult

    out = rec.outputs
    g = parse_graph_document(out["witness_graph"])
    return ExtremalResult(
        rec.parameters["k"], out["value"], g, tuple(out["witness_weighing"]),
        dict(out.get("stats", {}), cached=True), bool(out.get("vacuous")),
    )
