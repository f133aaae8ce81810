import json
import logging
from fractions import Fraction

import pytest

from localmajority.cache import (
    ResultCache,
    ResultRecord,
    default_cache_dir,
    extremal_record,
    fmt_rational,
    parse_rational,
    result_from_record,
)
from localmajority.extremal import extremal_over_trees


@pytest.fixture
def cache(tmp_path):
    return ResultCache(tmp_path)


def stored(cache, n=7, k=5, max_degree=None):
    res = extremal_over_trees(n, k)
    rec = extremal_record(res, n, k, max_degree)
    cache.append(rec)
    return rec


class TestRationals:
    @pytest.mark.parametrize("x, text", [(Fraction(-1, 5), "-1/5"), (0, "0/1"), (Fraction(4, 2), "2/1")])
    def test_format(self, x, text):
        assert fmt_rational(x) == text
        assert parse_rational(text) == x


class TestCache:
    def test_miss_on_empty(self, cache):
        assert cache.lookup(7, 5) is None

    def test_round_trip(self, cache):
        stored(cache)
        rec = cache.lookup(7, 5)
        assert rec is not None and rec.outputs["value"] == -1
        res = result_from_record(rec)
        assert res.value == -1 and res.stats["cached"]

    def test_key_includes_degree_bound(self, cache):
        stored(cache)
        assert cache.lookup(7, 5, 3) is None

    def test_newest_valid_record_wins(self, cache):
        stored(cache)
        second = stored(cache)
        got = cache.lookup(7, 5)
        assert got.timestamps["written"] == second.timestamps["written"]

    def test_tampered_witness_is_a_miss(self, cache, caplog):
        rec = stored(cache)
        bad = json.loads(rec.to_json())
        bad["outputs"]["witness_weighing"] = [-1] * 7
        bad["outputs"]["witness_graph"]["edges"] = [[u, v, -1] for u, v, _ in bad["outputs"]["witness_graph"]["edges"]]
        bad["outputs"]["value"] = -7
        path = cache.path
        path.write_text(json.dumps(bad) + "\n")
        with caplog.at_level(logging.WARNING):
            assert cache.lookup(7, 5) is None
        assert "failed verification" in caplog.text

    def test_mismatched_value_is_a_miss(self, cache, caplog):
        rec = stored(cache)
        bad = json.loads(rec.to_json())
        bad["outputs"]["value"] = -3
        cache.path.write_text(json.dumps(bad) + "\n")
        with caplog.at_level(logging.WARNING):
            assert cache.lookup(7, 5) is None

    def test_corrupt_line_is_skipped(self, cache, caplog):
        stored(cache)
        with open(cache.path, "a") as fh:
            fh.write("{not json\n")
        with caplog.at_level(logging.WARNING):
            assert cache.lookup(7, 5) is not None
        assert "unreadable" in caplog.text

    def test_records_are_append_only(self, cache):
        stored(cache)
        first = cache.path.read_text()
        stored(cache, 8, 6)
        assert cache.path.read_text().startswith(first)

    def test_equal_parameters_give_equal_records_modulo_timestamps(self):
        a = extremal_record(extremal_over_trees(8, 6), 8, 6, None)
        b = extremal_record(extremal_over_trees(8, 6), 8, 6, None)
        a.timestamps, b.timestamps = {}, {}
        assert a.to_json() == b.to_json()

    def test_no_floats_in_records(self, cache):
        rec = stored(cache)
        out = json.loads(rec.to_json())
        out.pop("timestamps")

        def walk(x):
            if isinstance(x, dict):
                return all(walk(v) for v in x.values())
            if isinstance(x, list):
                return all(walk(v) for v in x)
            return not isinstance(x, float)

        assert walk(out)

    def test_env_var_sets_default_dir(self, monkeypatch, tmp_path):
        monkeypatch.setenv("LML_CACHE_DIR", str(tmp_path / "c"))
        assert default_cache_dir() == tmp_path / "c"
        assert ResultCache().path == tmp_path / "c" / "results.jsonl"

    def test_record_key(self):
        rec = ResultRecord("extremal", {"n": 3, "k": 2, "max_degree": 3}, {})
        assert rec.key == (3, 2, 3)
