import io
import json

import pytest

from localmajority.cli import main
from localmajority.gnk import REFERENCE_TABLE


@pytest.fixture(autouse=True)
def cache_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("LML_CACHE_DIR", str(tmp_path / "cache"))
    return tmp_path / "cache"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_gnk_matches_reference_column(capsys):
    code, out, _ = run(capsys, "gnk", "--k", "7", "--n-max", "35")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "n,g,g_over_n"
    for n, line in enumerate(lines[1:], start=1):
        a, g, ratio = line.split(",")
        assert int(a) == n and int(g) == REFERENCE_TABLE[n][0] and "/" in ratio


def test_gnk_override(capsys, caplog):
    code, out, _ = run(capsys, "gnk", "--k", "9", "--n-max", "26", "--override", "26=-4")
    assert code == 0 and out.splitlines()[-1] == "26,-4,-2/13"
    assert "not machine-checked" in caplog.text


def test_construct_comb(capsys):
    code, out, _ = run(capsys, "construct", "--family", "comb", "--t", "4", "--r", "3", "--k", "5", "--weighing", "paper")
    doc = json.loads(out)
    assert code == 0 and sum(e[2] for e in doc["edges"]) == -1 and len(doc["edges"]) == 15


def test_construct_domain_error(capsys):
    code, _, err = run(capsys, "construct", "--family", "comb", "--t", "4", "--r", "4", "--k", "5", "--weighing", "paper")
    assert code == 1 and "r=3" in err


def test_extremal_and_cache_round_trip(capsys, cache_dir):
    code, first, _ = run(capsys, "extremal", "--n", "7", "--k", "5")
    assert code == 0 and json.loads(first)["value"] == -1
    assert (cache_dir / "results.jsonl").exists()
    code, second, _ = run(capsys, "extremal", "--n", "7", "--k", "5")
    assert second == first
    assert len((cache_dir / "results.jsonl").read_text().splitlines()) == 1


def test_extremal_no_cache(capsys, cache_dir):
    code, out, _ = run(capsys, "extremal", "--n", "6", "--k", "4", "--no-cache")
    assert code == 0 and json.loads(out)["value"] == 2
    assert not (cache_dir / "results.jsonl").exists()


def test_extremal_output_has_no_floats(capsys):
    _, out, _ = run(capsys, "extremal", "--n", "8", "--k", "6", "--max-degree", "3")
    assert "." not in out.replace('"', "")


def test_classify_formats(capsys):
    code, out, _ = run(capsys, "classify", "--k", "3", "--n-from", "4", "--n-to", "12")
    assert code == 0 and "weakly-forcing-evidence" in out
    code, out, _ = run(capsys, "classify", "--k", "3", "--n-from", "4", "--n-to", "12", "--format", "json")
    assert json.loads(out)["f_estimate"] == 0
    code, out, _ = run(capsys, "classify", "--k", "3", "--n-from", "4", "--n-to", "6", "--format", "csv")
    assert out.splitlines() == ["n,W,W_over_n", "4,0,0/1", "5,1,1/5", "6,0,0/1"]


def test_classify_bad_window(capsys):
    code, _, err = run(capsys, "classify", "--k", "3", "--n-from", "9", "--n-to", "4")
    assert code == 1 and "--n-to" in err


def test_classify_report_file(capsys, tmp_path):
    target = tmp_path / "report.json"
    run(capsys, "classify", "--k", "4", "--n-from", "5", "--n-to", "8", "--report", str(target))
    assert json.loads(target.read_text())["status"] == "forcing-evidence"


@pytest.mark.parametrize("suite", ["table1", "degree", "avg-degree"])
def test_check_suites(capsys, suite):
    code, out, _ = run(capsys, "check", "--suite", suite)
    assert code == 0, out


def test_check_small_k(capsys):
    code, out, _ = run(capsys, "check", "--suite", "small-k", "--n-max", "9")
    assert code == 0 and "claims passed" in out


def test_graph_commands(capsys, tmp_path, monkeypatch):
    g = tmp_path / "g.json"
    g.write_text('{"vertices": 5, "edges": [[0, 1, 1], [1, 2, 1], [2, 3, 1], [3, 4, 1]]}')
    code, out, _ = run(capsys, "split", "--graph", str(g))
    assert code == 0 and json.loads(out)["sizes"] == [2, 2]

    tri = tmp_path / "tri.json"
    tri.write_text('{"vertices": 4, "edges": [[0, 1, -1], [0, 2, -1], [0, 3, 1], [1, 2, -1]]}')
    code, out, _ = run(capsys, "ydelta", "--graph", str(tri), "--cycle", "0,1,3")
    assert code == 0 and json.loads(out)["vertices"] == 5

    code, out, _ = run(capsys, "peel", "--graph", str(tri))
    doc = json.loads(out)
    assert doc["removed"] == 0 and doc["weight_before"] == doc["weight_after"] == -2

    monkeypatch.setattr("sys.stdin", io.StringIO(g.read_text()))
    code, out, _ = run(capsys, "split", "--graph", "-")
    assert code == 0


def test_malformed_graph_reports_field(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"vertices": 3, "edges": [[0, 1, 1], [1, 2, 5]]}')
    code, _, err = run(capsys, "split", "--graph", str(bad))
    assert code == 1 and "edges[1][2]" in err
    bad.write_text('{"vertices": 3,\n "edges": [')
    code, _, err = run(capsys, "peel", "--graph", str(bad))
    assert code == 1 and "line 2" in err


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "split", "--graph", str(tmp_path / "nope.json"))
    assert code == 1 and "cannot read" in err


def test_ydelta_rejects_positive_cycle(capsys, tmp_path):
    tri = tmp_path / "tri.json"
    tri.write_text('{"vertices": 3, "edges": [[0, 1, 1], [0, 2, -1], [1, 2, -1]]}')
    code, _, err = run(capsys, "ydelta", "--graph", str(tri), "--cycle", "0,1,2")
    assert code == 1 and "+1" in err


@pytest.mark.parametrize(
    "argv",
    [["bogus"], ["gnk", "--k", "7"], ["gnk", "--k", "7", "--n-max", "5", "--frobnicate"],
     ["gnk", "--k", "x", "--n-max", "5"], ["gnk", "--k", "7", "--n-max", "5", "--override", "5"],
     ["construct", "--family", "wheel", "--t", "2"], []],
)
def test_usage_errors_exit_2(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_outputs_are_byte_stable(capsys):
    _, a, _ = run(capsys, "gnk", "--k", "11", "--n-max", "20")
    _, b, _ = run(capsys, "gnk", "--k", "11", "--n-max", "20")
    assert a == b
