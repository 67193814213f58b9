import json
from pathlib import Path

import pytest

from liftmc.cli import main

PROBLEMS = Path(__file__).parent.parent / "problems"


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_dag_table(capsys):
    code, out, _ = run(capsys, "dag-table", "--max-n", "4")
    assert code == 0
    assert out.splitlines() == ["0 1", "1 1", "2 3", "3 25", "4 543"]


def test_count_plain(capsys):
    code, out, err = run(capsys, "count",
                         "--input", str(PROBLEMS / "dags.wfomc"),
                         "--domain-size", "5")
    assert code == 0
    assert out.splitlines()[0] == "count: 29281"
    assert "mode: engine" in err


def test_count_json_schema(capsys):
    code, out, _ = run(capsys, "count",
                       "--input", str(PROBLEMS / "dags.wfomc"),
                       "--domain-size", "3", "--json")
    assert code == 0
    report = json.loads(out)
    assert report["count"] == "25"
    assert report["domain_size"] == 3
    assert report["mode"] == "engine"
    assert isinstance(report["timing_ms"], int)
    assert "per_cardinality" not in report


def test_count_per_k(capsys):
    code, out, _ = run(capsys, "count",
                       "--input", str(PROBLEMS / "functional_graph.wfomc"),
                       "--domain-size", "2", "--json", "--per-k")
    assert code == 0
    report = json.loads(out)
    per = report["per_cardinality"]
    assert sum(int(v) for v in per.values()) == int(report["count"])
    assert all("^" in key or key == "-" for key in per)


def test_oracle_command(capsys):
    code, out, _ = run(capsys, "oracle",
                       "--input", str(PROBLEMS / "single_source.wfomc"),
                       "--domain-size", "3", "--json")
    assert code == 0
    assert json.loads(out)["count"] == "15"
    assert json.loads(out)["mode"] == "oracle"


def test_check_agreement(capsys):
    for name in ("dags.wfomc", "single_source.wfomc",
                 "functional_graph.wfomc", "two_colored.wfomc"):
        code, out, _ = run(capsys, "check",
                           "--input", str(PROBLEMS / name),
                           "--domain-size", "3", "--json")
        assert code == 0, name
        report = json.loads(out)
        assert report["match"] is True
        assert report["count"] == report["oracle_count"]


def test_parse_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.wfomc"
    bad.write_text("predicate R/2\nsentence forall x R(x,,y)\n")
    code, _, err = run(capsys, "count", "--input", str(bad),
                       "--domain-size", "2")
    assert code == 1
    assert "error:" in err


def test_missing_file_exit_code(capsys):
    code, _, err = run(capsys, "count", "--input", "/nonexistent.wfomc",
                       "--domain-size", "2")
    assert code == 1
    assert "error:" in err


def test_oracle_cap_exit_code(capsys):
    code, _, err = run(capsys, "oracle",
                       "--input", str(PROBLEMS / "dags.wfomc"),
                       "--domain-size", "6")
    assert code == 2
    assert "cap" in err
