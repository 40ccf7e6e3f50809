"""Command-line behavior: reports, formats, exit codes, determinism."""

import json
import os
import subprocess
import sys

import pytest

from ordercone.cli import main, report_emit
from ordercone.errors import UsageError


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out


def test_sign_example(capsys):
    code, out = run_cli(capsys, "sign", "--cone", "dehornoy:3",
                        "--word", "s1 S2")
    assert code == 0
    assert json.loads(out) == {"sign": "+", "seed": 0}


def test_compare(capsys):
    code, out = run_cli(capsys, "compare", "--cone", "klein:++",
                        "--left", "0,-1", "--right", "1,0")
    assert code == 0
    assert json.loads(out)["relation"] == "<"


def test_census_klein(capsys):
    code, out = run_cli(capsys, "census", "--group", "klein", "--radius", "2")
    assert code == 0
    report = json.loads(out)
    assert report["count"] == 4
    assert len(report["vectors"]) == 4


def test_census_csv_table(capsys):
    code, out = run_cli(capsys, "census", "--group", "z", "--radii", "1..4",
                        "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "radius,count"
    assert lines[1:] == ["1,2", "2,2", "3,2", "4,2"]


def test_csv_rejected_for_non_tabular(capsys):
    code, _ = run_cli(capsys, "sign", "--cone", "dehornoy:3", "--word", "s1",
                      "--format", "csv")
    assert code == 2


def test_distance_report(capsys):
    code, out = run_cli(capsys, "distance", "--cone-a", "klein:++",
                        "--cone-b", "klein:+-", "--resolution", "4")
    assert code == 0
    report = json.loads(out)
    assert report["agree_radius"] == 0
    assert report["distance"] == "2^-0"
    assert report["exact"] is True


def test_convexity_exit_codes(capsys):
    code, out = run_cli(capsys, "convexity", "--cone", "dehornoy:3",
                        "--predicate", '{"type": "braid_shift", "n": 3, "r": 1}',
                        "--radius", "3")
    assert code == 0
    code, out = run_cli(capsys, "convexity", "--cone", "dehornoy:3",
                        "--predicate",
                        '{"type": "cyclic_braid", "n": 3, "word": "s1"}',
                        "--radius", "2")
    assert code == 1
    report = json.loads(out)
    assert report["kind"] == "convexity_counterexample"
    assert report["replays"] is True


def test_ball_budget_exit_code(capsys):
    code, _ = run_cli(capsys, "ball", "--group", "braid:3", "--radius", "9")
    assert code == 3


def test_usage_error_exit_code(capsys):
    code, _ = run_cli(capsys, "sign", "--cone", "nonsense:9", "--word", "s1")
    assert code == 2


def test_classify_and_perturb(capsys):
    spec = json.dumps({"k": 2, "normals": [
        [{"a": "0", "b": "0"}, {"a": "1", "b": "0"}],
        [{"a": "1", "b": "0"}, {"a": "0", "b": "0"}]]})
    code, out = run_cli(capsys, "classify", "--spec", spec)
    assert code == 0
    assert json.loads(out)["verdict"] == "discrete"
    code, out = run_cli(capsys, "perturb", "--spec", spec,
                        "--require", "0,1", "--require", "3,1")
    assert code == 0
    report = json.loads(out)
    assert report["delta"] == "1/8"
    assert report["witness"]


def test_orbit_scan(capsys):
    code, out = run_cli(capsys, "orbit-scan", "--cone", "dehornoy:3",
                        "--conjugator-radius", "3", "--target-radius", "1",
                        "--resolution", "3")
    assert code == 0
    report = json.loads(out)
    assert report["found"] is True and report["replays"] is True
    code, out = run_cli(capsys, "orbit-scan", "--cone", "klein:++",
                        "--conjugator-radius", "3", "--target-radius", "2",
                        "--resolution", "4")
    assert code == 0
    assert json.loads(out)["found"] is False


def test_dd_witness(capsys):
    code, out = run_cli(capsys, "dd-witness", "--n", "3", "--radius", "2",
                        "--max-len", "12")
    assert code == 0
    report = json.loads(out)
    witnesses = {w["element"]: w["witness"] for w in report["witnesses"]}
    assert witnesses["S2"] == ["y2"]


def test_props_exit_code(capsys):
    code, out = run_cli(capsys, "props", "--cone", "dehornoy:3",
                        "--radius", "2")
    assert code == 1  # violations reported
    lattice = json.dumps({"type": "lattice",
                          "spec": {"k": 1,
                                   "normals": [[{"a": "1", "b": "0"}]]}})
    code, out = run_cli(capsys, "props", "--cone", lattice, "--radius", "3")
    assert code == 0
    report = json.loads(out)
    assert report["biorder_violations"] == []


def test_soul_command(capsys):
    chain = json.dumps([{"type": "braid_shift", "n": 3, "r": 1},
                        {"type": "whole", "group": {"family": "braid", "n": 3}}])
    code, out = run_cli(capsys, "soul", "--cone", "dehornoy:3",
                        "--chain", chain, "--radius", "3")
    assert code == 0
    report = json.loads(out)
    assert report["best_biorder_level"] == 0


def test_determinism(capsys):
    args = ("census", "--group", "klein", "--radius", "3")
    _, first = run_cli(capsys, *args)
    _, second = run_cli(capsys, *args)
    assert first == second


def test_config_file(tmp_path, capsys):
    config = tmp_path / "run.json"
    config.write_text(json.dumps({"group": "klein", "radius": 2}))
    code, out = run_cli(capsys, "census", "--config", str(config))
    assert code == 0
    assert json.loads(out)["count"] == 4


def test_output_file(tmp_path, capsys):
    out_path = tmp_path / "report.json"
    code = main(["sign", "--cone", "dd:3", "--word", "S2",
                 "--out", str(out_path)])
    assert code == 0
    assert json.loads(out_path.read_text())["sign"] == "+"


def test_budget_env_override(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("ORDERCONE_BUDGET", json.dumps({"braid_ball": {"3": 2}}))
    code, _ = run_cli(capsys, "ball", "--group", "braid:3", "--radius", "3")
    assert code == 3
    monkeypatch.setenv("ORDERCONE_BUDGET", "not json")
    code, _ = run_cli(capsys, "ball", "--group", "braid:3", "--radius", "1")
    assert code == 2


def test_report_emit_rejects_unknown_format():
    with pytest.raises(UsageError):
        report_emit({"x": 1}, "yaml")


def test_console_entry_point():
    result = subprocess.run(
        [sys.executable, "-m", "ordercone.cli", "sign", "--cone",
         "dehornoy:3", "--word", "s1 S2"],
        capture_output=True, text=True, check=False,
        cwd=os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
    assert result.returncode == 0
    assert json.loads(result.stdout) == {"sign": "+", "seed": 0}
