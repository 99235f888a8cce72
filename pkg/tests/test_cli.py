import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from hankel_forge.cli import main
from hankel_forge.sweep import CHECKS, PRESETS, partitions_up_to, preset_instances, run_sweep

SCHEMA = json.loads(resources.files("hankel_forge").joinpath("schemas/report.schema.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_decompose_example(capsys):
    code, out, _ = run(capsys, "decompose", "-c", "2", "x1^2*x2*x4*x7*x8*x10")
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == "1 4 7 10 / 1 8 / 2"
    assert lines[1] == "shape 4,2,1"
    assert "gamma_2 = 4" in lines and "gamma_3 = 2" in lines


def test_decompose_single_variable(capsys):
    code, out, _ = run(capsys, "decompose", "-c", "1", "x5")
    assert code == 0 and out.splitlines()[:2] == ["5", "shape 1"]


@pytest.mark.parametrize("argv", [
    ["decompose", "-c", "2", "x1^^2"],
    ["decompose", "-c", "0", "x1"],
    ["straighten", "-c", "2", "1 2 / 3"],
    ["straighten", "-c", "2", "1 x"],
    ["verify", "bogus"],
    ["verify", "gb", "-n", "7", "-c", "2", "-t", "9"],
    ["verify", "gb", "-c", "2"],
    ["verify", "primdec", "-n", "7", "-c", "2", "--tau", "2,x"],
])
def test_usage_errors_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as info:
        sys.exit(main(argv))
    assert info.value.code == 2


def test_verify_gb_example(capsys):
    code, out, _ = run(capsys, "verify", "gb", "-n", "7", "-c", "2", "-t", "3")
    assert code == 0 and "PASS" in out


def test_verify_budget_exit_3(capsys):
    code, out, _ = run(capsys, "verify", "sympow", "-n", "7", "-c", "1", "-t", "2", "-s", "3", "--budget-sec", "0")
    assert code == 3 and "BUDGET" in out


def test_straighten_examples(capsys):
    code, out, _ = run(capsys, "straighten", "-c", "2", "1 4 7 10 / 3 12")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "1 4 7 12 / 3 10"
    assert lines[1].startswith("newtype:")
    code, out, _ = run(capsys, "straighten", "-c", "2", "1 4 8 11 / 3 7")
    assert out.splitlines() == ["1 4 8 11 / 3 7"]


def test_json_reports_validate(capsys, tmp_path):
    cases = [
        ["verify", "gb", "-n", "6", "-c", "1", "-t", "2"],
        ["verify", "sympow", "-n", "6", "-c", "1", "-t", "2", "-s", "2"],
        ["verify", "primdec", "-n", "6", "-c", "1", "--tau", "2,1"],
        ["verify", "secant", "-n", "5", "-c", "1"],
        ["verify", "linquot", "-n", "6", "-c", "2", "--tau", "2"],
        ["verify", "rees", "-n", "7", "-c", "2", "--tau", "2"],
        ["verify", "confluence", "--seeds", "5", "--seed", "11"],
        ["verify", "perfectgraph", "-n", "8", "-c", "2"],
        ["verify", "sympow", "-n", "7", "-c", "1", "-t", "2", "-s", "3", "--budget-sec", "0"],
    ]
    for argv in cases:
        out = tmp_path / "r.json"
        main(argv + ["--json", "--out", str(out)])
        report = json.loads(out.read_text())
        jsonschema.validate(report, SCHEMA)
        assert "seed" in report


def test_confluence_seed_echo_and_order(capsys):
    code, out, _ = run(capsys, "verify", "confluence", "--seeds", "6", "--seed", "40", "--json")
    rep = json.loads(out)
    seeds = [r["instance"]["seed"] for r in rep["details"]["reports"]]
    assert code == 0 and seeds == list(range(40, 46))
    assert all(r["seed"] == r["instance"]["seed"] for r in rep["details"]["reports"])
    assert rep["seed"] == 40


def test_runs_are_reproducible(capsys):
    _, a, _ = run(capsys, "verify", "confluence", "--seeds", "8", "--seed", "3")
    _, b, _ = run(capsys, "verify", "confluence", "--seeds", "8", "--seed", "3")
    strip = lambda s: [l.split(" (")[0] for l in s.splitlines()]
    assert strip(a) == strip(b)


def test_schema_rejects_bad_reports():
    bad = {"check": "gb", "instance": {}, "verdict": "maybe", "timings": {}, "seed": 0}
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate(bad, SCHEMA)
    cex_on_pass = {"check": "gb", "instance": {}, "verdict": "pass", "timings": {}, "seed": 0, "counterexample": 1}
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate(cex_on_pass, SCHEMA)


def test_membership_pf_rees_commands(capsys):
    code, out, _ = run(capsys, "membership", "-c", "2", "-t", "3", "-s", "2", "--verify", "x1^2*x2*x4*x7*x8*x10")
    assert code == 0 and out.startswith("member")
    code, out, _ = run(capsys, "pf", "2,1")
    assert out.split() == ["1", "3", "2"]
    code, out, _ = run(capsys, "rees", "-n", "10", "-c", "2", "--tau", "2")
    assert "Y[1 8]*x4 -> Y[1 4]*x8" in out.splitlines()


def test_presets_cover_every_check():
    for name, table in PRESETS.items():
        assert set(table) == set(CHECKS), name
    assert len(preset_instances("confluence", "desk")) == 500


def test_partitions():
    assert partitions_up_to(3) == [(1,), (1, 1), (1, 1, 1), (2,), (2, 1), (3,)]


def test_sweep_with_workers_is_sorted():
    insts = [{"seed": s} for s in (5, 1, 3, 2)]
    reps = run_sweep("confluence", insts, workers=2)
    assert [r["instance"]["seed"] for r in reps] == [1, 2, 3, 5]


def test_console_script_entry():
    res = subprocess.run([sys.executable, "-m", "hankel_forge.cli", "decompose", "-c", "2", "x1*x4"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.startswith("1 4")


def test_failed_assertion_exit_1(capsys, monkeypatch):
    from hankel_forge import sweep
    from hankel_forge.report import Report

    def broken(check, inst, budget_sec=None, bound=None):
        return Report(check, dict(inst)).fail({"monomial": "x1"})

    monkeypatch.setattr(sweep, "run_instance", broken)
    code, out, _ = run(capsys, "verify", "gb", "-n", "5", "-c", "1", "-t", "2", "--workers", "1")
    assert code == 1 and "FAIL" in out and "x1" in out


def test_report_helpers():
    from hankel_forge.report import Report

    rep = Report("gb", {"n": 3})
    with rep.timed("step"):
        pass
    rep.expect(False, "first")
    rep.expect(False, "second")
    assert rep.verdict == "fail" and rep.counterexample == "first"
    assert json.loads(rep.to_json())["counterexample"] == "first"
    assert rep.summary().startswith("gb [n=3] FAIL")
