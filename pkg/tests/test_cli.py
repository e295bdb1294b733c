import subprocess
import sys

import pytest

from ldpc_guard import alist
from ldpc_guard.cli import (
    EXIT_BUDGET, EXIT_GUARANTEE, EXIT_INFEASIBLE, EXIT_OK, EXIT_PARSE, _normalize, main,
)
from ldpc_guard.structures import StructureReport
from ldpc_guard.verification import build_53_fixture


def kv(text):
    return StructureReport.parse_keyvalue(text)


@pytest.fixture
def fixture_alist(tmp_path):
    p = tmp_path / "fx.alist"
    alist.save_alist(build_53_fixture().graph, p)
    return str(p)


def test_normalize_key_value():
    assert _normalize(["check", "in=a.alist", "max_trials=3", "--format", "text"]) == [
        "check", "--in", "a.alist", "--max-trials", "3", "--format", "text"]


def test_construct_then_check_round_trip(tmp_path, capsys):
    prefix = str(tmp_path / "c")
    assert main(["construct", "n=150", "m=95", "seed=0", f"out={prefix}"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "# command=construct" in out and "# seed=0" in out
    built = StructureReport.parse_keyvalue(open(prefix + ".report").read())
    assert main(["check", f"in={prefix}.alist", "conditions=girth>=8,no-(5,3),no-(8,0)"]) == EXIT_OK
    fresh = StructureReport.parse_keyvalue(capsys.readouterr().out)
    for key in ("girth", "condition.no-(5,3)", "condition.no-(8,0)", "condition.girth>=8"):
        assert fresh[key] == built[key]
    assert fresh["condition.no-(5,3)"] == "pass"


def test_construct_without_seed_prints_it(tmp_path, capsys):
    assert main(["construct", "n=60", "m=45", f"out={tmp_path / 'x'}"]) in (EXIT_OK, EXIT_INFEASIBLE)
    lines = [ln for ln in capsys.readouterr().out.splitlines() if ln.startswith("# seed=")]
    assert len(lines) == 1 and lines[0].split("=")[1].isdigit()


def test_construct_infeasible_exit(capsys):
    assert main(["construct", "n=100", "m=50", "seed=0", "retries=0"]) == EXIT_INFEASIBLE
    assert "error=CandidateExhausted" in capsys.readouterr().err


def test_construct_config_file(tmp_path, capsys):
    cfg = tmp_path / "spec.kv"
    cfg.write_text("n=150\nm=95\ngamma=3\nmax_check_degree=7\navoid=TS(5,3),TS(8,0)\nseed=0\n")
    assert main(["construct", f"config={cfg}"]) == EXIT_OK
    assert "# avoid=TS(5,3),TS(8,0)" in capsys.readouterr().out


def test_check_reports_fixture_structure(fixture_alist, capsys):
    assert main(["check", f"in={fixture_alist}", "conditions=no-(5,3)"]) == EXIT_OK
    got = kv(capsys.readouterr().out)
    assert got["condition.no-(5,3)"] == "fail" and got["witness.0.kind"] == "TS(5,3)"
    assert main(["check", f"in={fixture_alist}", "format=text"]) == EXIT_OK
    assert "TS(5,3)" in capsys.readouterr().out


def test_check_budget_exit(tmp_path, capsys, cw4_desk):
    p = tmp_path / "g.alist"
    alist.save_alist(cw4_desk.graph, p)
    assert main(["check", f"in={p}", "conditions=8->18", "budget=10"]) == EXIT_BUDGET
    assert kv(capsys.readouterr().out)["condition.8->18"] == "budget-exceeded"


def test_decode(fixture_alist, capsys):
    assert main(["decode", f"in={fixture_alist}", "errors=0", "schedule=gallager-a"]) == EXIT_OK
    got = kv(capsys.readouterr().out)
    assert got["converged"] == "true" and got["correct"] == "true" and got["estimate_support"] == ""
    assert main(["decode", f"in={fixture_alist}", "errors=0,1,2"]) == EXIT_OK
    got = kv(capsys.readouterr().out)
    assert got["verdict"] == "FailedMaxIter" and got["correct"] == "false"
    assert main(["decode", f"in={fixture_alist}", "received=" + "1" + "0" * 13]) == EXIT_OK
    assert kv(capsys.readouterr().out)["correct"] == "true"


def test_verify_guarantee_exit(fixture_alist, tmp_path, capsys):
    out = tmp_path / "v.csv"
    assert main(["verify", f"in={fixture_alist}", "t=3", "workers=1", f"out={out}"]) == EXIT_GUARANTEE
    lines = out.read_text().splitlines()
    assert lines[0] == "pattern,verdict,configuration,iterations"
    assert lines[1] == "0 1 2,FailedMaxIter,disjoint,25"
    assert main(["verify", f"in={fixture_alist}", "t=2", "workers=1"]) == EXIT_OK
    assert "# guarantee_holds=true" in capsys.readouterr().out


def test_verify_sampled(fixture_alist, capsys):
    assert main(["verify", f"in={fixture_alist}", "t=3", "samples=2000", "seed=1", "workers=1"]) == EXIT_GUARANTEE
    out = capsys.readouterr().out
    assert "# seed=1" in out and "# exhaustive=false" in out


def test_simulate_csv(fixture_alist, capsys):
    assert main(["simulate", f"in={fixture_alist}", "alpha=0.1,0.05", "seed=2", "max-trials=5000",
                 "target-errors=50", "workers=1"]) == EXIT_OK
    rows = [ln for ln in capsys.readouterr().out.splitlines() if not ln.startswith("#")]
    assert rows[0] == "alpha,trials,frame_errors,fer,ci_low,ci_high,min_fail_weight"
    assert [r.split(",")[0] for r in rows[1:]] == ["0.1", "0.05"]


def test_find_counterexample(tmp_path, capsys):
    prefix = str(tmp_path / "ce")
    assert main(["find-counterexample", "condition=4->11", "seed=0", f"out={prefix}"]) == EXIT_OK
    got = kv(capsys.readouterr().out)
    assert got["core_variables"] == "4" and got["core_checks"] == "10"
    g = alist.load_alist(prefix + ".alist")
    assert g.column_weight == 4
    assert open(prefix + ".pattern").read().strip() == got["pattern"]


def test_find_counterexample_impossible_and_budget(capsys):
    assert main(["find-counterexample", "condition=5->12", "seed=0"]) == EXIT_OK
    assert "result=impossible" in capsys.readouterr().out
    assert main(["find-counterexample", "condition=8->18", "seed=0", "max-attempts=1"]) == EXIT_BUDGET
    assert "error=NotFound" in capsys.readouterr().err
    assert main(["find-counterexample", "condition=9->20", "seed=0"]) == EXIT_PARSE


@pytest.mark.parametrize("argv", [
    ["frobnicate"],
    ["check"],
    ["decode", "in=nowhere.alist", "errors=1"],
    ["verify", "in=x.alist", "t=notanumber"],
])
def test_parse_errors(argv, capsys):
    try:
        code = main(argv)
    except SystemExit as e:
        code = e.code
    assert code == EXIT_PARSE
    assert "error=" in capsys.readouterr().err


def test_bad_alist_is_parse_error(tmp_path, capsys):
    p = tmp_path / "bad.alist"
    p.write_text("3 2\n2 x\n")
    assert main(["check", f"in={p}"]) == EXIT_PARSE
    assert "error=ParseError" in capsys.readouterr().err


def test_console_entry_point(fixture_alist):
    r = subprocess.run([sys.executable, "-m", "ldpc_guard", "decode", f"in={fixture_alist}", "errors=3"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and "correct=true" in r.stdout
