import json
import subprocess
import sys

import pytest

from rooktours import cli
from rooktours.construct import fixture_text
from rooktours.core import count_straights, parse_rct
from rooktours.invariants import InvariantReport


@pytest.fixture
def demo_file(tmp_path):
    p = tmp_path / "demo.rct"
    p.write_text(fixture_text("demo"))
    return p


def run(capsys, *argv):
    code = cli.run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_count(capsys):
    assert run(capsys, "count", "--rows", "6", "--cols", "6") == (0, "1072\n", "")


def test_count_threads_flag(capsys):
    code, out, _ = run(capsys, "count", "-n", "4", "-m", "6", "--threads", "2")
    assert (code, out) == (0, "37\n")


def test_threads_env_default(monkeypatch):
    monkeypatch.setenv("ROOK_TOURS_THREADS", "3")
    assert cli.build_parser().parse_args(["count", "-n", "2", "-m", "2"]).threads == 3
    monkeypatch.setenv("ROOK_TOURS_THREADS", "many")
    assert cli.build_parser().parse_args(["count", "-n", "2", "-m", "2"]).threads == 1


def test_infeasible_exit(capsys):
    code, out, err = run(capsys, "count", "--rows", "3", "--cols", "5")
    assert code == 2 and out == "" and "3x5" in err


@pytest.mark.parametrize("argv", [[], ["count"], ["count", "--rows", "x", "--cols", "2"], ["fly"]])
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        cli.run(argv)
    assert exc.value.code == 1


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "-n", "4", "-m", "4", "--limit", "2")
    blocks = [b for b in out.split("4 4\n") if b]
    assert code == 0 and len(blocks) == 2


def test_minimize_schema_and_emit(capsys, tmp_path):
    rct, svgf = tmp_path / "w.rct", tmp_path / "w.svg"
    code, out, _ = run(capsys, "minimize", "-n", "4", "-m", "4", "--objective", "turns", "--emit", "rct", str(rct))
    doc = json.loads(out)
    assert code == 0 and doc["optimum"] == 8
    assert doc["dims"] == {"rows": 4, "cols": 4} and doc["objective"] == "turns"
    assert set(doc["nodes"]) == {"expanded", "pruned_parity", "pruned_bound", "pruned_connectivity"}
    assert parse_rct(rct.read_text()) == parse_rct(doc["witness_rct"])
    run(capsys, "minimize", "-n", "6", "-m", "6", "--emit", "svg", str(svgf))
    assert "straights: 8" in svgf.read_text()


def test_minimize_max_turns(capsys):
    code, out, _ = run(capsys, "minimize", "-n", "6", "-m", "6", "--objective", "max-turns")
    assert code == 0 and json.loads(out)["optimum"] == 28


def test_minimize_reports_are_byte_identical(capsys):
    docs = []
    for _ in range(2):
        _, out, _ = run(capsys, "minimize", "-n", "5", "-m", "6", "--threads", "1")
        d = json.loads(out)
        d.pop("elapsed_s")
        docs.append(json.dumps(d))
    assert docs[0] == docs[1]


def test_minimize_budget_exit(capsys):
    code, out, err = run(capsys, "minimize", "-n", "8", "-m", "8", "--budget", "10")
    assert code == 4 and out == "" and "budget" in err


def test_minimize_bad_emit_format(capsys, tmp_path):
    code, _, _ = run(capsys, "minimize", "-n", "4", "-m", "4", "--emit", "png", str(tmp_path / "x"))
    assert code == 1


def test_check_demo(capsys, demo_file):
    code, out, _ = run(capsys, "check", str(demo_file))
    assert code == 0 and json.loads(out)["all_pass"]


def test_check_failure_exit(capsys, demo_file, monkeypatch):
    real = cli.verify_all

    def broken(circuit):
        rep = real(circuit)
        return InvariantReport(**{**rep.__dict__, "passed": {**rep.passed, "lemma3": False}})

    monkeypatch.setattr(cli, "verify_all", broken)
    code, out, _ = run(capsys, "check", str(demo_file))
    assert code == 3 and not json.loads(out)["all_pass"]


def test_check_bad_input(capsys, tmp_path):
    bad = tmp_path / "bad.rct"
    bad.write_text("2 2\nF7\nL-\n")
    assert run(capsys, "check", str(bad))[0] == 1
    assert run(capsys, "check", str(tmp_path / "missing.rct"))[0] == 1


def test_render(capsys, demo_file, tmp_path):
    code, out, _ = run(capsys, "render", str(demo_file))
    assert code == 0 and out.splitlines()[0] == "┌──┐"
    dest = tmp_path / "f.svg"
    assert run(capsys, "render", str(demo_file), "--format", "svg", "-o", str(dest))[0] == 0
    assert "straights: 8, turns: 8" in dest.read_text()


def test_construct(capsys, tmp_path):
    dest = tmp_path / "s.svg"
    code, out, _ = run(capsys, "construct", "--recipe", "spiral-odd", "--side", "6", "--emit", "svg", str(dest))
    doc = json.loads(out)
    assert code == 0 and doc["ok"] and doc["measured"] == 8 == doc["claimed"]["value"]
    assert "straights: 8" in dest.read_text()
    code, out, _ = run(capsys, "construct", "--recipe", "min-turn-rect", "-n", "3", "-m", "8")
    assert json.loads(out)["measured"] == 16


def test_construct_errors(capsys, tmp_path):
    assert run(capsys, "construct", "--recipe", "spiral-even")[0] == 1
    assert run(capsys, "construct", "--recipe", "spiral-even", "--side", "6")[0] == 1
    assert run(capsys, "construct", "--recipe", "min-turn-rect", "-n", "3")[0] == 1
    assert run(capsys, "construct", "--recipe", "near-square")[0] == 1
    assert run(capsys, "construct", "--recipe", "extend-plus4")[0] == 1
    base = tmp_path / "b.rct"
    base.write_text(fixture_text((5, 6)))
    assert run(capsys, "construct", "--recipe", "extend-plus4", "--base", str(base))[0] == 3


def test_construct_extend(capsys, tmp_path):
    base = tmp_path / "b.rct"
    base.write_text(fixture_text((4, 5)))
    code, out, _ = run(capsys, "construct", "--recipe", "extend-plus4", "--base", str(base))
    doc = json.loads(out)
    assert code == 0 and doc["dims"] == {"rows": 8, "cols": 9}
    assert count_straights(parse_rct(doc["witness_rct"])) == 8


def test_verify_table(capsys, tmp_path):
    dest = tmp_path / "t.json"
    code, out, err = run(capsys, "verify-table", "--max-cells", "16", "-o", str(dest))
    doc = json.loads(out)
    assert code == 0 and doc["ok"] and json.loads(dest.read_text())["summary"] == doc["summary"]
    assert "4x4: match" in err


def test_verify_table_budget(capsys):
    code, out, _ = run(capsys, "verify-table", "--max-cells", "36", "--budget", "5")
    assert code == 4 and json.loads(out)["summary"]["unknown"] > 0


def test_verify_table_mismatch_exit(capsys, monkeypatch):
    from rooktours import formulas

    monkeypatch.setitem(formulas.STRAIGHTS_TABLE, (0, 2), ("n", 1, False))
    code, out, _ = run(capsys, "verify-table", "--max-cells", "24")
    assert code == 3 and json.loads(out)["summary"]["mismatch"] > 0


def test_console_script(demo_file):
    proc = subprocess.run([sys.executable, "-m", "rooktours.cli", "check", str(demo_file)], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["all_pass"]
