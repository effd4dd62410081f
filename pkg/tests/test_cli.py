"""End-to-end runs of every command."""
import json
import math
from pathlib import Path

import pytest

from symlog.cli import main

CORPUS_DIR = Path(__file__).resolve().parent.parent / "src/symlog/corpus_data"

EXT = """\
flags right_contexts
sequent detach : p -> q, p |- q
sequent imp_reversal : p -> q, q |- p
"""


@pytest.fixture
def ext_script(tmp_path):
    path = tmp_path / "ext.blq"
    path.write_text(EXT)
    return str(path)


def test_check_command(capsys):
    rc = main(["check", str(CORPUS_DIR / "c1.blq")])
    out = capsys.readouterr().out
    assert rc == 0
    assert "ok" in out


def test_check_reports_failure(tmp_path, capsys):
    bad = tmp_path / "bad.blq"
    bad.write_text("proof broken : p |- q\n  id a={p}\n")
    rc = main(["check", str(bad)])
    assert rc == 1


def test_search_found(ext_script, capsys):
    rc = main(["search", ext_script, "--name", "detach", "--depth", "6"])
    out = capsys.readouterr().out
    assert rc == 0
    assert out.startswith("proved")


def test_search_not_found_exits_one(ext_script, capsys):
    rc = main(["search", ext_script, "--name", "imp_reversal", "--depth", "8",
               "--left-contexts", "--weakening", "--cut"])
    out = capsys.readouterr().out
    assert rc == 1
    assert "not-found" in out


def test_search_report_only(ext_script):
    rc = main(["search", ext_script, "--name", "imp_reversal", "--depth", "4",
               "--report-only"])
    assert rc == 0


def test_search_env_depth(ext_script, monkeypatch):
    monkeypatch.setenv("SYMLOG_DEPTH", "3")
    rc = main(["search", ext_script, "--name", "detach"])
    assert rc == 0


def test_sym_command(capsys):
    rc = main(["sym", str(CORPUS_DIR / "c1.blq"), "--name",
               "exists_eq_entails_member", "--involution", "d"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "forall" in out


def test_dual_command(tmp_path, capsys):
    script = tmp_path / "s.blq"
    script.write_text(
        "domain Dplus = { down@1/2, up@1/2 } virtual duality top\n"
        "domain Dminus = { down@1/2, up@1/2 } virtual duality top\n"
        "sequent s : |- forall x in Dplus . A(x)\n")
    rc = main(["dual", str(script), "--name", "s", "--duality", "top"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "Dminus" in out


def test_corpus_command(capsys):
    rc = main(["corpus", "--format", "json"])
    payload = json.loads(capsys.readouterr().out)
    assert rc == 0
    assert payload["ok"] and len(payload["items"]) == 18


def test_qstate_command(tmp_path, capsys):
    path = tmp_path / "q.json"
    path.write_text(json.dumps({"alpha": 1 / math.sqrt(2),
                                "beta": 1 / math.sqrt(2),
                                "phi": math.pi}))
    rc = main(["qstate", str(path), "--format", "json"])
    payload = json.loads(capsys.readouterr().out)
    assert rc == 0
    assert payload["domain"] == "Dminus"
    assert payload["collapse"] == "A(down@1/2) & A(up@1/2)"


def test_bell_command(capsys):
    rc = main(["bell", "--phase", "minus", "--correlation", "opposite"])
    out = capsys.readouterr().out.strip()
    assert rc == 0
    assert out == "(forall x in Dminus . A_1(x) join_o A_2(x))"


def test_guard_command(capsys):
    rc = main(["guard", "V", "--collapse-demo"])
    out = capsys.readouterr().out
    assert rc == 0
    assert out.startswith("collapse")
    rc = main(["guard", "V"])
    out = capsys.readouterr().out
    assert rc == 0
    assert out.startswith("consistent")


def test_usage_error_exit_code():
    assert main(["dual", "nowhere.blq", "--name", "x"]) == 2
    assert main(["check", "does-not-exist.blq"]) == 2


def test_json_reports_deterministic(ext_script, capsys):
    main(["search", ext_script, "--name", "detach", "--format", "json"])
    first = capsys.readouterr().out
    main(["search", ext_script, "--name", "detach", "--format", "json"])
    second = capsys.readouterr().out
    assert first == second
    assert json.loads(first)["schema"] == 1
