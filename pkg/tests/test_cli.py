import json

import pytest

from z2z4.cli import run
from z2z4.codefile import parse_code_file
from z2z4.errors import CodeFileError

CSTAR_FILE = "# C*\nalpha=3 beta=6\n110|112310\n011|011231\n"


def test_parse_code_file_examples():
    a, b, rows = parse_code_file(CSTAR_FILE)
    assert (a, b) == (3, 6)
    assert [str(r) for r in rows] == ["110|112310", "011|011231"]
    assert parse_code_file("alpha=2 beta=0\n\n# nothing\n")[2] == []


@pytest.mark.parametrize(
    "text,lineno,fragment",
    [
        ("alpha=3 beta=6\n110112310\n", 2, "'|'"),
        ("alpha=3 beta=6\n110|112410\n", 2, "'4'"),
        ("alpha=3 beta=6\n120|112310\n", 2, "'2'"),
        ("alpha=3 beta=6\n110|112310\n11|112310\n", 3, "shape"),
        ("110|112310\n", 1, "header"),
        ("# only a comment\n", 1, "header"),
    ],
)
def test_parse_code_file_errors(text, lineno, fragment):
    with pytest.raises(CodeFileError) as info:
        parse_code_file(text)
    assert info.value.lineno == lineno
    assert fragment in str(info.value)


@pytest.fixture
def cstar_file(tmp_path):
    p = tmp_path / "cstar.code"
    p.write_text(CSTAR_FILE)
    return p


def test_type_and_dual_round_trip(tmp_path, cstar_file, capsys):
    assert run(["type", "--in", str(cstar_file)]) == 0
    assert capsys.readouterr().out.strip() == "(3, 6; 0, 2; 0)"
    out = tmp_path / "d.code"
    assert run(["dual", "--in", str(cstar_file), "--out", str(out)]) == 0
    capsys.readouterr()
    assert run(["type", "--in", str(out), "--json"]) == 0
    t = json.loads(capsys.readouterr().out)
    assert (t["gamma"], t["delta"], t["kappa"]) == (3, 4, 3)
    back = tmp_path / "dd.code"
    assert run(["dual", "--in", str(out), "--out", str(back)]) == 0
    assert run(["type", "--in", str(back)]) == 0
    assert capsys.readouterr().out.strip().endswith("(3, 6; 0, 2; 0)")


def test_build_then_verify(tmp_path, capsys):
    out = tmp_path / "c.code"
    assert run(["build", "--family", "cstar", "--out", str(out)]) == 0
    assert run(["verify", "--check", "perfect", "--in", str(out)]) == 0
    assert run(["verify", "--check", "cyclic", "--in", str(out)]) == 0
    capsys.readouterr()
    assert run(["verify", "--check", "gray-linear", "--in", str(out), "--json"]) == 1
    rep = json.loads(capsys.readouterr().out)
    assert rep["verdict"] == "fails" and len(rep["witness"]) == 2


def test_verify_cyclic_any_extended(tmp_path, capsys):
    out = tmp_path / "e.code"
    assert run(["build", "--family", "extended", "--r", "2", "--t", "4", "--out", str(out)]) == 0
    assert run(["verify", "--check", "cyclic-any", "--in", str(out), "--json"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["verdict"] == "no arrangement"
    assert rep["counters"]["examined"] == rep["counters"]["total"] == 17280


def test_verify_budget_inconclusive(tmp_path, capsys):
    out = tmp_path / "e.code"
    run(["build", "--family", "extended", "--r", "2", "--t", "4", "--out", str(out)])
    assert run(["verify", "--check", "cyclic-any", "--in", str(out), "--budget", "10"]) == 2


def test_audit_prop(capsys):
    assert run(["audit", "--claim", "prop_3_1", "--r", "2", "--t", "3", "--json"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["verdict"] == "holds"
    assert rep["counters"] == {"alpha": 3, "beta": 2, "rem": 2, "cyclic_excluded": 1}
    assert {"claim", "params", "witness", "elapsed_ms"} <= set(rep)


def test_audit_thm_r2(capsys):
    assert run(["audit", "--claim", "thm_3_11", "--r", "2"]) == 0
    assert "no contradiction" in capsys.readouterr().out


def test_build_stdout_and_json(capsys):
    assert run(["build", "--family", "hamming", "--r", "3"]) == 0
    text = capsys.readouterr().out
    a, b, rows = parse_code_file(text)
    assert (a, b, len(rows)) == (7, 0, 4)
    assert run(["build", "--family", "perfect", "--r", "3", "--t", "6", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["type"] == [7, 28, 7, 25, 7]


@pytest.mark.parametrize(
    "argv",
    [
        ["type"],
        ["frobnicate"],
        ["type", "--in", "x", "--bogus"],
        ["build", "--family", "perfect", "--r", "2"],
        ["build", "--family", "perfect", "--r", "2", "--t", "9"],
        ["audit", "--claim", "lemma_3_7"],
        ["type", "--in", "/nonexistent/file.code"],
    ],
)
def test_usage_errors_exit_3(argv, capsys):
    with pytest.raises(SystemExit) as info:
        code = run(argv)
        raise SystemExit(code)
    assert info.value.code == 3


def test_bad_code_file_exit_3(tmp_path, capsys):
    p = tmp_path / "bad.code"
    p.write_text("alpha=3 beta=6\n110|112410\n")
    assert run(["type", "--in", str(p)]) == 3
    assert "line 2" in capsys.readouterr().err


def test_cap_exceeded_exit_2(tmp_path, capsys):
    # the sphere check of a perfect code must enumerate its 2048 codewords
    out = tmp_path / "c.code"
    assert run(["build", "--family", "cstar", "--out", str(out)]) == 0
    assert run(["verify", "--check", "perfect", "--in", str(out), "--cap", "1000"]) == 2
    assert "inconclusive" in capsys.readouterr().err
