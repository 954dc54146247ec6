import json
import subprocess
import sys

import pytest
from hypothesis import given, settings

from conftest import nonsingular
from torusorb.cli import (
    REPORT_KEYS,
    SCHEMA,
    ParseError,
    analyze_report,
    main,
    parse_document,
    parse_matrix_text,
    parse_report,
    render_json,
)
from torusorb.orbifold import CharMatrix


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    return code, json.loads(out) if out else None


# --- parsing ---

def test_parse_inline():
    assert parse_matrix_text("1 1 / 3 5") == [[1, 1], [3, 5]]
    assert parse_matrix_text("1 0\n0 1\n") == [[1, 0], [0, 1]]
    assert parse_matrix_text("  -2 1 /0 -3") == [[-2, 1], [0, -3]]


@pytest.mark.parametrize("text, line, column", [
    ("1 x / 3 5", 1, 3),
    ("1 1\n3 five", 2, 3),
    ("1 1 / 3", 1, 7),
    ("1 1 // 3 5", 1, 6),
])
def test_parse_errors_locate(text, line, column):
    with pytest.raises(ParseError) as err:
        parse_matrix_text(text)
    assert (err.value.line, err.value.column) == (line, column)
    assert f"line {line}, column {column}" in str(err.value)


def test_parse_non_square():
    with pytest.raises(ParseError, match="square"):
        parse_matrix_text("1 2 3 / 4 5 6")


def test_parse_document_forms():
    assert parse_document('{"columns": [[1, 3], [1, 5]]}') == CharMatrix.from_rows([[1, 1], [3, 5]])
    assert parse_document('{"spindle": [3, 2]}') == CharMatrix.spindle(3, 2)
    with pytest.raises(ParseError) as err:
        parse_document('{\n  "columns": [1, }')
    assert err.value.line == 2


# --- commands ---

def test_analyze_golden(capsys):
    code, doc = run_json(capsys, "analyze", "--matrix", "1 1 / 3 5")
    assert code == 0
    assert doc["det"] == 2
    assert doc["G"]["invariant_factors"] == [2]
    assert doc["h3"]["invariant_factors"] == [2]
    assert doc["flags"]["is_sphere"] is False
    assert doc["flags"]["h_odd"] == "known-nonzero"
    assert any("do not divide det" in n for n in doc["notes"])


def test_analyze_identity_text(capsys):
    code, out, _ = run(capsys, "analyze", "--matrix", "1 0 / 0 1")
    assert code == 0
    assert "standard sphere" in out
    assert "H^odd: certified-zero" in out


def test_analyze_spindle(capsys):
    code, out, _ = run(capsys, "analyze", "--spindle", "3", "2")
    assert code == 0
    assert "spindle S^2(3,2)" in out and "(S^2, T^1)" in out


def test_graph_golden_labels(capsys):
    code, doc = run_json(capsys, "graph", "--matrix", "1 1 / 3 5")
    assert code == 0
    alphas = {a["edge"]: a["alpha"] for a in doc["axial"]}
    assert alphas["e1"] == "5/2*x - 1/2*y"
    assert alphas["e2"] == "-3/2*x + 1/2*y"
    assert {a["r"] for a in doc["axial"]} == {2}


def test_graph_identity_and_diag(capsys):
    _, doc = run_json(capsys, "graph", "--matrix", "1 0 / 0 1")
    assert [a["alpha"] for a in doc["axial"] if a["from"] == "p"] == ["x", "y"]
    _, doc = run_json(capsys, "graph", "--matrix", "2 0 / 0 3")
    forward = [a for a in doc["axial"] if a["from"] == "p"]
    assert [a["alpha"] for a in forward] == ["1/2*x", "1/3*y"]
    assert [a["r"] for a in forward] == [2, 3]


def test_cohomology_golden(capsys):
    code, doc = run_json(capsys, "cohomology", "--matrix", "1 1 / 3 5", "--max-degree", "8")
    assert code == 0
    assert doc["verify"]["passed"]
    rel = doc["presentation"]["relations"][0]
    assert rel == "-15*x1^2 + 8*x1*x2 - x2^2 - tp - tq"
    assert doc["notes"][0].startswith("WARNING")


def test_cohomology_warning_banner(capsys):
    code, out, _ = run(capsys, "cohomology", "--matrix", "2 1 / 0 2", "--max-degree", "6")
    assert code == 0
    assert "H^3 ≅ C2 ≠ 0" in out
    assert "!" * 72 in out


def test_cohomology_spindle(capsys):
    code, out, _ = run(capsys, "cohomology", "--spindle", "3", "2")
    assert code == 0
    assert "Z[3 tau_p, 2 tau_q]/<6 tau_p tau_q>" in out
    assert "PASS" in out
    assert "WARNING" not in out


def test_no_banner_for_unimodular(capsys):
    _, out, _ = run(capsys, "cohomology", "--matrix", "1 0 / 0 1", "--max-degree", "6")
    assert "WARNING" not in out


# --- exit codes ---

def test_exit_singular(capsys):
    code, out, err = run(capsys, "analyze", "--matrix", "1 2 / 2 4")
    assert code == 2 and out == ""
    assert "condition (∗) fails: det = 0" in err


def test_exit_parse_error(capsys):
    code, _, err = run(capsys, "graph", "--matrix", "1 a / 0 1")
    assert code == 2 and "line 1, column 3" in err


def test_exit_missing_file(capsys, tmp_path):
    code, _, _ = run(capsys, "analyze", "--file", str(tmp_path / "nope.txt"))
    assert code == 2


def test_exit_cap(capsys):
    code, _, err = run(capsys, "analyze", "--matrix", "40 0 / 0 40", "--cap", "100")
    assert code == 3 and "cap" in err


def test_exit_verify_failure(capsys, monkeypatch):
    import torusorb.cli as cli
    from torusorb.poly import Polynomial

    real = cli.presentation

    def corrupted(char):
        P = real(char)
        tp = Polynomial.var(4, 2)
        return P.with_relations([P.relations[0] + tp, P.relations[1]])

    monkeypatch.setattr(cli, "presentation", corrupted)
    code, out, _ = run(capsys, "cohomology", "--matrix", "1 1 / 3 5", "--max-degree", "6")
    assert code == 1
    assert "FAIL (first failing degree 4)" in out


# --- files and documents ---

def test_file_input_text_and_json(capsys, tmp_path):
    f = tmp_path / "m.txt"
    f.write_text("1 1\n3 5\n")
    _, a = run_json(capsys, "analyze", "--file", str(f))
    g = tmp_path / "m.json"
    g.write_text(json.dumps({"columns": [[1, 3], [1, 5]]}))
    _, b = run_json(capsys, "analyze", "--file", str(g))
    assert a == b


def test_report_can_be_fed_back(capsys, tmp_path):
    _, doc = run_json(capsys, "graph", "--matrix", "2 1 / 0 2")
    f = tmp_path / "r.json"
    f.write_text(render_json(doc))
    _, again = run_json(capsys, "graph", "--file", str(f))
    assert again == doc


def test_schema_stable_across_commands(capsys):
    for cmd in ("analyze", "graph", "cohomology"):
        _, doc = run_json(capsys, cmd, "--matrix", "1 0 / 0 1", *(["--max-degree", "4"] if cmd == "cohomology" else []))
        assert tuple(sorted(doc)) == tuple(sorted(REPORT_KEYS))
        assert doc["schema"] == SCHEMA and doc["command"] == cmd


def test_output_is_deterministic(capsys):
    outs = {run(capsys, "cohomology", "--matrix", "1 1 / 3 5", "--max-degree", "6")[1] for _ in range(3)}
    assert len(outs) == 1


@settings(max_examples=25)
@given(nonsingular(2, 3, -4, 4))
def test_json_roundtrip(A):
    doc = analyze_report(CharMatrix.from_rows(A))
    text = render_json(doc)
    assert render_json(parse_report(text)) == text
    assert parse_report(text) == json.loads(text)


def test_parse_report_rejects_other_schema():
    with pytest.raises(ValueError):
        parse_report('{"schema": "other/1"}')


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "torusorb", "analyze", "--matrix", "2 0 / 0 3"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0
    assert "C6" in res.stdout


def test_help_states_column_convention(capsys):
    with pytest.raises(SystemExit):
        main(["analyze", "--help"])
    out = capsys.readouterr().out
    assert "COLUMNS are the facet vectors" in out
