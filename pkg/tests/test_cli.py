import json
import subprocess
import sys

import pytest

import etalegen
from etalegen.cli import COMMANDS, JobSpec, Report, emit, main, parse_algebra, parse_vectors, run
from etalegen.errors import ParseError
from etalegen.fields import GF, QQ


def run_main(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def json_report(capsys, argv):
    code, out, _ = run_main(capsys, argv + ["--format", "json"])
    assert code == 0
    return json.loads(out)


def test_check_generates_example(capsys):
    d = json_report(capsys, ["check-generates", "--field", "F2", "--algebra", "split:3",
                             "--gens", "[[0,0,1],[0,1,0]]"])
    assert d["verdict"] is True


def test_check_generates_negative_is_exit_zero(capsys):
    code, out, _ = run_main(capsys, ["check-generates", "--algebra", "split:3", "--gens", "[[0,0,1]]"])
    assert code == 0
    assert "verdict: false" in out


def test_ojanguren_example(capsys):
    d = json_report(capsys, ["certificate-ojanguren", "--r", "4"])
    assert "b̃^3 ≠ 0" in json.dumps(d["witnesses"], ensure_ascii=False)
    assert "b̃^3 = 0" in json.dumps(d["witnesses"], ensure_ascii=False)


def test_classify_example(capsys):
    d = json_report(capsys, ["classify", "--field", "F5", "--algebra", "monogenic:[1,0,1]", "--gens", "[[1,1]]"])
    assert d["verdict"]["form"] == "coeff"
    assert d["verdict"]["coeffs"] == ["2", "2"]


@pytest.mark.parametrize("argv", [
    ["check-etale", "--field", "F3", "--algebra", "monogenic:[1,0,0]"],
    ["min-generators", "--field", "F2", "--algebra", "split:3"],
    ["separating-polys", "--field", "F5", "--matrix", "[[1,3]]"],
    ["quadratic-roundtrip", "--field", "F5", "--algebra", "monogenic:[1,0,3]"],
    ["generation-equivalence", "--field", "F5", "--algebra", "monogenic:[1,0,3]", "--gens", "[[3,1]]"],
    ["stabilize", "--field", "F5", "--matrix", "[[1,3]]", "--r", "3"],
    ["homotopy-path", "--field", "F5", "--algebra", "split:3", "--gens", "[[0,1,2]]", "--gens2", "[[0,2,4]]"],
    ["family-scan", "--field", "F5", "--family", "dq", "--r", "1", "--degree-bound", "2"],
    ["family-scan", "--field", "F5", "--family", "sphere", "--r", "2"],
    ["certificate-check", "--field", "F5", "--r", "4"],
    ["certificate-chase", "--r", "3"],
    ["cohomology-table", "--r", "4"],
    ["classify", "--field", "Q", "--algebra", "split:2", "--gens", "[[\"1/2\", 3]]"],
])
def test_commands_roundtrip_json(capsys, argv):
    code, out, _ = run_main(capsys, argv + ["--format", "json"])
    assert code == 0
    assert out.endswith("\n")
    d = json.loads(out)
    assert d["schema_version"] == 1
    rep = Report.from_json(out)
    assert emit(rep, "json") == out


def test_human_output_has_verdict():
    rep = run(JobSpec("certificate-chase", "F2", {"r": 3}))
    text = emit(rep)
    assert "verdict" in text and text.endswith("\n")


def test_deterministic_structured_output():
    job = JobSpec("family-scan", "F5", {"family": "dq", "r": 1, "gens": None})
    outs = []
    for _ in range(2):
        d = run(job, {"degree_bound": 2}).to_dict()
        d.pop("timing_seconds")
        outs.append(json.dumps(d, sort_keys=True, ensure_ascii=False))
    assert outs[0] == outs[1]


def test_schema_version_checked():
    bad = json.dumps({"command": "x", "field": "F2", "verdict": True, "schema_version": 99})
    with pytest.raises(ValueError):
        Report.from_json(bad)


@pytest.mark.parametrize("argv", [
    ["check-generates", "--algebra", "split:3", "--gens", "[[0,0,1"],
    ["check-generates", "--algebra", "cube:3", "--gens", "[]"],
    ["check-generates", "--field", "F4", "--algebra", "split:3", "--gens", "[]"],
    ["classify", "--field", "F5", "--algebra", "split:2", "--gens", "[[1,1]]"],
    ["certificate-chase", "--r", "1"],
    ["certificate-check", "--r", "3"],
    ["stabilize"],
    ["no-such-command"],
])
def test_input_errors_exit_2(capsys, argv):
    code, _, _ = run_main(capsys, argv)
    assert code == 2


def test_budget_exit_3(capsys):
    code, _, err = run_main(capsys, ["family-scan", "--field", "F5", "--family", "dq", "--r", "3",
                                     "--budget", "10"])
    assert code == 3 and "budget" in err
    code, _, _ = run_main(capsys, ["min-generators", "--field", "F3", "--algebra", "split:8",
                                   "--budget", "3"])
    assert code == 3


def test_parse_error_positions():
    with pytest.raises(ParseError) as exc:
        parse_algebra(GF(5), "monogenic:[1,0,")
    assert exc.value.position >= len("monogenic:")
    with pytest.raises(ParseError):
        parse_algebra(GF(5), "monogenic:[2,0,1]")
    with pytest.raises(ParseError):
        parse_vectors(GF(5), "[1,2]")
    assert parse_vectors(QQ, '[["1/2", 2]]')[0][0] == QQ.parse("1/2")


def test_table_algebra_input(capsys):
    table = "[[[1,0],[0,1]],[[0,1],[1,0]]]"
    d = json_report(capsys, ["check-etale", "--field", "F3", "--algebra", f"table:{table}"])
    assert d["verdict"] is True


def test_each_operation_has_one_command():
    ops = [c.operation for c in COMMANDS.values()]
    assert len(ops) == len(set(ops)) == 14
    for op in ops:
        assert hasattr(etalegen, op)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "etalegen", "certificate-chase", "--r", "2", "--format", "json"],
                          capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["command"] == "certificate-chase"
