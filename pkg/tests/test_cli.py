import json
import subprocess
import sys

from fractions import Fraction

import pytest

from fanolift.corr7 import SeptupleConfig, quartet
from fanolift.cli import EXIT_ERROR, EXIT_NEGATIVE, EXIT_OK, main
from fanolift.exact.poly import BiPoly, UniPoly

TRINKS = ["3", "-7", "0", "0", "0", "0", "0", "1"]


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def _round_trip(text):
    doc = json.loads(text)
    assert json.dumps(doc, sort_keys=True, indent=2) + "\n" == text
    return doc


def test_lift_trinks(capsys):
    code, out, _ = run(capsys, "lift", *TRINKS, "--digits", "200")
    assert code == EXIT_OK
    doc = _round_trip(out)
    Q = UniPoly.from_json(doc["certified_classes"][0]["Q"])
    assert Q.coeffs == UniPoly([2, -1, -1, -1, -1, 2]).coeffs


def test_lift_from_input_document(capsys, tmp_path):
    path = tmp_path / "p.json"
    path.write_text(json.dumps({"P": TRINKS, "digits": 150}))
    code, out, _ = run(capsys, "lift", "--input", str(path))
    assert code == EXIT_OK and json.loads(out)["digits"] == 150


def test_lift_negative_control_exit_code(capsys):
    code, out, _ = run(capsys, "lift", "-2", "0", "0", "0", "0", "0", "0", "1", "--digits", "100")
    assert code == EXIT_NEGATIVE
    assert json.loads(out)["status"] == "NOT_CERTIFIED"


def test_correspond(capsys):
    code, out, _ = run(capsys, "correspond", "0", "1", "-1", "2", "-2", "3", "-3")
    assert code == EXIT_OK
    doc = _round_trip(out)
    assert doc["all_required_pass"]
    assert doc["identity_checks"]["FH=PV-QU"]["pass"]
    assert not doc["identity_checks"]["disc_identity_as_printed"]["required"]
    BiPoly.from_json(doc["F"])


def test_correspond_errors(capsys):
    code, _, err = run(capsys, "correspond", "0", "1", "1", "2", "-2", "3", "-3")
    assert code == EXIT_ERROR and "distinct" in err
    code, _, err = run(capsys, "correspond", "0", "1", "-1", "2", "-2", "3", "-3", "--structure", "30")
    assert code == EXIT_ERROR and "usage error" in err


def test_verify_runs_and_is_deterministic(capsys):
    code1, out1, _ = run(capsys, "verify", "--trials", "2", "--seed", "5")
    code2, out2, _ = run(capsys, "verify", "--trials", "2", "--seed", "5")
    assert code1 == code2 == EXIT_OK
    assert out1 == out2
    assert _round_trip(out1)["all_pass"]


def test_verify_zero_trials(capsys):
    code, out, _ = run(capsys, "verify", "--trials", "0")
    assert code == EXIT_OK and json.loads(out)["all_pass"]


def test_verify_fault_injection_names_the_division_identity(capsys):
    code, out, _ = run(capsys, "verify", "--trials", "1", "--inject-fault", "corrupt-F")
    assert code == EXIT_NEGATIVE
    failures = json.loads(out)["suites"]["correspondence"]["failures"]
    assert "FH=PV-QU" in failures[0]["checks"]


@pytest.mark.parametrize("argv, key, value", [
    (["smalldeg", "d6", "2", "3", "5", "1/2", "1/3", "1/5"], "condition", "0"),
    (["smalldeg", "v4", "0", "1", "2", "6"], "ratio_mod_P", "-9"),
    (["smalldeg", "d4", "0", "1", "3", "7"], "u", "-5"),
    (["smalldeg", "d5", "0", "1", "3", "7", "12"], "kind", "d5"),
])
def test_smalldeg(capsys, argv, key, value):
    code, out, _ = run(capsys, *argv)
    assert code == EXIT_OK
    assert _round_trip(out)[key] == value


def test_smalldeg_v4_has_three_involution_graphs(capsys):
    _, out, _ = run(capsys, "smalldeg", "v4", "0", "1", "2", "6")
    assert len(json.loads(out)["factors"]) == 3


def test_smalldeg_repeated_values(capsys):
    code, _, err = run(capsys, "smalldeg", "d5", "1", "1", "2", "3", "4")
    assert code == EXIT_ERROR and "distinct" in err


def test_noether_with_explicit_q(capsys):
    q = quartet(SeptupleConfig(tuple(Fraction(v) for v in (1, 2, 3, 5, 7, 11, -4))))
    code, out, _ = run(capsys, "noether", "--P", ",".join(q.P.to_json()), "--Q", ",".join(q.Q.to_json()))
    assert code == EXIT_OK
    doc = _round_trip(out)
    R, Q1 = UniPoly.from_json(doc["R"]), UniPoly.from_json(doc["Q1"])
    assert R - Q1 * Fraction(doc["t"]) == q.P and R(0) == 0


def test_noether_without_q_reports_negative_lift(capsys):
    code, out, _ = run(capsys, "noether", "--P=-2,0,0,0,0,0,0,1", "--digits", "80")
    assert code == EXIT_NEGATIVE and json.loads(out)["status"] == "NOT_CERTIFIED"


def test_text_format_and_env_override(monkeypatch, capsys):
    monkeypatch.setenv("FANOLIFT_FORMAT", "text")
    code, out, _ = run(capsys, "smalldeg", "d6", "1", "2", "4", "8", "3", "5")
    assert code == EXIT_OK and out.startswith("condition = ")


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as e:
        main(["smalldeg", "d7", "1"])
    assert e.value.code == EXIT_ERROR


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "fanolift.cli", "smalldeg", "d6", "2", "3", "5", "1/2", "1/3", "1/5"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["involution_exists"]
