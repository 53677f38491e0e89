import json

import mpmath
import pytest

from clausenlab import cli, identities
from clausenlab.cli import VOLATILE_FIELDS, ReportDocument, main
from clausenlab.expr import ExpressionError, evaluate
from clausenlab.identities import IdentityId
from clausenlab.numeric import make_context

from oracles import CATALAN_40


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_eval_cl2(capsys):
    code, out, _ = run(capsys, "eval", "cl2", "--theta", "pi/2", "--digits", "30")
    assert code == 0
    assert out.strip() == CATALAN_40[:32]


def test_eval_lseries(capsys):
    code, out, _ = run(capsys, "eval", "lseries", "--d", "-7", "--s", "2", "--digits", "20")
    assert code == 0
    assert out.strip() == "1.1519254705444910471"


def test_eval_hurwitz(capsys):
    code, out, _ = run(capsys, "eval", "hurwitz", "--s", "2", "--a", "1", "--digits", "20")
    assert code == 0
    with mpmath.workdps(40):
        assert out.strip() == mpmath.nstr(mpmath.pi ** 2 / 6, 20)


def test_eval_missing_argument(capsys):
    code, _, err = run(capsys, "eval", "cl2")
    assert code == 2
    assert "--theta" in err


def test_eval_domain_error(capsys):
    code, _, _ = run(capsys, "eval", "lseries", "--d", "-7", "--s", "1")
    assert code == 2


def test_integrate_text_and_json(capsys):
    code, out, _ = run(capsys, "integrate", "--digits", "20")
    assert code == 0 and out.startswith("I7")
    code, out, _ = run(capsys, "integrate", "--digits", "20", "--format", "json")
    data = json.loads(out)
    assert data["value"].startswith("1.151925470544491047")
    assert data["levels_used"] >= 1


def test_low_precision_rejected(capsys):
    code, _, err = run(capsys, "integrate", "--digits", "15")
    assert code == 2
    assert "digits" in err


def test_integrate_non_convergence(capsys):
    code, _, err = run(capsys, "integrate", "--digits", "30", "--max-levels", "1")
    assert code == 2
    assert "QuadratureError" in err


def test_verify_json_round_trip(capsys):
    code, out, _ = run(capsys, "verify", "--identity", "CONJ_15", "--identity", "MULT_FORMULA",
                       "--digits", "40", "--format", "json")
    assert code == 0
    doc = ReportDocument.from_json(out)
    assert doc.overall == "pass"
    assert [r["id"] for r in doc.reports] == ["CONJ_15", "MULT_FORMULA"]
    assert doc.to_json() == out.strip()
    conj = doc.reports[0]
    assert conj["kind"] == "conjecture" and conj["label"] == "conjecture"
    assert conj["verdict"] == f"agreed-to-{conj['digits_agreed']}-digits"


def test_text_and_json_agree(capsys):
    _, text, _ = run(capsys, "verify", "--identity", "L7_THREE_WAYS", "--digits", "32")
    _, js, _ = run(capsys, "verify", "--identity", "L7_THREE_WAYS", "--digits", "32", "--format", "json")
    row = json.loads(js)["reports"][0]
    assert f"digits_agreed={row['digits_agreed']}" in text
    assert row["verdict"] in text


def test_verify_shortfall_exit_1(capsys, monkeypatch):
    def broken(ctx, max_levels):
        return [("deliberately wrong", mpmath.mpf(1), mpmath.mpf("1.0001"))]

    monkeypatch.setitem(identities.CHECKS, IdentityId.MULT_FORMULA, broken)
    code, out, _ = run(capsys, "verify", "--identity", "MULT_FORMULA", "--digits", "32", "--format", "json")
    assert code == 1
    row = json.loads(out)["reports"][0]
    assert row["passed"] is False and row["verdict"] == "failed" and row["digits_agreed"] == 4


def test_verify_quadrature_failure_exit_2(capsys):
    code, out, err = run(capsys, "verify", "--identity", "CONJ_13", "--digits", "32", "--max-levels", "1",
                         "--format", "json")
    assert code == 2
    row = json.loads(out)["reports"][0]
    assert row["passed"] is False and "QuadratureError" in row["error"]
    assert "CONJ_13" in err


def test_verify_required_too_high(capsys):
    code, _, _ = run(capsys, "verify", "--identity", "CONJ_13", "--digits", "32", "--required", "40")
    assert code == 2


def test_verify_all_and_identity_conflict(capsys):
    code, _, _ = run(capsys, "verify", "--all", "--identity", "CONJ_13")
    assert code == 2


def test_unknown_identity(capsys):
    with pytest.raises(SystemExit) as info:
        main(["verify", "--identity", "NOPE"])
    assert info.value.code == 2


def test_out_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out, _ = run(capsys, "verify", "--identity", "EQ_38_FINAL", "--digits", "32", "--format", "json",
                       "--out", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["reports"][0]["id"] == "EQ_38_FINAL"


def test_env_digits(capsys, monkeypatch):
    monkeypatch.setenv("CLAUSENLAB_DIGITS", "20")
    _, out, _ = run(capsys, "eval", "cl2", "--theta", "pi/2")
    assert out.strip() == CATALAN_40[:22]
    _, out, _ = run(capsys, "eval", "cl2", "--theta", "pi/2", "--digits", "25")
    assert out.strip() == CATALAN_40[:27]


def test_env_digits_invalid(capsys, monkeypatch):
    monkeypatch.setenv("CLAUSENLAB_DIGITS", "many")
    code, _, _ = run(capsys, "eval", "cl2", "--theta", "1")
    assert code == 2


def test_pslq_command(capsys):
    code, out, _ = run(capsys, "pslq", "cl2(2*phi7)", "cl2(4*phi7)", "cl2(6*phi7)", "7*sqrt(7)/4*L(-7,2)",
                       "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["status"] == "found" and data["coefficients"] == [3, -3, 1, -1]


def test_pslq_no_relation(capsys):
    code, out, _ = run(capsys, "pslq", "1", "sqrt(2)", "--digits", "64", "--norm-bound", "10")
    assert code == 0
    assert "no relation" in out


def test_pslq_too_few_digits(capsys):
    code, _, _ = run(capsys, "pslq", "1", "2", "3", "--digits", "40")
    assert code == 2


def test_volatile_fields_are_the_documented_ones():
    assert set(VOLATILE_FIELDS) == {"timestamp", "wall_ms"}


@pytest.mark.parametrize(
    "text,expected",
    [("1+2*3", 7), ("-2^2", -4), ("2**3**2", 512), ("(1+1)/4", 0.5), ("1e3", 1000), ("-(3)", -3)],
)
def test_expression_arithmetic(text, expected):
    assert evaluate(text, make_context(20)) == expected


@pytest.mark.parametrize("text", ["1+", "foo", "sqrt(1,2)", "L(1.5,2)", "(1", "1 2", "@"])
def test_expression_errors(text):
    with pytest.raises(ExpressionError):
        evaluate(text, make_context(20))


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run([sys.executable, "-m", "clausenlab", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0 and "clausenlab" in proc.stdout
