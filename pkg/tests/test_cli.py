"""Command-line surface: commands, report schema, exit codes."""

import json

import pytest

from qdtorus import cli
from qdtorus.report import Check, Report
from qdtorus.suites import SuiteParams, run_suite


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestExpressionCommands:
    def test_normalize(self, capsys):
        code, out, _ = run(capsys, "normalize", "b*a", "--algebra", "AUq2")
        assert code == 0 and out.strip() == "q*a*b"

    def test_normalize_quotient(self, capsys):
        code, out, _ = run(capsys, "normalize", "b*c")
        assert code == 0 and out.strip() == "-q*D + q*D*z"

    def test_coproduct_star_antipode(self, capsys):
        assert run(capsys, "coproduct", "D")[1].strip() == "(1)·D ⊗ D"
        assert run(capsys, "star", "b")[1].strip() == "-q*Dinv*c"
        assert run(capsys, "antipode", "D")[1].strip() == "Dinv"

    def test_haar(self, capsys):
        assert run(capsys, "haar", "z")[1].strip() == "1/2"

    def test_character_and_decompose(self, capsys):
        code, out, _ = run(capsys, "character", "w(1,2)")
        assert code == 0 and out.strip() == "D*a^2 + D*d^2"
        code, out, _ = run(capsys, "decompose", "(a+d)*(a+d)", "--range", "2")
        assert code == 0 and "w(0,2)" in out

    def test_json_value_output(self, capsys):
        code, out, _ = run(
            capsys, "normalize", "b*a", "--algebra", "AUq2", "--report", "json"
        )
        payload = json.loads(out)
        assert payload["result"] == "q*a*b"
        assert "cleaving_convention" in payload


class TestVerify:
    def test_exactseq_passes(self, capsys):
        code, out, _ = run(capsys, "verify", "exactseq")
        assert code == 0 and "result: PASS" in out

    def test_json_schema(self, capsys):
        code, out, _ = run(capsys, "verify", "haar", "--report", "json")
        payload = json.loads(out)
        assert set(payload) == {
            "suite",
            "params",
            "cleaving_convention",
            "checks",
            "duration_ms",
        }
        assert all(set(c) <= {"name", "status", "witness"} for c in payload["checks"])
        assert payload["cleaving_convention"]["active"] == "corrected"
        assert code == 0

    def test_failure_flips_exit_code(self, capsys, monkeypatch):
        broken = Report(
            suite="haar",
            params={},
            cleaving_convention={
                "active": "corrected",
                "sigma_table_matches_convolution": True,
                "cocleaving_table_matches_derived": True,
                "right_colinearity": True,
            },
            checks=[Check("seeded", False, witness="q*D")],
        )
        monkeypatch.setattr(cli, "run_suite", lambda name, params: broken)
        code, out, _ = run(capsys, "verify", "haar", "--report", "json")
        assert code == 1
        payload = json.loads(out)
        assert payload["checks"][0]["witness"] == "q*D"

    def test_usage_error(self, capsys):
        with pytest.raises(SystemExit) as err:
            cli.main(["verify", "nonsense"])
        assert err.value.code == 2

    def test_bad_expression_is_usage_error(self, capsys):
        code, _, err = run(capsys, "normalize", "a^^2")
        assert code == 2 and "error" in err


class TestGnsAndQuotientCommands:
    def test_gns_values(self, capsys):
        code, out, _ = run(
            capsys, "gns", "--window", "4", "--norm", "a", "--expect", "z"
        )
        assert code == 0
        assert "norm(a) = 1" in out
        assert "expectation(z) = 0.5" in out

    def test_fdquot(self, capsys):
        code, out, _ = run(capsys, "fdquot", "2", "--q-root", "4")
        assert code == 0 and "dimension = 8" in out

    def test_fdquot_bad_root(self, capsys):
        code, _, err = run(capsys, "fdquot", "3", "--q-root", "4")
        assert code == 2 and "error" in err


class TestSuiteRunner:
    def test_unknown_suite_rejected(self):
        from qdtorus.errors import QdtError

        with pytest.raises(QdtError):
            run_suite("bogus")

    def test_jobs_parallel_matches_serial(self):
        serial = run_suite("exactseq", SuiteParams(jobs=1))
        parallel = run_suite("exactseq", SuiteParams(jobs=4))
        names = lambda r: [(c.name, c.passed) for c in r.sorted_checks()]
        assert names(serial) == names(parallel)

    def test_report_text_contains_convention(self):
        report = run_suite("haar", SuiteParams())
        assert "cleaving_convention: active=corrected" in report.to_text()


class TestEdgeCases:
    def test_comodule_algebra_has_no_coproduct(self, capsys):
        code, out, _ = run(capsys, "normalize", "y*x", "--algebra", "AT2q")
        assert code == 0 and out.strip() == "q^-1*x*y"
        code, _, err = run(capsys, "coproduct", "x", "--algebra", "AT2q")
        assert code == 2 and "coproduct" in err

    def test_hopf_suite_on_bicross(self):
        report = run_suite("hopf", SuiteParams(algebra="BICROSS"))
        assert report.ok
        assert any("BICROSS" in c.name for c in report.checks)

    def test_unknown_algebra_is_usage_error(self, capsys):
        code, _, err = run(capsys, "normalize", "a", "--algebra", "NOPE")
        assert code == 2 and "unknown algebra" in err
