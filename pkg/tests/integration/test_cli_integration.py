"""CLI runs against the real numerics."""

import json
import logging
import math

import pytest

from nlpw.cli import EXIT_OK, main
from nlpw.config import RunConfig
from nlpw.verify import run_verify_suite


@pytest.fixture(autouse=True)
def reset_logging():
    yield
    package_logger = logging.getLogger("nlpw")
    for handler in list(package_logger.handlers):
        package_logger.removeHandler(handler)
    package_logger.propagate = True


class TestLambdaCli:
    """nlpw lambda end to end."""

    @pytest.mark.integration
    def test_json_record_and_minimizer_csv(self, tmp_path, capsys):
        table = tmp_path / "u.csv"
        code = main(
            ["lambda", "--p", "2", "--q", "2", "--r", "3", "--alpha", "50", "--n", "64",
             "--starts", "even", "odd", "--minimizer-csv", str(table)]
        )
        record = json.loads(capsys.readouterr().out)

        assert code == EXIT_OK
        assert record["lambda"] == pytest.approx(math.pi**2, rel=1e-2)
        assert record["start_label"] in {"even", "odd"}
        assert record["diagnostics"]["zero_count"] == 1
        lines = table.read_text(encoding="utf-8").splitlines()
        assert lines[0] == "x,u"
        assert len(lines) == 66

    @pytest.mark.integration
    def test_reports_are_deterministic(self, tmp_path):
        first, second = tmp_path / "a.json", tmp_path / "b.json"
        args = ["lambda", "--alpha", "1", "--n", "64", "--seed", "5"]

        main(args + ["--output", str(first)])
        main(args + ["--output", str(second)])

        assert first.read_bytes() == second.read_bytes()


class TestVerifySuite:
    """The quick verification suite."""

    @pytest.mark.integration
    @pytest.mark.slow
    def test_quick_suite_core_checks(self):
        report = run_verify_suite(RunConfig(quick=True, n=128))

        for name in (
            "gtrig.pi_22",
            "gtrig.round_trip",
            "gtrig.pythagorean",
            "quad.beta_oracle",
            "hfun.H_at_one",
            "hfun.H_222",
            "hfun.estimate",
            "hfun.K_monotone_in_m",
            "eigen.gradient",
            "eigen.representation_closed_form",
        ):
            check = report.get(name)
            assert check.passed, f"{name}: {check.residual} > {check.threshold} ({check.detail})"
        assert len(report.checks) == 20
