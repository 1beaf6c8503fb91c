"""Unit tests for the command-line interface."""

import json
import logging
import math

import pytest

from nlpw import cli
from nlpw.cli import EXIT_FAILURE, EXIT_OK, EXIT_USAGE, build_parser, main
from nlpw.verify import CheckResult, VerifyReport
from nlpw.version import __version__


@pytest.fixture(autouse=True)
def reset_logging():
    """main() attaches a stderr handler to the package logger; undo it."""
    yield
    package_logger = logging.getLogger("nlpw")
    for handler in list(package_logger.handlers):
        package_logger.removeHandler(handler)
    package_logger.propagate = True
    package_logger.setLevel(logging.NOTSET)


class TestParser:
    """Argument parsing."""

    def test_version(self, capsys):
        with pytest.raises(SystemExit) as excinfo:
            main(["--version"])

        assert excinfo.value.code == 0
        assert __version__ in capsys.readouterr().out

    def test_missing_command(self):
        with pytest.raises(SystemExit) as excinfo:
            main([])
        assert excinfo.value.code == EXIT_USAGE

    def test_unknown_command(self):
        with pytest.raises(SystemExit) as excinfo:
            main(["integrate"])
        assert excinfo.value.code == EXIT_USAGE

    def test_bad_format_choice(self):
        with pytest.raises(SystemExit) as excinfo:
            main(["verify", "--format", "xml"])
        assert excinfo.value.code == EXIT_USAGE

    def test_subcommand_defaults(self):
        args = build_parser().parse_args(["lambda", "--p", "3", "--starts", "odd"])

        assert args.command == "lambda"
        assert args.p == 3.0
        assert args.q is None
        assert args.starts == ["odd"]
        assert args.handler is cli.cmd_lambda


class TestGtrigCommand:
    """nlpw gtrig eval."""

    def test_json_rows(self, capsys):
        assert main(["gtrig", "eval", "--p", "2", "--q", "2", "--t", "0", "1"]) == EXIT_OK
        rows = json.loads(capsys.readouterr().out)

        assert [row["t"] for row in rows] == [0.0, 1.0]
        assert rows[1]["sin"] == pytest.approx(math.sin(1.0), abs=1e-13)
        assert rows[1]["cos"] == pytest.approx(math.cos(1.0), abs=1e-13)

    def test_csv_rows(self, capsys):
        main(["gtrig", "eval", "--format", "csv", "--t", "0"])
        lines = capsys.readouterr().out.splitlines()

        assert lines[0] == "p,q,t,sin,cos"
        assert lines[1].startswith("2,2,0,0,")
        assert float(lines[1].split(",")[-1]) == pytest.approx(1.0, abs=1e-14)

    def test_output_file(self, tmp_path, capsys):
        target = tmp_path / "out" / "gtrig.json"
        assert main(["gtrig", "eval", "--t", "0.5", "--output", str(target)]) == EXIT_OK

        assert capsys.readouterr().out == ""
        assert json.loads(target.read_text(encoding="utf-8"))[0]["t"] == 0.5

    def test_config_file_supplies_exponents(self, tmp_path, capsys):
        config_file = tmp_path / "run.json"
        config_file.write_text(json.dumps({"p": 3.0, "q": 2.0}), encoding="utf-8")

        main(["gtrig", "eval", "--config", str(config_file), "--q", "1.5", "--t", "0.1"])
        row = json.loads(capsys.readouterr().out)[0]

        assert (row["p"], row["q"]) == (3.0, 1.5)


class TestHfunCommand:
    """nlpw hfun eval."""

    def test_laplacian_grid(self, capsys):
        code = main(["hfun", "eval", "--p", "2", "--q", "2", "--r", "2", "--m-grid", "0.5", "1"])
        rows = json.loads(capsys.readouterr().out)

        assert code == EXIT_OK
        assert [row["m"] for row in rows] == [0.5, 1.0]
        assert all(row["H"] == pytest.approx(math.pi, abs=1e-9) for row in rows)


class TestLambdaCommand:
    """nlpw lambda."""

    def test_settings_reach_solver(self, mocker, capsys, tmp_path):
        solve = mocker.patch.object(cli, "minimize_lambda_alpha", return_value={"lambda": 9.87})
        table = tmp_path / "u.csv"

        code = main(
            ["lambda", "--alpha", "4", "--n", "64", "--starts", "odd", "--tol", "1e-9",
             "--minimizer-csv", str(table)]
        )

        assert code == EXIT_OK
        params, alpha, n, settings = solve.call_args.args
        assert (alpha, n) == (4.0, 64)
        assert settings.starts == ("odd",)
        assert settings.grad_tol == 1e-9
        assert json.loads(capsys.readouterr().out) == {"lambda": 9.87}
        assert table.read_text(encoding="utf-8") == "lambda\n9.8699999999999992\n"

    def test_domain_error_exits_one(self):
        assert main(["lambda", "--p", "2", "--q", "2", "--r", "3.5", "--n", "64"]) == EXIT_FAILURE

    def test_odd_mesh_is_usage_error(self):
        assert main(["lambda", "--n", "65"]) == EXIT_USAGE

    def test_missing_config_is_usage_error(self, tmp_path):
        assert main(["lambda", "--config", str(tmp_path / "absent.json")]) == EXIT_USAGE


class TestSaturateCommand:
    """nlpw saturate."""

    def test_alpha_grid(self, mocker, capsys, tmp_path):
        report = mocker.patch.object(cli, "saturation_report", return_value={"alpha_c": 7.4})
        table = tmp_path / "sweep.csv"

        code = main(
            ["saturate", "--p", "2", "--q", "2", "--r", "3", "--alpha-min", "0",
             "--alpha-max", "10", "--steps", "5", "--n", "64", "--csv", str(table)]
        )

        assert code == EXIT_OK
        params, alphas, n, tol_alpha, settings = report.call_args.args
        assert list(alphas) == [0.0, 2.5, 5.0, 7.5, 10.0]
        assert (params.r, n, tol_alpha) == (3.0, 64, 1e-3)
        assert json.loads(capsys.readouterr().out) == {"alpha_c": 7.4}
        assert table.exists()

    def test_reversed_alpha_range(self):
        assert main(["saturate", "--alpha-min", "5", "--alpha-max", "1"]) == EXIT_USAGE


class TestVerifyCommand:
    """nlpw verify."""

    def test_passing_suite(self, mocker, capsys):
        suite = mocker.patch.object(
            cli, "run_verify_suite", return_value=VerifyReport(checks=(CheckResult("a", True, 0.0, 1.0),))
        )

        assert main(["verify", "--quick"]) == EXIT_OK
        assert suite.call_args.args[0].quick is True
        assert json.loads(capsys.readouterr().out)["passed"] is True

    def test_failing_suite(self, mocker, capsys):
        mocker.patch.object(
            cli,
            "run_verify_suite",
            return_value=VerifyReport(checks=(CheckResult("b", False, 2.0, 1.0, detail="too far"),)),
        )

        assert main(["verify"]) == EXIT_FAILURE
        assert json.loads(capsys.readouterr().out)["passed"] is False
