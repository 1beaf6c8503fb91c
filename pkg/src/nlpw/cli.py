"""Command-line entry point: ``nlpw {gtrig,hfun,lambda,saturate,verify}``.

Reports go to stdout (or ``--output``); logs go to stderr.
"""

import argparse
import functools
import logging
import sys
from dataclasses import replace
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np
from pydantic import ValidationError

from .batch import BatchProcessor
from .config import Command, Config, RunConfig
from .eigen import minimize_lambda_alpha
from .errors import NLPWError
from .gtrig import cos_pq, sin_pq
from .hfun import H_grid
from .report import write_report
from .saturation import saturation_report
from .verify import run_verify_suite
from .version import __version__

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def get_logger(name: str, level: Optional[str] = None) -> logging.Logger:
    """Configure structured logging on stderr for nlpw."""
    logger = logging.getLogger(name)

    # Avoid duplicate configuration
    if not logger.handlers:
        handler = logging.StreamHandler(sys.stderr)
        formatter = logging.Formatter(
            "%(asctime)s - %(name)s - %(levelname)s - "
            "[%(funcName)s:%(lineno)d] - %(message)s",
            datefmt="%Y-%m-%d %H:%M:%S",
        )
        handler.setFormatter(formatter)
        logger.addHandler(handler)
        logger.propagate = False

    logger.setLevel(getattr(logging, (level or Config.LOG_LEVEL).upper(), logging.INFO))
    return logger


logger = logging.getLogger(__name__)


def handle_errors(func: Callable[[argparse.Namespace], int]) -> Callable[[argparse.Namespace], int]:
    """Map exceptions of a command body to exit statuses."""

    @functools.wraps(func)
    def wrapper(args: argparse.Namespace) -> int:
        try:
            return func(args)
        except ValidationError as e:
            logger.error(f"Invalid configuration for {args.command}: {e}")
            return EXIT_USAGE
        except FileNotFoundError as e:
            logger.error(f"Configuration error in {args.command}: {e}")
            return EXIT_USAGE
        except NLPWError as e:
            logger.error(f"{type(e).__name__} in {args.command}: {e}")
            return EXIT_FAILURE
        except OSError as e:
            logger.error(f"Could not write report for {args.command}: {e}")
            return EXIT_FAILURE

    return wrapper


def _run_config(args: argparse.Namespace, **overrides: Any) -> RunConfig:
    common = {
        "command": Command(args.command),
        "seed": args.seed,
        "threads": args.threads,
        "output": args.output,
        "format": args.format,
    }
    common.update(overrides)
    return RunConfig.from_sources(args.config, **common)


def _emit(report: Any, cfg: RunConfig) -> None:
    payload = write_report(report, cfg.format, cfg.output)
    if cfg.output is None:
        sys.stdout.write(payload.decode("utf-8"))
    else:
        logger.info(f"Report written to {cfg.output}")


@handle_errors
def cmd_gtrig(args: argparse.Namespace) -> int:
    cfg = _run_config(args, p=args.p, q=args.q)
    t = np.asarray(args.t, dtype=float)
    sines = np.atleast_1d(sin_pq(cfg.p, cfg.q, t))
    cosines = np.atleast_1d(cos_pq(cfg.p, cfg.q, t))
    rows: List[Dict[str, float]] = [
        {"p": cfg.p, "q": cfg.q, "t": float(ti), "sin": float(s), "cos": float(c)}
        for ti, s, c in zip(t, sines, cosines)
    ]
    _emit(rows, cfg)
    return EXIT_OK


@handle_errors
def cmd_hfun(args: argparse.Namespace) -> int:
    cfg = _run_config(args, p=args.p, q=args.q, r=args.r)
    cells = H_grid(
        args.m_grid,
        cfg.params(),
        cfg.quadrature_config(),
        BatchProcessor(cfg.batch_config()),
    )
    _emit(cells, cfg)
    return EXIT_OK


@handle_errors
def cmd_lambda(args: argparse.Namespace) -> int:
    cfg = _run_config(
        args,
        p=args.p,
        q=args.q,
        r=args.r,
        alpha=args.alpha,
        n=args.n,
        grad_tol=args.tol,
        max_iter=args.max_iter,
    )
    settings = cfg.solver_settings()
    if args.starts:
        settings = replace(settings, starts=tuple(args.starts))
    result = minimize_lambda_alpha(cfg.params(), cfg.alpha, cfg.n, settings)
    _emit(result, cfg)
    if args.minimizer_csv is not None:
        write_report(result, "csv", args.minimizer_csv)
        logger.info(f"Minimizer written to {args.minimizer_csv}")
    return EXIT_OK


@handle_errors
def cmd_saturate(args: argparse.Namespace) -> int:
    cfg = _run_config(
        args,
        p=args.p,
        q=args.q,
        r=args.r,
        n=args.n,
        alpha_min=args.alpha_min,
        alpha_max=args.alpha_max,
        steps=args.steps,
        tol_alpha=args.tol_alpha,
    )
    alphas = np.linspace(cfg.alpha_min, cfg.alpha_max, cfg.steps)
    report = saturation_report(
        cfg.params(), alphas, cfg.n, cfg.tol_alpha, cfg.solver_settings()
    )
    _emit(report, cfg)
    if args.csv is not None:
        write_report(report, "csv", args.csv)
        logger.info(f"Sweep table written to {args.csv}")
    return EXIT_OK


@handle_errors
def cmd_verify(args: argparse.Namespace) -> int:
    cfg = _run_config(args, n=args.n, quick=args.quick or None)
    report = run_verify_suite(cfg)
    _emit(report, cfg)
    for failure in report.failures:
        logger.error(
            f"check {failure.name} failed: residual {failure.residual:.3g} "
            f"> {failure.threshold:.3g} ({failure.detail})"
        )
    return EXIT_OK if report.passed else EXIT_FAILURE


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, default=None, help="JSON config file; flags override it.")
    common.add_argument("--output", type=Path, default=None, help="Write the report here instead of stdout.")
    common.add_argument("--format", choices=["json", "csv"], default=None)
    common.add_argument("--seed", type=int, default=None, help="Seed of the random solver starts.")
    common.add_argument("--threads", type=int, default=None, help="Worker threads for grid evaluation.")
    return common


def _exponents(parser: argparse.ArgumentParser, with_r: bool = True) -> None:
    parser.add_argument("--p", type=float, default=None)
    parser.add_argument("--q", type=float, default=None)
    if with_r:
        parser.add_argument("--r", type=float, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nlpw",
        description="Optimal constants of the nonlocal Poincare-Wirtinger inequality.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", default=None, help="Overrides NLPW_LOG_LEVEL.")
    common = _common_options()
    subparsers = parser.add_subparsers(dest="command", required=True)

    gtrig = subparsers.add_parser("gtrig", help="Generalized trigonometric functions.")
    gtrig_sub = gtrig.add_subparsers(dest="action", required=True)
    gtrig_eval = gtrig_sub.add_parser("eval", parents=[common], help="sin_pq and cos_pq at t.")
    _exponents(gtrig_eval, with_r=False)
    gtrig_eval.add_argument("--t", type=float, nargs="+", required=True)
    gtrig_eval.set_defaults(handler=cmd_gtrig)

    hfun = subparsers.add_parser("hfun", help="The auxiliary function H.")
    hfun_sub = hfun.add_subparsers(dest="action", required=True)
    hfun_eval = hfun_sub.add_parser("eval", parents=[common], help="H over an m-grid.")
    _exponents(hfun_eval)
    hfun_eval.add_argument("--m-grid", type=float, nargs="+", required=True)
    hfun_eval.set_defaults(handler=cmd_hfun)

    lam = subparsers.add_parser("lambda", parents=[common], help="Minimize Q_alpha.")
    _exponents(lam)
    lam.add_argument("--alpha", type=float, default=None)
    lam.add_argument("--n", type=int, default=None, help="Number of mesh elements (even).")
    lam.add_argument("--starts", nargs="+", default=None, choices=["even", "odd", "even_random", "odd_random"])
    lam.add_argument("--tol", type=float, default=None, help="Relative gradient tolerance.")
    lam.add_argument("--max-iter", type=int, default=None)
    lam.add_argument("--minimizer-csv", type=Path, default=None, help="Also write (x, u) of the minimizer.")
    lam.set_defaults(handler=cmd_lambda)

    sat = subparsers.add_parser("saturate", parents=[common], help="Sweep alpha and locate alpha_C.")
    _exponents(sat)
    sat.add_argument("--alpha-min", type=float, default=None)
    sat.add_argument("--alpha-max", type=float, default=None)
    sat.add_argument("--steps", type=int, default=None)
    sat.add_argument("--n", type=int, default=None)
    sat.add_argument("--tol-alpha", type=float, default=None)
    sat.add_argument("--csv", type=Path, default=None, help="Also write the sweep table as CSV.")
    sat.set_defaults(handler=cmd_saturate)

    verify = subparsers.add_parser("verify", parents=[common], help="Run the verification suite.")
    verify.add_argument("--quick", action="store_true", help="Smaller meshes and grids.")
    verify.add_argument("--n", type=int, default=None)
    verify.set_defaults(handler=cmd_verify)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    get_logger("nlpw", args.log_level)
    return args.handler(args)


if __name__ == "__main__":  # pragma: no cover - CLI entry point
    raise SystemExit(main())
