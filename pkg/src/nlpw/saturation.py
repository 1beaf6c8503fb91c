"""lambda_alpha as a function of alpha: sweeps, the critical value alpha_C and its bounds.

lambda_alpha is nondecreasing in alpha and saturates at the twisted constant
lambda_T from alpha_C on. ``find_alpha_c`` locates alpha_C by bisection on the
predicate lambda_T - lambda_alpha > delta_gap, where delta_gap is measured from the
discretization error of the odd branch at the working mesh.
"""

import logging
import math
from dataclasses import dataclass, field, replace
from typing import Any, ClassVar, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .batch import BatchItem, BatchProcessor
from .config import SolverSettings, config_manager
from .eigen import (
    EigenResult,
    lambda_T_closed,
    minimize_lambda_alpha,
    odd_branch_lambda,
)
from .errors import BracketingError, NLPWError, ParameterDomainError
from .gtrig import Params

logger = logging.getLogger(__name__)

MAX_DOUBLINGS = 60
WARM_STARTS = ("even", "odd")


def lipschitz_constant(params: Params) -> float:
    """2^(p(q-r+1)/(q(r-1))): Lipschitz constant of alpha -> lambda_alpha."""
    p, q, r = params.p, params.q, params.r
    return 2.0 ** (p * (q - r + 1) / (q * (r - 1)))


def lambda_tolerance(settings: SolverSettings, value: float) -> float:
    """Accuracy attributed to one solver value of size ``value``."""
    return 10.0 * settings.grad_tol * max(1.0, abs(value))


def alpha_c_closed_rp1(p: float, q: float) -> float:
    """alpha_C(p, q, p+1) = ((2^p - 1)/2^p) lambda_T(p, q).

    Inside the existence range r = p + 1 is admissible only for q = p.
    """
    if abs(q - p) > 1e-12:
        logger.debug(f"closed form for r=p+1 used outside its range (p={p}, q={q})")
    return (2.0**p - 1.0) / 2.0**p * lambda_T_closed(p, q)


def alpha_c_lower_bound(params: Params) -> float:
    """(2^p - 1)/2^(p/(r-1) + p - 1) lambda_T; tight at r = p + 1."""
    p, r = params.p, params.r
    return (2.0**p - 1.0) / 2.0 ** (p / (r - 1) + p - 1) * lambda_T_closed(p, params.q)


def gap_threshold(
    params: Params, n: int, settings: Optional[SolverSettings] = None
) -> float:
    """delta_gap = 10 max(Richardson error of the odd branch, |lambda_T,h - lambda_T|, solver tolerance)."""
    settings = settings or config_manager.get_solver_settings()
    exact = lambda_T_closed(params.p, params.q)
    fine = odd_branch_lambda(params, n, settings).lambda_value
    coarse = odd_branch_lambda(params, n // 2, settings).lambda_value
    richardson = abs(fine - coarse) / 3.0
    delta = 10.0 * max(richardson, abs(fine - exact), lambda_tolerance(settings, exact))
    logger.debug(
        f"gap threshold {delta:.3g} for {params}, n={n} "
        f"(odd branch {fine:.12g}, closed form {exact:.12g})"
    )
    return delta


def _gap(params: Params, alpha: float, n: int, settings: SolverSettings) -> float:
    result = minimize_lambda_alpha(params, alpha, n, settings)
    return lambda_T_closed(params.p, params.q) - result.lambda_value


def find_alpha_c(
    params: Params,
    n: int,
    tol_alpha: float,
    settings: Optional[SolverSettings] = None,
    delta: Optional[float] = None,
) -> Tuple[float, Tuple[float, float]]:
    """Bracket alpha_C by doubling from 1, then bisect to width ``tol_alpha``.

    Returns the bracket midpoint and the bracket.
    """
    if not params.in_theorem_range:
        raise ParameterDomainError(f"{params} lies outside the existence range of alpha_C")
    if tol_alpha <= 0:
        raise ParameterDomainError("tol_alpha must be positive")
    settings = settings or config_manager.get_solver_settings()
    if delta is None:
        delta = gap_threshold(params, n, settings)

    def below(alpha: float) -> bool:
        return _gap(params, alpha, n, settings) > delta

    if not below(0.0):
        raise BracketingError(
            f"no gap at alpha=0 for {params}, n={n}: threshold {delta:.3g} too large"
        )

    lo, hi = 0.0, 1.0
    for _ in range(MAX_DOUBLINGS):
        if not below(hi):
            break
        lo, hi = hi, 2.0 * hi
    else:
        raise BracketingError(
            f"lambda_alpha stays below lambda_T up to alpha={hi:g} for {params}"
        )
    logger.info(f"alpha_C bracketed in [{lo:g}, {hi:g}] for {params}")

    while hi - lo > tol_alpha:
        mid = 0.5 * (lo + hi)
        if below(mid):
            lo = mid
        else:
            hi = mid
        logger.debug(f"alpha_C bracket [{lo:.6g}, {hi:.6g}]")

    alpha_c = 0.5 * (lo + hi)
    logger.info(f"alpha_C = {alpha_c:.6g} in [{lo:.6g}, {hi:.6g}] for {params}, n={n}")
    return alpha_c, (lo, hi)


def lower_bound_holds(
    params: Params,
    n: int,
    settings: Optional[SolverSettings] = None,
    tol: float = 1e-3,
    delta: Optional[float] = None,
) -> bool:
    """True when the gap is still open at alpha = bound - tol, so alpha_C >= bound - tol."""
    settings = settings or config_manager.get_solver_settings()
    if delta is None:
        delta = gap_threshold(params, n, settings)
    alpha = max(0.0, alpha_c_lower_bound(params) - tol)
    return _gap(params, alpha, n, settings) > delta


@dataclass(frozen=True)
class SweepSample:
    """One alpha of a sweep; ``error`` is set instead of a value when the solve failed."""

    alpha: float
    lambda_value: float
    converged: bool
    start_label: Optional[str] = None
    gamma: Optional[float] = None
    even_defect: Optional[float] = None
    odd_defect: Optional[float] = None
    r_average: Optional[float] = None
    zero_count: Optional[int] = None
    error: Optional[str] = None

    @classmethod
    def from_result(cls, alpha: float, result: EigenResult) -> "SweepSample":
        diagnostics = result.diagnostics
        return cls(
            alpha=alpha,
            lambda_value=result.lambda_value,
            converged=result.converged,
            start_label=result.start_label,
            gamma=result.gamma,
            even_defect=diagnostics.even_defect,
            odd_defect=diagnostics.odd_defect,
            r_average=diagnostics.r_average,
            zero_count=diagnostics.zero_count,
        )

    @classmethod
    def failed(cls, alpha: float, exc: BaseException) -> "SweepSample":
        return cls(alpha=alpha, lambda_value=math.nan, converged=False, error=str(exc))

    def as_row(self) -> Dict[str, Any]:
        return {
            "alpha": self.alpha,
            "lambda": self.lambda_value,
            "even_defect": self.even_defect,
            "odd_defect": self.odd_defect,
            "r_average": self.r_average,
            "zero_count": self.zero_count,
        }


@dataclass(frozen=True, eq=False)
class SaturationReport:
    row_fields: ClassVar[Tuple[str, ...]] = (
        "alpha",
        "lambda",
        "even_defect",
        "odd_defect",
        "r_average",
        "zero_count",
    )

    params: Params
    alpha_grid: np.ndarray
    lambda_samples: np.ndarray
    lower_bound: float
    monotone_ok: bool
    lipschitz_ok: bool
    lambda_T: float
    n: int
    alpha_c: Optional[float] = None
    alpha_c_bracket: Optional[Tuple[float, float]] = None
    closed_form: Optional[float] = None
    samples: Tuple[SweepSample, ...] = field(default_factory=tuple)

    def rows(self) -> List[Dict[str, Any]]:
        return [sample.as_row() for sample in self.samples]

    def as_dict(self) -> Dict[str, Any]:
        return {
            "p": self.params.p,
            "q": self.params.q,
            "r": self.params.r,
            "n": self.n,
            "lambda_T": self.lambda_T,
            "alpha_c": self.alpha_c,
            "alpha_c_bracket": list(self.alpha_c_bracket) if self.alpha_c_bracket else None,
            "lower_bound": self.lower_bound,
            "closed_form": self.closed_form,
            "monotone_ok": self.monotone_ok,
            "lipschitz_ok": self.lipschitz_ok,
            "samples": [
                dict(sample.as_row(), start_label=sample.start_label, error=sample.error)
                for sample in self.samples
            ],
        }


def _check_samples(
    params: Params, samples: Sequence[SweepSample], settings: SolverSettings
) -> Tuple[bool, bool]:
    ok = [s for s in samples if math.isfinite(s.lambda_value)]
    constant = lipschitz_constant(params)
    monotone = lipschitz = True
    for left, right in zip(ok, ok[1:]):
        slack = lambda_tolerance(settings, left.lambda_value) + lambda_tolerance(
            settings, right.lambda_value
        )
        increase = right.lambda_value - left.lambda_value
        if increase < -slack:
            logger.warning(
                f"lambda decreases from alpha={left.alpha:g} to alpha={right.alpha:g} "
                f"by {-increase:.3g}"
            )
            monotone = False
        if increase > constant * (right.alpha - left.alpha) + slack:
            logger.warning(
                f"Lipschitz bound {constant:g} exceeded between alpha={left.alpha:g} "
                f"and alpha={right.alpha:g}"
            )
            lipschitz = False
    return monotone, lipschitz


def _sweep_warm(
    params: Params, alphas: Sequence[float], n: int, settings: SolverSettings
) -> List[SweepSample]:
    samples = []
    previous: Optional[EigenResult] = None
    for alpha in alphas:
        try:
            if previous is None:
                result = minimize_lambda_alpha(params, alpha, n, settings)
            else:
                result = minimize_lambda_alpha(
                    params,
                    alpha,
                    n,
                    settings,
                    warm_start=previous.minimizer,
                    starts=WARM_STARTS,
                )
        except NLPWError as exc:
            logger.warning(f"sweep sample alpha={alpha:g} failed: {exc}")
            samples.append(SweepSample.failed(alpha, exc))
            continue
        previous = result
        samples.append(SweepSample.from_result(alpha, result))
    return samples


def _sweep_cold(
    params: Params,
    alphas: Sequence[float],
    n: int,
    settings: SolverSettings,
    processor: Optional[BatchProcessor],
) -> List[SweepSample]:
    processor = processor or BatchProcessor()
    items = [
        BatchItem(id=f"alpha={alpha!r}", args=(params, alpha, n, settings))
        for alpha in alphas
    ]
    samples = []
    for alpha, outcome in zip(alphas, processor.map(minimize_lambda_alpha, items)):
        if outcome.success:
            samples.append(SweepSample.from_result(alpha, outcome.data))
        else:
            samples.append(SweepSample.failed(alpha, outcome.exception))
    return samples


def sweep_alpha(
    params: Params,
    alphas: Sequence[float],
    n: int,
    settings: Optional[SolverSettings] = None,
    warm: bool = True,
    processor: Optional[BatchProcessor] = None,
) -> SaturationReport:
    """Solve at every alpha and check monotonicity and the Lipschitz bound.

    Warm sweeps reuse each minimizer as a start for the next alpha; cold sweeps
    run the full multi-start independently per alpha on the batch pool. A failed
    sample is recorded with its error and does not stop the sweep.
    """
    settings = settings or config_manager.get_solver_settings()
    grid = np.asarray(alphas, dtype=float).reshape(-1)
    if np.any(np.diff(grid) < 0):
        raise ParameterDomainError("alphas must be sorted ascending")

    values = [float(alpha) for alpha in grid]
    if warm:
        samples = _sweep_warm(params, values, n, settings)
    else:
        samples = _sweep_cold(params, values, n, settings, processor)

    monotone, lipschitz = _check_samples(params, samples, settings)
    return SaturationReport(
        params=params,
        alpha_grid=grid,
        lambda_samples=np.array([s.lambda_value for s in samples], dtype=float),
        lower_bound=alpha_c_lower_bound(params),
        monotone_ok=monotone,
        lipschitz_ok=lipschitz,
        lambda_T=lambda_T_closed(params.p, params.q),
        n=n,
        samples=tuple(samples),
    )


def saturation_report(
    params: Params,
    alphas: Sequence[float],
    n: int,
    tol_alpha: float,
    settings: Optional[SolverSettings] = None,
    warm: bool = True,
) -> SaturationReport:
    """Sweep plus the alpha_C bracket and, for r = p + 1, the closed form."""
    settings = settings or config_manager.get_solver_settings()
    report = sweep_alpha(params, alphas, n, settings, warm=warm)

    alpha_c = bracket = None
    if params.in_theorem_range:
        alpha_c, bracket = find_alpha_c(params, n, tol_alpha, settings)
    else:
        logger.warning(f"{params} lies outside the existence range; alpha_C not located")

    closed_form = None
    if abs(params.r - (params.p + 1)) <= 1e-12:
        closed_form = alpha_c_closed_rp1(params.p, params.q)

    return replace(
        report, alpha_c=alpha_c, alpha_c_bracket=bracket, closed_form=closed_form
    )
