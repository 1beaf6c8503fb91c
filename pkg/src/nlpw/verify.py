"""Verification suite: every numerical property nlpw relies on, as named checks.

Each check measures a residual against a threshold; the suite never stops at
the first failure, and an exception inside a check is reported as that check
failing.
"""

import functools
import logging
import math
import time
from dataclasses import dataclass, field
from typing import Any, Callable, ClassVar, Dict, Iterable, List, Tuple

import numpy as np
from scipy import special

from .batch import BatchProcessor
from .eigen import (
    GridFunction,
    el_residual,
    lambda_P_closed,
    lambda_T_closed,
    minimize_lambda_alpha,
    rayleigh_gradient,
    rayleigh_quotient,
    representation_check,
    representation_lambda,
)
from .gtrig import Params, cos_pq, incomplete_F, pi_pq, sin_pq
from .hfun import (
    H_grid,
    K_at_zero,
    K_val,
    h_r_derivative,
    h_val,
    k_dips_at_zero,
    proof_aux,
)
from .quad import integrate_unit
from .saturation import (
    SaturationReport,
    alpha_c_closed_rp1,
    alpha_c_lower_bound,
    find_alpha_c,
    lambda_tolerance,
    lower_bound_holds,
    sweep_alpha,
)

logger = logging.getLogger(__name__)

QUICK_MESH = 128
# (p, q) pairs with 2p/(p+2) <= q <= p
THEOREM_PAIRS = ((2.0, 2.0), (3.0, 2.0), (3.0, 3.0), (2.5, 2.0), (4.0, 3.0), (1.5, 1.2))
ROUND_TRIP_GRID = (1.25, 1.5, 2.0, 3.0, 4.0)
# q = 2p/(p+1): K drops below K(0) right after m = 0
DIP_PAIR = (1.5, 1.2)
# in-range triples with r <= p + 1
LOWER_BOUND_TRIPLES = (
    (2.0, 2.0, 2.5),
    (3.0, 2.0, 2.5),
    (2.5, 2.0, 2.5),
    (1.5, 1.2, 1.8),
    (3.0, 3.0, 4.0),
    (4.0, 3.0, 3.5),
)
LOWER_BOUND_MESH = 128
ALPHA_C_MESH = 512
# (2,2,3) has alpha_C = 3 pi^2 / 4 < 8
PLATEAU_FROM = 8.0


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    residual: float
    threshold: float
    seconds: float = 0.0
    detail: str = ""

    def as_row(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "passed": self.passed,
            "residual": self.residual,
            "threshold": self.threshold,
            "seconds": self.seconds,
            "detail": self.detail,
        }


@dataclass(frozen=True)
class VerifyReport:
    row_fields: ClassVar[Tuple[str, ...]] = (
        "name",
        "passed",
        "residual",
        "threshold",
        "seconds",
        "detail",
    )

    checks: Tuple[CheckResult, ...] = field(default_factory=tuple)
    quick: bool = False
    n: int = 0

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> List[CheckResult]:
        return [check for check in self.checks if not check.passed]

    def get(self, name: str) -> CheckResult:
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)

    def rows(self) -> List[Dict[str, Any]]:
        return [check.as_row() for check in self.checks]

    def as_dict(self) -> Dict[str, Any]:
        return {
            "passed": self.passed,
            "quick": self.quick,
            "n": self.n,
            "checks": self.rows(),
        }


@dataclass(frozen=True)
class _Grids:
    n: int
    pairs: Tuple[Tuple[float, float], ...]
    r_points: int
    m_values: Tuple[float, ...]
    h222_m: Tuple[float, ...]
    k_m: Tuple[float, ...]
    gradient_samples: int
    sweep_alphas: Tuple[float, ...]
    bound_triples: Tuple[Tuple[float, float, float], ...]


def _grids(n: int, quick: bool) -> _Grids:
    if quick:
        return _Grids(
            n=min(n, QUICK_MESH),
            pairs=THEOREM_PAIRS[:2],
            r_points=2,
            m_values=tuple(np.linspace(0.0, 1.0, 6)),
            h222_m=tuple(np.linspace(0.0, 1.0, 6)),
            k_m=tuple(np.linspace(0.0, 1.0, 11)),
            gradient_samples=5,
            sweep_alphas=(0.0, 4.0, 10.0),
            bound_triples=LOWER_BOUND_TRIPLES[:2],
        )
    return _Grids(
        n=n,
        pairs=THEOREM_PAIRS,
        r_points=4,
        m_values=tuple(np.linspace(0.0, 1.0, 21)),
        h222_m=tuple(np.linspace(0.0, 1.0, 21)),
        k_m=tuple(np.linspace(0.0, 1.0, 41)),
        gradient_samples=20,
        sweep_alphas=(0.0, 2.0, 4.0, 6.0, 8.0, 10.0),
        bound_triples=LOWER_BOUND_TRIPLES,
    )


def _r_grid(p: float, q: float, points: int) -> np.ndarray:
    return np.linspace(q / 2 + 1, q + q / p, points)


def _measure(
    name: str, threshold: float, body: Callable[[], Tuple[float, str]]
) -> CheckResult:
    start = time.perf_counter()
    try:
        residual, detail = body()
    except Exception as exc:
        logger.error(f"check {name} raised {type(exc).__name__}: {exc}")
        return CheckResult(
            name, False, math.inf, threshold, time.perf_counter() - start, f"{type(exc).__name__}: {exc}"
        )
    passed = bool(residual <= threshold)
    result = CheckResult(name, passed, float(residual), threshold, time.perf_counter() - start, detail)
    level = logging.INFO if passed else logging.WARNING
    logger.log(level, f"check {name}: residual {residual:.3g} (threshold {threshold:.3g})")
    return result


# ---------------------------------------------------------------------------
# Special functions


def _pi_22() -> Tuple[float, str]:
    return abs(pi_pq(2, 2) - math.pi), ""


def _round_trip() -> Tuple[float, str]:
    worst, where = 0.0, ""
    x = np.linspace(0.0, 0.999, 200)
    for p in ROUND_TRIP_GRID:
        for q in ROUND_TRIP_GRID:
            residual = float(np.max(np.abs(sin_pq(p, q, incomplete_F(p, q, x)) - x)))
            if residual > worst:
                worst, where = residual, f"p={p}, q={q}"
    return worst, where


def _pythagorean() -> Tuple[float, str]:
    worst, where = 0.0, ""
    for p in ROUND_TRIP_GRID:
        for q in ROUND_TRIP_GRID:
            t = np.linspace(-2 * pi_pq(p, q), 2 * pi_pq(p, q), 97)
            residual = float(
                np.max(np.abs(np.abs(cos_pq(p, q, t)) ** p + np.abs(sin_pq(p, q, t)) ** q - 1))
            )
            if residual > worst:
                worst, where = residual, f"p={p}, q={q}"
    return worst, where


def _beta_oracle(cfg) -> Callable[[], Tuple[float, str]]:
    def body():
        worst, where = 0.0, ""
        for a, b in ((0.5, 0.5), (1.0 / 3.0, 2.0), (0.25, 0.75), (2.0, 3.0)):
            result = integrate_unit(
                lambda y, ybar: y ** (a - 1) * ybar ** (b - 1), cfg, complement=True
            )
            residual = abs(result.value / special.beta(a, b) - 1)
            if residual > worst:
                worst, where = residual, f"a={a:g}, b={b:g}"
        return worst, where

    return body


# ---------------------------------------------------------------------------
# H and its lemmas


def _h_identities(grids: _Grids, cfg, processor) -> Callable[[], Tuple[float, str]]:
    def body():
        worst, where = 0.0, ""
        for p, q in grids.pairs:
            for r in _r_grid(p, q, grids.r_points):
                value = H_grid([1.0], Params(p, q, r), cfg, processor)[0].value
                residual = abs(value - pi_pq(p, q))
                if residual > worst:
                    worst, where = residual, f"p={p}, q={q}, r={r:.4g}"
        return worst, where

    return body


def _h_222(grids: _Grids, cfg, processor) -> Callable[[], Tuple[float, str]]:
    def body():
        cells = H_grid(grids.h222_m, Params(2, 2, 2), cfg, processor)
        residuals = [abs(cell.value - math.pi) for cell in cells]
        worst = int(np.argmax(residuals))
        return residuals[worst], f"m={cells[worst].m:.4g}"

    return body


def _h_estimate(grids: _Grids, cfg, processor, strict: bool) -> Callable[[], Tuple[float, str]]:
    """Shortfall of H below the lower envelope min(pi_{p,q}, K(0), min_m K(m)),
    or below that bound + 1e-6 for the strict variant.

    H(m, r) >= K(m) on the whole r-range; K(0) < pi_{p,q} whenever q < p, and
    where K dips after m = 0 (q <= 2p/(p+1)) its minimum lies inside (0, 1).
    """

    def body():
        worst, where, skipped = -math.inf, "", 0
        for p, q in grids.pairs:
            envelope = [K_val(m, p, q, cfg) for m in grids.m_values]
            base = min(pi_pq(p, q), K_at_zero(p, q), min(envelope))
            for r in _r_grid(p, q, grids.r_points):
                if strict and r <= q / 2 + 1 + 1e-12:
                    continue
                ms = [m for m in grids.m_values if not strict or m <= 0.95]
                for cell in H_grid(ms, Params(p, q, r), cfg, processor):
                    if cell.divergent:
                        skipped += 1
                        continue
                    if strict and cell.m >= 1.0:
                        continue
                    shortfall = base - cell.value
                    if shortfall > worst:
                        worst, where = shortfall, f"p={p}, q={q}, r={r:.4g}, m={cell.m:.4g}"
        detail = f"worst at {where}; {skipped} divergent cells skipped"
        return worst, detail

    return body


def _lemma_h_monotone(grids: _Grids) -> Tuple[float, str]:
    """Largest relative decrease of h in r, of either sign of the sampled derivative."""
    worst, where = 0.0, ""
    samples = np.linspace(0.1, 0.9, 5)
    for p, q in grids.pairs:
        lo = 0.5 + q / 2 + q / (2 * p)
        hi = q + q / p
        rs = np.linspace(lo, hi, 4)
        for m in samples:
            values = np.array([h_val(m, Params(p, q, r), samples) for r in rs])
            drops = (values[:-1] - values[1:]) / values[1:]
            slopes = np.array([h_r_derivative(m, Params(p, q, r), samples) for r in rs])
            violation = max(float(drops.max()), float(-slopes.min()))
            if violation > worst:
                worst, where = violation, f"p={p}, q={q}, m={m:.3g}"
    return worst, where


def _lemma_k_monotone(grids: _Grids, cfg) -> Callable[[], Tuple[float, str]]:
    """Largest decrease of K on the m-grid, over pairs where K does not dip at m = 0."""

    def body():
        worst, where = 0.0, ""
        pairs = [(p, q) for p, q in grids.pairs if not k_dips_at_zero(p, q)]
        for p, q in pairs:
            values = [K_val(m, p, q, cfg) for m in grids.k_m]
            drops = np.array(values[:-1]) - np.array(values[1:])
            i = int(np.argmax(drops))
            if drops[i] > worst:
                worst, where = float(drops[i]), f"p={p}, q={q}, m={grids.k_m[i]:.3g}"
        excluded = len(grids.pairs) - len(pairs)
        return worst, f"{where}; {excluded} pairs with q <= 2p/(p+1) excluded"

    return body


def _k_dip(cfg) -> Tuple[float, str]:
    """Relative drop K(0.05) - K(0) at (1.5, 1.2); negative when the dip is reproduced."""
    p, q = DIP_PAIR
    start, dip = K_at_zero(p, q), K_val(0.05, p, q, cfg)
    return (dip - start) / start, f"K(0)={start:.12g}, K(0.05)={dip:.12g}"


def _proof_signs(grids: _Grids) -> Tuple[float, str]:
    """Negated minimum of g, f and e on interior samples (positive means a sign violation)."""
    worst, where = -math.inf, ""
    samples = np.linspace(0.1, 0.9, 5)
    for p, q in grids.pairs:
        lo = 0.5 + q / 2 + q / (2 * p)
        for r in np.linspace(lo, q + q / p, 3):
            params = Params(p, q, r)
            for m in samples:
                values = [("f", proof_aux("f", m, params)), ("e", proof_aux("e", m, params))]
                values += [("g", proof_aux("g", m, params, y)) for y in samples]
                name, lowest = min(values, key=lambda item: item[1])
                if -lowest > worst:
                    worst, where = -lowest, f"{name} at p={p}, q={q}, r={r:.4g}, m={m:.3g}"
    return worst, where


# ---------------------------------------------------------------------------
# Eigenvalue solver


def _relative(value: float, target: float) -> float:
    return abs(value - target) / abs(target)


def _gradient_check(grids: _Grids, seed: int) -> Tuple[float, str]:
    rng = np.random.default_rng(seed)
    params = Params(2.5, 2.0, 2.5)
    n, step = 64, 1e-5
    worst = 0.0
    for _ in range(grids.gradient_samples):
        u = GridFunction(n, rng.standard_normal(n - 1))
        v = rng.standard_normal(n - 1)
        gradient = rayleigh_gradient(u, params, 1.0)
        analytic = float(gradient @ v)
        plus = rayleigh_quotient(GridFunction(n, u.values + step * v), params, 1.0)
        minus = rayleigh_quotient(GridFunction(n, u.values - step * v), params, 1.0)
        numeric = (plus - minus) / (2 * step)
        scale = abs(analytic) or 1.0
        worst = max(worst, abs(analytic - numeric) / scale)
    return worst, f"{grids.gradient_samples} samples, {params}, alpha=1"


def _dirichlet_check(n: int, settings) -> Tuple[float, str]:
    result = minimize_lambda_alpha(Params(2, 2, 2), 0.0, n, settings)
    detail = f"lambda={result.lambda_value:.12g}, start {result.start_label}"
    return _relative(result.lambda_value, lambda_P_closed(2, 2)), detail


def _twisted_check(n: int, settings, cfg) -> Tuple[float, str]:
    """Relative gap to pi^2 at (2,2,3), alpha=50; an even minimizer or |gamma| > 1e-6 fails."""
    params = Params(2, 2, 3)
    result = minimize_lambda_alpha(params, 50.0, n, settings)
    gap = _relative(result.lambda_value, lambda_T_closed(2, 2))
    diagnostics = result.diagnostics
    check = representation_check(result, params, cfg)
    detail = (
        f"lambda={result.lambda_value:.12g}, gamma={result.gamma:.3g}, "
        f"zero_count={diagnostics.zero_count}, representation gap {check.lambda_gap:.3g}, "
        f"EL residual {el_residual(result.minimizer, params, 50.0):.3g}"
    )
    if abs(result.gamma) > 1e-6 or diagnostics.zero_count != 1:
        return math.inf, detail
    return max(gap, check.lambda_gap, check.norm_gap), detail


def _representation_closed_form(cfg) -> Tuple[float, str]:
    params = Params(2, 2, 3)
    value = representation_lambda(1.0, 1.0, params, cfg)
    return abs(value - lambda_T_closed(2, 2)), f"representation {value:.15g}"


def _plateau_check(report: SaturationReport, grids: _Grids, settings) -> Tuple[float, str]:
    """Sweep (2,2,3): gap below alpha_C, plateau above it, monotone and Lipschitz."""
    params = report.params
    odd = minimize_lambda_alpha(params, 0.0, grids.n, settings, starts=("odd",))
    plateau = 10 * lambda_tolerance(settings, odd.lambda_value)
    worst = 0.0
    for sample in report.samples:
        if not math.isfinite(sample.lambda_value):
            return math.inf, f"alpha={sample.alpha:g} failed: {sample.error}"
        excess = odd.lambda_value - sample.lambda_value
        if sample.alpha >= PLATEAU_FROM:
            worst = max(worst, abs(excess) / plateau)
        elif excess <= plateau:
            worst = math.inf
    if not (report.monotone_ok and report.lipschitz_ok):
        worst = math.inf
    detail = ", ".join(f"{a:g}:{v:.10g}" for a, v in zip(report.alpha_grid, report.lambda_samples))
    return worst, detail


def _branch_flip_check(report: SaturationReport) -> Tuple[float, str]:
    """Even positive minimizer at alpha = 0, odd with vanishing r-average on the plateau.

    The residual is the largest parity defect or |r-average| of the expected branch;
    a wrong zero count fails outright.
    """
    worst, parts = 0.0, []
    for sample in report.samples:
        if sample.error is not None:
            return math.inf, f"alpha={sample.alpha:g} failed: {sample.error}"
        if sample.alpha == 0.0:
            expected_zeros, defect = 0, sample.even_defect
        elif sample.alpha >= PLATEAU_FROM:
            expected_zeros = 1
            defect = max(sample.odd_defect, abs(sample.r_average))
        else:
            continue
        parts.append(f"{sample.alpha:g}:{sample.zero_count} zeros, defect {defect:.3g}")
        if sample.zero_count != expected_zeros:
            worst = math.inf
        worst = max(worst, defect)
    return worst, "; ".join(parts)


def _alpha_c_check(grids: _Grids, settings) -> Tuple[float, str]:
    """Distance of the located alpha_C(2,2,3) from 3 pi^2 / 4."""
    n = max(grids.n, ALPHA_C_MESH)
    alpha_c, (lo, hi) = find_alpha_c(Params(2, 2, 3), n, 1e-2, settings)
    exact = alpha_c_closed_rp1(2.0, 2.0)
    return abs(alpha_c - exact), f"alpha_C={alpha_c:.6g} in [{lo:.6g}, {hi:.6g}], n={n}"


def _lower_bound_check(grids: _Grids, settings) -> Tuple[float, str]:
    """Number of triples where the gap has closed 10% below the alpha_C lower bound."""
    triples = grids.bound_triples
    failures = []
    for p, q, r in triples:
        params = Params(p, q, r)
        tol = 0.1 * alpha_c_lower_bound(params)
        if not lower_bound_holds(params, LOWER_BOUND_MESH, settings, tol=tol):
            failures.append(f"({p:g},{q:g},{r:g})")
    detail = f"{len(triples)} triples at n={LOWER_BOUND_MESH}"
    if failures:
        detail += f"; gap closed for {', '.join(failures)}"
    return float(len(failures)), detail


def run_verify_suite(cfg) -> VerifyReport:
    """Run every named check for ``cfg`` (a RunConfig) and collect the outcomes."""
    grids = _grids(cfg.n, cfg.quick)
    quad_cfg = cfg.quadrature_config()
    settings = cfg.solver_settings()
    processor = BatchProcessor(cfg.batch_config())
    logger.info(f"running {'quick ' if cfg.quick else ''}verification at n={grids.n}")

    sweep = functools.lru_cache(maxsize=1)(
        lambda: sweep_alpha(Params(2, 2, 3), grids.sweep_alphas, grids.n, settings)
    )

    plan: Iterable[Tuple[str, float, Callable[[], Tuple[float, str]]]] = [
        ("gtrig.pi_22", 1e-12, _pi_22),
        ("gtrig.round_trip", 1e-10, _round_trip),
        ("gtrig.pythagorean", 1e-10, _pythagorean),
        ("quad.beta_oracle", 1e-9, _beta_oracle(quad_cfg)),
        ("hfun.H_at_one", 1e-9, _h_identities(grids, quad_cfg, processor)),
        ("hfun.H_222", 1e-8, _h_222(grids, quad_cfg, processor)),
        ("hfun.estimate", 1e-8, _h_estimate(grids, quad_cfg, processor, strict=False)),
        ("hfun.estimate_strict", -1e-6, _h_estimate(grids, quad_cfg, processor, strict=True)),
        ("hfun.h_monotone_in_r", 1e-12, lambda: _lemma_h_monotone(grids)),
        ("hfun.K_monotone_in_m", 1e-9, _lemma_k_monotone(grids, quad_cfg)),
        ("hfun.K_dip", -0.01, lambda: _k_dip(quad_cfg)),
        ("hfun.proof_signs", 0.0, lambda: _proof_signs(grids)),
        ("eigen.gradient", 1e-6, lambda: _gradient_check(grids, cfg.seed)),
        ("eigen.representation_closed_form", 1e-9, lambda: _representation_closed_form(quad_cfg)),
        ("eigen.dirichlet", 5e-4, lambda: _dirichlet_check(grids.n, settings)),
        ("eigen.twisted", 5e-4, lambda: _twisted_check(grids.n, settings, quad_cfg)),
        ("saturation.plateau", 1.0, lambda: _plateau_check(sweep(), grids, settings)),
        ("saturation.branch_flip", 1e-6, lambda: _branch_flip_check(sweep())),
        ("saturation.alpha_c", 0.05, lambda: _alpha_c_check(grids, settings)),
        ("saturation.lower_bound", 0.0, lambda: _lower_bound_check(grids, settings)),
    ]
    checks = tuple(_measure(name, threshold, body) for name, threshold, body in plan)
    report = VerifyReport(checks=checks, quick=cfg.quick, n=grids.n)
    logger.info(
        f"verification finished: {len(checks) - len(report.failures)}/{len(checks)} checks passed"
    )
    return report
