"""Quadrature on [0, 1] for integrands with power-type endpoint singularities.

``integrate_unit`` uses the tanh-sinh (double-exponential) substitution

    y = (1 + tanh(pi/2 sinh t)) / 2,   dy = pi cosh t * y (1 - y) dt

followed by trapezoid refinement: level 0 samples t = -6, ..., 6 with step 1,
every further level halves the step and only evaluates the new midpoints.
Integrands are called with numpy arrays and must be vectorized.
"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional, Tuple

import numpy as np
from scipy import special

from .config import QuadratureConfig, config_manager
from .errors import ParameterDomainError, QuadratureInputError

logger = logging.getLogger(__name__)

T_MAX = 6.0
_GROWTH_FACTOR = 1.1
_GROWTH_LEVELS = 3
_MIN_LEVELS = 2

__all__ = [
    "QuadratureConfig",
    "QuadResult",
    "integrate_unit",
    "gauss_legendre",
    "gauss_legendre_rule",
]


@dataclass(frozen=True)
class QuadResult:
    """Outcome of ``integrate_unit``.

    ``converged`` is False when the level budget ran out before the error
    estimate met the tolerance; ``divergent`` is the divergence verdict.
    """

    value: float
    error_estimate: float
    divergent: bool
    converged: bool = True
    levels: int = 0
    evaluations: int = 0


def _abscissae(t: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Points y, complements 1 - y and weights of the DE map at t."""
    u = 0.5 * math.pi * np.sinh(t)
    y = special.expit(2.0 * u)
    ybar = special.expit(-2.0 * u)
    weight = math.pi * np.cosh(t) * y * ybar
    return y, ybar, weight


def _level_nodes(level: int) -> np.ndarray:
    if level == 0:
        return np.arange(-T_MAX, T_MAX + 0.5, 1.0)
    h = 2.0**-level
    count = int(round(T_MAX / h))
    return (2 * np.arange(-count // 2, count // 2) + 1) * h


def _evaluate(
    f: Callable, t: np.ndarray, complement: bool
) -> Tuple[np.ndarray, np.ndarray]:
    """Weighted DE terms at t; overflow in the outermost unit of the t-range is +inf."""
    y, ybar, weight = _abscissae(t)
    if complement:
        keep = np.ones_like(y, dtype=bool)
        with np.errstate(over="ignore", divide="ignore"):
            values = f(y, ybar)
    else:
        # abscissae that round onto an endpoint carry no usable information
        keep = (y > 0.0) & (y < 1.0)
        with np.errstate(over="ignore", divide="ignore"):
            values = f(y[keep])
    values = np.array(
        np.broadcast_to(np.asarray(values, dtype=float), (int(keep.sum()),))
    )
    bad = ~np.isfinite(values)
    if bad.any():
        edge = np.abs(t[keep]) > T_MAX - 1.0
        if np.any(bad & ~edge):
            where = y[keep][bad & ~edge][0]
            raise QuadratureInputError(f"integrand is not finite at interior point y={where!r}")
        values[bad] = math.inf
    terms = np.zeros_like(y)
    terms[keep] = values * weight[keep]
    return terms, keep


def _tail_diverges(terms: np.ndarray, keep: np.ndarray, h: float, tol: float) -> bool:
    """True when the outermost evaluated DE terms do not decay on either side."""
    idx = np.flatnonzero(keep)
    if idx.size < 4:
        return False
    for outer, inner in ((idx[0], idx[1]), (idx[-1], idx[-2])):
        if abs(terms[outer]) >= abs(terms[inner]) and abs(terms[outer]) * h > tol:
            return True
    return False


def integrate_unit(
    f: Callable,
    cfg: Optional[QuadratureConfig] = None,
    complement: bool = False,
) -> QuadResult:
    """Integrate f over (0, 1) by double-exponential quadrature.

    With ``complement=True`` the integrand is called as ``f(y, 1 - y)`` where the
    complement is exact to full relative precision even when y rounds to 1;
    otherwise abscissae that round to 1 are skipped.
    """
    cfg = cfg or config_manager.get_quadrature_config()

    t0 = _level_nodes(0)
    terms, keep = _evaluate(f, t0, complement)
    evaluations = int(keep.sum())
    total = float(terms.sum())
    value = total
    history = [value]

    if not math.isfinite(value):
        logger.debug("DE boundary terms overflow at level 0")
        return QuadResult(value, math.inf, True, False, 0, evaluations)

    tol0 = max(cfg.abs_tol, cfg.rel_tol * abs(value))
    if _tail_diverges(terms, keep, 1.0, tol0):
        logger.debug(f"DE boundary terms do not decay (value {value:.6g})")
        return QuadResult(value, math.inf, True, False, 0, evaluations)

    # truncation of the t-range, counted only where the outermost node was evaluated
    truncation = max(
        abs(terms[0]) if keep[0] else 0.0, abs(terms[-1]) if keep[-1] else 0.0
    )

    error = math.inf
    growth_streak = 0
    for level in range(1, cfg.max_levels + 1):
        h = 2.0**-level
        new_terms, new_keep = _evaluate(f, _level_nodes(level), complement)
        evaluations += int(new_keep.sum())
        if not np.all(np.isfinite(new_terms)):
            logger.debug(f"DE boundary terms overflow at level {level}")
            return QuadResult(h * total, math.inf, True, False, level, evaluations)
        total += float(new_terms.sum())
        value = h * total
        error = max(abs(value - history[-1]), truncation)

        if abs(value) > _GROWTH_FACTOR * abs(history[-1]) and abs(value) > cfg.divergence_cap:
            growth_streak += 1
        else:
            growth_streak = 0
        history.append(value)

        if growth_streak >= _GROWTH_LEVELS:
            logger.debug(f"DE levels keep growing past the cap (value {value:.6g})")
            return QuadResult(value, error, True, False, level, evaluations)

        if level >= _MIN_LEVELS and error <= max(cfg.abs_tol, cfg.rel_tol * abs(value)):
            return QuadResult(value, error, False, True, level, evaluations)

    logger.warning(
        f"DE quadrature did not reach tolerance after {cfg.max_levels} levels "
        f"(value {value:.6g}, error {error:.3g})"
    )
    return QuadResult(value, error, False, False, cfg.max_levels, evaluations)


@lru_cache(maxsize=None)
def _leggauss(nodes: int) -> Tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(nodes)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def gauss_legendre_rule(nodes: int) -> Tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights mapped to [0, 1]."""
    if not 2 <= nodes <= 16:
        raise ParameterDomainError(f"nodes must lie in 2..16, got {nodes}")
    x, w = _leggauss(nodes)
    return 0.5 * (x + 1.0), 0.5 * w


def gauss_legendre(f: Callable, a: float, b: float, nodes: int) -> float:
    """Fixed-order Gauss-Legendre value of the integral of f over [a, b]."""
    if not a < b:
        raise ParameterDomainError(f"need a < b, got a={a}, b={b}")
    xi, wi = gauss_legendre_rule(nodes)
    x = a + (b - a) * xi
    values = np.broadcast_to(np.asarray(f(x), dtype=float), x.shape)
    return float((b - a) * np.dot(wi, values))
