"""The auxiliary function H(m, p, q, r) and its ingredients.

    R(m, q, r) = (1 - m^q) / (1 + m^(r-1))
    h(m, y)    = A1^(-1/p) + m A2^(-1/p)
    A1         = 1 - R (1 - y^(r-1)) - y^q
    A2         = 1 - R (1 + m^(r-1) y^(r-1)) - m^q y^q
    H(m)       = int_0^1 h(m, y) dy

Both brackets vanish at y = 1. They are evaluated in the rearranged forms

    A1 = (1 - y^q) - R (1 - y^(r-1))
    A2 = R m^(r-1) (1 - y^(r-1)) + m^q (1 - y^q)

with every ``1 - y^s`` computed from the exact complement 1 - y supplied by
the quadrature engine.
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Union

import numpy as np
from scipy import special

from .batch import BatchItem, BatchProcessor
from .cache import memo_tables
from .config import QuadratureConfig, config_manager
from .errors import DivergentIntegralError, ParameterDomainError, PoleError
from .gtrig import Params, pi_pq
from .quad import integrate_unit

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

SNAP_TOL = 1e-12
_EXP_TOL = 1e-12


@dataclass(frozen=True)
class HEval:
    """Value of H at one (m, params) with its quadrature diagnostics."""

    m: float
    params: Params
    value: float
    error_estimate: float
    divergent: bool
    converged: bool = True

    def as_row(self) -> dict:
        return {
            "m": self.m,
            "p": self.params.p,
            "q": self.params.q,
            "r": self.params.r,
            "H": self.value,
            "error": self.error_estimate,
            "divergent": self.divergent,
        }


def _check_unit(name: str, value: float) -> None:
    if not (0.0 <= value <= 1.0):
        raise ParameterDomainError(f"{name} must lie in [0, 1], got {value}")


def _one_minus_pow(y: np.ndarray, ybar: np.ndarray, s: float) -> np.ndarray:
    """1 - y^s to full relative precision, given the complement ybar = 1 - y."""
    with np.errstate(divide="ignore"):
        log_y = np.where(ybar < 0.5, np.log1p(-np.minimum(ybar, 0.5)), np.log(y))
    return -np.expm1(s * log_y)


def R_val(m: float, q: float, r: float) -> float:
    """R(m, q, r) = (1 - m^q) / (1 + m^(r-1))."""
    _check_unit("m", m)
    return (1.0 - m**q) / (1.0 + m ** (r - 1.0))


def _brackets(m: float, params: Params, y: np.ndarray, ybar: np.ndarray):
    q, r = params.q, params.r
    R = R_val(m, q, r)
    c_r = _one_minus_pow(y, ybar, r - 1.0)
    c_q = _one_minus_pow(y, ybar, q)
    a1 = c_q - R * c_r
    a2 = R * m ** (r - 1.0) * c_r + m**q * c_q
    return a1, a2


def _h_terms(m: float, params: Params, y: np.ndarray, ybar: np.ndarray) -> np.ndarray:
    """Integrand h on arrays of (y, 1 - y); raises PoleError on a bad bracket."""
    p, q, r = params.p, params.q, params.r
    if m == 0.0:
        # A1 = y^(r-1) (1 - y^(q-r+1)), kept factored so y^(r-1) cannot underflow
        tail = _one_minus_pow(y, ybar, q - r + 1.0)
        if np.any(tail <= 0):
            raise PoleError(f"bracket y^(r-1) - y^q is not positive for r={r}, q={q}")
        with np.errstate(divide="ignore"):
            return y ** (-(r - 1.0) / p) * tail ** (-1.0 / p)

    a1, a2 = _brackets(m, params, y, ybar)
    if np.any(a1 <= 0) or np.any(a2 <= 0):
        bad = y[(a1 <= 0) | (a2 <= 0)][0]
        raise PoleError(f"nonpositive bracket at m={m}, y={bad}, params={params}")
    return a1 ** (-1.0 / p) + m * a2 ** (-1.0 / p)


def h_val(m: float, params: Params, y: ArrayLike) -> ArrayLike:
    """Integrand h(m, p, q, r, y) of H for y in [0, 1)."""
    _check_unit("m", m)
    ys = np.asarray(y, dtype=float)
    if np.any(ys < 0) or np.any(ys >= 1):
        raise ParameterDomainError("h_val requires y in [0, 1)")
    if m == 0.0 and np.any(ys == 0):
        raise ParameterDomainError("h is undefined at m = y = 0")
    ys_1d = np.atleast_1d(ys)
    value = _h_terms(float(m), params, ys_1d, 1.0 - ys_1d)
    return float(value[0]) if ys.ndim == 0 else value.reshape(ys.shape)


def _divergent_at_zero(params: Params) -> bool:
    """At m = 0 the integrand behaves like y^(-(r-1)/p) at 0 and is zero-bracketed
    identically once r - 1 >= q."""
    p, q, r = params.p, params.q, params.r
    return r - 1.0 >= q - _EXP_TOL or r >= p + 1.0 - _EXP_TOL


def H_val(
    m: float, params: Params, cfg: Optional[QuadratureConfig] = None
) -> HEval:
    """H(m, p, q, r) by double-exponential quadrature of h over [0, 1]."""
    _check_unit("m", m)
    cfg = cfg or config_manager.get_quadrature_config()
    m = float(m)

    if 1.0 - m <= SNAP_TOL:
        return HEval(m, params, pi_pq(params.p, params.q), 0.0, False)

    if m == 0.0 and _divergent_at_zero(params):
        logger.warning(f"H(0) diverges for {params}")
        return HEval(m, params, math.inf, math.inf, True, False)

    def compute() -> HEval:
        result = integrate_unit(
            lambda y, ybar: _h_terms(m, params, y, ybar), cfg, complement=True
        )
        if result.divergent:
            logger.warning(f"H({m}) diverges for {params}")
            return HEval(m, params, math.inf, math.inf, True, False)
        return HEval(
            m, params, result.value, result.error_estimate, False, result.converged
        )

    table = memo_tables.table("H")
    return table.get_or_compute((m, params.p, params.q, params.r, cfg), compute)


def finite_H(m: float, params: Params, cfg: Optional[QuadratureConfig] = None) -> float:
    """H(m) as a float; raises DivergentIntegralError on divergence."""
    result = H_val(m, params, cfg)
    if result.divergent:
        raise DivergentIntegralError(f"H({m}) diverges for {params}")
    return result.value


def H_grid(
    ms: Sequence[float],
    params: Params,
    cfg: Optional[QuadratureConfig] = None,
    processor: Optional[BatchProcessor] = None,
) -> List[HEval]:
    """H over an m-grid, evaluated concurrently; results follow ``ms`` order."""
    processor = processor or BatchProcessor()
    items = [BatchItem(id=f"m={m!r}", args=(float(m), params, cfg)) for m in ms]
    results = processor.map(H_val, items)
    for result in results:
        if not result.success:
            raise result.exception
    return [result.data for result in results]


def K_integrand(m: float, p: float, q: float, y: np.ndarray, ybar: np.ndarray) -> np.ndarray:
    """A^(-1/p) + m B^(-1/p) with A = (1-w)(w+mu), B = mu(1-w)(1+mu w),
    w = y^(q/2), mu = m^(q/2)."""
    one_minus_w = _one_minus_pow(y, ybar, q / 2)
    if m == 0.0:
        # A = w (1 - w), kept factored so w = y^(q/2) cannot underflow
        with np.errstate(divide="ignore"):
            return y ** (-q / (2 * p)) * one_minus_w ** (-1.0 / p)
    mu = m ** (q / 2)
    w = y ** (q / 2)
    with np.errstate(divide="ignore"):
        value = (one_minus_w * (w + mu)) ** (-1.0 / p)
    return value + m * (mu * one_minus_w * (1.0 + mu * w)) ** (-1.0 / p)


def K_val(m: float, p: float, q: float, cfg: Optional[QuadratureConfig] = None) -> float:
    """K(m) = H(m, p, q, q/2 + 1)."""
    _check_unit("m", m)
    if 1.0 - m <= SNAP_TOL:
        return pi_pq(p, q)
    params = Params(p, q, q / 2 + 1)
    if m == 0.0 and _divergent_at_zero(params):
        raise DivergentIntegralError(f"K(0) diverges for p={p}, q={q}")
    result = integrate_unit(
        lambda y, ybar: K_integrand(float(m), p, q, y, ybar),
        cfg or config_manager.get_quadrature_config(),
        complement=True,
    )
    if result.divergent:
        raise DivergentIntegralError(f"K({m}) diverges for p={p}, q={q}")
    return result.value


def K_at_zero(p: float, q: float) -> float:
    """K(0) = (2/q) B(2/q - 1/p, 1 - 1/p); equal to pi_{p,q} only when q = p."""
    if not 1.0 < q < 2.0 * p:
        raise ParameterDomainError(f"K(0) is finite only for 1 < q < 2p, got p={p}, q={q}")
    return 2.0 / q * float(special.beta(2.0 / q - 1.0 / p, 1.0 - 1.0 / p))


def k_dips_at_zero(p: float, q: float) -> bool:
    """True when K decreases right after m = 0, i.e. q <= 2p/(p+1).

    Near m = 0 the first term of K drops like m^(q/2) (with a logarithm at
    equality) while the second grows like m^(1 - q/(2p)); the drop wins exactly
    in this strip. There K(m) < K(0) for small m, so H >= K(0) fails and only
    H(m, r) >= K(m) >= min K remains.
    """
    return q <= 2.0 * p / (p + 1.0) + 1e-12


def K_derivative(
    m: float, p: float, q: float, cfg: Optional[QuadratureConfig] = None
) -> float:
    """K'(m) for m in (0, 1), differentiating under the integral sign."""
    if not 0.0 < m < 1.0:
        raise ParameterDomainError(f"K_derivative requires m in (0, 1), got {m}")
    mu = m ** (q / 2)
    k = q / (2 * p)

    def integrand(y, ybar):
        w = y ** (q / 2)
        one_minus_w = _one_minus_pow(y, ybar, q / 2)
        first = -k * m ** (q / 2 - 1) * one_minus_w ** (-1 / p) * (w + mu) ** (-1 / p - 1)
        second = (mu * one_minus_w * (1 + mu * w)) ** (-1 / p)
        third = (
            -k
            * (mu * one_minus_w) ** (-1 / p)
            * (1 + mu * w) ** (-1 / p - 1)
            * (1 + 2 * mu * w)
        )
        return first + second + third

    result = integrate_unit(
        integrand, cfg or config_manager.get_quadrature_config(), complement=True
    )
    if result.divergent:
        raise DivergentIntegralError(f"K'({m}) diverges for p={p}, q={q}")
    return result.value


def h_r_derivative(m: float, params: Params, y: ArrayLike) -> ArrayLike:
    """Closed-form partial derivative of h with respect to r, m and y in (0, 1)."""
    if not 0.0 < m < 1.0:
        raise ParameterDomainError(f"h_r_derivative requires m in (0, 1), got {m}")
    ys = np.atleast_1d(np.asarray(y, dtype=float))
    if np.any(ys <= 0) or np.any(ys >= 1):
        raise ParameterDomainError("h_r_derivative requires y in (0, 1)")
    p, q, r = params.p, params.q, params.r
    a1, a2 = _brackets(m, params, ys, 1.0 - ys)
    if np.any(a1 <= 0) or np.any(a2 <= 0):
        raise PoleError(f"nonpositive bracket at m={m}, params={params}")

    log_m, log_y = math.log(m), np.log(ys)
    mr, yr = m ** (r - 1), ys ** (r - 1)
    n1 = (1 - yr) * mr * log_m + yr * (1 + mr) * log_y
    n2 = (1 + mr * yr) * log_m - (1 + mr) * yr * (log_m + log_y)
    scale = -(1.0 / p) * (1 - m**q) / (1 + mr) ** 2
    value = scale * (n1 * a1 ** (-(p + 1) / p) + m**r * n2 * a2 ** (-(p + 1) / p))
    return float(value[0]) if np.ndim(y) == 0 else value


def proof_aux(name: str, m: float, params: Params, y: Optional[float] = None) -> float:
    """Auxiliary functions g, f and e whose positivity yields the r-monotonicity of h.

    m = 1 and y = 1 are accepted so that the vanishing boundary values can be
    checked; the sign claims concern m, y in (0, 1).
    """
    p, q, r = params.p, params.q, params.r
    if not 0.0 < m <= 1.0:
        raise ParameterDomainError(f"proof_aux requires m in (0, 1], got {m}")
    log_m = math.log(m)
    mr = m ** (r - 1)
    c = r - q * (p + 1) / p

    if name == "g":
        if y is None or not 0.0 < y <= 1.0:
            raise ParameterDomainError(f"g requires y in (0, 1], got {y}")
        log_y = math.log(y)
        yr = y ** (r - 1)
        first = -(1 - yr) * mr * log_m - yr * (1 + mr) * log_y
        second = ((yr - 1) * log_m + (1 + mr) * yr * log_y) * m**c
        return first + second
    if name == "f":
        return -(mr + m**c) * log_m - (1 + mr) * (m**c - 1) / (r - 1)
    if name == "e":
        return m ** (q * (p + 1) / p - 1) * (-log_m + 1 / (r - 1)) - log_m - 1 / (r - 1)
    raise ParameterDomainError(f"unknown auxiliary function {name!r}")
