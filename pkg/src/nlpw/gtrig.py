"""Generalized (p,q)-trigonometric functions.

``F_{p,q}(x) = int_0^x (1 - t^q)^(-1/p) dt`` on [0, 1], its inverse ``sin_{p,q}``
on [0, pi_{p,q}/2] extended to the real line by ``sin(pi - t) = sin(t)``,
oddness and 2*pi_{p,q} periodicity, and ``cos_{p,q} = d/dt sin_{p,q}``.

Everything is expressed through the regularized incomplete Beta function:
with ``a = 1/q`` and ``b = 1/p'``, ``F(x) = (pi_{p,q}/2) I_{x^q}(a, b)``.
"""

import logging
import math
from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np
from scipy import special

from .cache import memo_tables
from .errors import ParameterDomainError

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

# Absolute residual on the regularized Beta scale, i.e. about 1e-15 * pi_{p,q}/2 in t.
_ROOT_TOL = 5e-16
_MAX_NEWTON_ITER = 80
_CLAMP_TOL = 1e-14
_RANGE_TOL = 1e-12


def _check_exponent(name: str, value: float) -> None:
    if not math.isfinite(value) or value <= 1:
        raise ParameterDomainError(f"{name} must be a finite real > 1, got {value}")


@dataclass(frozen=True)
class Params:
    """Exponent triple (p, q, r) of the nonlocal quotient."""

    p: float
    q: float
    r: float

    def __post_init__(self):
        _check_exponent("p", self.p)
        _check_exponent("q", self.q)
        _check_exponent("r", self.r)

    @property
    def p_conj(self) -> float:
        return self.p / (self.p - 1.0)

    @property
    def theorem_r_range(self) -> Tuple[float, float]:
        return (self.q / 2 + 1, self.q + self.q / self.p)

    @property
    def lemma_r_range(self) -> Tuple[float, float]:
        """Range of r on which h is increasing in r."""
        return (0.5 + self.q / 2 + self.q / (2 * self.p), self.q + self.q / self.p)

    @property
    def in_theorem_range(self) -> bool:
        p, q, r = self.p, self.q, self.r
        lo, hi = self.theorem_r_range
        return (
            2 * p / (p + 2) - _RANGE_TOL <= q <= p + _RANGE_TOL
            and lo - _RANGE_TOL <= r <= hi + _RANGE_TOL
        )

    @property
    def in_lemma_range(self) -> bool:
        lo, hi = self.lemma_r_range
        return lo - _RANGE_TOL <= self.r <= hi + _RANGE_TOL

    def with_r(self, r: float) -> "Params":
        return Params(self.p, self.q, r)

    def as_dict(self) -> dict:
        return {"p": self.p, "q": self.q, "r": self.r}


def pi_pq(p: float, q: float) -> float:
    """pi_{p,q} = (2/q) B(1/p', 1/q), through log-Gamma."""
    _check_exponent("p", p)
    _check_exponent("q", q)
    table = memo_tables.table("pi_pq")
    return table.get_or_compute(
        (float(p), float(q)),
        lambda: 2.0 / q * math.exp(special.betaln(1.0 - 1.0 / p, 1.0 / q)),
    )


def _beta_args(p: float, q: float) -> Tuple[float, float]:
    return 1.0 / q, 1.0 - 1.0 / p


def incomplete_F(p: float, q: float, x: ArrayLike) -> ArrayLike:
    """F_{p,q}(x) for x in [0, 1] (scalar or array)."""
    _check_exponent("p", p)
    _check_exponent("q", q)
    xs = np.asarray(x, dtype=float)
    if np.any(~np.isfinite(xs)) or np.any(xs < 0) or np.any(xs > 1):
        raise ParameterDomainError("incomplete_F requires x in [0, 1]")
    a, b = _beta_args(p, q)
    value = 0.5 * pi_pq(p, q) * special.betainc(a, b, xs**q)
    return float(value) if np.ndim(value) == 0 else value


def _invert_regularized_beta(a: float, b: float, y: np.ndarray) -> np.ndarray:
    """Solve I_z(a, b) = y for z in [0, 1], elementwise.

    Start from ``betaincinv`` and polish with Newton steps kept inside a
    shrinking bracket; a step leaving the bracket is replaced by bisection
    (the density is singular at z = 0 when a < 1 and at z = 1 when b < 1).
    """
    y = np.clip(np.asarray(y, dtype=float), 0.0, 1.0)
    z = np.clip(special.betaincinv(a, b, y), 0.0, 1.0)
    lo = np.zeros_like(z)
    hi = np.ones_like(z)
    log_beta = special.betaln(a, b)

    active = (y > 0) & (y < 1)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        for _ in range(_MAX_NEWTON_ITER):
            resid = special.betainc(a, b, z) - y
            active &= np.abs(resid) > _ROOT_TOL
            if not active.any():
                break
            lo = np.where(active & (resid < 0), z, lo)
            hi = np.where(active & (resid > 0), z, hi)
            log_density = (a - 1) * np.log(z) + (b - 1) * np.log1p(-z) - log_beta
            step = z - resid * np.exp(-log_density)
            inside = np.isfinite(step) & (step > lo) & (step < hi)
            z = np.where(active, np.where(inside, step, 0.5 * (lo + hi)), z)
            active &= hi - lo > 4 * np.spacing(z)
    z = np.where(y <= 0, 0.0, z)
    z = np.where(y >= 1, 1.0, z)
    return z


def _fold(p: float, q: float, t: ArrayLike) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Reduce t to s in [0, pi/2] with sin(t) = sign_sin * sin(s) and
    cos(t) = sign_cos * cos(s)."""
    period = pi_pq(p, q)
    half = 0.5 * period
    ts = np.mod(np.asarray(t, dtype=float), 2 * period)
    sign_sin = np.where(ts > period, -1.0, 1.0)
    ts = np.where(ts > period, ts - period, ts)
    sign_cos = sign_sin * np.where(ts > half, -1.0, 1.0)
    s = np.where(ts > half, period - ts, ts)
    return np.clip(s, 0.0, half), sign_sin, sign_cos


def _quarter_values(p: float, q: float, s: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """sin^q and cos^p on the first quarter period, each to full precision."""
    half = 0.5 * pi_pq(p, q)
    a, b = _beta_args(p, q)
    sin_q = _invert_regularized_beta(a, b, s / half)
    # 1 - sin^q through the complementary inverse keeps precision near s = half
    cos_p = _invert_regularized_beta(b, a, (half - s) / half)
    near_top = half - s <= _CLAMP_TOL
    sin_q = np.where(near_top, 1.0, sin_q)
    cos_p = np.where(near_top, 0.0, cos_p)
    return sin_q, cos_p


def sin_pq(p: float, q: float, t: ArrayLike) -> ArrayLike:
    """sin_{p,q}(t) for any real t (scalar or array)."""
    _check_exponent("p", p)
    _check_exponent("q", q)
    if np.any(~np.isfinite(np.asarray(t, dtype=float))):
        raise ParameterDomainError("sin_pq requires finite t")
    s, sign_sin, _ = _fold(p, q, t)
    sin_q, _ = _quarter_values(p, q, s)
    value = sign_sin * sin_q ** (1.0 / q)
    return float(value) if np.ndim(value) == 0 else value


def cos_pq(p: float, q: float, t: ArrayLike) -> ArrayLike:
    """cos_{p,q}(t) = d/dt sin_{p,q}(t); on [0, pi/2] it is (1 - sin^q)^(1/p)."""
    _check_exponent("p", p)
    _check_exponent("q", q)
    if np.any(~np.isfinite(np.asarray(t, dtype=float))):
        raise ParameterDomainError("cos_pq requires finite t")
    s, _, sign_cos = _fold(p, q, t)
    _, cos_p = _quarter_values(p, q, s)
    value = sign_cos * cos_p ** (1.0 / p)
    return float(value) if np.ndim(value) == 0 else value


def dirichlet_eigenvalue(p: float, q: float, k: int = 1) -> float:
    """Quotient value of the k-th Dirichlet profile on (-1, 1).

    The profile consists of k rescaled half-bumps, so the value is
    ``k^p (q/p') (2p'/(p'+q))^(1-p/q) (pi_{p,q}/2)^p``.
    """
    if k < 1:
        raise ParameterDomainError(f"k must be a positive integer, got {k}")
    pc = p / (p - 1.0)
    return (
        k**p
        * (q / pc)
        * (2 * pc / (pc + q)) ** (1 - p / q)
        * (0.5 * pi_pq(p, q)) ** p
    )


def dirichlet_eigenpair(
    p: float, q: float, k: int, x: ArrayLike
) -> Tuple[float, ArrayLike]:
    """k-th Dirichlet eigenvalue and profile sin_{p,q}((k pi_{p,q}/2)(x+1))."""
    xs = np.asarray(x, dtype=float)
    if np.any(xs < -1) or np.any(xs > 1):
        raise ParameterDomainError("profile points must lie in [-1, 1]")
    values = sin_pq(p, q, 0.5 * k * pi_pq(p, q) * (xs + 1.0))
    return dirichlet_eigenvalue(p, q, k), values
