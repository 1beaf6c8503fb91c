"""Pytest configuration and shared fixtures for nlpw tests."""

import math
from typing import Dict, List, Tuple

import pytest

from nlpw.cache import memo_tables
from nlpw.config import QuadratureConfig, SolverSettings
from nlpw.gtrig import Params


# Environment fixtures
@pytest.fixture
def clean_environment(monkeypatch):
    """Clean environment variables for testing."""
    env_vars = [
        "NLPW_LOG_LEVEL",
        "NLPW_THREADS",
        "NLPW_SEED",
        "NLPW_CACHE_SIZE",
        "NLPW_QUAD_MAX_LEVELS",
        "NLPW_QUAD_ABS_TOL",
        "NLPW_QUAD_REL_TOL",
        "NLPW_DIVERGENCE_CAP",
        "NLPW_MAX_ITER",
        "NLPW_GRAD_TOL",
    ]

    for var in env_vars:
        monkeypatch.delenv(var, raising=False)


@pytest.fixture
def test_environment(monkeypatch):
    """Set test environment variables."""
    monkeypatch.setenv("NLPW_CACHE_SIZE", "32")
    monkeypatch.setenv("NLPW_LOG_LEVEL", "DEBUG")
    monkeypatch.setenv("NLPW_THREADS", "2")
    monkeypatch.setenv("NLPW_SEED", "7")


# Cache fixtures
@pytest.fixture
def fresh_memo_tables():
    """Empty the global memo tables around a test."""
    memo_tables.clear()
    yield memo_tables
    memo_tables.clear()


# Parameter fixtures
@pytest.fixture
def theorem_pairs() -> List[Tuple[float, float]]:
    """(p, q) pairs with 2p/(p+2) <= q <= p."""
    return [(2.0, 2.0), (3.0, 2.0), (3.0, 3.0), (2.5, 2.0), (4.0, 3.0), (1.5, 1.2)]


@pytest.fixture
def exponent_grid() -> List[float]:
    """Exponents in (1.2, 4] for special-function grids."""
    return [1.25, 1.5, 2.0, 2.5, 3.0, 4.0]


@pytest.fixture
def laplacian_params() -> Params:
    return Params(2.0, 2.0, 2.0)


@pytest.fixture
def saturating_params() -> Params:
    """(2, 2, 3): r = p + 1 with alpha_C = 3 pi^2 / 4."""
    return Params(2.0, 2.0, 3.0)


# Configuration fixtures
@pytest.fixture
def quad_config() -> QuadratureConfig:
    return QuadratureConfig(max_levels=12, abs_tol=1e-12, rel_tol=1e-11)


@pytest.fixture
def solver_settings() -> SolverSettings:
    return SolverSettings(max_iter=20000, grad_tol=1e-8, seed=0)


@pytest.fixture
def fast_solver_settings() -> SolverSettings:
    """Two deterministic starts; enough for the symmetric test problems."""
    return SolverSettings(max_iter=20000, grad_tol=1e-8, seed=0, starts=("even", "odd"))


# Reference values
@pytest.fixture
def reference_values() -> Dict[str, float]:
    pi_33 = 4 * math.pi / (3 * math.sqrt(3))
    return {
        "lambda_T_22": math.pi**2,
        "lambda_P_22": math.pi**2 / 4,
        "lambda_T_33": 2 * pi_33**3,
        "pi_33": pi_33,
        "alpha_c_223": 0.75 * math.pi**2,
    }


# Performance testing fixtures
@pytest.fixture
def performance_thresholds() -> Dict[str, float]:
    """Performance thresholds for testing (seconds)."""
    return {
        "special_functions_s": 5.0,
        "h_identities_s": 10.0,
        "h_estimate_s": 60.0,
        "lemma_grids_s": 30.0,
        "solve_s": 60.0,
        "cached_lookup_ms": 1.0,
    }
