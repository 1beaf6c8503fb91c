"""End-to-end checks of the eigenvalue solver and the alpha_C search."""

import math

import numpy as np
import pytest

from nlpw.config import SolverSettings
from nlpw.eigen import (
    el_residual,
    extrapolate_lambda,
    lambda_P_closed,
    minimize_lambda_alpha,
    representation_check,
)
from nlpw.gtrig import Params
from nlpw.saturation import (
    alpha_c_lower_bound,
    find_alpha_c,
    gap_threshold,
    lower_bound_holds,
    sweep_alpha,
)


class TestSolverAcceptance:
    """Known constants at n = 512."""

    @pytest.mark.integration
    @pytest.mark.slow
    def test_dirichlet_constant(self, laplacian_params, solver_settings):
        result = minimize_lambda_alpha(laplacian_params, 0.0, 512, solver_settings)

        assert result.converged
        assert result.lambda_value == pytest.approx(lambda_P_closed(2, 2), rel=5e-4)
        assert result.diagnostics.zero_count == 0
        assert result.diagnostics.even_defect <= 1e-6

    @pytest.mark.integration
    @pytest.mark.slow
    def test_twisted_constant_above_alpha_c(self, saturating_params, solver_settings, quad_config):
        result = minimize_lambda_alpha(saturating_params, 50.0, 512, solver_settings)

        assert result.lambda_value == pytest.approx(math.pi**2, rel=5e-4)
        assert abs(result.gamma) <= 1e-6
        assert result.diagnostics.zero_count == 1
        assert abs(result.diagnostics.zero_location) <= 0.01
        assert el_residual(result.minimizer, saturating_params, 50.0) <= 1e-4

        check = representation_check(result, saturating_params, quad_config)
        assert check.m == pytest.approx(1.0, abs=1e-6)
        assert check.lambda_gap <= 5e-4

    @pytest.mark.integration
    @pytest.mark.slow
    def test_extrapolation_improves_accuracy(self, laplacian_params, solver_settings):
        target = lambda_P_closed(2, 2)
        plain = minimize_lambda_alpha(laplacian_params, 0.0, 128, solver_settings).lambda_value
        value, error = extrapolate_lambda(laplacian_params, 0.0, 128, solver_settings)

        assert abs(value - target) < abs(plain - target)
        assert error > 0


class TestSaturation:
    """lambda_alpha sweeps and alpha_C at (2, 2, 3)."""

    @pytest.mark.integration
    @pytest.mark.slow
    def test_sweep_saturates(self, saturating_params, solver_settings):
        alphas = np.linspace(0.0, 12.0, 7)
        report = sweep_alpha(saturating_params, alphas, 256, solver_settings)

        assert report.monotone_ok
        assert report.lipschitz_ok
        assert all(math.isfinite(v) for v in report.lambda_samples)
        assert report.lambda_samples[0] == pytest.approx(math.pi**2 / 4, rel=1e-3)
        plateau = report.lambda_samples[alphas >= 8.0]
        assert np.ptp(plateau) <= 1e-6 * math.pi**2

    @pytest.mark.integration
    @pytest.mark.slow
    def test_alpha_c_matches_closed_form(self, saturating_params, solver_settings, reference_values):
        alpha_c, (lo, hi) = find_alpha_c(saturating_params, 512, 1e-2, solver_settings)

        assert hi - lo <= 1e-2
        assert alpha_c == pytest.approx(reference_values["alpha_c_223"], abs=0.05)

    @pytest.mark.integration
    @pytest.mark.slow
    def test_gap_open_below_lower_bound(self, saturating_params, solver_settings):
        delta = gap_threshold(saturating_params, 256, solver_settings)

        assert 0 < delta < 2e-2
        assert lower_bound_holds(saturating_params, 256, solver_settings, tol=1.0, delta=delta)

    @pytest.mark.integration
    @pytest.mark.slow
    def test_cold_and_warm_sweeps_agree(self, saturating_params):
        settings = SolverSettings(seed=3)
        alphas = [0.0, 5.0, 10.0]

        warm = sweep_alpha(saturating_params, alphas, 128, settings)
        cold = sweep_alpha(saturating_params, alphas, 128, settings, warm=False)

        assert np.allclose(warm.lambda_samples, cold.lambda_samples, rtol=1e-6)

    @pytest.mark.integration
    @pytest.mark.slow
    def test_negative_alpha_gives_negative_lambda(self, saturating_params, solver_settings):
        result = minimize_lambda_alpha(saturating_params, -10.0, 256, solver_settings)

        assert result.converged
        assert result.lambda_value < 0

    @pytest.mark.integration
    @pytest.mark.slow
    def test_branch_flips_from_even_to_odd(self, saturating_params, solver_settings):
        report = sweep_alpha(saturating_params, [0.0, 10.0], 256, solver_settings)
        below, above = report.samples

        assert below.converged and above.converged
        assert below.zero_count == 0
        assert below.even_defect <= 1e-6
        assert above.zero_count == 1
        assert abs(above.gamma) <= 1e-6
        assert above.odd_defect <= 1e-6


LOWER_BOUND_TRIPLES = [
    (2.0, 2.0, 2.5),
    (3.0, 2.0, 2.5),
    (2.5, 2.0, 2.5),
    (1.5, 1.2, 1.8),
    (3.0, 3.0, 4.0),
    (4.0, 3.0, 3.5),
]


class TestTheoremRange:
    """alpha_C away from p = q = 2."""

    @pytest.mark.integration
    @pytest.mark.slow
    @pytest.mark.parametrize("p,q,r", LOWER_BOUND_TRIPLES)
    def test_gap_open_below_lower_bound(self, p, q, r, solver_settings):
        params = Params(p, q, r)
        tol = 0.1 * alpha_c_lower_bound(params)

        assert lower_bound_holds(params, 128, solver_settings, tol=tol)

    @pytest.mark.integration
    @pytest.mark.slow
    @pytest.mark.parametrize("p,q,r", [(3.0, 2.0, 2.5), (2.5, 2.0, 2.5), (1.5, 1.2, 1.8)])
    def test_find_alpha_c(self, p, q, r, fast_solver_settings):
        params = Params(p, q, r)
        bound = alpha_c_lower_bound(params)

        alpha_c, (lo, hi) = find_alpha_c(params, 128, 0.5, fast_solver_settings)

        assert lo <= alpha_c <= hi
        assert hi - lo <= 0.5
        assert alpha_c > 0
        assert alpha_c + 0.5 >= 0.9 * bound
