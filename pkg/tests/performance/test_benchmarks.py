"""Runtime budgets for the numerical kernels."""

import statistics
import time

import numpy as np
import pytest

from nlpw.eigen import minimize_lambda_alpha
from nlpw.gtrig import Params, cos_pq, incomplete_F, pi_pq, sin_pq
from nlpw.hfun import H_grid, H_val, K_val
from nlpw.verify import ROUND_TRIP_GRID


class TestPerformanceBenchmarks:
    """Wall-clock budgets."""

    @pytest.mark.performance
    def test_special_function_grid(self, performance_thresholds):
        start = time.perf_counter()
        x = np.linspace(0.0, 0.999, 200)
        for p in ROUND_TRIP_GRID:
            for q in ROUND_TRIP_GRID:
                sin_pq(p, q, incomplete_F(p, q, x))
                t = np.linspace(-2 * pi_pq(p, q), 2 * pi_pq(p, q), 97)
                cos_pq(p, q, t)
        elapsed = time.perf_counter() - start

        print(f"\nSpecial-function grid: {elapsed:.2f}s")
        assert elapsed < performance_thresholds["special_functions_s"]

    @pytest.mark.performance
    def test_h_identity_grid(self, performance_thresholds, quad_config, fresh_memo_tables):
        start = time.perf_counter()
        H_grid(np.linspace(0.0, 1.0, 21), Params(2.0, 2.0, 2.0), quad_config)
        for p, q in ((2.0, 2.0), (3.0, 2.0), (3.0, 3.0)):
            for r in np.linspace(q / 2 + 1, q + q / p, 4):
                H_val(1.0, Params(p, q, r), quad_config)
        elapsed = time.perf_counter() - start

        print(f"\nH identity grid: {elapsed:.2f}s")
        assert elapsed < performance_thresholds["h_identities_s"]

    @pytest.mark.performance
    def test_k_grid(self, performance_thresholds, quad_config):
        start = time.perf_counter()
        for p, q in ((2.0, 2.0), (3.0, 2.0)):
            for m in np.linspace(0.0, 1.0, 41):
                K_val(m, p, q, quad_config)
        elapsed = time.perf_counter() - start

        print(f"\nK grid: {elapsed:.2f}s")
        assert elapsed < performance_thresholds["lemma_grids_s"]

    @pytest.mark.performance
    def test_cached_h_lookup(self, performance_thresholds, quad_config, fresh_memo_tables):
        params = Params(3.0, 2.0, 2.5)
        H_val(0.5, params, quad_config)

        times = []
        for _ in range(50):
            start = time.perf_counter()
            H_val(0.5, params, quad_config)
            times.append((time.perf_counter() - start) * 1000)

        avg_time = statistics.mean(times)
        print(f"\nCached H lookup: avg {avg_time:.4f}ms, max {max(times):.4f}ms")
        assert avg_time < performance_thresholds["cached_lookup_ms"]

    @pytest.mark.performance
    @pytest.mark.slow
    def test_solve_budget(self, performance_thresholds, saturating_params, solver_settings):
        start = time.perf_counter()
        result = minimize_lambda_alpha(saturating_params, 50.0, 1024, solver_settings)
        elapsed = time.perf_counter() - start

        print(f"\nSolve at n=1024: {elapsed:.2f}s ({result.iterations} iterations)")
        assert result.converged
        assert elapsed < performance_thresholds["solve_s"]
