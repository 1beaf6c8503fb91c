"""Unit tests for the verification suite plumbing and its cheap checks."""

import math

import numpy as np
import pytest

from nlpw import verify
from nlpw.config import RunConfig
from nlpw.gtrig import Params
from nlpw.saturation import SaturationReport, SweepSample
from nlpw.verify import CheckResult, VerifyReport, run_verify_suite

EXPECTED_CHECKS = [
    "gtrig.pi_22",
    "gtrig.round_trip",
    "gtrig.pythagorean",
    "quad.beta_oracle",
    "hfun.H_at_one",
    "hfun.H_222",
    "hfun.estimate",
    "hfun.estimate_strict",
    "hfun.h_monotone_in_r",
    "hfun.K_monotone_in_m",
    "hfun.K_dip",
    "hfun.proof_signs",
    "eigen.gradient",
    "eigen.representation_closed_form",
    "eigen.dirichlet",
    "eigen.twisted",
    "saturation.plateau",
    "saturation.branch_flip",
    "saturation.alpha_c",
    "saturation.lower_bound",
]


class TestMeasure:
    """_measure bookkeeping."""

    def test_passing_check(self):
        result = verify._measure("x", 1e-3, lambda: (1e-4, "fine"))

        assert result.passed
        assert result.residual == 1e-4
        assert result.detail == "fine"
        assert result.seconds >= 0

    def test_failing_check(self):
        assert not verify._measure("x", 1e-3, lambda: (1.0, "")).passed

    def test_nan_residual_fails(self):
        assert not verify._measure("x", 1.0, lambda: (math.nan, "")).passed

    def test_exception_becomes_failure(self):
        def body():
            raise ZeroDivisionError("boom")

        result = verify._measure("x", 1.0, body)

        assert not result.passed
        assert math.isinf(result.residual)
        assert result.detail == "ZeroDivisionError: boom"


class TestReport:
    """VerifyReport accessors."""

    def test_passed_and_failures(self):
        report = VerifyReport(
            checks=(CheckResult("a", True, 0.0, 1.0), CheckResult("b", False, 2.0, 1.0))
        )

        assert not report.passed
        assert [c.name for c in report.failures] == ["b"]
        assert report.get("a").passed
        with pytest.raises(KeyError):
            report.get("c")

    def test_empty_report_passes(self):
        assert VerifyReport().passed


class TestGrids:
    """Quick and full grid sizes."""

    def test_quick_caps_mesh(self):
        grids = verify._grids(512, quick=True)

        assert grids.n == verify.QUICK_MESH
        assert len(grids.pairs) == 2
        assert grids.sweep_alphas == (0.0, 4.0, 10.0)
        assert len(grids.bound_triples) == 2

    def test_full_keeps_mesh(self):
        grids = verify._grids(256, quick=False)

        assert grids.n == 256
        assert grids.pairs == verify.THEOREM_PAIRS
        assert len(grids.m_values) == 21
        assert grids.bound_triples == verify.LOWER_BOUND_TRIPLES


class TestCheapChecks:
    """Checks that need neither H grids nor the solver."""

    def test_special_functions(self):
        assert verify._pi_22()[0] <= 1e-12
        assert verify._round_trip()[0] <= 1e-10
        assert verify._pythagorean()[0] <= 1e-10

    def test_beta_oracle(self, quad_config):
        assert verify._beta_oracle(quad_config)()[0] <= 1e-9

    def test_representation_closed_form(self, quad_config):
        assert verify._representation_closed_form(quad_config)[0] <= 1e-9

    def test_lemma_signs(self):
        grids = verify._grids(128, quick=True)

        assert verify._lemma_h_monotone(grids)[0] <= 1e-12
        assert verify._proof_signs(grids)[0] <= 0.0

    def test_gradient_check(self):
        grids = verify._grids(128, quick=True)
        assert verify._gradient_check(grids, seed=0)[0] <= 1e-6

    def test_k_dip_is_reproduced(self, quad_config):
        residual, detail = verify._k_dip(quad_config)

        assert residual <= -0.01
        assert "K(0)=5" in detail


def _sample(alpha, zero_count, even_defect, odd_defect, r_average):
    return SweepSample(
        alpha=alpha,
        lambda_value=1.0,
        converged=True,
        even_defect=even_defect,
        odd_defect=odd_defect,
        r_average=r_average,
        zero_count=zero_count,
    )


def _sweep_report(*samples):
    return SaturationReport(
        params=Params(2, 2, 3),
        alpha_grid=np.array([s.alpha for s in samples]),
        lambda_samples=np.ones(len(samples)),
        lower_bound=0.75 * math.pi**2,
        monotone_ok=True,
        lipschitz_ok=True,
        lambda_T=math.pi**2,
        n=128,
        samples=samples,
    )


class TestBranchFlip:
    """Symmetry diagnostics across alpha_C."""

    def test_even_then_odd(self):
        report = _sweep_report(
            _sample(0.0, 0, 1e-13, 0.9, 1.1),
            _sample(4.0, 0, 1e-13, 0.8, 0.7),
            _sample(10.0, 1, 0.9, 0.0, 1e-17),
        )

        residual, detail = verify._branch_flip_check(report)

        assert residual <= 1e-6
        assert "10:1 zeros" in detail

    def test_even_minimizer_on_plateau_fails(self):
        report = _sweep_report(
            _sample(0.0, 0, 1e-13, 0.9, 1.1),
            _sample(10.0, 0, 1e-13, 0.9, 0.6),
        )

        assert verify._branch_flip_check(report)[0] == math.inf

    def test_failed_sample_fails(self):
        failed = SweepSample.failed(10.0, RuntimeError("no convergence"))
        report = _sweep_report(_sample(0.0, 0, 1e-13, 0.9, 1.1), failed)

        residual, detail = verify._branch_flip_check(report)

        assert residual == math.inf
        assert "no convergence" in detail


class TestRunSuite:
    """run_verify_suite with the expensive checks stubbed out."""

    def test_runs_every_named_check(self, mocker):
        for name in ("_h_identities", "_h_222", "_lemma_k_monotone"):
            mocker.patch.object(verify, name, return_value=lambda: (0.0, "stub"))
        for name in (
            "_dirichlet_check",
            "_twisted_check",
            "_plateau_check",
            "_branch_flip_check",
            "_alpha_c_check",
            "_lower_bound_check",
        ):
            mocker.patch.object(verify, name, return_value=(0.0, "stub"))
        mocker.patch.object(verify, "_k_dip", return_value=(-1.0, "stub"))
        sweep = mocker.patch.object(verify, "sweep_alpha", return_value=None)
        mocker.patch.object(verify, "_h_estimate", return_value=lambda: (-1.0, "stub"))

        report = run_verify_suite(RunConfig(quick=True, n=128))

        assert [check.name for check in report.checks] == EXPECTED_CHECKS
        assert report.quick
        assert report.n == 128
        assert report.passed
        sweep.assert_called_once()
