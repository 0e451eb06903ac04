"""Data-model tests: sufficient statistics, MLE, transforms."""

import math

import numpy as np
import pytest

from pcbff import (
    DataMatrix,
    DegenerateDesignError,
    SingularDesignError,
    fisher_z,
    lambda_from_omega,
    omega_from_rho,
    partial_corr_mle,
    r_from_t,
    rho_from_lambda,
    rho_from_omega,
    sufficient_stats,
    t_statistic,
)


def residual_corr_oracle(y, x, target):
    """Sample correlation between the residuals of y and of the target
    predictor after regressing each on the conditioning columns."""
    n = len(y)
    rest = [k for k in range(x.shape[1]) if k != target]
    z = np.column_stack([np.ones(n)] + [x[:, k] for k in rest])
    py = y - z @ np.linalg.lstsq(z, y, rcond=None)[0]
    px = x[:, target] - z @ np.linalg.lstsq(z, x[:, target], rcond=None)[0]
    return float(py @ px / math.sqrt((py @ py) * (px @ px)))


def random_dataset(rng, n=None, p=None):
    n = n or rng.integers(10, 101)
    p = p or rng.integers(1, 6)
    shared = rng.standard_normal(n)
    x = rng.standard_normal((n, p)) + 0.5 * shared[:, None]
    beta = rng.normal(size=p)
    y = 0.3 + x @ beta + rng.standard_normal(n)
    return DataMatrix(y=y, x=x, target_column=int(rng.integers(0, p)))


class TestSufficientStats:
    def test_perfect_fit(self):
        rng = np.random.default_rng(0)
        x = rng.standard_normal((20, 1))
        d = DataMatrix(y=x[:, 0].copy(), x=x, target_column=0)
        s = sufficient_stats(d)
        assert s.sigma2_hat == pytest.approx(0.0, abs=1e-20)
        assert s.gamma1_hat == pytest.approx(1.0, rel=1e-10)

    def test_orthogonal_predictor(self):
        # y orthogonal to the centered predictor gives a zero coefficient
        x1 = np.array([1.0, -1.0, 1.0, -1.0, 1.0, -1.0])
        y = np.array([1.0, 1.0, -2.0, -2.0, 1.0, 1.0])
        d = DataMatrix(y=y - y.mean(), x=x1[:, None], target_column=0)
        s = sufficient_stats(d)
        assert s.gamma1_hat == pytest.approx(0.0, abs=1e-12)

    def test_covariance_blocks_match_direct_sum(self):
        rng = np.random.default_rng(5)
        d = random_dataset(rng, n=30, p=3)
        s = sufficient_stats(d)
        z = np.column_stack([d.y, d.x])
        zbar = z.mean(axis=0)
        direct = sum(np.outer(zi - zbar, zi - zbar) for zi in z) / (len(z) - 1)
        assert s.sigma11 == pytest.approx(direct[0, 0], abs=1e-12)
        np.testing.assert_allclose(s.sigma12, direct[0, 1:], atol=1e-12)
        np.testing.assert_allclose(s.sigma22, direct[1:, 1:], atol=1e-12)

    def test_sigma2_identity(self):
        # sigma^2 = (n-1)/(n-p-1) (S11 - S12 S22^-1 S21) per dataset
        rng = np.random.default_rng(9)
        for _ in range(20):
            d = random_dataset(rng)
            s = sufficient_stats(d)
            schur = s.sigma11 - s.sigma12 @ np.linalg.solve(s.sigma22, s.sigma12)
            want = (d.n - 1) / (d.n - d.p - 1) * schur
            assert s.sigma2_hat == pytest.approx(want, rel=1e-10)

    def test_rank_deficient_names_columns(self):
        rng = np.random.default_rng(1)
        x = rng.standard_normal((25, 3))
        x[:, 2] = 2.0 * x[:, 0] - x[:, 1]
        d = DataMatrix(y=rng.standard_normal(25), x=x, target_column=0)
        with pytest.raises(SingularDesignError) as err:
            sufficient_stats(d)
        assert err.value.columns

    def test_needs_enough_rows(self):
        with pytest.raises(ValueError):
            DataMatrix(y=np.zeros(3), x=np.zeros((3, 2)), target_column=0)


class TestPartialCorrMle:
    def test_zero_coefficient_gives_zero(self):
        x1 = np.array([1.0, -1.0, 1.0, -1.0, 1.0, -1.0])
        y = np.array([1.0, 1.0, -2.0, -2.0, 1.0, 1.0])
        d = DataMatrix(y=y - y.mean(), x=x1[:, None], target_column=0)
        assert partial_corr_mle(sufficient_stats(d)) == pytest.approx(0.0, abs=1e-12)

    def test_perfect_conditional_fit(self):
        rng = np.random.default_rng(2)
        x = rng.standard_normal((15, 1))
        d = DataMatrix(y=2.0 * x[:, 0], x=x, target_column=0)
        assert partial_corr_mle(sufficient_stats(d)) == pytest.approx(1.0, rel=1e-12)

    def test_matches_residual_correlation_oracle(self):
        rng = np.random.default_rng(123)
        for _ in range(100):
            d = random_dataset(rng)
            got = partial_corr_mle(sufficient_stats(d))
            want = residual_corr_oracle(d.y, d.x, d.target_column)
            assert got == pytest.approx(want, abs=1e-10)

    def test_collinear_target_raises(self):
        rng = np.random.default_rng(4)
        x = rng.standard_normal((30, 2))
        x = np.column_stack([x[:, 0], x])  # target duplicates a conditioner
        d = DataMatrix(y=rng.standard_normal(30), x=x, target_column=0)
        with pytest.raises((DegenerateDesignError, SingularDesignError)):
            partial_corr_mle(sufficient_stats(d))


class TestTestStatistic:
    def test_zero(self):
        assert t_statistic(0.0, 40, 2).t1 == 0.0

    def test_worked_value(self):
        # sqrt(37) * (-0.06) / sqrt(1 - 0.0036)
        s = t_statistic(-0.06, 40, 2)
        assert s.t1 == pytest.approx(math.sqrt(37) * -0.06 / math.sqrt(1 - 0.0036), rel=1e-14)
        assert s.t1 == pytest.approx(-0.3656, abs=5e-4)

    def test_round_trip(self):
        rng = np.random.default_rng(8)
        for _ in range(50):
            r = rng.uniform(-0.99, 0.99)
            n, p = int(rng.integers(10, 100)), int(rng.integers(1, 5))
            s = t_statistic(r, n, p)
            assert r_from_t(s.t1, n, p) == pytest.approx(r, abs=1e-13)

    def test_monotone_in_r(self):
        ts = [t_statistic(r, 30, 2).t1 for r in np.linspace(-0.9, 0.9, 19)]
        assert all(b > a for a, b in zip(ts, ts[1:]))

    def test_boundary_raises(self):
        with pytest.raises(ValueError):
            t_statistic(1.0, 30, 2)

    def test_affine_invariance(self):
        rng = np.random.default_rng(21)
        d = random_dataset(rng, n=40, p=3)
        base = t_statistic(partial_corr_mle(sufficient_stats(d)), d.n, d.p).t1
        y2 = 3.5 * d.y - 7.0
        x2 = d.x.copy()
        x2[:, 1] = -0.4 * x2[:, 1] + 2.0
        x2[:, d.target_column] = 5.0 * x2[:, d.target_column] + 1.0
        d2 = DataMatrix(y=y2, x=x2, target_column=d.target_column)
        scaled = t_statistic(partial_corr_mle(sufficient_stats(d2)), d2.n, d2.p).t1
        assert scaled == pytest.approx(base, rel=1e-9)


class TestTransforms:
    def test_omega_zero(self):
        assert omega_from_rho(0.0) == 0.0

    def test_omega_half(self):
        assert omega_from_rho(0.5) == pytest.approx(0.5 / math.sqrt(0.75), rel=1e-12)
        # the rounded value quoted for the simulation truth
        assert omega_from_rho(0.5) == pytest.approx(0.57, abs=0.01)

    def test_omega_rho_round_trip(self):
        rng = np.random.default_rng(14)
        for _ in range(50):
            rho = rng.uniform(-0.999, 0.999)
            assert rho_from_omega(omega_from_rho(rho)) == pytest.approx(rho, abs=1e-14)

    def test_lambda_round_trip(self):
        omega = 0.5773502691896258
        lam = lambda_from_omega(omega, 40, 2)
        assert lam == pytest.approx(math.sqrt(37) * omega, rel=1e-14)
        assert rho_from_lambda(lam, 40, 2) == pytest.approx(0.5, abs=1e-13)

    def test_u_of_lambda_consistency(self):
        rng = np.random.default_rng(15)
        for _ in range(30):
            omega = rng.uniform(-3, 3)
            n, p = int(rng.integers(10, 80)), int(rng.integers(1, 4))
            assert rho_from_lambda(
                lambda_from_omega(omega, n, p), n, p
            ) == pytest.approx(rho_from_omega(omega), abs=1e-14)

    def test_fisher_z(self):
        assert fisher_z(0.0) == 0.0
        assert fisher_z(0.5) == pytest.approx(0.5 * math.log(3), rel=1e-12)
        rng = np.random.default_rng(16)
        for _ in range(30):
            r = rng.uniform(-0.99, 0.99)
            assert fisher_z(-r) == pytest.approx(-fisher_z(r), abs=1e-15)
        with pytest.raises(ValueError):
            fisher_z(1.0)
