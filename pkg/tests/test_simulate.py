"""Simulation tests: covariance construction, sampling, OC runs, CSV output."""

import csv
import math

import numpy as np
import pytest

from pcbff import (
    CovarianceConstructionError,
    SimScenario,
    build_sigma_with_partial,
    population_partial,
    run_alt_oc,
    run_null_oc,
    sample_mvn,
    write_oc_csvs,
)
from pcbff.simulate import replicate_rng, to_data_matrix


class TestBuildSigma:
    def test_identity_case(self):
        np.testing.assert_array_equal(build_sigma_with_partial(0.0, 0.0), np.eye(3))

    def test_worked_value(self):
        sigma = build_sigma_with_partial(0.5, 0.3)
        assert sigma[0, 1] == pytest.approx(0.5 * 0.91 + 0.09, rel=1e-15)

    def test_round_trip(self):
        rng = np.random.default_rng(0)
        for _ in range(50):
            rho = rng.uniform(-0.95, 0.95)
            c = rng.uniform(-0.7, 0.7)
            sigma = build_sigma_with_partial(rho, c)
            assert population_partial(sigma) == pytest.approx(rho, abs=1e-12)
            # positive definite by construction
            np.linalg.cholesky(sigma)

    def test_feasible_everywhere_inside_the_square(self):
        # det = (1-rho)(1+rho)(1-c^2)^2 > 0, so the equal-nuisance
        # construction is positive definite for all interior inputs
        for rho, c in [(-0.999, 0.95), (0.99, 0.99), (-0.5, -0.99)]:
            np.linalg.cholesky(build_sigma_with_partial(rho, c))


class TestSampleMvn:
    def test_deterministic_given_stream(self):
        sigma = build_sigma_with_partial(0.4, 0.3)
        a = sample_mvn(sigma, 50, replicate_rng(123, 0))
        b = sample_mvn(sigma, 50, replicate_rng(123, 0))
        np.testing.assert_array_equal(a, b)

    def test_streams_differ_across_replicates(self):
        sigma = np.eye(3)
        a = sample_mvn(sigma, 10, replicate_rng(123, 0))
        b = sample_mvn(sigma, 10, replicate_rng(123, 1))
        assert not np.array_equal(a, b)

    def test_large_sample_moments(self):
        z = sample_mvn(np.eye(3), 100_000, replicate_rng(7, 0))
        corr = np.corrcoef(z.T)
        assert np.max(np.abs(corr - np.eye(3))) < 0.02
        assert np.max(np.abs(z.mean(axis=0))) < 4 / math.sqrt(100_000)

    def test_non_pd_rejected(self):
        bad = np.array([[1.0, 2.0, 0.0], [2.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
        with pytest.raises(CovarianceConstructionError):
            sample_mvn(bad, 5, replicate_rng(0, 0))


def small_scenario(**kw):
    base = dict(
        n=25,
        rho_true=0.0,
        replicates=40,
        seed=2024,
        rho_grid=tuple(
            w / math.sqrt(1 + w * w) for w in (0.05, 0.10, 0.15, 0.20, 0.25)
        ),
        bins=400,
    )
    base.update(kw)
    return SimScenario(**base)


class TestRunNullOc:
    def test_requires_null_truth(self):
        with pytest.raises(ValueError):
            run_null_oc(small_scenario(rho_true=0.4))

    def test_record_shape_and_determinism(self):
        scn = small_scenario()
        a = run_null_oc(scn)
        b = run_null_oc(scn)
        assert len(a.records) == scn.replicates
        assert a.records == b.records
        assert a.grid_aggregates == b.grid_aggregates

    def test_true_bf_at_generating_lambda_is_zero(self):
        result = run_null_oc(small_scenario())
        assert all(rec.true_log_bf == 0.0 for rec in result.records)

    def test_aggregates_recompute_from_records(self):
        result = run_null_oc(small_scenario())
        for j, agg in enumerate(result.grid_aggregates):
            mean = math.fsum(rec.log_bff[j] for rec in result.records) / len(result.records)
            assert agg.mean_log_bff == mean

    def test_directional_behavior(self):
        # n = 100 so the per-point means resolve at 150 replicates
        grid = tuple(w / math.sqrt(1 + w * w) for w in (0.10, 0.15, 0.20, 0.25))
        result = run_null_oc(small_scenario(n=100, replicates=150, rho_grid=grid))
        assert all(agg.mean_log_bff < 0 for agg in result.grid_aggregates)
        s = result.summary
        # max BFF tracks the (zero) true log BF much closer than the baseline
        assert abs(s["mean_max_log_bff"]) < abs(s["mean_sb_log_bf"])


class TestRunAltOc:
    def test_requires_alternative_truth(self):
        with pytest.raises(ValueError):
            run_alt_oc(small_scenario(rho_true=0.0))

    def test_fixed_truth_run(self):
        scn = small_scenario(
            rho_true=0.5,
            n=50,
            replicates=60,
            rho_grid=tuple(w / math.sqrt(1 + w * w) for w in np.arange(0.1, 1.01, 0.1)),
        )
        result = run_alt_oc(scn)
        assert result.mode == "alt"
        assert len(result.records) == 60
        assert result.summary["mean_max_log_bff"] > 0
        lam = math.sqrt(scn.n - 3) * 0.5 / math.sqrt(0.75)
        # per-replicate true log BF is at the generating lambda
        assert all(math.isfinite(rec.true_log_bf) for rec in result.records)
        assert result.summary["mean_true_log_bf"] > 0

    def test_sweep_restricts_alternatives(self):
        grid = tuple(w / math.sqrt(1 + w * w) for w in (0.2, 0.4, 0.6, 0.8))
        scn = small_scenario(rho_true=0.0, n=40, replicates=25, rho_grid=grid)
        result = run_alt_oc(scn, sweep=True)
        assert result.mode == "sweep"
        assert len(result.records) == 25 * 4
        omegas = sorted({rec.omega_true for rec in result.records})
        assert omegas == pytest.approx([0.2, 0.4, 0.6, 0.8], abs=1e-12)
        for rec in result.records:
            assert rec.omega_at_max >= rec.omega_true - 1e-12
            # excluded grid points are blanked out
            kept = [v for v in rec.log_bff if v is not None]
            assert max(kept) == rec.max_log_bff
        assert len(result.sweep_aggregates) == 4

    def test_sweep_needs_positive_grid(self):
        with pytest.raises(ValueError):
            run_alt_oc(small_scenario(rho_grid=(-0.2, 0.3)), sweep=True)


def test_single_replicate_smoke_is_fast():
    import time

    start = time.perf_counter()
    result = run_null_oc(small_scenario(replicates=1))
    assert len(result.records) == 1
    assert time.perf_counter() - start < 1.0


class TestCsvOutput:
    def test_round_trip_and_determinism(self, tmp_path):
        scn = small_scenario(replicates=20)
        result = run_null_oc(scn)
        rec1, agg1 = tmp_path / "r1.csv", tmp_path / "a1.csv"
        rec2, agg2 = tmp_path / "r2.csv", tmp_path / "a2.csv"
        write_oc_csvs(result, rec1, agg1)
        write_oc_csvs(run_null_oc(scn), rec2, agg2)
        assert rec1.read_bytes() == rec2.read_bytes()
        assert agg1.read_bytes() == agg2.read_bytes()

        with open(rec1, newline="") as fh:
            rows = list(csv.DictReader(fh))
        assert len(rows) == 20
        # re-aggregating the records reproduces the stored aggregates exactly
        with open(agg1, newline="") as fh:
            aggs = list(csv.DictReader(fh))
        for j, agg in enumerate(aggs):
            col = f"log_bff@{format(result.grid_omegas[j], '.6g')}"
            mean = math.fsum(float(r[col]) for r in rows) / len(rows)
            assert float(agg["mean_log_bff"]) == mean

    def test_sweep_csv_blanks(self, tmp_path):
        grid = tuple(w / math.sqrt(1 + w * w) for w in (0.3, 0.6))
        scn = small_scenario(rho_true=0.0, replicates=5, rho_grid=grid)
        result = run_alt_oc(scn, sweep=True)
        rec, agg = tmp_path / "rec.csv", tmp_path / "agg.csv"
        write_oc_csvs(result, rec, agg)
        with open(rec, newline="") as fh:
            rows = list(csv.DictReader(fh))
        col = f"log_bff@{format(result.grid_omegas[0], '.6g')}"
        later = [r for r in rows if float(r["omega_true"]) > 0.35]
        assert all(r[col] == "" for r in later)


class TestDataMatrixBridge:
    def test_column_roles(self):
        z = np.arange(30.0).reshape(10, 3)
        d = to_data_matrix(z)
        np.testing.assert_array_equal(d.y, z[:, 1])
        np.testing.assert_array_equal(d.x[:, 0], z[:, 0])
        np.testing.assert_array_equal(d.x[:, 1], z[:, 2])
        assert d.target_column == 0

    def test_scenario_validation(self):
        with pytest.raises(ValueError):
            SimScenario(n=25, rho_true=1.2, replicates=5, seed=1)
        with pytest.raises(ValueError):
            SimScenario(n=25, rho_true=0.0, replicates=5, seed=1, rho_grid=(0.5, 0.2))
        with pytest.raises(ValueError):
            SimScenario(n=25, rho_true=0.0, replicates=5, seed=-1)
