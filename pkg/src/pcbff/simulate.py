"""Data generation and Monte Carlo operating characteristics.

Scenarios draw (X, Y, Z) from a trivariate normal whose correlation matrix
is built so the partial correlation of X and Y given Z hits a requested
value exactly.  Each replicate gets its own counter-based random stream
keyed by (seed, replicate counter), so results do not depend on execution
order and identical scenarios reproduce byte-identical output.
"""

import csv
import math
from dataclasses import dataclass, field

import numpy as np

from .baselines import stretched_beta_log_bf
from .bff import log_bf10_grid, true_log_bf
from .densities import t_cond_logdensity
from .errors import CovarianceConstructionError
from .pcstats import (
    DataMatrix,
    lambda_from_omega,
    omega_from_rho,
    partial_corr_mle,
    sufficient_stats,
    t_statistic,
)
from .specfun import student_t_logpdf

# the three-variable design: response Y, predictors (X, Z), target X
_P = 2
_DEFAULT_GRID = tuple(np.round(np.arange(0.1, 1.01, 0.1) / np.sqrt(1 + np.arange(0.1, 1.01, 0.1) ** 2), 12))


@dataclass(frozen=True)
class SimScenario:
    """One operating-characteristics run."""

    n: int
    rho_true: float
    replicates: int
    seed: int
    nuisance_corr: float = 0.3
    nu: float = 1.0
    rho_grid: tuple = _DEFAULT_GRID
    bins: int = 2_000
    sb_alpha: float = 0.5
    sb_k: int = _P

    def __post_init__(self):
        if abs(self.rho_true) >= 1:
            raise ValueError("rho_true must lie in (-1, 1)")
        if self.replicates < 1:
            raise ValueError("replicates must be >= 1")
        if self.seed < 0:
            raise ValueError("seed must be a non-negative integer")
        grid = tuple(float(r) for r in self.rho_grid)
        if any(not -1 < r < 1 for r in grid) or any(
            b <= a for a, b in zip(grid, grid[1:])
        ):
            raise ValueError("rho_grid must be strictly increasing inside (-1, 1)")
        object.__setattr__(self, "rho_grid", grid)
        # fail early if the correlation structure is infeasible
        build_sigma_with_partial(self.rho_true, self.nuisance_corr)


@dataclass(frozen=True)
class ReplicateRecord:
    """Everything retained from one simulated dataset."""

    omega_true: float
    replicate: int
    r_star: float
    t1: float
    true_log_bf: float
    max_log_bff: float
    omega_at_max: float
    sb_log_bf: float
    log_bff: tuple        # per grid point; None where the point was excluded
    true_alt: tuple = None  # true log BF at each alternative (null/alt modes)


@dataclass(frozen=True)
class GridAggregate:
    """Per-alternative means for the null and fixed-alternative studies."""

    rho_mode: float
    omega: float
    mean_log_bff: float
    se_log_bff: float
    mean_true_alt: float
    se_true_alt: float


@dataclass(frozen=True)
class SweepAggregate:
    """Per-truth means for the sweep study."""

    omega_true: float
    rho_true: float
    mean_true: float
    se_true: float
    mean_max_bff: float
    se_max_bff: float
    mean_sb: float
    se_sb: float
    dev_bff: float
    dev_sb: float
    se_bff_minus_true: float
    se_sb_minus_true: float


@dataclass(frozen=True)
class OcResult:
    """Per-replicate records plus the aggregates derived from them."""

    scenario: SimScenario
    mode: str
    grid_rhos: tuple
    grid_omegas: tuple
    records: tuple
    grid_aggregates: tuple = ()
    sweep_aggregates: tuple = ()
    summary: dict = field(default_factory=dict)


def build_sigma_with_partial(rho_target: float, nuisance_corr: float = 0.3) -> np.ndarray:
    """3x3 correlation matrix for (X, Y, Z) with a prescribed partial correlation.

    Inverts rho_XY|Z = (rho_XY - rho_XZ rho_YZ) / sqrt((1-rho_XZ^2)(1-rho_YZ^2))
    with rho_XZ = rho_YZ = nuisance_corr.
    """
    if abs(rho_target) >= 1:
        raise ValueError("rho_target must lie in (-1, 1)")
    if abs(nuisance_corr) >= 1:
        raise ValueError("nuisance_corr must lie in (-1, 1)")
    c = nuisance_corr
    rho_xy = rho_target * (1.0 - c * c) + c * c
    sigma = np.array([[1.0, rho_xy, c], [rho_xy, 1.0, c], [c, c, 1.0]])
    # det = (1 - rho_target^2)(1 - c^2)^2, so interior inputs are always
    # feasible; the minor checks below guard against future generalizations

    if 1.0 - rho_xy * rho_xy <= 0:
        raise CovarianceConstructionError(
            f"leading minor 2 not positive (rho_XY = {rho_xy})", minor=2
        )
    if np.linalg.det(sigma) <= 0:
        raise CovarianceConstructionError(
            f"leading minor 3 not positive (rho_target={rho_target}, "
            f"nuisance_corr={nuisance_corr})",
            minor=3,
        )
    return sigma


def population_partial(sigma: np.ndarray, i: int = 0, j: int = 1, given: int = 2) -> float:
    """Partial correlation of variables i and j given one conditioning variable."""
    a, b, c = sigma[i, j], sigma[i, given], sigma[j, given]
    return float((a - b * c) / math.sqrt((1.0 - b * b) * (1.0 - c * c)))


def sample_mvn(sigma: np.ndarray, n: int, rng: np.random.Generator) -> np.ndarray:
    """n rows from N(0, sigma) via the Cholesky factor."""
    try:
        chol = np.linalg.cholesky(sigma)
    except np.linalg.LinAlgError as exc:
        raise CovarianceConstructionError(f"covariance not positive definite: {exc}") from exc
    return rng.standard_normal((n, sigma.shape[0])) @ chol.T


def replicate_rng(seed: int, counter: int) -> np.random.Generator:
    """Independent stream for one replicate, order-insensitive by construction."""
    key = np.array([seed, counter], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def to_data_matrix(z: np.ndarray) -> DataMatrix:
    """(X, Y, Z) columns arranged as response Y, predictors (X, Z), target X."""
    return DataMatrix(y=z[:, 1], x=z[:, [0, 2]], target_column=0)


def _mean_se(values):
    m = math.fsum(values) / len(values)
    if len(values) < 2:
        return m, 0.0
    var = math.fsum((v - m) ** 2 for v in values) / (len(values) - 1)
    return m, math.sqrt(var / len(values))


def _simulate_replicate(scn, sigma, counter):
    rng = replicate_rng(scn.seed, counter)
    z = sample_mvn(sigma, scn.n, rng)
    stats = sufficient_stats(to_data_matrix(z))
    r_star = partial_corr_mle(stats)
    return r_star, t_statistic(r_star, scn.n, _P)


def run_null_oc(scn: SimScenario) -> OcResult:
    """Operating characteristics with data generated under the null."""
    if scn.rho_true != 0:
        raise ValueError("run_null_oc requires rho_true = 0")
    return _run_fixed_truth(scn, mode="null")


def run_alt_oc(scn: SimScenario, sweep: bool = False) -> OcResult:
    """Operating characteristics under the alternative.

    With sweep=False the generating partial correlation is scn.rho_true and
    the full grid of alternatives is evaluated per replicate.  With
    sweep=True the grid itself supplies the generating truths and, at each
    truth, only alternatives with omega* >= omega_true enter the Bayes
    factor function.
    """
    if sweep:
        return _run_sweep(scn)
    if scn.rho_true == 0:
        raise ValueError("run_alt_oc requires rho_true != 0 (use run_null_oc)")
    return _run_fixed_truth(scn, mode="alt")


def _run_fixed_truth(scn, mode):
    sigma = build_sigma_with_partial(scn.rho_true, scn.nuisance_corr)
    rhos = np.asarray(scn.rho_grid)
    omegas = omega_from_rho(rhos)
    omega_true = omega_from_rho(scn.rho_true)
    lam_true = lambda_from_omega(omega_true, scn.n, _P)
    lam_alt = lambda_from_omega(omegas, scn.n, _P)
    df = scn.n - _P - 1

    records = []
    for i in range(scn.replicates):
        r_star, summary = _simulate_replicate(scn, sigma, i)
        bff = log_bf10_grid(summary, rhos, scn.nu, scn.bins)
        true_alt = t_cond_logdensity(summary.t1, lam_alt, scn.n, _P) - student_t_logpdf(
            summary.t1, df
        )
        k = int(np.argmax(bff))
        records.append(
            ReplicateRecord(
                omega_true=float(omega_true),
                replicate=i,
                r_star=r_star,
                t1=summary.t1,
                true_log_bf=true_log_bf(summary, lam_true),
                max_log_bff=float(bff[k]),
                omega_at_max=float(omegas[k]),
                sb_log_bf=stretched_beta_log_bf(r_star, scn.n, scn.sb_k, scn.sb_alpha),
                log_bff=tuple(float(v) for v in bff),
                true_alt=tuple(float(v) for v in true_alt),
            )
        )

    grid_aggs = []
    for j, (rho, omega) in enumerate(zip(rhos, omegas)):
        mb, sb_ = _mean_se([rec.log_bff[j] for rec in records])
        mt, st = _mean_se([rec.true_alt[j] for rec in records])
        grid_aggs.append(
            GridAggregate(
                rho_mode=float(rho),
                omega=float(omega),
                mean_log_bff=mb,
                se_log_bff=sb_,
                mean_true_alt=mt,
                se_true_alt=st,
            )
        )

    summary = _scalar_summary(records)
    return OcResult(
        scenario=scn,
        mode=mode,
        grid_rhos=tuple(float(r) for r in rhos),
        grid_omegas=tuple(float(w) for w in omegas),
        records=tuple(records),
        grid_aggregates=tuple(grid_aggs),
        summary=summary,
    )


def _run_sweep(scn):
    rhos = np.asarray(scn.rho_grid)
    if np.any(rhos <= 0):
        raise ValueError("sweep mode requires a positive rho grid")
    omegas = omega_from_rho(rhos)

    records = []
    sweep_aggs = []
    for j, (rho_true, omega_true) in enumerate(zip(rhos, omegas)):
        sigma = build_sigma_with_partial(float(rho_true), scn.nuisance_corr)
        lam_true = lambda_from_omega(float(omega_true), scn.n, _P)
        keep = omegas >= omega_true - 1e-12
        sub_rhos = rhos[keep]
        batch = []
        for i in range(scn.replicates):
            r_star, summary = _simulate_replicate(scn, sigma, j * scn.replicates + i)
            bff = log_bf10_grid(summary, sub_rhos, scn.nu, scn.bins)
            k = int(np.argmax(bff))
            padded = [None] * len(rhos)
            for idx, val in zip(np.nonzero(keep)[0], bff):
                padded[idx] = float(val)
            rec = ReplicateRecord(
                omega_true=float(omega_true),
                replicate=i,
                r_star=r_star,
                t1=summary.t1,
                true_log_bf=true_log_bf(summary, lam_true),
                max_log_bff=float(bff[k]),
                omega_at_max=float(omegas[keep][k]),
                sb_log_bf=stretched_beta_log_bf(r_star, scn.n, scn.sb_k, scn.sb_alpha),
                log_bff=tuple(padded),
            )
            batch.append(rec)
            records.append(rec)

        mean_true, se_true = _mean_se([r.true_log_bf for r in batch])
        mean_max, se_max = _mean_se([r.max_log_bff for r in batch])
        mean_sb, se_sb = _mean_se([r.sb_log_bf for r in batch])
        _, se_bt = _mean_se([r.max_log_bff - r.true_log_bf for r in batch])
        _, se_st = _mean_se([r.sb_log_bf - r.true_log_bf for r in batch])
        sweep_aggs.append(
            SweepAggregate(
                omega_true=float(omega_true),
                rho_true=float(rho_true),
                mean_true=mean_true,
                se_true=se_true,
                mean_max_bff=mean_max,
                se_max_bff=se_max,
                mean_sb=mean_sb,
                se_sb=se_sb,
                dev_bff=abs(mean_max - mean_true),
                dev_sb=abs(mean_sb - mean_true),
                se_bff_minus_true=se_bt,
                se_sb_minus_true=se_st,
            )
        )

    summary = _scalar_summary(records)
    return OcResult(
        scenario=scn,
        mode="sweep",
        grid_rhos=tuple(float(r) for r in rhos),
        grid_omegas=tuple(float(w) for w in omegas),
        records=tuple(records),
        sweep_aggregates=tuple(sweep_aggs),
        summary=summary,
    )


def _scalar_summary(records):
    out = {}
    for name, vals in (
        ("true_log_bf", [r.true_log_bf for r in records]),
        ("max_log_bff", [r.max_log_bff for r in records]),
        ("sb_log_bf", [r.sb_log_bf for r in records]),
    ):
        mean, se = _mean_se(vals)
        out[f"mean_{name}"] = mean
        out[f"se_{name}"] = se
    return out


def _omega_tag(omega):
    return format(omega, ".6g")


def write_records_csv(result: OcResult, path):
    """Per-replicate CSV; full float precision so aggregates recompute exactly."""
    head = [
        "omega_true",
        "replicate",
        "r_star",
        "t1",
        "true_log_bf",
        "max_log_bff",
        "omega_at_max",
        "sb_log_bf",
    ]
    head += [f"log_bff@{_omega_tag(w)}" for w in result.grid_omegas]
    if result.mode != "sweep":
        head += [f"true_alt@{_omega_tag(w)}" for w in result.grid_omegas]
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(head)
        for rec in result.records:
            row = [
                repr(rec.omega_true),
                rec.replicate,
                repr(rec.r_star),
                repr(rec.t1),
                repr(rec.true_log_bf),
                repr(rec.max_log_bff),
                repr(rec.omega_at_max),
                repr(rec.sb_log_bf),
            ]
            row += ["" if v is None else repr(v) for v in rec.log_bff]
            if result.mode != "sweep":
                row += [repr(v) for v in rec.true_alt]
            writer.writerow(row)


def write_aggregates_csv(result: OcResult, path):
    """Per-grid-point (or per-truth) means, plot-ready."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        if result.mode == "sweep":
            writer.writerow(
                [
                    "omega_true",
                    "rho_true",
                    "mean_true",
                    "se_true",
                    "mean_max_bff",
                    "se_max_bff",
                    "mean_sb",
                    "se_sb",
                    "dev_bff",
                    "dev_sb",
                    "se_bff_minus_true",
                    "se_sb_minus_true",
                ]
            )
            for agg in result.sweep_aggregates:
                writer.writerow(
                    [
                        repr(agg.omega_true),
                        repr(agg.rho_true),
                        repr(agg.mean_true),
                        repr(agg.se_true),
                        repr(agg.mean_max_bff),
                        repr(agg.se_max_bff),
                        repr(agg.mean_sb),
                        repr(agg.se_sb),
                        repr(agg.dev_bff),
                        repr(agg.dev_sb),
                        repr(agg.se_bff_minus_true),
                        repr(agg.se_sb_minus_true),
                    ]
                )
        else:
            writer.writerow(
                [
                    "rho_mode",
                    "omega",
                    "mean_log_bff",
                    "se_log_bff",
                    "mean_true_alt",
                    "se_true_alt",
                ]
            )
            for agg in result.grid_aggregates:
                writer.writerow(
                    [
                        repr(agg.rho_mode),
                        repr(agg.omega),
                        repr(agg.mean_log_bff),
                        repr(agg.se_log_bff),
                        repr(agg.mean_true_alt),
                        repr(agg.se_true_alt),
                    ]
                )


def write_oc_csvs(result: OcResult, records_path, aggregates_path):
    write_records_csv(result, records_path)
    write_aggregates_csv(result, aggregates_path)
