"""Bayes factor functions for partial correlation tests.

Given a partial correlation test statistic (or the raw data it derives
from), the package evaluates the exact conditional density of the statistic
under any effect size, integrates it against non-local normal moment
priors, and reports the resulting Bayes factor as a function of the effect
size at which the alternative prior is centered.  Competing Bayes factors
(stretched-beta, JZS) and Monte Carlo operating-characteristic studies are
included.
"""

from .baselines import JzsInput, jzs_log_bf, stretched_beta_log_bf
from .bff import (
    BffCurve,
    BffPoint,
    bff_curve,
    closed_form_t_bf,
    curve_to_csv,
    curve_to_json,
    default_rho_grid,
    find_crossings,
    log_bf10,
    log_bf10_grid,
    log_marginal_m1,
    max_bff,
    tau2_from_omega,
    true_log_bf,
)
from .densities import (
    InverseMomentPrior,
    NormalMomentPrior,
    imom_prior_logpdf,
    nm_prior_logpdf,
    prior_mass_rho_band,
    prior_mass_rho_interval,
    r_cond_logdensity,
    t_cond_logdensity,
)
from .errors import (
    CovarianceConstructionError,
    DegenerateDesignError,
    NumericalError,
    PcbffError,
    SingularDesignError,
)
from .pcstats import (
    DataMatrix,
    SufficientStats,
    TestSummary,
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
from .simulate import (
    OcResult,
    SimScenario,
    build_sigma_with_partial,
    population_partial,
    run_alt_oc,
    run_null_oc,
    sample_mvn,
    write_oc_csvs,
)
from .specfun import (
    gamma_cdf,
    gamma_quantile,
    gauss_2f1,
    log_beta,
    log_gamma,
    student_t_cdf,
    student_t_logpdf,
    two_sided_p_value,
)

__version__ = "0.1.0"

__all__ = [
    "BffCurve",
    "BffPoint",
    "CovarianceConstructionError",
    "DataMatrix",
    "DegenerateDesignError",
    "InverseMomentPrior",
    "JzsInput",
    "NormalMomentPrior",
    "NumericalError",
    "OcResult",
    "PcbffError",
    "SimScenario",
    "SingularDesignError",
    "SufficientStats",
    "TestSummary",
    "bff_curve",
    "build_sigma_with_partial",
    "closed_form_t_bf",
    "curve_to_csv",
    "curve_to_json",
    "default_rho_grid",
    "fisher_z",
    "find_crossings",
    "gamma_cdf",
    "gamma_quantile",
    "gauss_2f1",
    "imom_prior_logpdf",
    "jzs_log_bf",
    "lambda_from_omega",
    "log_beta",
    "log_bf10",
    "log_bf10_grid",
    "log_gamma",
    "log_marginal_m1",
    "max_bff",
    "nm_prior_logpdf",
    "omega_from_rho",
    "partial_corr_mle",
    "population_partial",
    "prior_mass_rho_band",
    "prior_mass_rho_interval",
    "r_cond_logdensity",
    "r_from_t",
    "rho_from_lambda",
    "rho_from_omega",
    "run_alt_oc",
    "run_null_oc",
    "sample_mvn",
    "stretched_beta_log_bf",
    "student_t_cdf",
    "student_t_logpdf",
    "sufficient_stats",
    "t_cond_logdensity",
    "t_statistic",
    "tau2_from_omega",
    "true_log_bf",
    "two_sided_p_value",
    "write_oc_csvs",
]
