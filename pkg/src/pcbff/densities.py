"""Non-local priors and the conditional densities of r* and t1.

The conditional density of the sample partial correlation r* given the
population value rho* is the classical hypergeometric correlation density
evaluated at effective sample size n - p + 1, the unique calibration under
which (i) the density integrates to one, (ii) the rho* = 0 limit is the
t_{n-p-1}-derived null density of r*, and (iii) simulated r* values match
the density.  The same kernel, pushed through t1 = sqrt(n-p-1) r/sqrt(1-r^2),
gives the density of the test statistic under the alternative.
"""

import threading
from dataclasses import dataclass

import numpy as np
from scipy import special

from . import pcstats

# arguments of the hypergeometric kernel this close to 1 are rejected
_BOUNDARY_EPS = 1e-12
# floor applied to the hypergeometric factor before taking logs
_HYP_CLAMP = 1e-15


class ClampDiagnostics:
    """Counts how often the hypergeometric clamp fires (it should not)."""

    def __init__(self):
        self._lock = threading.Lock()
        self._count = 0

    @property
    def count(self):
        return self._count

    def add(self, k):
        with self._lock:
            self._count += int(k)

    def reset(self):
        with self._lock:
            self._count = 0


clamp_diagnostics = ClampDiagnostics()


@dataclass(frozen=True)
class NormalMomentPrior:
    """Normal moment prior on the noncentrality parameter.

    Density |x|^(2 nu) exp(-x^2 / (2 tau^2)) / ((2 tau^2)^(nu+1/2) Gamma(nu+1/2)),
    zero at the origin with modes at +/- sqrt(2 nu) tau.
    """

    tau2: float
    nu: float = 1.0

    def __post_init__(self):
        if self.tau2 <= 0:
            raise ValueError("tau2 must be positive")
        if self.nu < 1:
            raise ValueError("nu must be >= 1")

    @property
    def mode(self):
        return np.sqrt(2.0 * self.nu * self.tau2)


@dataclass(frozen=True)
class InverseMomentPrior:
    """Inverse moment prior centered at theta0.

    Density proportional to ((theta-theta0)^2)^(-(nu+1)/2)
    exp(-((theta-theta0)^2 / tau)^(-r)); the exponential argument uses the
    squared deviation, which is the reading under which the normalizer
    r tau^(nu/2) / Gamma(nu/(2r)) integrates to one.
    """

    theta0: float = 0.0
    r_order: float = 1.0
    nu: float = 1.0
    tau: float = 1.0

    def __post_init__(self):
        if self.r_order <= 0 or self.nu <= 0 or self.tau <= 0:
            raise ValueError("r_order, nu and tau must be positive")


def nm_prior_logpdf(lam, prior: NormalMomentPrior):
    """Log density of the normal moment prior; -inf at lam = 0."""
    lam = np.asarray(lam, dtype=float)
    with np.errstate(divide="ignore"):
        out = (
            2.0 * prior.nu * np.log(np.abs(lam))
            - (prior.nu + 0.5) * np.log(2.0 * prior.tau2)
            - special.gammaln(prior.nu + 0.5)
            - lam * lam / (2.0 * prior.tau2)
        )
    return float(out) if out.ndim == 0 else out


def imom_prior_logpdf(theta, prior: InverseMomentPrior):
    """Log density of the inverse moment prior; -inf at theta = theta0."""
    theta = np.asarray(theta, dtype=float)
    d2 = (theta - prior.theta0) ** 2
    with np.errstate(divide="ignore"):
        out = np.where(
            d2 == 0,
            -np.inf,
            np.log(prior.r_order)
            + 0.5 * prior.nu * np.log(prior.tau)
            - special.gammaln(prior.nu / (2.0 * prior.r_order))
            - 0.5 * (prior.nu + 1.0) * np.log(np.where(d2 == 0, 1.0, d2))
            - np.where(d2 == 0, np.inf, d2 / prior.tau) ** (-prior.r_order),
        )
    return float(out) if out.ndim == 0 else out


def _log_corr_density(r, rho, m):
    """Log density of a sample correlation at effective sample size m.

    Both r and rho may be arrays (broadcast together); |rho * r| must stay
    away from 1.
    """
    r = np.asarray(r, dtype=float)
    rho = np.asarray(rho, dtype=float)
    prod = rho * r
    if np.any(np.abs(prod) > 1.0 - _BOUNDARY_EPS):
        raise ValueError("rho * r too close to +/-1 for stable evaluation")
    const = (
        np.log(m - 2.0)
        + special.gammaln(m - 1.0)
        - 0.5 * np.log(2.0 * np.pi)
        - special.gammaln(m - 0.5)
    )
    hyp = _hyp_kernel(m, (1.0 + prod) / 2.0)
    return (
        const
        + ((m - 1.0) / 2.0) * np.log1p(-(rho * rho))
        + ((m - 4.0) / 2.0) * np.log1p(-(r * r))
        - (m - 1.5) * np.log1p(-prod)
        + np.log(hyp)
    )


def _hyp_kernel(m, x):
    """2F1(1/2, 1/2; m - 1/2; x) with the reference implementation's floor."""
    from .specfun import gauss_2f1

    val = np.asarray(gauss_2f1(0.5, 0.5, m - 0.5, x))
    bad = ~np.isfinite(val) | (val < _HYP_CLAMP)
    if bad.any():
        clamp_diagnostics.add(bad.sum())
        val = np.where(bad, _HYP_CLAMP, val)
    return val


def r_cond_logdensity(r, rho, n: int, p: int):
    """Log f(r* | rho*) for the partial correlation of one predictor.

    At rho = 0 this is exactly the null density, the central-t density of
    t1 times the Jacobian sqrt(n-p-1) / (1-r^2)^(3/2).
    """
    from .specfun import student_t_logpdf

    df = n - p - 1
    if df < 2:
        raise ValueError("need n - p - 1 >= 2")
    r = np.asarray(r, dtype=float)
    rho = np.asarray(rho, dtype=float)
    if np.any(np.abs(r) >= 1) or np.any(np.abs(rho) >= 1):
        raise ValueError("r_cond_logdensity requires |r| < 1 and |rho| < 1")
    if rho.ndim == 0 and rho == 0:
        t = np.sqrt(df) * r / np.sqrt(1.0 - r * r)
        out = student_t_logpdf(t, df) + 0.5 * np.log(df) - 1.5 * np.log1p(-(r * r))
    else:
        out = _log_corr_density(r, rho, n - p + 1.0)
    return float(out) if out.ndim == 0 else out


def t_cond_logdensity(t, lam, n: int, p: int):
    """Log f(t1 | lambda); lambda = 0 reduces exactly to the central t."""
    from .specfun import student_t_logpdf

    df = n - p - 1
    if df < 2:
        raise ValueError("need n - p - 1 >= 2")
    t = np.asarray(t, dtype=float)
    lam = np.asarray(lam, dtype=float)
    if lam.ndim == 0 and lam == 0:
        out = np.asarray(student_t_logpdf(t, df))
        return float(out) if out.ndim == 0 else out
    r = t / np.sqrt(df + t * t)
    rho = lam / np.sqrt(df + lam * lam)
    jac = np.log(df) - 1.5 * np.log(df + t * t)
    out = _log_corr_density(r, rho, n - p + 1.0) + jac
    return float(out) if out.ndim == 0 else out


def prior_mass_rho_interval(prior: NormalMomentPrior, n: int, p: int, lo: float, hi: float):
    """Mass the prior on lambda induces on rho* = u(lambda) in (lo, hi)."""
    if not -1.0 <= lo < hi <= 1.0:
        raise ValueError("need -1 <= lo < hi <= 1")
    return float(_rho_cdf(prior, n, p, hi) - _rho_cdf(prior, n, p, lo))


def prior_mass_rho_band(prior: NormalMomentPrior, n: int, p: int, a: float, b: float):
    """Mass placed on a < |rho*| < b (both signed branches)."""
    if not 0.0 <= a < b <= 1.0:
        raise ValueError("need 0 <= a < b <= 1")
    ga = _abs_lambda_cdf(prior, _lambda_at(a, n, p))
    gb = _abs_lambda_cdf(prior, _lambda_at(b, n, p))
    return float(gb - ga)


def _lambda_at(rho, n, p):
    if abs(rho) >= 1.0:
        return np.inf if rho > 0 else -np.inf
    return pcstats.lambda_from_omega(pcstats.omega_from_rho(rho), n, p)


def _abs_lambda_cdf(prior, lam):
    """P(|lambda| <= lam): Gamma CDF of lambda^2 with shape nu + 1/2."""
    if np.isinf(lam):
        return 1.0
    return special.gammainc(prior.nu + 0.5, lam * lam / (2.0 * prior.tau2))


def _rho_cdf(prior, n, p, rho):
    lam = _lambda_at(rho, n, p)
    if np.isinf(lam):
        return 1.0 if lam > 0 else 0.0
    return 0.5 + 0.5 * np.sign(lam) * _abs_lambda_cdf(prior, lam)
