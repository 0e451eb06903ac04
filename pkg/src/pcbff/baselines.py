"""Competing Bayes factors: stretched-beta closed form and JZS Monte Carlo."""

from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from .specfun import gauss_2f1, log_beta


def stretched_beta_log_bf(r: float, n: int, k: int, alpha: float) -> float:
    """Log BF10 against rho = 0 under a stretched-beta(alpha) prior.

    Closed form: lB(1/2, alpha + (n-k-1)/2) - lB(1/2, alpha)
    + log 2F1((n-k-1)/2, (n-k-1)/2; alpha + (n-k)/2; r^2).
    """
    if abs(r) >= 1:
        raise ValueError("stretched_beta_log_bf requires |r| < 1")
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    if n - k - 1 < 1:
        raise ValueError("need n - k - 1 >= 1")
    half_df = (n - k - 1) / 2.0
    term1 = log_beta(0.5, alpha + half_df)
    term2 = log_beta(0.5, alpha)
    term3 = gauss_2f1(half_df, half_df, alpha + (n - k) / 2.0, r * r)
    return float(term1 - term2 + np.log(term3))


@dataclass(frozen=True)
class JzsInput:
    """Inputs for the JZS mixture-of-g Monte Carlo Bayes factor."""

    r2_null: float
    r2_full: float
    n: int
    p0: int
    p1: int
    mc_samples: int = 10_000
    seed: int = 0

    def __post_init__(self):
        for name, r2 in (("r2_null", self.r2_null), ("r2_full", self.r2_full)):
            if not 0.0 <= r2 < 1.0:
                raise ValueError(f"{name} must lie in [0, 1)")
        if self.r2_full < self.r2_null:
            raise ValueError("r2_full must be >= r2_null")
        if self.p1 < self.p0:
            raise ValueError("p1 must be >= p0")
        if self.mc_samples < 1_000:
            raise ValueError("mc_samples must be >= 1000")


def _log_integrand(g, r2, p, n):
    return -(n - 1 - p) / 2.0 * np.log1p(g) - (n - 1) / 2.0 * np.log1p((1.0 - r2) * g)


def jzs_log_bf(inp: JzsInput) -> float:
    """Monte Carlo JZS log Bayes factor (full model over null model).

    g is drawn from Gamma(1/2, scale n/2); the same draws feed numerator
    and denominator, so the result is reproducible bit for bit from the
    seed and sample count.
    """
    rng = np.random.Generator(np.random.Philox(key=np.uint64(inp.seed)))
    g = rng.gamma(shape=0.5, scale=inp.n / 2.0, size=inp.mc_samples)
    log_num = logsumexp(_log_integrand(g, inp.r2_full, inp.p1, inp.n))
    log_den = logsumexp(_log_integrand(g, inp.r2_null, inp.p0, inp.n))
    return float(log_num - log_den)
