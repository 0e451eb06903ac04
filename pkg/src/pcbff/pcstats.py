"""Sufficient statistics and the partial correlation MLE.

The model: rows (Y_i, X_i) are i.i.d. multivariate normal, the regression
of Y on [1 X] has coefficients beta = (delta, gamma) and residual variance
sigma^2, and the partial correlation of Y with one designated predictor
column given the remaining columns is the testing target.  The tested
column is permuted into the leading position internally so the q = 1
partition formulas apply directly.
"""

from dataclasses import dataclass

import numpy as np
from scipy import linalg

from .errors import DegenerateDesignError, SingularDesignError

# condition-number threshold for declaring the design rank deficient
_COND_LIMIT = 1e12


@dataclass(frozen=True)
class DataMatrix:
    """Response vector, predictor matrix, and the tested predictor column."""

    y: np.ndarray
    x: np.ndarray
    target_column: int = 0

    def __post_init__(self):
        y = np.asarray(self.y, dtype=float)
        x = np.asarray(self.x, dtype=float)
        if x.ndim == 1:
            x = x[:, None]
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "x", x)
        n, p = x.shape
        if y.shape != (n,):
            raise ValueError(f"y has shape {y.shape}, expected ({n},)")
        if not 0 <= self.target_column < p:
            raise ValueError(f"target_column {self.target_column} out of range for p={p}")
        if n <= p + 1:
            raise ValueError(f"need n > p + 1 observations (got n={n}, p={p})")

    @property
    def n(self):
        return self.x.shape[0]

    @property
    def p(self):
        return self.x.shape[1]


@dataclass(frozen=True)
class SufficientStats:
    """Complete sufficient statistic of the correlation model."""

    n: int
    p: int
    gamma1_hat: float          # coefficient of the tested predictor
    xi112_hat: float           # conditional variance of the tested predictor
    sigma2_hat: float          # residual variance, divisor n - p - 1
    beta_hat: np.ndarray       # (delta, gamma), length p + 1
    mu_hat: np.ndarray         # sample mean of (Y, X), length p + 1
    sigma11: float             # sample variance of Y, divisor n - 1
    sigma12: np.ndarray        # covariance of Y with X, length p
    sigma22: np.ndarray        # covariance of X, p x p

    @property
    def df(self):
        return self.n - self.p - 1


@dataclass(frozen=True)
class TestSummary:
    """The (t1, n, p) triple every Bayes factor computation runs on."""

    __test__ = False  # keep pytest from collecting this as a test class

    t1: float
    n: int
    p: int

    def __post_init__(self):
        if self.n - self.p - 1 < 1:
            raise ValueError(f"need n - p - 1 >= 1 (got n={self.n}, p={self.p})")

    @property
    def df(self):
        return self.n - self.p - 1


def sufficient_stats(d: DataMatrix) -> SufficientStats:
    """Compute the sufficient statistic from raw data.

    The regression is solved through a QR factorization of W = [1 X];
    near-zero diagonal entries of R flag the dependent columns.
    """
    n, p = d.n, d.p
    w = np.column_stack([np.ones(n), d.x])
    q, r, piv = linalg.qr(w, mode="economic", pivoting=True)
    diag = np.abs(np.diag(r))
    if diag[0] == 0 or diag.min() < diag.max() / _COND_LIMIT:
        bad = piv[diag < diag.max() / _COND_LIMIT]
        names = ["intercept" if j == 0 else f"x{j - 1}" for j in sorted(bad)]
        raise SingularDesignError(
            f"design matrix [1 X] is rank deficient; offending columns: {', '.join(names)}",
            columns=names,
        )
    beta_piv = linalg.solve_triangular(r, q.T @ d.y)
    beta = np.empty(p + 1)
    beta[piv] = beta_piv
    resid = d.y - w @ beta
    sigma2 = float(resid @ resid) / (n - p - 1)

    z = np.column_stack([d.y, d.x])
    mu = z.mean(axis=0)
    zc = z - mu
    s = (zc.T @ zc) / (n - 1)
    sigma11 = float(s[0, 0])
    sigma12 = s[0, 1:].copy()
    sigma22 = s[1:, 1:].copy()

    # Xi partitioned with the tested column first
    j = d.target_column
    rest = [k for k in range(p) if k != j]
    xi11 = sigma22[j, j]
    if rest:
        xi12 = sigma22[j, rest]
        xi22 = sigma22[np.ix_(rest, rest)]
        xi112 = float(xi11 - xi12 @ np.linalg.solve(xi22, xi12))
    else:
        xi112 = float(xi11)

    return SufficientStats(
        n=n,
        p=p,
        gamma1_hat=float(beta[1 + j]),
        xi112_hat=xi112,
        sigma2_hat=sigma2,
        beta_hat=beta,
        mu_hat=mu,
        sigma11=sigma11,
        sigma12=sigma12,
        sigma22=sigma22,
    )


def partial_corr_mle(s: SufficientStats) -> float:
    """MLE r* of the partial correlation from the sufficient statistic."""
    if s.xi112_hat <= 0:
        raise DegenerateDesignError(
            "tested predictor is collinear with the conditioning set (Xi_11.2 = 0)"
        )
    scaled_sigma2 = (s.n - s.p - 1) / (s.n - 1) * s.sigma2_hat
    denom = np.sqrt(scaled_sigma2 + s.gamma1_hat**2 * s.xi112_hat)
    if denom == 0:
        return 0.0
    return float(s.gamma1_hat * np.sqrt(s.xi112_hat) / denom)


def t_statistic(r: float, n: int, p: int) -> TestSummary:
    """t1 = sqrt(n-p-1) r / sqrt(1-r^2), packaged with its (n, p)."""
    if abs(r) >= 1:
        raise ValueError(f"|r*| = 1 gives an infinite statistic (r*={r})")
    df = n - p - 1
    t1 = np.sqrt(df) * r / np.sqrt(1.0 - r * r)
    return TestSummary(t1=float(t1), n=n, p=p)


def r_from_t(t: float, n: int, p: int) -> float:
    """Inverse of t_statistic: v(t1) = t1 / sqrt(t1^2 + n - p - 1)."""
    df = n - p - 1
    if df < 1:
        raise ValueError("need n - p - 1 >= 1")
    return float(t / np.sqrt(t * t + df))


def omega_from_rho(rho):
    """Standardized effect size omega = rho / sqrt(1 - rho^2)."""
    rho = np.asarray(rho, dtype=float)
    if np.any(np.abs(rho) >= 1):
        raise ValueError("omega_from_rho requires |rho| < 1")
    out = rho / np.sqrt(1.0 - rho * rho)
    return float(out) if out.ndim == 0 else out


def rho_from_omega(omega):
    """Inverse transform rho = omega / sqrt(1 + omega^2)."""
    omega = np.asarray(omega, dtype=float)
    out = omega / np.sqrt(1.0 + omega * omega)
    return float(out) if out.ndim == 0 else out


def lambda_from_omega(omega, n: int, p: int):
    """Noncentrality lambda = sqrt(n - p - 1) * omega."""
    df = n - p - 1
    if df < 1:
        raise ValueError("need n - p - 1 >= 1")
    omega = np.asarray(omega, dtype=float)
    out = np.sqrt(df) * omega
    return float(out) if out.ndim == 0 else out


def rho_from_lambda(lam, n: int, p: int):
    """u(lambda) = lambda / sqrt(n - p - 1 + lambda^2)."""
    df = n - p - 1
    if df < 1:
        raise ValueError("need n - p - 1 >= 1")
    lam = np.asarray(lam, dtype=float)
    out = lam / np.sqrt(df + lam * lam)
    return float(out) if out.ndim == 0 else out


def fisher_z(r):
    """Fisher's variance-stabilizing transform z = atanh(r)."""
    r = np.asarray(r, dtype=float)
    if np.any(np.abs(r) >= 1):
        raise ValueError("fisher_z requires |r| < 1")
    out = np.arctanh(r)
    return float(out) if out.ndim == 0 else out
