"""Scalar special functions backing the densities and Bayes factors.

Everything here accepts floats or numpy arrays and evaluates elementwise.
The Gauss hypergeometric series is implemented directly (power series with
a per-element stopping rule plus the Pfaff transformation for negative
arguments); the remaining functions lean on scipy.special.
"""

import numpy as np
from scipy import special

from .errors import NumericalError

_SERIES_TOL = 1e-15
_SERIES_MAXTERMS = 10_000


def log_gamma(x):
    """ln Gamma(x) for x > 0."""
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)) or np.any(x <= 0):
        raise ValueError("log_gamma requires finite x > 0")
    out = special.gammaln(x)
    return float(out) if out.ndim == 0 else out


def log_beta(a, b):
    """ln B(a, b) = ln Gamma(a) + ln Gamma(b) - ln Gamma(a+b), for a, b > 0."""
    return log_gamma(a) + log_gamma(b) - log_gamma(np.asarray(a, dtype=float) + b)


def _series_2f1(a, b, c, x):
    """Power series for 2F1(a, b; c; x) on 0 <= x < 1.

    Terms are accumulated per element until |term|/|sum| < 1e-15, so each
    element's value is independent of what else is in the batch.
    """
    x = np.asarray(x, dtype=float)
    total = np.ones_like(x)
    term = np.ones_like(x)
    active = np.ones(x.shape, dtype=bool)
    k = 0
    while k < _SERIES_MAXTERMS:
        term = term * (((a + k) * (b + k)) / ((c + k) * (k + 1.0))) * x
        np.add(total, term, out=total, where=active)
        active &= np.abs(term) >= _SERIES_TOL * np.abs(total)
        if not active.any():
            return total
        k += 1
    bad = x[active]
    raise NumericalError(
        f"2F1 series did not converge within {_SERIES_MAXTERMS} terms "
        f"(a={a}, b={b}, c={c}, x={bad[:5]!r})"
    )


def gauss_2f1(a, b, c, x):
    """Gauss hypergeometric function 2F1(a, b; c; x) for x < 1.

    Direct power series on [0, 1); for x < 0 the Pfaff transformation
    2F1(a,b;c;x) = (1-x)^(-b) 2F1(c-a, b; c; x/(x-1)) maps the argument
    back into [0, 1).
    """
    if c <= 0 and c == np.floor(c):
        raise ValueError(f"2F1 undefined for c a non-positive integer (c={c})")
    x = np.asarray(x, dtype=float)
    if np.any(x >= 1) or not np.all(np.isfinite(x)):
        raise ValueError("gauss_2f1 requires finite x < 1")
    scalar = x.ndim == 0
    x = np.atleast_1d(x)
    out = np.empty_like(x)
    pos = x >= 0
    if pos.any():
        out[pos] = _series_2f1(a, b, c, x[pos])
    if (~pos).any():
        xn = x[~pos]
        out[~pos] = (1 - xn) ** (-b) * _series_2f1(c - a, b, c, xn / (xn - 1))
    return float(out[0]) if scalar else out


def student_t_logpdf(t, df):
    """Log density of the central Student t distribution."""
    if df <= 0:
        raise ValueError("student_t_logpdf requires df > 0")
    t = np.asarray(t, dtype=float)
    out = (
        special.gammaln((df + 1.0) / 2.0)
        - special.gammaln(df / 2.0)
        - 0.5 * np.log(df * np.pi)
        - ((df + 1.0) / 2.0) * np.log1p(t * t / df)
    )
    return float(out) if out.ndim == 0 else out


def student_t_cdf(t, df):
    """Lower-tail probability of the central Student t distribution.

    Uses the regularized incomplete beta function; the two-sided p-value
    of a statistic is 2 * (1 - student_t_cdf(abs(t), df)).
    """
    if df <= 0:
        raise ValueError("student_t_cdf requires df > 0")
    t = np.asarray(t, dtype=float)
    out = special.stdtr(df, t)
    return float(out) if out.ndim == 0 else out


def two_sided_p_value(t, df):
    """Two-sided p-value for a central-t statistic."""
    return 2.0 * student_t_cdf(-abs(t), df)


def gamma_quantile(q, shape, scale):
    """Quantile of the Gamma(shape, scale) distribution.

    Inverts the regularized lower incomplete gamma function.
    """
    if shape <= 0 or scale <= 0:
        raise ValueError("gamma_quantile requires shape > 0 and scale > 0")
    q = np.asarray(q, dtype=float)
    if np.any(q <= 0) or np.any(q >= 1):
        raise ValueError("gamma_quantile requires 0 < q < 1")
    out = special.gammaincinv(shape, q) * scale
    return float(out) if out.ndim == 0 else out


def gamma_cdf(x, shape, scale):
    """Regularized lower incomplete gamma, i.e. the Gamma(shape, scale) CDF."""
    if shape <= 0 or scale <= 0:
        raise ValueError("gamma_cdf requires shape > 0 and scale > 0")
    x = np.asarray(x, dtype=float)
    out = special.gammainc(shape, np.maximum(x, 0.0) / scale)
    return float(out) if out.ndim == 0 else out
