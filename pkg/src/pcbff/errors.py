"""Exception types shared across the package.

The CLI maps these onto its exit-code contract: bad user input exits 2
(plain ValueError), numerical failures exit 3, model/rank problems exit 4.
"""


class PcbffError(Exception):
    """Base class for package-specific failures."""


class NumericalError(PcbffError):
    """A numerical routine failed to converge or produced non-finite values."""


class SingularDesignError(PcbffError):
    """The design matrix [1 X] is rank deficient."""

    def __init__(self, message, columns=None):
        super().__init__(message)
        self.columns = tuple(columns) if columns is not None else ()


class DegenerateDesignError(SingularDesignError):
    """The tested predictor is collinear with the conditioning set."""


class CovarianceConstructionError(PcbffError):
    """A requested correlation structure is not positive definite."""

    def __init__(self, message, minor=None):
        super().__init__(message)
        self.minor = minor
