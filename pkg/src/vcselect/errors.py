"""Exception and warning types shared across the package."""


class VcselectError(Exception):
    """Base class for all errors raised by this package."""


class DataValidationError(VcselectError, ValueError):
    """A dataset violates a structural invariant."""


class NonFiniteError(DataValidationError):
    """A dataset cell is NaN or infinite."""


class LengthMismatchError(DataValidationError):
    """y, X or blocks disagree on the number of rows."""


class EmptyStratumError(DataValidationError):
    """A declared block level has no rows."""


class ZeroVarianceError(VcselectError, ValueError):
    """A column (or the response) is constant where variation is required."""

    def __init__(self, column):
        super().__init__(f"column {column!r} has zero variance")
        self.column = column


class SingularCovarianceError(VcselectError, ValueError):
    """The covariate covariance matrix is not positive definite."""


class MissingColumnError(VcselectError, KeyError):
    """A requested column is absent from the dataset."""

    def __init__(self, column):
        super().__init__(column)
        self.column = column

    def __str__(self):
        return f"missing column {self.column!r}"


class ParseError(VcselectError, ValueError):
    """A CSV cell could not be parsed."""

    def __init__(self, row, col, message=""):
        detail = f" ({message})" if message else ""
        super().__init__(f"cannot parse row {row}, column {col!r}{detail}")
        self.row = row
        self.col = col


class StratumTooSmallError(VcselectError, ValueError):
    """Stratified resampling cannot give every block level a slot."""


class LossExceedsBoundError(VcselectError, ValueError):
    """A squared error exceeds the fixed discretization bound B."""


class DomainError(VcselectError, ValueError):
    """Arguments leave the bound formula's domain (e.g. d > 2ne)."""


class AllDomainError(DomainError):
    """No (c, d) pair in the search region is feasible."""


class TooFewRowsError(VcselectError, ValueError):
    """Not enough rows for the requested fold count."""


class NoModelWithinTError(VcselectError, ValueError):
    """No model's |q - round(d_hat)| falls within the threshold t."""


class DesignPointsWarning(UserWarning):
    """Design points were cleaned up (deduplicated/sorted) or look extreme."""


class DegenerateCurveWarning(UserWarning):
    """Every point of the discrepancy curve is zero; d_hat pinned to 1."""
