"""Dataset container and validation."""

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import (
    EmptyStratumError,
    LengthMismatchError,
    MissingColumnError,
    NonFiniteError,
)


@dataclass(frozen=True)
class Dataset:
    """A regression dataset: response y, covariate matrix X, optional blocks.

    X is n x P with one name per column.  blocks, when present, holds a
    categorical label per row and marks the strata used by the restricted
    (stratified) bootstrap.
    """

    X: np.ndarray
    y: np.ndarray
    columns: tuple = ()
    blocks: Optional[np.ndarray] = None

    def __post_init__(self):
        X = np.ascontiguousarray(np.asarray(self.X, dtype=np.float64))
        if X.ndim != 2:
            raise LengthMismatchError(f"X must be 2-D, got shape {X.shape}")
        y = np.ascontiguousarray(np.asarray(self.y, dtype=np.float64))
        if y.ndim != 1:
            raise LengthMismatchError(f"y must be 1-D, got shape {y.shape}")
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "y", y)
        if not self.columns:
            object.__setattr__(
                self, "columns", tuple(f"x{j + 1}" for j in range(X.shape[1]))
            )
        else:
            object.__setattr__(self, "columns", tuple(str(c) for c in self.columns))
        if self.blocks is not None:
            object.__setattr__(self, "blocks", np.asarray(self.blocks))

    @property
    def n(self):
        return self.y.shape[0]

    @property
    def p(self):
        return self.X.shape[1]

    def column_index(self, name):
        try:
            return self.columns.index(name)
        except ValueError:
            raise MissingColumnError(name) from None

    def take_rows(self, idx):
        """Row subset (bootstrap indices allowed, duplicates kept)."""
        blocks = self.blocks[idx] if self.blocks is not None else None
        return Dataset(self.X[idx], self.y[idx], self.columns, blocks)

    def take_columns(self, cols: Sequence[int]):
        """Column subset in the given order; blocks are carried along."""
        cols = list(cols)
        names = tuple(self.columns[j] for j in cols)
        return Dataset(self.X[:, cols], self.y, names, self.blocks)


def validate_dataset(d: Dataset) -> Dataset:
    """Check structural invariants and return the dataset unchanged.

    Raises NonFiniteError, LengthMismatchError or EmptyStratumError.
    """
    n = d.y.shape[0]
    if n < 1:
        raise LengthMismatchError("dataset has no rows")
    if d.X.shape[0] != n:
        raise LengthMismatchError(
            f"X has {d.X.shape[0]} rows but y has {n}"
        )
    if len(d.columns) != d.X.shape[1]:
        raise LengthMismatchError(
            f"{len(d.columns)} column names for {d.X.shape[1]} columns"
        )
    if len(set(d.columns)) != len(d.columns):
        raise LengthMismatchError("duplicate column names")
    if not np.isfinite(d.X).all():
        bad = np.argwhere(~np.isfinite(d.X))[0]
        raise NonFiniteError(
            f"non-finite value in column {d.columns[bad[1]]!r}, row {bad[0]}"
        )
    if not np.isfinite(d.y).all():
        raise NonFiniteError("non-finite value in response")
    if d.blocks is not None:
        if d.blocks.shape[0] != n:
            raise LengthMismatchError(
                f"blocks has {d.blocks.shape[0]} entries but y has {n}"
            )
        levels, counts = np.unique(d.blocks, return_counts=True)
        if levels.size == 0:
            raise EmptyStratumError("blocks column declared but empty")
        # np.unique drops nothing, so empty strata can only arrive via a
        # categorical type carrying unused levels; plain arrays cannot.
    return d
