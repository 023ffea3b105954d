"""Input validation helpers shared by the functional API and the estimators."""

import numpy as np

from .exceptions import (
    DimensionMismatchError,
    InvalidInputError,
    LengthError,
    LengthMismatchError,
    NonFiniteError,
    ZeroVarianceError,
)


def as_series(x, name="series"):
    """Return ``x`` as a finite 1-D float array with at least two entries."""
    arr = np.asarray(x, dtype=float)
    if arr.ndim != 1:
        raise InvalidInputError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if arr.size < 2:
        raise LengthError(f"{name} needs at least 2 observations, got {arr.size}")
    if not np.all(np.isfinite(arr)):
        raise NonFiniteError(f"{name} contains NaN or infinite entries")
    return arr


def as_variables(vars_, min_count=1, name="variables"):
    """Stack a sequence of series into a (m, n) array, one row per variable."""
    try:
        rows = [np.asarray(v, dtype=float) for v in vars_]
    except TypeError as exc:
        raise InvalidInputError(f"{name} must be a sequence of series") from exc
    if len(rows) < min_count:
        raise InvalidInputError(f"need at least {min_count} {name}, got {len(rows)}")
    for i, row in enumerate(rows):
        as_series(row, name=f"{name}[{i}]")
    lengths = {row.size for row in rows}
    if len(lengths) > 1:
        raise LengthMismatchError(f"{name} have unequal lengths {sorted(lengths)}")
    return np.vstack(rows)


def as_vectors(vecs, name="vectors"):
    """Stack real vectors of a common dimension into a 2-D array (no length floor)."""
    try:
        rows = [np.atleast_1d(np.asarray(v, dtype=float)) for v in vecs]
    except TypeError as exc:
        raise InvalidInputError(f"{name} must be a sequence of vectors") from exc
    if not rows:
        raise InvalidInputError(f"{name} is empty")
    dims = {row.shape for row in rows}
    if len(dims) > 1 or rows[0].ndim != 1:
        raise DimensionMismatchError(f"{name} have inconsistent shapes {sorted(dims)}")
    mat = np.vstack(rows)
    if not np.all(np.isfinite(mat)):
        raise NonFiniteError(f"{name} contain NaN or infinite entries")
    return mat


def check_nonconstant(mat, name="variable"):
    """Raise ZeroVarianceError naming the first constant row of ``mat``."""
    for i, row in enumerate(np.atleast_2d(mat)):
        if np.all(row == row[0]):
            raise ZeroVarianceError(f"{name} {i} has zero variance", index=i)


def check_standardized(mat, tol=1e-10, name="row"):
    """Check that every row is centered and unit norm."""
    mat = np.atleast_2d(mat)
    n = mat.shape[1]
    for i, row in enumerate(mat):
        if abs(row.sum()) > tol * n:
            raise InvalidInputError(f"{name} {i} is not centered (sum {row.sum():.3e})")
        if abs(np.linalg.norm(row) - 1.0) > tol:
            raise InvalidInputError(f"{name} {i} is not unit norm")
