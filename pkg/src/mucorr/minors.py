"""MUC as the sum of squared maximal minors of the standardized data matrix.

This is the slow, literal route: every strictly increasing column subset
``j_1 < ... < j_m`` contributes the square of the corresponding ``m x m``
minor. By Cauchy-Binet the sum equals the Gram determinant, which is what
:func:`mucorr.measures.muc_det` computes directly; this module exists to
check that route independently.
"""

import itertools
import math
import os

import numpy as np

from ._linalg import batched_det
from ._validation import as_vectors, check_standardized
from .exceptions import BudgetExceededError, DimensionMismatchError, InvalidInputError, RankError
from .measures import Route, report_from_muc_squared, standardized_rows

DEFAULT_MINOR_BUDGET = 10**6
BUDGET_ENV = "MUCORR_MINOR_BUDGET"
_CHUNK = 1 << 15


def minor_budget():
    """Minor enumeration cap, overridable through ``MUCORR_MINOR_BUDGET``."""
    value = os.environ.get(BUDGET_ENV)
    if value is None:
        return DEFAULT_MINOR_BUDGET
    try:
        budget = int(value)
    except ValueError as exc:
        raise InvalidInputError(f"{BUDGET_ENV} must be an integer, got {value!r}") from exc
    if budget < 1:
        raise InvalidInputError(f"{BUDGET_ENV} must be positive")
    return budget


def _check_budget(count, budget):
    budget = minor_budget() if budget is None else budget
    if count > budget:
        raise BudgetExceededError(f"{count} minors exceed the budget of {budget}", count=count)


def _chunks(iterable, size):
    it = iter(iterable)
    while True:
        block = list(itertools.islice(it, size))
        if not block:
            return
        yield block


def minor_sum(rows, budget=None, standardized=False):
    """Sum of squared ``m x m`` minors of an ``m x n`` matrix, ``m <= n``.

    Column subsets are enumerated lexicographically; each minor is an LU
    determinant of the extracted submatrix.

    Parameters
    ----------
    rows : sequence of array-like
        The ``m`` rows. Arbitrary real rows are accepted unless
        ``standardized`` is set, in which case every row must be centered
        and unit norm.
    budget : int, optional
        Maximum number of minors; defaults to :func:`minor_budget`.
    """
    mat = as_vectors(rows)
    if standardized:
        check_standardized(mat)
    m, n = mat.shape
    if m > n:
        raise RankError(f"{m} rows in dimension {n}: no maximal minors")
    _check_budget(math.comb(n, m), budget)
    total = 0.0
    for block in _chunks(itertools.combinations(range(n), m), _CHUNK):
        cols = np.asarray(block)
        sub = np.moveaxis(mat[:, cols], 1, 0)  # (k, m, m)
        total += float(np.sum(batched_det(sub) ** 2))
    return total


def muc_minors(vars_, budget=None):
    """MCC/MUC from the squared-minor sum of the standardized variables."""
    z = standardized_rows(vars_)
    m, n = z.shape
    if m < 2:
        raise InvalidInputError("need at least 2 variables")
    if m > n:
        raise RankError(f"{m} variables but only {n} observations")
    return report_from_muc_squared(minor_sum(z, budget=budget), Route.MINORS, m, n)


def phi_increment(mat, new_row, budget=None):
    """Drop in squared MUC when ``new_row`` is appended to ``mat``.

    For every (m-1)-column set ``J`` accumulates
    ``sum_{p not in J} (-1)^g(p:J) * new_row[p] * det(mat[:, sorted(J + {p})])``
    where ``g(p:J)`` counts the elements of ``J`` larger than ``p``, and
    returns the sum over ``J`` of the squared accumulations.

    Both ``mat`` rows and ``new_row`` must be standardized (centered, unit
    norm).
    """
    mat = as_vectors(mat)
    new_row = np.asarray(new_row, dtype=float)
    m, n = mat.shape
    if new_row.shape != (n,):
        raise DimensionMismatchError(f"new_row has shape {new_row.shape}, expected ({n},)")
    check_standardized(mat)
    check_standardized(new_row[None, :], name="new_row")
    if m + 1 > n:
        raise RankError(f"cannot append a row to {m} rows in dimension {n}")
    _check_budget(math.comb(n, m - 1), budget)

    phi = 0.0
    for J in itertools.combinations(range(n), m - 1):
        free = [p for p in range(n) if p not in J]
        cols = np.array([sorted(J + (p,)) for p in free])
        dets = batched_det(np.moveaxis(mat[:, cols], 1, 0))
        signs = np.array([(-1.0) ** sum(1 for j in J if j > p) for p in free])
        phi += float(np.dot(signs * new_row[free], dets)) ** 2
    return phi
