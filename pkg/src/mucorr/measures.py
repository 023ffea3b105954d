"""Correlation and Gram matrices, and MCC/MUC from the correlation determinant.

For non-constant variables ``a_1..a_m`` with correlation matrix ``R``::

    muc^2 = det(R)          mcc^2 = 1 - det(R)

``mcc`` measures joint linear correlation and ``muc`` joint linear
irrelevance; both lie in [0, 1].
"""

from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted, validate_data

from ._linalg import clamp_unit_interval, lu_det
from ._validation import as_variables, as_vectors, check_nonconstant
from .exceptions import DomainError, InvalidInputError, RankError

#: raw three-variable value above 1 by more than this is not realizable
FEASIBILITY_TOL = 1e-12


class Route(str, Enum):
    DETERMINANT = "determinant"
    MINORS = "minors"
    IPD = "ipd"


@dataclass(frozen=True)
class CorrelationReport:
    mcc: float
    muc: float
    muc_squared: float
    route: Route
    m: int
    n: int

    @property
    def mcc_squared(self):
        return 1.0 - self.muc_squared

    def as_dict(self):
        return {
            "mcc": self.mcc,
            "muc": self.muc,
            "muc_squared": self.muc_squared,
            "route": self.route.value,
            "m": self.m,
            "n": self.n,
        }


def report_from_muc_squared(muc_squared, route, m, n):
    muc_squared = clamp_unit_interval(muc_squared, what="muc^2")
    return CorrelationReport(
        mcc=float(np.sqrt(1.0 - muc_squared)),
        muc=float(np.sqrt(muc_squared)),
        muc_squared=muc_squared,
        route=Route(route),
        m=m,
        n=n,
    )


def standardized_rows(vars_):
    """Validate variables and return their standardized rows as an (m, n) array."""
    mat = as_variables(vars_, min_count=1)
    check_nonconstant(mat)
    dev = mat - mat.mean(axis=1, keepdims=True)
    return dev / np.linalg.norm(dev, axis=1, keepdims=True)


def correlation_from_standardized(z):
    r = z @ z.T
    r = 0.5 * (r + r.T)
    np.fill_diagonal(r, 1.0)
    return np.clip(r, -1.0, 1.0)


def correlation_matrix(vars_):
    """Pairwise Pearson correlation matrix of ``vars_`` (one series per row)."""
    z = standardized_rows(vars_)
    if z.shape[0] < 2:
        raise InvalidInputError("need at least 2 variables")
    return correlation_from_standardized(z)


def gram_matrix(vecs):
    mat = as_vectors(vecs)
    g = mat @ mat.T
    return 0.5 * (g + g.T)


class Mcc3(NamedTuple):
    """Three-variable correlation evaluated from a correlation triple.

    ``raw`` is the unclamped squared value; ``feasible`` is False when
    ``raw`` exceeds 1, meaning no three vectors realize the triple.
    """

    mcc: float
    raw: float
    feasible: bool


def mcc_squared_triple(r_ab, r_bc, r_ac):
    """Unclamped three-variable squared correlation; works elementwise on arrays."""
    # grouped so swapping r_bc and r_ac is exact
    return r_ab**2 + (r_bc**2 + r_ac**2) - 2.0 * r_ab * (r_bc * r_ac)


def mcc3(r_ab, r_bc, r_ac):
    """Multivariate correlation of three variables from their pairwise correlations."""
    for r in (r_ab, r_bc, r_ac):
        if not (-1.0 <= r <= 1.0):
            raise DomainError(f"correlation {r!r} outside [-1, 1]")
    raw = float(mcc_squared_triple(r_ab, r_bc, r_ac))
    return Mcc3(
        mcc=float(np.sqrt(min(1.0, max(0.0, raw)))),
        raw=raw,
        feasible=raw <= 1.0 + FEASIBILITY_TOL,
    )


def muc_det(vars_):
    """MCC and MUC through the determinant of the correlation matrix.

    Parameters
    ----------
    vars_ : sequence of array-like
        ``m`` series of common length ``n`` with ``2 <= m <= n``.

    Returns
    -------
    CorrelationReport
        With ``route == Route.DETERMINANT``.
    """
    z = standardized_rows(vars_)
    m, n = z.shape
    if m < 2:
        raise InvalidInputError("need at least 2 variables")
    if m > n:
        raise RankError(f"{m} variables but only {n} observations")
    det = lu_det(correlation_from_standardized(z))
    return report_from_muc_squared(det, Route.DETERMINANT, m, n)


class MultivariateCorrelation(BaseEstimator):
    """Estimate MCC/MUC of the columns of ``X``.

    Parameters
    ----------
    route : {"determinant", "minors", "ipd"}, default="determinant"
        Which equivalent computation to use. ``"minors"`` and ``"ipd"`` are
        exponential in the number of features and meant for cross-checks.

    Attributes
    ----------
    correlation_ : ndarray of shape (n_features, n_features)
    mcc_, muc_ : float
    report_ : CorrelationReport
    """

    def __init__(self, route="determinant"):
        self.route = route

    def fit(self, X, y=None):
        X = validate_data(self, X, ensure_min_samples=2, ensure_min_features=2)
        cols = list(X.T)
        route = Route(self.route)
        if route is Route.DETERMINANT:
            report = muc_det(cols)
        elif route is Route.MINORS:
            from .minors import muc_minors

            report = muc_minors(cols)
        else:
            from .ipd import muc_ipd

            report = muc_ipd(cols)
        self.correlation_ = correlation_matrix(cols)
        self.report_ = report
        self.mcc_ = report.mcc
        self.muc_ = report.muc
        return self

    def score(self, X=None, y=None):
        """Return the fitted MCC (``X`` is ignored)."""
        check_is_fitted(self)
        return self.mcc_
