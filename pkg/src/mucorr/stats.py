"""Univariate and bivariate statistics.

All moments use the population convention (divisor ``n``). Standardized
vectors are centered and scaled to unit Euclidean norm, so the dot product
of two of them is exactly their Pearson correlation.
"""

from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator, OneToOneFeatureMixin, TransformerMixin
from sklearn.utils.validation import check_is_fitted, validate_data

from ._validation import as_series, check_nonconstant
from .exceptions import LengthMismatchError, NumericalError, ZeroVarianceError

#: correlations that leave [-1, 1] by no more than this are clamped
CLAMP_TOL = 1e-12


@dataclass(frozen=True)
class SeriesStats:
    mean: float
    std: float
    norm_dev: float


def series_stats(x):
    """Mean, population standard deviation and centered norm of ``x``."""
    x = as_series(x)
    mean = float(np.mean(x))
    norm_dev = float(np.linalg.norm(x - mean))
    return SeriesStats(mean=mean, std=norm_dev / np.sqrt(x.size), norm_dev=norm_dev)


def standardize(x):
    """Center ``x`` and scale it to unit Euclidean norm.

    Raises
    ------
    ZeroVarianceError
        If every entry of ``x`` is equal.
    """
    x = as_series(x)
    if np.all(x == x[0]):
        raise ZeroVarianceError("series has zero variance")
    dev = x - x.mean()
    return dev / np.linalg.norm(dev)


def _pair(x, y):
    x = as_series(x, "x")
    y = as_series(y, "y")
    if x.size != y.size:
        raise LengthMismatchError(f"series lengths differ: {x.size} != {y.size}")
    return x, y


def covariance(x, y):
    x, y = _pair(x, y)
    return float(np.dot(x - x.mean(), y - y.mean()) / x.size)


def clamp_correlation(r, tol=CLAMP_TOL):
    """Clip a correlation that rounding pushed just outside [-1, 1]."""
    if abs(r) > 1.0 + tol:
        raise NumericalError(f"correlation {r!r} outside [-1, 1] beyond rounding")
    return float(min(1.0, max(-1.0, r)))


def pearson(x, y):
    """Pearson correlation, computed as the dot product of standardized vectors."""
    x, y = _pair(x, y)
    return clamp_correlation(float(np.dot(standardize(x), standardize(y))))


class UnitNormStandardizer(OneToOneFeatureMixin, TransformerMixin, BaseEstimator):
    """Center each column and scale it to unit Euclidean norm.

    Unlike :class:`sklearn.preprocessing.StandardScaler` the scale is the
    centered column norm ``sigma * sqrt(n)`` of the training data, so the
    transformed training columns have pairwise dot products equal to their
    Pearson correlations.

    Attributes
    ----------
    mean_ : ndarray of shape (n_features,)
    norm_ : ndarray of shape (n_features,)
        Euclidean norm of each centered training column.
    """

    def fit(self, X, y=None):
        X = validate_data(self, X, ensure_min_samples=2)
        check_nonconstant(X.T, name="column")
        self.mean_ = X.mean(axis=0)
        self.norm_ = np.linalg.norm(X - self.mean_, axis=0)
        return self

    def transform(self, X):
        check_is_fitted(self)
        X = validate_data(self, X, reset=False)
        return (X - self.mean_) / self.norm_

    def inverse_transform(self, X):
        check_is_fitted(self)
        return np.asarray(X, dtype=float) * self.norm_ + self.mean_
