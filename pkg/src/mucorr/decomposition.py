"""Least-squares linear decomposition and MUC-ratio subset selection.

Fitting ``y ~ b_1 v_1 + ... + b_m v_m + o`` by least squares leaves a mean
square error of ``var(y) * muc^2(v_1..v_m, y) / muc^2(v_1..v_m)``. The MUC
ratio ``muc(V, y) / muc(V)`` therefore ranks predictor subsets exactly as
their MSE does, and it equals the MUC between the fit and the target.
"""

import itertools
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import LinAlgError, cho_factor, cho_solve
from sklearn.base import BaseEstimator, RegressorMixin
from sklearn.feature_selection import SelectorMixin
from sklearn.utils.validation import check_is_fitted, validate_data

from ._linalg import clamp_unit_interval, lu_det
from ._validation import as_series, as_variables, check_nonconstant
from .exceptions import (
    BudgetExceededError,
    ConstantFitError,
    DegenerateBasisError,
    InvalidInputError,
    LengthMismatchError,
    NoFeasibleSubsetError,
    NumericalError,
    RankError,
    ZeroVarianceError,
)
from .measures import correlation_from_standardized, muc_det, standardized_rows
from .stats import covariance, pearson

#: smallest admissible eigenvalue of the predictors' correlation matrix
SINGULARITY_TOL = 1e-10
#: subsets whose squared MUC falls below this are skipped during selection
DEGENERATE_MUC2 = 1e-10
EXHAUSTIVE_LIMIT = 10**5
_MSE_AGREEMENT = 1e-9
_CONSTANT_FIT = 1e-20


@dataclass(frozen=True)
class NormalEquations:
    cov_matrix: np.ndarray
    cross_cov: np.ndarray
    target_var: float


@dataclass(frozen=True)
class IdentityResiduals:
    """Absolute gaps between quantities that should coincide at the optimum.

    ``r_squared`` and ``omega`` are None when the fit is constant.
    """

    mse: float
    r_squared: float | None = None
    omega: float | None = None
    variance: float | None = None

    def max(self):
        return max(v for v in (self.mse, self.r_squared, self.omega, self.variance) if v is not None)


@dataclass(frozen=True)
class DecompositionResult:
    coefficients: np.ndarray
    intercept: float
    mse: float
    r_squared: float
    fitted: np.ndarray
    omega_ratio: float
    identity_residuals: IdentityResiduals
    normal_equations: NormalEquations = field(repr=False)

    def as_dict(self):
        res = self.identity_residuals
        return {
            "coefficients": [float(c) for c in self.coefficients],
            "intercept": self.intercept,
            "mse": self.mse,
            "r_squared": self.r_squared,
            "omega_ratio": self.omega_ratio,
            "identity_residuals": {
                "mse": res.mse,
                "r_squared": res.r_squared,
                "omega": res.omega,
                "variance": res.variance,
            },
        }


def _check_problem(predictors, target):
    V = as_variables(predictors, min_count=1, name="predictors")
    y = as_series(target, name="target")
    if y.size != V.shape[1]:
        raise LengthMismatchError(f"target has {y.size} entries, predictors have {V.shape[1]}")
    check_nonconstant(V, name="predictor")
    if np.all(y == y[0]):
        raise ZeroVarianceError("target has zero variance")
    if V.shape[0] >= y.size:
        raise RankError(f"{V.shape[0]} predictors need more than {y.size} observations")
    return V, y


def normal_equations(predictors, target):
    V, y = _check_problem(predictors, target)
    n = y.size
    Vc = V - V.mean(axis=1, keepdims=True)
    yc = y - y.mean()
    S = Vc @ Vc.T / n
    return NormalEquations(cov_matrix=0.5 * (S + S.T), cross_cov=Vc @ yc / n, target_var=float(yc @ yc / n))


def _solve(S):
    scale = 1.0 / np.sqrt(np.diag(S))
    corr = S * np.outer(scale, scale)
    if np.linalg.eigvalsh(corr)[0] <= SINGULARITY_TOL:
        raise DegenerateBasisError("predictors are collinear after centering")
    try:
        return cho_factor(S)
    except LinAlgError as exc:
        raise DegenerateBasisError("predictor covariance is not positive definite") from exc


def _omega_ratio_squared(V, y):
    z = standardized_rows(np.vstack([V, y]))
    r = correlation_from_standardized(z)
    den = lu_det(r[:-1, :-1])
    if den < DEGENERATE_MUC2:
        raise DegenerateBasisError(f"predictor MUC^2 {den:.3e} is degenerate")
    return clamp_unit_interval(lu_det(r) / den, what="MUC ratio^2")


def fit_least_squares(predictors, target):
    """Least-squares decomposition of ``target`` onto ``predictors`` plus a constant.

    Solves the normal equations ``S b = s_y`` (covariances, population
    convention) by Cholesky factorization and takes the intercept from the
    mean equation. The MSE is evaluated from the residuals and checked
    against ``var(y) - s_y' b``.

    Raises
    ------
    DegenerateBasisError
        If the predictors are collinear after centering.
    """
    V, y = _check_problem(predictors, target)
    ne = normal_equations(V, y)
    coef = cho_solve(_solve(ne.cov_matrix), ne.cross_cov)
    intercept = float(y.mean() - coef @ V.mean(axis=1))
    fitted = coef @ V + intercept
    resid = y - fitted
    mse = float(resid @ resid / y.size)
    mse_normal = ne.target_var - float(ne.cross_cov @ coef)
    if abs(mse - mse_normal) > _MSE_AGREEMENT * ne.target_var:
        raise NumericalError(f"residual MSE {mse!r} disagrees with normal-equation MSE {mse_normal!r}")

    fitted_var = float(np.var(fitted))
    ratio2 = _omega_ratio_squared(V, y)
    result = DecompositionResult(
        coefficients=coef,
        intercept=intercept,
        mse=mse,
        r_squared=min(1.0, fitted_var / ne.target_var),
        fitted=fitted,
        omega_ratio=float(np.sqrt(ratio2)),
        identity_residuals=IdentityResiduals(mse=abs(mse - ne.target_var * ratio2)),
        normal_equations=ne,
    )
    try:
        residuals = verify_decomposition_identities(result, V, y)
    except ConstantFitError:
        return result
    return DecompositionResult(**{**result.__dict__, "identity_residuals": residuals})


def verify_decomposition_identities(result, predictors, target):
    """Recompute the MUC identities of a fit through independent code paths.

    The MUCs come from correlation determinants of the raw data, the fit
    correlation from :func:`mucorr.stats.pearson` on the fitted values.

    Returns
    -------
    IdentityResiduals
        ``|mse - var(y) muc^2(V,y)/muc^2(V)|``, ``|r(xhat,y)^2 - R^2|``,
        ``|muc(xhat,y) - muc(V,y)/muc(V)|`` and ``|var(xhat) - cov(xhat,y)|``.

    Raises
    ------
    ConstantFitError
        If the fitted values are constant, which leaves their correlation
        with the target undefined.
    """
    V, y = _check_problem(predictors, target)
    xhat = np.asarray(result.fitted, dtype=float)
    var_y = float(np.var(y))
    if np.var(xhat) <= _CONSTANT_FIT * var_y:
        raise ConstantFitError("fitted values are constant; their correlation with the target is undefined")
    muc_v = muc_det(list(V)).muc_squared if V.shape[0] >= 2 else 1.0
    if muc_v < DEGENERATE_MUC2:
        raise DegenerateBasisError(f"predictor MUC^2 {muc_v:.3e} is degenerate")
    muc_vy = muc_det(list(V) + [y]).muc_squared
    ratio2 = muc_vy / muc_v
    r = pearson(xhat, y)
    return IdentityResiduals(
        mse=abs(result.mse - var_y * ratio2),
        r_squared=abs(r**2 - result.r_squared),
        omega=float(abs(np.sqrt(max(0.0, 1.0 - r**2)) - np.sqrt(ratio2))),
        variance=abs(float(np.var(xhat)) - covariance(xhat, y)),
    )


@dataclass(frozen=True)
class SelectionResult:
    chosen: tuple
    objective: float
    mse: float
    strategy: str
    trace: list

    def as_dict(self):
        return {
            "chosen": list(self.chosen),
            "objective": self.objective,
            "mse": self.mse,
            "strategy": self.strategy,
            "trace": self.trace,
        }


class _RatioEvaluator:
    """MUC ratios of predictor subsets, sharing one correlation matrix."""

    def __init__(self, pool, target):
        # the pool may hold more series than observations; only subsets must fit
        V = as_variables(pool, min_count=1, name="pool")
        y = as_series(target, name="target")
        if y.size != V.shape[1]:
            raise LengthMismatchError(f"target has {y.size} entries, pool has {V.shape[1]}")
        check_nonconstant(V, name="pool variable")
        if np.all(y == y[0]):
            raise ZeroVarianceError("target has zero variance")
        self.V, self.y = V, y
        self.r = correlation_from_standardized(standardized_rows(np.vstack([V, y])))
        self.k = V.shape[0]

    def ratio(self, subset):
        """Return the MUC ratio, or None when the subset is degenerate."""
        idx = list(subset)
        den = lu_det(self.r[np.ix_(idx, idx)])
        if den < DEGENERATE_MUC2:
            return None
        full = idx + [self.k]
        num = lu_det(self.r[np.ix_(full, full)])
        return float(np.sqrt(clamp_unit_interval(num / den, what="MUC ratio^2")))


def subset_objectives(pool, target, m):
    """MUC ratio of every size-``m`` subset of ``pool``, in lexicographic order.

    Degenerate subsets map to None.
    """
    ev = _RatioEvaluator(pool, target)
    _check_subset_size(m, ev.k, ev.y.size)
    return [(subset, ev.ratio(subset)) for subset in itertools.combinations(range(ev.k), m)]


def _check_subset_size(m, k, n):
    if not 1 <= m <= k:
        raise InvalidInputError(f"subset size must be between 1 and {k}, got {m}")
    if m >= n:
        raise RankError(f"subsets of {m} predictors need more than {n} observations")


def select_subset(pool, target, m, strategy="exhaustive"):
    """Pick ``m`` predictors from ``pool`` minimizing the MUC ratio.

    Parameters
    ----------
    strategy : {"exhaustive", "greedy_forward"}
        Exhaustive search scores every subset (capped at 1e5 subsets);
        greedy forward selection adds the predictor that most lowers the
        current ratio. Ties go to the lowest index.
    """
    ev = _RatioEvaluator(pool, target)
    _check_subset_size(m, ev.k, ev.y.size)
    trace = []
    if strategy == "exhaustive":
        count = math.comb(ev.k, m)
        if count > EXHAUSTIVE_LIMIT:
            raise BudgetExceededError(f"{count} subsets exceed the exhaustive limit {EXHAUSTIVE_LIMIT}", count=count)
        best, best_obj = None, np.inf
        for subset in itertools.combinations(range(ev.k), m):
            obj = ev.ratio(subset)
            if obj is None:
                trace.append({"subset": list(subset), "skipped": "degenerate"})
            elif obj < best_obj:
                best, best_obj = subset, obj
    elif strategy in ("greedy_forward", "greedy"):
        strategy = "greedy_forward"
        best = ()
        for step in range(m):
            cand, cand_obj = None, np.inf
            for j in range(ev.k):
                if j in best:
                    continue
                obj = ev.ratio(best + (j,))
                if obj is not None and obj < cand_obj:
                    cand, cand_obj = j, obj
            if cand is None:
                raise NoFeasibleSubsetError(f"no non-degenerate predictor to add at step {step + 1}")
            best = best + (cand,)
            best_obj = cand_obj
            trace.append({"step": step + 1, "added": cand, "objective": cand_obj})
        best = tuple(sorted(best))
    else:
        raise InvalidInputError(f"unknown strategy {strategy!r}")

    if best is None:
        raise NoFeasibleSubsetError(f"every subset of size {m} is degenerate")
    fit = fit_least_squares(ev.V[list(best)], ev.y)
    return SelectionResult(chosen=best, objective=best_obj, mse=fit.mse, strategy=strategy, trace=trace)


class LinearDecomposition(RegressorMixin, BaseEstimator):
    """Least-squares regressor exposing the MUC identities of its fit.

    Attributes
    ----------
    coef_ : ndarray of shape (n_features,)
    intercept_ : float
    mse_ : float
        Training mean square error (population divisor).
    r_squared_ : float
        Training coefficient of multiple determination.
    omega_ratio_ : float
        ``muc(X, y) / muc(X)``; equals ``sqrt(1 - r_squared_)``.
    result_ : DecompositionResult
    """

    def fit(self, X, y):
        X, y = validate_data(self, X, y, y_numeric=True, ensure_min_samples=2)
        result = fit_least_squares(list(X.T), y)
        self.result_ = result
        self.coef_ = result.coefficients
        self.intercept_ = result.intercept
        self.mse_ = result.mse
        self.r_squared_ = result.r_squared
        self.omega_ratio_ = result.omega_ratio
        return self

    def predict(self, X):
        check_is_fitted(self)
        X = validate_data(self, X, reset=False)
        return X @ self.coef_ + self.intercept_


class MUCSubsetSelector(SelectorMixin, BaseEstimator):
    """Keep the ``n_features_to_select`` columns with the smallest MUC ratio to ``y``.

    Minimizing the ratio is the same as minimizing the least-squares MSE of
    ``y`` on the selected columns.

    Parameters
    ----------
    n_features_to_select : int, default=1
    strategy : {"exhaustive", "greedy_forward"}, default="exhaustive"

    Attributes
    ----------
    support_ : ndarray of bool
    objective_ : float
    selection_ : SelectionResult
    """

    def __init__(self, n_features_to_select=1, strategy="exhaustive"):
        self.n_features_to_select = n_features_to_select
        self.strategy = strategy

    def fit(self, X, y):
        X, y = validate_data(self, X, y, y_numeric=True, ensure_min_samples=2)
        sel = select_subset(list(X.T), y, self.n_features_to_select, strategy=self.strategy)
        self.selection_ = sel
        self.objective_ = sel.objective
        self.support_ = np.zeros(X.shape[1], dtype=bool)
        self.support_[list(sel.chosen)] = True
        return self

    def _get_support_mask(self):
        check_is_fitted(self)
        return self.support_
