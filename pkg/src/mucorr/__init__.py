"""Multivariate correlation (MCC) and uncorrelation (MUC) coefficients.

``mcc^2 = 1 - det(R)`` and ``muc^2 = det(R)`` for the correlation matrix
``R`` of the variables. Three independent routes compute ``muc^2``: the
correlation determinant (:func:`muc_det`), the sum of squared maximal minors
of the standardized data (:func:`muc_minors`) and a signed expansion over
set partitions (:func:`muc_ipd`).
"""

from .decomposition import (
    LinearDecomposition,
    MUCSubsetSelector,
    fit_least_squares,
    select_subset,
    verify_decomposition_identities,
)
from .geometry import (
    angles_to_corr,
    contour_lines,
    dihedral_curve,
    embed_unit_vectors,
    mcc_surface,
    parallelotope_volume,
    pearson_curve,
    profile_line,
)
from .exceptions import (
    BudgetExceededError,
    InvalidInputError,
    MucorrError,
    NoFeasibleSubsetError,
    NumericalError,
)
from .ipd import circular_product, enumerate_partition_terms, ipd_closed_form, ipd_lhs, muc_ipd
from .measures import (
    CorrelationReport,
    MultivariateCorrelation,
    Route,
    correlation_matrix,
    gram_matrix,
    mcc3,
    muc_det,
)
from .minors import minor_sum, muc_minors, phi_increment
from .stats import UnitNormStandardizer, covariance, pearson, series_stats, standardize

__version__ = "0.1.0"

__all__ = [
    "BudgetExceededError",
    "InvalidInputError",
    "MucorrError",
    "NoFeasibleSubsetError",
    "NumericalError",
    "CorrelationReport",
    "LinearDecomposition",
    "MUCSubsetSelector",
    "MultivariateCorrelation",
    "Route",
    "UnitNormStandardizer",
    "angles_to_corr",
    "circular_product",
    "contour_lines",
    "correlation_matrix",
    "covariance",
    "embed_unit_vectors",
    "enumerate_partition_terms",
    "fit_least_squares",
    "gram_matrix",
    "ipd_closed_form",
    "ipd_lhs",
    "mcc3",
    "mcc_surface",
    "minor_sum",
    "muc_det",
    "muc_ipd",
    "muc_minors",
    "parallelotope_volume",
    "pearson",
    "pearson_curve",
    "phi_increment",
    "profile_line",
    "dihedral_curve",
    "select_subset",
    "series_stats",
    "standardize",
    "verify_decomposition_identities",
]
