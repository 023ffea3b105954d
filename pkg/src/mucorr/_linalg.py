import warnings

import numpy as np
from scipy.linalg import LinAlgWarning, lu_factor

from .exceptions import NumericalError


def lu_det(a):
    """Determinant of a square matrix from its partially pivoted LU factors."""
    a = np.asarray(a, dtype=float)
    if a.shape == (0, 0):
        return 1.0
    with warnings.catch_warnings():
        # a zero pivot just means det == 0
        warnings.simplefilter("ignore", LinAlgWarning)
        lu, piv = lu_factor(a, check_finite=False)
    swaps = np.count_nonzero(piv != np.arange(piv.size))
    sign = -1.0 if swaps % 2 else 1.0
    return float(sign * np.prod(np.diag(lu)))


def batched_det(stack):
    """Determinants of a (k, m, m) stack; LAPACK getrf under the hood."""
    return np.linalg.det(stack)


def clamp_unit_interval(value, tol=1e-10, what="value"):
    """Clip rounding residue into [0, 1]; larger excursions are an error."""
    if value < -tol or value > 1.0 + tol:
        raise NumericalError(f"{what} {value!r} outside [0, 1] beyond rounding")
    return float(min(1.0, max(0.0, value)))
