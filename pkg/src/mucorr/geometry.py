"""Angle-parameterized correlation structures.

A standardized variable is a unit vector, so a set of variables is fixed up
to rotation by its pairwise angles and their correlation matrix is the
matrix of cosines. This module turns angles into correlation matrices and
vectors, samples MCC over angle grids (surfaces, profiles, contours), and
computes parallelotope volumes, which coincide with MUC for standardized
vectors.

Angles are in degrees. Pairs are ordered lexicographically:
``(0, 1), (0, 2), ..., (1, 2), ...``. For three variables ``a, b, c`` the
angles are named ``alpha`` (a-b), ``beta`` (b-c) and ``gamma`` (a-c).
"""

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.linalg import null_space

from ._linalg import lu_det
from ._validation import as_vectors
from .exceptions import (
    DimensionError,
    EmptyIntersectionError,
    InvalidInputError,
    NotPSDError,
    RangeError,
)
from .measures import FEASIBILITY_TOL, mcc_squared_triple

PSD_TOL = 1e-10
RANK_CUTOFF = 1e-12


def cosd(deg):
    """Cosine of an angle in degrees, exact at 0, 60, 90, 120 and 180.

    Values satisfy ``cosd(180 - x) == -cosd(x)`` bit for bit.
    """
    d = np.mod(np.abs(np.asarray(deg, dtype=float)), 360.0)
    d = np.where(d > 180.0, 360.0 - d, d)
    flip = d > 90.0
    base = np.where(flip, 180.0 - d, d)
    out = np.cos(np.radians(base))
    out = np.where(base == 90.0, 0.0, out)
    out = np.where(base == 60.0, 0.5, out)
    out = np.where(base == 0.0, 1.0, out)
    out = np.where(flip, -out, out)
    return out[()] if out.ndim == 0 else out


def sind(deg):
    return cosd(90.0 - np.asarray(deg, dtype=float))


def _check_angles(angles):
    a = np.atleast_1d(np.asarray(angles, dtype=float))
    if not np.all(np.isfinite(a)) or np.any(a < 0.0) or np.any(a > 180.0):
        raise RangeError(f"angles must lie in [0, 180] degrees, got {a.tolist()}")
    return a


def _check_step(step):
    if step <= 0 or not math.isclose(180.0 / step, round(180.0 / step), abs_tol=1e-9):
        raise RangeError(f"step must divide 180 degrees, got {step}")
    return int(round(180.0 / step))


class AngleCorrelation(NamedTuple):
    matrix: np.ndarray
    feasible: bool
    min_eigenvalue: float


def angles_to_corr(angles):
    """Cosine matrix of pairwise angles, flagged feasible when it is PSD."""
    a = _check_angles(angles)
    m = int(round((1 + math.sqrt(1 + 8 * a.size)) / 2))
    if m * (m - 1) // 2 != a.size or m < 2:
        raise InvalidInputError(f"{a.size} angles do not form a complete set of pairs")
    r = np.eye(m)
    iu = np.triu_indices(m, 1)
    r[iu] = cosd(a)
    r[(iu[1], iu[0])] = r[iu]
    lam = float(np.linalg.eigvalsh(r)[0])
    return AngleCorrelation(matrix=r, feasible=lam >= -PSD_TOL, min_eigenvalue=lam)


def embed_unit_vectors(corr, centered=False, dim=None):
    """Vectors whose Gram matrix reproduces ``corr``.

    Parameters
    ----------
    corr : array-like of shape (m, m)
        Positive semidefinite matrix.
    centered : bool, default=False
        Place the vectors in the subspace orthogonal to the all-ones vector,
        so they are their own standardized versions and can be fed to the
        data-level routines as series. This costs one extra dimension.
    dim : int, optional
        Minimum output dimension (zero padded).

    Returns
    -------
    ndarray of shape (m, d)
        One vector per row; ``d`` is the numerical rank of ``corr`` (plus
        one when ``centered``), or ``dim`` if larger.
    """
    r = np.asarray(corr, dtype=float)
    if r.ndim != 2 or r.shape[0] != r.shape[1]:
        raise InvalidInputError(f"expected a square matrix, got shape {r.shape}")
    lam, vec = np.linalg.eigh(0.5 * (r + r.T))
    if lam[0] < -PSD_TOL:
        raise NotPSDError(f"matrix has eigenvalue {lam[0]:.3e}")
    keep = lam > RANK_CUTOFF
    x = vec[:, keep] * np.sqrt(lam[keep])
    rank = x.shape[1]
    if centered:
        d = max(rank + 1, dim or 0)
        basis = null_space(np.ones((1, d)))[:, :rank]
        return x @ basis.T
    d = max(rank, dim or 0)
    return np.hstack([x, np.zeros((r.shape[0], d - rank))])


def pearson_curve(step=1.0):
    """``(gamma, |cos gamma|)`` samples over [0, 180] degrees."""
    k = _check_step(step)
    gamma = np.linspace(0.0, 180.0, k + 1)
    return np.column_stack([gamma, np.abs(cosd(gamma))])


@dataclass(frozen=True)
class SurfaceGrid:
    """MCC of three variables over (beta, gamma) with alpha fixed.

    ``mcc[i, j]`` belongs to ``beta = angles[i]``, ``gamma = angles[j]``.
    Cells whose angle triple is not realizable have ``feasible`` False and
    ``mcc`` clamped to 1.
    """

    alpha: float
    step: float
    angles: np.ndarray
    mcc: np.ndarray
    feasible: np.ndarray
    raw: np.ndarray

    def interpolate(self, beta, gamma):
        """Bilinear interpolation of MCC and feasibility at (beta, gamma)."""
        beta = np.atleast_1d(np.asarray(beta, dtype=float))
        gamma = np.atleast_1d(np.asarray(gamma, dtype=float))
        last = self.angles.size - 1
        u = np.clip(beta / self.step, 0, last)
        v = np.clip(gamma / self.step, 0, last)
        i = np.minimum(np.floor(u).astype(int), last - 1)
        j = np.minimum(np.floor(v).astype(int), last - 1)
        fu, fv = u - i, v - j
        corners = [(i, j, (1 - fu) * (1 - fv)), (i + 1, j, fu * (1 - fv)),
                   (i, j + 1, (1 - fu) * fv), (i + 1, j + 1, fu * fv)]
        value = sum(w * self.mcc[a, b] for a, b, w in corners)
        feasible = np.ones(u.shape, dtype=bool)
        for a, b, w in corners:
            feasible &= (w <= 1e-12) | self.feasible[a, b]
        return value, feasible


def mcc_surface(alpha, step=1.0):
    """Three-variable MCC over the (beta, gamma) square for a fixed alpha."""
    alpha = float(_check_angles(alpha)[0])
    k = _check_step(step)
    angles = np.linspace(0.0, 180.0, k + 1)
    c = cosd(angles)
    raw = mcc_squared_triple(cosd(alpha), c[:, None], c[None, :])
    feasible = raw <= 1.0 + FEASIBILITY_TOL
    mcc = np.sqrt(np.clip(raw, 0.0, 1.0))
    return SurfaceGrid(alpha=alpha, step=float(step), angles=angles, mcc=mcc, feasible=feasible, raw=raw)


class Profile(NamedTuple):
    t: np.ndarray
    beta: np.ndarray
    gamma: np.ndarray
    mcc: np.ndarray
    feasible: np.ndarray


def _clip_to_square(p0, p1, lo=0.0, hi=180.0):
    # Liang-Barsky
    d = p1 - p0
    t0, t1 = 0.0, 1.0
    for k in range(2):
        for pk, qk in ((-d[k], p0[k] - lo), (d[k], hi - p0[k])):
            if pk == 0.0:
                if qk < 0.0:
                    return None
            else:
                t = qk / pk
                if pk < 0.0:
                    t0 = max(t0, t)
                else:
                    t1 = min(t1, t)
    if t0 > t1:
        return None
    return p0 + t0 * d, p0 + t1 * d


def profile_line(grid, cut, n_samples=None):
    """Sample MCC along a straight cut through the (beta, gamma) square.

    Parameters
    ----------
    grid : SurfaceGrid
    cut : (beta1, gamma1, beta2, gamma2)
        End points of the cut in degrees; the part outside the square is
        discarded.
    n_samples : int, optional
        Defaults to one sample per grid step along the longer axis of the
        clipped cut, so axis-parallel and diagonal cuts hit grid nodes.

    Returns
    -------
    Profile
        ``t`` is the distance in degrees from the first clipped end point.
    """
    b1, g1, b2, g2 = (float(v) for v in cut)
    clipped = _clip_to_square(np.array([b1, g1]), np.array([b2, g2]))
    if clipped is None:
        raise EmptyIntersectionError(f"cut {tuple(cut)} misses the [0, 180] square")
    start, end = clipped
    length = float(np.hypot(*(end - start)))
    if n_samples is None:
        n_samples = int(round(np.max(np.abs(end - start)) / grid.step)) + 1
    n_samples = max(int(n_samples), 1)
    beta = np.linspace(start[0], end[0], n_samples)
    gamma = np.linspace(start[1], end[1], n_samples)
    t = np.linspace(0.0, length, n_samples)
    mcc, feasible = grid.interpolate(beta, gamma)
    return Profile(t=t, beta=beta, gamma=gamma, mcc=mcc, feasible=feasible)


@dataclass(frozen=True)
class ContourSet:
    level: float
    polylines: list  # of (k, 2) arrays of (beta, gamma)


def contour_lines(grid, levels):
    """Iso-MCC polylines over the feasible part of a surface.

    Marching squares with linear edge interpolation; cells touching an
    infeasible node are skipped.
    """
    from skimage.measure import find_contours

    out = []
    for level in levels:
        level = float(level)
        if not 0.0 < level < 1.0:
            raise RangeError(f"contour level must lie in (0, 1), got {level}")
        lines = find_contours(grid.mcc, level, mask=grid.feasible)
        out.append(ContourSet(level=level, polylines=[line * grid.step for line in lines]))
    return out


def parallelotope_volume(vecs):
    """Volume of the parallelotope spanned by the rows of ``vecs``: sqrt(det Gram)."""
    mat = as_vectors(vecs)
    if mat.shape[0] > mat.shape[1]:
        raise DimensionError(f"{mat.shape[0]} vectors in dimension {mat.shape[1]}")
    return float(np.sqrt(max(0.0, lu_det(mat @ mat.T))))


def parallelotope_volume_qr(vecs):
    """Same volume as :func:`parallelotope_volume`, from a QR factorization."""
    mat = as_vectors(vecs)
    if mat.shape[0] > mat.shape[1]:
        raise DimensionError(f"{mat.shape[0]} vectors in dimension {mat.shape[1]}")
    r = np.linalg.qr(mat.T, mode="r")
    return float(np.prod(np.abs(np.diag(r))))


def dihedral_vectors(alpha, beta, theta):
    """Unit vectors ``a, b, c`` in 3-D with angle(a, b) = alpha, angle(b, c) = beta
    and dihedral angle theta between the planes (a, b) and (b, c)."""
    b = np.array([1.0, 0.0, 0.0])
    a = np.array([cosd(alpha), sind(alpha), 0.0])
    c = np.array([cosd(beta), sind(beta) * cosd(theta), sind(beta) * sind(theta)])
    return a, b, c


def dihedral_curve(alpha, beta, step=1.0):
    """Squared three-variable MCC as the (b, c) plane turns away from the (a, b) plane.

    Returns ``(theta, mcc^2)`` rows for theta over [0, 90] degrees. For
    alpha, beta strictly inside (0, 90) the values strictly decrease.
    """
    for name, v in (("alpha", alpha), ("beta", beta)):
        if not 0.0 < v < 90.0:
            raise RangeError(f"{name} must lie strictly between 0 and 90 degrees, got {v}")
    k = _check_step(2 * step)
    thetas = np.linspace(0.0, 90.0, k + 1)
    rows = []
    for theta in thetas:
        a, b, c = dihedral_vectors(alpha, beta, theta)
        rows.append((theta, float(mcc_squared_triple(a @ b, b @ c, a @ c))))
    return np.array(rows)
