"""Acceptance suite: one test per criterion, each at its stated tolerance.

Run alone with ``pytest tests/test_acceptance.py`` (or execute this file);
the terminal summary prints one PASS/FAIL line per criterion.
"""

import itertools
import math
import subprocess
import sys

import numpy as np
import pytest

from mucorr.decomposition import fit_least_squares, subset_objectives, select_subset
from mucorr.geometry import (
    angles_to_corr,
    dihedral_curve,
    embed_unit_vectors,
    mcc_surface,
    parallelotope_volume,
    parallelotope_volume_qr,
    pearson_curve,
    profile_line,
)
from mucorr.ipd import enumerate_partition_terms, ipd_lhs
from mucorr.measures import correlation_matrix, muc_det, standardized_rows
from mucorr.minors import minor_sum, muc_minors, phi_increment


def rel(a, b, scale=None):
    scale = max(abs(a), abs(b)) if scale is None else scale
    return abs(a - b) / scale if scale > 0 else abs(a - b)


def centered_basis(n, k, rng):
    q, _ = np.linalg.qr(np.column_stack([np.ones(n), rng.normal(size=(n, k))]))
    return q[:, 1:].T


@pytest.mark.criterion(1, "equal-MCC angle triples")
def test_equal_mcc_triples(record_property):
    reports = [muc_det(embed_unit_vectors(angles_to_corr(a).matrix, centered=True))
               for a in ([45, 45, 60], [30, 90, 90])]
    for rep in reports:
        assert abs(rep.muc_squared - 0.25) <= 1e-12
        assert abs(rep.mcc_squared - 0.75) <= 1e-12
    gap = abs(reports[0].mcc - reports[1].mcc)
    record_property("mcc_gap", f"{gap:.1e}")
    assert gap <= 1e-12


@pytest.mark.criterion(2, "three-route equality")
def test_three_routes(record_property):
    rng = np.random.default_rng(20)
    worst = 0.0
    for m in range(2, 7):
        n = m + 3
        for _ in range(500):
            a = rng.normal(size=(m, n))
            ipd, ms, gd = ipd_lhs(a), minor_sum(a), np.linalg.det(a @ a.T)
            worst = max(worst, rel(ipd, ms), rel(ms, gd))

            raw = rng.normal(size=(m, n)) * rng.uniform(0.1, 10, size=(m, 1)) + rng.normal(size=(m, 1))
            det_r = np.linalg.det(correlation_matrix(raw))
            worst = max(worst, rel(det_r, minor_sum(standardized_rows(raw), standardized=True)))
    record_property("max_rel_err", f"{worst:.1e}")
    assert worst <= 1e-8


@pytest.mark.criterion(3, "increment from appending a row")
def test_phi_increment(record_property):
    rng = np.random.default_rng(30)
    worst = 0.0
    for _ in range(200):
        m = int(rng.integers(1, 5))
        n = int(rng.integers(m + 1, 11))
        z = standardized_rows(rng.normal(size=(m + 1, n)))
        base = minor_sum(z[:m])
        phi = phi_increment(z[:m], z[m])
        worst = max(worst, rel(phi, base - minor_sum(z), scale=base))
    record_property("max_rel_err", f"{worst:.1e}")
    assert worst <= 1e-9


@pytest.mark.criterion(4, "property suite")
def test_property_suite(record_property):
    rng = np.random.default_rng(40)

    # appending a variable never lowers mcc^2
    worst_drop = 0.0
    for _ in range(1000):
        m = int(rng.integers(2, 6))
        v = rng.normal(size=(m + 1, int(rng.integers(m + 2, 15))))
        v[m] += rng.normal() * v[int(rng.integers(m))]
        worst_drop = max(worst_drop, muc_det(v[:m]).mcc_squared - muc_det(v).mcc_squared)
    assert worst_drop <= 1e-12

    # linear dependence gives mcc = 1; centered orthogonal sets give mcc = 0
    for _ in range(100):
        m = int(rng.integers(2, 6))
        v = rng.normal(size=(m, 12))
        dependent = np.vstack([v, rng.normal(size=m) @ v + rng.normal()])
        assert muc_det(dependent).mcc >= 1 - 1e-8
        assert muc_det(centered_basis(12, m + 1, rng)).mcc <= 1e-10

    # appended variable: orthogonal to the span gives the minimum, inside it gives 1
    for _ in range(100):
        k = int(rng.integers(2, 5))
        n = 15
        base = rng.normal(size=(k, n))
        q, _ = np.linalg.qr(np.column_stack([np.ones(n), base.T, rng.normal(size=n)]))
        perp = q[:, -1]
        inside = rng.normal(size=k) @ base + 3.0
        floor = muc_det(base).mcc_squared
        assert abs(muc_det(np.vstack([base, perp])).mcc_squared - floor) <= 1e-10
        assert abs(muc_det(np.vstack([base, inside])).mcc_squared - 1) <= 1e-10

    # turning the (b, c) plane away from the (a, b) plane lowers mcc^2
    steps = np.diff(dihedral_curve(50, 70, step=1)[:, 1])
    record_property("max_step", f"{steps.max():.2e}")
    assert np.all(steps < -1e-12)


@pytest.mark.criterion(5, "least-squares identities")
def test_regression_identities(record_property):
    rng = np.random.default_rng(50)
    worst = 0.0
    for _ in range(200):
        m = int(rng.integers(1, 5))
        n = 50
        V = rng.normal(size=(m, n)) * rng.uniform(0.2, 5, size=(m, 1)) + rng.normal(size=(m, 1))
        y = rng.normal(size=m) @ V + rng.uniform(0.2, 3) * rng.normal(size=n) + rng.normal()
        res = fit_least_squares(V, y)

        # independent quantities
        omega_v = math.sqrt(np.linalg.det(np.corrcoef(V))) if m > 1 else 1.0
        omega_vy = math.sqrt(np.linalg.det(np.corrcoef(np.vstack([V, y]))))
        xhat = res.fitted
        r_xy = np.corrcoef(xhat, y)[0, 1]
        var_y = np.var(y)
        var_xhat = np.var(xhat)
        cov_xy = np.mean((xhat - xhat.mean()) * (y - y.mean()))

        worst = max(
            worst,
            rel(res.mse, var_y * omega_vy**2 / omega_v**2),
            rel(res.r_squared, r_xy**2),
            rel(math.sqrt(1 - r_xy**2), omega_vy / omega_v),
            rel(var_xhat, cov_xy),
        )
    record_property("max_rel_err", f"{worst:.1e}")
    assert worst <= 1e-8


@pytest.mark.criterion(6, "ratio objective ranks subsets like MSE")
def test_ratio_ranking(record_property):
    rng = np.random.default_rng(60)
    k, n, m = 8, 60, 3
    pool = rng.normal(size=(k, n))
    pool[5] += 0.7 * pool[1]
    y = rng.normal(size=k) @ pool + 1.5 * rng.normal(size=n)

    def lstsq_mse(subset):
        design = np.column_stack([pool[list(subset)].T, np.ones(n)])
        sol, *_ = np.linalg.lstsq(design, y, rcond=None)
        resid = y - design @ sol
        return resid @ resid / n

    mse = {s: lstsq_mse(s) for s in itertools.combinations(range(k), m)}
    ratio = dict(subset_objectives(pool, y, m))
    assert len(mse) == len(ratio) == 56
    by_mse = sorted(mse, key=mse.get)
    by_ratio = sorted(ratio, key=ratio.get)
    chosen = select_subset(pool, y, m).chosen
    record_property("argmin", chosen)
    assert chosen == by_mse[0]
    assert by_ratio == by_mse


@pytest.mark.criterion(7, "square case and parallelotope volume")
def test_square_case_and_volume(record_property):
    rng = np.random.default_rng(70)
    worst_sq = 0.0
    for n in range(2, 7):
        for _ in range(20):
            v = rng.normal(size=(n, n))
            z = standardized_rows(v)
            # n centered rows in n dimensions: both sides vanish
            worst_sq = max(worst_sq, abs(muc_minors(v).muc_squared - np.linalg.det(z) ** 2),
                           abs(muc_det(v).muc_squared - np.linalg.det(z) ** 2))
            # the same identity on an unconstrained square matrix
            worst_sq = max(worst_sq, rel(minor_sum(v), np.linalg.det(v) ** 2))
    assert worst_sq <= 1e-10

    worst_vol = 0.0
    for _ in range(100):
        m = int(rng.integers(1, 7))
        vecs = rng.normal(size=(m, m + int(rng.integers(0, 4))))
        vecs /= np.linalg.norm(vecs, axis=1, keepdims=True)
        worst_vol = max(worst_vol, abs(parallelotope_volume(vecs) - parallelotope_volume_qr(vecs)))
    record_property("square_err", f"{worst_sq:.1e}")
    record_property("volume_err", f"{worst_vol:.1e}")
    assert worst_vol <= 1e-9


@pytest.mark.criterion(8, "figure data and term counts")
def test_figure_data(record_property):
    curve = pearson_curve(1.0)
    points = {float(g): float(v) for g, v in curve}
    assert points[0.0] == 1.0 and points[90.0] == 0.0 and points[180.0] == 1.0

    grid = mcc_surface(90, step=1)
    i = int(np.flatnonzero(grid.angles == 90.0)[0])
    assert grid.mcc[i, i] == 0.0 and grid.feasible[i, i]
    prof = profile_line(grid, (90, 0, 90, 180))
    np.testing.assert_array_equal(prof.gamma, curve[:, 0])
    gap = float(np.max(np.abs(prof.mcc - curve[:, 1])))
    assert gap <= 1e-12

    counts = [len(enumerate_partition_terms(m)) for m in (2, 3, 4)]
    record_property("term_counts", counts)
    record_property("profile_gap", f"{gap:.1e}")
    assert counts == [2, 5, 17]


@pytest.mark.criterion(9, "CLI determinism")
def test_cli_determinism(record_property):
    cmd = [sys.executable, "-m", "mucorr", "verify", "--m", "4", "--trials", "100", "--seed", "7"]
    runs = [subprocess.run(cmd, capture_output=True, timeout=120) for _ in range(2)]
    assert [r.returncode for r in runs] == [0, 0], runs[0].stderr.decode()
    record_property("bytes", len(runs[0].stdout))
    assert runs[0].stdout == runs[1].stdout
    assert runs[0].stdout.strip()


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
