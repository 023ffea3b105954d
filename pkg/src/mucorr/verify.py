"""Randomized cross-checks of the three MUC routes and the append increment."""

from dataclasses import dataclass, field

import numpy as np

from ._linalg import lu_det
from .ipd import MAX_VARIABLES, ipd_lhs
from .measures import correlation_from_standardized, gram_matrix, standardized_rows
from .minors import minor_sum, phi_increment
from .exceptions import SizeError


def rel_err(a, b, scale=None):
    """``|a - b|`` relative to ``scale`` (default: the larger magnitude)."""
    scale = max(abs(a), abs(b)) if scale is None else abs(scale)
    return abs(a - b) / scale if scale > 0 else abs(a - b)


@dataclass
class IdentityCheck:
    name: str
    tol: float
    max_err: float = 0.0
    count: int = 0

    def add(self, err):
        self.max_err = max(self.max_err, float(err))
        self.count += 1

    @property
    def ok(self):
        return self.max_err <= self.tol


@dataclass
class FuzzReport:
    m: int
    n: int
    trials: int
    seed: int
    checks: list = field(default_factory=list)

    @property
    def ok(self):
        return all(c.ok for c in self.checks)

    def lines(self):
        out = [f"verify m={self.m} n={self.n} trials={self.trials} seed={self.seed}"]
        for c in self.checks:
            status = "ok" if c.ok else "FAIL"
            out.append(f"{c.name}: max_rel_err={c.max_err!r} tol={c.tol!r} checks={c.count} {status}")
        out.append("all identities within tolerance" if self.ok else "identity check failed")
        return out


def fuzz_identities(m=4, trials=100, seed=0, n=None, tol=1e-8, phi_tol=1e-9):
    """Check the partition expansion, squared-minor sum, Gram and correlation
    determinants against each other on random Gaussian data.

    Every trial draws ``m`` raw vectors of dimension ``n`` (default
    ``m + 3``) and one extra standardized row for the append increment.
    """
    if not 2 <= m <= MAX_VARIABLES:
        raise SizeError(f"m must be between 2 and {MAX_VARIABLES}, got {m}")
    n = m + 3 if n is None else n
    if n < m + 1:
        raise SizeError(f"n must exceed m, got n={n}, m={m}")
    rng = np.random.default_rng(seed)
    checks = {
        "ipd_vs_minors": IdentityCheck("ipd_vs_minors", tol),
        "minors_vs_gram_det": IdentityCheck("minors_vs_gram_det", tol),
        "corr_det_vs_minors": IdentityCheck("corr_det_vs_minors", tol),
        "ipd_vs_corr_det": IdentityCheck("ipd_vs_corr_det", tol),
        "phi_vs_minor_difference": IdentityCheck("phi_vs_minor_difference", phi_tol),
    }
    for _ in range(trials):
        raw = rng.standard_normal((m, n))
        ms = minor_sum(raw)
        checks["ipd_vs_minors"].add(rel_err(ipd_lhs(raw), ms))
        checks["minors_vs_gram_det"].add(rel_err(ms, lu_det(gram_matrix(raw))))

        z = standardized_rows(rng.standard_normal((m + 1, n)))
        head = z[:m]
        zs = minor_sum(head)
        det_r = lu_det(correlation_from_standardized(head))
        checks["corr_det_vs_minors"].add(rel_err(det_r, zs))
        checks["ipd_vs_corr_det"].add(rel_err(ipd_lhs(head), det_r))
        phi = phi_increment(head, z[m])
        checks["phi_vs_minor_difference"].add(rel_err(phi, zs - minor_sum(z), scale=zs))
    return FuzzReport(m=m, n=n, trials=trials, seed=seed, checks=list(checks.values()))
