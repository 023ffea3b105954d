import itertools
import math
from fractions import Fraction

import numpy as np
import pytest

from mucorr.exceptions import ArityError, DimensionMismatchError, SizeError
from mucorr.ipd import (
    canonical_cycles,
    circular_product,
    enumerate_partition_terms,
    ipd_closed_form,
    ipd_lhs,
    set_partitions,
)
from mucorr.minors import minor_sum


def cycle_lengths(perm):
    seen, out = set(), []
    for start in range(len(perm)):
        if start in seen:
            continue
        k, length = start, 0
        while k not in seen:
            seen.add(k)
            k = perm[k]
            length += 1
        out.append(length)
    return out


def expected_term_count(m):
    # permutations with cycles of length >= 3 identified up to reversal
    total = sum(Fraction(1, 2 ** sum(1 for c in cycle_lengths(p) if c >= 3))
                for p in itertools.permutations(range(m)))
    assert total.denominator == 1
    return int(total)


def leibniz_det(g):
    m = g.shape[0]
    total = 0.0
    for p in itertools.permutations(range(m)):
        sign = (-1) ** (m - len(cycle_lengths(p)))
        total += sign * np.prod([g[i, p[i]] for i in range(m)])
    return total


@pytest.mark.parametrize("m, count", [(2, 2), (3, 5), (4, 17), (5, 73)])
def test_term_counts(m, count):
    assert len(enumerate_partition_terms(m)) == count == expected_term_count(m)


def test_term_counts_larger():
    for m in (6, 7):
        assert len(enumerate_partition_terms(m)) == expected_term_count(m)


def test_bell_numbers():
    assert [sum(1 for _ in set_partitions(m)) for m in range(1, 8)] == [1, 2, 5, 15, 52, 203, 877]


def test_m3_terms():
    terms = enumerate_partition_terms(3)
    assert sum(1 for t in terms if t.singletons == (0, 1, 2)) == 1
    assert sum(1 for t in terms if len(t.pairs) == 1) == 3
    (cyc,) = [t for t in terms if t.cycles]
    assert cyc.cycles == ((0, 1, 2),) and cyc.block_count == 1 and cyc.cycle_count == 1


def test_term_invariants():
    for m in range(2, 7):
        terms = enumerate_partition_terms(m)
        assert len(set(terms)) == len(terms)
        for t in terms:
            blocks = [(s,) for s in t.singletons] + list(t.pairs) + list(t.cycles)
            assert sorted(i for b in blocks for i in b) == list(range(m))
            assert t.block_count == len(blocks)
            for c in t.cycles:
                assert c[0] == min(c) and c[1] < c[-1]
        (identity,) = [t for t in terms if t.singletons == tuple(range(m))]
        assert identity.sign(m) == 1 and identity.weight(m) == 1


def test_canonical_cycles_count():
    for p in range(3, 7):
        assert len(canonical_cycles(tuple(range(p)))) == math.factorial(p - 1) // 2


def test_size_guard():
    with pytest.raises(SizeError):
        enumerate_partition_terms(9)
    with pytest.raises(SizeError):
        enumerate_partition_terms(1)


def test_circular_product():
    assert circular_product(np.eye(4), (0, 1, 2)) == 0.0
    # unit vectors with pairwise dot 1/2
    v = np.array([[1, 0, 0], [0.5, math.sqrt(3) / 2, 0], [0.5, math.sqrt(3) / 6, math.sqrt(2 / 3)]])
    np.testing.assert_allclose(v @ v.T, [[1, .5, .5], [.5, 1, .5], [.5, .5, 1]], atol=1e-15)
    assert circular_product(v, (0, 1, 2)) == pytest.approx(0.125, abs=1e-15)
    rng = np.random.default_rng(0)
    w = rng.normal(size=(5, 6))
    assert circular_product(w, (0, 3, 1, 4)) == pytest.approx(circular_product(w, (0, 4, 1, 3)), rel=1e-14)
    with pytest.raises(IndexError):
        circular_product(w, (0, 1, 7))


def test_ipd_examples():
    assert ipd_lhs([[1, 2], [3, 4]]) == pytest.approx(4.0, abs=1e-12)
    assert ipd_lhs(np.eye(3)) == 1.0
    rng = np.random.default_rng(1)
    a = rng.normal(size=(4, 6))
    assert ipd_lhs(a) == pytest.approx(minor_sum(a), rel=1e-8)


def test_ipd_matches_leibniz():
    rng = np.random.default_rng(2)
    for m in range(2, 7):
        a = rng.normal(size=(m, m + 2))
        assert ipd_lhs(a) == pytest.approx(leibniz_det(a @ a.T), rel=1e-10)


def test_three_way_equality():
    rng = np.random.default_rng(3)
    # square inputs are excluded: the signed expansion cancels badly when det(M) is tiny
    for _ in range(100):
        m = int(rng.integers(2, 7))
        a = rng.normal(size=(m, m + int(rng.integers(1, 4))))
        lhs, ms, gd = ipd_lhs(a), minor_sum(a), np.linalg.det(a @ a.T)
        assert lhs == pytest.approx(ms, rel=1e-8)
        assert ms == pytest.approx(gd, rel=1e-8)


def test_closed_forms():
    h = math.sqrt(2) / 2
    g = np.array([[1, h, h], [h, 1, 0.5], [h, 0.5, 1]])
    vecs = np.linalg.cholesky(g)
    assert ipd_closed_form(vecs) == pytest.approx(0.25, abs=1e-15)
    assert ipd_closed_form(np.eye(2)) == 1.0
    assert ipd_closed_form([[1.5, -2, 3], [1.5, -2, 3]]) == pytest.approx(0.0, abs=1e-12)
    rng = np.random.default_rng(4)
    for m in (2, 3):
        for _ in range(50):
            a = rng.normal(size=(m, 5))
            assert ipd_closed_form(a) == pytest.approx(ipd_lhs(a), rel=1e-12, abs=1e-12)
    with pytest.raises(ArityError):
        ipd_closed_form(np.eye(4))


def test_ipd_errors():
    with pytest.raises(DimensionMismatchError):
        ipd_lhs(np.ones((3, 2)))
    with pytest.raises(SizeError):
        ipd_lhs(np.eye(9))
