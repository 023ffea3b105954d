"""Inner product-determinant expansion of a Gram determinant.

``det(M)`` for the Gram matrix ``M`` of vectors ``a_0..a_{m-1}`` expands as a
signed sum over set partitions of the indices. A singleton block ``{s}``
contributes ``|a_s|^2``, a pair ``{i, j}`` contributes ``(a_i, a_j)^2`` and a
block of size ``p >= 3`` contributes a circular product
``(a_k1, a_k2)(a_k2, a_k3)...(a_kp, a_k1)`` for each of its ``(p-1)!/2``
cyclic orderings taken up to rotation and reflection. Each term carries
``(-1)^(m - blocks) * 2^(cycles)``.

Indices are 0-based throughout.
"""

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ._validation import as_vectors
from .exceptions import ArityError, DimensionMismatchError, InvalidInputError, SizeError
from .measures import Route, report_from_muc_squared, standardized_rows

MAX_VARIABLES = 8


@dataclass(frozen=True)
class PartitionTerm:
    singletons: tuple
    pairs: tuple
    cycles: tuple

    @property
    def block_count(self):
        return len(self.singletons) + len(self.pairs) + len(self.cycles)

    @property
    def cycle_count(self):
        return len(self.cycles)

    def sign(self, m):
        return -1 if (m - self.block_count) % 2 else 1

    def weight(self, m):
        """Signed multiplicity ``(-1)^(m - |blocks|) * 2^(|cycles|)``."""
        return self.sign(m) * 2**self.cycle_count


def set_partitions(m):
    """All partitions of ``range(m)`` in restricted-growth-string order."""
    if m == 0:
        yield ()
        return

    def grow(prefix, top):
        if len(prefix) == m:
            blocks = [[] for _ in range(top + 1)]
            for i, b in enumerate(prefix):
                blocks[b].append(i)
            yield tuple(tuple(b) for b in blocks)
            return
        for b in range(top + 2):
            yield from grow(prefix + [b], max(top, b))

    yield from grow([0], 0)


def canonical_cycles(block):
    """Distinct cyclic orderings of ``block`` up to rotation and reflection.

    Each ordering starts at the smallest index and has its second element
    smaller than its last.
    """
    first, rest = min(block), sorted(set(block) - {min(block)})
    return [(first,) + perm for perm in itertools.permutations(rest) if perm[0] < perm[-1]]


@lru_cache(maxsize=None)
def _terms(m):
    terms = []
    for partition in set_partitions(m):
        singletons = tuple(b[0] for b in partition if len(b) == 1)
        pairs = tuple(b for b in partition if len(b) == 2)
        big = [b for b in partition if len(b) >= 3]
        for cycles in itertools.product(*(canonical_cycles(b) for b in big)):
            terms.append(PartitionTerm(singletons, pairs, tuple(cycles)))
    return tuple(terms)


def enumerate_partition_terms(m):
    """Expansion terms for ``m`` variables, one per partition and cyclic class."""
    if not 2 <= m <= MAX_VARIABLES:
        raise SizeError(f"m must be between 2 and {MAX_VARIABLES}, got {m}")
    return list(_terms(m))


def _cycle_product(gram, cycle):
    out = 1.0
    for i, j in zip(cycle, cycle[1:] + cycle[:1]):
        out *= gram[i, j]
    return out


def circular_product(vecs, cycle):
    """Product of inner products around ``cycle``, closing back to its start."""
    mat = as_vectors(vecs)
    cycle = tuple(int(c) for c in cycle)
    if len(cycle) < 3:
        raise InvalidInputError("a circular product needs at least 3 indices")
    for c in cycle:
        if not 0 <= c < mat.shape[0]:
            raise IndexError(f"cycle index {c} out of range for {mat.shape[0]} vectors")
    return float(np.prod([mat[i] @ mat[j] for i, j in zip(cycle, cycle[1:] + cycle[:1])]))


def term_value(gram, term):
    """Unsigned value of one expansion term on a Gram matrix."""
    out = 1.0
    for s in term.singletons:
        out *= gram[s, s]
    for i, j in term.pairs:
        out *= gram[i, j] ** 2
    for cycle in term.cycles:
        out *= _cycle_product(gram, cycle)
    return out


def _check_vectors(vecs):
    mat = as_vectors(vecs)
    m, n = mat.shape
    if not 2 <= m <= MAX_VARIABLES:
        raise SizeError(f"need between 2 and {MAX_VARIABLES} vectors, got {m}")
    if m > n:
        raise DimensionMismatchError(f"{m} vectors in dimension {n}")
    return mat


def ipd_lhs(vecs):
    """Evaluate the partition expansion term by term."""
    mat = _check_vectors(vecs)
    m = mat.shape[0]
    gram = mat @ mat.T
    return float(sum(t.weight(m) * term_value(gram, t) for t in _terms(m)))


def ipd_closed_form(vecs):
    """Hard-coded expansion for two or three vectors."""
    mat = as_vectors(vecs)
    if mat.shape[0] == 2:
        a, b = mat
        return float((a @ a) * (b @ b) - (a @ b) ** 2)
    if mat.shape[0] == 3:
        a, b, c = mat
        aa, bb, cc = a @ a, b @ b, c @ c
        ab, bc, ac = a @ b, b @ c, a @ c
        return float(aa * bb * cc + 2 * ab * bc * ac - aa * bc**2 - bb * ac**2 - cc * ab**2)
    raise ArityError(f"closed form exists for 2 or 3 vectors, got {mat.shape[0]}")


def muc_ipd(vars_):
    """MCC/MUC through the partition expansion of the standardized variables."""
    z = standardized_rows(vars_)
    m, n = z.shape
    return report_from_muc_squared(ipd_lhs(z), Route.IPD, m, n)
