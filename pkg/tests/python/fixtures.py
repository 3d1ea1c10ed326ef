"""Codes shared by the seqlrc tests."""
import numpy as np

from seqlrc.algebra import GF2, FieldMatrix, rank
from seqlrc.code import LinearCode

# Local parities of the complete-graph design with r = 3 (ten coordinates).
EXAMPLE1_SUPPORTS = [(1, 2, 3, 4), (1, 5, 6, 7), (2, 5, 8, 9), (3, 6, 8, 10)]

# Local parities of the bipartite design with r = 3 (fifteen coordinates).
EXAMPLE2_SUPPORTS = [
    (1, 2, 3, 4), (5, 6, 7, 8), (9, 10, 11, 12),
    (1, 5, 9, 13), (2, 6, 10, 14), (3, 7, 11, 15),
]


def indicator_matrix(supports, n, field=GF2):
    rows = np.zeros((len(supports), n), dtype=np.int64)
    for i, S in enumerate(supports):
        rows[i, [c - 1 for c in S]] = 1
    return FieldMatrix(field, rows, cols=n)


def indicator_code(supports, n, field=GF2):
    return LinearCode(indicator_matrix(supports, n, field))


def example1_b0():
    return indicator_code(EXAMPLE1_SUPPORTS, 10)


def example2_b0():
    return indicator_code(EXAMPLE2_SUPPORTS, 15)


def random_matrix(rng, field, rows, cols):
    return FieldMatrix(field, rng.integers(0, field.modulus, size=(rows, cols)), cols=cols)


def random_code(rng, n, k, field=GF2):
    while True:
        M = random_matrix(rng, field, k, n)
        if rank(M) == k:
            return LinearCode(M)


def sparse_dual_code(rng, n, w, count):
    """Dual of the span of ``count`` random binary words of weight <= w."""
    rows = np.zeros((count, n), dtype=np.int64)
    for i in range(count):
        size = int(rng.integers(2, w + 1))
        rows[i, rng.choice(n, size=size, replace=False)] = 1
    return LinearCode.from_generator(FieldMatrix(GF2, rows, cols=n)).dual
