"""Exact arithmetic over prime fields GF(p) and dense matrices over them.

Entries are canonical residues in ``[0, p)``. Moduli below 2**31 are stored as
``numpy.int64``; larger moduli fall back to object arrays of Python ints so
that products never overflow. Column indices exposed by the public functions
are 1-based.

GF(2) has a bit-packed fast path (rows or columns packed into Python ints,
optionally handed to the native kernels); it is observationally identical to
the generic path.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from seqlrc._native import fits_word, kernels
from seqlrc.errors import DomainError, InvalidParametersError

logger = logging.getLogger(__name__)

# The base set decides primality for every modulus below this bound.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
MAX_MODULUS = 3317044064679887385961981
_INT64_LIMIT = 1 << 63


def is_prime(p: int) -> bool:
    """Miller-Rabin primality test with a fixed base set.

    Deterministic below ``MAX_MODULUS``; larger inputs raise InvalidParametersError.
    """
    if p < 2:
        return False
    if p >= MAX_MODULUS:
        raise InvalidParametersError(f"modulus {p} is too large for a deterministic primality test (limit {MAX_MODULUS})")
    for a in _MR_BASES:
        if p % a == 0:
            return p == a
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


def popcount(x: int) -> int:
    return bin(x).count("1")


def _egcd(a: int, b: int) -> Tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


@dataclass(frozen=True)
class PrimeField:
    """The prime field GF(p)."""

    modulus: int

    def __post_init__(self):
        if isinstance(self.modulus, bool) or not isinstance(self.modulus, (int, np.integer)):
            raise InvalidParametersError(f"modulus must be an integer, got {self.modulus!r}")
        object.__setattr__(self, "modulus", int(self.modulus))
        if not is_prime(self.modulus):
            raise InvalidParametersError(f"modulus {self.modulus} is not prime")

    def __str__(self):
        return f"GF({self.modulus})"

    @property
    def dtype(self):
        return np.int64 if self.modulus < (1 << 31) else object

    def element(self, a: int) -> int:
        return int(a) % self.modulus

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.modulus

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.modulus

    def neg(self, a: int) -> int:
        return -a % self.modulus

    def mul(self, a: int, b: int) -> int:
        return a * b % self.modulus

    def inv(self, a: int) -> int:
        a = int(a) % self.modulus
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse in {self}")
        _, x, _ = _egcd(a, self.modulus)
        return x % self.modulus

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return pow(self.inv(a), -e, self.modulus)
        return pow(int(a), e, self.modulus)


GF2 = PrimeField(2)


class FieldMatrix:
    """An immutable dense ``rows x cols`` matrix over a prime field."""

    __slots__ = ("field", "_data")

    def __init__(self, field: PrimeField, data, cols: int = None):
        arr = np.array(data, dtype=field.dtype)
        if arr.size == 0:
            rows = arr.shape[0] if arr.ndim >= 1 else 0
            width = cols if cols is not None else (arr.shape[1] if arr.ndim == 2 else 0)
            arr = np.zeros((rows, width), dtype=field.dtype)
        if arr.ndim != 2:
            raise InvalidParametersError(f"matrix data must be two dimensional, got shape {arr.shape}")
        if cols is not None and arr.shape[1] != cols:
            raise InvalidParametersError(f"expected {cols} columns, got {arr.shape[1]}")
        if arr.size and (arr.min() < 0 or arr.max() >= field.modulus):
            raise InvalidParametersError(f"entries must be residues in [0, {field.modulus})")
        arr.setflags(write=False)
        self.field = field
        self._data = arr

    @classmethod
    def reduce(cls, field: PrimeField, data, cols: int = None) -> "FieldMatrix":
        """Build a matrix from arbitrary integers, reducing them mod p."""
        arr = np.array(data, dtype=object)
        if arr.size:
            arr = arr % field.modulus
        return cls(field, arr, cols=cols)

    @classmethod
    def zeros(cls, field: PrimeField, rows: int, cols: int) -> "FieldMatrix":
        return cls(field, np.zeros((rows, cols), dtype=field.dtype))

    @classmethod
    def identity(cls, field: PrimeField, n: int) -> "FieldMatrix":
        return cls(field, np.eye(n, dtype=np.int64).astype(field.dtype))

    @classmethod
    def vstack(cls, blocks: Sequence["FieldMatrix"]) -> "FieldMatrix":
        field, cols = blocks[0].field, blocks[0].cols
        for block in blocks:
            if block.field != field or block.cols != cols:
                raise DomainError("stacked matrices must share field and column count")
        return cls(field, np.vstack([b.data for b in blocks]), cols=cols)

    @property
    def data(self) -> np.ndarray:
        return self._data

    @property
    def rows(self) -> int:
        return self._data.shape[0]

    @property
    def cols(self) -> int:
        return self._data.shape[1]

    @property
    def shape(self) -> Tuple[int, int]:
        return self._data.shape

    def to_list(self) -> List[List[int]]:
        return [[int(x) for x in row] for row in self._data]

    def row_support(self, i: int) -> Tuple[int, ...]:
        """1-based support of row ``i`` (0-based row index)."""
        return tuple(int(j) + 1 for j in np.flatnonzero(self._data[i]))

    def transpose(self) -> "FieldMatrix":
        return FieldMatrix(self.field, self._data.T.copy(), cols=self.rows)

    def restrict_columns(self, coords: Iterable[int]) -> "FieldMatrix":
        idx = _column_indices(coords, self.cols)
        return FieldMatrix(self.field, self._data[:, idx], cols=len(idx))

    def matmul(self, other: "FieldMatrix") -> "FieldMatrix":
        if self.field != other.field or self.cols != other.rows:
            raise DomainError(f"cannot multiply {self.shape} by {other.shape}")
        p = self.field.modulus
        if self.cols * (p - 1) ** 2 < _INT64_LIMIT:
            prod = (self._data.astype(np.int64) @ other.data.astype(np.int64)) % p
        else:
            prod = (self._data.astype(object) @ other.data.astype(object)) % p
        return FieldMatrix(self.field, prod, cols=other.cols)

    def __eq__(self, other):
        if not isinstance(other, FieldMatrix):
            return NotImplemented
        return self.field == other.field and np.array_equal(self._data, other.data)

    def __hash__(self):
        return hash((self.field, self.shape, tuple(map(int, self._data.ravel()))))

    def __repr__(self):
        return f"FieldMatrix({self.field}, {self.rows}x{self.cols}, {self.to_list()})"


def _column_indices(coords: Iterable[int], ncols: int) -> List[int]:
    idx = sorted(int(c) for c in coords)
    if len(set(idx)) != len(idx):
        raise DomainError(f"coordinate set has repeated entries: {idx}")
    for c in idx:
        if not 1 <= c <= ncols:
            raise DomainError(f"coordinate {c} outside 1..{ncols}")
    return [c - 1 for c in idx]


# -- GF(2) bit-packed helpers ---------------------------------------------

def pack_rows(M: FieldMatrix) -> List[int]:
    """Rows as ints, bit j set when column j+1 is one."""
    return [sum(1 << int(j) for j in np.flatnonzero(row)) for row in M.data]


def pack_columns(M: FieldMatrix) -> List[int]:
    """Columns as ints, bit i set when row i+1 is one."""
    return pack_rows(M.transpose())


def gf2_rank_packed(vectors: Sequence[int]) -> int:
    """Rank over GF(2) of bit-packed vectors."""
    if kernels is not None and fits_word(vectors):
        return kernels.gf2_rank(list(vectors))
    basis = {}
    for v in vectors:
        while v:
            top = v.bit_length() - 1
            if top not in basis:
                basis[top] = v
                break
            v ^= basis[top]
    return len(basis)


def _rref_gf2(M: FieldMatrix):
    rows = pack_rows(M)
    pivots = []
    r = 0
    for c in range(M.cols):
        if r == len(rows):
            break
        bit = 1 << c
        sel = next((i for i in range(r, len(rows)) if rows[i] & bit), None)
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i] & bit:
                rows[i] ^= rows[r]
        pivots.append(c + 1)
        r += 1
    data = [[(v >> j) & 1 for j in range(M.cols)] for v in rows]
    return FieldMatrix(GF2, data, cols=M.cols), r, pivots


def _rref_generic(M: FieldMatrix):
    field = M.field
    p = field.modulus
    A = M.data.copy()
    nrows, ncols = A.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        A[r] = (A[r] * field.inv(int(A[r, c]))) % p
        col = A[:, c].copy()
        col[r] = 0
        others = np.flatnonzero(col)
        if others.size:
            A[others] = (A[others] - np.outer(col[others], A[r])) % p
        pivots.append(c + 1)
        r += 1
    return FieldMatrix(field, A, cols=ncols), r, pivots


def rref(M: FieldMatrix, fast: bool = True):
    """Reduced row-echelon form.

    Returns ``(R, rank, pivots)`` with 1-based, strictly increasing pivot
    columns. ``fast=False`` forces the generic path on GF(2).
    """
    if fast and M.field.modulus == 2:
        return _rref_gf2(M)
    return _rref_generic(M)


def rank(M: FieldMatrix) -> int:
    if M.field.modulus == 2:
        return gf2_rank_packed(pack_rows(M))
    return rref(M)[1]


def rank_of_columns(M: FieldMatrix, coords: Iterable[int]) -> int:
    """Rank of the submatrix keeping the columns in ``coords`` (1-based)."""
    idx = _column_indices(coords, M.cols)
    if not idx or M.rows == 0:
        return 0
    if M.field.modulus == 2:
        cols = pack_columns(M)
        return gf2_rank_packed([cols[j] for j in idx])
    return rref(FieldMatrix(M.field, M.data[:, idx], cols=len(idx)))[1]


def null_space_basis(M: FieldMatrix) -> FieldMatrix:
    """Canonical (reduced echelon) basis of ``{x : M x^T = 0}``."""
    field = M.field
    R, r, pivots = rref(M)
    ncols = M.cols
    pivot_set = set(pivots)
    free = [c for c in range(1, ncols + 1) if c not in pivot_set]
    basis = np.zeros((len(free), ncols), dtype=field.dtype)
    for row, f in enumerate(free):
        basis[row, f - 1] = 1
        for i, pc in enumerate(pivots):
            basis[row, pc - 1] = field.neg(int(R.data[i, f - 1]))
    if not free:
        return FieldMatrix.zeros(field, 0, ncols)
    return rref(FieldMatrix(field, basis, cols=ncols))[0]


def row_space_equal(A: FieldMatrix, B: FieldMatrix) -> bool:
    if A.field != B.field or A.cols != B.cols:
        return False
    ra, rb = rank(A), rank(B)
    return ra == rb and rank(FieldMatrix.vstack([A, B])) == ra


class RowBasis:
    """Echelon basis grown one vector at a time.

    Stored rows are kept in insertion order; every stored row is zero at the
    pivots of the rows inserted before it, so a single forward pass reduces
    any vector against the whole basis.
    """

    def __init__(self, field: PrimeField, n: int):
        self.field = field
        self.n = n
        self._rows = {}

    @property
    def rank(self) -> int:
        return len(self._rows)

    def reduce(self, vector) -> np.ndarray:
        p = self.field.modulus
        v = np.array(vector, dtype=self.field.dtype) % p
        for c, row in self._rows.items():
            if v[c]:
                v = (v - v[c] * row) % p
        return v

    def add(self, vector) -> bool:
        """Insert ``vector``; False when it is already in the span."""
        v = self.reduce(vector)
        nz = np.flatnonzero(v)
        if nz.size == 0:
            return False
        c = int(nz[0])
        self._rows[c] = (v * self.field.inv(int(v[c]))) % self.field.modulus
        return True

    def contains(self, vector) -> bool:
        return not self.reduce(vector).any()


# -- matrix text format ----------------------------------------------------

def format_matrix(M: FieldMatrix) -> str:
    """Serialize: header ``rows cols p`` then one line of residues per row."""
    lines = [f"{M.rows} {M.cols} {M.field.modulus}"]
    lines.extend(" ".join(str(int(x)) for x in row) for row in M.data)
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> FieldMatrix:
    lines = []
    for number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if stripped and not stripped.startswith("#"):
            lines.append((number, stripped))
    if not lines:
        raise InvalidParametersError("matrix text has no header line")
    number, header = lines[0]
    try:
        rows, cols, p = (int(tok) for tok in header.split())
    except ValueError:
        raise InvalidParametersError(f"line {number}: header must be 'rows cols p', got {header!r}") from None
    if rows < 0 or cols < 0:
        raise InvalidParametersError(f"line {number}: negative matrix dimensions")
    field = PrimeField(p)
    body = lines[1:]
    if cols == 0:
        body = []
    elif len(body) != rows:
        raise InvalidParametersError(f"expected {rows} matrix rows, found {len(body)}")
    data = []
    for number, line in body:
        try:
            row = [int(tok) for tok in line.split()]
        except ValueError:
            raise InvalidParametersError(f"line {number}: non-integer entry") from None
        if len(row) != cols:
            raise InvalidParametersError(f"line {number}: expected {cols} entries, found {len(row)}")
        if any(not 0 <= x < p for x in row):
            raise InvalidParametersError(f"line {number}: entries must lie in [0, {p})")
        data.append(row)
    if cols == 0:
        return FieldMatrix.zeros(field, rows, 0)
    return FieldMatrix(field, data if data else np.zeros((0, cols)), cols=cols)


def read_matrix(path) -> FieldMatrix:
    with open(path, "r", encoding="ascii") as f:
        return parse_matrix(f.read())


def write_matrix(M: FieldMatrix, path) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as f:
        f.write(format_matrix(M))
