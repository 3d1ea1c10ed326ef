"""Linear codes, generalized Hamming weights, cores and the low-weight dual subcode.

The dimension of the subcode of C supported inside a coordinate set S is
``|S| - rank(H|_S)`` with H a generator of the dual; every weight computation
here goes through that identity (or its flat-lattice counterpart), so the cost
does not depend on the field size.
"""
from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from functools import cached_property
from typing import FrozenSet, Iterable, List, NamedTuple, Sequence, Tuple

import numpy as np

from seqlrc import config
from seqlrc._native import MAX_WALK_COLUMNS, WORD_BITS, kernels
from seqlrc.algebra import (
    FieldMatrix,
    PrimeField,
    RowBasis,
    gf2_rank_packed,
    null_space_basis,
    pack_columns,
    popcount,
    rank,
    rank_of_columns,
    rref,
    row_space_equal,
)
from seqlrc.errors import DomainError, InvariantViolation, ResourceLimitError

logger = logging.getLogger(__name__)

CoordSet = Tuple[int, ...]

GHW_STRATEGIES = ("auto", "subsets", "flats")


def coord_set(items: Iterable[int], n: int) -> CoordSet:
    """Validate and sort a 1-based coordinate set."""
    s = tuple(sorted(int(i) for i in items))
    if len(set(s)) != len(s):
        raise DomainError(f"coordinate set has repeated entries: {s}")
    if s and (s[0] < 1 or s[-1] > n):
        raise DomainError(f"coordinate set {s} is not inside 1..{n}")
    return s


class LinearCode:
    """An [n, k] linear code over a prime field, given by a k x n generator."""

    def __init__(self, generator: FieldMatrix):
        if rank(generator) != generator.rows:
            raise DomainError("generator rows are linearly dependent")
        self.generator = generator

    @classmethod
    def from_rows(cls, field: PrimeField, rows, n: int = None) -> "LinearCode":
        return cls(FieldMatrix(field, rows, cols=n))

    @classmethod
    def from_generator(cls, M: FieldMatrix) -> "LinearCode":
        """Code spanned by the rows of M, which may be dependent."""
        R, r, _ = rref(M)
        return cls(FieldMatrix(M.field, R.data[:r], cols=M.cols))

    @classmethod
    def span(cls, field: PrimeField, n: int, vectors) -> "LinearCode":
        """Code spanned by ``vectors``; keeps a maximal independent subset of them."""
        basis = RowBasis(field, n)
        kept = [v for v in vectors if basis.add(v)]
        if not kept:
            return cls.zero(field, n)
        return cls(FieldMatrix(field, np.array(kept), cols=n))

    @classmethod
    def zero(cls, field: PrimeField, n: int) -> "LinearCode":
        return cls(FieldMatrix.zeros(field, 0, n))

    @classmethod
    def full(cls, field: PrimeField, n: int) -> "LinearCode":
        return cls(FieldMatrix.identity(field, n))

    @property
    def field(self) -> PrimeField:
        return self.generator.field

    @property
    def n(self) -> int:
        return self.generator.cols

    @property
    def k(self) -> int:
        return self.generator.rows

    @cached_property
    def dual(self) -> "LinearCode":
        return LinearCode(null_space_basis(self.generator))

    @cached_property
    def _dual_columns(self) -> List[int]:
        # GF(2) only: dual generator columns packed into ints
        return pack_columns(self.dual.generator)

    def support(self) -> CoordSet:
        return tuple(int(j) + 1 for j in np.flatnonzero(self.generator.data.any(axis=0)))

    def row_supports(self) -> List[CoordSet]:
        return [self.generator.row_support(i) for i in range(self.k)]

    def contains(self, vector) -> bool:
        row = FieldMatrix(self.field, [list(vector)], cols=self.n)
        return rank(FieldMatrix.vstack([self.generator, row])) == self.k

    def is_subcode_of(self, other: "LinearCode") -> bool:
        if self.field != other.field or self.n != other.n:
            return False
        return rank(FieldMatrix.vstack([other.generator, self.generator])) == other.k

    def same_code(self, other: "LinearCode") -> bool:
        return self.field == other.field and row_space_equal(self.generator, other.generator)

    def lift(self, field: PrimeField) -> "LinearCode":
        """Reinterpret the generator entries as residues of ``field``."""
        if field == self.field:
            return self
        data = self.generator.data
        if data.size and int(data.max()) >= field.modulus:
            raise DomainError(f"cannot lift entries of {self.field} into {field}")
        lifted = FieldMatrix(field, data.astype(object), cols=self.n)
        if rank(lifted) != self.k:
            raise DomainError(f"generator loses rank when lifted from {self.field} to {field}")
        return LinearCode(lifted)

    def permute_columns(self, order: Sequence[int]) -> "LinearCode":
        """New code whose column j is old column ``order[j-1]``."""
        if sorted(order) != list(range(1, self.n + 1)):
            raise DomainError(f"{order} is not a permutation of 1..{self.n}")
        return LinearCode(FieldMatrix(self.field, self.generator.data[:, [c - 1 for c in order]], cols=self.n))

    def codewords(self, limits: config.Limits = None) -> np.ndarray:
        """All q^k codewords as rows of an array (small codes only)."""
        limits = config.resolve(limits)
        q = self.field.modulus
        total = q ** self.k
        if total > limits.max_codewords:
            raise ResourceLimitError("codeword enumeration", total, "max_codewords", limits.max_codewords)
        idx = np.arange(total, dtype=np.int64)
        coeffs = np.empty((total, self.k), dtype=np.int64)
        for j in range(self.k):
            coeffs[:, j] = (idx // q ** j) % q
        if self.k == 0:
            return np.zeros((1, self.n), dtype=np.int64)
        return FieldMatrix(self.field, coeffs, cols=self.k).matmul(self.generator).data

    def __repr__(self):
        return f"LinearCode([{self.n}, {self.k}] over {self.field})"


def dual(C: LinearCode) -> LinearCode:
    return C.dual


def _nullity(C: LinearCode, idx: Sequence[int]) -> int:
    """dim of the subcode supported inside the 0-based column list ``idx``."""
    if C.field.modulus == 2:
        cols = C._dual_columns
        return len(idx) - gf2_rank_packed([cols[j] for j in idx])
    return len(idx) - rank_of_columns(C.dual.generator, [j + 1 for j in idx])


def subcode_dim_on(C: LinearCode, S: Iterable[int]) -> int:
    """dim{c in C : supp(c) inside S}."""
    S = coord_set(S, C.n)
    return _nullity(C, [c - 1 for c in S])


@dataclass(frozen=True)
class GhwProfile:
    """Generalized Hamming weights d_1 < ... < d_t and the gap numbers [n] minus them."""

    n: int
    weights: Tuple[int, ...]
    gaps: Tuple[int, ...]

    def __post_init__(self):
        w = self.weights
        if any(a >= b for a, b in zip(w, w[1:])):
            raise InvariantViolation(f"weights {w} are not strictly increasing")
        if w and (w[0] < 1 or w[-1] > self.n):
            raise InvariantViolation(f"weights {w} fall outside 1..{self.n}")
        if tuple(sorted(set(range(1, self.n + 1)) - set(w))) != self.gaps:
            raise InvariantViolation("gaps must be the complement of the weights")

    @classmethod
    def from_weights(cls, n: int, weights: Iterable[int]) -> "GhwProfile":
        weights = tuple(int(x) for x in weights)
        gaps = tuple(sorted(set(range(1, n + 1)) - set(weights)))
        return cls(n, weights, gaps)

    def weight(self, i: int) -> int:
        if not 1 <= i <= len(self.weights):
            raise DomainError(f"no weight d_{i}; the code has dimension {len(self.weights)}")
        return self.weights[i - 1]

    def gap(self, i: int) -> int:
        if not 1 <= i <= len(self.gaps):
            raise DomainError(f"no gap g_{i}; there are {len(self.gaps)} gaps")
        return self.gaps[i - 1]


def gap(profile: GhwProfile, i: int) -> int:
    return profile.gap(i)


def _gf2_nullity_walk(cols: Sequence[int]) -> List[int]:
    n = len(cols)
    best = [n + 1] * (n + 1)
    basis = {}

    def insert(v):
        while v:
            top = v.bit_length() - 1
            if top not in basis:
                basis[top] = v
                return top
            v ^= basis[top]
        return None

    def walk(start, size, nullity):
        if size < best[nullity]:
            best[nullity] = size
        for j in range(start, n):
            top = insert(cols[j])
            walk(j + 1, size + 1, nullity + (top is None))
            if top is not None:
                del basis[top]

    walk(0, 0, 0)
    for v in range(n - 1, -1, -1):
        best[v] = min(best[v], best[v + 1])
    return best


def _nullity_by_size(C: LinearCode) -> List[int]:
    n, k = C.n, C.k
    best = [n + 1] * (n + 1)
    best[0] = 0
    for size in range(1, n + 1):
        for T in itertools.combinations(range(n), size):
            v = _nullity(C, T)
            if size < best[v]:
                best[v] = size
        if best[k] <= n:
            break
    for v in range(n - 1, -1, -1):
        best[v] = min(best[v], best[v + 1])
    return best


def _native_walk(C: LinearCode) -> bool:
    return (kernels is not None and C.field.modulus == 2
            and C.n - C.k <= WORD_BITS and C.n <= MAX_WALK_COLUMNS)


def nullity_profile(C: LinearCode) -> List[int]:
    """Entry v is the least |S| with subcode_dim_on(C, S) >= v (n+1 if none)."""
    if C.field.modulus != 2:
        return _nullity_by_size(C)
    cols = C._dual_columns
    nbits = C.n - C.k
    if _native_walk(C):
        return list(kernels.gf2_nullity_profile(cols, nbits))
    return _gf2_nullity_walk(cols)


def _weights_by_flats(C: LinearCode, limits: config.Limits) -> List[int]:
    # d_i = n - max{|F| : F a flat of rank k - i of the generator's column matroid}
    n, k = C.n, C.k
    field = C.field
    p = field.modulus
    if p == 2:
        def eliminate(res, e):
            v = res[e]
            low = v & -v
            return tuple(c ^ v if c & low else c for c in res)

        def zero_mask(res):
            return sum(1 << j for j, c in enumerate(res) if c == 0)

        start = tuple(pack_columns(C.generator))
    else:
        def eliminate(res, e):
            col = res[:, e]
            t = int(np.flatnonzero(col)[0])
            row = (res[t] * field.inv(int(col[t]))) % p
            return (res - np.outer(col, row)) % p

        def zero_mask(res):
            return sum(1 << int(j) for j in np.flatnonzero(~res.any(axis=0)))

        start = C.generator.data.copy()

    largest = [0] * k
    level = {zero_mask(start): start}
    largest[0] = popcount(next(iter(level)))
    for j in range(1, k):
        following = {}
        for mask, res in level.items():
            done = mask
            for e in range(n):
                if done >> e & 1:
                    continue
                new = eliminate(res, e)
                new_mask = zero_mask(new)
                done |= new_mask
                if new_mask not in following:
                    following[new_mask] = new
        if len(following) > limits.max_subsets:
            raise ResourceLimitError(f"flats of rank {j}", len(following), "max_subsets", limits.max_subsets)
        logger.debug("rank %d: %d flats", j, len(following))
        largest[j] = max(popcount(m) for m in following)
        level = following
    return [n - largest[k - i] for i in range(1, k + 1)]


def ghw_profile(C: LinearCode, strategy: str = "auto", limits: config.Limits = None) -> GhwProfile:
    """Generalized Hamming weight profile of C.

    ``subsets`` walks every coordinate subset (the native kernel handles
    GF(2)); ``flats`` enumerates the flats of the generator's column matroid.
    ``auto`` takes the kernel walk when it is available, flats otherwise.
    """
    limits = config.resolve(limits)
    if strategy not in GHW_STRATEGIES:
        raise DomainError(f"unknown GHW strategy {strategy!r}, expected one of {GHW_STRATEGIES}")
    if C.n > limits.max_ghw_length:
        raise ResourceLimitError("GHW enumeration length", C.n, "max_ghw_length", limits.max_ghw_length)
    if C.k == 0:
        return GhwProfile.from_weights(C.n, ())
    if strategy == "auto":
        strategy = "subsets" if _native_walk(C) else "flats"
    logger.debug("GHW profile of %r via %s", C, strategy)
    if strategy == "subsets":
        best = nullity_profile(C)
        weights = best[1:C.k + 1]
    else:
        weights = _weights_by_flats(C, limits)
    profile = GhwProfile.from_weights(C.n, weights)
    if profile.weights[-1] != len(C.support()):
        raise InvariantViolation(f"d_k={profile.weights[-1]} differs from |supp(C)|={len(C.support())}")
    return profile


def ghw_profile_by_subcodes(C: LinearCode, limits: config.Limits = None) -> GhwProfile:
    """Weights by walking every i-dimensional subcode (reduced coefficient matrices).

    Independent of the subset-rank identity; meant for small codes.
    """
    limits = config.resolve(limits)
    q, k, n = C.field.modulus, C.k, C.n
    G = C.generator
    weights = []
    visited = 0
    for i in range(1, k + 1):
        best = n + 1
        for pivots in itertools.combinations(range(k), i):
            free = [(a, c) for a, pc in enumerate(pivots) for c in range(pc + 1, k) if c not in pivots]
            visited += q ** len(free)
            if visited > limits.max_subsets:
                raise ResourceLimitError("subcode enumeration", visited, "max_subsets", limits.max_subsets)
            for values in itertools.product(range(q), repeat=len(free)):
                coeff = np.zeros((i, k), dtype=np.int64)
                for a, pc in enumerate(pivots):
                    coeff[a, pc] = 1
                for (a, c), value in zip(free, values):
                    coeff[a, c] = value
                sub = FieldMatrix(C.field, coeff, cols=k).matmul(G).data
                best = min(best, int(sub.any(axis=0).sum()))
        weights.append(best)
    return GhwProfile.from_weights(n, weights)


def min_distance(C: LinearCode, strategy: str = "auto", limits: config.Limits = None) -> int:
    if C.k == 0:
        raise DomainError("the zero code has no minimum distance")
    return ghw_profile(C, strategy, limits).weights[0]


def wei_duality_check(C: LinearCode, strategy: str = "auto", limits: config.Limits = None) -> bool:
    """d_i(C) == n + 1 - g_{k-i+1}(C^perp) for every i."""
    mine = ghw_profile(C, strategy, limits)
    theirs = ghw_profile(C.dual, strategy, limits)
    k, n = C.k, C.n
    if len(theirs.gaps) != k:
        return False
    return all(mine.weights[i - 1] == n + 1 - theirs.gaps[k - i] for i in range(1, k + 1))


def is_core(B0: LinearCode, S: Iterable[int]) -> bool:
    """True when no nonzero codeword of B0 is supported inside S."""
    return subcode_dim_on(B0, S) == 0


def enumerate_cores(B0: LinearCode, ell: int, limits: config.Limits = None) -> List[CoordSet]:
    """All ell-cores of B0 in lexicographic order."""
    limits = config.resolve(limits)
    if not 0 <= ell <= B0.n:
        raise DomainError(f"core size {ell} outside 0..{B0.n}")
    count = math.comb(B0.n, ell)
    if count > limits.max_subsets:
        raise ResourceLimitError(f"C({B0.n}, {ell}) core candidates", count, "max_subsets", limits.max_subsets)
    return [tuple(j + 1 for j in T) for T in itertools.combinations(range(B0.n), ell) if _nullity(B0, T) == 0]


def shorten(C: LinearCode, S: Iterable[int]) -> LinearCode:
    """The codewords of C supported inside S, restricted to S."""
    S = coord_set(S, C.n)
    rest = [c for c in range(1, C.n + 1) if c not in set(S)]
    G = C.generator
    if not S or C.k == 0:
        return LinearCode.zero(C.field, len(S))
    if rest:
        X = null_space_basis(G.restrict_columns(rest).transpose())
    else:
        X = FieldMatrix.identity(C.field, C.k)
    if X.rows == 0:
        return LinearCode.zero(C.field, len(S))
    return LinearCode(X.matmul(G.restrict_columns(S)))


class CoreSearch(NamedTuple):
    core: CoordSet
    used_fallback: bool


def search_core_within(B0: LinearCode, S: Iterable[int], k: int) -> CoreSearch:
    """Find a k-core of B0 inside S by shortening.

    The shortened code is put in reduced echelon form; any k of its non-pivot
    columns form a core. The candidate is verified and an exhaustive search
    over the k-subsets of S is used only when verification fails.
    """
    S = coord_set(S, B0.n)
    if not 0 <= k <= len(S):
        raise DomainError(f"core size {k} outside 0..{len(S)}")
    short = shorten(B0, S)
    pivots = set(rref(short.generator)[2]) if short.k else set()
    free = [S[j - 1] for j in range(1, len(S) + 1) if j not in pivots]
    if len(free) >= k:
        candidate = tuple(free[:k])
        if is_core(B0, candidate):
            return CoreSearch(candidate, False)
    logger.info("shortening left no %d-core inside %s, searching exhaustively", k, S)
    for candidate in itertools.combinations(S, k):
        if is_core(B0, candidate):
            return CoreSearch(candidate, True)
    raise InvariantViolation(f"no {k}-core of B0 inside {S}; |S| must equal the k-th gap of B0")


def find_core_within(B0: LinearCode, S: Iterable[int], k: int) -> CoordSet:
    return search_core_within(B0, S, k).core


def _has_full_support(N: FieldMatrix) -> bool:
    # is some word of the row space of N nonzero in every column?
    if not N.data.any(axis=0).all():
        return False
    q, s = N.field.modulus, N.cols
    if q >= s:
        # fewer than q + 1 hyperplanes never cover the space
        return True
    for coeffs in itertools.product(range(q), repeat=N.rows):
        if any(coeffs):
            word = FieldMatrix(N.field, [list(coeffs)], cols=N.rows).matmul(N).data
            if word.all():
                return True
    return False


def _parities_by_codewords(C: LinearCode, w: int, limits: config.Limits):
    words = C.dual.codewords(limits)
    weights = (words != 0).sum(axis=1)
    order = sorted(np.flatnonzero((weights >= 1) & (weights <= w)),
                   key=lambda i: (int(weights[i]), tuple(np.flatnonzero(words[i]))))
    supports = set()
    basis = RowBasis(C.field, C.n)
    vectors = []
    for i in order:
        supports.add(tuple(int(j) + 1 for j in np.flatnonzero(words[i])))
        if basis.rank < C.n - C.k and basis.add(words[i]):
            vectors.append(words[i])
    return frozenset(supports), vectors


def _parities_by_subsets(C: LinearCode, w: int):
    n, field, G = C.n, C.field, C.generator
    gf2 = field.modulus == 2
    cols = pack_columns(G) if gf2 else None
    supports = set()
    basis = RowBasis(field, n)
    vectors = []
    for size in range(1, w + 1):
        for T in itertools.combinations(range(n), size):
            coords = [j + 1 for j in T]
            r = gf2_rank_packed([cols[j] for j in T]) if gf2 else rank_of_columns(G, coords)
            if r == size:
                continue
            N = null_space_basis(G.restrict_columns(coords))
            if _has_full_support(N):
                supports.add(tuple(coords))
            for row in N.data:
                v = np.zeros(n, dtype=field.dtype)
                v[list(T)] = row
                if basis.add(v):
                    vectors.append(v)
    return frozenset(supports), vectors


def _local_parities(C: LinearCode, w: int, limits: config.Limits):
    if w < 1:
        raise DomainError(f"weight bound must be at least 1, got {w}")
    w = min(w, C.n)
    enum_cost = C.field.modulus ** (C.n - C.k)
    scan_cost = sum(math.comb(C.n, s) for s in range(1, w + 1))
    if enum_cost <= limits.max_codewords and (enum_cost <= scan_cost or scan_cost > limits.max_subsets):
        logger.debug("local parities of %r by enumerating %d dual words", C, enum_cost)
        return _parities_by_codewords(C, w, limits)
    if scan_cost > limits.max_subsets:
        raise ResourceLimitError(f"scan of coordinate sets of size <= {w}", scan_cost,
                                 "max_subsets", limits.max_subsets)
    logger.debug("local parities of %r by scanning %d coordinate sets", C, scan_cost)
    return _parities_by_subsets(C, w)


def local_parity_supports(C: LinearCode, w: int, limits: config.Limits = None) -> FrozenSet[CoordSet]:
    """Supports of the dual codewords of weight 1..w (scalar multiples merged)."""
    return _local_parities(C, w, config.resolve(limits))[0]


def low_weight_dual_subcode(C: LinearCode, w: int, limits: config.Limits = None) -> LinearCode:
    """B0: the span of all dual codewords of weight at most w.

    The generator rows are themselves dual codewords of weight <= w.
    """
    _, vectors = _local_parities(C, w, config.resolve(limits))
    if not vectors:
        return LinearCode.zero(C.field, C.n)
    return LinearCode(FieldMatrix(C.field, np.array(vectors), cols=C.n))
