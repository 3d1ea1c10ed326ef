"""Local recovery of one and two erasures.

A local parity is a dual codeword of weight at most r + 1, identified with its
support. A_i collects the local parities covering coordinate i. Two erased
symbols i, j can be repaired one after the other when some parity covering one
of them avoids the other, and the remaining symbol is covered at all once the
first is back.
"""
from __future__ import annotations

import collections
import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, NamedTuple, Optional, Sequence, Tuple, Union

from seqlrc import config
from seqlrc.code import CoordSet, LinearCode, coord_set, local_parity_supports, low_weight_dual_subcode
from seqlrc.errors import DomainError

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]


@dataclass(frozen=True)
class CoverMap:
    n: int
    r: int
    cover: Tuple[FrozenSet[CoordSet], ...]

    def __post_init__(self):
        if len(self.cover) != self.n:
            raise DomainError(f"cover map needs {self.n} entries, got {len(self.cover)}")
        for i, A in enumerate(self.cover, start=1):
            for S in A:
                if i not in S or len(S) > self.r + 1:
                    raise DomainError(f"support {S} cannot cover coordinate {i} with locality {self.r}")

    @classmethod
    def from_supports(cls, n: int, r: int, supports: Iterable[CoordSet]) -> "CoverMap":
        buckets = [set() for _ in range(n)]
        for S in supports:
            S = coord_set(S, n)
            if len(S) > r + 1:
                continue
            for c in S:
                buckets[c - 1].add(S)
        return cls(n, r, tuple(frozenset(b) for b in buckets))

    def covering(self, i: int) -> FrozenSet[CoordSet]:
        return self.cover[i - 1]

    def sizes(self) -> List[int]:
        return [len(A) for A in self.cover]

    def histogram(self) -> Dict[int, int]:
        """Number of coordinates per cover-set size, by increasing size."""
        return dict(sorted(collections.Counter(self.sizes()).items()))

    @property
    def degenerate(self) -> Tuple[int, ...]:
        """Coordinates that are identically zero in the code."""
        return tuple(i for i, A in enumerate(self.cover, start=1) if (i,) in A)

    def recovery_orders(self, i: int, j: int) -> List[Pair]:
        """Feasible repair orders (first, second) of the erased pair {i, j}."""
        orders = []
        for first, second in ((i, j), (j, i)):
            Af, As = self.covering(first), self.covering(second)
            if As and any(second not in P for P in Af):
                orders.append((first, second))
        return orders

    def failing_pairs(self) -> List[Pair]:
        return [p for p in itertools.combinations(range(1, self.n + 1), 2) if not self.recovery_orders(*p)]

    def has_all_symbol_locality(self) -> bool:
        return all(self.cover)

    def is_locally_2_reconstructible(self) -> bool:
        return all(self.cover) and len(set(self.cover)) == self.n


CodeOrCover = Union[LinearCode, CoverMap]


def cover_map(C: LinearCode, r: int, limits: config.Limits = None) -> CoverMap:
    """A_i for every coordinate, from the dual words of weight 1..r+1."""
    if r < 1 or r + 1 > C.n:
        raise DomainError(f"locality r={r} needs 1 <= r and r + 1 <= n={C.n}")
    supports = local_parity_supports(C, r + 1, limits)
    cover = CoverMap.from_supports(C.n, r, supports)
    if cover.degenerate:
        logger.warning("coordinates %s are identically zero in %r", list(cover.degenerate), C)
    return cover


def _cover(C: CodeOrCover, r: Optional[int], limits) -> CoverMap:
    if isinstance(C, CoverMap):
        return C
    if r is None:
        raise DomainError("locality r is required for a code")
    return cover_map(C, r, limits)


def has_all_symbol_locality(C: CodeOrCover, r: int = None, limits: config.Limits = None) -> bool:
    return _cover(C, r, limits).has_all_symbol_locality()


def is_locally_2_reconstructible(C: CodeOrCover, r: int = None, limits: config.Limits = None) -> bool:
    """Every A_i nonempty and no two coordinates with the same cover set."""
    return _cover(C, r, limits).is_locally_2_reconstructible()


def recovery_orders(cover: CoverMap, i: int, j: int) -> List[Pair]:
    if i == j:
        raise DomainError("a pair needs two distinct coordinates")
    coord_set((i, j), cover.n)
    return cover.recovery_orders(i, j)


def sequential_recovery_check(C: CodeOrCover, r: int = None,
                              limits: config.Limits = None) -> Tuple[bool, List[Pair]]:
    """Try every erased pair; return whether all are repairable and the pairs that are not."""
    failing = _cover(C, r, limits).failing_pairs()
    logger.debug("%d unrecoverable pairs", len(failing))
    return not failing, failing


class UniqueCoverage(NamedTuple):
    counts: Tuple[int, ...]
    at_most_one: bool


def unique_coverage_counts(basis: Union[LinearCode, Sequence[CoordSet]]) -> UniqueCoverage:
    """s_i = number of coordinates of S_i lying in no other S_j."""
    supports = basis.row_supports() if isinstance(basis, LinearCode) else [tuple(S) for S in basis]
    multiplicity = collections.Counter(c for S in supports for c in set(S))
    counts = tuple(sum(1 for c in set(S) if multiplicity[c] == 1) for S in supports)
    return UniqueCoverage(counts, all(s <= 1 for s in counts))


@dataclass(frozen=True)
class DimensionRateReport:
    n: int
    k: int
    r: int
    applicable: bool
    b0_dim: Optional[int]
    dim_bound: Fraction
    rate: Fraction
    rate_bound: Fraction

    @property
    def dim_ok(self) -> bool:
        return self.applicable and self.b0_dim >= self.dim_bound

    @property
    def rate_ok(self) -> bool:
        return self.applicable and self.rate <= self.rate_bound

    def lines(self) -> List[str]:
        if not self.applicable:
            return ["applicable: no"]
        return [
            "applicable: yes",
            f"dim(B0): {self.b0_dim} (>= {self.dim_bound}: {'yes' if self.dim_ok else 'no'})",
            f"rate: {self.rate} (<= {self.rate_bound}: {'yes' if self.rate_ok else 'no'})",
        ]


def dimension_and_rate_check(C: LinearCode, r: int, limits: config.Limits = None) -> DimensionRateReport:
    """dim(B0) >= 2n/(r+2) and k/n <= r/(r+2), for locally 2-reconstructible codes."""
    n, k = C.n, C.k
    applicable = k > 0 and is_locally_2_reconstructible(C, r, limits)
    b0_dim = low_weight_dual_subcode(C, r + 1, limits).k if applicable else None
    if not applicable:
        logger.info("%r is not locally 2-reconstructible with r=%d, dimension check skipped", C, r)
    return DimensionRateReport(
        n=n,
        k=k,
        r=r,
        applicable=applicable,
        b0_dim=b0_dim,
        dim_bound=Fraction(2 * n, r + 2),
        rate=Fraction(k, n),
        rate_bound=Fraction(r, r + 2),
    )
