"""Minimum-distance bounds for codes with locality.

The two new bounds share one recipe: the GHWs of the local subcode B0 are
bounded by a backward recursion e_1..e_b ending at e_b = n, and d_min is at
most n + 1 minus the k-th element of [n] missing from that sequence. The
sequential two-erasure bound uses b = ceil(2n/(r+2)) local parities, the
single-erasure bound b = ceil(n/(r+1)).

Everything is exact integer arithmetic.
"""
import csv
import io
import logging
from dataclasses import dataclass
from typing import Iterable, List, NamedTuple, Optional, Sequence, TextIO, Tuple

from seqlrc.errors import DomainError, InvalidParametersError, InvariantViolation

logger = logging.getLogger(__name__)

TABLE_HEADER = ("k", "bound_eq1", "bound_single", "bound_seq")


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


@dataclass(frozen=True)
class BoundSequence:
    n: int
    r: int
    b: int
    e: Tuple[int, ...]

    def __post_init__(self):
        e = self.e
        if len(e) != self.b or e[-1] != self.n:
            raise InvariantViolation(f"sequence {e} must have {self.b} terms ending at {self.n}")
        if e[0] < 1:
            raise InvalidParametersError(
                f"recursion for n={self.n}, r={self.r}, b={self.b} reaches e_1={e[0]} < 1")
        if any(a >= c for a, c in zip(e, e[1:])):
            raise InvalidParametersError(
                f"recursion for n={self.n}, r={self.r}, b={self.b} is not strictly increasing: {list(e)}")


@dataclass(frozen=True)
class BoundReport:
    """A d_min bound together with the quantities it was derived from."""

    kind: str
    n: int
    k: int
    r: int
    value: int
    delta: Optional[int] = None
    sequence: Optional[BoundSequence] = None
    gap: Optional[int] = None

    @property
    def ell(self) -> Optional[int]:
        return None if self.gap is None else self.gap - self.k


def e_sequence(n: int, r: int, b: int) -> BoundSequence:
    """e_b = n and e_{m-1} = e_m - ceil(2 e_m / m) + r + 1."""
    if b < 1 or r < 1 or n < r + 1:
        raise DomainError(f"need b >= 1, r >= 1 and n >= r + 1, got n={n}, r={r}, b={b}")
    e = [n]
    for m in range(b, 1, -1):
        e.append(e[-1] - ceil_div(2 * e[-1], m) + r + 1)
    return BoundSequence(n, r, b, tuple(reversed(e)))


def kth_gap(n: int, weights: Iterable[int], k: int) -> int:
    """k-th smallest element of {1..n} not in ``weights``."""
    taken = set(weights)
    seen = 0
    for x in range(1, n + 1):
        if x not in taken:
            seen += 1
            if seen == k:
                return x
    raise DomainError(f"only {seen} gaps in 1..{n}, cannot take gap {k}")


def seq_parity_count(n: int, r: int) -> int:
    return ceil_div(2 * n, r + 2)


def single_parity_count(n: int, r: int) -> int:
    return ceil_div(n, r + 1)


def _gap_bound(kind: str, n: int, k: int, r: int, b: int) -> BoundReport:
    if r < 1:
        raise DomainError(f"locality r must be at least 1, got {r}")
    if not 1 <= k <= n - b:
        raise DomainError(
            f"k={k} outside 1..{n - b}: a code with n={n} needs at least {b} independent local parities")
    sequence = e_sequence(n, r, b)
    g = kth_gap(n, sequence.e, k)
    logger.debug("%s bound n=%d k=%d r=%d: e=%s, gap %d", kind, n, k, r, list(sequence.e), g)
    return BoundReport(kind, n, k, r, n + 1 - g, sequence=sequence, gap=g)


def seq_dmin_bound(n: int, k: int, r: int) -> BoundReport:
    """Bound for codes recovering any two erasures by two local parity computations."""
    return _gap_bound("seq", n, k, r, seq_parity_count(n, r))


def single_dmin_bound(n: int, k: int, r: int) -> BoundReport:
    """Bound for codes with all-symbol locality r (one erasure)."""
    return _gap_bound("single", n, k, r, single_parity_count(n, r))


def gopalan_bound(n: int, k: int, r: int) -> int:
    if not 1 <= k <= n or r < 1:
        raise DomainError(f"need 1 <= k <= n and r >= 1, got n={n}, k={k}, r={r}")
    return n - k - ceil_div(k, r) + 2


def pkl_bound(n: int, k: int, r: int, delta: int) -> int:
    if delta < 2:
        raise DomainError(f"delta must be at least 2, got {delta}")
    if not 1 <= k <= n or r < 1:
        raise DomainError(f"need 1 <= k <= n and r >= 1, got n={n}, k={k}, r={r}")
    return n - k + 1 - (ceil_div(k, r) - 1) * (delta - 1)


def wz_bound(n: int, k: int, r: int, delta: int) -> int:
    if delta < 2 or r < 2:
        raise DomainError(f"need delta >= 2 and r >= 2, got delta={delta}, r={r}")
    if not 1 <= k <= n:
        raise DomainError(f"need 1 <= k <= n, got n={n}, k={k}")
    return n - k + 1 - (ceil_div((k - 1) * (delta - 1) + 1, (r - 1) * (delta - 1) + 1) - 1)


def classic_bounds(n: int, k: int, r: int, delta: Optional[int] = None) -> List[BoundReport]:
    """The locality bounds from the literature; the delta ones only when delta is given."""
    reports = [BoundReport("eq1", n, k, r, gopalan_bound(n, k, r))]
    if delta is not None:
        reports.append(BoundReport("eq2", n, k, r, pkl_bound(n, k, r, delta), delta=delta))
        if r >= 2:
            reports.append(BoundReport("eq3", n, k, r, wz_bound(n, k, r, delta), delta=delta))
    return reports


def trivial_ghw_bounds(r: int, b: int) -> List[int]:
    """d_m(B0) <= m (r + 1): the union of m supports of size r + 1."""
    return [m * (r + 1) for m in range(1, b + 1)]


def check_ghw_bounds(weights: Sequence[int], sequence: BoundSequence) -> bool:
    """True when d_m <= e_m for every m covered by both."""
    return all(d <= e for d, e in zip(weights, sequence.e))


def lemma2_field_threshold(n: int, k: int) -> int:
    """Field size above which a k-core preserving completion is known to exist."""
    return k * n ** k


def format_report(report: BoundReport) -> str:
    lines = [f"d_min <= {report.value}"]
    if report.sequence is not None:
        lines.append(f"b: {report.sequence.b}")
        lines.append("e: " + " ".join(map(str, report.sequence.e)))
        lines.append(f"gap: {report.gap} (k + l with l = {report.ell})")
    return "\n".join(lines)


class TableRow(NamedTuple):
    k: int
    bound_eq1: int
    bound_single: Optional[int]
    bound_seq: Optional[int]


def _optional(bound, n, k, r):
    try:
        return bound(n, k, r).value
    except (DomainError, InvalidParametersError) as exc:
        logger.debug("k=%d: %s", k, exc)
        return None


def compare_table(n: int, r: int, k_range: Optional[Iterable[int]] = None) -> List[TableRow]:
    """Classic locality, single-erasure and sequential bounds side by side.

    Entries are None where a bound is undefined. The default range is every
    k admitted by the single-erasure bound.
    """
    if k_range is None:
        k_range = range(1, n - single_parity_count(n, r) + 1)
    rows = []
    for k in k_range:
        single = _optional(single_dmin_bound, n, k, r)
        seq = _optional(seq_dmin_bound, n, k, r)
        if single is not None and seq is not None and seq > single:
            raise InvariantViolation(f"n={n}, k={k}, r={r}: sequential bound {seq} exceeds single {single}")
        rows.append(TableRow(k, gopalan_bound(n, k, r), single, seq))
    return rows


def write_table(rows: Iterable[TableRow], stream: TextIO) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(TABLE_HEADER)
    for row in rows:
        writer.writerow(["" if v is None else v for v in row])


def format_table(rows: Iterable[TableRow]) -> str:
    out = io.StringIO()
    write_table(rows, out)
    return out.getvalue()
