"""Optimal local-parity codes from Turán graphs.

Take the complete multipartite graph with x = (r + beta) / beta parts of beta
vertices each. Every vertex has degree r. Coordinates 1..b name the vertices
and b+1..n the edges. The local parity of vertex i covers i and its incident
edges, so it has weight r + 1. Any two parities share at most the edge
joining their vertices, every edge lies in exactly two parities and each
vertex coordinate is private to its own parity.
"""
from __future__ import annotations

import functools
import itertools
import logging
import math
import operator
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from seqlrc import config
from seqlrc._native import fits_word, kernels
from seqlrc.algebra import GF2, popcount
from seqlrc.bounds import e_sequence, seq_parity_count
from seqlrc.code import CoordSet, GhwProfile, LinearCode, coord_set, ghw_profile
from seqlrc.errors import (
    DomainError,
    InvalidParametersError,
    InvariantViolation,
    PreconditionError,
    ResourceLimitError,
)
from seqlrc.locality import is_locally_2_reconstructible

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TuranDesign:
    r: int
    beta: int
    x: int
    b: int
    n: int
    edges: Tuple[Tuple[int, int], ...]
    supports: Tuple[CoordSet, ...]

    def edge_label(self, u: int, v: int) -> int:
        return self.b + 1 + self.edges.index((min(u, v), max(u, v)))


def _check_parameters(r: int, beta: int) -> None:
    if r < 1:
        raise InvalidParametersError(f"locality r must be at least 1, got {r}")
    if not 1 <= beta <= r:
        raise InvalidParametersError(f"beta must lie in 1..{r}, got {beta}")
    if r % beta:
        raise InvalidParametersError(f"beta={beta} does not divide r={r}")


def turan_graph(r: int, beta: int) -> nx.Graph:
    """Complete multipartite graph on vertices 1..r+beta, edges carrying a ``label``."""
    _check_parameters(r, beta)
    x = (r + beta) // beta
    G = nx.complete_multipartite_graph(*[beta] * x)
    G = nx.convert_node_labels_to_integers(G, first_label=1)
    b = G.number_of_nodes()
    for label, (u, v) in enumerate(sorted(tuple(sorted(e)) for e in G.edges()), start=b + 1):
        G.edges[u, v]["label"] = label
    return G


def turan_design(r: int, beta: int) -> TuranDesign:
    G = turan_graph(r, beta)
    x = (r + beta) // beta
    b = r + beta
    n = (r + beta) * (r + 2) // 2
    edges = tuple(sorted(tuple(sorted(e)) for e in G.edges()))
    if len(edges) != n - b:
        raise InvariantViolation(f"Turán graph has {len(edges)} edges, expected {n - b}")
    bad = [v for v, degree in G.degree() if degree != r]
    if bad:
        raise InvariantViolation(f"vertices {bad} do not have degree {r}")
    supports = tuple(
        tuple(sorted([i] + [G.edges[i, j]["label"] for j in G.neighbors(i)]))
        for i in range(1, b + 1)
    )
    logger.debug("Turán design r=%d beta=%d: n=%d, b=%d", r, beta, n, b)
    return TuranDesign(r, beta, x, b, n, edges, supports)


def designs(max_r: int) -> Iterator[TuranDesign]:
    """Every valid design with 1 <= r <= max_r, beta increasing for each r."""
    for r in range(1, max_r + 1):
        for beta in range(1, r + 1):
            if r % beta == 0:
                yield turan_design(r, beta)


def turan_b0(design: TuranDesign) -> LinearCode:
    rows = [[0] * design.n for _ in design.supports]
    for row, S in zip(rows, design.supports):
        for c in S:
            row[c - 1] = 1
    code = LinearCode.from_rows(GF2, rows, design.n)
    if code.k != design.b:
        raise InvariantViolation(f"local code has dimension {code.k}, expected {design.b}")
    return code


def _masks(supports: Sequence[CoordSet]) -> List[int]:
    return [sum(1 << (c - 1) for c in S) for S in supports]


def min_union(supports: Sequence[CoordSet], m: int, limits: config.Limits = None) -> int:
    """Least size of the union of m of the given supports."""
    limits = config.resolve(limits)
    if not 1 <= m <= len(supports):
        raise DomainError(f"m={m} outside 1..{len(supports)}")
    count = math.comb(len(supports), m)
    if count > limits.max_subsets:
        raise ResourceLimitError(f"C({len(supports)}, {m}) support combinations", count,
                                 "max_subsets", limits.max_subsets)
    masks = _masks(supports)
    if kernels is not None and fits_word(masks):
        return kernels.min_union(masks, m)
    return min(popcount(functools.reduce(operator.or_, chosen)) for chosen in itertools.combinations(masks, m))


def closed_form_fm(design: TuranDesign) -> List[int]:
    """f_1..f_b from f_b = n and f_m - f_{m-1} = v + ux - u + 1, where r + beta - m = ux + v."""
    x, beta = design.x, design.beta
    f = [design.n]
    for m in range(design.b, 1, -1):
        u, v = divmod(design.r + beta - m, x)
        if not (0 <= u <= beta - 1 and 0 <= v <= x - 1):
            raise InvariantViolation(f"m={m}: decomposition u={u}, v={v} out of range")
        f.append(f[-1] - (v + u * x - u + 1))
    f.reverse()
    if f[0] != design.r + 1:
        raise InvariantViolation(f"closed form gives f_1={f[0]}, expected {design.r + 1}")
    return f


def lemma7_conditions(supports: Sequence[CoordSet], n: int) -> bool:
    """Pairwise intersections of size <= 1, coordinates in <= 2 supports, a private coordinate each."""
    sets = [set(coord_set(S, n)) for S in supports]
    for A, B in itertools.combinations(sets, 2):
        if len(A & B) > 1:
            return False
    multiplicity = [0] * (n + 1)
    for S in sets:
        for c in S:
            multiplicity[c] += 1
    if max(multiplicity) > 2:
        return False
    return all(any(multiplicity[c] == 1 for c in S) for S in sets)


def ghw_by_subsets(supports: Sequence[CoordSet], code: LinearCode, limits: config.Limits = None) -> GhwProfile:
    """GHWs of a binary code spanned by the indicators of ``supports``.

    When the supports meet pairwise in at most one coordinate, no coordinate
    lies in three of them and each has a private coordinate, d_m is the least
    union of m supports. Otherwise use ``code.ghw_profile``.
    """
    n = code.n
    if code.field.modulus != 2:
        raise PreconditionError("union formula needs a binary code")
    if not lemma7_conditions(supports, n):
        raise PreconditionError("supports violate the union conditions; use code.ghw_profile")
    if sorted(code.row_supports()) != sorted(tuple(S) for S in supports):
        raise PreconditionError("generator rows must be the indicators of the given supports")
    return GhwProfile.from_weights(n, [min_union(supports, m, limits) for m in range(1, len(supports) + 1)])


@dataclass(frozen=True)
class OptimalityReport:
    n: int
    r: int
    b: int
    expected_b: int
    e: Optional[Tuple[int, ...]]
    union_minimum: Tuple[int, ...]
    closed_form: Optional[Tuple[int, ...]]
    ghw: Optional[Tuple[int, ...]]
    union_conditions: bool
    reconstructible: bool

    @property
    def optimal(self) -> bool:
        if self.e is None or self.b != self.expected_b:
            return False
        matches = [self.union_minimum] + [x for x in (self.closed_form, self.ghw) if x is not None]
        return self.union_conditions and self.reconstructible and all(x == self.e for x in matches)

    def lines(self) -> List[str]:
        def show(values):
            return "-" if values is None else " ".join(map(str, values))

        return [
            f"n: {self.n} r: {self.r} b: {self.b} (needs {self.expected_b})",
            f"e: {show(self.e)}",
            f"min_union: {show(self.union_minimum)}",
            f"closed_form: {show(self.closed_form)}",
            f"ghw: {show(self.ghw)}",
            f"union_conditions: {'yes' if self.union_conditions else 'no'}",
            f"reconstructible: {'yes' if self.reconstructible else 'no'}",
            f"optimal: {'yes' if self.optimal else 'no'}",
        ]


def optimality_report(B0: LinearCode, r: int, limits: config.Limits = None,
                      closed_form: Optional[Sequence[int]] = None) -> OptimalityReport:
    """Compare the GHWs of a local code generated by its parities with the e-sequence."""
    limits = config.resolve(limits)
    n = B0.n
    supports = B0.row_supports()
    if any(len(S) > r + 1 for S in supports):
        raise PreconditionError(f"generator rows must have weight at most {r + 1}")
    expected_b = seq_parity_count(n, r)
    try:
        e = e_sequence(n, r, expected_b).e
    except InvalidParametersError as exc:
        logger.warning("no valid bound sequence: %s", exc)
        e = None
    union = tuple(min_union(supports, m, limits) for m in range(1, len(supports) + 1))
    ghw = None
    if n <= limits.max_ghw_length:
        ghw = ghw_profile(B0, limits=limits).weights
    else:
        logger.info("n=%d exceeds max_ghw_length, skipping the brute-force profile", n)
    return OptimalityReport(
        n=n,
        r=r,
        b=B0.k,
        expected_b=expected_b,
        e=e,
        union_minimum=union,
        closed_form=None if closed_form is None else tuple(closed_form),
        ghw=ghw,
        union_conditions=lemma7_conditions(supports, n),
        reconstructible=is_locally_2_reconstructible(B0.dual, r, limits),
    )


def verify_optimality(design: TuranDesign, limits: config.Limits = None) -> OptimalityReport:
    return optimality_report(turan_b0(design), design.r, limits, closed_form=closed_form_fm(design))
