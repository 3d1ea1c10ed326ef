"""Completing a local code B0 to the dual of a full [n, k] code.

Random codes C are drawn inside the dual of B0 over GF(q), so B0 < C^perp
holds by construction. A draw is kept when it has dimension k and every
k-core of B0 stays a k-core of C^perp, i.e. C's generator has full column
rank on each core. Such a C has d_min = n + 1 - g_k(B0).

Trial ``i`` of seed ``s`` always uses ``numpy.random.default_rng([s, i])``, so
a request determines its result.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from seqlrc import config
from seqlrc.algebra import FieldMatrix, PrimeField, null_space_basis, rank, rank_of_columns
from seqlrc.bounds import lemma2_field_threshold
from seqlrc.code import CoordSet, GhwProfile, LinearCode, enumerate_cores, ghw_profile, is_core, min_distance
from seqlrc.errors import DomainError, RetryExhaustedError

logger = logging.getLogger(__name__)

_SAMPLE_STREAM = 0x5EED


@dataclass(frozen=True)
class CompletionRequest:
    B0: LinearCode
    k: int
    q: int = config.DEFAULT_PRIME
    seed: int = 0
    max_tries: int = config.DEFAULT_MAX_TRIES

    def __post_init__(self):
        n, t = self.B0.n, self.B0.k
        if not 1 <= self.k <= n - t:
            raise DomainError(f"k={self.k} outside 1..{n - t} for a [{n}, {t}] local code")
        if self.q >= 1 << 63:
            raise DomainError(f"q={self.q} does not fit a 64-bit integer")
        PrimeField(self.q)
        if self.max_tries < 1:
            raise DomainError(f"max_tries must be positive, got {self.max_tries}")
        if self.seed < 0:
            raise DomainError(f"seed must be non-negative, got {self.seed}")


@dataclass(frozen=True)
class CompletionResult:
    code: LinearCode
    attempts: int
    cores_checked: int
    exhaustive: bool
    field_threshold: int


def _cores(B: LinearCode, k: int, seed: int, limits: config.Limits):
    total = math.comb(B.n, k)
    if total <= limits.max_subsets:
        return enumerate_cores(B, k, limits), True
    rng = np.random.default_rng([seed, _SAMPLE_STREAM])
    found = set()
    for _ in range(limits.core_sample_size):
        S = tuple(sorted(int(c) + 1 for c in rng.choice(B.n, size=k, replace=False)))
        if is_core(B, S):
            found.add(S)
    logger.info("C(%d, %d)=%d candidate sets; checking %d sampled cores", B.n, k, total, len(found))
    return sorted(found), False


def _preserves_cores(G: FieldMatrix, cores: List[CoordSet], k: int) -> bool:
    return all(rank_of_columns(G, S) == k for S in cores)


def complete(req: CompletionRequest, limits: config.Limits = None) -> CompletionResult:
    limits = config.resolve(limits)
    field = PrimeField(req.q)
    B = req.B0.lift(field)
    n, t, k = B.n, B.k, req.k
    N = null_space_basis(B.generator)
    cores, exhaustive = _cores(B, k, req.seed, limits)
    logger.debug("%d %d-cores of the local code", len(cores), k)
    for trial in range(req.max_tries):
        rng = np.random.default_rng([req.seed, trial])
        coeffs = FieldMatrix(field, rng.integers(0, req.q, size=(k, n - t), dtype=np.int64), cols=n - t)
        G = coeffs.matmul(N)
        if rank(G) == k and _preserves_cores(G, cores, k):
            logger.info("completion accepted at attempt %d over %s", trial + 1, field)
            return CompletionResult(
                code=LinearCode(G),
                attempts=trial + 1,
                cores_checked=len(cores),
                exhaustive=exhaustive,
                field_threshold=lemma2_field_threshold(n, k),
            )
        logger.info("attempt %d rejected", trial + 1)
    raise RetryExhaustedError(req.max_tries, f"no core-preserving [{n}, {k}] completion over {field}")


def verify_b0_in_dual(C: LinearCode, B0: LinearCode) -> bool:
    """Every row of B0 (read in C's field) is orthogonal to every row of C."""
    B = B0.lift(C.field)
    if B.n != C.n:
        return False
    return not B.generator.matmul(C.generator.transpose()).data.any()


def theorem4_profile(B0: LinearCode, k: int, limits: config.Limits = None) -> GhwProfile:
    """Predicted GHWs of C^perp: those of B0 up to index g_k - k, then i + k."""
    n = B0.n
    profile = ghw_profile(B0, limits=limits)
    g = profile.gap(k)
    weights = list(profile.weights[:g - k]) + [i + k for i in range(g - k + 1, n - k + 1)]
    return GhwProfile.from_weights(n, weights)


def expected_min_distance(B0: LinearCode, k: int, limits: config.Limits = None) -> int:
    return B0.n + 1 - ghw_profile(B0, limits=limits).gap(k)


def verify_theorem3(C: LinearCode, B0: LinearCode, k: Optional[int] = None, limits: config.Limits = None) -> bool:
    """d_min(C) == n + 1 - g_k(B0), with B0 read over C's field."""
    k = C.k if k is None else k
    B = B0.lift(C.field)
    actual = min_distance(C, limits=limits)
    expected = expected_min_distance(B, k, limits)
    logger.debug("d_min=%d, expected %d", actual, expected)
    return actual == expected


def verify_theorem4(C: LinearCode, B0: LinearCode, k: Optional[int] = None, limits: config.Limits = None) -> bool:
    k = C.k if k is None else k
    B = B0.lift(C.field)
    return ghw_profile(C.dual, limits=limits) == theorem4_profile(B, k, limits)
