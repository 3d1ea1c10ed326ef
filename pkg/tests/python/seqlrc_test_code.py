import itertools
import unittest
from unittest import mock

import numpy as np

from seqlrc._native import MAX_WALK_COLUMNS
from seqlrc.algebra import GF2, FieldMatrix, PrimeField
from seqlrc.code import (
    GhwProfile,
    LinearCode,
    _native_walk,
    coord_set,
    enumerate_cores,
    find_core_within,
    ghw_profile,
    ghw_profile_by_subcodes,
    is_core,
    local_parity_supports,
    low_weight_dual_subcode,
    min_distance,
    search_core_within,
    shorten,
    subcode_dim_on,
    wei_duality_check,
)
from seqlrc.config import Limits
from seqlrc.errors import DomainError, InvariantViolation, ResourceLimitError

from fixtures import example1_b0, example2_b0, random_code


def repetition(n):
    return LinearCode.from_rows(GF2, [[1] * n])


def supported_words(C, S):
    """Nonzero codewords of C with support inside S, by enumeration."""
    outside = [j for j in range(C.n) if j + 1 not in set(S)]
    words = C.codewords()
    return [w for w in words if w.any() and not w[outside].any()]


class DualTestCase(unittest.TestCase):
    def testFullSpace(self):
        self.assertEqual(LinearCode.full(GF2, 3).dual.k, 0)

    def testRepetition(self):
        even = LinearCode.from_rows(GF2, [[1, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 1]])
        self.assertTrue(repetition(4).dual.same_code(even))

    def testDoubleDual(self):
        rng = np.random.default_rng(1)
        for p in (2, 3, 65537):
            C = random_code(rng, 7, 3, PrimeField(p))
            self.assertEqual(C.dual.k, 4)
            self.assertTrue(C.dual.dual.same_code(C))

    def testDependentRowsRejected(self):
        with self.assertRaises(DomainError):
            LinearCode.from_rows(GF2, [[1, 1, 0], [1, 1, 0]])
        self.assertEqual(LinearCode.from_generator(FieldMatrix(GF2, [[1, 1, 0], [1, 1, 0]])).k, 1)


class SubcodeDimTestCase(unittest.TestCase):
    def testExample1(self):
        B0 = example1_b0()
        self.assertEqual(subcode_dim_on(B0, range(1, 11)), 4)
        self.assertEqual(subcode_dim_on(B0, [1, 2, 3, 4]), 1)
        self.assertEqual(subcode_dim_on(B0, [1, 2, 3]), 0)
        self.assertEqual(subcode_dim_on(B0, []), 0)

    def testMatchesEnumeration(self):
        rng = np.random.default_rng(2)
        C = random_code(rng, 7, 3)
        for size in range(8):
            for S in itertools.combinations(range(1, 8), size):
                words = supported_words(C, S)
                self.assertEqual(2 ** subcode_dim_on(C, S), len(words) + 1)

    def testShorten(self):
        B0 = example1_b0()
        short = shorten(B0, [1, 2, 3, 4, 5, 6, 7])
        self.assertEqual((short.n, short.k), (7, 2))
        self.assertEqual(shorten(B0, [1, 2, 3]).k, 0)


class GhwProfileTestCase(unittest.TestCase):
    def testFullSpace(self):
        for strategy in ("subsets", "flats"):
            profile = ghw_profile(LinearCode.full(GF2, 3), strategy)
            self.assertEqual(profile.weights, (1, 2, 3))
            self.assertEqual(profile.gaps, ())

    def testRepetition(self):
        profile = ghw_profile(repetition(4))
        self.assertEqual(profile.weights, (4,))
        self.assertEqual(profile.gaps, (1, 2, 3))

    def testExample1(self):
        for strategy in ("auto", "subsets", "flats"):
            profile = ghw_profile(example1_b0(), strategy)
            self.assertEqual(profile.weights, (4, 7, 9, 10))
            self.assertEqual(profile.gaps, (1, 2, 3, 5, 6, 8))
            self.assertEqual(profile.gap(4), 5)

    def testExample2(self):
        profile = ghw_profile(example2_b0())
        self.assertEqual(profile.weights, (4, 7, 10, 12, 14, 15))

    def testZeroCode(self):
        profile = ghw_profile(LinearCode.zero(GF2, 4))
        self.assertEqual(profile.weights, ())
        self.assertEqual(profile.gaps, (1, 2, 3, 4))

    def testStrategiesAgreeOverLargerField(self):
        rng = np.random.default_rng(3)
        F = PrimeField(5)
        for _ in range(10):
            C = random_code(rng, 6, int(rng.integers(1, 5)), F)
            self.assertEqual(ghw_profile(C, "subsets"), ghw_profile(C, "flats"))

    def testOracleEquivalence(self):
        rng = np.random.default_rng(4)
        print("\ncomparing GHW oracles on 100 random binary codes")
        for _ in range(100):
            n = int(rng.integers(2, 11))
            k = int(rng.integers(1, min(n, 6) + 1))
            C = random_code(rng, n, k)
            profile = ghw_profile(C, "subsets")
            self.assertEqual(profile, ghw_profile(C, "flats"))
            self.assertEqual(profile, ghw_profile_by_subcodes(C))
            self.assertEqual(profile.weights[-1], len(C.support()))
            self.assertTrue(wei_duality_check(C))

    def testSubcodeDominance(self):
        rng = np.random.default_rng(5)
        B0 = example1_b0()
        low = ghw_profile(B0)
        for _ in range(10):
            extra = rng.integers(0, 2, size=(2, 10))
            D = LinearCode.span(GF2, 10, list(B0.generator.data) + list(extra))
            self.assertTrue(B0.is_subcode_of(D))
            high = ghw_profile(D)
            for i in range(B0.k):
                self.assertGreaterEqual(low.weights[i], high.weights[i])

    def testLimit(self):
        with self.assertRaises(ResourceLimitError) as ctx:
            ghw_profile(example1_b0(), limits=Limits(max_ghw_length=5))
        self.assertIn("max_ghw_length", str(ctx.exception))
        with self.assertRaises(DomainError):
            ghw_profile(example1_b0(), "codewords")

    def testAutoAvoidsPythonWalkOnLongCodes(self):
        fake = mock.Mock()
        fake.gf2_nullity_profile.side_effect = AssertionError("kernel walk used past its column limit")
        with mock.patch("seqlrc.code.kernels", fake):
            self.assertTrue(_native_walk(repetition(MAX_WALK_COLUMNS)))
            self.assertFalse(_native_walk(repetition(MAX_WALK_COLUMNS + 1)))
            n = MAX_WALK_COLUMNS + 1
            profile = ghw_profile(repetition(n), limits=Limits(max_ghw_length=n))
        self.assertEqual(profile.weights, (n,))
        fake.gf2_nullity_profile.assert_not_called()

    def testProfileValidation(self):
        with self.assertRaises(InvariantViolation):
            GhwProfile.from_weights(5, [3, 3])
        with self.assertRaises(DomainError):
            GhwProfile.from_weights(5, [2, 4]).gap(4)


class MinDistanceTestCase(unittest.TestCase):
    def testExamples(self):
        self.assertEqual(min_distance(repetition(4)), 4)
        self.assertEqual(min_distance(example2_b0()), 4)
        with self.assertRaises(DomainError):
            min_distance(LinearCode.zero(GF2, 3))

    def testExample2Combinations(self):
        words = example2_b0().codewords()
        rows = {tuple(r) for r in example2_b0().generator.to_list()}
        for w in words:
            if w.any() and tuple(int(x) for x in w) not in rows:
                self.assertGreaterEqual(int(w.sum()), 5)


class WeiDualityTestCase(unittest.TestCase):
    def testExamples(self):
        self.assertTrue(wei_duality_check(LinearCode.full(GF2, 3)))
        self.assertTrue(wei_duality_check(example1_b0()))
        self.assertTrue(wei_duality_check(repetition(5)))


class CoreTestCase(unittest.TestCase):
    def testIsCore(self):
        B0 = example1_b0()
        self.assertTrue(is_core(B0, []))
        self.assertTrue(is_core(B0, [1, 2, 3, 5]))
        self.assertFalse(is_core(B0, [1, 2, 3, 4]))

    def testIsCoreMatchesEnumeration(self):
        rng = np.random.default_rng(6)
        for _ in range(20):
            n = int(rng.integers(3, 9))
            C = random_code(rng, n, int(rng.integers(1, n)))
            for size in range(n + 1):
                for S in itertools.combinations(range(1, n + 1), size):
                    self.assertEqual(is_core(C, S), not supported_words(C, S))

    def testEnumerateCores(self):
        self.assertEqual(enumerate_cores(LinearCode.full(GF2, 3), 1), [])
        self.assertEqual(enumerate_cores(LinearCode.zero(GF2, 3), 2), [(1, 2), (1, 3), (2, 3)])
        B0 = example1_b0()
        cores = enumerate_cores(B0, 4)
        expected = [S for S in itertools.combinations(range(1, 11), 4) if not supported_words(B0, S)]
        self.assertEqual(cores, expected)
        self.assertTrue(cores)
        with self.assertRaises(ResourceLimitError):
            enumerate_cores(B0, 4, limits=Limits(max_subsets=10))

    def testFindCoreWithin(self):
        B0 = example1_b0()
        S = find_core_within(B0, [1, 2, 3, 5, 6], 4)
        self.assertEqual(len(S), 4)
        self.assertTrue(set(S) <= {1, 2, 3, 5, 6})
        self.assertTrue(is_core(B0, S))
        self.assertEqual(find_core_within(LinearCode.zero(GF2, 5), [2, 4, 5], 3), (2, 4, 5))

    def testShorteningRarelyFallsBack(self):
        B0 = example1_b0()
        profile = ghw_profile(B0)
        calls = fallbacks = 0
        for k in range(1, 7):
            g = profile.gap(k)
            for S in itertools.combinations(range(1, 11), g):
                found = search_core_within(B0, S, k)
                calls += 1
                fallbacks += found.used_fallback
                self.assertEqual(len(found.core), k)
                self.assertTrue(set(found.core) <= set(S))
                self.assertTrue(is_core(B0, found.core))
        print(f"\n{fallbacks} exhaustive fallbacks in {calls} searches")
        self.assertLessEqual(fallbacks, 0.05 * calls)

    def testFindCoreWithinRandom(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            B0 = random_code(rng, 10, int(rng.integers(1, 5)))
            profile = ghw_profile(B0)
            k = int(rng.integers(1, len(profile.gaps) + 1))
            g = profile.gap(k)
            for S in itertools.combinations(range(1, 11), g):
                core = find_core_within(B0, S, k)
                self.assertTrue(is_core(B0, core))

    def testNoCore(self):
        with self.assertRaises(InvariantViolation):
            find_core_within(example1_b0(), [1, 2, 3, 4], 4)


class LowWeightDualSubcodeTestCase(unittest.TestCase):
    def testMdsHasNoLocalParities(self):
        F = PrimeField(5)
        C = LinearCode.from_rows(F, [[1, 0, 1, 1], [0, 1, 1, 2]])
        self.assertEqual(low_weight_dual_subcode(C, 2).k, 0)
        self.assertEqual(low_weight_dual_subcode(C, 3).k, 2)

    def testExample1(self):
        B0 = example1_b0()
        C = B0.dual
        for limits in (Limits(), Limits(max_codewords=1)):
            found = low_weight_dual_subcode(C, 4, limits)
            self.assertTrue(found.same_code(B0))
            self.assertTrue(all(len(S) <= 4 for S in found.row_supports()))
        supports = local_parity_supports(C, 4)
        self.assertEqual(len(supports), 5)
        self.assertIn((4, 7, 9, 10), supports)
        self.assertEqual(supports, local_parity_supports(C, 4, Limits(max_codewords=1)))

    def testFullSpace(self):
        self.assertEqual(low_weight_dual_subcode(LinearCode.full(GF2, 3), 1).k, 0)

    def testLargeFieldScan(self):
        F = PrimeField(65537)
        C = LinearCode.from_rows(F, [[1, 2, 0, 0, 3], [0, 0, 1, 5, 0]])
        found = low_weight_dual_subcode(C, 2)
        self.assertTrue(found.is_subcode_of(C.dual))
        self.assertIn((3, 4), local_parity_supports(C, 2))

    def testWeightBound(self):
        with self.assertRaises(DomainError):
            low_weight_dual_subcode(example1_b0(), 0)


class CoordSetTestCase(unittest.TestCase):
    def testValidation(self):
        self.assertEqual(coord_set([3, 1, 2], 4), (1, 2, 3))
        with self.assertRaises(DomainError):
            coord_set([1, 1], 4)
        with self.assertRaises(DomainError):
            coord_set([5], 4)


if __name__ == "__main__":
    unittest.main()
