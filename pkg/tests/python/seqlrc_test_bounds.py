import os
import unittest

from seqlrc.bounds import (
    TABLE_HEADER,
    check_ghw_bounds,
    classic_bounds,
    compare_table,
    e_sequence,
    format_report,
    format_table,
    gopalan_bound,
    kth_gap,
    lemma2_field_threshold,
    pkl_bound,
    seq_dmin_bound,
    seq_parity_count,
    single_dmin_bound,
    single_parity_count,
    trivial_ghw_bounds,
    wz_bound,
)
from seqlrc.errors import DomainError, InvalidParametersError

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")


class SequenceTestCase(unittest.TestCase):
    def testExamples(self):
        self.assertEqual(e_sequence(10, 3, 4).e, (4, 7, 9, 10))
        self.assertEqual(e_sequence(15, 3, 6).e, (4, 7, 10, 12, 14, 15))
        self.assertEqual(e_sequence(18, 3, 5).e, (4, 7, 11, 14, 18))
        self.assertEqual(e_sequence(12, 2, 6).e, (3, 5, 7, 9, 11, 12))
        self.assertEqual(e_sequence(7, 6, 1).e, (7,))

    def testInvalidSequence(self):
        # e_3 would equal e_4 = 8
        with self.assertRaises(InvalidParametersError):
            e_sequence(8, 3, 4)
        with self.assertRaises(DomainError):
            e_sequence(3, 3, 1)
        with self.assertRaises(DomainError):
            e_sequence(10, 0, 4)

    def testParityCounts(self):
        self.assertEqual(seq_parity_count(10, 3), 4)
        self.assertEqual(seq_parity_count(15, 3), 6)
        self.assertEqual(single_parity_count(18, 3), 5)
        self.assertEqual(single_parity_count(8, 3), 2)

    def testKthGap(self):
        self.assertEqual([kth_gap(10, (4, 7, 9, 10), k) for k in range(1, 7)], [1, 2, 3, 5, 6, 8])
        with self.assertRaises(DomainError):
            kth_gap(10, (4, 7, 9, 10), 7)


class SequentialBoundTestCase(unittest.TestCase):
    def testExample1Parameters(self):
        report = seq_dmin_bound(10, 4, 3)
        self.assertEqual(report.value, 6)
        self.assertEqual(report.gap, 5)
        self.assertEqual(report.ell, 1)
        self.assertEqual(report.sequence.b, 4)

        report = seq_dmin_bound(10, 6, 3)
        self.assertEqual(report.value, 3)
        self.assertEqual(report.ell, 2)

    def testExample2Parameters(self):
        self.assertEqual(seq_dmin_bound(15, 6, 3).value, 8)
        self.assertEqual(seq_dmin_bound(15, 9, 3).value, 3)

    def testDomain(self):
        for k in (0, 7):
            with self.assertRaises(DomainError):
                seq_dmin_bound(10, k, 3)
        with self.assertRaises(DomainError):
            seq_dmin_bound(10, 4, 0)
        with self.assertRaises(InvalidParametersError):
            seq_dmin_bound(8, 2, 3)

    def testFormat(self):
        self.assertEqual(
            format_report(seq_dmin_bound(10, 4, 3)),
            "d_min <= 6\nb: 4\ne: 4 7 9 10\ngap: 5 (k + l with l = 1)",
        )
        self.assertEqual(format_report(classic_bounds(10, 4, 3)[0]), "d_min <= 6")


class SingleBoundTestCase(unittest.TestCase):
    def testValues(self):
        report = single_dmin_bound(18, 9, 3)
        self.assertEqual(report.value, 7)
        self.assertEqual(report.sequence.e, (4, 7, 11, 14, 18))
        self.assertEqual(single_dmin_bound(8, 4, 3).value, 4)
        self.assertEqual(gopalan_bound(8, 4, 3), 4)

    def testSingleParity(self):
        for r in range(1, 6):
            n = r + 1
            self.assertEqual(single_dmin_bound(n, 1, r).value, n)


class ClassicBoundTestCase(unittest.TestCase):
    def testValues(self):
        self.assertEqual(gopalan_bound(10, 4, 3), 6)
        self.assertEqual(pkl_bound(10, 4, 3, 3), 5)
        self.assertEqual(wz_bound(10, 4, 3, 3), 6)
        self.assertEqual(pkl_bound(15, 6, 3, 3), 8)
        self.assertEqual(wz_bound(15, 6, 3, 3), 8)

    def testReports(self):
        self.assertEqual([(b.kind, b.value) for b in classic_bounds(10, 4, 3, 3)],
                         [("eq1", 6), ("eq2", 5), ("eq3", 6)])
        self.assertEqual([b.kind for b in classic_bounds(10, 4, 1, 3)], ["eq1", "eq2"])
        self.assertEqual([b.kind for b in classic_bounds(10, 4, 3)], ["eq1"])

    def testDomain(self):
        with self.assertRaises(DomainError):
            pkl_bound(10, 4, 3, 1)
        with self.assertRaises(DomainError):
            wz_bound(10, 4, 1, 3)
        with self.assertRaises(DomainError):
            gopalan_bound(10, 11, 3)


class InvariantSweepTestCase(unittest.TestCase):
    def testOrdering(self):
        checked = 0
        for n in range(3, 41):
            for r in range(1, min(6, n - 1) + 1):
                for k in range(1, n - seq_parity_count(n, r) + 1):
                    try:
                        seq = seq_dmin_bound(n, k, r)
                        single = single_dmin_bound(n, k, r)
                    except InvalidParametersError:
                        continue
                    self.assertEqual(seq.gap, k + seq.ell)
                    self.assertGreaterEqual(seq.value, 1)
                    self.assertLessEqual(seq.value, single.value)
                    self.assertLessEqual(single.value, gopalan_bound(n, k, r))
                    self.assertTrue(all(e <= m * (r + 1) for m, e in enumerate(seq.sequence.e, start=1)))
                    self.assertTrue(all(e <= m * (r + 1) for m, e in enumerate(single.sequence.e, start=1)))
                    checked += 1
        print(f"\nchecked bound ordering on {checked} parameter sets")

    def testTrivialGhwBounds(self):
        self.assertEqual(trivial_ghw_bounds(3, 4), [4, 8, 12, 16])
        sequence = e_sequence(10, 3, 4)
        self.assertTrue(check_ghw_bounds((4, 7, 9, 10), sequence))
        self.assertFalse(check_ghw_bounds((4, 8, 9, 10), sequence))

    def testFieldThreshold(self):
        self.assertEqual(lemma2_field_threshold(10, 4), 40000)


class CompareTableTestCase(unittest.TestCase):
    def testGolden(self):
        with open(os.path.join(DATA_DIR, "table_n18_r3.csv"), newline="") as f:
            expected = f.read()
        rows = compare_table(18, 3)
        self.assertEqual(len(rows), 13)
        self.assertEqual(format_table(rows), expected)

    def testUndefinedSequentialColumn(self):
        rows = compare_table(8, 3)
        self.assertEqual([row.k for row in rows], [1, 2, 3, 4, 5, 6])
        self.assertTrue(all(row.bound_seq is None for row in rows))
        self.assertEqual([row.bound_single for row in rows], [8, 7, 6, 4, 3, 2])
        self.assertEqual([row.bound_eq1 for row in rows], [8, 7, 6, 4, 3, 2])
        self.assertTrue(format_table(rows).splitlines()[1].endswith(","))

    def testRange(self):
        rows = compare_table(18, 3, range(8, 10))
        self.assertEqual([tuple(row) for row in rows], [(8, 9, 9, 8), (9, 8, 7, 6)])
        self.assertEqual(format_table([]), ",".join(TABLE_HEADER) + "\n")


if __name__ == "__main__":
    unittest.main()
