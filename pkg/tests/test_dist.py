from __future__ import absolute_import, division
import math
import unittest
import logging

import numpy as np
from scipy import stats

from fepstat import dist
from fepstat.dist import Normal, StudentT, ChiSquare, FisherF, cdf, sf, quantile
from fepstat.utils import DomainError

logging.getLogger('fepstat').setLevel(logging.ERROR)

P_GRID = np.linspace(0.005, 0.995, 199)
DFS = (1, 2, 4, 8, 29, 49, 5.882)


def all_laws():
    yield Normal()
    for df in DFS:
        yield StudentT(df)
        yield ChiSquare(df)
    for d1 in DFS:
        for d2 in (1, 4, 29, 5.882):
            yield FisherF(d1, d2)


class TestCdf(unittest.TestCase):

    def test_closed_forms(self):
        self.assertEqual(cdf(Normal(), 0.0), 0.5)
        for x in (0.13, 0.5, 1.0, 4.0, 12.0):
            self.assertAlmostEqual(cdf(ChiSquare(2), x), -math.expm1(-x / 2), delta=1e-12)
            self.assertAlmostEqual(sf(ChiSquare(2), x), math.exp(-x / 2),
                                   delta=1e-12 * math.exp(-x / 2))
        self.assertAlmostEqual(cdf(ChiSquare(2), 0.13), 0.0629, delta=1e-4)
        self.assertAlmostEqual(cdf(StudentT(1), 1.0), 0.75, delta=1e-12)
        for x in np.linspace(-20, 20, 81):
            self.assertAlmostEqual(cdf(StudentT(1), x), 0.5 + math.atan(x) / math.pi, delta=1e-12)

    def test_against_scipy(self):
        for x in np.linspace(-8, 8, 161):
            self.assertAlmostEqual(cdf(Normal(), x), stats.norm.cdf(x), delta=1e-12)
            for df in DFS:
                self.assertAlmostEqual(cdf(StudentT(df), x), stats.t.cdf(x, df), delta=1e-10)
        for x in np.linspace(0.01, 40, 120):
            for df in DFS:
                self.assertAlmostEqual(cdf(ChiSquare(df), x), stats.chi2.cdf(x, df), delta=1e-10)
                self.assertAlmostEqual(cdf(FisherF(df, 7), x / 4), stats.f.cdf(x / 4, df, 7),
                                       delta=1e-10)

    def test_sf_complements_cdf(self):
        for d in all_laws():
            for x in (0.2, 1.0, 3.0, 25.0):
                self.assertAlmostEqual(cdf(d, x) + sf(d, x), 1.0, delta=1e-12)

    def test_monotone_and_limits(self):
        for d in all_laws():
            xs = np.linspace(-5 if d.symmetric else 0, 60, 300)
            values = [cdf(d, x) for x in xs]
            self.assertTrue(all(b >= a - 1e-15 for a, b in zip(values, values[1:])), d)
            self.assertEqual(cdf(d, float('inf')), 1.0)
            self.assertEqual(cdf(d, float('-inf')), 0.0)

    def test_nan(self):
        self.assertRaises(DomainError, cdf, Normal(), float('nan'))
        self.assertRaises(DomainError, sf, ChiSquare(3), float('nan'))


class TestQuantile(unittest.TestCase):

    def test_known_values(self):
        self.assertEqual(quantile(Normal(), 0.5), 0.0)
        self.assertAlmostEqual(quantile(Normal(), 0.975), 1.9599639845, delta=1e-9)
        self.assertAlmostEqual(quantile(StudentT(8), 0.975), 2.3060041352, delta=1e-9)
        self.assertAlmostEqual(quantile(StudentT(4), 0.975), 2.7764451052, delta=1e-9)
        self.assertAlmostEqual(quantile(FisherF(8, 8), 0.975), 4.4332598, delta=1e-6)
        self.assertAlmostEqual(quantile(ChiSquare(4), 0.975), 11.1432867, delta=1e-6)
        self.assertAlmostEqual(quantile(ChiSquare(4), 0.025), 0.4844186, delta=1e-6)

    def test_against_scipy(self):
        for p in (0.005, 0.025, 0.05, 0.3, 0.5, 0.7, 0.95, 0.975, 0.995):
            for df in DFS:
                want = stats.t.ppf(p, df)
                self.assertAlmostEqual(quantile(StudentT(df), p), want,
                                       delta=1e-8 * max(1.0, abs(want)))
                want = stats.chi2.ppf(p, df)
                self.assertAlmostEqual(quantile(ChiSquare(df), p), want,
                                       delta=1e-8 * max(1.0, want))
                want = stats.f.ppf(p, df, 9)
                self.assertAlmostEqual(quantile(FisherF(df, 9), p), want,
                                       delta=1e-8 * max(1.0, want))

    def test_round_trip(self):
        n = 0
        for d in all_laws():
            for p in P_GRID:
                q = quantile(d, p)
                self.assertLess(abs(cdf(d, q) - p), 1e-9, (d, p, q))
                n += 1
        self.assertGreaterEqual(n, 1000)

    def test_increasing_in_p(self):
        for d in all_laws():
            qs = [quantile(d, p) for p in P_GRID]
            self.assertTrue(all(b > a for a, b in zip(qs, qs[1:])), d)

    def test_student_dominates_normal(self):
        z = Normal()
        for df in (1, 2, 3, 5.882, 9, 29, 49, 100, 200):
            for p in np.linspace(0.51, 0.999, 50):
                self.assertGreater(quantile(StudentT(df), p), quantile(z, p), (df, p))

    def test_fisher_reciprocity(self):
        for a in (1, 3, 8, 5.882):
            for b in (2, 8, 49):
                for p in (0.01, 0.1, 0.5, 0.9, 0.975):
                    q = quantile(FisherF(a, b), p)
                    r = 1.0 / quantile(FisherF(b, a), 1 - p)
                    self.assertAlmostEqual(q, r, delta=1e-8 * max(1.0, q))

    def test_deep_lower_tail(self):
        for d in (Normal(), StudentT(4), StudentT(29)):
            prev = None
            for p in (1e-9, 1e-12, 1e-16, 1e-17, 1e-20, 1e-40):
                q = quantile(d, p)
                self.assertAlmostEqual(cdf(d, q) / p, 1.0, delta=1e-8, msg=(d, p, q))
                if prev is not None:
                    self.assertLess(q, prev, (d, p))
                prev = q
        self.assertAlmostEqual(quantile(Normal(), 1e-20), -9.262340089798408, delta=1e-6)

    def test_symmetry(self):
        for d in (Normal(), StudentT(3), StudentT(5.882)):
            for p in (0.01, 0.2, 0.45):
                self.assertAlmostEqual(quantile(d, p), -quantile(d, 1 - p), delta=1e-12)

    def test_domain(self):
        for p in (0.0, 1.0, -0.5, 1.5, float('nan')):
            self.assertRaises(DomainError, quantile, Normal(), p)
        self.assertRaises(DomainError, StudentT, 0)
        self.assertRaises(DomainError, ChiSquare, -1)
        self.assertRaises(DomainError, FisherF, 1, float('inf'))
        self.assertRaises(DomainError, StudentT, float('nan'))

    def test_cache(self):
        q = quantile(StudentT(8), 0.975)
        self.assertIn((StudentT(8.0), 0.975), dist._quantile_cache)
        self.assertEqual(quantile(StudentT(8.0), 0.975), q)
        self.assertEqual(StudentT(8), StudentT(8.0))
        self.assertNotEqual(StudentT(8), ChiSquare(8))
        self.assertEqual(len({FisherF(2, 3), FisherF(2.0, 3.0), FisherF(3, 2)}), 2)


if __name__ == '__main__':
    unittest.main()
