from __future__ import absolute_import, division
import unittest
import logging

import numpy as np
from scipy import stats

from fepstat.moments import Sample, summarize, central_moment
from fepstat.utils import DomainError, DegenerateSampleError

logging.getLogger('fepstat').setLevel(logging.ERROR)


def rel(a, b, tol):
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


class TestSample(unittest.TestCase):

    def test_basic(self):
        s = Sample([1, 2, 3], name='abc')
        self.assertEqual(s.n, 3)
        self.assertEqual(len(s), 3)
        self.assertEqual(list(s), [1.0, 2.0, 3.0])
        self.assertIn('abc', repr(s))

    def test_read_only(self):
        s = Sample([1.0, 2.0])
        with self.assertRaises(ValueError):
            s.values[0] = 5.0

    def test_invalid(self):
        self.assertRaises(DomainError, Sample, [])
        self.assertRaises(DomainError, Sample, [1.0, float('nan')])
        self.assertRaises(DomainError, Sample, [float('inf'), 1.0])

    def test_summary_cached(self):
        s = Sample([1, 2, 3, 4])
        self.assertIs(s.summary(), s.summary())


class TestSummarize(unittest.TestCase):

    def test_two_points(self):
        sm = summarize([-1, 1])
        self.assertEqual(sm.mean, 0.0)
        self.assertAlmostEqual(sm.s2, 2.0)
        self.assertAlmostEqual(sm.mu4, 1.0)
        self.assertAlmostEqual(sm.t2, -3.0)

    def test_one_to_five(self):
        sm = summarize([1, 2, 3, 4, 5])
        self.assertAlmostEqual(sm.mean, 3.0)
        self.assertAlmostEqual(sm.s2, 2.5)
        self.assertAlmostEqual(sm.mu4, 6.8)
        self.assertAlmostEqual(sm.t2, 0.55)
        self.assertAlmostEqual(sm.skewness, 0.0)

    def test_constant(self):
        sm = summarize([7.5] * 6)
        self.assertEqual(sm.mean, 7.5)
        self.assertEqual(sm.s2, 0.0)
        self.assertEqual(sm.mu4, 0.0)
        self.assertIsNone(sm.skewness)
        self.assertIsNone(sm.kurtosis)
        self.assertTrue(sm.degenerate)
        self.assertRaises(DegenerateSampleError, sm.require_variance)

    def test_single_value(self):
        sm = summarize([4.0])
        self.assertIsNone(sm.s2)
        self.assertIsNone(sm.t2)
        self.assertRaises(DegenerateSampleError, sm.require_variance)

    def test_against_scipy(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            x = rng.lognormal(12, 1.2, size=rng.integers(5, 300))
            sm = summarize(x)
            self.assertTrue(rel(sm.s2, np.var(x, ddof=1), 1e-10))
            self.assertTrue(rel(sm.skewness, stats.skew(x), 1e-9))
            self.assertTrue(rel(sm.kurtosis, stats.kurtosis(x, fisher=False), 1e-9))
            self.assertTrue(rel(sm.mu4, stats.moment(x, 4), 1e-9))

    def test_large_offset(self):
        # income-like magnitudes: two-pass keeps the variance exact
        sm = summarize([1e9 + 1, 1e9 + 2, 1e9 + 3])
        self.assertAlmostEqual(sm.s2, 1.0, places=6)

    def test_location_invariance(self):
        rng = np.random.default_rng(11)
        for _ in range(1000):
            x = rng.normal(0, rng.uniform(0.1, 10), size=rng.integers(4, 40))
            c = rng.uniform(-100, 100)
            a, b = summarize(x), summarize(x + c)
            self.assertTrue(rel(b.mean, a.mean + c, 1e-9))
            for k in ('s2', 'mu4', 't2', 'skewness', 'kurtosis'):
                self.assertTrue(rel(getattr(b, k), getattr(a, k), 1e-7), k)

    def test_scale_equivariance(self):
        rng = np.random.default_rng(12)
        for _ in range(1000):
            x = rng.gamma(2.0, 1.0, size=rng.integers(4, 40))
            lam = rng.uniform(0.1, 20)
            a, b = summarize(x), summarize(lam * x)
            self.assertTrue(rel(b.mean, lam * a.mean, 1e-9))
            self.assertTrue(rel(b.s2, lam ** 2 * a.s2, 1e-9))
            self.assertTrue(rel(b.mu4, lam ** 4 * a.mu4, 1e-9))
            self.assertTrue(rel(b.t2, lam ** 4 * a.t2, 1e-9 * max(1.0, lam ** 4 * a.mu4)))
            self.assertTrue(rel(b.skewness, a.skewness, 1e-9))
            self.assertTrue(rel(b.kurtosis, a.kurtosis, 1e-9))


class TestCentralMoment(unittest.TestCase):

    def test_values(self):
        rng = np.random.default_rng(3)
        x = rng.normal(size=25)
        self.assertEqual(central_moment(x, 1), 0.0)
        self.assertAlmostEqual(central_moment([-1, 1], 2), 1.0)
        self.assertAlmostEqual(central_moment([1, 2, 3, 4, 5], 3), 0.0)
        self.assertAlmostEqual(central_moment(x, 4), summarize(x).mu4)

    def test_invalid_order(self):
        self.assertRaises(DomainError, central_moment, [1, 2], 0)
        self.assertRaises(DomainError, central_moment, [1, 2], 1.5)
        self.assertRaises(DomainError, central_moment, [1, float('nan')], 2)


if __name__ == '__main__':
    unittest.main()
