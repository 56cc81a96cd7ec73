from __future__ import absolute_import, division
import math

import numpy as np

from fepstat.utils import DomainError, DegenerateSampleError


class Sample(object):
    """Ordered finite observations X_1, ..., X_n; read-only once built."""

    def __init__(self, values, name=None):
        arr = np.array(values, dtype=float).ravel()
        if arr.size == 0:
            raise DomainError('empty sample')
        bad = ~np.isfinite(arr)
        if bad.any():
            i = int(np.flatnonzero(bad)[0])
            raise DomainError('non-finite value %r at position %d' % (arr[i], i))
        arr.flags.writeable = False
        self.values = arr
        self.name = name
        self._summary = None

    @property
    def n(self):
        return self.values.size

    def __len__(self):
        return self.values.size

    def __iter__(self):
        return iter(self.values.tolist())

    def __repr__(self):
        if self.name:
            return '<Sample %s n=%d>' % (self.name, self.n)
        return '<Sample n=%d>' % self.n

    def summary(self):
        if self._summary is None:
            self._summary = summarize(self)
        return self._summary


class SampleSummary(object):
    """Moments of one sample.

    mean is X_n, s2 the divisor-(n-1) variance S_n^2, mu4 the divisor-n
    fourth central moment, t2 = mu4 - s2**2 (may be negative at small n),
    skewness b_n and kurtosis a_n use divisor-n moments throughout.
    s2 and t2 are None when n == 1; skewness and kurtosis are None for a
    constant sample.
    """

    def __init__(self, n, mean, s2, m2, m3, mu4):
        self.n = n
        self.mean = mean
        self.s2 = s2
        self.m2 = m2
        self.m3 = m3
        self.mu4 = mu4
        self.t2 = None if s2 is None else mu4 - s2 * s2
        if m2 > 0:
            self.skewness = m3 / m2 ** 1.5
            self.kurtosis = mu4 / (m2 * m2)
        else:
            self.skewness = self.kurtosis = None

    @property
    def degenerate(self):
        return not self.m2 > 0

    @property
    def s(self):
        return None if self.s2 is None else math.sqrt(self.s2)

    def require_variance(self, what='this interval'):
        if self.n < 2:
            raise DegenerateSampleError('%s needs n >= 2, got n=%d' % (what, self.n))
        if self.degenerate:
            raise DegenerateSampleError('zero variance: %s is undefined for a constant sample'
                                        % what)

    def __repr__(self):
        return ('<SampleSummary n=%d mean=%r s2=%r mu4=%r t2=%r skewness=%r kurtosis=%r>'
                % (self.n, self.mean, self.s2, self.mu4, self.t2, self.skewness, self.kurtosis))


def _as_sample(s):
    return s if isinstance(s, Sample) else Sample(s)


def _center(x):
    if x[0] == x[-1] and np.ptp(x) == 0:
        return x[0], np.zeros_like(x)
    mean = x.mean()
    # second pass: fold the residual mean back in
    mean += (x - mean).mean()
    return mean, x - mean


def summarize(s):
    s = _as_sample(s)
    x = s.values
    n = x.size
    mean, d = _center(x)
    d2 = d * d
    ss = float(d2.sum())
    m2 = ss / n
    m3 = float((d2 * d).mean())
    mu4 = float((d2 * d2).mean())
    s2 = ss / (n - 1) if n > 1 else None
    return SampleSummary(n, float(mean), s2, m2, m3, mu4)


def central_moment(s, k):
    """(1/n) * sum((X_j - X_n)**k)"""
    if int(k) != k or k < 1:
        raise DomainError('moment order must be a positive integer, got %r' % (k,))
    s = _as_sample(s)
    if k == 1:
        return 0.0
    _, d = _center(s.values)
    return float((d ** int(k)).mean())
