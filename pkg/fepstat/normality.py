from __future__ import absolute_import, division

import numpy as np

import fepstat.conf as conf
from fepstat.dist import ChiSquare, Normal, sf, quantile
from fepstat.moments import Sample, summarize
from fepstat.utils import DegenerateSampleError

CHI2_2 = ChiSquare(2)


class JarqueBeraResult(object):

    def __init__(self, statistic, p_value, skewness, kurtosis, n):
        self.statistic = statistic
        self.p_value = p_value
        self.skewness = skewness
        self.kurtosis = kurtosis
        self.n = n

    def accepted(self, level=None):
        """normality is accepted when the p-value reaches the level"""
        if level is None:
            level = conf.JB_LEVEL
        return self.p_value >= level

    def __repr__(self):
        return '<JarqueBera J=%r p=%r skewness=%r kurtosis=%r n=%d>' % (
            self.statistic, self.p_value, self.skewness, self.kurtosis, self.n)


def jb_p_value(statistic):
    """P(chi2_2 > J)"""
    return sf(CHI2_2, statistic)


def jarque_bera(s):
    s = s if isinstance(s, Sample) else Sample(s)
    if s.n < conf.JB_MIN_SIZE:
        raise DegenerateSampleError('Jarque-Bera test needs n >= %d, got n=%d'
                                    % (conf.JB_MIN_SIZE, s.n))
    sm = summarize(s)
    if sm.degenerate:
        raise DegenerateSampleError('zero variance: Jarque-Bera statistic is undefined')

    a, b = sm.kurtosis, sm.skewness
    statistic = sm.n * ((a - 3.0) ** 2 / 24.0 + b * b / 6.0)
    return JarqueBeraResult(statistic, jb_p_value(statistic), b, a, sm.n)


def qq_pairs(s):
    """(Normal quantile, order statistic) at plotting positions (i - 0.5) / n."""
    s = s if isinstance(s, Sample) else Sample(s)
    if s.n < 2:
        raise DegenerateSampleError('QQ pairs need n >= 2, got n=%d' % s.n)
    n = s.n
    ordered = np.sort(s.values)
    normal = Normal()
    return [(quantile(normal, (i + 0.5) / n), float(v)) for i, v in enumerate(ordered)]
