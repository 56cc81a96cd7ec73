"""One-sample confidence intervals for the mean and the variance.

Gaussian-exact intervals use Student and chi-square laws; the general
(functional empirical process) intervals only need a finite fourth moment
and use the normal law with the plug-in T_n^2 = mu_4n - S_n^4.
"""
from __future__ import absolute_import, division
import math

from fepstat.dist import Normal, StudentT, ChiSquare, quantile
from fepstat.moments import Sample
from fepstat.utils import DomainError, InapplicableMethodError

NORMAL = Normal()


class Method:
    gaussian = 'GaussianExact'
    general = 'FepGeneral'


class Target:
    mean = 'Mean'
    variance = 'Variance'
    var_ratio = 'VarRatio'
    mean_diff = 'MeanDiff'

    nonnegative = ('Variance', 'VarRatio')


class ConfidenceInterval(object):
    """[lower, upper] at confidence `level` around the point estimate.

    For nonnegative targets a negative lower bound is clamped to 0 and
    `truncated_at_zero` is set; `raw_lower` keeps the unclamped value.
    Intervals built with compat_rcode reproduce the appendix R code and
    are reported as computed, so they may come out inverted.
    """

    def __init__(self, lower, upper, level, point, method, target,
                 label=None, df=None, compat=False):
        if not 0 < level < 1:
            raise DomainError('confidence level must lie in (0, 1), got %r' % (level,))
        self.raw_lower = lower
        self.truncated_at_zero = False
        if not compat and target in Target.nonnegative and lower < 0:
            lower = 0.0
            self.truncated_at_zero = True
        self.lower = lower
        self.upper = upper
        self.level = level
        self.point = point
        self.method = method
        self.target = target
        self.label = label or method
        self.df = df
        self.compat = compat

    @property
    def alpha(self):
        return 1.0 - self.level

    @property
    def width(self):
        return self.upper - self.lower

    @property
    def raw_width(self):
        return self.upper - self.raw_lower

    def contains(self, value):
        return self.lower <= value <= self.upper

    def as_dict(self):
        return {
            'label': self.label,
            'target': self.target,
            'method': self.method,
            'level': self.level,
            'point': self.point,
            'lower': self.lower,
            'upper': self.upper,
            'raw_lower': self.raw_lower,
            'truncated_at_zero': self.truncated_at_zero,
            'df': self.df,
            'compat': self.compat,
        }

    def __repr__(self):
        flag = ' truncated' if self.truncated_at_zero else ''
        return '<CI %s %s [%r, %r] level=%r%s>' % (
            self.target, self.label, self.lower, self.upper, self.level, flag)


def check_alpha(alpha):
    alpha = float(alpha)
    if math.isnan(alpha) or not 0 < alpha < 1:
        raise DomainError('alpha must lie in (0, 1), got %r' % (alpha,))
    return alpha


def _summary(s, what):
    s = s if isinstance(s, Sample) else Sample(s)
    sm = s.summary()
    sm.require_variance(what)
    return sm


def require_fourth_moment(sm, what='the general method'):
    if not sm.t2 > 0:
        raise InapplicableMethodError(
            'fourth-moment statistic nonpositive (T_n^2=%r); %s inapplicable at n=%d'
            % (sm.t2, what, sm.n))
    return math.sqrt(sm.t2)


def ci_mean_gaussian(s, alpha):
    alpha = check_alpha(alpha)
    sm = _summary(s, 'the Gaussian mean interval')
    df = sm.n - 1
    t = quantile(StudentT(df), 1 - alpha / 2)
    margin = sm.s * t / math.sqrt(sm.n)
    return ConfidenceInterval(sm.mean - margin, sm.mean + margin, 1 - alpha, sm.mean,
                              Method.gaussian, Target.mean, label='gaussian', df=df)


def ci_mean_general(s, alpha):
    alpha = check_alpha(alpha)
    sm = _summary(s, 'the general mean interval')
    z = quantile(NORMAL, 1 - alpha / 2)
    margin = sm.s * z / math.sqrt(sm.n)
    return ConfidenceInterval(sm.mean - margin, sm.mean + margin, 1 - alpha, sm.mean,
                              Method.general, Target.mean, label='general')


def ci_var_gaussian(s, alpha):
    alpha = check_alpha(alpha)
    sm = _summary(s, 'the Gaussian variance interval')
    df = sm.n - 1
    chi2 = ChiSquare(df)
    ss = df * sm.s2
    return ConfidenceInterval(ss / quantile(chi2, 1 - alpha / 2), ss / quantile(chi2, alpha / 2),
                              1 - alpha, sm.s2, Method.gaussian, Target.variance,
                              label='gaussian', df=df)


def ci_var_general(s, alpha, compat_rcode=False):
    alpha = check_alpha(alpha)
    sm = _summary(s, 'the general variance interval')
    tn = require_fourth_moment(sm, 'the general variance interval')
    margin = tn * quantile(NORMAL, 1 - alpha / 2) / math.sqrt(sm.n)
    if compat_rcode:
        # sigInfG = s2 - (s2 - margin), sigSupG = s2 + (s2 - margin)
        return ConfidenceInterval(margin, 2 * sm.s2 - margin, 1 - alpha, sm.s2,
                                  Method.general, Target.variance,
                                  label='general', compat=True)
    return ConfidenceInterval(sm.s2 - margin, sm.s2 + margin, 1 - alpha, sm.s2,
                              Method.general, Target.variance, label='general')


def paired_reduce(x, y):
    """Z_i = X_i - Y_i; inference on the mean difference is one-sample on Z."""
    x = x if isinstance(x, Sample) else Sample(x)
    y = y if isinstance(y, Sample) else Sample(y)
    if x.n != y.n:
        raise DomainError('paired samples differ in length: %d != %d' % (x.n, y.n))
    if x.n < 2:
        raise DomainError('paired samples need n >= 2, got n=%d' % x.n)
    name = None
    if x.name and y.name:
        name = '%s-%s' % (x.name, y.name)
    return Sample(x.values - y.values, name=name)


def one_sample_intervals(s, alpha_mean, alpha_var, compat_rcode=False):
    """The four one-sample report rows as (label, interval-or-error) pairs.

    Mean rows use alpha_mean; the Gaussian variance row uses alpha_var and
    the general variance row alpha_mean.
    """
    rows = []
    for label, build in (
            ('mean/gaussian', lambda: ci_mean_gaussian(s, alpha_mean)),
            ('mean/general', lambda: ci_mean_general(s, alpha_mean)),
            ('variance/gaussian', lambda: ci_var_gaussian(s, alpha_var)),
            ('variance/general', lambda: ci_var_general(s, alpha_mean, compat_rcode)),
    ):
        try:
            rows.append((label, build()))
        except (InapplicableMethodError, DomainError) as e:
            rows.append((label, e))
    return rows
