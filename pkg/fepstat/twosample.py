"""Two independent samples: variance ratio and mean difference intervals."""
from __future__ import absolute_import, division
import math

from fepstat.dist import StudentT, FisherF, quantile
from fepstat.moments import Sample
from fepstat.onesample import (
    ConfidenceInterval, Method, Target, NORMAL, check_alpha, require_fourth_moment
)
from fepstat.utils import DomainError, DegenerateSampleError, InapplicableMethodError


class RatioNormalization:
    # T1^2 = (mu4_1 - S1^4) / S2^4, T2^2 = S1^4 (mu4_2 - S2^4) / S2^8
    theorem_scaled = 'theorem'
    # Tj^2 = mu4_j - Sj^4, as in the summary table and the R code
    table_unscaled = 'table-unscaled'

    modes = (theorem_scaled, table_unscaled)

    @classmethod
    def check(cls, mode):
        if mode not in cls.modes:
            raise DomainError('unknown ratio normalization %r, expected one of %s'
                              % (mode, ', '.join(cls.modes)))
        return mode


class TwoSampleNormalizers(object):

    def __init__(self, a_hat, b_hat, welch_f, mode):
        self.a_hat = a_hat
        self.b_hat = b_hat
        self.welch_f = welch_f
        self.mode = mode

    def __repr__(self):
        return '<TwoSampleNormalizers a_hat=%r b_hat=%r welch_f=%r mode=%s>' % (
            self.a_hat, self.b_hat, self.welch_f, self.mode)


def _sample(s):
    return s if isinstance(s, Sample) else Sample(s)


def _summaries(x, y, what):
    sx, sy = _sample(x).summary(), _sample(y).summary()
    sx.require_variance(what)
    sy.require_variance(what)
    return sx, sy


def imbalance(x, y):
    """max(n1, n2) / min(n1, n2); the asymptotics assume it stays bounded."""
    n1, n2 = len(_sample(x)), len(_sample(y))
    return max(n1, n2) / min(n1, n2)


def _a_hat(sx, sy, mode):
    RatioNormalization.check(mode)
    require_fourth_moment(sx, 'the general ratio interval')
    require_fourth_moment(sy, 'the general ratio interval')
    n1, n2 = sx.n, sy.n
    t1, t2 = sx.t2, sy.t2
    if mode == RatioNormalization.theorem_scaled:
        s2_4 = sy.s2 * sy.s2
        t1, t2 = t1 / s2_4, sx.s2 * sx.s2 * t2 / (s2_4 * s2_4)
    return math.sqrt(n1 * n2 / (n1 * t2 + n2 * t1))


def _b_hat(sx, sy):
    n1, n2 = sx.n, sy.n
    return math.sqrt(n1 * n2 / (n2 * sx.s2 + n1 * sy.s2))


def _welch_df(sx, sy):
    v1, v2 = sx.s2 / sx.n, sy.s2 / sy.n
    return (v1 + v2) ** 2 / (v1 * v1 / (sx.n - 1) + v2 * v2 / (sy.n - 1))


def normalizers(x, y, mode=RatioNormalization.theorem_scaled):
    """a_hat is None when either fourth-moment statistic is nonpositive."""
    RatioNormalization.check(mode)
    sx, sy = _summaries(x, y, 'two-sample normalizers')
    try:
        a_hat = _a_hat(sx, sy, mode)
    except InapplicableMethodError:
        a_hat = None
    return TwoSampleNormalizers(a_hat, _b_hat(sx, sy), _welch_df(sx, sy), mode)


def ci_ratio_gaussian(x, y, alpha, compat_rcode=False):
    alpha = check_alpha(alpha)
    sx, sy = _summaries(x, y, 'the Gaussian ratio interval')
    df1, df2 = sx.n - 1, sy.n - 1
    if compat_rcode:
        # qf(..., n1 - 1, n2 - 2)
        df2 = sy.n - 2
        if df2 < 1:
            raise DegenerateSampleError('compat ratio interval needs n2 >= 3')
    f = FisherF(df1, df2)
    r = sx.s2 / sy.s2
    return ConfidenceInterval(r / quantile(f, 1 - alpha / 2), r / quantile(f, alpha / 2),
                              1 - alpha, r, Method.gaussian, Target.var_ratio,
                              label='gaussian', df=(df1, df2), compat=compat_rcode)


def ci_ratio_general(x, y, alpha, norm=RatioNormalization.theorem_scaled):
    alpha = check_alpha(alpha)
    sx, sy = _summaries(x, y, 'the general ratio interval')
    a_hat = _a_hat(sx, sy, norm)
    r = sx.s2 / sy.s2
    margin = quantile(NORMAL, 1 - alpha / 2) / a_hat
    return ConfidenceInterval(r - margin, r + margin, 1 - alpha, r,
                              Method.general, Target.var_ratio, label='general/%s' % norm)


def _sum_squares(sm):
    return 0.0 if sm.s2 is None else (sm.n - 1) * sm.s2


def pooled_s2(x, y):
    """((n1 - 1) S1^2 + (n2 - 1) S2^2) / (n1 + n2 - 2)"""
    sx, sy = _sample(x).summary(), _sample(y).summary()
    if sx.n + sy.n < 3:
        raise DegenerateSampleError('pooled variance needs n1 + n2 >= 3')
    s2 = (_sum_squares(sx) + _sum_squares(sy)) / (sx.n + sy.n - 2)
    if not s2 > 0:
        raise DegenerateSampleError('zero variance: both samples are constant')
    return s2


def welch_df(x, y):
    """Welch-Satterthwaite effective degrees of freedom."""
    sx, sy = _summaries(x, y, 'the Welch degrees of freedom')
    return _welch_df(sx, sy)


def ci_dm_pooled(x, y, alpha):
    alpha = check_alpha(alpha)
    x, y = _sample(x), _sample(y)
    sx, sy = x.summary(), y.summary()
    s = math.sqrt(pooled_s2(x, y))
    df = sx.n + sy.n - 2
    delta = sx.mean - sy.mean
    margin = s * quantile(StudentT(df), 1 - alpha / 2) * math.sqrt(1.0 / sx.n + 1.0 / sy.n)
    return ConfidenceInterval(delta - margin, delta + margin, 1 - alpha, delta,
                              Method.gaussian, Target.mean_diff, label='pooled', df=df)


def ci_dm_welch(x, y, alpha, compat_rcode=False):
    alpha = check_alpha(alpha)
    sx, sy = _summaries(x, y, 'the Welch interval')
    if compat_rcode:
        # DiffAmpAp uses qt(1 - alpha1/2, n1 + n2 - 2)
        df = sx.n + sy.n - 2
    else:
        df = _welch_df(sx, sy)
    delta = sx.mean - sy.mean
    se = math.sqrt(sx.s2 / sx.n + sy.s2 / sy.n)
    margin = quantile(StudentT(df), 1 - alpha / 2) * se
    return ConfidenceInterval(delta - margin, delta + margin, 1 - alpha, delta,
                              Method.gaussian, Target.mean_diff, label='welch', df=df,
                              compat=compat_rcode)


def ci_dm_general(x, y, alpha):
    alpha = check_alpha(alpha)
    sx, sy = _summaries(x, y, 'the general mean-difference interval')
    delta = sx.mean - sy.mean
    margin = quantile(NORMAL, 1 - alpha / 2) / _b_hat(sx, sy)
    return ConfidenceInterval(delta - margin, delta + margin, 1 - alpha, delta,
                              Method.general, Target.mean_diff, label='general')


def two_sample_intervals(x, y, alpha_mean, alpha_var,
                         ratio_mode=RatioNormalization.theorem_scaled, compat_rcode=False):
    """The imhTwoSamplesTest rows as (label, interval-or-error) pairs.

    The Gaussian ratio row uses alpha_var, every other row alpha_mean.
    """
    if compat_rcode:
        ratio_mode = RatioNormalization.table_unscaled
    rows = []
    for label, build in (
            ('ratio/gaussian', lambda: ci_ratio_gaussian(x, y, alpha_var, compat_rcode)),
            ('ratio/general', lambda: ci_ratio_general(x, y, alpha_mean, ratio_mode)),
            ('diff/pooled', lambda: ci_dm_pooled(x, y, alpha_mean)),
            ('diff/welch', lambda: ci_dm_welch(x, y, alpha_mean, compat_rcode)),
            ('diff/general', lambda: ci_dm_general(x, y, alpha_mean)),
    ):
        try:
            rows.append((label, build()))
        except (InapplicableMethodError, DomainError) as e:
            rows.append((label, e))
    return rows
