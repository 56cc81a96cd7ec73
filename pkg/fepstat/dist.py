"""Reference laws: Normal, Student t, chi-square and Fisher F.

Quantiles are obtained by inverting the CDF: a geometrically grown bracket,
then Newton steps kept inside the bracket (falling back to bisection).
Degrees of freedom may be any positive real; the Welch-Satterthwaite f is
rarely an integer.
"""
from __future__ import absolute_import, division
import math

from six.moves import range

import fepstat.conf as conf
from fepstat.utils import DomainError, ConvergenceError
from fepstat.specfun import (
    erf, erfc, ln_gamma, ln_beta, reg_inc_gamma_P, reg_inc_gamma_Q, reg_inc_beta
)

SQRT2 = math.sqrt(2.0)
INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


def _check_df(name, df):
    df = float(df)
    if math.isnan(df) or math.isinf(df) or df <= 0:
        raise DomainError('%s must be positive and finite, got %r' % (name, df))
    return df


class Distribution(object):
    kind = None
    symmetric = False

    def params(self):
        return ()

    def __eq__(self, other):
        return (isinstance(other, Distribution) and self.kind == other.kind
                and self.params() == other.params())

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash((self.kind,) + self.params())

    def __repr__(self):
        return '%s(%s)' % (self.kind, ', '.join('%g' % p for p in self.params()))

    def cdf(self, x):
        raise NotImplementedError

    def sf(self, x):
        raise NotImplementedError

    def _pdf(self, x):
        raise NotImplementedError

    def quantile(self, p):
        return quantile(self, p)


class Normal(Distribution):
    kind = 'Normal'
    symmetric = True

    def cdf(self, x):
        if x < 0:
            return 0.5 * erfc(-x / SQRT2)
        return 0.5 * (1.0 + erf(x / SQRT2))

    def sf(self, x):
        return self.cdf(-x)

    def _pdf(self, x):
        return INV_SQRT_2PI * math.exp(-0.5 * x * x)


class StudentT(Distribution):
    kind = 'StudentT'
    symmetric = True

    def __init__(self, df):
        self.df = _check_df('StudentT df', df)
        self._ln_norm = (ln_gamma((self.df + 1) / 2.0) - ln_gamma(self.df / 2.0)
                         - 0.5 * math.log(self.df * math.pi))

    def params(self):
        return (self.df,)

    def cdf(self, x):
        if math.isinf(x):
            return 1.0 if x > 0 else 0.0
        df = self.df
        t2 = x * x
        if t2 < df:
            half = 0.5 * reg_inc_beta(t2 / (df + t2), 0.5, df / 2.0)
            return 0.5 + half if x > 0 else 0.5 - half
        tail = 0.5 * reg_inc_beta(df / (df + t2), df / 2.0, 0.5)
        return 1.0 - tail if x > 0 else tail

    def sf(self, x):
        return self.cdf(-x)

    def _pdf(self, x):
        return math.exp(self._ln_norm - (self.df + 1) / 2.0 * math.log1p(x * x / self.df))


class ChiSquare(Distribution):
    kind = 'ChiSquare'

    def __init__(self, df):
        self.df = _check_df('ChiSquare df', df)

    def params(self):
        return (self.df,)

    def cdf(self, x):
        if x <= 0:
            return 0.0
        return reg_inc_gamma_P(self.df / 2.0, x / 2.0)

    def sf(self, x):
        if x <= 0:
            return 1.0
        return reg_inc_gamma_Q(self.df / 2.0, x / 2.0)

    def _pdf(self, x):
        if x <= 0:
            return 0.0
        k = self.df / 2.0
        return math.exp((k - 1) * math.log(x) - x / 2.0 - k * math.log(2.0) - ln_gamma(k))


class FisherF(Distribution):
    kind = 'FisherF'

    def __init__(self, df1, df2):
        self.df1 = _check_df('FisherF df1', df1)
        self.df2 = _check_df('FisherF df2', df2)

    def params(self):
        return (self.df1, self.df2)

    def cdf(self, x):
        if x <= 0:
            return 0.0
        if math.isinf(x):
            return 1.0
        d1, d2 = self.df1, self.df2
        u = d1 * x
        if u <= d2:
            return reg_inc_beta(u / (u + d2), d1 / 2.0, d2 / 2.0)
        return 1.0 - reg_inc_beta(d2 / (u + d2), d2 / 2.0, d1 / 2.0)

    def sf(self, x):
        if x <= 0:
            return 1.0
        if math.isinf(x):
            return 0.0
        d1, d2 = self.df1, self.df2
        u = d1 * x
        if u <= d2:
            return 1.0 - reg_inc_beta(u / (u + d2), d1 / 2.0, d2 / 2.0)
        return reg_inc_beta(d2 / (u + d2), d2 / 2.0, d1 / 2.0)

    def _pdf(self, x):
        if x <= 0:
            return 0.0
        d1, d2 = self.df1, self.df2
        return math.exp(0.5 * (d1 * math.log(d1 * x) + d2 * math.log(d2)
                               - (d1 + d2) * math.log(d1 * x + d2))
                        - math.log(x) - ln_beta(d1 / 2.0, d2 / 2.0))


def _check_x(x):
    x = float(x)
    if math.isnan(x):
        raise DomainError('cdf argument is NaN')
    return x


def cdf(d, x):
    return d.cdf(_check_x(x))


def sf(d, x):
    return d.sf(_check_x(x))


_quantile_cache = {}
QUANTILE_CACHE_LIMIT = 4096
# symmetric laws invert the survival function below this p
DEEP_TAIL_P = 1e-8


def quantile(d, p):
    p = float(p)
    if math.isnan(p) or not 0 < p < 1:
        raise DomainError('quantile needs 0 < p < 1, got %r' % (p,))

    key = (d, p)
    q = _quantile_cache.get(key)
    if q is None:
        if d.symmetric:
            if p == 0.5:
                q = 0.0
            elif p > 0.5:
                q = _invert(d, p)
            else:
                # 1 - p loses the deep tail to rounding
                q = -_invert(d, p, upper=True) if p < DEEP_TAIL_P else -_invert(d, 1.0 - p)
        else:
            q = _invert(d, p)
        if len(_quantile_cache) >= QUANTILE_CACHE_LIMIT:
            _quantile_cache.clear()
        _quantile_cache[key] = q
    return q


def _gap(d, x, p, upper):
    # increasing in x either way, with slope pdf(x)
    return p - d.sf(x) if upper else d.cdf(x) - p


def _bracket(d, p, upper=False):
    # supports start at 0; symmetric laws are only inverted for x > 0
    lo, hi = 0.0, 1.0
    while _gap(d, hi, p, upper) < 0:
        lo, hi = hi, hi * 2.0
        if math.isinf(hi):
            raise ConvergenceError('no bracket for %r at p=%r' % (d, p))
    return lo, hi


def _invert(d, p, upper=False):
    """x with cdf(x) = p, or sf(x) = p when upper is set."""
    lo, hi = _bracket(d, p, upper)
    ptol = conf.QUANTILE_PTOL * p if upper else conf.QUANTILE_PTOL
    x = 0.5 * (lo + hi)
    for _ in range(conf.QUANTILE_MAX_ITER):
        f = _gap(d, x, p, upper)
        if abs(f) < ptol:
            return x
        if f < 0:
            lo = x
        else:
            hi = x
        if hi - lo <= 4 * 2.2e-16 * max(1.0, abs(x)):
            return x

        dens = d._pdf(x)
        nxt = x - f / dens if dens > 0 else lo
        if not lo < nxt < hi:
            nxt = 0.5 * (lo + hi)
        x = nxt

    raise ConvergenceError('quantile of %r at p=%r did not converge' % (d, p))
