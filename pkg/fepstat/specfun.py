"""Special functions behind every distribution in fepstat.

ln Gamma uses the Lanczos approximation (g = 7, nine terms). The regularized
incomplete gamma function is evaluated by its power series below x = a + 1
and by a Lentz continued fraction above; the regularized incomplete beta
function by a Lentz continued fraction with the usual symmetry switch.
erf and erfc are both routed through the incomplete gamma function, so one
pair of iterations serves the Normal, Student, chi-square and Fisher laws.
"""
from __future__ import absolute_import, division
import math

from six.moves import range

import fepstat.conf as conf
from fepstat.utils import DomainError, ConvergenceError

MACHEP = 2.220446049250313e-16
# smallest number allowed as a Lentz denominator
FPMIN = 1e-300
HALF_LOG_2PI = 0.91893853320467274178

LANCZOS_G = 7
LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


class Accuracy(object):
    """Stopping rule shared by the iterative evaluations.

    Iterations stop once the relative update falls under abs_tol / 1000,
    which leaves the results within roughly abs_tol of the exact value.
    """

    def __init__(self, abs_tol=None, max_iter=None):
        if abs_tol is None:
            abs_tol = conf.ABS_TOL
        if max_iter is None:
            max_iter = conf.MAX_ITER
        if not abs_tol > 0:
            raise DomainError('abs_tol must be positive, got %r' % (abs_tol,))
        if int(max_iter) != max_iter or max_iter < 1:
            raise DomainError('max_iter must be a positive integer, got %r' % (max_iter,))
        self.abs_tol = float(abs_tol)
        self.max_iter = int(max_iter)

    @property
    def eps(self):
        return max(self.abs_tol * 1e-3, 4 * MACHEP)

    def __repr__(self):
        return '<Accuracy abs_tol=%g max_iter=%d>' % (self.abs_tol, self.max_iter)


DEFAULT_ACCURACY = Accuracy()


def _check_real(name, x):
    if math.isnan(x):
        raise DomainError('%s is NaN' % name)


def ln_gamma(x):
    x = float(x)
    if math.isnan(x) or math.isinf(x) or x <= 0:
        raise DomainError('ln_gamma needs a finite positive argument, got %r' % (x,))

    if x < 0.5:
        # Gamma(x) = Gamma(x + 1) / x keeps the series on its accurate side
        return _lanczos_ln_gamma(x + 1.0) - math.log(x)
    return _lanczos_ln_gamma(x)


def _lanczos_ln_gamma(x):
    x -= 1.0
    a = LANCZOS_COEF[0]
    t = x + LANCZOS_G + 0.5
    for i in range(1, len(LANCZOS_COEF)):
        a += LANCZOS_COEF[i] / (x + i)
    return HALF_LOG_2PI + (x + 0.5) * math.log(t) - t + math.log(a)


def ln_beta(a, b):
    return ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)


def _check_gamma_args(a, x):
    a, x = float(a), float(x)
    if math.isnan(a) or math.isinf(a) or a <= 0:
        raise DomainError('incomplete gamma needs a > 0, got a=%r' % (a,))
    if math.isnan(x) or x < 0:
        raise DomainError('incomplete gamma needs x >= 0, got x=%r' % (x,))
    return a, x


def reg_inc_gamma_P(a, x, accuracy=DEFAULT_ACCURACY):
    """P(a, x) = gamma(a, x) / Gamma(a), the lower regularized incomplete gamma."""
    a, x = _check_gamma_args(a, x)
    if x == 0:
        return 0.0
    if math.isinf(x):
        return 1.0
    if x < a + 1.0:
        return _gamma_series(a, x, accuracy)
    return 1.0 - _gamma_cont_frac(a, x, accuracy)


def reg_inc_gamma_Q(a, x, accuracy=DEFAULT_ACCURACY):
    """Q(a, x) = 1 - P(a, x), evaluated on the upper-tail branch when it can."""
    a, x = _check_gamma_args(a, x)
    if x == 0:
        return 1.0
    if math.isinf(x):
        return 0.0
    if x < a + 1.0:
        return 1.0 - _gamma_series(a, x, accuracy)
    return _gamma_cont_frac(a, x, accuracy)


def _gamma_prefactor(a, x):
    return math.exp(-x + a * math.log(x) - ln_gamma(a))


def _gamma_series(a, x, accuracy):
    eps = accuracy.eps
    ap = a
    total = delta = 1.0 / a
    for _ in range(accuracy.max_iter):
        ap += 1.0
        delta *= x / ap
        total += delta
        if abs(delta) < abs(total) * eps:
            return min(1.0, total * _gamma_prefactor(a, x))

    raise ConvergenceError('incomplete gamma series: a=%r x=%r did not converge in %d steps'
                           % (a, x, accuracy.max_iter))


def _gamma_cont_frac(a, x, accuracy):
    eps = accuracy.eps
    b = x + 1.0 - a
    c = 1.0 / FPMIN
    d = 1.0 / b
    h = d
    for i in range(1, accuracy.max_iter + 1):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < FPMIN:
            d = FPMIN
        c = b + an / c
        if abs(c) < FPMIN:
            c = FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < eps:
            return min(1.0, _gamma_prefactor(a, x) * h)

    raise ConvergenceError('incomplete gamma fraction: a=%r x=%r did not converge in %d steps'
                           % (a, x, accuracy.max_iter))


def erf(x, accuracy=DEFAULT_ACCURACY):
    x = float(x)
    _check_real('erf argument', x)
    if x == 0:
        return 0.0
    p = reg_inc_gamma_P(0.5, x * x, accuracy)
    return p if x > 0 else -p


def erfc(x, accuracy=DEFAULT_ACCURACY):
    x = float(x)
    _check_real('erfc argument', x)
    if x >= 0:
        return reg_inc_gamma_Q(0.5, x * x, accuracy)
    return 2.0 - reg_inc_gamma_Q(0.5, x * x, accuracy)


def reg_inc_beta(x, a, b, accuracy=DEFAULT_ACCURACY):
    """I_x(a, b), the regularized incomplete beta function."""
    x, a, b = float(x), float(a), float(b)
    if math.isnan(x) or x < 0 or x > 1:
        raise DomainError('incomplete beta needs 0 <= x <= 1, got x=%r' % (x,))
    for name, v in (('a', a), ('b', b)):
        if math.isnan(v) or math.isinf(v) or v <= 0:
            raise DomainError('incomplete beta needs %s > 0, got %r' % (name, v))

    if x == 0:
        return 0.0
    if x == 1:
        return 1.0

    ln_front = (-ln_beta(a, b) + a * math.log(x) + b * math.log1p(-x))
    front = math.exp(ln_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _beta_cont_frac(x, a, b, accuracy) / a
    return 1.0 - front * _beta_cont_frac(1.0 - x, b, a, accuracy) / b


def _beta_cont_frac(x, a, b, accuracy):
    eps = accuracy.eps
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < FPMIN:
        d = FPMIN
    d = 1.0 / d
    h = d
    for m in range(1, accuracy.max_iter + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < FPMIN:
            d = FPMIN
        c = 1.0 + aa / c
        if abs(c) < FPMIN:
            c = FPMIN
        d = 1.0 / d
        h *= d * c

        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < FPMIN:
            d = FPMIN
        c = 1.0 + aa / c
        if abs(c) < FPMIN:
            c = FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < eps:
            return h

    raise ConvergenceError('incomplete beta fraction: x=%r a=%r b=%r did not converge in %d steps'
                           % (x, a, b, accuracy.max_iter))
