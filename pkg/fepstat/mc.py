"""Seeded Monte-Carlo coverage harness.

Replication i draws from its own stream (seed, stream_id=i), so a scenario
gives the same report whatever scheduler runs it and in whatever order the
slices finish.
"""
from __future__ import absolute_import, division
import os
import re
import csv
import math
import time
from collections import OrderedDict

import numpy as np
from addict import Dict
from six.moves import range

import fepstat.conf as conf
from fepstat import onesample, twosample
from fepstat.datasets import registry
from fepstat.moments import Sample
from fepstat.onesample import Target
from fepstat.twosample import RatioNormalization
from fepstat.schedule import LocalScheduler
from fepstat.utils import (
    ConfigError, DataFormatError, DomainError, DegenerateSampleError, InapplicableMethodError
)
from fepstat.utils.log import get_logger

logger = get_logger(__name__)

TWO_PI = 2.0 * math.pi
UINT64_MAX = 2 ** 64 - 1


def _check_uint64(name, v):
    if int(v) != v or not 0 <= v <= UINT64_MAX:
        raise DomainError('%s must be an unsigned 64-bit integer, got %r' % (name, v))
    return int(v)


class RngStream(object):
    """PCG64 stream keyed by (seed, stream_id)."""

    def __init__(self, seed, stream_id=0):
        self.seed = _check_uint64('seed', seed)
        self.stream_id = _check_uint64('stream_id', stream_id)
        ss = np.random.SeedSequence(self.seed, spawn_key=(self.stream_id,))
        self.generator = np.random.Generator(np.random.PCG64(ss))

    def random(self, size=None):
        return self.generator.random(size)

    def __repr__(self):
        return '<RngStream seed=%d stream=%d>' % (self.seed, self.stream_id)


def _check_sigma(sigma):
    sigma = float(sigma)
    if not sigma > 0 or math.isinf(sigma):
        raise DomainError('sigma must be positive and finite, got %r' % (sigma,))
    return sigma


def normal_variate(rng, m, sigma):
    """m + sigma * Z, Z from the Box-Muller cosine branch.

    Z = sqrt(-2 ln(1 - U1)) cos(2 pi U2) with U1, U2 the next two uniforms
    of the stream; 1 - U1 lies in (0, 1], so the log is finite.
    """
    sigma = _check_sigma(sigma)
    u1 = 1.0 - rng.random()
    u2 = rng.random()
    return m + sigma * math.sqrt(-2.0 * math.log(u1)) * math.cos(TWO_PI * u2)


def normal_variates(rng, m, sigma, size):
    """size draws from the same uniforms, in the same order, as size calls
    to normal_variate."""
    sigma = _check_sigma(sigma)
    u = rng.random(2 * size)
    u1 = 1.0 - u[0::2]
    u2 = u[1::2]
    return m + sigma * np.sqrt(-2.0 * np.log(u1)) * np.cos(TWO_PI * u2)


class Generator(object):
    kind = None
    # population mean and variance; None when unknown
    mean = None
    variance = None

    def params(self):
        return ()

    def draw(self, rng, n):
        raise NotImplementedError

    def check_size(self, n):
        pass

    def __eq__(self, other):
        return type(self) is type(other) and self.params() == other.params()

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash((self.kind,) + self.params())

    def __repr__(self):
        return '%s(%s)' % (self.kind, ', '.join(repr(p) for p in self.params()))


class Normal(Generator):
    kind = 'Normal'

    def __init__(self, m, sigma):
        self.m = float(m)
        self.sigma = _check_sigma(sigma)
        self.mean = self.m
        self.variance = self.sigma ** 2

    def params(self):
        return (self.m, self.sigma)

    def draw(self, rng, n):
        return normal_variates(rng, self.m, self.sigma, n)


class LogNormal(Generator):
    """exp(mu + sigma * Z)"""
    kind = 'LogNormal'

    def __init__(self, mu, sigma):
        self.mu = float(mu)
        self.sigma = _check_sigma(sigma)
        s2 = self.sigma ** 2
        self.mean = math.exp(self.mu + s2 / 2.0)
        self.variance = math.expm1(s2) * math.exp(2.0 * self.mu + s2)

    def params(self):
        return (self.mu, self.sigma)

    def draw(self, rng, n):
        return np.exp(normal_variates(rng, self.mu, self.sigma, n))


class Gamma(Generator):
    kind = 'Gamma'

    def __init__(self, shape, scale):
        self.shape = float(shape)
        self.scale = float(scale)
        for name, v in (('shape', self.shape), ('scale', self.scale)):
            if not v > 0 or math.isinf(v):
                raise DomainError('Gamma %s must be positive and finite, got %r' % (name, v))
        self.mean = self.shape * self.scale
        self.variance = self.shape * self.scale ** 2

    def params(self):
        return (self.shape, self.scale)

    def draw(self, rng, n):
        return rng.generator.standard_gamma(self.shape, n) * self.scale


class FixedDataset(Generator):
    """Subsamples of size n, without replacement, from a bundled dataset.

    The population parameters are unknown, so coverage is undefined.
    """
    kind = 'FixedDataset'

    def __init__(self, name):
        if name not in registry:
            raise ConfigError('unknown dataset %r, known: %s'
                              % (name, ', '.join(registry.names)))
        self.name = name

    def params(self):
        return (self.name,)

    def check_size(self, n):
        size = registry.load(self.name).n
        if n > size:
            raise ConfigError('cannot draw %d values without replacement from %s (n=%d)'
                              % (n, self.name, size))

    def draw(self, rng, n):
        return rng.generator.choice(registry.load(self.name).values, size=n, replace=False)


GENERATORS = {
    'normal': Normal,
    'lognormal': LogNormal,
    'gamma': Gamma,
    'fixeddataset': FixedDataset,
    'dataset': FixedDataset,
}

_CALL = re.compile(r'^\s*(\w+)\s*\((.*)\)\s*$')
_SQRT = re.compile(r'^sqrt\s*\((.*)\)$')


def _parse_number(token):
    token = token.strip()
    m = _SQRT.match(token)
    try:
        if m:
            return math.sqrt(float(m.group(1)))
        return float(token)
    except ValueError:
        raise ConfigError('bad generator parameter %r' % token)


def parse_generator(text):
    """'Normal(3, 2)', 'LogNormal(0, 1)', 'Gamma(2, 1.5)', 'FixedDataset(dakar1)'.

    Numeric parameters may be written sqrt(x).
    """
    m = _CALL.match(text)
    if not m:
        raise ConfigError('bad generator %r, expected Name(p1, p2)' % (text,))
    name, args = m.group(1), m.group(2)
    cls = GENERATORS.get(name.lower())
    if cls is None:
        raise ConfigError('unknown generator %r, expected one of Normal, LogNormal, Gamma,'
                          ' FixedDataset' % (name,))
    args = [a.strip() for a in args.split(',')] if args.strip() else []
    if cls is FixedDataset:
        if len(args) != 1:
            raise ConfigError('FixedDataset takes one dataset name')
        return FixedDataset(args[0].strip('\'"'))
    if len(args) != 2:
        raise ConfigError('%s takes two parameters, got %d' % (cls.kind, len(args)))
    try:
        return cls(*[_parse_number(a) for a in args])
    except DomainError as e:
        raise ConfigError(str(e))


def _ratio(mode):
    def build(x, y, cfg):
        return twosample.ci_ratio_general(x, y, cfg.alpha, mode)
    return build


METHODS = {
    Target.mean: OrderedDict([
        ('gaussian', lambda x, y, cfg: onesample.ci_mean_gaussian(x, cfg.alpha)),
        ('general', lambda x, y, cfg: onesample.ci_mean_general(x, cfg.alpha)),
    ]),
    Target.variance: OrderedDict([
        ('gaussian', lambda x, y, cfg: onesample.ci_var_gaussian(x, cfg.alpha)),
        ('general', lambda x, y, cfg: onesample.ci_var_general(x, cfg.alpha, cfg.compat_rcode)),
    ]),
    Target.var_ratio: OrderedDict([
        ('gaussian', lambda x, y, cfg: twosample.ci_ratio_gaussian(x, y, cfg.alpha,
                                                                    cfg.compat_rcode)),
        ('general', lambda x, y, cfg: twosample.ci_ratio_general(x, y, cfg.alpha,
                                                                  cfg.ratio_mode)),
        ('general/theorem', _ratio(RatioNormalization.theorem_scaled)),
        ('general/table-unscaled', _ratio(RatioNormalization.table_unscaled)),
    ]),
    Target.mean_diff: OrderedDict([
        ('pooled', lambda x, y, cfg: twosample.ci_dm_pooled(x, y, cfg.alpha)),
        ('welch', lambda x, y, cfg: twosample.ci_dm_welch(x, y, cfg.alpha, cfg.compat_rcode)),
        ('general', lambda x, y, cfg: twosample.ci_dm_general(x, y, cfg.alpha)),
    ]),
}

DEFAULT_METHODS = {
    Target.mean: ['gaussian', 'general'],
    Target.variance: ['gaussian', 'general'],
    Target.var_ratio: ['gaussian', 'general'],
    Target.mean_diff: ['pooled', 'welch', 'general'],
}

TARGETS = {t.lower(): t for t in METHODS}
TWO_SAMPLE_TARGETS = (Target.var_ratio, Target.mean_diff)


class ScenarioConfig(object):
    # defaults; use dup() for variants, do NOT change ATTRS
    ATTRS = OrderedDict([
        ('name', 'scenario'),
        ('generator', Normal(0.0, 1.0)),
        ('generator2', None),
        ('n1', 30),
        ('n2', None),
        ('alpha', conf.ALPHA_MEAN),
        ('replications', None),
        ('target', Target.mean),
        ('methods', None),
        ('ratio_mode', RatioNormalization.theorem_scaled),
        ('compat_rcode', False),
    ])

    def __init__(self, **kw):
        unknown = set(kw) - set(self.ATTRS)
        if unknown:
            raise ConfigError('unknown scenario attributes: %s' % ', '.join(sorted(unknown)))
        for k, v in self.ATTRS.items():
            object.__setattr__(self, k, kw.get(k, v))
        if self.replications is None:
            self.replications = conf.REPLICATIONS
        if self.methods is not None:
            self.methods = list(self.methods)

    def __setattr__(self, name, value):
        if name not in self.ATTRS:
            msg = "'ScenarioConfig' object has no attribute '{}'. Valid attrs: {}".format(
                name, list(self.ATTRS))
            raise AttributeError(msg)
        object.__setattr__(self, name, value)

    def to_dict(self):
        d = OrderedDict((k, getattr(self, k)) for k in self.ATTRS)
        for k in ('generator', 'generator2'):
            if d[k] is not None:
                d[k] = repr(d[k])
        return d

    def __repr__(self):
        return 'ScenarioConfig_%r' % (dict(self.to_dict()),)

    def dup(self, **kwargs):
        res = ScenarioConfig(**dict((k, getattr(self, k)) for k in self.ATTRS))
        for k, v in kwargs.items():
            res.__setattr__(k, v)
        return res

    @property
    def two_sample(self):
        return self.target in TWO_SAMPLE_TARGETS

    @property
    def second(self):
        return self.generator2 if self.generator2 is not None else self.generator

    @property
    def size2(self):
        return self.n2 if self.n2 is not None else self.n1

    @property
    def method_names(self):
        return self.methods if self.methods else DEFAULT_METHODS[self.target]

    @property
    def truth(self):
        g1, g2 = self.generator, self.second
        if self.target == Target.mean:
            return g1.mean
        if self.target == Target.variance:
            return g1.variance
        if g1.mean is None or g2.mean is None:
            return None
        if self.target == Target.var_ratio:
            return g1.variance / g2.variance
        return g1.mean - g2.mean

    def validate(self):
        if self.target not in METHODS:
            raise ConfigError('unknown target %r, expected one of %s'
                              % (self.target, ', '.join(METHODS)))
        if not isinstance(self.generator, Generator):
            raise ConfigError('generator must be a Generator, got %r' % (self.generator,))
        if self.generator2 is not None and not isinstance(self.generator2, Generator):
            raise ConfigError('generator2 must be a Generator, got %r' % (self.generator2,))
        if int(self.replications) != self.replications or self.replications < 1:
            raise ConfigError('replications must be >= 1, got %r' % (self.replications,))
        for k in ('n1', 'n2'):
            v = getattr(self, k)
            if v is not None and (int(v) != v or v < 2):
                raise ConfigError('%s must be an integer >= 2, got %r' % (k, v))
        try:
            onesample.check_alpha(self.alpha)
        except DomainError as e:
            raise ConfigError(str(e))
        if self.ratio_mode not in RatioNormalization.modes:
            raise ConfigError('unknown ratio_mode %r' % (self.ratio_mode,))
        known = METHODS[self.target]
        for m in self.method_names:
            if m not in known:
                raise ConfigError('unknown method %r for target %s, expected one of %s'
                                  % (m, self.target, ', '.join(known)))
        self.generator.check_size(self.n1)
        if self.two_sample:
            self.second.check_size(self.size2)
        return self


def simulate(cfg, seed, start, stop):
    """Replications [start, stop): per replication one record per method.

    A record is (covered, width, point), with covered None when the
    parameter is unknown, or None when the method was inapplicable.
    """
    builders = [METHODS[cfg.target][m] for m in cfg.method_names]
    truth = cfg.truth
    rows = []
    for i in range(start, stop):
        rng = RngStream(seed, i)
        x = Sample(cfg.generator.draw(rng, cfg.n1))
        y = Sample(cfg.second.draw(rng, cfg.size2)) if cfg.two_sample else None
        row = []
        for build in builders:
            try:
                ci = build(x, y, cfg)
            except (InapplicableMethodError, DegenerateSampleError):
                row.append(None)
                continue
            covered = None if truth is None else ci.contains(truth)
            row.append((covered, ci.width, ci.point))
        rows.append(tuple(row))
    return rows


class MethodCoverage(object):

    def __init__(self, method, nominal, records):
        ok = [r for r in records if r is not None]
        self.method = method
        self.nominal = nominal
        self.applicable = len(ok)
        self.failures = len(records) - len(ok)
        self.covered = self.coverage = self.stderr = None
        self.mean_width = self.width_std = self.mean_point = None
        if not ok:
            return
        if ok[0][0] is not None:
            self.covered = sum(1 for r in ok if r[0])
            c = self.covered / self.applicable
            self.coverage = c
            self.stderr = math.sqrt(c * (1.0 - c) / self.applicable)
        widths = np.array([r[1] for r in ok])
        self.mean_width = float(widths.mean())
        self.width_std = float(widths.std(ddof=1)) if widths.size > 1 else 0.0
        self.mean_point = float(np.mean([r[2] for r in ok]))

    def __repr__(self):
        return '<MethodCoverage %s coverage=%r applicable=%d failures=%d>' % (
            self.method, self.coverage, self.applicable, self.failures)


class CoverageReport(object):
    CSV_FIELDS = ('scenario', 'target', 'method', 'nominal', 'replications', 'applicable',
                  'failures', 'coverage', 'stderr', 'mean_width', 'width_std', 'mean_point',
                  'seed')

    def __init__(self, config, seed, methods, elapsed=None):
        self.config = config
        self.seed = seed
        self.nominal = 1.0 - config.alpha
        self.methods = OrderedDict((m.method, m) for m in methods)
        self.elapsed = elapsed

    def __getitem__(self, method):
        return self.methods[method]

    def __iter__(self):
        return iter(self.methods.values())

    def rows(self):
        cfg = self.config
        for m in self:
            yield OrderedDict([
                ('scenario', cfg.name), ('target', cfg.target), ('method', m.method),
                ('nominal', self.nominal), ('replications', cfg.replications),
                ('applicable', m.applicable), ('failures', m.failures),
                ('coverage', m.coverage), ('stderr', m.stderr),
                ('mean_width', m.mean_width), ('width_std', m.width_std),
                ('mean_point', m.mean_point), ('seed', self.seed),
            ])

    def write_csv(self, f, header=True):
        w = csv.writer(f, lineterminator='\n')
        if header:
            w.writerow(self.CSV_FIELDS)
        for row in self.rows():
            w.writerow([_csv_value(v) for v in row.values()])

    def as_dict(self):
        d = Dict()
        d.config = dict(self.config.to_dict())
        d.seed = self.seed
        d.nominal = self.nominal
        d.methods = [dict(r) for r in self.rows()]
        return d

    def to_table(self, digits=conf.DIGITS):
        cfg = self.config
        head = ['%s: %s, %s' % (cfg.name, cfg.target, cfg.generator)]
        if cfg.two_sample:
            head[0] += ' vs %s, n1=%d, n2=%d' % (cfg.second, cfg.n1, cfg.size2)
        else:
            head[0] += ', n=%d' % cfg.n1
        head.append('nominal %.*f%%, %d replications, seed %d'
                    % (max(digits - 2, 0), self.nominal * 100, cfg.replications, self.seed))
        cols = ('method', 'coverage', 'stderr', 'mean width', 'width sd', 'mean point',
                'failures')
        body = []
        for m in self:
            body.append((m.method, _fmt(m.coverage, digits + 2), _fmt(m.stderr, digits + 2),
                         _fmt(m.mean_width, digits), _fmt(m.width_std, digits),
                         _fmt(m.mean_point, digits), str(m.failures)))
        widths = [max(len(c), *[len(r[i]) for r in body]) for i, c in enumerate(cols)]
        lines = head + ['  '.join(c.rjust(w) for c, w in zip(cols, widths))]
        lines += ['  '.join(v.rjust(w) for v, w in zip(r, widths)) for r in body]
        return '\n'.join(lines)


def _csv_value(v):
    if v is None:
        return ''
    if isinstance(v, float):
        return repr(v)
    return v


def _fmt(v, digits):
    if v is None:
        return 'NA'
    return '%.*f' % (digits, v)


def coverage_band(report, method, k=3):
    """nominal -/+ k binomial standard errors at the applicable count."""
    m = report[method]
    if not m.applicable:
        raise DomainError('no applicable replication for %s' % method)
    p = report.nominal
    half = k * math.sqrt(p * (1.0 - p) / m.applicable)
    return p - half, p + half


def run_scenario(cfg, seed=None, scheduler=None):
    cfg.validate()
    seed = conf.SEED if seed is None else _check_uint64('seed', seed)
    own = scheduler is None
    if own:
        scheduler = LocalScheduler()
    logger.info('scenario %s: %d replications, seed %d', cfg.name, cfg.replications, seed)
    start = time.time()
    try:
        slices = scheduler.run(simulate, (cfg, seed), cfg.replications)
    finally:
        if own:
            scheduler.stop()
    rows = [r for part in slices for r in part]
    methods = [MethodCoverage(name, 1.0 - cfg.alpha, [r[j] for r in rows])
               for j, name in enumerate(cfg.method_names)]
    elapsed = time.time() - start
    logger.info('scenario %s done in %.1f seconds', cfg.name, elapsed)
    for m in methods:
        if m.failures:
            logger.warning('%s/%s inapplicable in %d of %d replications',
                           cfg.name, m.method, m.failures, cfg.replications)
    return CoverageReport(cfg, seed, methods, elapsed)


PRESET_SCENARIOS = {
    's51': [
        ScenarioConfig(name='s51-mean', generator=Normal(3, 2), n1=9, target=Target.mean),
        ScenarioConfig(name='s51-variance', generator=Normal(3, 2), n1=9,
                       target=Target.variance),
    ],
    's53': [
        ScenarioConfig(name='s53-mean', generator=Normal(3, 2), n1=29, target=Target.mean),
        ScenarioConfig(name='s53-variance', generator=Normal(3, 2), n1=29,
                       target=Target.variance),
    ],
    's56b': [
        ScenarioConfig(name='s56b-ratio', generator=Normal(4, math.sqrt(6)),
                       generator2=Normal(1, math.sqrt(2)), n1=9, target=Target.var_ratio),
        ScenarioConfig(name='s56b-diff', generator=Normal(4, math.sqrt(6)),
                       generator2=Normal(1, math.sqrt(2)), n1=9, target=Target.mean_diff),
    ],
    's56c': [
        ScenarioConfig(name='s56c-ratio', generator=Normal(4, math.sqrt(6)),
                       generator2=Normal(1, math.sqrt(2)), n1=15, target=Target.var_ratio),
        ScenarioConfig(name='s56c-diff', generator=Normal(4, math.sqrt(6)),
                       generator2=Normal(1, math.sqrt(2)), n1=15, target=Target.mean_diff),
    ],
    'ratio-adjudication': [
        ScenarioConfig(name='ratio-adjudication', generator=Normal(0, 1),
                       generator2=Normal(0, 10), n1=200, target=Target.var_ratio,
                       methods=['general/theorem', 'general/table-unscaled']),
    ],
}


def _parse_value(key, value):
    if key in ('generator', 'generator2'):
        return parse_generator(value)
    if key in ('n1', 'n2', 'replications'):
        return int(value)
    if key == 'alpha':
        return float(value)
    if key == 'target':
        t = TARGETS.get(value.lower().replace('_', ''))
        if t is None:
            raise ConfigError('unknown target %r, expected one of %s'
                              % (value, ', '.join(METHODS)))
        return t
    if key == 'methods':
        return [m.strip() for m in value.split(',') if m.strip()]
    if key == 'compat_rcode':
        if value.lower() not in ('true', 'false', 'yes', 'no', '1', '0'):
            raise ValueError('expected a boolean, got %r' % value)
        return value.lower() in ('true', 'yes', '1')
    return value


def parse_scenarios(lines, path='<config>', default_name='scenario'):
    """Scenarios from `key = value` lines, one per `[name]` section."""
    scenarios = []
    current, name, first_line = None, default_name, None

    def flush():
        if current is not None:
            try:
                scenarios.append(ScenarioConfig(name=name, **current).validate())
            except ConfigError as e:
                raise ConfigError('%s:%d: %s' % (path, first_line, e))

    for lineno, line in enumerate(lines, 1):
        line = line.strip()
        if not line or line.startswith('#'):
            continue
        if line.startswith('['):
            if not line.endswith(']') or len(line) < 3:
                raise DataFormatError('bad section header %r' % line, path, lineno)
            flush()
            current, name, first_line = {}, line[1:-1].strip(), lineno
            continue
        if '=' not in line:
            raise DataFormatError('expected key = value, got %r' % line, path, lineno)
        key, value = [p.strip() for p in line.split('=', 1)]
        if key == 'name':
            name = value
            if current is None:
                current, first_line = {}, lineno
            continue
        if key not in ScenarioConfig.ATTRS:
            raise DataFormatError('unknown key %r' % key, path, lineno)
        if current is None:
            current, first_line = {}, lineno
        try:
            current[key] = _parse_value(key, value)
        except ConfigError as e:
            raise ConfigError('%s:%d: %s' % (path, lineno, e))
        except ValueError as e:
            raise DataFormatError('bad value for %s: %s' % (key, e), path, lineno)
    flush()
    if not scenarios:
        raise DataFormatError('no scenario found', path)
    return scenarios


def load_scenarios(path_or_preset):
    """A preset name from PRESET_SCENARIOS or a scenario config file."""
    preset = PRESET_SCENARIOS.get(path_or_preset)
    if preset is not None:
        return [cfg.dup() for cfg in preset]
    try:
        with open(path_or_preset) as f:
            lines = f.readlines()
    except (IOError, OSError) as e:
        raise ConfigError('cannot read scenario config %s: %s (presets: %s)'
                          % (path_or_preset, e, ', '.join(sorted(PRESET_SCENARIOS))))
    default_name = os.path.splitext(os.path.basename(path_or_preset))[0]
    return parse_scenarios(lines, path_or_preset, default_name)
