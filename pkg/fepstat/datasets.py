"""Sample files and the bundled ESAM income datasets.

A sample file holds reals separated by commas and/or whitespace, one or
more per line. Blank lines and lines starting with '#' are ignored. The
decimal point is '.', and there are no thousands separators.
"""
from __future__ import absolute_import, division
import os
import re
import math

from fepstat.moments import Sample
from fepstat.utils import DataFormatError, DomainError
from fepstat.utils.log import get_logger

logger = get_logger(__name__)

DATA_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'data')
CHECKSUM_FILE = 'checksums.txt'
SEPARATORS = re.compile(r'[,\s]+')


def parse_sample_lines(lines, path=None):
    values = []
    for lineno, line in enumerate(lines, 1):
        line = line.strip()
        if not line or line.startswith('#'):
            continue
        for token in SEPARATORS.split(line):
            if not token:
                continue
            try:
                v = float(token)
            except ValueError:
                raise DataFormatError('cannot parse %r as a number' % token, path, lineno)
            if math.isnan(v) or math.isinf(v):
                raise DataFormatError('non-finite value %r' % token, path, lineno)
            values.append(v)
    if not values:
        raise DataFormatError('empty sample', path)
    return values


def read_sample_file(path, name=None):
    with open(path) as f:
        values = parse_sample_lines(f, path)
    if name is None:
        name = os.path.splitext(os.path.basename(path))[0]
    return Sample(values, name=name)


class DatasetRegistry(object):
    """Named sample files under one directory, with `name n sum` checksums."""

    def __init__(self, root=DATA_DIR):
        self.root = root
        self._cache = {}
        self._checksums = None

    @property
    def names(self):
        return sorted(os.path.splitext(f)[0] for f in os.listdir(self.root)
                      if f.endswith('.txt') and f != CHECKSUM_FILE)

    def __contains__(self, name):
        return name in self.names

    def path(self, name):
        if name not in self:
            raise DomainError('unknown dataset %r, known: %s' % (name, ', '.join(self.names)))
        return os.path.join(self.root, name + '.txt')

    def load(self, name):
        s = self._cache.get(name)
        if s is None:
            s = read_sample_file(self.path(name), name)
            self._cache[name] = s
        return s

    def provenance(self, name):
        notes = []
        with open(self.path(name)) as f:
            for line in f:
                if line.startswith('#'):
                    notes.append(line[1:].strip())
        return notes

    @property
    def checksums(self):
        if self._checksums is None:
            sums = {}
            path = os.path.join(self.root, CHECKSUM_FILE)
            if os.path.exists(path):
                with open(path) as f:
                    for lineno, line in enumerate(f, 1):
                        line = line.strip()
                        if not line or line.startswith('#'):
                            continue
                        parts = line.split()
                        if len(parts) != 3:
                            raise DataFormatError('expected "name n sum"', path, lineno)
                        sums[parts[0]] = (int(parts[1]), float(parts[2]))
            self._checksums = sums
        return self._checksums

    def verify(self, name):
        """True iff size and value sum match the checked-in checksum."""
        expected = self.checksums.get(name)
        if expected is None:
            logger.warning('no checksum recorded for dataset %s', name)
            return False
        n, total = expected
        s = self.load(name)
        ok = s.n == n and abs(float(s.values.sum()) - total) <= 1e-6 * max(1.0, abs(total))
        if not ok:
            logger.error('dataset %s fails its checksum: n=%d sum=%r, expected n=%d sum=%r',
                         name, s.n, float(s.values.sum()), n, total)
        return ok


registry = DatasetRegistry()


def load_sample(path_or_name):
    """A sample file when the path exists, otherwise a bundled dataset."""
    if os.path.exists(path_or_name):
        return read_sample_file(path_or_name)
    if path_or_name in registry:
        return registry.load(path_or_name)
    raise DomainError('no such file or bundled dataset: %r' % (path_or_name,))


def is_bundled(path_or_name):
    return not os.path.exists(path_or_name) and path_or_name in registry


# Published bounds for the bundled datasets: row label -> (lower, upper,
# relative tolerance). Default alphas (0.05 for means, 0.1 for the
# Gaussian variance) are assumed.
PUBLISHED_EXPECTATIONS = {
    ('one', 'dakar1'): {
        'mean/gaussian': (190746.0, 786611.0, 0.005),
        'mean/general': (200000.0, 779256.0, 0.005),
        'variance/gaussian': (8.1e11, 1.6e12, 0.05),
    },
    ('one', 'dakar2'): {
        'mean/gaussian': (542666.0, 990509.0, 0.005),
        'mean/general': (548194.0, 984981.0, 0.005),
    },
    ('two', 'dakar2', 'dakar1'): {
        'diff/pooled': (-291309.0, 164352.0, 0.01),
        'diff/welch': (-291309.0, 164352.0, 0.01),
        'diff/general': (-288496.0, 161354.0, 0.01),
    },
    ('two', 'dakar1', 'diour1'): {
        'diff/pooled': (214102.0, 587024.0, 0.01),
        'diff/welch': (214102.0, 587024.0, 0.01),
        # printed as "584v722"
        'diff/general': (216405.0, 584722.0, 0.01),
    },
    ('two', 'dakar2', 'diour2'): {
        'diff/pooled': (157976.0, 438435.0, 0.01),
        'diff/welch': (157976.0, 438435.0, 0.01),
        'diff/general': (159708.0, 436705.0, 0.01),
    },
}


def _off(got, want, tol):
    return abs(got - want) > tol * abs(want)


def check_expectations(key, rows):
    """Compare report rows against PUBLISHED_EXPECTATIONS[key].

    Logs one warning per row outside tolerance and returns their labels.
    Rows that failed to compute are skipped.
    """
    expected = PUBLISHED_EXPECTATIONS.get(tuple(key))
    if not expected:
        return []
    off = []
    for label, ci in rows:
        if label not in expected or isinstance(ci, Exception):
            continue
        lo, hi, tol = expected[label]
        if _off(ci.lower, lo, tol) or _off(ci.upper, hi, tol):
            logger.warning('published discrepancy for %s %s: got [%.6g, %.6g], published [%.6g, %.6g]'
                           ' (tolerance %g%%)', ' '.join(key), label, ci.lower, ci.upper,
                           lo, hi, tol * 100)
            off.append(label)
    return off
