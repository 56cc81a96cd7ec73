"""Report rendering: aligned text tables, CSV and JSON.

Rounding to `digits` happens only in the text table; CSV and JSON carry
full precision.
"""
from __future__ import absolute_import
import csv
import json
from collections import OrderedDict

import six
from addict import Dict

import fepstat.conf as conf
from fepstat.utils import DomainError

FORMATS = ('table', 'csv', 'json')

# values at or above this are shown in scientific notation
SCI_THRESHOLD = 1e9

ROW_NAMES = {
    'mean/gaussian': 'Gaussian Data',
    'mean/general': 'General Case',
    'variance/gaussian': 'Gaussian Data',
    'variance/general': 'General Case',
    'ratio/gaussian': 'Gaussian Data',
    'ratio/general': 'General Case',
    'diff/pooled': 'Gaussian Data (equal variances)',
    'diff/welch': 'Gaussian Data (unequal variances)',
    'diff/general': 'General Case',
}

MARK_TRUNCATED = '[truncated-at-0]'
MARK_INAPPLICABLE = '[inapplicable]'
MARK_COMPAT = '[r-code]'


class ReportOptions(object):

    def __init__(self, digits=None, format='table'):
        if digits is None:
            digits = conf.DIGITS
        if int(digits) != digits or digits < 1:
            raise DomainError('digits must be a positive integer, got %r' % (digits,))
        if format not in FORMATS:
            raise DomainError('unknown format %r, expected one of %s'
                              % (format, ', '.join(FORMATS)))
        self.digits = int(digits)
        self.format = format


def format_number(v, digits):
    if v is None:
        return 'NA'
    if abs(v) >= SCI_THRESHOLD:
        return '%.*e' % (digits, v)
    return '%.*f' % (digits, v)


class Report(object):
    """Titled sections of (row label, interval or exception) pairs."""

    def __init__(self, title, info=None):
        self.title = title
        self.info = OrderedDict(info or ())
        self.sections = []
        self.notes = []

    def add_section(self, heading, rows):
        self.sections.append((heading, list(rows)))

    def add_note(self, note):
        self.notes.append(note)

    @property
    def rows(self):
        return [row for _, rows in self.sections for row in rows]

    @property
    def partial(self):
        return any(isinstance(ci, Exception) for _, ci in self.rows)

    def render(self, options):
        return {
            'table': self.to_table,
            'csv': self.to_csv,
            'json': self.to_json,
        }[options.format](options)

    def to_table(self, options):
        dg = options.digits
        lines = [self.title]
        for k, v in self.info.items():
            lines.append('%s: %s' % (k, format_number(v, dg) if isinstance(v, float) else v))
        for heading, rows in self.sections:
            table = []
            for label, ci in rows:
                name = ROW_NAMES.get(label, label)
                if isinstance(ci, Exception):
                    table.append((name, '', '', '%s %s' % (MARK_INAPPLICABLE, ci)))
                    continue
                marks = []
                if ci.truncated_at_zero:
                    marks.append('%s raw=%s' % (MARK_TRUNCATED, format_number(ci.raw_lower, dg)))
                if ci.compat:
                    marks.append(MARK_COMPAT)
                if label == 'diff/welch' and ci.df is not None:
                    marks.append('f=%s' % format_number(ci.df, dg))
                table.append((name, format_number(ci.lower, dg), format_number(ci.upper, dg),
                              ' '.join(marks)))
            cols = ('%s (level %s%%)' % (heading, _level(rows, dg)), 'Inferior bound',
                    'Superior bound')
            widths = [max([len(c)] + [len(r[i]) for r in table]) for i, c in enumerate(cols)]
            lines.append('')
            lines.append('  '.join(c.ljust(w) for c, w in zip(cols, widths)).rstrip())
            for r in table:
                cells = [r[0].ljust(widths[0]), r[1].rjust(widths[1]), r[2].rjust(widths[2])]
                lines.append(('  '.join(cells) + '  ' + r[3]).rstrip())
        if self.notes:
            lines.append('')
            lines.extend(self.notes)
        return '\n'.join(lines) + '\n'

    CSV_FIELDS = ('section', 'row', 'target', 'method', 'level', 'point', 'lower', 'upper',
                  'raw_lower', 'truncated_at_zero', 'df', 'compat', 'status', 'message')

    def to_csv(self, options=None):
        out = six.StringIO()
        w = csv.writer(out, lineterminator='\n')
        w.writerow(self.CSV_FIELDS)
        for heading, rows in self.sections:
            for label, ci in rows:
                if isinstance(ci, Exception):
                    w.writerow([heading, label] + [''] * 10 + ['inapplicable', str(ci)])
                    continue
                d = ci.as_dict()
                w.writerow([heading, label, d['target'], d['method']]
                           + [_csv_value(d[k]) for k in ('level', 'point', 'lower', 'upper',
                                                         'raw_lower', 'truncated_at_zero',
                                                         'df', 'compat')]
                           + ['ok', ''])
        return out.getvalue()

    def as_dict(self):
        d = Dict()
        d.title = self.title
        d.info = dict(self.info)
        d.sections = []
        for heading, rows in self.sections:
            section = Dict(heading=heading, rows=[])
            for label, ci in rows:
                if isinstance(ci, Exception):
                    section.rows.append({'row': label, 'status': 'inapplicable',
                                         'message': str(ci)})
                else:
                    row = ci.as_dict()
                    row.update(row=label, status='ok')
                    section.rows.append(row)
            d.sections.append(section)
        d.notes = list(self.notes)
        return d

    def to_json(self, options=None):
        return json.dumps(self.as_dict(), indent=2) + '\n'


def _level(rows, digits):
    for _, ci in rows:
        if not isinstance(ci, Exception):
            return '%.*g' % (max(digits, 2), ci.level * 100)
    return '?'


def _csv_value(v):
    if v is None:
        return ''
    if isinstance(v, bool):
        return 'true' if v else 'false'
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, tuple):
        return ' '.join(str(_csv_value(x)) for x in v)
    return v


def jarque_bera_report(result, name, options):
    dg = options.digits
    verdict = 'accepted' if result.accepted() else 'rejected'
    if options.format == 'table':
        return '\n'.join([
            'Jarque-Bera normality test: %s (n=%d)' % (name, result.n),
            'skewness: %s' % format_number(result.skewness, dg),
            'kurtosis: %s' % format_number(result.kurtosis, dg),
            'Jarque Berra Statistic: %s' % format_number(result.statistic, dg),
            'p-value: %s%%' % format_number(result.p_value * 100, dg),
            'normality %s at %g%%' % (verdict, conf.JB_LEVEL * 100),
        ]) + '\n'
    d = OrderedDict([('name', name), ('n', result.n), ('skewness', result.skewness),
                     ('kurtosis', result.kurtosis), ('statistic', result.statistic),
                     ('p_value', result.p_value), ('level', conf.JB_LEVEL),
                     ('normality', verdict)])
    if options.format == 'json':
        return json.dumps(Dict(d), indent=2) + '\n'
    out = six.StringIO()
    w = csv.writer(out, lineterminator='\n')
    w.writerow(list(d))
    w.writerow([_csv_value(v) for v in d.values()])
    return out.getvalue()


def qq_report(pairs, options):
    if options.format == 'json':
        return json.dumps([Dict(theoretical=t, empirical=e) for t, e in pairs], indent=2) + '\n'
    if options.format == 'table':
        dg = options.digits
        rows = [(format_number(t, dg), format_number(e, dg)) for t, e in pairs]
        w0 = max([len('theoretical')] + [len(r[0]) for r in rows])
        w1 = max([len('empirical')] + [len(r[1]) for r in rows])
        lines = ['%s  %s' % ('theoretical'.rjust(w0), 'empirical'.rjust(w1))]
        lines += ['%s  %s' % (a.rjust(w0), b.rjust(w1)) for a, b in rows]
        return '\n'.join(lines) + '\n'
    out = six.StringIO()
    w = csv.writer(out, lineterminator='\n')
    w.writerow(['theoretical', 'empirical'])
    for t, e in pairs:
        w.writerow([repr(t), repr(e)])
    return out.getvalue()
