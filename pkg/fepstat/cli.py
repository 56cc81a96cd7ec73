"""fepstat command line.

Exit codes: 0 success, 2 some methods inapplicable (the report is still
written), 64 usage error, 65 data format error.
"""
from __future__ import absolute_import, division, print_function
import sys
import logging
import argparse
import json

import six

from addict import Dict

import fepstat.conf as conf
from fepstat import mc
from fepstat.datasets import load_sample, is_bundled, check_expectations, registry
from fepstat.normality import jarque_bera, qq_pairs
from fepstat.onesample import one_sample_intervals, paired_reduce
from fepstat.twosample import RatioNormalization, two_sample_intervals, imbalance, welch_df
from fepstat.report import Report, ReportOptions, FORMATS, jarque_bera_report, qq_report
from fepstat.schedule import create_scheduler
from fepstat.utils import (
    atomic_file, DomainError, DegenerateSampleError, InapplicableMethodError,
    DataFormatError, ConfigError
)
from fepstat.utils.log import get_logger, init_fepstat_logger

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_PARTIAL = 2
EXIT_USAGE = 64
EXIT_DATA = 65


class ArgumentParser(argparse.ArgumentParser):

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, '%s: error: %s\n' % (self.prog, message))


def alpha_type(text):
    try:
        a = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError('alpha must be a number, got %r' % text)
    if not 0 < a < 1:
        raise argparse.ArgumentTypeError('alpha must lie in (0, 1), got %s' % text)
    return a


def digits_type(text):
    try:
        d = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError('digits must be an integer, got %r' % text)
    if d < 1:
        raise argparse.ArgumentTypeError('digits must be >= 1, got %d' % d)
    return d


def _emit(args, text):
    if getattr(args, 'output', None):
        with atomic_file(args.output) as f:
            f.write(text)
        logger.info('report written to %s', args.output)
    else:
        sys.stdout.write(text)


def _options(args):
    return ReportOptions(args.digits, args.format)


def _default_alphas(args):
    return args.alpha_mean == conf.ALPHA_MEAN and args.alpha_var == conf.ALPHA_VAR


def _warn_inapplicable(rows):
    for label, ci in rows:
        if isinstance(ci, Exception):
            logger.warning('%s: %s', label, ci)


def _one_sample_report(title, s, args):
    rows = dict(one_sample_intervals(s, args.alpha_mean, args.alpha_var, args.compat_rcode))
    report = Report(title, [('n', s.n), ('alpha-mean', args.alpha_mean),
                            ('alpha-var', args.alpha_var)])
    report.add_section('Estimation of the mean',
                       [(k, rows[k]) for k in ('mean/gaussian', 'mean/general')])
    report.add_section('Estimation of the variance',
                       [(k, rows[k]) for k in ('variance/gaussian', 'variance/general')])
    _warn_inapplicable(report.rows)
    return report


def cmd_one(args):
    s = load_sample(args.data)
    report = _one_sample_report('One sample: %s' % s.name, s, args)
    if is_bundled(args.data) and _default_alphas(args) and not args.compat_rcode:
        check_expectations(('one', args.data), report.rows)
    _emit(args, report.render(_options(args)))
    return EXIT_PARTIAL if report.partial else EXIT_OK


def cmd_paired(args):
    x, y = load_sample(args.data1), load_sample(args.data2)
    z = paired_reduce(x, y)
    report = _one_sample_report('Paired samples: Z = %s - %s' % (x.name, y.name), z, args)
    _emit(args, report.render(_options(args)))
    return EXIT_PARTIAL if report.partial else EXIT_OK


def cmd_two(args):
    x, y = load_sample(args.data1), load_sample(args.data2)
    ratio = imbalance(x, y)
    if ratio > conf.IMBALANCE_RATIO:
        logger.warning('sample sizes are unbalanced: n1=%d, n2=%d (ratio %.1f > %g)',
                       x.n, y.n, ratio, conf.IMBALANCE_RATIO)
    rows = dict(two_sample_intervals(x, y, args.alpha_mean, args.alpha_var,
                                     args.ratio_mode, args.compat_rcode))
    info = [('n1', x.n), ('n2', y.n), ('alpha-mean', args.alpha_mean),
            ('alpha-var', args.alpha_var), ('ratio-mode', args.ratio_mode)]
    try:
        info.append(('welch f', welch_df(x, y)))
    except DegenerateSampleError:
        pass
    report = Report('Two samples: %s vs %s' % (x.name, y.name), info)
    report.add_section('Estimation of the ratio of variance',
                       [(k, rows[k]) for k in ('ratio/gaussian', 'ratio/general')])
    report.add_section('Estimation of the mean difference',
                       [(k, rows[k]) for k in ('diff/pooled', 'diff/welch', 'diff/general')])
    if ratio > conf.IMBALANCE_RATIO:
        report.add_note('warning: size ratio %.1f exceeds %g' % (ratio, conf.IMBALANCE_RATIO))
    _warn_inapplicable(report.rows)
    if (is_bundled(args.data1) and is_bundled(args.data2) and _default_alphas(args)
            and not args.compat_rcode):
        check_expectations(('two', args.data1, args.data2), report.rows)
    _emit(args, report.render(_options(args)))
    return EXIT_PARTIAL if report.partial else EXIT_OK


def cmd_jb(args):
    s = load_sample(args.data)
    result = jarque_bera(s)
    _emit(args, jarque_bera_report(result, s.name, _options(args)))
    return EXIT_OK


def cmd_qq(args):
    s = load_sample(args.data)
    _emit(args, qq_report(qq_pairs(s), _options(args)))
    return EXIT_OK


def cmd_coverage(args):
    scenarios = mc.load_scenarios(args.scenario)
    if args.reps is not None:
        scenarios = [cfg.dup(replications=args.reps) for cfg in scenarios]
    seed = conf.SEED if args.seed is None else args.seed
    logger.info('seed %d (rerun with --seed %d to reproduce)', seed, seed)

    scheduler = create_scheduler(args.master, args.parallel)
    try:
        reports = [mc.run_scenario(cfg, seed, scheduler) for cfg in scenarios]
    finally:
        scheduler.stop()

    if args.output:
        with atomic_file(args.output) as f:
            for i, r in enumerate(reports):
                r.write_csv(f, header=(i == 0))
        logger.info('coverage CSV written to %s', args.output)

    if args.format == 'table':
        text = '\n\n'.join(r.to_table(args.digits) for r in reports) + '\n'
    elif args.format == 'json':
        text = json.dumps([r.as_dict() for r in reports], indent=2) + '\n'
    else:
        out = six.StringIO()
        for i, r in enumerate(reports):
            r.write_csv(out, header=(i == 0))
        text = out.getvalue()
    sys.stdout.write(text)
    return EXIT_OK


def cmd_datasets(args):
    entries = []
    for name in registry.names:
        s = registry.load(name)
        entries.append(Dict(name=name, n=s.n, sum=float(s.values.sum()),
                            checksum='ok' if registry.verify(name) else 'MISMATCH',
                            provenance=registry.provenance(name)))
    if args.format == 'json':
        text = json.dumps(entries, indent=2) + '\n'
    elif args.format == 'csv':
        text = 'name,n,sum,checksum\n' + ''.join(
            '%s,%d,%r,%s\n' % (e.name, e.n, e.sum, e.checksum) for e in entries)
    else:
        lines = []
        for e in entries:
            lines.append('%-8s n=%-4d sum=%.2f checksum %s' % (e.name, e.n, e.sum, e.checksum))
            lines.extend('    ' + p for p in e.provenance)
        text = '\n'.join(lines) + '\n'
    sys.stdout.write(text)
    return EXIT_OK if all(e.checksum == 'ok' for e in entries) else EXIT_DATA


def common_options(default_format='table'):
    # a fresh parent per subcommand, argparse shares action objects with parents
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--digits', type=digits_type, default=conf.DIGITS,
                        help='digits shown in text reports (default %(default)s)')
    common.add_argument('--format', choices=FORMATS, default=default_format)
    common.add_argument('-o', '--output', help='write the report to this file')
    return common


def build_parser():
    alphas = argparse.ArgumentParser(add_help=False)
    alphas.add_argument('--alpha-mean', type=alpha_type, default=conf.ALPHA_MEAN,
                        help='alpha for means and general variance rows (default %(default)s)')
    alphas.add_argument('--alpha-var', type=alpha_type, default=conf.ALPHA_VAR,
                        help='alpha for Gaussian variance rows (default %(default)s)')
    alphas.add_argument('--compat-rcode', action='store_true',
                        help='reproduce the reference R functions, quirks included')

    parser = ArgumentParser(prog='fepstat',
                            description='confidence intervals for means, variances,'
                                        ' variance ratios and mean differences')
    parser.add_argument('-q', '--quiet', action='store_true')
    parser.add_argument('-v', '--verbose', action='store_true')
    parser.add_argument('--color', action='store_true', default=None)
    parser.add_argument('--no-color', action='store_false', dest='color')
    sub = parser.add_subparsers(dest='command', metavar='command')
    sub.required = True

    p = sub.add_parser('one', parents=[common_options(), alphas], help='one-sample intervals')
    p.add_argument('data', help='sample file or bundled dataset name')
    p.set_defaults(func=cmd_one)

    p = sub.add_parser('two', parents=[common_options(), alphas], help='two independent samples')
    p.add_argument('data1')
    p.add_argument('data2')
    p.add_argument('--ratio-mode', choices=RatioNormalization.modes,
                   default=RatioNormalization.theorem_scaled,
                   help='normalization of the general variance-ratio interval')
    p.set_defaults(func=cmd_two)

    p = sub.add_parser('paired', parents=[common_options(), alphas],
                       help='paired samples, reduced to Z = X - Y')
    p.add_argument('data1')
    p.add_argument('data2')
    p.set_defaults(func=cmd_paired)

    p = sub.add_parser('jb', parents=[common_options()], help='Jarque-Bera normality test')
    p.add_argument('data')
    p.set_defaults(func=cmd_jb)

    p = sub.add_parser('qq', parents=[common_options('csv')], help='normal QQ pairs')
    p.add_argument('data')
    p.set_defaults(func=cmd_qq)

    p = sub.add_parser('coverage', parents=[common_options()], help='Monte-Carlo coverage study')
    p.add_argument('scenario', help='scenario config file or preset (%s)'
                                    % ', '.join(sorted(mc.PRESET_SCENARIOS)))
    p.add_argument('--seed', type=int, default=None,
                   help='random seed (default %d)' % conf.SEED)
    p.add_argument('--reps', type=int, default=None, help='replications per scenario')
    p.add_argument('-m', '--master', choices=('local', 'process'), default='local')
    p.add_argument('-p', '--parallel', type=int, default=0, help='number of processes')
    p.set_defaults(func=cmd_coverage)

    p = sub.add_parser('datasets', help='list bundled datasets')
    p.add_argument('--format', choices=FORMATS, default='table')
    p.set_defaults(func=cmd_datasets)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)

    log_level = (args.quiet and logging.ERROR
                 or args.verbose and logging.DEBUG or logging.INFO)
    init_fepstat_logger(log_level, use_color=args.color)

    try:
        return args.func(args)
    except DataFormatError as e:
        logger.error('%s', e)
        return EXIT_DATA
    except DegenerateSampleError as e:
        logger.error('%s', e)
        return EXIT_DATA
    except (ConfigError, DomainError) as e:
        logger.error('%s', e)
        return EXIT_USAGE
    except InapplicableMethodError as e:
        logger.error('%s', e)
        return EXIT_PARTIAL


if __name__ == '__main__':
    sys.exit(main())
