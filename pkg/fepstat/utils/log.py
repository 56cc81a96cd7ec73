"""Logging setup shared by the library and the command line.

Library modules only call get_logger(__name__); the handler is installed by
init_fepstat_logger, which the CLI calls once per run.
"""
import sys
import logging
import re

LOG_FORMAT = ('{GREEN}%(asctime)-15s{RESET} [%(levelname)s] [%(threadName)s]'
              ' [%(name)-9s:%(lineno)d] %(message)s')
DATE_FORMAT = '%Y-%m-%d %H:%M:%S'

RESET = '\033[0m'
ESCAPES = dict(
    [('RESET', RESET), ('BOLD', '\033[1m')]
    + [(name, '\033[1;%dm' % code) for name, code in zip(
        ('BLACK', 'RED', 'GREEN', 'YELLOW', 'BLUE', 'MAGENTA', 'CYAN', 'WHITE'), range(30, 38))]
)

LEVEL_COLORS = {
    'DEBUG': ESCAPES['BLUE'],
    'INFO': ESCAPES['WHITE'],
    'WARNING': ESCAPES['YELLOW'],
    'ERROR': ESCAPES['RED'],
    'CRITICAL': ESCAPES['MAGENTA'],
}

_TOKEN = re.compile(r'\{(%s)\}' % '|'.join(ESCAPES))


def expand_colors(text, use_color=True):
    """Replace {RED}-style tokens by escapes, or drop them."""
    return _TOKEN.sub(lambda m: ESCAPES[m.group(1)] if use_color else '', text)


class ColoredFormatter(logging.Formatter):

    def __init__(self, fmt=None, datefmt=None, use_color=True):
        logging.Formatter.__init__(self, fmt and expand_colors(fmt, use_color), datefmt)
        self.use_color = use_color

    def format(self, record):
        # a copy, other handlers must see the plain record
        record = logging.makeLogRecord(record.__dict__)
        color = LEVEL_COLORS.get(record.levelname)
        if self.use_color and color:
            record.levelname = color + record.levelname + RESET
        if isinstance(record.msg, str):
            record.msg = expand_colors(record.msg, self.use_color)
        return logging.Formatter.format(self, record)


def _bar_glyphs():
    if getattr(sys.stderr, 'encoding', None) in ('UTF-8', 'utf-8'):
        return u'▉', u'-', u' ▏▎▍▌▋▊'
    return '#', '-', ' .:-=+*'


def make_progress_bar(ratio, size=14):
    """'[ ####=---- ]' for ratio in [0, 1]; the border takes 4 columns."""
    full, empty, partial = _bar_glyphs()
    border = size > 4
    width = size - 4 if border else size
    ratio = min(max(ratio, 0.0), 1.0)
    done = int(width * ratio)
    rest = width * ratio - done
    bar = full * done
    if done < width:
        bar += partial[int(rest * len(partial))] if rest > 0 else empty
        bar += empty * (width - done - 1)
    return '[ %s ]' % bar if border else bar


def init_fepstat_logger(log_level, use_color=None):
    """One stderr handler on the 'fepstat' logger; calling again replaces it."""
    logger = get_logger('fepstat')
    logger.propagate = False
    if use_color is None:
        use_color = getattr(sys.stderr, 'isatty', lambda: False)()

    for h in [h for h in logger.handlers if getattr(h, '_fepstat_owned', False)]:
        logger.removeHandler(h)

    handler = logging.StreamHandler(stream=sys.stderr)
    handler.setFormatter(ColoredFormatter(LOG_FORMAT, DATE_FORMAT, use_color))
    handler.setLevel(log_level)
    handler._fepstat_owned = True
    logger.addHandler(handler)
    logger.setLevel(logging.DEBUG)
    return logger


def get_logger(name):
    """A plain logging.Logger, whatever logger class the host installed."""
    saved = logging.getLoggerClass()
    logging.setLoggerClass(logging.Logger)
    try:
        return logging.getLogger(name)
    finally:
        logging.setLoggerClass(saved)
