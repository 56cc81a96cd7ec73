from __future__ import absolute_import
import logging
import unittest

from six import StringIO

try:
    from unittest import mock
except ImportError:
    import mock

from fepstat.utils.log import (
    ColoredFormatter, expand_colors, make_progress_bar, init_fepstat_logger, RESET
)


class TestProgressBar(unittest.TestCase):

    def test_width(self):
        for ratio in (0, 0.05, 0.5, 0.55, 0.99, 1, 1.5, -1):
            bar = make_progress_bar(ratio)
            self.assertEqual(len(bar), 14, ratio)
            self.assertTrue(bar.startswith('[ ') and bar.endswith(' ]'))
        self.assertEqual(len(make_progress_bar(0.3, size=4)), 4)

    def test_ends(self):
        with mock.patch('sys.stderr', mock.Mock(encoding='ascii')):
            self.assertEqual(make_progress_bar(0.0), '[ ---------- ]')
            self.assertEqual(make_progress_bar(1.0), '[ ########## ]')
            self.assertEqual(make_progress_bar(0.5), '[ #####----- ]')


class TestFormatter(unittest.TestCase):

    def record(self, level, msg):
        return logging.LogRecord('fepstat.x', level, __file__, 1, msg, None, None)

    def test_tokens(self):
        self.assertEqual(expand_colors('{RED}x{RESET}', use_color=False), 'x')
        self.assertEqual(expand_colors('{RESET}'), RESET)
        self.assertEqual(expand_colors('{nope}'), '{nope}')

    def test_plain(self):
        fmt = ColoredFormatter('%(levelname)s %(message)s', use_color=False)
        self.assertEqual(fmt.format(self.record(logging.WARNING, '{RED}low{RESET}')),
                         'WARNING low')

    def test_color_leaves_record(self):
        fmt = ColoredFormatter('%(levelname)s %(message)s', use_color=True)
        rec = self.record(logging.ERROR, 'bad')
        self.assertIn(RESET, fmt.format(rec))
        self.assertEqual(rec.levelname, 'ERROR')


class TestInit(unittest.TestCase):

    def tearDown(self):
        logger = logging.getLogger('fepstat')
        for h in list(logger.handlers):
            if getattr(h, '_fepstat_owned', False):
                logger.removeHandler(h)
        logger.setLevel(logging.ERROR)

    def test_single_handler(self):
        err = StringIO()
        with mock.patch('sys.stderr', err):
            init_fepstat_logger(logging.INFO, use_color=False)
            logger = init_fepstat_logger(logging.WARNING, use_color=False)
            owned = [h for h in logger.handlers if getattr(h, '_fepstat_owned', False)]
            self.assertEqual(len(owned), 1)
            logging.getLogger('fepstat.mc').info('hidden')
            logging.getLogger('fepstat.mc').warning('shown %d', 3)
        self.assertNotIn('hidden', err.getvalue())
        self.assertIn('shown 3', err.getvalue())


if __name__ == '__main__':
    unittest.main()
