from __future__ import absolute_import
import os
import shutil
import tempfile
import unittest
import logging

from fepstat.datasets import (
    parse_sample_lines, read_sample_file, DatasetRegistry, registry, load_sample, is_bundled,
    check_expectations, PUBLISHED_EXPECTATIONS
)
from fepstat.onesample import one_sample_intervals
from fepstat.utils import DataFormatError, DomainError

logging.getLogger('fepstat').setLevel(logging.ERROR)


class TestParse(unittest.TestCase):

    def test_separators(self):
        lines = ['# incomes', '1.5, 2', '', '3\t4   5,6', '  7e2  ']
        self.assertEqual(parse_sample_lines(lines), [1.5, 2, 3, 4, 5, 6, 700])

    def test_errors(self):
        cases = (
            (['1 2', '3 x'], 'f.txt:2:'),
            (['1', 'nan'], 'f.txt:2:'),
            (['inf'], 'f.txt:1:'),
            (['1 2', '1,5;3'], 'f.txt:2:'),
            (['# nothing here', ''], 'empty'),
        )
        for lines, where in cases:
            with self.assertRaises(DataFormatError) as cm:
                parse_sample_lines(lines, 'f.txt')
            self.assertIn(where, str(cm.exception))

    def test_error_position(self):
        try:
            parse_sample_lines(['1', '2', 'oops'], 'g.txt')
        except DataFormatError as e:
            self.assertEqual(e.lineno, 3)
            self.assertEqual(e.path, 'g.txt')
        else:
            self.fail('DataFormatError not raised')


class TestFiles(unittest.TestCase):

    def setUp(self):
        self.dir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.dir)

    def write(self, name, text):
        path = os.path.join(self.dir, name)
        with open(path, 'w') as f:
            f.write(text)
        return path

    def test_read(self):
        path = self.write('town.txt', '1 2 3\n4\n')
        s = read_sample_file(path)
        self.assertEqual(s.name, 'town')
        self.assertEqual(list(s), [1.0, 2.0, 3.0, 4.0])
        self.assertEqual(load_sample(path).n, 4)
        self.assertFalse(is_bundled(path))

    def test_file_shadows_dataset(self):
        cwd = os.getcwd()
        os.chdir(self.dir)
        try:
            self.write('dakar1', '1 2 3\n')
            self.assertEqual(load_sample('dakar1').n, 3)
            self.assertFalse(is_bundled('dakar1'))
        finally:
            os.chdir(cwd)

    def test_registry_checksum(self):
        self.write('a.txt', '# made up\n1 2 3\n')
        self.write('b.txt', '10\n20\n')
        self.write('checksums.txt', '# name n sum\na 3 6.0\nb 2 31.0\n')
        reg = DatasetRegistry(self.dir)
        self.assertEqual(reg.names, ['a', 'b'])
        self.assertTrue(reg.verify('a'))
        self.assertFalse(reg.verify('b'))
        self.assertEqual(reg.provenance('a'), ['made up'])
        self.assertIs(reg.load('a'), reg.load('a'))

    def test_registry_bad_checksum_file(self):
        self.write('a.txt', '1\n')
        self.write('checksums.txt', 'a 1\n')
        with self.assertRaises(DataFormatError) as cm:
            DatasetRegistry(self.dir).verify('a')
        self.assertIn(':1:', str(cm.exception))

    def test_no_checksum(self):
        self.write('a.txt', '1\n')
        self.assertFalse(DatasetRegistry(self.dir).verify('a'))


class TestBundled(unittest.TestCase):

    def test_names(self):
        self.assertEqual(registry.names, ['dakar1', 'dakar2', 'diour1', 'diour2'])
        for name in registry.names:
            self.assertEqual(registry.load(name).n, 50)
            self.assertTrue(registry.verify(name), name)
            self.assertTrue(registry.provenance(name))
            self.assertTrue(is_bundled(name))

    def test_known_values(self):
        self.assertIn(7591873.8, list(registry.load('dakar1')))
        # repaired cell
        self.assertIn(2441979.0, list(registry.load('dakar2')))

    def test_unknown(self):
        self.assertRaises(DomainError, registry.path, 'thies1')
        self.assertRaises(DomainError, load_sample, 'thies1')
        self.assertNotIn('thies1', registry)


class TestExpectations(unittest.TestCase):

    def test_keys(self):
        for key in PUBLISHED_EXPECTATIONS:
            for name in key[1:]:
                self.assertIn(name, registry)

    def test_dakar1_gaussian_mean(self):
        rows = one_sample_intervals(registry.load('dakar1'), 0.05, 0.1)
        off = check_expectations(('one', 'dakar1'), rows)
        self.assertNotIn('mean/gaussian', off)
        self.assertNotIn('variance/gaussian', off)

    def test_dakar1_general_mean_reported(self):
        # the lower bound comes out near 198102, about 1% under the published 200000
        rows = one_sample_intervals(registry.load('dakar1'), 0.05, 0.1)
        with self.assertLogs('fepstat.datasets', 'WARNING') as logs:
            off = check_expectations(('one', 'dakar1'), rows)
        self.assertIn('mean/general', off)
        self.assertTrue(any('mean/general' in line for line in logs.output))
        ci = dict(rows)['mean/general']
        self.assertAlmostEqual(ci.lower, 198102.0, delta=0.001 * 198102)

    def test_flags_discrepancy(self):
        class Fake(object):
            lower, upper = 0.0, 1.0
        off = check_expectations(['one', 'dakar2'], [('mean/gaussian', Fake()),
                                                     ('mean/general', ValueError('x')),
                                                     ('variance/general', Fake())])
        self.assertEqual(off, ['mean/gaussian'])
        self.assertEqual(check_expectations(('one', 'diour1'), [('mean/gaussian', Fake())]), [])


if __name__ == '__main__':
    unittest.main()
