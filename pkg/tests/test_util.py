#!/usr/bin/env python3

import argparse
import configparser
import io
import os
import tempfile
import unittest

from pirrssi.util import *

from .testing_infrastructure import change_home, environment


class TestUtil(unittest.TestCase):

    def test_read_param(self):
        self.assertEqual(read_param({'seed': 3}, 'seed', 0), 3)
        self.assertEqual(read_param({'seed': 3}, 'samples', 2), 2)
        self.assertEqual(read_param(None, 'samples', 2), 2)
        with self.assertRaises(ValueError):
            read_param({}, 1, 2)

    def test_parse_range(self):
        self.assertEqual(parse_range('4'), [4])
        self.assertEqual(parse_range(' 3 - 5 '), [3, 4, 5])
        self.assertEqual(parse_range('5,1-2,2'), [1, 2, 5])
        self.assertEqual(parse_range(7), [7])
        for bad in ('', 'a', '1-', '3-1', '1,,2', '-2'):
            with self.assertRaises(ValueError):
                parse_range(bad)

    def test_humansize(self):
        self.assertEqual(humansize(1), '1B')
        self.assertEqual(humansize(1000), '1000B')
        self.assertEqual(humansize(10000), '9.77KiB')
        self.assertEqual(humansize(100000), '97.7KiB')
        self.assertEqual(humansize(10000000), '9.54MiB')
        self.assertEqual(humansize(1000000000), '954MiB')

    def test_humantime(self):
        with self.assertRaises(ValueError):
            humantime(-1)
        self.assertEqual(humantime(0), '0:00:00')
        self.assertEqual(humantime(1.4), '0:00:01')
        self.assertEqual(humantime(10000), '2:46:40')

    def test_progress_bar(self):
        stream = io.StringIO()
        pbar = ProgressBar(4, label='audit', interval=0, stream=stream)
        for _ in range(3):
            pbar.update()
        self.assertEqual(pbar.done, 3)
        pbar.update(10)
        self.assertEqual(pbar.done, 4)
        pbar.finish()
        self.assertTrue(stream.getvalue().endswith('\n'))
        self.assertIn('4/4', stream.getvalue())
        self.assertIn('100%', stream.getvalue())
        self.assertGreaterEqual(pbar.elapsed, 0)
        with self.assertRaises(RuntimeError):
            pbar.update()
        with self.assertRaises(RuntimeError):
            pbar.finish()

    def test_progress_enabled(self):
        self.assertTrue(progress_enabled('on'))
        self.assertFalse(progress_enabled('off'))
        self.assertFalse(progress_enabled('auto', io.StringIO()))
        with self.assertRaises(ValueError):
            progress_enabled('sometimes')

    def test_config_files(self):
        with change_home() as home:
            self.assertEqual(config_files('pir-rssi'),
                             [os.path.join(home, '.config', 'pir-rssi',
                                           'pir-rssi.conf')])
            with environment('XDG_CONFIG_HOME', '/etc/xdg'):
                self.assertEqual(config_files('pir-rssi'),
                                 ['/etc/xdg/pir-rssi/pir-rssi.conf'])

    def test_option_reader(self):
        parser = argparse.ArgumentParser()
        parser.add_argument('--str')
        parser.add_argument('--int', type=int)
        parser.add_argument('--true', action='store_true', default=None)
        parser.add_argument('--envonly_int', type=int)
        parser.add_argument('--confonly_str')
        cli_args = parser.parse_args("--str from-cli --int 0 --true".split())

        config = configparser.ConfigParser()
        config.add_section('sec')
        config.set('sec', 'str', 'from-config-file')
        config.set('sec', 'int', '1')
        config.set('sec', 'true', 'no')
        config.set('sec', 'envonly_int', '1')
        config.set('sec', 'confonly_str', 'from-config-file')
        config.set('sec', 'confonly_true', 'off')
        config.add_section('dummysec')
        fd, conf_file = tempfile.mkstemp(prefix='pirrssi-test-',
                                         suffix='.conf')
        os.close(fd)
        with open(conf_file, 'w') as f:
            config.write(f)

        fd, malformed_conf_file = tempfile.mkstemp(prefix='pirrssi-test-',
                                                   suffix='.conf')
        os.close(fd)
        with open(malformed_conf_file, 'w') as f:
            f.write("no section\n")

        defaults = {
            'str': 'from-defaults',
            'int': 2,
            'envonly_int': 2,
            'defaultonly_int': 2,
        }
        environ = {'int': 'PIRRSSI_TEST_INT',
                   'envonly_int': 'PIRRSSI_TEST_ENVONLY'}

        try:
            with environment('PIRRSSI_TEST_INT', '3'), \
                    environment('PIRRSSI_TEST_ENVONLY', ' 3 '):
                or1 = OptionReader(
                    cli_args=cli_args,
                    config_files=conf_file,
                    section='sec',
                    defaults=defaults,
                    environ=environ,
                )
            self.assertEqual(or1.opt('str'), 'from-cli')
            self.assertEqual(or1.opt('int', opttype=int), 0)
            self.assertTrue(or1.opt('true', opttype=bool))
            self.assertEqual(or1.opt('envonly_int', opttype=int), 3)
            self.assertEqual(or1.env_opt('int', opttype=int), 3)
            self.assertEqual(or1.opt('confonly_str'), 'from-config-file')
            self.assertFalse(or1.opt('confonly_true', opttype=bool))
            self.assertEqual(or1.opt('defaultonly_int', opttype=int), 2)
            self.assertIsNone(or1.opt('non-existent-opt'))
            self.assertEqual(or1.cli_opt('str'), 'from-cli')
            self.assertIsNone(or1.cli_opt('confonly_str'))
            self.assertEqual(or1.cfg_opt('int', opttype=int), 1)
            self.assertIsNone(or1.env_opt('str'))
            self.assertEqual(or1.default_opt('str'), 'from-defaults')
            with self.assertRaises(ValueError):
                or1.opt('confonly_str', opttype=bool)
            with self.assertRaises(ValueError):
                or1.cfg_opt('confonly_str', opttype=tuple)

            with environment('PIRRSSI_TEST_ENVONLY', '   '):
                or2 = OptionReader(
                    config_files=conf_file,
                    section='sec',
                    defaults=defaults,
                    environ=environ,
                )
            # blank environment values are ignored
            self.assertEqual(or2.opt('envonly_int', opttype=int), 1)
            self.assertEqual(or2.opt('str'), 'from-config-file')

            or3 = OptionReader(config_files=conf_file, section='nosec',
                               defaults=defaults)
            self.assertEqual(or3.opt('str'), 'from-defaults')

            with self.assertRaises(ValueError):
                OptionReader(config_files=conf_file, section='DEFAULT')
            with self.assertRaises(configparser.Error):
                OptionReader(config_files=malformed_conf_file, section='sec')
        finally:
            os.remove(conf_file)
            os.remove(malformed_conf_file)


if __name__ == '__main__':
    unittest.main()
