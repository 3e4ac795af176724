#!/usr/bin/env python3

import json
import os
import shutil
import tempfile
import unittest

from pirrssi import model
from pirrssi import service
from pirrssi.cli import main

from .testing_infrastructure import capture_stdout, capture_stderr
from .testing_infrastructure import change_home, environment
from .testing_infrastructure import loopback_server


class TestCli(unittest.TestCase):

    def setUp(self):
        self.tmpdir = tempfile.mkdtemp(prefix='pirrssi-test-')

    def tearDown(self):
        shutil.rmtree(self.tmpdir)

    def run_main(self, *argv):
        with capture_stdout() as stdout, capture_stderr() as stderr:
            with environment('PIR_RSSI_BUDGET', None):
                returncode = main(list(argv))
        return returncode, stdout.getvalue(), stderr.getvalue()

    def test_gen_db(self):
        path = os.path.join(self.tmpdir, 'db.bin')
        returncode, stdout, _ = self.run_main(
            'gen-db', '--K', '4', '--n', '2', '--q', '5', '--seed', '1',
            '-o', path)
        self.assertEqual(returncode, 0)
        self.assertIn('49 bytes', stdout)
        self.assertEqual(os.path.getsize(path), 49)
        self.assertEqual(model.Database.load(path),
                         model.Database.random(4, 2, 5, seed=1))

        returncode, _, stderr = self.run_main(
            'gen-db', '--K', '4', '--q', '6', '-o', path)
        self.assertEqual(returncode, 2)
        self.assertIn('q must be prime', stderr)

        returncode, _, _ = self.run_main(
            'gen-db', '--K', '4', '-o', os.path.join(self.tmpdir, 'no', 'x'))
        self.assertEqual(returncode, 3)

    def test_capacity(self):
        returncode, stdout, _ = self.run_main(
            'capacity', '--K', '3-6', '--M1', '1-2', '--M2', '1')
        self.assertEqual(returncode, 0)
        lines = stdout.splitlines()
        self.assertIn('(6,2,1): 1/3 | 1/3 | 1/2 | GAP | capacity | large '
                      '| mds', lines)
        self.assertIn('(4,1,1): 1/2 | 1/2 | 1/2 | — | capacity | large '
                      '| mds', lines)
        self.assertIn('(3,1,1): 1/1 | 1/1 | 1/1 | — | capacity | small '
                      '| mds', lines)
        # K = 3 admits no M1 = 2
        self.assertFalse(any(line.startswith('(3,2,') for line in lines))

        returncode, stdout, _ = self.run_main(
            'capacity', '--K', '8', '--M1', '1', '--M2', '3', '--servers',
            '2', '--format', 'json')
        self.assertEqual(returncode, 0)
        rows = json.loads(stdout)
        self.assertEqual(len(rows), 1)
        self.assertEqual(rows[0]['conjectured'], '1/2')
        self.assertEqual(rows[0]['scheme'], 'partition')
        self.assertEqual(rows[0]['multiserver'], '2/3')

        returncode, _, stderr = self.run_main('capacity', '--K', '6-3')
        self.assertEqual(returncode, 2)
        self.assertIn('decreasing range', stderr)

    def test_run(self):
        returncode, stdout, _ = self.run_main(
            'run', '--K', '6', '--M1', '2', '--M2', '1', '--n', '3')
        self.assertEqual(returncode, 0)
        lines = stdout.splitlines()
        self.assertEqual(lines[0], 'instance: K=6 M1=2 M2=1 q=7 n=3')
        self.assertEqual(lines[2], 'scheme=mds, rate=1/3 (= theory)')
        self.assertTrue(lines[3].startswith('X_'))
        self.assertEqual(lines[-1], 'verified: OK')

        returncode, stdout, _ = self.run_main(
            'run', '--K', '8', '--M1', '1', '--M2', '3', '--seed', '4')
        self.assertEqual(returncode, 0)
        self.assertIn('scheme=partition, rate=1/2 (= theory)', stdout)

        returncode, stdout, _ = self.run_main(
            'run', '--K', '5', '--M1', '1', '--M2', '2', '--W', '5', '--R',
            '2', '--S', '1,3', '--format', 'json')
        self.assertEqual(returncode, 0)
        data = json.loads(stdout)
        self.assertEqual((data['W'], data['R'], data['S']), (5, [2], [1, 3]))
        self.assertEqual(data['scheme'], 'mds')
        self.assertTrue(data['verified'])

    def test_run_errors(self):
        returncode, stdout, stderr = self.run_main(
            'run', '--K', '5', '--M1', '1', '--M2', '1', '--scheme', 'mds',
            '--corrupt-side')
        self.assertEqual(returncode, 1)
        self.assertIn('verified: MISMATCH', stdout)
        self.assertIn('differs', stderr)

        returncode, _, stderr = self.run_main(
            'run', '--K', '3', '--M1', '2', '--M2', '1')
        self.assertEqual(returncode, 2)
        self.assertIn('K must exceed M1 + M2', stderr)

        returncode, _, stderr = self.run_main(
            'run', '--K', '5', '--M1', '1', '--M2', '1', '--W', '1', '--R',
            '2,3', '--S', '4')
        self.assertEqual(returncode, 2)
        self.assertIn('expected M1=1', stderr)

        returncode, _, stderr = self.run_main('run', '--M1', '1')
        self.assertEqual(returncode, 2)
        self.assertIn('--K', stderr)

    def test_audit(self):
        returncode, stdout, _ = self.run_main(
            'audit', '--K', '4', '--M1', '1', '--M2', '1', '--scheme',
            'partition')
        self.assertEqual(returncode, 0)
        self.assertIn('privacy of (W,R): PASS', stdout)
        self.assertIn('closed-form likelihood check: OK', stdout)

        returncode, stdout, _ = self.run_main(
            'audit', '--K', '4', '--M1', '1', '--M2', '1', '--format',
            'json')
        self.assertEqual(returncode, 0)
        data = json.loads(stdout)
        self.assertEqual(data['scheme'], 'mds')
        self.assertEqual(data['verdict'], 'pass')
        self.assertTrue(data['ssi_private'])

    def test_audit_budget(self):
        returncode, _, stderr = self.run_main(
            'audit', '--K', '9', '--M1', '3', '--M2', '3', '--scheme',
            'partition')
        self.assertEqual(returncode, 2)
        self.assertIn('instance too large', stderr)

        argv = ['audit', '--K', '4', '--M1', '1', '--M2', '1', '--scheme',
                'partition']
        with capture_stdout(), capture_stderr() as stderr:
            with environment('PIR_RSSI_BUDGET', '100'):
                self.assertEqual(main(argv), 2)
                self.assertEqual(main(argv + ['--budget', '1000']), 0)
        self.assertIn('budget of 100', stderr.getvalue())

        returncode, _, _ = self.run_main(*(argv + ['--budget', '0']))
        self.assertEqual(returncode, 2)

    def test_probe(self):
        returncode, stdout, _ = self.run_main(
            'probe', '--K', '5', '--M1', '1', '--M2', '1')
        self.assertEqual(returncode, 0)
        self.assertEqual(stdout.strip(),
                         'Lemma1: 20/20 pairs OK; L=2 (=M1+M2); '
                         'bound ⌊K·M2/(M2+1)⌋=2 OK')

        returncode, _, stderr = self.run_main(
            'probe', '--K', '20', '--M1', '1', '--M2', '1')
        self.assertEqual(returncode, 2)
        self.assertIn('too large', stderr)

    def test_fetch(self):
        path = os.path.join(self.tmpdir, 'db.bin')
        db = model.Database.random(6, 2, 7, seed=8)
        db.save(path)
        with loopback_server(db) as server:
            returncode, stdout, _ = self.run_main(
                'fetch', '--endpoint', server.endpoint, '--side-db', path,
                '--M1', '2', '--M2', '1', '--W', '6', '--R', '1-2', '--S',
                '3')
            self.assertEqual(returncode, 0)
            self.assertIn('X_6 = %s' % list(db.message(6).values), stdout)

            returncode, stdout, _ = self.run_main(
                'fetch', '--endpoint', server.endpoint, '--side-db', path,
                '--M1', '1', '--M2', '2', '--stats-only', '--format', 'json')
            self.assertEqual(returncode, 0)
            data = json.loads(stdout)
            self.assertNotIn('message', data)
            self.assertEqual(data['achieved_rate'], '1/2')

            returncode, stdout, _ = self.run_main(
                'fetch', '--endpoint', server.endpoint, '--side-db', path,
                '--M1', '1', '--M2', '1', '--stats-only')
            self.assertEqual(returncode, 0)
            self.assertNotIn('X_', stdout)
            self.assertIn('bytes_down=', stdout)

        # the server is gone
        returncode, _, stderr = self.run_main(
            'fetch', '--endpoint', server.endpoint, '--side-db', path,
            '--M1', '1', '--M2', '1')
        self.assertEqual(returncode, 3)
        self.assertIn('fatal error', stderr)

        returncode, _, _ = self.run_main(
            'fetch', '--side-db', os.path.join(self.tmpdir, 'missing'),
            '--M1', '1', '--M2', '1')
        self.assertEqual(returncode, 3)

    def test_serve_missing_db(self):
        returncode, _, stderr = self.run_main(
            'serve', '--db', os.path.join(self.tmpdir, 'missing'),
            '--endpoint', service.DEFAULT_ENDPOINT)
        self.assertEqual(returncode, 3)
        self.assertIn('does not exist', stderr)

    def test_config_file(self):
        with change_home() as home:
            config_dir = os.path.join(home, '.config', 'pir-rssi')
            os.makedirs(config_dir)
            with open(os.path.join(config_dir, 'pir-rssi.conf'), 'w') as f:
                f.write("[capacity]\n"
                        "k_range = 5\n"
                        "m1_range = 1\n"
                        "m2_range = 1-2\n"
                        "\n"
                        "[audit]\n"
                        "budget = 10\n")
            returncode, stdout, _ = self.run_main('capacity')
            self.assertEqual(returncode, 0)
            self.assertEqual(len(stdout.splitlines()), 3)
            self.assertIn('(5,1,2): ', stdout)

            argv = ['audit', '--K', '4', '--M1', '1', '--M2', '1',
                    '--scheme', 'partition']
            returncode, _, stderr = self.run_main(*argv)
            self.assertEqual(returncode, 2)
            self.assertIn('budget of 10', stderr)
            # the environment beats the config file
            with capture_stdout(), capture_stderr():
                with environment('PIR_RSSI_BUDGET', '100000'):
                    self.assertEqual(main(argv), 0)

    def test_malformed_config_file(self):
        with change_home() as home:
            config_dir = os.path.join(home, '.config', 'pir-rssi')
            os.makedirs(config_dir)
            with open(os.path.join(config_dir, 'pir-rssi.conf'), 'w') as f:
                f.write("k_range = 5\n")
            returncode, stdout, stderr = self.run_main('capacity')
            self.assertEqual(returncode, 2)
            self.assertEqual(stdout, '')
            self.assertIn('malformed config file', stderr)


if __name__ == '__main__':
    unittest.main()
