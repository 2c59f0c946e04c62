#!/usr/bin/env python3
"""
Unit tests for the dagger-trace command line

Reports are written with -o into a temporary directory and read back.
"""

import json
import os
import tempfile
import unittest
from unittest.mock import patch

from tests.helpers import clear_config_env

from dagger_trace.cli import main
from dagger_trace.session import EXIT_FAILED, EXIT_OK, EXIT_UNKNOWN, EXIT_USAGE, SESSION_SCHEMA


class TestCommandLine(unittest.TestCase):
    """Commands, reports and exit codes."""

    def setUp(self):
        clear_config_env()
        # A .env in the working directory must not leak into the tests
        self.dotenv = patch('dagger_trace.cli.load_dotenv')
        self.load_dotenv = self.dotenv.start()
        self.tmp = tempfile.TemporaryDirectory()
        self.out = os.path.join(self.tmp.name, 'report.json')

    def tearDown(self):
        self.dotenv.stop()
        self.tmp.cleanup()
        clear_config_env()

    def _report(self, path=None):
        with open(path or self.out, 'r', encoding='utf-8') as f:
            return json.load(f)

    def _session(self, data, name='session.json'):
        path = os.path.join(self.tmp.name, name)
        with open(path, 'w', encoding='utf-8') as f:
            if isinstance(data, str):
                f.write(data)
            else:
                json.dump(data, f)
        return path

    def test_rigs(self):
        """All eight rigs are listed with their structure flags."""
        self.assertEqual(main(['rigs', '-o', self.out]), EXIT_OK)
        rigs = {r['name']: r for r in self._report()['rigs']}
        self.assertEqual(len(rigs), 8)
        self.assertFalse(rigs['WordRigXY']['has_dagger'])
        self.load_dotenv.assert_called_once_with()

    def test_pinv_literal(self):
        """pinv of an invertible rational matrix is its inverse."""
        self.assertEqual(main(['pinv', '--matrix', '1, 1; 0, 1', '--expect', 'exists', '-o', self.out]), EXIT_OK)
        result = self._report()['results'][0]
        self.assertEqual(result['value']['entries'], [['1', '-1'], ['0', '1']])
        self.assertEqual(result['method'], 'full-rank-factorization')

    def test_pinv_failed_expectation(self):
        """[1, 1] over GF2 has no pseudoinverse."""
        code = main(['pinv', '--rig', 'GF2', '--matrix', '1, 1', '--expect', 'exists', '-o', self.out])
        self.assertEqual(code, EXIT_FAILED)
        self.assertEqual(self._report()['results'][0]['verdict'], 'not_exists')

    def test_pinv_unknown(self):
        """An undecided word search asserted to exist exits with 3."""
        os.environ['DAGGER_TRACE_SEARCH_LIMIT'] = '50'
        os.environ['DAGGER_TRACE_WORD_DEGREE'] = '1'
        code = main(['pinv', '--rig', 'FreeIsometryRig', '--matrix', '2', '--expect', 'exists', '-o', self.out])
        self.assertEqual(code, EXIT_UNKNOWN)

    def test_trace_literal(self):
        """diag(1, -1) over the integers has kernel-image trace 1 and no pseudotrace."""
        code = main(['trace', '--rig', 'Integers', '--matrix', '1, 0; 0, -1', '--traced', '1',
                     '--expect', 'exists', '-o', self.out])
        self.assertEqual(code, EXIT_OK)
        result = self._report()['results'][0]
        self.assertEqual(result['kernel_image']['value']['entries'], [['1']])
        self.assertEqual(result['pseudotrace']['verdict'], 'not_exists')

    def test_trace_with_partitions(self):
        """--dom and --cod give the summands explicitly."""
        code = main(['trace', '--matrix', '0, 1; 1, 1', '--dom', '1', '1', '--cod', '1', '1',
                     '--expect', 'not_exists', '-o', self.out])
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(self._report()['results'][0]['pseudotrace']['value']['entries'], [['0']])

    def test_usage_errors(self):
        """Missing partitions, both or neither input and bad rigs exit with 2."""
        self.assertEqual(main(['trace', '--matrix', '1', '-o', self.out]), EXIT_USAGE)
        self.assertEqual(main(['pinv', '-o', self.out]), EXIT_USAGE)
        self.assertEqual(main(['pinv', '--matrix', '1', '--rig', 'Reals', '-o', self.out]), EXIT_USAGE)
        self.assertEqual(main(['pinv', '--matrix', '1, 2; 3', '-o', self.out]), EXIT_USAGE)
        with self.assertRaises(SystemExit) as ctx:
            main(['check', '--suite', 'associativity'])
        self.assertEqual(ctx.exception.code, 2)

    def test_eval(self):
        """A session file evaluates to a report with exit code 0."""
        path = self._session({
            'schema': SESSION_SCHEMA,
            'rig': 'Integers',
            'bindings': {'f': [['1', '0'], ['0', '-1']]},
            'program': [{'op': 'trace', 'args': ['f'], 'traced': 1, 'expect': [['1']]}],
        })
        self.assertEqual(main(['eval', path, '-o', self.out]), EXIT_OK)
        self.assertTrue(self._report()['passed'])

    def test_eval_errors(self):
        """Unparseable or missing sessions exit with 2."""
        broken = self._session('{"rig": "Rationals",\n  "bindings": }', 'broken.json')
        self.assertEqual(main(['eval', broken, '-o', self.out]), EXIT_USAGE)
        self.assertFalse(os.path.exists(self.out))
        missing = os.path.join(self.tmp.name, 'missing.json')
        self.assertEqual(main(['eval', missing]), EXIT_USAGE)

    def test_pinv_over_session_bindings(self):
        """Without --matrix every binding of the session is pseudoinverted."""
        path = self._session({'rig': 'Rationals', 'bindings': {'a': '2', 'b': '1; 1'}})
        self.assertEqual(main(['pinv', path, '-o', self.out]), EXIT_OK)
        values = [r['value']['entries'] for r in self._report()['results']]
        self.assertEqual(values, [[['1/2']], [['1/2', '1/2']]])

    def test_check_is_deterministic(self):
        """The same seed gives byte-identical reports."""
        second = os.path.join(self.tmp.name, 'second.json')
        args = ['check', '--suite', 'contraction-closure', '--seed', '9', '--cases', '4']
        self.assertEqual(main(args + ['-o', self.out]), EXIT_OK)
        self.assertEqual(main(args + ['-o', second]), EXIT_OK)
        with open(self.out, 'rb') as a, open(second, 'rb') as b:
            self.assertEqual(a.read(), b.read())
        report = self._report()
        self.assertEqual(report['command'], 'check')
        self.assertEqual(report['config']['seed'], 9)
        self.assertEqual(report['report']['cases'], 4)

    def test_check_over_rig_without_samplers(self):
        """WordRigXY has no samplers."""
        self.assertEqual(main(['check', '--suite', 'laws', '--rig', 'WordRigXY', '--cases', '1']), EXIT_USAGE)

    def test_corpus_case(self):
        """A single corpus case can be selected."""
        self.assertEqual(main(['corpus', '--case', 'C17', '-o', self.out]), EXIT_OK)
        report = self._report()
        self.assertEqual(report['passed'], 1)
        self.assertEqual(report['cases'][0]['id'], 'C17')


if __name__ == '__main__':
    unittest.main()
