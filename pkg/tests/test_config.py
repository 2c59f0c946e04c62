#!/usr/bin/env python3
"""
Unit tests for configuration loading
"""

import os
import unittest

from tests.helpers import clear_config_env

from dagger_trace.common import config as config_module
from dagger_trace.common.config import Config, default_config, set_default_config


class TestConfig(unittest.TestCase):
    """Environment variables, overrides and validation."""

    def setUp(self):
        clear_config_env()
        self.saved_default = config_module._default

    def tearDown(self):
        clear_config_env()
        config_module._default = self.saved_default

    def test_defaults(self):
        """Without environment variables the documented defaults apply."""
        config = Config()
        self.assertEqual(config.seed, 42)
        self.assertEqual(config.cases, 200)
        self.assertEqual(config.max_dim, 6)
        self.assertEqual(config.max_traced, 3)
        self.assertEqual(config.search_limit, 20000)
        self.assertEqual(config.exhaustive_cells, 9)
        self.assertEqual(config.rig, 'Rationals')
        self.assertEqual(config.log_level, 'INFO')

    def test_environment_values(self):
        """Environment variables are read and stripped."""
        os.environ['DAGGER_TRACE_SEED'] = ' 7 '
        os.environ['DAGGER_TRACE_RIG'] = 'Integers'
        os.environ['LOG_LEVEL'] = 'debug'
        config = Config()
        self.assertEqual(config.seed, 7)
        self.assertEqual(config.rig, 'Integers')
        self.assertEqual(config.log_level, 'DEBUG')

    def test_invalid_integer_falls_back(self):
        """A non-numeric value logs a warning and keeps the default."""
        os.environ['DAGGER_TRACE_CASES'] = 'many'
        with self.assertLogs('dagger_trace.common.config', level='WARNING') as logs:
            config = Config()
        self.assertEqual(config.cases, 200)
        self.assertIn('DAGGER_TRACE_CASES', logs.output[0])

    def test_invalid_values_raise(self):
        """Out-of-range values name the offending variables."""
        os.environ['DAGGER_TRACE_RIG'] = 'Reals'
        os.environ['DAGGER_TRACE_MAX_DIM'] = '0'
        with self.assertRaises(ValueError) as ctx:
            Config()
        self.assertIn('DAGGER_TRACE_RIG', str(ctx.exception))
        self.assertIn('DAGGER_TRACE_MAX_DIM', str(ctx.exception))

    def test_overrides(self):
        """Keyword overrides beat the environment; None leaves a value alone."""
        os.environ['DAGGER_TRACE_SEED'] = '7'
        config = Config(seed=3, cases=None, rig='GF2')
        self.assertEqual((config.seed, config.cases, config.rig), (3, 200, 'GF2'))
        with self.assertRaises(ValueError):
            Config(colour='blue')
        with self.assertRaises(ValueError):
            Config(max_traced=10)

    def test_as_dict(self):
        data = Config(seed=5).as_dict()
        self.assertEqual(data['seed'], 5)
        self.assertNotIn('log_level', data)

    def test_default_config(self):
        """The process default is built lazily and can be replaced."""
        config_module._default = None
        first = default_config()
        self.assertIs(default_config(), first)
        replacement = Config(seed=1)
        set_default_config(replacement)
        self.assertIs(default_config(), replacement)


if __name__ == '__main__':
    unittest.main()
