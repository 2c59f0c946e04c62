#!/usr/bin/env python3
"""
Local smoke test for dagger-trace

Loads configuration from a .env file, shows what will be used, then runs
the counterexample corpus and a short law suite over the configured rig.
"""

import logging
import os
import sys

from dotenv import load_dotenv

# Add the src directory to the path so we can import the modules
sys.path.insert(0, os.path.join(os.path.dirname(os.path.abspath(__file__)), '..', 'src'))

from dagger_trace.common.config import Config, set_default_config
from dagger_trace.corpus import run_all
from dagger_trace.generators import SAMPLED_RIGS, GenConfig
from dagger_trace.laws import run_suite

SETTINGS = [
    'DAGGER_TRACE_RIG',
    'DAGGER_TRACE_SEED',
    'DAGGER_TRACE_CASES',
    'DAGGER_TRACE_MAX_DIM',
    'DAGGER_TRACE_MAX_TRACED',
    'DAGGER_TRACE_COEFF_BOUND',
    'DAGGER_TRACE_SEARCH_LIMIT',
    'DAGGER_TRACE_WORD_DEGREE',
    'DAGGER_TRACE_EXHAUSTIVE_CELLS',
    'LOG_LEVEL',
]


def load_env_file():
    """Load environment variables from .env file if it exists."""
    env_file = '.env'
    if os.path.exists(env_file):
        print(f"Loading configuration from {env_file}")
        load_dotenv(env_file)
        return True
    else:
        print(f"No {env_file} file found. Using system environment variables.")
        return False


def show_configuration():
    """Print the settings and build the Config they describe."""
    print("=== Configuration ===")
    for var in SETTINGS:
        value = os.getenv(var)
        if value:
            print(f"✓ {var}: {value}")
        else:
            print(f"- {var}: Using default value")

    try:
        config = Config()
    except ValueError as e:
        print(f"\n❌ {e}")
        return None

    print("\n✅ Configuration looks good!")
    return config


def main():
    """Main smoke test function."""
    print("dagger-trace - Local Run")
    print("=" * 40)

    load_env_file()
    logging.basicConfig(level=os.getenv('LOG_LEVEL', 'INFO').strip().upper() or 'INFO',
                        format='%(asctime)s - %(levelname)s - %(message)s')

    config = show_configuration()
    if config is None:
        print("\nExiting due to configuration issues.")
        return 2
    set_default_config(config)

    print("\n🚀 Running the counterexample corpus...")
    summary = run_all(config)
    print(f"Corpus: {summary.passed} passed, {summary.failed} failed")

    rig = config.rig if config.rig in SAMPLED_RIGS else 'Rationals'
    cases = min(config.cases, 20)
    print(f"\n🚀 Running 'laws' over {rig} with {cases} cases...")
    report = run_suite('laws', GenConfig.from_config(config, rig), cases)
    print(f"Laws: {'passed' if report.passed else f'{len(report.failures)} failures'}")

    if summary.ok and report.passed:
        print("\n✅ Local run completed successfully!")
        return 0
    print("\n❌ Local run found failures. Check the logs above for details.")
    return 1


if __name__ == "__main__":
    sys.exit(main())
