"""
Shared hypothesis strategies and fixtures for the test modules.
"""

import os
import sys

import hypothesis.strategies as strat

# Add the src directory to the path so we can import the modules
sys.path.insert(0, os.path.join(os.path.dirname(os.path.abspath(__file__)), '..', 'src'))

from dagger_trace.matrix import Matrix
from dagger_trace.rigs import (
    BOOLEANS, DUAL, FREE_ISOMETRY, GAUSSIAN, GF2_RIG, INTEGERS, RATIONALS, WORDS_XY,
)

# Opts into the suites at full case counts; not a Config setting.
FULL_SUITES_VAR = 'DAGGER_TRACE_FULL_SUITES'

CONFIG_VARS = [
    'DAGGER_TRACE_SEED', 'DAGGER_TRACE_CASES', 'DAGGER_TRACE_MAX_DIM', 'DAGGER_TRACE_MAX_TRACED',
    'DAGGER_TRACE_COEFF_BOUND', 'DAGGER_TRACE_SEARCH_LIMIT', 'DAGGER_TRACE_WORD_DEGREE',
    'DAGGER_TRACE_EXHAUSTIVE_CELLS', 'DAGGER_TRACE_RIG', 'LOG_LEVEL',
]


def clear_config_env():
    for key in CONFIG_VARS:
        os.environ.pop(key, None)


fractions = strat.fractions(min_value=-8, max_value=8, max_denominator=6)
small_ints = strat.integers(min_value=-8, max_value=8)
words = strat.lists(
    strat.tuples(strat.tuples(strat.integers(0, 3), strat.integers(0, 3)), strat.integers(1, 3)),
    max_size=3,
)

_PAYLOADS = {
    RATIONALS.name: fractions,
    GAUSSIAN.name: strat.tuples(fractions, fractions),
    INTEGERS.name: small_ints,
    GF2_RIG.name: strat.integers(0, 1),
    DUAL.name: strat.tuples(small_ints, small_ints),
    BOOLEANS.name: strat.booleans(),
    WORDS_XY.name: words,
    FREE_ISOMETRY.name: words,
}

ALL_RIGS = [RATIONALS, GAUSSIAN, INTEGERS, GF2_RIG, DUAL, BOOLEANS, WORDS_XY, FREE_ISOMETRY]
DAGGER_RIGS = [rig for rig in ALL_RIGS if rig.descriptor.has_dagger]


def elements(rig):
    """Elements of ``rig`` built from small canonical payloads."""
    return _PAYLOADS[rig.name].map(rig.element)


def matrices(rig, rows, cols):
    return strat.lists(strat.lists(elements(rig), min_size=cols, max_size=cols),
                       min_size=rows, max_size=rows).map(lambda data: Matrix(rig, rows, cols, data))


def shapes(max_dim=3):
    return strat.tuples(strat.integers(1, max_dim), strat.integers(1, max_dim))


@strat.composite
def any_matrix(draw, rig, max_dim=3):
    rows, cols = draw(shapes(max_dim))
    return draw(matrices(rig, rows, cols))


@strat.composite
def composable(draw, rig, count=2, max_dim=3):
    """``count`` matrices with each codomain matching the next domain."""
    dims = draw(strat.lists(strat.integers(1, max_dim), min_size=count + 1, max_size=count + 1))
    return [draw(matrices(rig, dims[k + 1], dims[k])) for k in range(count)]


def q(text):
    """Rational matrix from ``"1, 1/2; 0, 1"``."""
    return Matrix.from_text(RATIONALS, text)
