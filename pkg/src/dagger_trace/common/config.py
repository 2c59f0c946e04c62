"""
Configuration management for dagger-trace.
"""

import os
import logging

logger = logging.getLogger(__name__)

KNOWN_RIGS = (
    'Rationals', 'GaussianRationals', 'Integers', 'GF2',
    'DualNumbersZ', 'Booleans', 'WordRigXY', 'FreeIsometryRig',
)


def _int_from_env(name: str, default: int) -> int:
    """Read an integer environment variable, falling back to ``default``."""
    raw = os.getenv(name, '').strip()
    if not raw:
        return default
    try:
        return int(raw)
    except (ValueError, TypeError):
        logger.warning(f"Invalid {name} '{raw}', using default {default}")
        return default


class Config:
    """Handles configuration loading and validation for samplers, searches and the CLI."""

    def __init__(self, **overrides):
        """Initialize configuration from environment variables, then apply explicit overrides."""
        self.load_config()
        for key, value in overrides.items():
            if value is None:
                continue
            if not hasattr(self, key):
                raise ValueError(f"Unknown configuration key: {key}")
            setattr(self, key, value)
        self.validate_config()
        self.log_config()

    def load_config(self):
        """Load configuration from environment variables with defaults."""
        # Sampling
        self.seed = _int_from_env('DAGGER_TRACE_SEED', 42)
        self.cases = _int_from_env('DAGGER_TRACE_CASES', 200)
        self.max_dim = _int_from_env('DAGGER_TRACE_MAX_DIM', 6)
        self.max_traced = _int_from_env('DAGGER_TRACE_MAX_TRACED', 3)
        self.coeff_bound = _int_from_env('DAGGER_TRACE_COEFF_BOUND', 10)

        # Bounded searches
        self.search_limit = _int_from_env('DAGGER_TRACE_SEARCH_LIMIT', 20000)
        self.word_degree = _int_from_env('DAGGER_TRACE_WORD_DEGREE', 4)
        self.exhaustive_cells = _int_from_env('DAGGER_TRACE_EXHAUSTIVE_CELLS', 9)

        # Default rig for the CLI
        self.rig = os.getenv('DAGGER_TRACE_RIG', '').strip()
        if not self.rig:
            self.rig = 'Rationals'

        self.log_level = os.getenv('LOG_LEVEL', '').strip().upper()
        if not self.log_level:
            self.log_level = 'INFO'

    def validate_config(self):
        """Validate configuration values."""
        problems = []

        if self.cases < 1:
            problems.append('DAGGER_TRACE_CASES')
        if self.max_dim < 1:
            problems.append('DAGGER_TRACE_MAX_DIM')
        if self.max_traced < 0 or self.max_traced > self.max_dim:
            problems.append('DAGGER_TRACE_MAX_TRACED')
        if self.coeff_bound < 1:
            problems.append('DAGGER_TRACE_COEFF_BOUND')
        if self.search_limit < 1:
            problems.append('DAGGER_TRACE_SEARCH_LIMIT')
        if self.word_degree < 0:
            problems.append('DAGGER_TRACE_WORD_DEGREE')
        if self.exhaustive_cells < 0:
            problems.append('DAGGER_TRACE_EXHAUSTIVE_CELLS')
        if self.rig not in KNOWN_RIGS:
            problems.append('DAGGER_TRACE_RIG')

        if problems:
            raise ValueError(f"Configuration invalid. Check environment variables: {', '.join(problems)}")

    def log_config(self):
        """Log the resolved configuration."""
        logger.debug("Environment variables:")
        logger.debug(f"  DAGGER_TRACE_SEED: {self.seed}")
        logger.debug(f"  DAGGER_TRACE_CASES: {self.cases}")
        logger.debug(f"  DAGGER_TRACE_MAX_DIM: {self.max_dim}")
        logger.debug(f"  DAGGER_TRACE_MAX_TRACED: {self.max_traced}")
        logger.debug(f"  DAGGER_TRACE_COEFF_BOUND: {self.coeff_bound}")
        logger.debug(f"  DAGGER_TRACE_SEARCH_LIMIT: {self.search_limit}")
        logger.debug(f"  DAGGER_TRACE_WORD_DEGREE: {self.word_degree}")
        logger.debug(f"  DAGGER_TRACE_EXHAUSTIVE_CELLS: {self.exhaustive_cells}")

        logger.info(f"Configuration loaded - Rig: {self.rig}, Seed: {self.seed}, Cases: {self.cases}, "
                    f"Max dim: {self.max_dim}, Search limit: {self.search_limit}")

    def as_dict(self) -> dict:
        """Configuration values as a plain dict (used in reports)."""
        return {
            'seed': self.seed,
            'cases': self.cases,
            'max_dim': self.max_dim,
            'max_traced': self.max_traced,
            'coeff_bound': self.coeff_bound,
            'search_limit': self.search_limit,
            'word_degree': self.word_degree,
            'exhaustive_cells': self.exhaustive_cells,
            'rig': self.rig,
        }


_default = None


def default_config() -> Config:
    """Process-wide configuration built lazily from the environment."""
    global _default
    if _default is None:
        _default = Config()
    return _default


def set_default_config(config: Config) -> None:
    """Replace the process-wide configuration returned by default_config()."""
    global _default
    _default = config
