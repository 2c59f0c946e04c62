"""
Common utilities for the dagger-trace package.
"""

from .config import Config, default_config
from .errors import (
    DaggerTraceError,
    DimensionError,
    ElementParseError,
    MissingStructureError,
    PreconditionError,
    RigMismatchError,
    SessionError,
)
from .verdict import Exists, NotExists, Unknown, Verdict

__all__ = [
    "Config", "default_config",
    "DaggerTraceError", "DimensionError", "ElementParseError", "MissingStructureError",
    "PreconditionError", "RigMismatchError", "SessionError",
    "Exists", "NotExists", "Unknown", "Verdict",
]
