"""
dagger-trace

Exact pseudoinverses, kernel-image traces and pseudotraces for matrices
over dagger rigs, with seeded law suites and a counterexample corpus.
"""

__version__ = "1.0.0"

from .common import Config, Exists, NotExists, Unknown, Verdict
from .completion import SplitArrow, SplitObject, split
from .matrix import BlockPartition, Matrix, compose, dagger, identity, oplus
from .pseudoinverse import pinv, verify_penrose
from .rigs import RIGS, get_rig
from .trace import TraceProblem, kernel_image_trace, pseudotrace

__all__ = [
    "Config", "Exists", "NotExists", "Unknown", "Verdict",
    "Matrix", "BlockPartition", "compose", "dagger", "identity", "oplus",
    "RIGS", "get_rig",
    "pinv", "verify_penrose",
    "TraceProblem", "kernel_image_trace", "pseudotrace",
    "SplitObject", "SplitArrow", "split",
]
