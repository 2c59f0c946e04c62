"""
Registry of the shipped dagger rigs and module-level element operations.
"""

from typing import Dict, List, Union

from ..common.verdict import Verdict
from .base import Rig, RigDescriptor, RigElement
from .booleans import Booleans
from .fields import GF2, GaussianRationals, Rationals
from .integral import DualNumbersZ, Integers
from .words import FreeIsometryRig, WordRigXY, check_confluence, reduction_normal_forms, rewrite_word

RATIONALS = Rationals()
GAUSSIAN = GaussianRationals()
INTEGERS = Integers()
GF2_RIG = GF2()
DUAL = DualNumbersZ()
BOOLEANS = Booleans()
WORDS_XY = WordRigXY()
FREE_ISOMETRY = FreeIsometryRig()

RIGS: Dict[str, Rig] = {
    rig.name: rig
    for rig in (RATIONALS, GAUSSIAN, INTEGERS, GF2_RIG, DUAL, BOOLEANS, WORDS_XY, FREE_ISOMETRY)
}


def get_rig(name: Union[str, Rig]) -> Rig:
    """Look up a shipped rig by name (case-insensitive); rigs pass through."""
    if isinstance(name, Rig):
        return name
    for key, rig in RIGS.items():
        if key.lower() == str(name).lower():
            return rig
    raise ValueError(f"Unknown rig '{name}'. Known rigs: {', '.join(RIGS)}")


def descriptors() -> List[RigDescriptor]:
    return [rig.descriptor for rig in RIGS.values()]


def add(a: RigElement, b: RigElement) -> RigElement:
    return a.rig.add(a, b)


def mul(a: RigElement, b: RigElement) -> RigElement:
    return a.rig.mul(a, b)


def dagger(a: RigElement) -> RigElement:
    return a.rig.dagger(a)


def negate(a: RigElement) -> Verdict:
    return a.rig.negate(a)


def parse_element(text: str, rig: Union[str, Rig]) -> RigElement:
    return get_rig(rig).parse(text)


def format_element(a: RigElement) -> str:
    return a.rig.format(a)


__all__ = [
    "Rig", "RigDescriptor", "RigElement",
    "Rationals", "GaussianRationals", "Integers", "GF2", "DualNumbersZ", "Booleans",
    "WordRigXY", "FreeIsometryRig",
    "RATIONALS", "GAUSSIAN", "INTEGERS", "GF2_RIG", "DUAL", "BOOLEANS", "WORDS_XY", "FREE_ISOMETRY",
    "RIGS", "get_rig", "descriptors",
    "add", "mul", "dagger", "negate", "parse_element", "format_element",
    "rewrite_word", "reduction_normal_forms", "check_confluence",
]
