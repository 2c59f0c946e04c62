"""
The dagger-rig abstraction.

A rig supplies the scalars of a matrix category: ``+`` and ``*`` with units
``0`` and ``1``, an involutive dagger that reverses products, and, for some
rigs, negatives. Every element is kept in a canonical form, so element
equality is plain structural equality of payloads.

Multiplication convention: ``mul(a, b)`` is the rig product ``a b``, which
as a composite of one-object arrows reads "b, then a". Matrix composition
in diagram order (``compose(f, g)`` is "f, then g") is therefore the
ordinary matrix product ``G * F``; this is what makes ``x† x = 1`` say that
``x`` is an isometry.
"""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Iterable, Iterator, List

from ..common.errors import MissingStructureError, RigMismatchError
from ..common.verdict import Exists, NotExists, Verdict

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RigDescriptor:
    """Static facts about a rig that callers dispatch on."""

    name: str
    has_negatives: bool
    has_dagger: bool
    is_commutative: bool
    element_grammar: str
    is_field: bool = False
    is_complex_subfield: bool = False
    is_finite: bool = False
    natural_coefficients: bool = False


@dataclass(frozen=True)
class RigElement:
    """An exact scalar of a rig; ``payload`` is always canonical."""

    rig: "Rig"
    payload: Any

    def __add__(self, other: "RigElement") -> "RigElement":
        return self.rig.add(self, other)

    def __mul__(self, other: "RigElement") -> "RigElement":
        return self.rig.mul(self, other)

    def __neg__(self) -> "RigElement":
        return self.rig.neg(self)

    def __sub__(self, other: "RigElement") -> "RigElement":
        return self.rig.sub(self, other)

    @property
    def is_zero(self) -> bool:
        return self == self.rig.zero

    @property
    def is_one(self) -> bool:
        return self == self.rig.one

    def dagger(self) -> "RigElement":
        return self.rig.dagger(self)

    def __str__(self) -> str:
        return self.rig.format(self)

    def __repr__(self) -> str:
        return f"{self.rig.descriptor.name}({self.rig.format(self)!r})"


class Rig(ABC):
    """Base class for the shipped rigs.

    Subclasses implement the payload-level operations (``_normalize``,
    ``_add``, ``_mul``, ``_dagger``, parsing and formatting); this class
    wraps them with rig checks and canonicalisation.
    """

    descriptor: RigDescriptor

    def __init__(self):
        self._zero = self.element(self._zero_payload())
        self._one = self.element(self._one_payload())

    # -- payload hooks -------------------------------------------------

    @abstractmethod
    def _normalize(self, payload: Any) -> Any:
        """Return the canonical form of ``payload``."""

    @abstractmethod
    def _zero_payload(self) -> Any:
        ...

    @abstractmethod
    def _one_payload(self) -> Any:
        ...

    @abstractmethod
    def _add(self, p: Any, q: Any) -> Any:
        ...

    @abstractmethod
    def _mul(self, p: Any, q: Any) -> Any:
        ...

    def _dagger(self, p: Any) -> Any:
        raise MissingStructureError(f"{self.descriptor.name} has no dagger")

    def _neg(self, p: Any) -> Any:
        raise MissingStructureError(f"{self.descriptor.name} has no negatives")

    @abstractmethod
    def parse(self, text: str) -> RigElement:
        """Parse an element literal in this rig's grammar."""

    @abstractmethod
    def format(self, a: RigElement) -> str:
        """Format an element so that ``parse(format(a)) == a``."""

    # -- public operations ---------------------------------------------

    @property
    def name(self) -> str:
        return self.descriptor.name

    @property
    def zero(self) -> RigElement:
        return self._zero

    @property
    def one(self) -> RigElement:
        return self._one

    def element(self, payload: Any) -> RigElement:
        return RigElement(self, self._normalize(payload))

    def check(self, *elements: RigElement) -> None:
        for e in elements:
            if e.rig is not self:
                raise RigMismatchError(
                    f"element of {e.rig.descriptor.name} used where {self.descriptor.name} was expected")

    def from_int(self, n: int) -> RigElement:
        """The image of the integer ``n`` (repeated sums of 1, negated if needed)."""
        if n < 0:
            return self.neg(self.from_int(-n))
        acc = self.zero
        for _ in range(n):
            acc = self.add(acc, self.one)
        return acc

    def add(self, a: RigElement, b: RigElement) -> RigElement:
        self.check(a, b)
        return RigElement(self, self._normalize(self._add(a.payload, b.payload)))

    def mul(self, a: RigElement, b: RigElement) -> RigElement:
        self.check(a, b)
        return RigElement(self, self._normalize(self._mul(a.payload, b.payload)))

    def dagger(self, a: RigElement) -> RigElement:
        self.check(a)
        if not self.descriptor.has_dagger:
            raise MissingStructureError(f"{self.descriptor.name} has no dagger")
        return RigElement(self, self._normalize(self._dagger(a.payload)))

    def negate(self, a: RigElement) -> Verdict:
        """Additive inverse as a Verdict; natural-coefficient rigs only negate zero."""
        self.check(a)
        if self.descriptor.has_negatives:
            return Exists(RigElement(self, self._normalize(self._neg(a.payload))))
        if a == self.zero:
            return Exists(self.zero)
        return NotExists(f"{self.format(a)} has no additive inverse in {self.descriptor.name}")

    def neg(self, a: RigElement) -> RigElement:
        verdict = self.negate(a)
        if not isinstance(verdict, Exists):
            raise MissingStructureError(verdict.certificate)
        return verdict.witness

    def sub(self, a: RigElement, b: RigElement) -> RigElement:
        return self.add(a, self.neg(b))

    def inverse(self, a: RigElement) -> Verdict:
        """Multiplicative inverse as a Verdict; the default only inverts 1."""
        self.check(a)
        if a == self.one:
            return Exists(self.one)
        return NotExists(f"{self.format(a)} is not a unit of {self.descriptor.name}")

    def sign(self, a: RigElement) -> int:
        """Sign of a self-adjoint element of an ordered subfield of C."""
        raise MissingStructureError(f"{self.descriptor.name} is not ordered")

    def elements(self) -> Iterator[RigElement]:
        """All elements of a finite rig."""
        raise MissingStructureError(f"{self.descriptor.name} is infinite")

    def small_elements(self, bound: int) -> List[RigElement]:
        """A finite pool of elements used by bounded witness searches."""
        if self.descriptor.is_finite:
            return list(self.elements())
        pool = [self.zero]
        for n in range(1, bound + 1):
            pool.append(self.from_int(n))
            if self.descriptor.has_negatives:
                pool.append(self.from_int(-n))
        return pool

    def sum(self, items: Iterable[RigElement]) -> RigElement:
        acc = self.zero
        for item in items:
            acc = self.add(acc, item)
        return acc

    def __repr__(self) -> str:
        return f"<rig {self.descriptor.name}>"
