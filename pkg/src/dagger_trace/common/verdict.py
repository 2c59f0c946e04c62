"""
Three-valued outcomes for partial operations.

Pseudoinverses, traces, solvers and positivity checks are only partially
decidable over some rigs, so they report one of:

    Exists(witness)        - the object exists; ``witness`` is it
    NotExists(certificate) - the object provably does not exist
    Unknown(reason)        - a bounded search ran out before deciding
"""

from dataclasses import dataclass, field
from typing import Any, Callable, Generic, Optional, TypeVar, Union

T = TypeVar("T")


@dataclass(frozen=True)
class Exists(Generic[T]):
    witness: T
    note: str = ""

    exists = True
    kind = "exists"

    def map(self, fn: Callable[[T], Any]) -> "Exists":
        return Exists(fn(self.witness), self.note)


@dataclass(frozen=True)
class NotExists:
    certificate: str
    data: Any = field(default=None, compare=False)

    exists = False
    kind = "not_exists"

    def map(self, fn: Callable[[Any], Any]) -> "NotExists":
        return self


@dataclass(frozen=True)
class Unknown:
    reason: str
    candidate: Optional[Any] = field(default=None, compare=False)

    exists = False
    kind = "unknown"

    def map(self, fn: Callable[[Any], Any]) -> "Unknown":
        return self


Verdict = Union[Exists, NotExists, Unknown]


def is_exists(verdict: Verdict) -> bool:
    return isinstance(verdict, Exists)


def is_not_exists(verdict: Verdict) -> bool:
    return isinstance(verdict, NotExists)


def is_unknown(verdict: Verdict) -> bool:
    return isinstance(verdict, Unknown)


def from_bool(value: bool, witness: Any = None, certificate: str = "predicate is false") -> Verdict:
    """Lift a decided boolean into a Verdict."""
    return Exists(witness) if value else NotExists(certificate)
