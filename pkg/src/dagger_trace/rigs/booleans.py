"""
The Boolean rig ({0, 1}, or, and) with the identity dagger.
"""

from typing import Iterator

from .base import Rig, RigDescriptor, RigElement
from .grammar import Scanner

_WORDS = {'true': True, 'false': False}


class Booleans(Rig):
    descriptor = RigDescriptor(
        name='Booleans', has_negatives=False, has_dagger=True, is_commutative=True,
        element_grammar='boolean', is_finite=True, natural_coefficients=True,
    )

    def _normalize(self, payload) -> bool:
        return bool(payload)

    def _zero_payload(self):
        return False

    def _one_payload(self):
        return True

    def _add(self, p, q):
        return p or q

    def _mul(self, p, q):
        return p and q

    def _dagger(self, p):
        return p

    def elements(self) -> Iterator[RigElement]:
        yield self.zero
        yield self.one

    def parse(self, text: str) -> RigElement:
        word = text.strip().lower()
        if word in _WORDS:
            return self.element(_WORDS[word])
        sc = Scanner(text)
        value = sc.read_nat()
        if value not in (0, 1):
            raise sc.error("expected 0, 1, true or false")
        sc.expect_end()
        return self.element(value)

    def format(self, a: RigElement) -> str:
        return "1" if a.payload else "0"
