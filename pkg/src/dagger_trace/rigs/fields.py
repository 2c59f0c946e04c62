"""
Field rigs: Rationals, GaussianRationals and GF2.
"""

from fractions import Fraction
from typing import Iterator, List, Tuple

from ..common.errors import MissingStructureError
from ..common.verdict import Exists, NotExists, Verdict
from .base import Rig, RigDescriptor, RigElement
from .grammar import Scanner


class Rationals(Rig):
    """The rationals with the identity dagger."""

    descriptor = RigDescriptor(
        name='Rationals', has_negatives=True, has_dagger=True, is_commutative=True,
        element_grammar='rational', is_field=True, is_complex_subfield=True,
    )

    def _normalize(self, payload) -> Fraction:
        return Fraction(payload)

    def _zero_payload(self):
        return Fraction(0)

    def _one_payload(self):
        return Fraction(1)

    def _add(self, p, q):
        return p + q

    def _mul(self, p, q):
        return p * q

    def _dagger(self, p):
        return p

    def _neg(self, p):
        return -p

    def from_int(self, n: int) -> RigElement:
        return self.element(n)

    def inverse(self, a: RigElement) -> Verdict:
        self.check(a)
        if a.payload == 0:
            return NotExists("0 has no inverse")
        return Exists(self.element(1 / a.payload))

    def sign(self, a: RigElement) -> int:
        self.check(a)
        return (a.payload > 0) - (a.payload < 0)

    def small_elements(self, bound: int) -> List[RigElement]:
        pool = {Fraction(0)}
        for num in range(-bound, bound + 1):
            for den in range(1, bound + 1):
                pool.add(Fraction(num, den))
        return [self.element(v) for v in sorted(pool)]

    def parse(self, text: str) -> RigElement:
        sc = Scanner(text)
        sign = sc.read_sign()
        value = sc.read_rational()
        if value is None:
            raise sc.error("expected a rational number")
        sc.expect_end()
        return self.element(sign * value)

    def format(self, a: RigElement) -> str:
        return str(a.payload)


class GaussianRationals(Rig):
    """Q(i) with complex conjugation as dagger; payload is ``(re, im)``."""

    descriptor = RigDescriptor(
        name='GaussianRationals', has_negatives=True, has_dagger=True, is_commutative=True,
        element_grammar='gaussian', is_field=True, is_complex_subfield=True,
    )

    def _normalize(self, payload) -> Tuple[Fraction, Fraction]:
        if isinstance(payload, tuple):
            re, im = payload
            return (Fraction(re), Fraction(im))
        return (Fraction(payload), Fraction(0))

    def _zero_payload(self):
        return (Fraction(0), Fraction(0))

    def _one_payload(self):
        return (Fraction(1), Fraction(0))

    def _add(self, p, q):
        return (p[0] + q[0], p[1] + q[1])

    def _mul(self, p, q):
        return (p[0] * q[0] - p[1] * q[1], p[0] * q[1] + p[1] * q[0])

    def _dagger(self, p):
        return (p[0], -p[1])

    def _neg(self, p):
        return (-p[0], -p[1])

    def from_int(self, n: int) -> RigElement:
        return self.element(n)

    @property
    def i(self) -> RigElement:
        return self.element((0, 1))

    def inverse(self, a: RigElement) -> Verdict:
        self.check(a)
        re, im = a.payload
        norm = re * re + im * im
        if norm == 0:
            return NotExists("0 has no inverse")
        return Exists(self.element((re / norm, -im / norm)))

    def sign(self, a: RigElement) -> int:
        self.check(a)
        re, im = a.payload
        if im != 0:
            raise MissingStructureError(f"{self.format(a)} is not self-adjoint, it has no sign")
        return (re > 0) - (re < 0)

    def small_elements(self, bound: int) -> List[RigElement]:
        return [self.element((re, im)) for re in range(-bound, bound + 1) for im in range(-bound, bound + 1)]

    def parse(self, text: str) -> RigElement:
        sc = Scanner(text)
        re, im = Fraction(0), Fraction(0)
        first = True
        while first or not sc.at_end():
            if not first and sc.peek() not in '+-':
                raise sc.error("expected '+' or '-'")
            sign = sc.read_sign()
            value = sc.read_rational()
            if sc.take('i'):
                im += sign * (Fraction(1) if value is None else value)
            elif value is None:
                raise sc.error("expected a rational or 'i'")
            else:
                re += sign * value
            first = False
        return self.element((re, im))

    def format(self, a: RigElement) -> str:
        re, im = a.payload
        if im == 0:
            return str(re)
        if abs(im) == 1:
            imag = "i"
        else:
            imag = f"{abs(im)}i"
        if re == 0:
            return imag if im > 0 else f"-{imag}"
        return f"{re}+{imag}" if im > 0 else f"{re}-{imag}"


class GF2(Rig):
    """The two-element field with the identity dagger."""

    descriptor = RigDescriptor(
        name='GF2', has_negatives=True, has_dagger=True, is_commutative=True,
        element_grammar='bit', is_field=True, is_finite=True,
    )

    def _normalize(self, payload) -> int:
        return int(payload) % 2

    def _zero_payload(self):
        return 0

    def _one_payload(self):
        return 1

    def _add(self, p, q):
        return p ^ q

    def _mul(self, p, q):
        return p & q

    def _dagger(self, p):
        return p

    def _neg(self, p):
        return p

    def from_int(self, n: int) -> RigElement:
        return self.element(n)

    def inverse(self, a: RigElement) -> Verdict:
        self.check(a)
        if a.payload == 0:
            return NotExists("0 has no inverse")
        return Exists(a)

    def elements(self) -> Iterator[RigElement]:
        yield self.zero
        yield self.one

    def parse(self, text: str) -> RigElement:
        sc = Scanner(text)
        sign = sc.read_sign()
        value = sc.read_nat()
        if value is None:
            raise sc.error("expected a bit")
        sc.expect_end()
        return self.element(sign * value)

    def format(self, a: RigElement) -> str:
        return str(a.payload)
