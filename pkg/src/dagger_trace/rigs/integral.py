"""
Integer-like rigs: Integers and the dual numbers Z[x]/(x^2).
"""

from typing import List, Tuple

from ..common.verdict import Exists, NotExists, Verdict
from .base import Rig, RigDescriptor, RigElement
from .grammar import Scanner


class Integers(Rig):
    """Z with the identity dagger."""

    descriptor = RigDescriptor(
        name='Integers', has_negatives=True, has_dagger=True, is_commutative=True,
        element_grammar='integer',
    )

    def _normalize(self, payload) -> int:
        if isinstance(payload, bool) or int(payload) != payload:
            raise ValueError(f"not an integer: {payload!r}")
        return int(payload)

    def _zero_payload(self):
        return 0

    def _one_payload(self):
        return 1

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
        if a.payload in (1, -1):
            return Exists(a)
        return NotExists(f"{a.payload} is not a unit of Integers")

    def sign(self, a: RigElement) -> int:
        self.check(a)
        return (a.payload > 0) - (a.payload < 0)

    def parse(self, text: str) -> RigElement:
        sc = Scanner(text)
        sign = sc.read_sign()
        value = sc.read_nat()
        if value is None:
            raise sc.error("expected an integer")
        sc.expect_end()
        return self.element(sign * value)

    def format(self, a: RigElement) -> str:
        return str(a.payload)


class DualNumbersZ(Rig):
    """Integers adjoined with ``x``, ``x^2 = 0``; payload ``(a, b)`` is ``a + b x``.

    The dagger is the identity (it fixes ``x``).
    """

    descriptor = RigDescriptor(
        name='DualNumbersZ', has_negatives=True, has_dagger=True, is_commutative=True,
        element_grammar='dual',
    )

    def _normalize(self, payload) -> Tuple[int, int]:
        if isinstance(payload, tuple):
            a, b = payload
            return (int(a), int(b))
        return (int(payload), 0)

    def _zero_payload(self):
        return (0, 0)

    def _one_payload(self):
        return (1, 0)

    def _add(self, p, q):
        return (p[0] + q[0], p[1] + q[1])

    def _mul(self, p, q):
        return (p[0] * q[0], p[0] * q[1] + p[1] * q[0])

    def _dagger(self, p):
        return p

    def _neg(self, p):
        return (-p[0], -p[1])

    def from_int(self, n: int) -> RigElement:
        return self.element(n)

    @property
    def x(self) -> RigElement:
        return self.element((0, 1))

    def inverse(self, a: RigElement) -> Verdict:
        # (a + bx)(a - bx) = a^2, so units are exactly those with a = +-1.
        self.check(a)
        const, eps = a.payload
        if const not in (1, -1):
            return NotExists(f"{self.format(a)} is not a unit of DualNumbersZ")
        return Exists(self.element((const, -eps)))

    def small_elements(self, bound: int) -> List[RigElement]:
        return [self.element((a, b)) for a in range(-bound, bound + 1) for b in range(-bound, bound + 1)]

    def parse(self, text: str) -> RigElement:
        sc = Scanner(text)
        const, eps = 0, 0
        first = True
        while first or not sc.at_end():
            if not first and sc.peek() not in '+-':
                raise sc.error("expected '+' or '-'")
            sign = sc.read_sign()
            coeff = sc.read_nat()
            if sc.take('x'):
                power = sc.read_exponent()
                c = sign * (1 if coeff is None else coeff)
                if power == 0:
                    const += c
                elif power == 1:
                    eps += c
            elif coeff is None:
                raise sc.error("expected an integer or 'x'")
            else:
                const += sign * coeff
            first = False
        return self.element((const, eps))

    def format(self, a: RigElement) -> str:
        const, eps = a.payload
        if eps == 0:
            return str(const)
        mag = "x" if abs(eps) == 1 else f"{abs(eps)}x"
        if const == 0:
            return mag if eps > 0 else f"-{mag}"
        return f"{const}+{mag}" if eps > 0 else f"{const}-{mag}"
