"""
A small hand-written scanner shared by the element grammars.

Grammars (``!`` is the ASCII dagger marker, read as †):

    Rationals          3/5   -2   0
    GaussianRationals  1+2i  -i   3/5-4/5i   2i
    Integers           -3    7
    GF2                0     1    (any integer, reduced mod 2)
    Booleans           0     1    true   false
    DualNumbersZ       2+3x  -x   x^2 (= 0)
    FreeIsometryRig    x x!   2x^2 x!   1 + x!   (sums of words in x, x!)
    WordRigXY          y x    x^2   1 + y      (sums of words in x, y)
"""

from fractions import Fraction
from typing import Optional

from ..common.errors import ElementParseError


class Scanner:
    """Cursor over an element literal with position-aware errors."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def at_end(self) -> bool:
        return self.peek() == ""

    def take(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def expect_end(self) -> None:
        if not self.at_end():
            raise self.error(f"unexpected {self.text[self.pos]!r}")

    def error(self, message: str) -> ElementParseError:
        return ElementParseError(message, self.text, self.pos)

    def read_nat(self) -> Optional[int]:
        """Read an unsigned decimal integer, or return None if none is present."""
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            return None
        return int(self.text[start:self.pos])

    def read_sign(self) -> int:
        if self.take('-'):
            return -1
        self.take('+')
        return 1

    def read_rational(self) -> Optional[Fraction]:
        """Read ``n`` or ``n/d`` (unsigned); None if no digits follow."""
        num = self.read_nat()
        if num is None:
            return None
        if self.take('/'):
            den = self.read_nat()
            if den is None:
                raise self.error("expected a denominator")
            if den == 0:
                raise self.error("zero denominator")
            return Fraction(num, den)
        return Fraction(num)

    def read_exponent(self) -> int:
        if self.take('^'):
            exp = self.read_nat()
            if exp is None:
                raise self.error("expected an exponent")
            return exp
        return 1
