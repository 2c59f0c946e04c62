#!/usr/bin/env python3
"""
Unit tests for the shipped dagger rigs

Rig axioms and grammar round trips are checked with hypothesis; the
examples pin down arithmetic in each rig.
"""

import unittest
from fractions import Fraction

from hypothesis import given, settings, strategies as strat

from tests.helpers import ALL_RIGS, DAGGER_RIGS, elements

from dagger_trace.common.errors import ElementParseError, MissingStructureError, RigMismatchError
from dagger_trace.common.verdict import Exists, NotExists
from dagger_trace.rigs import (
    BOOLEANS, DUAL, FREE_ISOMETRY, GAUSSIAN, GF2_RIG, INTEGERS, RATIONALS, RIGS, WORDS_XY,
    check_confluence, descriptors, get_rig, reduction_normal_forms, rewrite_word,
)


class TestRigAxioms(unittest.TestCase):
    """Rig laws, checked on small random elements of every rig."""

    @settings(max_examples=60, deadline=None)
    @given(strat.data())
    def test_addition_is_commutative_monoid(self, data):
        """Addition is associative and commutative with unit 0."""
        for rig in ALL_RIGS:
            a, b, c = (data.draw(elements(rig)) for _ in range(3))
            self.assertEqual(rig.add(a, b), rig.add(b, a))
            self.assertEqual(rig.add(rig.add(a, b), c), rig.add(a, rig.add(b, c)))
            self.assertEqual(rig.add(a, rig.zero), a)

    @settings(max_examples=60, deadline=None)
    @given(strat.data())
    def test_multiplication_is_monoid_and_distributes(self, data):
        """Multiplication is associative with unit 1, absorbs 0 and distributes over addition."""
        for rig in ALL_RIGS:
            a, b, c = (data.draw(elements(rig)) for _ in range(3))
            self.assertEqual(rig.mul(rig.mul(a, b), c), rig.mul(a, rig.mul(b, c)))
            self.assertEqual(rig.mul(a, rig.one), a)
            self.assertEqual(rig.mul(rig.one, a), a)
            self.assertEqual(rig.mul(a, rig.zero), rig.zero)
            self.assertEqual(rig.mul(a, rig.add(b, c)), rig.add(rig.mul(a, b), rig.mul(a, c)))
            self.assertEqual(rig.mul(rig.add(a, b), c), rig.add(rig.mul(a, c), rig.mul(b, c)))

    @settings(max_examples=60, deadline=None)
    @given(strat.data())
    def test_dagger_is_involutive_anti_homomorphism(self, data):
        """The dagger is involutive, additive and reverses products."""
        for rig in DAGGER_RIGS:
            a, b = data.draw(elements(rig)), data.draw(elements(rig))
            self.assertEqual(rig.dagger(rig.dagger(a)), a)
            self.assertEqual(rig.dagger(rig.add(a, b)), rig.add(rig.dagger(a), rig.dagger(b)))
            self.assertEqual(rig.dagger(rig.mul(a, b)), rig.mul(rig.dagger(b), rig.dagger(a)))

    @settings(max_examples=60, deadline=None)
    @given(strat.data())
    def test_format_parse_round_trip(self, data):
        """Formatting then parsing any element gives it back."""
        for rig in ALL_RIGS:
            a = data.draw(elements(rig))
            self.assertEqual(rig.parse(rig.format(a)), a)

    @settings(max_examples=60, deadline=None)
    @given(strat.data())
    def test_negation_where_available(self, data):
        """Rigs with negatives have additive inverses for every element."""
        for rig in ALL_RIGS:
            a = data.draw(elements(rig))
            verdict = rig.negate(a)
            if rig.descriptor.has_negatives:
                self.assertIsInstance(verdict, Exists)
                self.assertEqual(rig.add(a, verdict.witness), rig.zero)
            elif a != rig.zero:
                self.assertIsInstance(verdict, NotExists)


class TestRigArithmetic(unittest.TestCase):
    """Concrete arithmetic in each rig."""

    def test_rational_sum(self):
        """1/2 + 1/3 is 5/6."""
        self.assertEqual(RATIONALS.add(RATIONALS.parse("1/2"), RATIONALS.parse("1/3")), RATIONALS.parse("5/6"))

    def test_gf2_characteristic_two(self):
        """1 + 1 is 0 in GF2."""
        self.assertEqual(GF2_RIG.add(GF2_RIG.one, GF2_RIG.one), GF2_RIG.zero)

    def test_booleans_saturate(self):
        """1 + 1 is 1 in the Booleans, and 1 has no negative."""
        self.assertEqual(BOOLEANS.add(BOOLEANS.one, BOOLEANS.one), BOOLEANS.one)
        self.assertIsInstance(BOOLEANS.negate(BOOLEANS.one), NotExists)
        self.assertEqual(BOOLEANS.negate(BOOLEANS.zero), Exists(BOOLEANS.zero))

    def test_free_isometry_words(self):
        """x + x is 2x, x! x is 1 and x x! is a normal word of its own."""
        x, xd = FREE_ISOMETRY.x, FREE_ISOMETRY.x_dagger
        self.assertEqual(FREE_ISOMETRY.format(FREE_ISOMETRY.add(x, x)), "2x")
        self.assertEqual(FREE_ISOMETRY.mul(xd, x), FREE_ISOMETRY.one)
        self.assertEqual(FREE_ISOMETRY.format(FREE_ISOMETRY.mul(x, xd)), "x x!")
        self.assertNotEqual(FREE_ISOMETRY.mul(x, xd), FREE_ISOMETRY.one)
        self.assertEqual(FREE_ISOMETRY.dagger(x), xd)

    def test_free_isometry_parse_rewrites(self):
        """Parsing applies x! x = 1 inside words."""
        self.assertEqual(FREE_ISOMETRY.parse("x! x"), FREE_ISOMETRY.one)
        self.assertEqual(FREE_ISOMETRY.parse("x x! x"), FREE_ISOMETRY.x)
        self.assertEqual(FREE_ISOMETRY.parse("2x^2 x! + 1"),
                         FREE_ISOMETRY.add(FREE_ISOMETRY.monomial((2, 1), 2), FREE_ISOMETRY.one))

    def test_word_rig_xy_relation(self):
        """x y vanishes while y x does not."""
        x, y = WORDS_XY.x, WORDS_XY.y
        self.assertEqual(WORDS_XY.mul(x, y), WORDS_XY.zero)
        self.assertEqual(WORDS_XY.format(WORDS_XY.mul(y, x)), "y x")
        self.assertEqual(WORDS_XY.parse("x y"), WORDS_XY.zero)

    def test_word_rig_xy_has_no_dagger(self):
        """WordRigXY refuses the dagger."""
        with self.assertRaises(MissingStructureError):
            WORDS_XY.dagger(WORDS_XY.x)

    def test_dual_numbers_square_zero(self):
        """x^2 is 0 and 1 + x is a unit with inverse 1 - x."""
        self.assertEqual(DUAL.mul(DUAL.x, DUAL.x), DUAL.zero)
        self.assertEqual(DUAL.parse("x^2"), DUAL.zero)
        self.assertEqual(DUAL.inverse(DUAL.parse("1+x")), Exists(DUAL.parse("1-x")))
        self.assertIsInstance(DUAL.inverse(DUAL.parse("2+x")), NotExists)

    def test_gaussian_conjugation_and_inverse(self):
        """The dagger conjugates and i has inverse -i."""
        self.assertEqual(GAUSSIAN.dagger(GAUSSIAN.parse("3/5+4/5i")), GAUSSIAN.parse("3/5-4/5i"))
        self.assertEqual(GAUSSIAN.inverse(GAUSSIAN.i), Exists(GAUSSIAN.parse("-i")))
        self.assertEqual(GAUSSIAN.mul(GAUSSIAN.i, GAUSSIAN.i), GAUSSIAN.from_int(-1))

    def test_integer_units(self):
        """Only 1 and -1 are invertible integers."""
        self.assertIsInstance(INTEGERS.inverse(INTEGERS.from_int(-1)), Exists)
        self.assertIsInstance(INTEGERS.inverse(INTEGERS.from_int(2)), NotExists)

    def test_rational_inverse(self):
        """Nonzero rationals invert, zero does not."""
        self.assertEqual(RATIONALS.inverse(RATIONALS.parse("-2/3")).witness.payload, Fraction(-3, 2))
        self.assertIsInstance(RATIONALS.inverse(RATIONALS.zero), NotExists)

    def test_rig_mismatch(self):
        """Mixing elements of different rigs raises RigMismatchError."""
        with self.assertRaises(RigMismatchError):
            RATIONALS.add(RATIONALS.one, INTEGERS.one)


class TestGrammar(unittest.TestCase):
    """Element literal parsing errors."""

    def test_parse_error_carries_position(self):
        """A bad literal reports where parsing stopped."""
        with self.assertRaises(ElementParseError) as ctx:
            RATIONALS.parse("1/0")
        self.assertEqual(ctx.exception.text, "1/0")
        self.assertEqual(ctx.exception.position, 3)

    def test_parse_error_is_value_error(self):
        """Parse errors can be caught as ValueError."""
        for rig, text in ((INTEGERS, "1.5"), (BOOLEANS, "2"), (GAUSSIAN, "i i"), (WORDS_XY, "z")):
            with self.subTest(rig=rig.name):
                with self.assertRaises(ValueError):
                    rig.parse(text)

    def test_boolean_words(self):
        """Booleans accept true/false as well as 0/1."""
        self.assertEqual(BOOLEANS.parse("true"), BOOLEANS.one)
        self.assertEqual(BOOLEANS.parse("False"), BOOLEANS.zero)


class TestRewriting(unittest.TestCase):
    """The free-isometry rewrite engine."""

    def test_rewrite_word(self):
        """Raw words reduce to x^j x!^i."""
        self.assertEqual(rewrite_word("Xx"), (0, 0))
        self.assertEqual(rewrite_word("xX"), (1, 1))
        self.assertEqual(rewrite_word("XXxxx"), (1, 0))
        self.assertEqual(rewrite_word("xXXxX"), (1, 2))

    def test_every_reduction_order_agrees(self):
        """No raw word up to length 8 has two irreducible forms."""
        self.assertEqual(check_confluence(8), [])

    def test_reduction_normal_forms(self):
        """The irreducible descendants of a word form a single word."""
        self.assertEqual(reduction_normal_forms("XxXxx"), {"x"})


class TestRegistry(unittest.TestCase):
    """Rig lookup and descriptors."""

    def test_get_rig_is_case_insensitive(self):
        """Names match regardless of case; unknown names raise ValueError."""
        self.assertIs(get_rig("rationals"), RATIONALS)
        self.assertIs(get_rig(GF2_RIG), GF2_RIG)
        with self.assertRaises(ValueError):
            get_rig("Reals")

    def test_descriptor_flags(self):
        """Negatives and daggers are where the rigs promise them."""
        with_negatives = {d.name for d in descriptors() if d.has_negatives}
        self.assertEqual(with_negatives, {'Rationals', 'GaussianRationals', 'Integers', 'GF2', 'DualNumbersZ'})
        without_dagger = {d.name for d in descriptors() if not d.has_dagger}
        self.assertEqual(without_dagger, {'WordRigXY'})
        self.assertEqual(len(RIGS), 8)


if __name__ == '__main__':
    unittest.main()
