#!/usr/bin/env python3
"""
Unit tests for arrow predicates and the positivity order
"""

import unittest
from fractions import Fraction

from hypothesis import given, settings, strategies as strat

from tests.helpers import q

from dagger_trace.common.config import Config
from dagger_trace.common.errors import PreconditionError
from dagger_trace.common.verdict import Exists, NotExists, Unknown
from dagger_trace.matrix import (
    BlockPartition, Matrix, add, block, compose, dagger, identity, zero,
)
from dagger_trace.positivity import four_squares, is_positive, ldl_factor, leq_identity, leq_positive
from dagger_trace.predicates import (
    complement, complementary, is_cocontraction, is_coisometry, is_contraction, is_dagger_idempotent,
    is_isometry, is_mono, is_self_adjoint, is_unitary, is_unitary_component, unitary_completion,
)
from dagger_trace.rigs import BOOLEANS, DUAL, FREE_ISOMETRY, GAUSSIAN, GF2_RIG, INTEGERS, RATIONALS, WORDS_XY


def _z(rows):
    return Matrix.from_rows(INTEGERS, rows)


def _b(rows):
    return Matrix.from_rows(BOOLEANS, rows)


class TestIsometries(unittest.TestCase):
    """Isometries, coisometries and unitaries."""

    def test_column_is_isometry(self):
        """[3/5; 4/5] is an isometry, and its dagger a coisometry."""
        f = q("3/5; 4/5")
        self.assertTrue(is_isometry(f))
        self.assertFalse(is_coisometry(f))
        self.assertTrue(is_coisometry(dagger(f)))
        self.assertFalse(is_unitary(f))

    def test_rotation_is_unitary(self):
        """A rational rotation is unitary."""
        self.assertTrue(is_unitary(q("3/5, -4/5; 4/5, 3/5")))

    def test_gaussian_phase_is_unitary(self):
        """diag(i, 1) is unitary over the Gaussian rationals but not self-adjoint."""
        u = Matrix.from_rows(GAUSSIAN, [['i', '0'], ['0', '1']])
        self.assertTrue(is_unitary(u))
        self.assertFalse(is_self_adjoint(u))

    def test_unitary_completion(self):
        """[[0, f†], [f, 1 - f f†]] is a unitary with f as a component."""
        f = q("3/5; 4/5")
        u = unitary_completion(f)
        self.assertTrue(is_unitary(u))
        part = BlockPartition([1, 2])
        self.assertEqual(block(u, part, part, 1, 0), f)
        with self.assertRaises(PreconditionError):
            unitary_completion(q("1, 1"))


class TestContractions(unittest.TestCase):
    """Contractions per rig."""

    def test_rational_contractions(self):
        """[1/2, 1/2] is a contraction with a witness completing it to the identity; [2] is not."""
        f = q("1/2, 1/2")
        verdict = is_contraction(f)
        self.assertIsInstance(verdict, Exists)
        k = verdict.witness
        self.assertEqual(add(compose(f, dagger(f)), compose(k, dagger(k))), identity(RATIONALS, 2))
        self.assertIsInstance(is_contraction(q("2")), NotExists)

    @settings(max_examples=30, deadline=None)
    @given(strat.fractions(min_value=-3, max_value=3, max_denominator=5))
    def test_scalar_contraction_matches_absolute_value(self, t):
        """A rational scalar is a contraction exactly when |t| <= 1."""
        verdict = is_contraction(Matrix.from_rows(RATIONALS, [[t]]))
        self.assertEqual(isinstance(verdict, Exists), abs(t) <= 1)

    def test_integer_contractions_are_partial_signed_permutations(self):
        """Over the integers the contractions are the partial signed permutations."""
        self.assertIsInstance(is_contraction(_z([[0, -1], [1, 0]])), Exists)
        self.assertIsInstance(is_contraction(_z([[1, 0], [0, 0]])), Exists)
        self.assertIsInstance(is_contraction(_z([[1, 1]])), NotExists)
        self.assertIsInstance(is_contraction(_z([[2]])), NotExists)

    def test_boolean_contractions(self):
        """A Boolean matrix is a contraction when no row has two 1s; cocontractions are dual."""
        f = _b([[1, 0], [1, 0]])
        self.assertIsInstance(is_contraction(f), Exists)
        self.assertIsInstance(is_cocontraction(f), NotExists)
        self.assertIsInstance(is_contraction(_b([[1, 1]])), NotExists)

    def test_unitary_components(self):
        """Partial signed permutations sit inside a unitary; other integer matrices do not."""
        f = _z([[0, -1, 0], [0, 0, 0]])
        verdict = is_unitary_component(f)
        self.assertIsInstance(verdict, Exists)
        u = verdict.witness
        self.assertTrue(is_unitary(u))
        self.assertEqual(block(u, BlockPartition([2, 3]), BlockPartition([3, 2]), 0, 0), f)
        self.assertIsInstance(is_unitary_component(_z([[1, 1]])), NotExists)
        self.assertIsInstance(is_unitary_component(q("1/2")), Exists)


class TestIdempotents(unittest.TestCase):
    """Dagger idempotents and complements."""

    def test_projection_and_complement(self):
        """The projection onto (1, 1) and its complement are complementary dagger idempotents."""
        p = q("1/2, 1/2; 1/2, 1/2")
        self.assertTrue(is_dagger_idempotent(p))
        c = complement(p)
        self.assertTrue(is_dagger_idempotent(c))
        self.assertTrue(complementary(p, c))
        self.assertFalse(complementary(p, p))

    def test_idempotent_that_is_not_self_adjoint(self):
        """[1, 1; 0, 0] is idempotent but not a dagger idempotent."""
        self.assertFalse(is_dagger_idempotent(q("1, 1; 0, 0")))


class TestMonos(unittest.TestCase):
    """Left-cancellable arrows per rig."""

    def test_field_monos(self):
        """Full column rank decides monos over fields and the integers."""
        self.assertIsInstance(is_mono(q("1; 1")), Exists)
        self.assertIsInstance(is_mono(q("1, 1")), NotExists)
        self.assertIsInstance(is_mono(_z([[2], [4]])), Exists)
        self.assertIsInstance(is_mono(Matrix.from_rows(GF2_RIG, [[1, 1], [1, 1]])), NotExists)

    def test_boolean_monos(self):
        """Boolean monos are decided by comparing images of all vectors."""
        self.assertIsInstance(is_mono(_b([[1], [1]])), Exists)
        self.assertIsInstance(is_mono(_b([[1, 1]])), NotExists)

    def test_dual_and_word_monos(self):
        """Dual numbers use the constant part; word rigs are undecided."""
        self.assertIsInstance(is_mono(Matrix.from_rows(DUAL, [['2x']])), NotExists)
        self.assertIsInstance(is_mono(Matrix.from_rows(DUAL, [['1+x']])), Exists)
        self.assertIsInstance(is_mono(Matrix.from_rows(FREE_ISOMETRY, [['x']])), Unknown)


class TestPositivity(unittest.TestCase):
    """The order f <= g and its witnesses."""

    def test_four_squares(self):
        """Every nonnegative rational is a sum of four rational squares."""
        for value in (Fraction(7, 3), Fraction(0), Fraction(15), Fraction(1, 8)):
            with self.subTest(value=value):
                self.assertEqual(sum(s * s for s in four_squares(value)), value)

    def test_positive_definite_rational(self):
        """[2, 1; 1, 2] is K† K for the returned K."""
        a = q("2, 1; 1, 2")
        verdict = is_positive(a)
        self.assertIsInstance(verdict, Exists)
        k = verdict.witness
        self.assertEqual(compose(k, dagger(k)), a)

    def test_ldl_with_off_diagonal_entries(self):
        """Pivots and columns of non-diagonal positive matrices."""
        cases = [
            ("1, 1; 1, 2", [(1, [1, 1]), (1, [0, 1])]),
            ("2, 1; 1, 1", [(2, [2, 1]), (Fraction(1, 2), [0, Fraction(1, 2)])]),
            ("1, 2, 3; 2, 4, 6; 3, 6, 9", [(1, [1, 2, 3])]),
        ]
        for text, expected in cases:
            with self.subTest(matrix=text):
                verdict = ldl_factor(q(text))
                self.assertIsInstance(verdict, Exists)
                factors = [(pivot, [e.payload for e in column]) for pivot, column in verdict.witness]
                self.assertEqual(factors, expected)

    def test_non_diagonal_positive_witnesses(self):
        """The returned K reproduces positive matrices with off-diagonal entries."""
        samples = [
            q("1, 1; 1, 2"),
            q("2, 1; 1, 1"),
            q("1, 2, 3; 2, 4, 6; 3, 6, 9"),
            q("2, -1, 0; -1, 2, -1; 0, -1, 2"),
            Matrix.from_rows(GAUSSIAN, [['2', '1+i'], ['1-i', '2']]),
        ]
        for a in samples:
            with self.subTest(matrix=str(a)):
                verdict = leq_positive(zero(a.rig, a.rows, a.cols), a)
                self.assertIsInstance(verdict, Exists)
                self.assertEqual(compose(verdict.witness, dagger(verdict.witness)), a)

    def test_averaging_map_is_contraction(self):
        """[1/2, 1/2; 0, 0] sends both coordinates to their mean."""
        self.assertIsInstance(is_contraction(q("1/2, 1/2; 0, 0")), Exists)
        self.assertIsInstance(leq_identity(compose(q("1/2, 1/2; 0, 0"), dagger(q("1/2, 1/2; 0, 0")))), Exists)

    def test_indefinite_rational(self):
        """[1, 2; 2, 1] has a negative pivot."""
        self.assertIsInstance(is_positive(q("1, 2; 2, 1")), NotExists)
        self.assertIsInstance(ldl_factor(q("1, 2; 3, 1")), NotExists)

    def test_gaussian_rank_one(self):
        """[1, i; -i, 1] is positive of rank one."""
        a = Matrix.from_rows(GAUSSIAN, [['1', 'i'], ['-i', '1']])
        verdict = is_positive(a)
        self.assertIsInstance(verdict, Exists)
        self.assertEqual(compose(verdict.witness, dagger(verdict.witness)), a)

    def test_leq_identity(self):
        """1/2 <= 1 and 2 is not."""
        self.assertIsInstance(leq_identity(q("1/2")), Exists)
        self.assertIsInstance(leq_identity(q("2")), NotExists)

    def test_integer_positivity(self):
        """Integer positivity needs an integer witness."""
        a = _z([[2, 1], [1, 1]])
        verdict = is_positive(a)
        self.assertIsInstance(verdict, Exists)
        self.assertEqual(compose(verdict.witness, dagger(verdict.witness)), a)
        self.assertIsInstance(is_positive(_z([[1, 1], [1, 0]])), NotExists)

    def test_boolean_positivity_is_exhaustive(self):
        """The Boolean cone cannot produce off-diagonal 1s without diagonal 1s."""
        self.assertIsInstance(is_positive(_b([[0, 1], [1, 0]])), NotExists)
        self.assertIsInstance(leq_positive(_b([[1, 0], [0, 0]]), _b([[1, 1], [1, 1]])), Exists)

    def test_free_isometry_positivity(self):
        """x x! is positive (it is x!† x!) and 1 is not below x x!."""
        config = Config(search_limit=5000)
        xxd = Matrix.from_rows(FREE_ISOMETRY, [['x x!']])
        verdict = is_positive(xxd, config)
        self.assertIsInstance(verdict, Exists)
        self.assertEqual(compose(verdict.witness, dagger(verdict.witness)), xxd)
        self.assertIsInstance(leq_positive(identity(FREE_ISOMETRY, 1), xxd, config), NotExists)

    def test_order_is_compatible_with_sums(self):
        """f <= f + g† g for any g."""
        f = q("1, 0; 0, 0")
        g = q("1, 2")
        verdict = leq_positive(f, add(f, compose(g, dagger(g))))
        self.assertIsInstance(verdict, Exists)

    def test_words_without_dagger_refused(self):
        """Positivity needs a dagger."""
        with self.assertRaises(ValueError):
            is_positive(Matrix.from_rows(WORDS_XY, [['x']]))


if __name__ == '__main__':
    unittest.main()
