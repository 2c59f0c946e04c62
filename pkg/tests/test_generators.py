#!/usr/bin/env python3
"""
Unit tests for the seeded samplers
"""

import unittest

from tests.helpers import clear_config_env, q

from dagger_trace.common.config import Config
from dagger_trace.common.errors import DimensionError, MissingStructureError
from dagger_trace.common.verdict import Exists
from dagger_trace.generators import (
    SAMPLED_RIGS, GenConfig, cayley, gen_coisometry, gen_contraction, gen_dagger_idempotent,
    gen_in_class, gen_isometry, gen_isotropic, gen_matrix, gen_trace_problem, gen_unitary, householder,
)
from dagger_trace.matrix import Matrix, compose, dagger, identity
from dagger_trace.predicates import (
    is_coisometry, is_contraction, is_dagger_idempotent, is_isometry, is_unitary,
)
from dagger_trace.rigs import GAUSSIAN, GF2_RIG, INTEGERS, RATIONALS, WORDS_XY, get_rig
from dagger_trace.trace import in_class


class TestBuildingBlocks(unittest.TestCase):
    """Cayley transforms and Householder reflections."""

    def test_cayley_of_rotation_generator(self):
        """The Cayley transform of [0, 1; -1, 0] is a quarter turn."""
        u = cayley(q("0, 1; -1, 0"))
        self.assertEqual(u, q("0, -1; 1, 0"))
        self.assertTrue(is_unitary(u))

    def test_cayley_needs_skew_adjoint(self):
        """A symmetric matrix is refused."""
        with self.assertRaises(ValueError):
            cayley(q("0, 1; 1, 0"))

    def test_householder(self):
        """Reflecting through the line orthogonal to (1, 1) swaps and negates."""
        h = householder(q("1; 1"))
        self.assertEqual(h, q("0, -1; -1, 0"))
        self.assertTrue(is_unitary(h))


class TestGenConfig(unittest.TestCase):
    """Sampler configuration."""

    def setUp(self):
        clear_config_env()

    def tearDown(self):
        clear_config_env()

    def test_unsupported_rig(self):
        """WordRigXY has no samplers."""
        with self.assertRaises(MissingStructureError):
            GenConfig(1, WORDS_XY)

    def test_invalid_bounds(self):
        """Dimensions and coefficient bounds must be positive."""
        with self.assertRaises(ValueError):
            GenConfig(1, RATIONALS, max_dim=0)

    def test_from_config(self):
        """Seed, rig and bounds come from Config."""
        gen = GenConfig.from_config(Config(seed=7, rig='Integers', max_dim=3))
        self.assertEqual((gen.seed, gen.rig, gen.max_dim), (7, INTEGERS, 3))
        self.assertIs(GenConfig.from_config(Config(seed=7), rig='GF2').rig, get_rig('GF2'))


class TestSamplers(unittest.TestCase):
    """Every sample lands in its class and repeats exactly."""

    def test_same_seed_and_index_repeat(self):
        """Samples are a function of (seed, index) alone."""
        gen = GenConfig(11, RATIONALS, max_dim=4)
        later = gen_unitary(gen, 3, index=5)
        gen_unitary(gen, 3, index=4)
        self.assertEqual(gen_unitary(gen, 3, index=5), later)
        self.assertEqual(gen_matrix(gen, 2, 3, 9), gen_matrix(GenConfig(11, RATIONALS), 2, 3, 9))
        self.assertNotEqual(gen_matrix(gen, 3, 3, 1), gen_matrix(GenConfig(12, RATIONALS), 3, 3, 1))

    def test_classes_over_every_sampled_rig(self):
        """Unitaries, isometries, coisometries, contractions and idempotents pass their checks."""
        for name in SAMPLED_RIGS:
            gen = GenConfig(3, get_rig(name), max_dim=4, coeff_bound=4)
            for index in range(4):
                with self.subTest(rig=name, index=index):
                    self.assertTrue(is_unitary(gen_unitary(gen, 3, index)))
                    self.assertTrue(is_isometry(gen_isometry(gen, 2, 3, index)))
                    self.assertTrue(is_coisometry(gen_coisometry(gen, 3, 2, index)))
                    self.assertIsInstance(is_contraction(gen_contraction(gen, 2, 3, index)), Exists)
                    self.assertTrue(is_dagger_idempotent(gen_dagger_idempotent(gen, 3, index)))

    def test_many_contractions_at_default_bounds(self):
        """Fifty contractions 3 -> 2 with seed 42 all pass their own check."""
        for rig in (RATIONALS, GAUSSIAN):
            gen = GenConfig(42, rig)
            for index in range(50):
                with self.subTest(rig=rig.name, index=index):
                    self.assertIsInstance(is_contraction(gen_contraction(gen, 3, 2, index)), Exists)

    def test_isotropic_samples(self):
        """Gaussian and GF2 samples vanish under the transpose; only GF2 ones vanish under the dagger."""
        for rig in (GAUSSIAN, GF2_RIG):
            gen = GenConfig(42, rig)
            for index in range(10):
                with self.subTest(rig=rig.name, index=index):
                    f = gen_isotropic(gen, 2 + index % 4, 1 + index % 3, index)
                    self.assertFalse(f.is_zero)
                    transposed = Matrix(rig, f.cols, f.rows, [list(col) for col in zip(*f.entries)])
                    self.assertTrue(compose(f, transposed).is_zero)
                    self.assertEqual(compose(f, dagger(f)).is_zero, rig is GF2_RIG)

    def test_no_isotropic_samples_over_ordered_rigs(self):
        """Sums of squares vanish only at zero over the rationals and integers."""
        for rig in (RATIONALS, INTEGERS):
            with self.subTest(rig=rig.name):
                self.assertIsNone(gen_isotropic(GenConfig(42, rig), 3, 2))
        self.assertIsNone(gen_isotropic(GenConfig(42, GAUSSIAN), 1, 2))

    def test_gaussian_unitaries_are_not_all_real(self):
        """Some Gaussian sample has a non-real entry."""
        gen = GenConfig(5, GAUSSIAN, max_dim=3, coeff_bound=3)
        samples = [gen_unitary(gen, 2, index) for index in range(10)]
        self.assertTrue(any(GAUSSIAN.dagger(e) != e for u in samples for row in u.entries for e in row))

    def test_shape_errors(self):
        """No isometry into a smaller space and no non-square unitary."""
        gen = GenConfig(1, RATIONALS)
        with self.assertRaises(DimensionError):
            gen_isometry(gen, 3, 2)
        with self.assertRaises(DimensionError):
            gen_in_class(gen, 'unitary', 2, 3)
        with self.assertRaises(ValueError):
            gen_in_class(gen, 'hermitian', 2, 2)

    def test_trace_problems(self):
        """Sampled trace problems respect the class and the traced bound."""
        gen = GenConfig(2, RATIONALS, max_dim=4, max_traced=2)
        for cls in ('unitary', 'isometry', 'coisometry', 'contraction'):
            for index in range(3):
                with self.subTest(cls=cls, index=index):
                    tp = gen_trace_problem(gen, cls, index)
                    self.assertLessEqual(tp.x, 2)
                    self.assertTrue(in_class(tp.f, cls))

    def test_zero_dimensional_unitary(self):
        """The unitary on 0 is the empty identity."""
        self.assertEqual(gen_unitary(GenConfig(1, RATIONALS), 0), identity(RATIONALS, 0))


if __name__ == '__main__':
    unittest.main()
