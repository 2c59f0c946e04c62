#!/usr/bin/env python3
"""
Unit tests for the kernel-image trace and the pseudotrace
"""

import unittest
from fractions import Fraction

from hypothesis import given, settings, strategies as strat

from tests.helpers import matrices, q

from dagger_trace.common.errors import DaggerTraceError, DimensionError, MissingStructureError
from dagger_trace.common.verdict import NotExists
from dagger_trace.matrix import BlockPartition, Matrix, compose
from dagger_trace.rigs import BOOLEANS, INTEGERS, RATIONALS
from dagger_trace.trace import (
    KERNEL_IMAGE, PSEUDOTRACE, TraceProblem, closure_check, coincidence_check, dinaturality_failure_demo,
    image_stabilization_index, in_class, kernel_image_trace, pseudotrace, rational_rotation,
    rotation_trace, sum_over_paths, witness_independence,
)

# A cyclic permutation: A -> X1 -> X2 -> B with a nilpotent loop.
CYCLE = "0, 0, 1; 1, 0, 0; 0, 1, 0"


class TestTraceProblem(unittest.TestCase):
    """Partitions and components."""

    def test_components(self):
        """f_AB, f_AX, f_XB and f_XX are the four blocks of f."""
        tp = TraceProblem.trace_out(q(CYCLE), 2)
        self.assertEqual((tp.a, tp.b, tp.x), (1, 1, 2))
        self.assertEqual(tp.f_ab, q("0"))
        self.assertEqual(tp.f_ax, q("1; 0"))
        self.assertEqual(tp.f_xb, q("0, 1"))
        self.assertEqual(tp.f_xx, q("0, 0; 1, 0"))

    def test_traced_summands_must_match(self):
        """The traced summand is the same in domain and codomain."""
        with self.assertRaises(DimensionError):
            TraceProblem(q("1, 2; 3, 4"), BlockPartition([1, 1]), BlockPartition([2, 0]))
        with self.assertRaises(DimensionError):
            TraceProblem(q("1, 2; 3, 4"), BlockPartition([2]), BlockPartition([2]))


class TestKernelImageTrace(unittest.TestCase):
    """Existence, witnesses and values."""

    def test_cycle(self):
        """Feedback around the cycle connects A to B."""
        tp = TraceProblem.trace_out(q(CYCLE), 2)
        result = kernel_image_trace(tp)
        self.assertEqual(result.method, KERNEL_IMAGE)
        self.assertEqual(result.value, q("1"))
        i, k = result.witnesses
        self.assertEqual(i, q("1; 1"))
        self.assertEqual(compose(tp.f_ax, k), compose(i, tp.f_xb))

    def test_rotations(self):
        """Tracing one coordinate of a rational rotation gives 1 at angle 0 and -1 otherwise."""
        self.assertEqual(rotation_trace(Fraction(0)), 1)
        for t in (Fraction(1, 2), Fraction(-3), Fraction(2, 7)):
            with self.subTest(t=t):
                self.assertEqual(rotation_trace(t), -1)
        self.assertEqual(rational_rotation(Fraction(1, 2)), q("3/5, -4/5; 4/5, 3/5"))

    def test_undefined_trace(self):
        """[0, 1; 1, 1] has 1 - f_XX = 0 but f_AX = 1."""
        tp = TraceProblem.trace_out(q("0, 1; 1, 1"), 1)
        result = kernel_image_trace(tp)
        self.assertIsInstance(result.verdict, NotExists)
        self.assertIn("f_AX", result.verdict.certificate)
        with self.assertRaises(DaggerTraceError):
            result.value

    def test_booleans_without_negatives(self):
        """Over the Booleans 1 - f_XX exists only when f_XX is zero."""
        ok = kernel_image_trace(TraceProblem.trace_out(Matrix.from_rows(BOOLEANS, [[1, 1], [1, 0]]), 1))
        self.assertEqual(ok.value, Matrix.from_rows(BOOLEANS, [[1]]))
        bad = kernel_image_trace(TraceProblem.trace_out(Matrix.from_rows(BOOLEANS, [[1, 1], [1, 1]]), 1))
        self.assertIsInstance(bad.verdict, NotExists)
        self.assertIn("no negative", bad.verdict.certificate)

    def test_witness_independence(self):
        """Perturbing witnesses along the kernel leaves the trace alone."""
        tp = TraceProblem.trace_out(q("1, 0, 0; 0, 1, 0; 0, 0, 1"), 1)
        self.assertEqual(kernel_image_trace(tp).value, q("1, 0; 0, 1"))
        self.assertTrue(witness_independence(tp))
        with self.assertRaises(MissingStructureError):
            witness_independence(TraceProblem.trace_out(Matrix.from_rows(INTEGERS, [[1, 0], [0, 1]]), 1))

    @settings(max_examples=40, deadline=None)
    @given(matrices(RATIONALS, 3, 3), strat.integers(1, 2))
    def test_witness_independence_on_random_matrices(self, f, x):
        """The value never depends on the chosen witnesses."""
        self.assertTrue(witness_independence(TraceProblem.trace_out(f, x)))


class TestPseudotrace(unittest.TestCase):
    """The pseudotrace and where it meets the kernel-image trace."""

    def test_pseudotrace_is_total_over_fields(self):
        """Where the kernel-image trace fails the pseudotrace still answers."""
        tp = TraceProblem.trace_out(q("0, 1; 1, 1"), 1)
        result = pseudotrace(tp)
        self.assertEqual(result.method, PSEUDOTRACE)
        self.assertEqual(result.value, q("0"))
        self.assertEqual(result.pinv_used, q("0"))

    def test_integer_pseudotrace_can_fail(self):
        """diag(1, -1) over the integers: kernel-image trace 1, but (1 - f_XX)+ = 1/2."""
        tp = TraceProblem.trace_out(Matrix.from_rows(INTEGERS, [[1, 0], [0, -1]]), 1)
        self.assertEqual(kernel_image_trace(tp).value, Matrix.from_rows(INTEGERS, [[1]]))
        self.assertIsInstance(pseudotrace(tp).verdict, NotExists)

    def test_needs_negatives(self):
        """The Booleans have no pseudotrace."""
        with self.assertRaises(MissingStructureError):
            pseudotrace(TraceProblem.trace_out(Matrix.from_rows(BOOLEANS, [[1, 0], [0, 0]]), 1))

    @settings(max_examples=40, deadline=None)
    @given(matrices(RATIONALS, 3, 3), strat.integers(1, 2))
    def test_traces_coincide_when_both_exist(self, f, x):
        """Kernel-image trace and pseudotrace agree on their common domain."""
        self.assertTrue(coincidence_check(TraceProblem.trace_out(f, x)))

    def test_pseudotrace_is_not_dinatural(self):
        """Sliding 1 ⊕ g around the loop changes the pseudotrace."""
        pre, post = dinaturality_failure_demo()
        self.assertEqual(pre, q("0"))
        self.assertEqual(post, q("-1"))


class TestClosureAndIteration(unittest.TestCase):
    """Classes closed under the trace and feedback as a series."""

    def test_unitaries_are_closed(self):
        """The trace of a rotation is a unitary scalar."""
        f = rational_rotation(Fraction(1, 3))
        tp = TraceProblem.trace_out(f, 1)
        self.assertTrue(closure_check(f, tp, 'unitary'))
        self.assertTrue(closure_check(f, tp, 'contraction'))

    def test_undefined_trace_fails_closure(self):
        """No trace means the check fails."""
        f = q("0, 1; 1, 1")
        self.assertFalse(closure_check(f, TraceProblem.trace_out(f, 1), 'contraction'))

    def test_unknown_class(self):
        """Only the four classes are known."""
        with self.assertRaises(ValueError):
            in_class(q("1"), 'hermitian')

    def test_sum_over_paths(self):
        """With a nilpotent loop the series stops at the trace."""
        tp = TraceProblem.trace_out(q(CYCLE), 2)
        self.assertEqual(sum_over_paths(tp, 1), q("0"))
        self.assertEqual(sum_over_paths(tp, 2), q("1"))
        self.assertEqual(sum_over_paths(tp, 6), kernel_image_trace(tp).value)

    def test_image_stabilization(self):
        """The images of a nilpotent shift stabilise at the square."""
        self.assertEqual(image_stabilization_index(q("0, 1; 0, 0"), 5), 2)
        self.assertEqual(image_stabilization_index(q("1, 0; 0, 1"), 5), 0)
        self.assertIsNone(image_stabilization_index(q("0, 1; 0, 0"), 0))


if __name__ == '__main__':
    unittest.main()
