"""
Feedback: the kernel-image trace, the pseudotrace and related checks.

An arrow ``f: A ⊕ X -> B ⊕ X`` has components ``f_AB``, ``f_AX``,
``f_XB`` and ``f_XX``. Its kernel-image trace exists when there are
``i: A -> X`` and ``k: X -> B`` with

    i;(1 - f_XX) = f_AX        (1 - f_XX);k = f_XB

and is then ``f_AB + i;f_XB = f_AB + f_AX;k``, independent of the choice
of ``i`` and ``k``. The pseudotrace substitutes the pseudoinverse of
``1 - f_XX``: ``f_AB + f_AX;(1 - f_XX)+;f_XB``.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Tuple

from .common.config import Config
from .common.errors import DaggerTraceError, DimensionError, MissingStructureError
from .common.verdict import Exists, NotExists, Unknown, Verdict
from .linsolve import solve_left, solve_right
from .matrix import BlockPartition, Matrix, add, block, compose, compose_all, identity, oplus, sub
from .predicates import is_contraction, is_coisometry, is_isometry, is_unitary
from .pseudoinverse import pinv, projections
from .rigs import RATIONALS

logger = logging.getLogger(__name__)

KERNEL_IMAGE = 'kernel-image'
PSEUDOTRACE = 'pseudotrace'


@dataclass(frozen=True)
class TraceProblem:
    """``f: A ⊕ X -> B ⊕ X`` with the partitions ``(A, X)`` and ``(B, X)``."""

    f: Matrix
    dom_part: BlockPartition
    cod_part: BlockPartition

    def __post_init__(self):
        if len(self.dom_part) != 2 or len(self.cod_part) != 2:
            raise DimensionError("trace partitions must have exactly two summands (outer, traced)")
        self.dom_part.check(self.f.cols, "domain")
        self.cod_part.check(self.f.rows, "codomain")
        if self.dom_part.sizes[1] != self.cod_part.sizes[1]:
            raise DimensionError(f"traced summands differ: {self.dom_part.sizes[1]} in the domain, "
                                 f"{self.cod_part.sizes[1]} in the codomain")

    @classmethod
    def trace_out(cls, f: Matrix, x: int) -> "TraceProblem":
        """Trace the last ``x`` coordinates of domain and codomain."""
        return cls(f, BlockPartition([f.cols - x, x]), BlockPartition([f.rows - x, x]))

    @property
    def rig(self):
        return self.f.rig

    @property
    def a(self) -> int:
        return self.dom_part.sizes[0]

    @property
    def b(self) -> int:
        return self.cod_part.sizes[0]

    @property
    def x(self) -> int:
        return self.dom_part.sizes[1]

    def _component(self, i: int, j: int) -> Matrix:
        return block(self.f, self.cod_part, self.dom_part, i, j)

    @property
    def f_ab(self) -> Matrix:
        return self._component(0, 0)

    @property
    def f_ax(self) -> Matrix:
        return self._component(1, 0)

    @property
    def f_xb(self) -> Matrix:
        return self._component(0, 1)

    @property
    def f_xx(self) -> Matrix:
        return self._component(1, 1)


@dataclass(frozen=True)
class TraceResult:
    verdict: Verdict
    method: str
    witnesses: Optional[Tuple[Matrix, Matrix]] = None
    pinv_used: Optional[Matrix] = field(default=None, compare=False)

    @property
    def exists(self) -> bool:
        return isinstance(self.verdict, Exists)

    @property
    def value(self) -> Matrix:
        if not self.exists:
            raise DaggerTraceError(f"{self.method} trace is not defined")
        return self.verdict.witness


def one_minus_xx(tp: TraceProblem) -> Verdict:
    """``1 - f_XX``, entrywise negation checked over natural-coefficient rigs."""
    rig = tp.rig
    f_xx = tp.f_xx
    if rig.descriptor.has_negatives:
        return Exists(sub(identity(rig, tp.x), f_xx))
    for i in range(f_xx.rows):
        for j in range(f_xx.cols):
            negated = rig.negate(f_xx[i, j])
            if not isinstance(negated, Exists):
                return NotExists(f"1 - f_XX is undefined: entry ({i},{j}) = {rig.format(f_xx[i, j])} "
                                 f"has no negative in {rig.name}")
    return Exists(identity(rig, tp.x))


def kernel_image_trace(tp: TraceProblem, config: Optional[Config] = None) -> TraceResult:
    """The kernel-image trace with its witnesses ``(i, k)``."""
    m = one_minus_xx(tp)
    if not isinstance(m, Exists):
        return TraceResult(m, KERNEL_IMAGE)
    m = m.witness
    found_i = solve_right(m, tp.f_ax, config)
    if isinstance(found_i, NotExists):
        return TraceResult(NotExists(f"f_AX does not factor as i;(1 - f_XX): {found_i.certificate}"),
                           KERNEL_IMAGE)
    found_k = solve_left(m, tp.f_xb, config)
    if isinstance(found_k, NotExists):
        return TraceResult(NotExists(f"f_XB does not factor as (1 - f_XX);k: {found_k.certificate}"),
                           KERNEL_IMAGE)
    if isinstance(found_i, Unknown) or isinstance(found_k, Unknown):
        reason = found_i.reason if isinstance(found_i, Unknown) else found_k.reason
        return TraceResult(Unknown(f"factorization search inconclusive: {reason}"), KERNEL_IMAGE)
    i, k = found_i.witness, found_k.witness
    value = add(tp.f_ab, compose(i, tp.f_xb))
    if value != add(tp.f_ab, compose(tp.f_ax, k)):
        raise DaggerTraceError("the two kernel-image formulas disagree")
    return TraceResult(Exists(value), KERNEL_IMAGE, witnesses=(i, k))


def pseudotrace(tp: TraceProblem, config: Optional[Config] = None) -> TraceResult:
    rig = tp.rig
    if not rig.descriptor.has_negatives:
        raise MissingStructureError(f"{rig.name} has no negatives")
    m = sub(identity(rig, tp.x), tp.f_xx)
    result = pinv(m, config)
    if not result.exists:
        return TraceResult(result.verdict, PSEUDOTRACE)
    h = result.matrix
    value = add(tp.f_ab, compose_all(tp.f_ax, h, tp.f_xb))
    return TraceResult(Exists(value), PSEUDOTRACE, pinv_used=h)


def witness_independence(tp: TraceProblem, config: Optional[Config] = None) -> bool:
    """Perturb ``i`` and ``k`` along the kernels of ``1 - f_XX`` and recompute.

    Field rigs only; vacuous when the trace does not exist.
    """
    if not tp.rig.descriptor.is_field:
        raise MissingStructureError(f"{tp.rig.name} is not a field")
    result = kernel_image_trace(tp, config)
    if not result.exists:
        return True
    rig = tp.rig
    m = sub(identity(rig, tp.x), tp.f_xx)
    proj = projections(m, config)
    i, k = result.witnesses
    # z;m = 0 for z = w;kernel, and m;y = 0 for y = cokernel;w.
    i2 = add(i, compose(_ones(rig, tp.x, tp.a), proj.kernel))
    k2 = add(k, compose(proj.cokernel, _ones(rig, tp.b, tp.x)))
    if compose(i2, m) != tp.f_ax or compose(m, k2) != tp.f_xb:
        raise DaggerTraceError("perturbed witnesses do not solve the factorization equations")
    return (add(tp.f_ab, compose(i2, tp.f_xb)) == result.value
            and add(tp.f_ab, compose(tp.f_ax, k2)) == result.value)


def _ones(rig, rows: int, cols: int) -> Matrix:
    return Matrix(rig, rows, cols, [[rig.one] * cols for _ in range(rows)])


def coincidence_check(tp: TraceProblem, config: Optional[Config] = None) -> bool:
    """Kernel-image trace and pseudotrace agree whenever both exist."""
    ki = kernel_image_trace(tp, config)
    pt = pseudotrace(tp, config)
    if ki.exists and pt.exists:
        return ki.value == pt.value
    return True


def dinaturality_failure_demo() -> Tuple[Matrix, Matrix]:
    """Pseudotraces of ``f;(1 ⊕ g)`` and ``(1 ⊕ g);f`` for a fixed rational pair.

    Returns ``([0], [-1])``: the pseudotrace is not dinatural.
    """
    f = Matrix.from_rows(RATIONALS, [[0, 1, 0], [1, 1, 0], [0, 0, 1]])
    g = Matrix.from_rows(RATIONALS, [[1, -1], [0, 1]])
    one_g = oplus(identity(RATIONALS, 1), g)
    pre = pseudotrace(TraceProblem.trace_out(compose(f, one_g), 2))
    post = pseudotrace(TraceProblem.trace_out(compose(one_g, f), 2))
    if not (pre.exists and post.exists):
        raise DaggerTraceError("pseudotrace over the rationals must be total")
    if pre.value == post.value:
        raise DaggerTraceError("dinaturality unexpectedly holds")
    return pre.value, post.value


# -- closure under the trace -------------------------------------------------

CLASSES = ('unitary', 'isometry', 'coisometry', 'contraction')


def in_class(f: Matrix, cls: str, config: Optional[Config] = None) -> bool:
    if cls == 'unitary':
        return is_unitary(f)
    if cls == 'isometry':
        return is_isometry(f)
    if cls == 'coisometry':
        return is_coisometry(f)
    if cls == 'contraction':
        return isinstance(is_contraction(f, config), Exists)
    raise ValueError(f"unknown class '{cls}', expected one of {', '.join(CLASSES)}")


def closure_check(f: Matrix, tp: TraceProblem, cls: str, config: Optional[Config] = None) -> bool:
    """The kernel-image trace of ``f`` exists and stays in ``cls``."""
    if tp.f is not f and tp.f != f:
        raise ValueError("trace problem does not belong to f")
    result = kernel_image_trace(tp, config)
    if not result.exists:
        logger.error(f"Kernel-image trace of a {cls} is undefined: {result.verdict}")
        return False
    return in_class(result.value, cls, config)


# -- feedback as iteration ----------------------------------------------------

def sum_over_paths(tp: TraceProblem, terms: int) -> Matrix:
    """``f_AB + sum_{k < terms} f_AX;f_XX^k;f_XB``, the truncated feedback series."""
    total = tp.f_ab
    path = tp.f_ax
    for _ in range(terms):
        total = add(total, compose(path, tp.f_xb))
        path = compose(path, tp.f_xx)
    return total


def image_stabilization_index(f: Matrix, max_power: int, config: Optional[Config] = None) -> Optional[int]:
    """Least ``n`` with image(f^n) = image(f^(n+1)), or None past ``max_power``."""
    previous = projections(f.power(0), config).image
    for n in range(max_power + 1):
        current = projections(f.power(n + 1), config).image
        if current == previous:
            return n
        previous = current
    return None


# -- rotations ----------------------------------------------------------------

def rational_rotation(t: Fraction) -> Matrix:
    """The plane rotation with cosine ``(1 - t^2)/(1 + t^2)`` and sine ``2t/(1 + t^2)``."""
    t = Fraction(t)
    c = (1 - t * t) / (1 + t * t)
    s = 2 * t / (1 + t * t)
    return Matrix.from_rows(RATIONALS, [[c, -s], [s, c]])


def rotation_trace(t: Fraction) -> Fraction:
    """Kernel-image trace of the second coordinate of ``rational_rotation(t)``.

    It is 1 for ``t = 0`` and -1 for every other ``t``.
    """
    result = kernel_image_trace(TraceProblem.trace_out(rational_rotation(t), 1))
    if not result.exists:
        raise DaggerTraceError(f"rotation trace undefined at t = {t}")
    return result.value[0, 0].payload
