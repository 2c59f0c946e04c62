"""
Seeded law suites for the kernel-image trace and its companions.

Trace axioms are checked in the Kleene sense: when both sides of an
instance are defined they must be equal. One-sided definedness is counted
and logged but only fails inside a subcategory (unitaries, isometries,
coisometries, contractions) over an ordered subfield of C, where every
trace the axiom mentions has to exist.

Each suite returns a ``LawReport``; failures carry the offending inputs
formatted in the rig grammar.
"""

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional

import numpy as np

from .common.config import Config, default_config
from .common.errors import DaggerTraceError
from .common.verdict import Exists, Verdict
from .completion import ep_decompose
from .generators import (
    SAMPLE_CLASSES, GenConfig, gen_contraction, gen_dagger_idempotent, gen_in_class, gen_isometry,
    gen_isotropic, gen_matrix, gen_trace_problem,
)
from .matrix import (
    BlockPartition, Matrix, assemble, compose, dagger, identity, oplus, sub, symmetry, vstack, zero,
)
from .predicates import is_contraction, is_dagger_idempotent
from .pseudoinverse import penrose_equations, pinv, verify_penrose
from .trace import (
    TraceProblem, closure_check, coincidence_check, kernel_image_trace, rational_rotation,
    rotation_trace, witness_independence,
)

logger = logging.getLogger(__name__)

LAWS = (
    'yanking', 'left_tightening', 'right_tightening', 'sliding',
    'vanishing_1', 'vanishing_2', 'superposing', 'dagger_trace',
)


@dataclass
class LawFailure:
    law: str
    index: int
    message: str
    inputs: Dict[str, str] = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {'law': self.law, 'index': self.index, 'message': self.message, 'inputs': self.inputs}


@dataclass
class LawReport:
    suite: str
    rig: str
    cls: str
    seed: int
    cases: int
    counts: Dict[str, Dict[str, int]] = field(default_factory=dict)
    failures: List[LawFailure] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def tally(self, law: str, outcome: str) -> None:
        bucket = self.counts.setdefault(law, {'checked': 0, 'agreed': 0, 'one_sided': 0, 'undefined': 0})
        bucket[outcome] = bucket.get(outcome, 0) + 1

    def fail(self, law: str, index: int, message: str, **inputs: Matrix) -> None:
        logger.error(f"{self.suite}: {law} instance {index} failed: {message}")
        self.failures.append(LawFailure(law, index, message, {k: str(v) for k, v in inputs.items()}))

    def as_dict(self) -> dict:
        return {
            'suite': self.suite,
            'rig': self.rig,
            'class': self.cls,
            'seed': self.seed,
            'cases': self.cases,
            'passed': self.passed,
            'counts': self.counts,
            'failures': [f.as_dict() for f in self.failures],
        }


def _tr(f: Matrix, dom: List[int], cod: List[int]) -> Verdict:
    return kernel_image_trace(TraceProblem(f, BlockPartition(dom), BlockPartition(cod))).verdict


def _compare(report: LawReport, law: str, index: int, left: Verdict, right: Verdict,
             total: bool, **inputs: Matrix) -> None:
    report.tally(law, 'checked')
    if isinstance(left, Exists) and isinstance(right, Exists):
        if left.witness == right.witness:
            report.tally(law, 'agreed')
        else:
            report.fail(law, index, f"sides differ: {left.witness} vs {right.witness}", **inputs)
        return
    if total:
        report.fail(law, index, f"trace undefined where it must be total: {left.kind} / {right.kind}",
                    **inputs)
        return
    if isinstance(left, Exists) or isinstance(right, Exists):
        logger.debug(f"{law} instance {index}: one side defined ({left.kind} / {right.kind})")
        report.tally(law, 'one_sided')
    else:
        report.tally(law, 'undefined')


def _pick(rng: np.random.Generator, low: int, high: int) -> int:
    return int(rng.integers(low, high + 1))


def _chain(cls: str, rng: np.random.Generator, n: int, top: int) -> List[int]:
    """``n`` dimensions such that consecutive arrows between them can lie in ``cls``."""
    dims = [_pick(rng, 0, top) for _ in range(n)]
    if cls == 'unitary':
        return [dims[0]] * n
    if cls == 'isometry':
        return sorted(dims)
    if cls == 'coisometry':
        return sorted(dims, reverse=True)
    return dims


class _Sampler:
    """Arrows of one class, each from its own stream."""

    def __init__(self, gen: GenConfig, cls: str, index: int):
        self.gen = gen
        self.cls = cls
        self.index = index
        self.count = 0

    def __call__(self, dom: int, cod: int) -> Matrix:
        self.count += 1
        return gen_in_class(self.gen, self.cls, dom, cod, self.index * 16 + self.count)


# -- trace axioms ---------------------------------------------------------------

def _yanking(report, index, rng, arrow, top, total):
    x = _pick(rng, 0, top)
    rig = arrow.gen.rig
    s = symmetry(rig, BlockPartition([x, x]))
    _compare(report, 'yanking', index, _tr(s, [x, x], [x, x]), Exists(identity(rig, x)), total, s=s)


def _vanishing_1(report, index, rng, arrow, top, total):
    a, b = _chain(arrow.cls, rng, 2, top)
    f = arrow(a, b)
    _compare(report, 'vanishing_1', index, _tr(f, [a, 0], [b, 0]), Exists(f), total, f=f)


def _vanishing_2(report, index, rng, arrow, top, total):
    a, b = _chain(arrow.cls, rng, 2, top)
    x, y = _pick(rng, 0, top), _pick(rng, 0, top)
    f = arrow(a + x + y, b + x + y)
    whole = _tr(f, [a, x + y], [b, x + y])
    inner = _tr(f, [a + x, y], [b + x, y])
    nested = _tr(inner.witness, [a, x], [b, x]) if isinstance(inner, Exists) else inner
    _compare(report, 'vanishing_2', index, whole, nested, total, f=f)


def _superposing(report, index, rng, arrow, top, total):
    c, d = _chain(arrow.cls, rng, 2, top)
    a, b = _chain(arrow.cls, rng, 2, top)
    x = _pick(rng, 0, top)
    g, f = arrow(c, d), arrow(a + x, b + x)
    left = _tr(oplus(g, f), [c + a, x], [d + b, x])
    right = _tr(f, [a, x], [b, x]).map(lambda t: oplus(g, t))
    _compare(report, 'superposing', index, left, right, total, g=g, f=f)


def _left_tightening(report, index, rng, arrow, top, total):
    a0, a, b = _chain(arrow.cls, rng, 3, top)
    x = _pick(rng, 0, top)
    h, f = arrow(a0, a), arrow(a + x, b + x)
    rig = f.rig
    left = _tr(compose(oplus(h, identity(rig, x)), f), [a0, x], [b, x])
    right = _tr(f, [a, x], [b, x]).map(lambda t: compose(h, t))
    _compare(report, 'left_tightening', index, left, right, total, h=h, f=f)


def _right_tightening(report, index, rng, arrow, top, total):
    a, b, b1 = _chain(arrow.cls, rng, 3, top)
    x = _pick(rng, 0, top)
    f, k = arrow(a + x, b + x), arrow(b, b1)
    rig = f.rig
    left = _tr(compose(f, oplus(k, identity(rig, x))), [a, x], [b1, x])
    right = _tr(f, [a, x], [b, x]).map(lambda t: compose(t, k))
    _compare(report, 'right_tightening', index, left, right, total, f=f, k=k)


def _sliding(report, index, rng, arrow, top, total):
    """``f: A ⊕ X -> B ⊕ Y`` and ``g: Y -> X``; trace over X of f;(1 ⊕ g) against over Y of (1 ⊕ g);f."""
    a, b, x, y = (_pick(rng, 0, top) for _ in range(4))
    if arrow.cls == 'unitary':
        y, b = x, a
    elif arrow.cls == 'isometry':
        x, y = max(x, y), min(x, y)
        b = max(b, a + x - y)
    elif arrow.cls == 'coisometry':
        x, y = min(x, y), max(x, y)
        a = max(a, b + y - x)
    f, g = arrow(a + x, b + y), arrow(y, x)
    rig = f.rig
    left = _tr(compose(f, oplus(identity(rig, b), g)), [a, x], [b, x])
    right = _tr(compose(oplus(identity(rig, a), g), f), [a, y], [b, y])
    _compare(report, 'sliding', index, left, right, total, f=f, g=g)


def _dagger_trace(report, index, rng, arrow, top, total):
    a, b = _chain(arrow.cls, rng, 2, top)
    x = _pick(rng, 0, top)
    f = arrow(a + x, b + x)
    left = _tr(dagger(f), [b, x], [a, x])
    right = _tr(f, [a, x], [b, x]).map(dagger)
    _compare(report, 'dagger_trace', index, left, right, total, f=f)


_AXIOMS: Dict[str, Callable] = {
    'yanking': _yanking,
    'left_tightening': _left_tightening,
    'right_tightening': _right_tightening,
    'sliding': _sliding,
    'vanishing_1': _vanishing_1,
    'vanishing_2': _vanishing_2,
    'superposing': _superposing,
    'dagger_trace': _dagger_trace,
}


def law_suite(gen: GenConfig, cls: str = 'all', cases: int = 200,
              laws: Optional[List[str]] = None) -> LawReport:
    """Check every trace axiom on ``cases`` seeded instances inside ``cls``."""
    if cls not in SAMPLE_CLASSES:
        raise ValueError(f"unknown class '{cls}', expected one of {', '.join(SAMPLE_CLASSES)}")
    laws = list(laws or LAWS)
    total = cls != 'all' and gen.rig.descriptor.is_complex_subfield
    report = LawReport('laws', gen.rig.name, cls, gen.seed, cases)
    # Each summand stays small so composites fit in max_dim.
    top = max(1, min(gen.max_traced, gen.max_dim // 3))
    logger.info(f"Running trace laws over {gen.rig.name} in class {cls}: {cases} cases, totality "
                f"{'asserted' if total else 'not asserted'}")
    for index in range(cases):
        for law in laws:
            rng = gen.stream(index * len(LAWS) + LAWS.index(law), 'law')
            _AXIOMS[law](report, index, rng, _Sampler(gen, cls, index * len(LAWS) + LAWS.index(law)),
                         top, total)
    logger.info(f"Trace laws finished: {len(report.failures)} failures")
    return report


# -- closure, coincidence and friends -----------------------------------------------

def closure_suite(gen: GenConfig, cls: str, cases: int = 200) -> LawReport:
    """The kernel-image trace of a sampled member of ``cls`` exists and stays in ``cls``."""
    report = LawReport(f'{cls}-closure', gen.rig.name, cls, gen.seed, cases)
    for index in range(cases):
        tp = gen_trace_problem(gen, cls, index)
        report.tally('closure', 'checked')
        if closure_check(tp.f, tp, cls):
            report.tally('closure', 'agreed')
        else:
            report.fail('closure', index, f"trace over {tp.x} dims left the class", f=tp.f)
    return report


def coincidence_suite(gen: GenConfig, cases: int = 500) -> LawReport:
    """Kernel-image trace and pseudotrace agree, and witnesses do not matter."""
    report = LawReport('coincidence', gen.rig.name, 'all', gen.seed, cases)
    for index in range(cases):
        cls = 'all' if index % 2 == 0 else 'contraction'
        tp = gen_trace_problem(gen, cls, index)
        report.tally('coincidence', 'checked')
        if coincidence_check(tp):
            report.tally('coincidence', 'agreed')
        else:
            report.fail('coincidence', index, "kernel-image trace and pseudotrace differ", f=tp.f)
        if not witness_independence(tp):
            report.fail('witness_independence', index, "value depends on the chosen witnesses", f=tp.f)
    return report


def ep_suite(gen: GenConfig, cases: int = 200) -> LawReport:
    """``id - f`` is EP for endo-contractions ``f`` and its presentation reconstructs it."""
    report = LawReport('ep', gen.rig.name, 'contraction', gen.seed, cases)
    for index in range(cases):
        n = 1 + index % gen.max_dim
        f = gen_contraction(gen, n, n, index)
        g = sub(identity(gen.rig, n), f)
        report.tally('ep', 'checked')
        try:
            pres = ep_decompose(g)
        except DaggerTraceError as e:
            report.fail('ep', index, str(e), f=f)
            continue
        if pres.reconstruct() == g:
            report.tally('ep', 'agreed')
        else:
            report.fail('ep', index, "presentation does not reconstruct id - f", f=f)
    return report


def maxed_out_suite(gen: GenConfig, cases: int = 500) -> LawReport:
    """Contractions with an isometric or identity block have zero neighbouring blocks.

    Candidates are built with the conclusion sometimes violated; a violating
    candidate must be rejected by the contraction test, a conforming one
    accepted.
    """
    rig = gen.rig
    report = LawReport('maxed-out', rig.name, 'contraction', gen.seed, cases)
    top = max(1, gen.max_dim // 2)
    for index in range(cases):
        rng = gen.stream(index, 'maxed')
        a = _pick(rng, 1, top)
        b1 = _pick(rng, a, a + top)
        b2 = _pick(rng, 1, top)
        u = gen_isometry(gen, a, b1, index)
        c = gen_matrix(gen, b2, a, 3 * index) if _pick(rng, 0, 1) else zero(rig, b2, a)
        _maxed_case(report, 'isometric_column', index, vstack(u, c), [c])

        m, n = _pick(rng, 0, top), _pick(rng, 0, top)
        d = gen_contraction(gen, m, n, index)
        c12 = gen_matrix(gen, a, m, 3 * index + 1) if _pick(rng, 0, 1) else zero(rig, a, m)
        c21 = gen_matrix(gen, n, a, 3 * index + 2) if _pick(rng, 0, 1) else zero(rig, n, a)
        f = assemble([[identity(rig, a), c12], [c21, d]], BlockPartition([a, n]), BlockPartition([a, m]))
        _maxed_case(report, 'identity_corner', index, f, [c12, c21])
    return report


def _maxed_case(report: LawReport, law: str, index: int, f: Matrix, off_blocks: List[Matrix]) -> None:
    report.tally(law, 'checked')
    contraction = is_contraction(f)
    conforming = all(block.is_zero for block in off_blocks)
    if isinstance(contraction, Exists) and not conforming:
        report.fail(law, index, "contraction with nonzero blocks next to a maxed-out block", f=f)
    elif conforming and not isinstance(contraction, Exists):
        report.fail(law, index, f"block-diagonal contraction rejected: {contraction.kind}", f=f)
    else:
        report.tally(law, 'agreed')


def definiteness_suite(gen: GenConfig, cases: int = 500) -> LawReport:
    """``f;f† = 0`` forces ``f = 0``.

    Every other sample is a rank-one ``f`` with ``f^T f = 0`` where the rig
    has such columns, so only the dagger itself keeps ``f;f†`` nonzero.
    These are counted under ``isotropic``.
    """
    rig = gen.rig
    report = LawReport('definiteness', rig.name, 'all', gen.seed, cases)
    for index in range(cases):
        rows, cols = 1 + index % gen.max_dim, 1 + (index // gen.max_dim) % gen.max_dim
        f = None
        if index % 4 == 0:
            f = zero(rig, rows, cols)
        elif index % 2 == 1:
            f = gen_isotropic(gen, rows, cols, index)
            if f is not None:
                report.tally('definiteness', 'isotropic')
        if f is None:
            f = gen_matrix(gen, rows, cols, index)
        report.tally('definiteness', 'checked')
        if compose(f, dagger(f)).is_zero and not f.is_zero:
            report.fail('definiteness', index, "nonzero f with f;f† = 0", f=f)
        else:
            report.tally('definiteness', 'agreed')
    return report


def penrose_solutions(f: Matrix) -> List[Matrix]:
    """All matrices satisfying the four Penrose equations with ``f``, over a finite rig."""
    rig = f.rig
    found = []
    for cells in itertools.product(list(rig.elements()), repeat=f.rows * f.cols):
        g = Matrix(rig, f.cols, f.rows, [list(cells[i * f.rows:(i + 1) * f.rows]) for i in range(f.cols)])
        if all(penrose_equations(f, g)):
            found.append(g)
    return found


def penrose_suite(gen: GenConfig, cases: int = 200, config: Optional[Config] = None) -> LawReport:
    """Every pseudoinverse found satisfies both characterizations; over finite rigs it is unique."""
    config = config or default_config()
    rig = gen.rig
    report = LawReport('penrose', rig.name, 'all', gen.seed, cases)
    side = 3 if rig.descriptor.is_finite else gen.max_dim
    for index in range(cases):
        rows, cols = 1 + index % side, 1 + (index // side) % side
        f = gen_matrix(gen, rows, cols, index)
        result = pinv(f, config)
        report.tally('penrose', 'checked')
        if result.exists and not verify_penrose(f, result.matrix):
            report.fail('penrose', index, f"{result.method} result fails the Penrose equations", f=f)
            continue
        if rig.descriptor.is_finite and rows * cols <= 9:
            solutions = penrose_solutions(f)
            if len(solutions) > 1:
                report.fail('penrose', index, f"{len(solutions)} distinct pseudoinverses", f=f)
                continue
            if bool(solutions) != result.exists:
                report.fail('penrose', index, f"exhaustive search disagrees with {result.verdict.kind}", f=f)
                continue
        report.tally('penrose', 'agreed')
    return report


def idempotent_suite(gen: GenConfig, cases: int = 200) -> LawReport:
    report = LawReport('idempotents', gen.rig.name, 'all', gen.seed, cases)
    for index in range(cases):
        p = gen_dagger_idempotent(gen, 1 + index % gen.max_dim, index)
        report.tally('idempotent', 'checked')
        if is_dagger_idempotent(p):
            report.tally('idempotent', 'agreed')
        else:
            report.fail('idempotent', index, "sample is not a dagger idempotent", p=p)
    return report


def noncontinuity_suite(gen: GenConfig, cases: int = 20) -> LawReport:
    """Rotations by Pythagorean angles trace to -1; the identity rotation traces to 1."""
    report = LawReport('noncontinuity', 'Rationals', 'unitary', gen.seed, cases)
    rng = gen.stream(0, 'law')
    params = [Fraction(0)] + [Fraction(_pick(rng, 1, gen.coeff_bound), _pick(rng, 1, gen.coeff_bound))
                              for _ in range(cases - 1)]
    for index, t in enumerate(params):
        expected = 1 if t == 0 else -1
        value = rotation_trace(t)
        report.tally('rotation', 'checked')
        if value == expected:
            report.tally('rotation', 'agreed')
        else:
            report.fail('rotation', index, f"trace {value}, expected {expected}", f=rational_rotation(t))
    return report


SUITES = {
    'laws': lambda gen, cases, cls: law_suite(gen, cls or 'all', cases),
    'unitary-closure': lambda gen, cases, cls: closure_suite(gen, 'unitary', cases),
    'isometry-closure': lambda gen, cases, cls: closure_suite(gen, 'isometry', cases),
    'coisometry-closure': lambda gen, cases, cls: closure_suite(gen, 'coisometry', cases),
    'contraction-closure': lambda gen, cases, cls: closure_suite(gen, 'contraction', cases),
    'coincidence': lambda gen, cases, cls: coincidence_suite(gen, cases),
    'ep': lambda gen, cases, cls: ep_suite(gen, cases),
    'maxed-out': lambda gen, cases, cls: maxed_out_suite(gen, cases),
    'definiteness': lambda gen, cases, cls: definiteness_suite(gen, cases),
    'penrose': lambda gen, cases, cls: penrose_suite(gen, cases),
    'idempotents': lambda gen, cases, cls: idempotent_suite(gen, cases),
    'noncontinuity': lambda gen, cases, cls: noncontinuity_suite(gen, cases),
}


def run_suite(name: str, gen: GenConfig, cases: int, cls: Optional[str] = None) -> LawReport:
    if name not in SUITES:
        raise ValueError(f"unknown suite '{name}', expected one of {', '.join(sorted(SUITES))}")
    return SUITES[name](gen, cases, cls)
