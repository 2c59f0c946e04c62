"""
Counterexample corpus: fixed inputs with hard-coded expected outcomes.

Each case builds its matrices, observes a small dict of plain values
(verdict kinds, formatted matrices, booleans) and compares it with the
expectation written down in ``CASES``. Expectations are literals; nothing
in them is computed by the package.
"""

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, Iterator, List, Optional

from .common.config import Config, default_config
from .common.errors import DaggerTraceError
from .common.verdict import Exists
from .matrix import Matrix, compose, dagger, hstack, identity, rank, sub
from .predicates import (
    complementary, is_cocontraction, is_coisometry, is_contraction, is_isometry, is_mono,
    unitary_completion,
)
from .pseudoinverse import diagonal_pinv_demo, pinv, pinv_compose, projections
from .rigs import BOOLEANS, DUAL, FREE_ISOMETRY, GF2_RIG, INTEGERS, RATIONALS, WORDS_XY
from .trace import (
    TraceProblem, dinaturality_failure_demo, image_stabilization_index, kernel_image_trace,
    pseudotrace, rational_rotation, rotation_trace,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CorpusCase:
    id: str
    rig: str
    title: str
    anchor: str
    expected: Dict[str, Any]
    run: Callable[[Config], Dict[str, Any]] = field(compare=False, repr=False)


@dataclass
class CaseReport:
    id: str
    title: str
    passed: bool
    expected: Dict[str, Any]
    observed: Dict[str, Any]
    message: str = ""

    def as_dict(self) -> dict:
        return {'id': self.id, 'title': self.title, 'passed': self.passed,
                'expected': self.expected, 'observed': self.observed, 'message': self.message}


@dataclass
class CorpusSummary:
    reports: List[CaseReport]

    @property
    def passed(self) -> int:
        return sum(1 for r in self.reports if r.passed)

    @property
    def failed(self) -> int:
        return len(self.reports) - self.passed

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def as_dict(self) -> dict:
        return {'passed': self.passed, 'failed': self.failed,
                'cases': [r.as_dict() for r in self.reports]}


def _m(rig, rows) -> Matrix:
    return Matrix.from_rows(rig, rows)


def _kind(result) -> str:
    verdict = getattr(result, 'verdict', result)
    return verdict.kind


def _value(result) -> Optional[str]:
    return str(result.value) if result.exists else None


# -- cases --------------------------------------------------------------------

def _c01(config):
    pre, post = dinaturality_failure_demo()
    return {'values': sorted([str(pre), str(post)]), 'distinct': pre != post}


def _signed_partial_permutations(n: int) -> Iterator[Matrix]:
    for k in range(n + 1):
        for rows in itertools.combinations(range(n), k):
            for cols in itertools.permutations(range(n), k):
                for signs in itertools.product((1, -1), repeat=k):
                    entries = [[0] * n for _ in range(n)]
                    for r, c, s in zip(rows, cols, signs):
                        entries[r][c] = s
                    yield _m(INTEGERS, entries)


def _c02(config):
    checked = undefined = 0
    for n in (1, 2, 3):
        for f in _signed_partial_permutations(n):
            if not isinstance(is_contraction(f, config), Exists):
                raise DaggerTraceError(f"{f} should be an integer contraction")
            for x in range(1, n + 1):
                checked += 1
                if not kernel_image_trace(TraceProblem.trace_out(f, x), config).exists:
                    undefined += 1
    two = _m(INTEGERS, [[2]])
    return {'traces_checked': checked, 'traces_undefined': undefined,
            'pinv_of_2': _kind(pinv(two, config)),
            'two_is_one_minus_contraction': sub(identity(INTEGERS, 1), _m(INTEGERS, [[-1]])) == two}


def _shift(n: int) -> Matrix:
    return _m(RATIONALS, [[1 if i == j + 1 else 0 for j in range(n)] for i in range(n)])


def _c03(config):
    return {'indices': [image_stabilization_index(_shift(n), n + 1, config) for n in range(1, 6)]}


def _c04(config):
    inclusion = _m(RATIONALS, [[1, 0], [0, 1], [0, 0]])
    complement = sub(identity(RATIONALS, 3), compose(dagger(inclusion), inclusion))
    column = _m(RATIONALS, [[0], [0], [1]])
    # Objects of dimension 1 are excluded from the subcategory.
    excluded = {1}
    completion = unitary_completion(inclusion)
    return {
        'isometry': is_isometry(inclusion),
        'missing_column_dim': rank(complement),
        'column_completion_allowed': rank(complement) not in excluded,
        'full_category_column_unitary': is_isometry(hstack(inclusion, column))
                                        and is_coisometry(hstack(inclusion, column)),
        'component_completion_dim': completion.rows,
    }


def _c05(config):
    f = _m(GF2_RIG, [[1, 1, 1]])
    return {'coisometry': is_coisometry(f), 'isometry': is_isometry(f)}


def _c06(config):
    p = _m(RATIONALS, [[1, 0], [0, 0]])
    a = _m(RATIONALS, [[1, 1], [0, 1]])
    reversed_composite = compose(pinv(a, config).matrix, pinv(p, config).matrix)
    return {
        'p_then_a': str(compose(p, a)),
        'pinv_of_composite': str(pinv(compose(p, a), config).matrix),
        'reversed_composite': str(reversed_composite),
        'compose_law': _kind(pinv_compose(p, a, config)),
    }


def _c07(config):
    p = _m(BOOLEANS, [[1, 0], [1, 0]])
    pp = pinv(p, config).matrix
    proj = projections(p, config)
    return {
        'pinv': str(pp),
        'pinv_of_square_is_square_of_pinv': pinv(compose(p, p), config).matrix == compose(pp, pp),
        'image': str(proj.image),
        'coimage': str(proj.coimage),
        'projections_commute': compose(proj.image, proj.coimage) == compose(proj.coimage, proj.image),
    }


def _c08(config):
    m = _m(INTEGERS, [[1], [1]])
    retraction = _m(INTEGERS, [[1, 0]])
    return {
        'mono': _kind(is_mono(m, config)),
        'split': compose(m, retraction) == identity(INTEGERS, 1),
        'pinv': _kind(pinv(m, config)),
        'rational_pinv': str(pinv(_m(RATIONALS, [[1], [1]]), config).matrix),
    }


def _c09(config):
    tp = TraceProblem.trace_out(_m(INTEGERS, [[1, 0], [0, -1]]), 1)
    ki = kernel_image_trace(tp, config)
    return {'pseudotrace': _kind(pseudotrace(tp, config)), 'kernel_image': _value(ki),
            'witnesses': [str(w) for w in ki.witnesses]}


def _c10(config):
    f = _m(DUAL, [[-1, 'x'], ['x', 1]])
    tp = TraceProblem.trace_out(f, 1)
    pt = pseudotrace(tp, config)
    return {'unitary': is_isometry(f) and is_coisometry(f), 'pseudotrace': _value(pt),
            'kernel_image': _kind(kernel_image_trace(tp, config))}


def _boolean_matrices(rows: int, cols: int) -> Iterator[Matrix]:
    for cells in itertools.product((0, 1), repeat=rows * cols):
        yield _m(BOOLEANS, [list(cells[i * cols:(i + 1) * cols]) for i in range(rows)])


def _c11(config):
    m = _m(BOOLEANS, [[1], [1]])
    # Anything killing m is zero, since sums of booleans only vanish termwise.
    killers = [f for k in (1, 2, 3) for f in _boolean_matrices(k, 2) if compose(m, f).is_zero]
    only_zero = all(f.is_zero for f in killers)
    # The kernel of zero would have to receive the identity on the domain.
    identity_factors = any(compose(u, m) == identity(BOOLEANS, 2) for u in _boolean_matrices(1, 2))
    return {'isometry': is_isometry(m), 'killers_are_zero': only_zero,
            'identity_factors_through_m': identity_factors}


def _c12(config):
    p = q = _m(BOOLEANS, [[1]])
    isos = [(f, g) for f in _boolean_matrices(2, 1) for g in _boolean_matrices(1, 2)
            if compose(f, g) == identity(BOOLEANS, 1) and compose(g, f) == identity(BOOLEANS, 2)]
    return {
        'sum_is_identity': (p + q) == identity(BOOLEANS, 1),
        'product_is_zero': compose(p, q).is_zero,
        'complementary': complementary(p, q),
        'one_point_iso_to_two_points': bool(isos),
    }


def _c13(config):
    x = _m(WORDS_XY, [['x']])
    y = _m(WORDS_XY, [['y']])
    x_then_y = compose(x, y)
    y_then_x = compose(y, x)
    return {
        'x_then_y': str(x_then_y),
        'y_then_x': str(y_then_x),
        'trace_x_then_y': _kind(kernel_image_trace(TraceProblem.trace_out(x_then_y, 1), config)),
        'trace_y_then_x': _kind(kernel_image_trace(TraceProblem.trace_out(y_then_x, 1), config)),
    }


def _c14(config):
    f = _m(BOOLEANS, [[1], [1]])
    return {'contraction': _kind(is_contraction(f, config)),
            'cocontraction': _kind(is_cocontraction(f, config))}


def _c15(config):
    rig = FREE_ISOMETRY
    target = rig.mul(rig.x, rig.x_dagger)
    degree = config.word_degree
    # Isometries here have one entry x^j per column and at most one per row,
    # so 1x1 factorizations reduce to monomial pairs.
    hits = 0
    for n in (1, 2, 3):
        for r, s in itertools.product(range(n), repeat=2):
            for j, k in itertools.product(range(degree + 1), repeat=2):
                iso = Matrix(rig, n, 1, [[rig.monomial((j, 0)) if i == r else rig.zero] for i in range(n)])
                coiso = Matrix(rig, 1, n, [[rig.monomial((0, k)) if i == s else rig.zero for i in range(n)]])
                if not (is_isometry(iso) and is_coisometry(coiso)):
                    raise DaggerTraceError("monomial factor outside its class")
                if compose(iso, coiso)[0, 0] == target:
                    hits += 1
    return {'element': rig.format(target), 'factorizations_found': hits}


def _c16(config):
    half, two_thirds = Fraction(1, 2), Fraction(2, 3)
    return {
        'rotations': [str(rational_rotation(half)), str(rational_rotation(two_thirds))],
        'traces': [str(rotation_trace(Fraction(0))), str(rotation_trace(half)),
                   str(rotation_trace(two_thirds))],
    }


def _c17(config):
    return {'rows': [str(diagonal_pinv_demo(n)) for n in (1, 2, 3, 4)]}


CASES: Dict[str, CorpusCase] = {case.id: case for case in [
    CorpusCase('C01', 'Rationals', "pseudotrace is not dinatural",
               'Appendix A, Definition "Pseudotrace"',
               {'values': ['[-1]', '[0]'], 'distinct': True}, _c01),
    CorpusCase('C02', 'Integers', "integer contractions are traced without pseudoinverses",
               'Appendix D, Counterexample "Trace without pseudoinverses"',
               {'traces_checked': 454, 'traces_undefined': 0, 'pinv_of_2': 'not_exists',
                'two_is_one_minus_contraction': True}, _c02),
    CorpusCase('C03', 'Rationals', "image stabilization can take arbitrarily long",
               'Appendix D, Counterexample "Non complex matrix pseudoinverse dagger additive category"',
               {'indices': [1, 2, 3, 4, 5]}, _c03),
    CorpusCase('C04', 'Rationals', "isometry that is no column of a unitary",
               'Appendix D, Counterexample "Non unitary-column isometry"',
               {'isometry': True, 'missing_column_dim': 1, 'column_completion_allowed': False,
                'full_category_column_unitary': True, 'component_completion_dim': 5}, _c04),
    CorpusCase('C05', 'GF2', "maxed-out row fails without definiteness",
               'Appendix D, Counterexample "Non maxed-out row"',
               {'coisometry': True, 'isometry': False}, _c05),
    CorpusCase('C06', 'Rationals', "pseudoinverses do not compose",
               'Appendix D, Counterexample "Non composition of pseudoinverses"',
               {'p_then_a': '[1, 0; 0, 0]', 'pinv_of_composite': '[1, 0; 0, 0]',
                'reversed_composite': '[1, -1; 0, 0]', 'compose_law': 'unknown'}, _c06),
    CorpusCase('C07', 'Booleans', "pseudoinverses compose without commuting projections",
               'Appendix D, Counterexample "Composition of pseudoinverses"',
               {'pinv': '[1, 1; 0, 0]', 'pinv_of_square_is_square_of_pinv': True,
                'image': '[1, 1; 1, 1]', 'coimage': '[1, 0; 0, 0]', 'projections_commute': False}, _c07),
    CorpusCase('C08', 'Integers', "split mono without pseudoinverse",
               'Appendix D, Counterexample "Non pseudoinvertible split mono"',
               {'mono': 'exists', 'split': True, 'pinv': 'not_exists', 'rational_pinv': '[1/2, 1/2]'}, _c08),
    CorpusCase('C09', 'Integers', "kernel-image trace without pseudotrace",
               'Appendix D, Counterexample "Non pseudotrace kernel-image trace"',
               {'pseudotrace': 'not_exists', 'kernel_image': '[1]', 'witnesses': ['[0]', '[0]']}, _c09),
    CorpusCase('C10', 'DualNumbersZ', "pseudotrace without kernel-image trace",
               'Appendix D, Counterexample "Non kernel-image trace pseudotrace"',
               {'unitary': True, 'pseudotrace': '[-1]', 'kernel_image': 'not_exists'}, _c10),
    CorpusCase('C11', 'Booleans', "isometry that is not a kernel",
               'Appendix D, Counterexample "Non kernel isometry"',
               {'isometry': True, 'killers_are_zero': True, 'identity_factors_through_m': False}, _c11),
    CorpusCase('C12', 'Booleans', "idempotents summing to 1 that are not complementary",
               'Appendix D, Counterexample "Non direct sum idempotent sum"',
               {'sum_is_identity': True, 'product_is_zero': False, 'complementary': False,
                'one_point_iso_to_two_points': False}, _c12),
    CorpusCase('C13', 'WordRigXY', "kernel-image formula is no trace without negatives",
               'Appendix D, Counterexample "Kernel-image non trace"',
               {'x_then_y': '[y x]', 'y_then_x': '[0]', 'trace_x_then_y': 'not_exists',
                'trace_y_then_x': 'exists'}, _c13),
    CorpusCase('C14', 'Booleans', "contraction that is not a cocontraction",
               'Appendix D, Counterexample "Non cocontraction contraction"',
               {'contraction': 'exists', 'cocontraction': 'not_exists'}, _c14),
    CorpusCase('C15', 'FreeIsometryRig', "coisometry-then-isometry that is no isometry-then-coisometry",
               'Appendix D, Counterexample "Non isometry then coisometry coisometry then isometry"',
               {'element': 'x x!', 'factorizations_found': 0}, _c15),
    CorpusCase('C16', 'Rationals', "the trace is not continuous",
               'Appendix B, Remark "Non-continuity of trace"',
               {'rotations': ['[3/5, -4/5; 4/5, 3/5]', '[5/13, -12/13; 12/13, 5/13]'],
                'traces': ['1', '-1', '-1']}, _c16),
    CorpusCase('C17', 'Rationals', "pseudoinverse of a column of ones",
               'Appendix C, Lemma "embeds into the endomorphism ring"',
               {'rows': ['[1]', '[1/2, 1/2]', '[1/3, 1/3, 1/3]', '[1/4, 1/4, 1/4, 1/4]']}, _c17),
]}


def run_case(case_id: str, config: Optional[Config] = None) -> CaseReport:
    """Run one case; any mismatch or error is a failed report naming the case."""
    config = config or default_config()
    case = CASES.get(case_id.upper())
    if case is None:
        raise ValueError(f"unknown corpus case '{case_id}', expected one of {', '.join(CASES)}")
    try:
        observed = case.run(config)
    except DaggerTraceError as e:
        logger.error(f"{case.id} ({case.title}) raised: {e}")
        return CaseReport(case.id, case.title, False, case.expected, {}, f"error: {e}")
    if observed == case.expected:
        logger.info(f"{case.id} passed: {case.title}")
        return CaseReport(case.id, case.title, True, case.expected, observed)
    diff = sorted(k for k in set(case.expected) | set(observed) if case.expected.get(k) != observed.get(k))
    logger.error(f"{case.id} ({case.anchor}) mismatch on {', '.join(diff)}")
    return CaseReport(case.id, case.title, False, case.expected, observed, f"mismatch on {', '.join(diff)}")


def run_all(config: Optional[Config] = None) -> CorpusSummary:
    config = config or default_config()
    logger.info(f"Running {len(CASES)} corpus cases")
    summary = CorpusSummary([run_case(case_id, config) for case_id in sorted(CASES)])
    logger.info(f"Corpus finished: {summary.passed} passed, {summary.failed} failed")
    return summary
