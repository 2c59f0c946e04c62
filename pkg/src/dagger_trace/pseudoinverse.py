"""
Moore-Penrose pseudoinverses.

``g`` is a pseudoinverse of ``f: A -> B`` when (diagram order)

    f;g;f = f,   g;f;g = g,   (f;g)† = f;g,   (g;f)† = g;f.

Over ordered subfields of C and GF2 it is computed from a full-rank
factorization; over Integers and dual numbers by lifting to the rationals
and testing membership; over Booleans from the dagger candidate or an
exhaustive search; over word rigs by a bounded search.
"""

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional, Tuple

from .common.config import Config, default_config
from .common.errors import DaggerTraceError, MissingStructureError, PreconditionError
from .common.verdict import Exists, NotExists, Unknown, Verdict
from .matrix import (
    Matrix, change_rig, compose, compose_all, dagger, identity, inverse, lift_to_rationals,
    rank, rref, sub, submatrix, zero,
)
from .linsolve import solve_right
from .predicates import is_mono
from .rigs import INTEGERS, RATIONALS

logger = logging.getLogger(__name__)

FULL_RANK = 'full-rank-factorization'
LIFT = 'fraction-field-lift'
DAGGER_CANDIDATE = 'dagger-candidate'
EXHAUSTIVE = 'exhaustive'
BOUNDED = 'bounded-degree'


@dataclass(frozen=True)
class PinvResult:
    verdict: Verdict
    method: str

    @property
    def exists(self) -> bool:
        return isinstance(self.verdict, Exists)

    @property
    def matrix(self) -> Matrix:
        if not self.exists:
            raise PreconditionError(f"no pseudoinverse: {_reason(self.verdict)}")
        return self.verdict.witness


def _reason(verdict: Verdict) -> str:
    return getattr(verdict, 'certificate', None) or getattr(verdict, 'reason', '')


def _mm(*ms: Matrix) -> Matrix:
    """Ordinary left-to-right matrix product."""
    return compose_all(*reversed(ms))


def _shapes_fit(f: Matrix, g: Matrix) -> bool:
    return f.rig is g.rig and g.rows == f.cols and g.cols == f.rows


def penrose_equations(f: Matrix, g: Matrix) -> Tuple[bool, bool, bool, bool]:
    fg = compose(f, g)
    gf = compose(g, f)
    return (compose(fg, f) == f, compose(gf, g) == g, dagger(fg) == fg, dagger(gf) == gf)


def alternative_equations(f: Matrix, g: Matrix) -> Tuple[bool, bool, bool, bool]:
    """f = f;f†;g†,  f = g†;f†;f,  g = g;g†;f†,  g = f†;g†;g."""
    fd, gd = dagger(f), dagger(g)
    return (compose_all(f, fd, gd) == f, compose_all(gd, fd, f) == f,
            compose_all(g, gd, fd) == g, compose_all(fd, gd, g) == g)


def verify_penrose(f: Matrix, g: Matrix) -> bool:
    """All four Penrose equations hold; the alternative characterization must agree."""
    if not _shapes_fit(f, g):
        return False
    first = all(penrose_equations(f, g))
    second = all(alternative_equations(f, g))
    if first != second:
        raise DaggerTraceError("the two pseudoinverse characterizations disagree")
    return first


# -- per-rig algorithms ---------------------------------------------------

class PearlCheck(NamedTuple):
    holds: bool
    rank_f: int
    rank_ffd: int
    rank_fdf: int


def pearl_condition(f: Matrix) -> PearlCheck:
    """``rank f = rank(f f†) = rank(f† f)`` over a field."""
    r = rank(f)
    r1 = rank(compose(f, dagger(f)))
    r2 = rank(compose(dagger(f), f))
    return PearlCheck(r == r1 == r2, r, r1, r2)


def _full_rank_pinv(f: Matrix) -> Verdict:
    rig = f.rig
    reduced, pivots = rref(f)
    r = len(pivots)
    if r == 0:
        return Exists(zero(rig, f.cols, f.rows))
    big_r = submatrix(reduced, range(r), range(f.cols))
    big_c = Matrix(rig, f.rows, r, [[f[i, p] for p in pivots] for i in range(f.rows)])
    gram_r = inverse(_mm(big_r, dagger(big_r)))
    gram_c = inverse(_mm(dagger(big_c), big_c))
    if not (isinstance(gram_r, Exists) and isinstance(gram_c, Exists)):
        check = pearl_condition(f)
        return NotExists(f"rank condition fails: rank f = {check.rank_f}, rank(f f†) = {check.rank_ffd}, "
                         f"rank(f† f) = {check.rank_fdf}", data=check)
    return Exists(_mm(dagger(big_r), gram_r.witness, gram_c.witness, dagger(big_c)))


def _integer_pinv(f: Matrix) -> Verdict:
    lifted = _full_rank_pinv(lift_to_rationals(f))
    if not isinstance(lifted, Exists):
        return lifted
    g = lifted.witness
    for i in range(g.rows):
        for j in range(g.cols):
            value = g[i, j].payload
            if value.denominator != 1:
                return NotExists(f"the rational pseudoinverse has entry ({i},{j}) = {value}, not an integer",
                                 data=g)
    return Exists(change_rig(g, INTEGERS, lambda e: int(e.payload)))


def _rational_part(f: Matrix, index: int) -> Matrix:
    return change_rig(f, RATIONALS, lambda e: Fraction(e.payload[index]))


def _dual_pinv(f: Matrix) -> Verdict:
    """Constant part from the rationals, x-part from the linearised Penrose equations."""
    f0, f1 = _rational_part(f, 0), _rational_part(f, 1)
    base = _full_rank_pinv(f0)
    if not isinstance(base, Exists):
        return base
    g0 = base.witness
    n, m = f.cols, f.rows
    t = Matrix.transpose

    def equations(g1: Matrix, with_constants: bool):
        """Linear part in g1 (and, if asked, the constant terms moved to the left)."""
        fg = _mm(f0, g1)
        gf = _mm(g1, f0)
        parts = [
            _mm(f0, g1, f0),
            _mm(g1, f0, g0) + _mm(g0, f0, g1) - g1,
            fg - t(fg),
            gf - t(gf),
        ]
        if with_constants:
            f1g0 = _mm(f1, g0)
            g0f1 = _mm(g0, f1)
            parts[0] = parts[0] + _mm(f1, g0, f0) + _mm(f0, g0, f1) - f1
            parts[1] = parts[1] + _mm(g0, f1, g0)
            parts[2] = parts[2] + f1g0 - t(f1g0)
            parts[3] = parts[3] + g0f1 - t(g0f1)
        return [e for part in parts for row in part.entries for e in row]

    zero_g1 = zero(RATIONALS, n, m)
    constants = equations(zero_g1, True)
    columns = []
    for a, b in itertools.product(range(n), range(m)):
        basis = Matrix(RATIONALS, n, m, [[RATIONALS.one if (i, j) == (a, b) else RATIONALS.zero
                                          for j in range(m)] for i in range(n)])
        columns.append(equations(basis, False))
    rows = len(constants)
    system = Matrix(RATIONALS, rows, n * m, [[columns[k][r] for k in range(n * m)] for r in range(rows)])
    rhs = Matrix(RATIONALS, rows, 1, [[-c] for c in constants])
    solved = solve_right(system, rhs)
    if not isinstance(solved, Exists):
        return NotExists(f"no pseudoinverse over the rational dual numbers: {_reason(solved)}")
    vec = solved.witness
    g1 = Matrix(RATIONALS, n, m, [[vec[a * m + b, 0] for b in range(m)] for a in range(n)])
    for i, j in itertools.product(range(n), range(m)):
        for part, name in ((g0, "constant"), (g1, "x")):
            value = part[i, j].payload
            if value.denominator != 1:
                return NotExists(f"{name} part of the rational pseudoinverse has entry ({i},{j}) = {value}",
                                 data=(g0, g1))
    rig = f.rig
    return Exists(Matrix(rig, n, m, [[rig.element((int(g0[i, j].payload), int(g1[i, j].payload)))
                                      for j in range(m)] for i in range(n)]))


def _candidate_search(f: Matrix, values, limit: int) -> Tuple[Optional[Matrix], int, bool]:
    """First candidate over ``values`` passing Penrose; (match, tried, complete)."""
    rig = f.rig
    n, m = f.cols, f.rows
    tried = 0
    for cells in itertools.product(values, repeat=n * m):
        tried += 1
        if tried > limit:
            return None, tried, False
        g = Matrix(rig, n, m, [list(cells[i * m:(i + 1) * m]) for i in range(n)])
        if all(penrose_equations(f, g)):
            return g, tried, True
    return None, tried, True


def _boolean_pinv(f: Matrix, config: Config) -> PinvResult:
    candidate = dagger(f)
    if verify_penrose(f, candidate):
        return PinvResult(Exists(candidate), DAGGER_CANDIDATE)
    cells = f.rows * f.cols
    if cells > config.exhaustive_cells:
        return PinvResult(Unknown(f"dagger candidate fails and {cells} cells exceed the exhaustive limit "
                                  f"{config.exhaustive_cells}"), EXHAUSTIVE)
    found, tried, _ = _candidate_search(f, list(f.rig.elements()), 2 ** cells)
    if found is not None:
        return PinvResult(Exists(found), EXHAUSTIVE)
    return PinvResult(NotExists(f"none of the {tried} candidate matrices satisfies the Penrose equations"),
                      EXHAUSTIVE)


def _word_pinv(f: Matrix, config: Config) -> PinvResult:
    candidate = dagger(f)
    if verify_penrose(f, candidate):
        return PinvResult(Exists(candidate), DAGGER_CANDIDATE)
    values = [f.rig.zero] + f.rig.monomials(config.word_degree)
    found, tried, complete = _candidate_search(f, values, config.search_limit)
    if found is not None:
        return PinvResult(Exists(found), BOUNDED)
    if not complete:
        logger.warning(f"Pseudoinverse search over {f.rig.name} stopped after {config.search_limit} candidates")
    return PinvResult(Unknown(f"no pseudoinverse among {tried} candidates with words of degree "
                              f"<= {config.word_degree}"), BOUNDED)


def pinv(f: Matrix, config: Optional[Config] = None) -> PinvResult:
    """Moore-Penrose pseudoinverse of ``f``, dispatched on the rig."""
    config = config or default_config()
    rig = f.rig
    desc = rig.descriptor
    if not desc.has_dagger:
        raise MissingStructureError(f"{rig.name} has no dagger, pseudoinverses are undefined")
    if desc.is_field:
        result = PinvResult(_full_rank_pinv(f), FULL_RANK)
    elif rig is INTEGERS:
        result = PinvResult(_integer_pinv(f), LIFT)
    elif rig.name == 'DualNumbersZ':
        result = PinvResult(_dual_pinv(f), LIFT)
    elif rig.name == 'Booleans':
        result = _boolean_pinv(f, config)
    else:
        result = _word_pinv(f, config)
    if result.exists and not verify_penrose(f, result.matrix):
        raise DaggerTraceError(f"{result.method} produced a matrix failing the Penrose equations")
    logger.debug(f"pinv over {rig.name} {f.rows}x{f.cols}: {result.verdict.kind} via {result.method}")
    return result


# -- derived notions --------------------------------------------------------

def is_ep(f: Matrix, config: Optional[Config] = None) -> Verdict:
    """Pseudoinvertible with ``f;f+ == f+;f``."""
    if not f.is_square:
        return NotExists(f"{f.rows}x{f.cols} is not an endomorphism")
    result = pinv(f, config)
    if not result.exists:
        return result.verdict
    g = result.matrix
    coimage, image = compose(f, g), compose(g, f)
    if coimage != image:
        return NotExists(f"f;f+ = {coimage} differs from f+;f = {image}", data=(coimage, image))
    return Exists(g)


class Projections(NamedTuple):
    coimage: Matrix
    image: Matrix
    kernel: Optional[Matrix]
    cokernel: Optional[Matrix]


def projections(f: Matrix, config: Optional[Config] = None) -> Projections:
    """Coimage ``f;f+``, image ``f+;f`` and, with negatives, their complements."""
    g = pinv(f, config).matrix
    coimage, image = compose(f, g), compose(g, f)
    if f.rig.descriptor.has_negatives:
        return Projections(coimage, image, sub(identity(f.rig, f.cols), coimage),
                           sub(identity(f.rig, f.rows), image))
    return Projections(coimage, image, None, None)


def pinv_compose(f: Matrix, g: Matrix, config: Optional[Config] = None) -> Verdict:
    """``(f;g)+`` as ``g+;f+`` when the image of f equals the coimage of g.

    Without that condition the candidate is returned inside Unknown along
    with whether it passes the Penrose equations.
    """
    pf, pg = pinv(f, config), pinv(g, config)
    if not pf.exists:
        return pf.verdict
    if not pg.exists:
        return pg.verdict
    fp, gp = pf.matrix, pg.matrix
    candidate = compose(gp, fp)
    fg = compose(f, g)
    if compose(fp, f) == compose(g, gp):
        if not verify_penrose(fg, candidate):
            raise DaggerTraceError("pseudoinverse composition law failed under its sufficient condition")
        return Exists(candidate)
    return Unknown("image of f differs from coimage of g; the sufficient condition does not apply",
                   candidate=(candidate, verify_penrose(fg, candidate)))


def split_mono_retraction(m: Matrix, config: Optional[Config] = None) -> Verdict:
    """The pseudoinverse of a mono as its retraction."""
    mono = is_mono(m, config)
    if isinstance(mono, NotExists):
        raise PreconditionError(f"not a mono: {mono.certificate}")
    result = pinv(m, config)
    if not result.exists:
        return result.verdict
    g = result.matrix
    if compose(m, g) != identity(m.rig, m.cols):
        raise DaggerTraceError("pseudoinverse of a mono is not a retraction")
    return Exists(g)


def diagonal_pinv_demo(n: int) -> Matrix:
    """Pseudoinverse of the column of ``n`` ones over the rationals: the row of ``1/n``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    column = Matrix.column(RATIONALS, [1] * n)
    g = pinv(column).matrix
    if g != Matrix.row(RATIONALS, [Fraction(1, n)] * n):
        raise DaggerTraceError(f"diagonal pseudoinverse for n={n} is {g}")
    return g
