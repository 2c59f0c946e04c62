"""
Positivity and the order ``f <= g`` on endomorphisms.

A square matrix ``a`` is positive when ``a = K† K`` for some ``K``; in
diagram order that is ``compose(K, dagger(K))``. ``f <= g`` holds when
``g = f + a`` for a positive ``a``.

Over ordered subfields of C the question is decided by a pivoted exact
LDL† factorization; each nonnegative pivot is written as a sum of four
rational squares, which turns the factorization into a witness ``K``.
Finite rigs are decided by closing the positive cone under sums. Other
rigs fall back to a bounded witness search.
"""

import itertools
import logging
from fractions import Fraction
from math import isqrt
from typing import Callable, List, Optional, Sequence, Tuple

from sympy.solvers.diophantine.diophantine import sum_of_four_squares

from .common.config import Config, default_config
from .common.errors import DaggerTraceError, DimensionError, MissingStructureError, RigMismatchError
from .common.verdict import Exists, NotExists, Unknown, Verdict
from .matrix import Matrix, compose, dagger, identity, sub, zero
from .rigs import INTEGERS, RATIONALS, Rig, RigElement

logger = logging.getLogger(__name__)


def real_value(rig: Rig, a: RigElement) -> Fraction:
    """A self-adjoint element of an ordered subfield of C as a Fraction."""
    if rig.name == 'GaussianRationals':
        re, im = a.payload
        if im != 0:
            raise MissingStructureError(f"{rig.format(a)} is not real")
        return re
    return Fraction(a.payload)


def four_squares(q: Fraction) -> List[Fraction]:
    """Nonzero rationals whose squares sum to ``q >= 0``."""
    if q < 0:
        raise ValueError(f"{q} is negative")
    num, den = q.numerator, q.denominator
    return [Fraction(s, den) for s in sum_of_four_squares(num * den) if s]


def outer(row: Sequence[RigElement]) -> Matrix:
    """The positive matrix ``v† v`` of a row vector ``v``."""
    rig = row[0].rig
    v = Matrix(rig, 1, len(row), [list(row)])
    return compose(v, dagger(v))


def _witness(rig: Rig, rows: List[List[RigElement]], n: int) -> Matrix:
    return Matrix(rig, len(rows), n, rows)


def _check_square(f: Matrix, g: Matrix) -> None:
    if f.rig is not g.rig:
        raise RigMismatchError(f"matrices over {f.rig.name} and {g.rig.name}")
    if not (f.is_square and g.is_square and f.shape == g.shape):
        raise DimensionError(f"order needs square matrices of equal size, got {f.shape} and {g.shape}")


# -- ordered subfields of C ------------------------------------------------

def ldl_factor(d: Matrix) -> Verdict:
    """Pivoted exact LDL† of a self-adjoint matrix.

    Returns Exists([(pivot, column), ...]) with every pivot positive and
    ``d = sum(column column† / pivot)``, or NotExists when ``d`` is not
    positive semidefinite.
    """
    rig = d.rig
    n = d.rows
    if d != dagger(d):
        return NotExists("matrix is not self-adjoint")
    a = [list(row) for row in d.entries]
    remaining = list(range(n))
    factors: List[Tuple[Fraction, List[RigElement]]] = []
    while remaining:
        r = next((i for i in remaining if not a[i][i].is_zero), None)
        if r is None:
            for i, j in itertools.product(remaining, remaining):
                if not a[i][j].is_zero:
                    return NotExists(f"zero diagonal entry {i} with nonzero entry ({i},{j})",
                                     data={'index': i})
            break
        pivot = real_value(rig, a[r][r])
        if pivot < 0:
            return NotExists(f"negative pivot {pivot} at index {r}", data={'index': r, 'pivot': pivot})
        remaining.remove(r)
        # Eliminated rows and columns are already zero.
        column = [a[i][r] if i == r or i in remaining else rig.zero for i in range(n)]
        pivot_row = [a[r][j] for j in range(n)]
        inv = rig.element(1 / pivot)
        for i in remaining:
            for j in remaining:
                a[i][j] = rig.sub(a[i][j], rig.mul(rig.mul(column[i], inv), pivot_row[j]))
        for k in range(n):
            a[r][k] = a[k][r] = rig.zero
        factors.append((pivot, column))
    return Exists(factors)


def _positive_in_subfield(d: Matrix) -> Verdict:
    rig = d.rig
    factored = ldl_factor(d)
    if not isinstance(factored, Exists):
        return factored
    rows = []
    for pivot, column in factored.witness:
        for s in four_squares(pivot):
            scale = rig.element(s / pivot)
            rows.append([rig.mul(scale, rig.dagger(c)) for c in column])
    witness = _witness(rig, rows, d.rows)
    if compose(witness, dagger(witness)) != d:
        raise DaggerTraceError("LDL witness does not reproduce the matrix")
    return Exists(witness, note=f"LDL with {len(factored.witness)} pivots")


# -- finite rigs ----------------------------------------------------------

def _closure_search(base: Matrix, target: Matrix, limit: int) -> Verdict:
    """Breadth-first closure of ``base + (sums of v† v)`` looking for ``target``."""
    rig = base.rig
    n = base.rows
    generators = []
    for values in itertools.product(list(rig.elements()), repeat=n):
        if any(not v.is_zero for v in values):
            generators.append((list(values), outer(values)))
    parents = {base: None}
    frontier = [base]
    while frontier:
        next_frontier = []
        for acc in frontier:
            if acc == target:
                rows = []
                node = acc
                while parents[node] is not None:
                    node, vec = parents[node]
                    rows.append(vec)
                return Exists(_witness(rig, rows, n), note=f"closure search over {len(parents)} sums")
            for vec, gen in generators:
                nxt = acc + gen
                if nxt not in parents:
                    parents[nxt] = (acc, vec)
                    next_frontier.append(nxt)
                    if len(parents) > limit:
                        logger.warning(f"Positivity closure over {rig.name} exceeded {limit} states")
                        return Unknown(f"closure search exceeded {limit} states")
        frontier = next_frontier
    return NotExists(f"no sum of outer products reaches the target ({len(parents)} sums enumerated)")


# -- bounded search -------------------------------------------------------

class _Exhausted(Exception):
    pass


def _bounded_search(base: Matrix, target: Matrix, pool: List[List[RigElement]],
                    admissible: Callable[[Matrix], bool], depth_cap: int, limit: int) -> Optional[List]:
    """Depth-first search for rows ``v`` from ``pool`` with ``base + sum v† v = target``.

    Returns the rows, None when the space is exhausted, raises _Exhausted past ``limit`` nodes.
    """
    outers = [outer(v) for v in pool]
    nodes = 0

    def dfs(acc: Matrix, start: int, rows: List) -> Optional[List]:
        nonlocal nodes
        if acc == target:
            return rows
        if len(rows) >= depth_cap:
            return None
        for idx in range(start, len(pool)):
            nodes += 1
            if nodes > limit:
                raise _Exhausted()
            nxt = acc + outers[idx]
            if not admissible(nxt):
                continue
            found = dfs(nxt, idx, rows + [pool[idx]])
            if found is not None:
                return found
        return None

    return dfs(base, 0, [])


def _first_nonzero_positive(values: Sequence[int]) -> bool:
    for v in values:
        if v:
            return v > 0
    return False


def _positive_over_integers(d: Matrix, limit: int) -> Verdict:
    n = d.rows
    lifted = Matrix(RATIONALS, n, n, [[RATIONALS.element(e.payload) for e in row] for row in d.entries])
    rational = ldl_factor(lifted)
    if not isinstance(rational, Exists):
        return NotExists(f"not positive over the rationals: {rational.certificate}")
    diag = [d[i, i].payload for i in range(n)]
    ranges = [range(-isqrt(c), isqrt(c) + 1) for c in diag]
    pool = [[INTEGERS.element(v) for v in values] for values in itertools.product(*ranges)
            if _first_nonzero_positive(values)]

    def admissible(acc: Matrix) -> bool:
        return all(acc[i, i].payload <= diag[i] for i in range(n))

    try:
        rows = _bounded_search(zero(INTEGERS, n, n), d, pool, admissible, sum(diag), limit)
    except _Exhausted:
        return Unknown(f"integer witness search exceeded {limit} nodes")
    if rows is None:
        return NotExists("no integer matrix K has K† K equal to the difference (exhaustive over bounded rows)")
    return Exists(_witness(INTEGERS, rows, n))


def _dual_constant(d: Matrix) -> Matrix:
    return Matrix(INTEGERS, d.rows, d.cols, [[INTEGERS.element(e.payload[0]) for e in row] for row in d.entries])


def _positive_over_dual(d: Matrix, config: Config) -> Verdict:
    n = d.rows
    constant = _positive_over_integers(_dual_constant(d), config.search_limit)
    if isinstance(constant, NotExists):
        return NotExists(f"constant part: {constant.certificate}")
    diag = [d[i, i].payload[0] for i in range(n)]
    elements = [e for e in d.rig.small_elements(2) if e.payload[0] ** 2 <= max(diag + [0])]
    pool = [list(values) for values in itertools.product(elements, repeat=n)
            if any(not v.is_zero for v in values)]

    def admissible(acc: Matrix) -> bool:
        return all(acc[i, i].payload[0] <= diag[i] for i in range(n))

    try:
        rows = _bounded_search(zero(d.rig, n, n), d, pool, admissible, sum(diag), config.search_limit)
    except _Exhausted:
        rows = None
    if rows is None:
        return Unknown("no dual-number witness with coefficients in [-2, 2]")
    return Exists(_witness(d.rig, rows, n))


def _dominated(a: RigElement, b: RigElement) -> bool:
    """Coefficient-wise ``a <= b`` for natural-coefficient word sums."""
    bound = dict(b.payload)
    return all(n <= bound.get(key, 0) for key, n in a.payload)


def _search_words(f: Matrix, g: Matrix, config: Config) -> Verdict:
    rig = f.rig
    n = f.rows
    for i, j in itertools.product(range(n), range(n)):
        if not _dominated(f[i, j], g[i, j]):
            return NotExists(f"entry ({i},{j}) of the smaller side is not a sub-sum of the larger side")
    elements = rig.small_elements(config.word_degree)
    pool = [list(values) for values in itertools.product(elements, repeat=n)
            if any(not v.is_zero for v in values)]
    mass = sum(c for row in g.entries for e in row for _, c in e.payload)

    def admissible(acc: Matrix) -> bool:
        return all(_dominated(acc[i, j], g[i, j]) for i in range(n) for j in range(n))

    try:
        rows = _bounded_search(f, g, pool, admissible, mass, config.search_limit)
    except _Exhausted:
        logger.warning(f"Word positivity search over {rig.name} exceeded {config.search_limit} nodes")
        return Unknown(f"witness search exceeded {config.search_limit} nodes")
    if rows is None:
        return Unknown(f"no witness with words of degree <= {config.word_degree}")
    return Exists(_witness(rig, rows, n))


# -- public ---------------------------------------------------------------

def leq_positive(f: Matrix, g: Matrix, config: Optional[Config] = None) -> Verdict:
    """Decide ``f <= g``; Exists carries ``K`` with ``g = f + K† K``."""
    config = config or default_config()
    _check_square(f, g)
    rig = f.rig
    desc = rig.descriptor
    if not desc.has_dagger:
        raise MissingStructureError(f"{rig.name} has no dagger")
    if f == g:
        return Exists(zero(rig, 0, f.rows), note="equal sides")
    if desc.is_complex_subfield:
        return _positive_in_subfield(sub(g, f))
    if desc.is_finite:
        if desc.has_negatives:
            d = sub(g, f)
            return _closure_search(zero(rig, f.rows, f.rows), d, config.search_limit)
        return _closure_search(f, g, config.search_limit)
    if rig is INTEGERS:
        return _positive_over_integers(sub(g, f), config.search_limit)
    if rig.name == 'DualNumbersZ':
        return _positive_over_dual(sub(g, f), config)
    return _search_words(f, g, config)


def is_positive(a: Matrix, config: Optional[Config] = None) -> Verdict:
    return leq_positive(zero(a.rig, a.rows, a.cols), a, config)


def leq_identity(a: Matrix, config: Optional[Config] = None) -> Verdict:
    return leq_positive(a, identity(a.rig, a.rows), config)
