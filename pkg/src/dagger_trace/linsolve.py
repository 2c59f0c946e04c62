"""
Linear systems over each rig.

``solve_right(M, B)`` looks for ``i`` with ``compose(i, M) == B`` (the
ordinary product ``M i = B``); ``solve_left(M, B)`` looks for ``k`` with
``compose(M, k) == B`` (``k M = B``).

Fields use elimination, Integers a unimodular diagonalisation, dual numbers
a stacked integer system, Booleans residuation, and word rigs a bounded
search over low-degree words.
"""

import logging
from typing import List, Optional, Tuple

import numpy as np

from .common.config import Config, default_config
from .common.errors import DimensionError, RigMismatchError
from .common.verdict import Exists, NotExists, Unknown, Verdict
from .matrix import Matrix, hstack, identity, rref, submatrix
from .rigs import INTEGERS, RigElement

logger = logging.getLogger(__name__)


# -- integer diagonalisation ---------------------------------------------

def exgcd(a: int, b: int) -> np.ndarray:
    """A 2x2 integer matrix ``E`` of determinant 1 with ``E @ [a, b] = [gcd(a, b), 0]``.

    If ``a`` divides ``b`` then ``E[0, 1] == 0``.
    """
    a_sign = -1 if a < 0 else 1
    b_sign = -1 if b < 0 else 1
    a, b = a * a_sign, b * b_sign
    # Euclid on the column [a, b], tracking row operations in the augmented part.
    m = np.array([[b, 0, 1], [a, 1, 0]], dtype=object)
    while m[1, 0] != 0:
        q = m[0, 0] // m[1, 0]
        m[0] -= q * m[1]
        m = m[::-1]
    g = m[0, 0]
    e = m[:, 1:] * np.array([a_sign, b_sign], dtype=object)
    if g != 0:
        e[1] = [-b_sign * b // g, a_sign * a // g]
    return e


def _inv_det1(e: np.ndarray) -> np.ndarray:
    return np.array([[e[1, 1], -e[0, 1]], [-e[1, 0], e[0, 0]]], dtype=object)


def diagonal_form(a: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Unimodular ``S_inv, T_inv`` and diagonal ``D`` with ``S_inv @ A @ T_inv == D``.

    Returns ``(D, S_inv, T, T_inv)``; ``A == S @ D @ T``. The diagonal is not
    normalised for divisibility.
    """
    d = np.array(a, dtype=object).reshape(a.shape)
    rows, cols = d.shape
    s_inv = np.eye(rows, dtype=object)
    t = np.eye(cols, dtype=object)
    t_inv = np.eye(cols, dtype=object)

    def clear_col(i: int) -> bool:
        if all(d[k, i] == 0 for k in range(i + 1, rows)):
            return False
        for k in range(i + 1, rows):
            e = exgcd(d[i, i], d[k, i])
            d[[i, k]] = e.dot(d[[i, k]])
            s_inv[[i, k]] = e.dot(s_inv[[i, k]])
        return True

    def clear_row(i: int) -> bool:
        if all(d[i, k] == 0 for k in range(i + 1, cols)):
            return False
        for k in range(i + 1, cols):
            e = exgcd(d[i, i], d[i, k]).T
            d[:, [i, k]] = d[:, [i, k]].dot(e)
            t[[i, k]] = _inv_det1(e).dot(t[[i, k]])
            t_inv[:, [i, k]] = t_inv[:, [i, k]].dot(e)
        return True

    for i in range(min(rows, cols)):
        clear_col(i)
        while clear_row(i) and clear_col(i):
            pass
    return d, s_inv, t, t_inv


def solve_integer_system(m: List[List[int]], b: List[List[int]], cols: int) -> Verdict:
    """Integer ``X`` with ``m @ X == b``; ``cols`` is the column count of ``m``."""
    rows = len(m)
    width = len(b[0]) if b else 0
    if rows == 0:
        return Exists(np.zeros((cols, width), dtype=object))
    a = np.array(m, dtype=object).reshape(rows, cols)
    rhs = np.array(b, dtype=object).reshape(rows, width)
    d, s_inv, _, t_inv = diagonal_form(a)
    c = s_inv.dot(rhs) if width else np.zeros((rows, 0), dtype=object)
    y = np.zeros((cols, width), dtype=object)
    for i in range(rows):
        pivot = d[i, i] if i < cols else 0
        for col in range(width):
            value = c[i, col]
            if pivot == 0:
                if value != 0:
                    return NotExists(f"transformed equation {i} reads 0 = {value} in column {col}",
                                     data={'row': i, 'column': col})
            elif value % pivot != 0:
                return NotExists(f"transformed equation {i} needs {value}/{pivot} to be an integer",
                                 data={'row': i, 'column': col})
            else:
                y[i, col] = value // pivot
    return Exists(t_inv.dot(y) if cols else y)


# -- per-rig standard solvers (M X = B) ----------------------------------

def _solve_field(m: Matrix, b: Matrix) -> Verdict:
    rig = m.rig
    reduced, pivots = rref(hstack(m, b))
    for r, p in enumerate(pivots):
        if p >= m.cols:
            return NotExists(f"inconsistent system: row {r} reduces to 0 = nonzero in column {p - m.cols}",
                             data={'row': r, 'column': p - m.cols})
    x = [[rig.zero] * b.cols for _ in range(m.cols)]
    for r, p in enumerate(pivots):
        for col in range(b.cols):
            x[p][col] = reduced[r, m.cols + col]
    return Exists(Matrix(rig, m.cols, b.cols, x))


def _solve_integers(m: Matrix, b: Matrix) -> Verdict:
    verdict = solve_integer_system([[e.payload for e in row] for row in m.entries],
                                   [[e.payload for e in row] for row in b.entries], m.cols)
    return verdict.map(lambda y: Matrix(INTEGERS, m.cols, b.cols,
                                        [[INTEGERS.element(int(y[i, j])) for j in range(b.cols)]
                                         for i in range(m.cols)]))


def _solve_dual(m: Matrix, b: Matrix) -> Verdict:
    # (M0 + M1 x)(X0 + X1 x) = M0 X0 + (M0 X1 + M1 X0) x
    r, c = m.shape
    m0 = [[e.payload[0] for e in row] for row in m.entries]
    m1 = [[e.payload[1] for e in row] for row in m.entries]
    stacked = [m0[i] + [0] * c for i in range(r)] + [m1[i] + m0[i] for i in range(r)]
    rhs = ([[e.payload[0] for e in row] for row in b.entries]
           + [[e.payload[1] for e in row] for row in b.entries])
    verdict = solve_integer_system(stacked, rhs, 2 * c)
    if isinstance(verdict, NotExists):
        return NotExists(f"no solution over DualNumbersZ: {verdict.certificate}", data=verdict.data)
    rig = m.rig
    y = verdict.witness
    return Exists(Matrix(rig, c, b.cols, [[rig.element((int(y[i, j]), int(y[c + i, j])))
                                           for j in range(b.cols)] for i in range(c)]))


def _solve_booleans(m: Matrix, b: Matrix) -> Verdict:
    rig = m.rig
    # Greatest candidate: x[j][c] = AND_r (M[r][j] -> B[r][c]).
    x = [[rig.element(all((not m[r, j].payload) or b[r, col].payload for r in range(m.rows)))
          for col in range(b.cols)] for j in range(m.cols)]
    candidate = Matrix(rig, m.cols, b.cols, x)
    for r in range(m.rows):
        for col in range(b.cols):
            got = any(m[r, j].payload and x[j][col].payload for j in range(m.cols))
            if got != b[r, col].payload:
                return NotExists(f"greatest candidate misses entry ({r},{col}); no solution exists",
                                 data={'row': r, 'column': col})
    return Exists(candidate, note="greatest solution")


# -- word rigs --------------------------------------------------------------

def _dominated(a: RigElement, b: RigElement) -> bool:
    bound = dict(b.payload)
    return all(n <= bound.get(key, 0) for key, n in a.payload)


def _search_unknowns(n: int, equations, pool: List[RigElement], budget: List[int]) -> Optional[List[RigElement]]:
    """Backtracking assignment of ``n`` unknowns from ``pool``.

    Each equation is ``(terms, target)`` where ``terms`` is a list of
    ``(index, coefficient, coefficient_on_left)``.
    """
    rig = pool[0].rig

    def value(eq, assignment):
        terms, _ = eq
        acc = rig.zero
        for idx, coeff, on_left in terms:
            if idx < len(assignment):
                v = assignment[idx]
                acc = rig.add(acc, rig.mul(coeff, v) if on_left else rig.mul(v, coeff))
        return acc

    def walk(assignment):
        if len(assignment) == n:
            if all(value(eq, assignment) == eq[1] for eq in equations):
                return assignment
            return None
        for candidate in pool:
            budget[0] -= 1
            if budget[0] < 0:
                return None
            trial = assignment + [candidate]
            if all(_dominated(value(eq, trial), eq[1]) for eq in equations):
                found = walk(trial)
                if found is not None:
                    return found
        return None

    return walk([])


def _word_bound(m: Matrix, b: Matrix, config: Config) -> int:
    degrees = [m.rig.degree(e) for mat in (m, b) for row in mat.entries for e in row]
    return config.word_degree + max(degrees, default=0)


def _solve_words(m: Matrix, b: Matrix, config: Config, left: bool) -> Verdict:
    rig = m.rig
    degree = _word_bound(m, b, config)
    pool = [rig.zero] + rig.monomials(degree)
    budget = [config.search_limit]
    if left:
        # k M = B, one row of k at a time.
        out_rows, n = b.rows, m.rows
        solutions = []
        for r in range(out_rows):
            eqs = [([(j, m[j, c], False) for j in range(n)], b[r, c]) for c in range(m.cols)]
            found = _search_unknowns(n, eqs, pool, budget)
            if found is None:
                break
            solutions.append(found)
        else:
            return Exists(Matrix(rig, out_rows, n, solutions))
    else:
        # M i = B, one column of i at a time.
        n = m.cols
        columns = []
        for c in range(b.cols):
            eqs = [([(j, m[r, j], True) for j in range(n)], b[r, c]) for r in range(m.rows)]
            found = _search_unknowns(n, eqs, pool, budget)
            if found is None:
                break
            columns.append(found)
        else:
            return Exists(Matrix(rig, n, b.cols, [[columns[c][j] for c in range(b.cols)] for j in range(n)]))
    if budget[0] < 0:
        logger.warning(f"Word solver over {rig.name} exceeded {config.search_limit} nodes")
        return Unknown(f"search exceeded {config.search_limit} nodes")
    return Unknown(f"no solution with words of degree <= {degree}")


# -- public ---------------------------------------------------------------

def _solve_standard(m: Matrix, b: Matrix) -> Verdict:
    rig = m.rig
    if rig.descriptor.is_field:
        return _solve_field(m, b)
    if rig is INTEGERS:
        return _solve_integers(m, b)
    if rig.name == 'DualNumbersZ':
        return _solve_dual(m, b)
    if rig.name == 'Booleans':
        return _solve_booleans(m, b)
    raise RigMismatchError(f"no standard solver over {rig.name}")


def _check(m: Matrix, b: Matrix) -> None:
    if m.rig is not b.rig:
        raise RigMismatchError(f"matrices over {m.rig.name} and {b.rig.name}")


def solve_right(m: Matrix, b: Matrix, config: Optional[Config] = None) -> Verdict:
    """Find ``i`` with ``compose(i, m) == b``."""
    _check(m, b)
    if m.rows != b.rows:
        raise DimensionError(f"solve_right: {m.rows} rows in M but {b.rows} in B")
    if m == identity(m.rig, m.rows):
        return Exists(b, note="identity")
    if m.rig.descriptor.natural_coefficients and m.rig.name != 'Booleans':
        return _solve_words(m, b, config or default_config(), left=False)
    return _solve_standard(m, b)


def solve_left(m: Matrix, b: Matrix, config: Optional[Config] = None) -> Verdict:
    """Find ``k`` with ``compose(m, k) == b``."""
    _check(m, b)
    if m.cols != b.cols:
        raise DimensionError(f"solve_left: {m.cols} columns in M but {b.cols} in B")
    if m == identity(m.rig, m.rows):
        return Exists(b, note="identity")
    if m.rig.descriptor.natural_coefficients and m.rig.name != 'Booleans':
        return _solve_words(m, b, config or default_config(), left=True)
    return _solve_standard(m.transpose(), b.transpose()).map(Matrix.transpose)


def in_column_space(m: Matrix, v: Matrix) -> bool:
    return isinstance(solve_right(m, v), Exists)


def column(m: Matrix, j: int) -> Matrix:
    return submatrix(m, range(m.rows), range(j, j + 1))
