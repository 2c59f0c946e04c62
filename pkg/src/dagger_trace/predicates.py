"""
Arrow predicates of the matrix category: isometries, contractions,
unitary completions, complementary idempotents and monos.
"""

import itertools
import logging
from typing import Optional

from .common.config import Config, default_config
from .common.errors import DaggerTraceError, MissingStructureError, PreconditionError
from .common.verdict import Exists, NotExists, Unknown, Verdict
from .matrix import (
    BlockPartition, Matrix, add, assemble, compose, dagger, identity, lift_to_rationals,
    rank, sub, zero,
)
from .positivity import leq_positive
from .rigs import INTEGERS, RATIONALS

logger = logging.getLogger(__name__)


def is_isometry(f: Matrix) -> bool:
    """``f`` then ``f†`` is the identity on the domain."""
    return compose(f, dagger(f)) == identity(f.rig, f.cols)


def is_coisometry(f: Matrix) -> bool:
    return compose(dagger(f), f) == identity(f.rig, f.rows)


def is_unitary(f: Matrix) -> bool:
    return f.is_square and is_isometry(f) and is_coisometry(f)


def is_self_adjoint(f: Matrix) -> bool:
    return f.is_square and f == dagger(f)


def is_idempotent(f: Matrix) -> bool:
    return f.is_square and compose(f, f) == f


def is_dagger_idempotent(f: Matrix) -> bool:
    return is_self_adjoint(f) and compose(f, f) == f


# -- contractions ---------------------------------------------------------

def _partial_signed_permutation(f: Matrix) -> Optional[str]:
    """None when every entry is 0 or a unit of absolute value one, with at most
    one nonzero per row and per column; otherwise the reason it is not."""
    for i in range(f.rows):
        for j in range(f.cols):
            e = f[i, j]
            if e.is_zero:
                continue
            if f.rig is INTEGERS and e.payload not in (1, -1):
                return f"entry ({i},{j}) = {e.payload} is not in {{-1, 0, 1}}"
            if f.rig is not INTEGERS and not e.is_one:
                return f"entry ({i},{j}) is not 0 or 1"
    for i in range(f.rows):
        if sum(1 for j in range(f.cols) if not f[i, j].is_zero) > 1:
            return f"row {i} has two nonzero entries"
    for j in range(f.cols):
        if sum(1 for i in range(f.rows) if not f[i, j].is_zero) > 1:
            return f"column {j} has two nonzero entries"
    return None


def _zero_pattern_diagonal(f: Matrix, by_rows: bool) -> Matrix:
    """Diagonal 0/1 matrix marking the empty rows (or columns) of ``f``."""
    rig = f.rig
    n = f.rows if by_rows else f.cols
    if by_rows:
        empty = [all(f[i, j].is_zero for j in range(f.cols)) for i in range(n)]
    else:
        empty = [all(f[i, j].is_zero for i in range(f.rows)) for j in range(n)]
    return Matrix(rig, n, n, [[rig.one if (i == j and empty[i]) else rig.zero for j in range(n)]
                              for i in range(n)])


def is_contraction(f: Matrix, config: Optional[Config] = None) -> Verdict:
    """``f`` then ``f†`` is below the identity.

    Exists carries a witness ``K`` with ``id = f† f + K† K`` (standard
    product notation) where one is constructed.
    """
    rig = f.rig
    desc = rig.descriptor
    if not desc.has_dagger:
        raise MissingStructureError(f"{rig.name} has no dagger")
    if rig is INTEGERS:
        reason = _partial_signed_permutation(f)
        if reason:
            return NotExists(reason)
        return Exists(_zero_pattern_diagonal(f, by_rows=False), note="partial signed permutation")
    if rig.name == 'Booleans':
        for i in range(f.rows):
            ones = [j for j in range(f.cols) if f[i, j].payload]
            if len(ones) > 1:
                return NotExists(f"row {i} has 1s in columns {ones[0]} and {ones[1]}")
        return Exists(identity(rig, f.cols), note="no row with two 1s")
    return leq_positive(compose(f, dagger(f)), identity(rig, f.cols), config)


def is_cocontraction(f: Matrix, config: Optional[Config] = None) -> Verdict:
    return is_contraction(dagger(f), config)


def _permutation_completion(f: Matrix) -> Matrix:
    """[[f, D_rows], [D_cols, f†]]: unitary whenever f is a partial (signed) permutation."""
    rows = BlockPartition([f.rows, f.cols])
    cols = BlockPartition([f.cols, f.rows])
    return assemble([[f, _zero_pattern_diagonal(f, by_rows=True)],
                     [_zero_pattern_diagonal(f, by_rows=False), dagger(f)]], rows, cols)


def is_unitary_component(f: Matrix, config: Optional[Config] = None) -> Verdict:
    """Whether ``f`` is the top-left block of some unitary.

    Booleans and Integers: exactly the partial (signed) permutations, and the
    witness is a unitary containing ``f``. Ordered subfields of C: the same
    as being a contraction.
    """
    rig = f.rig
    if rig is INTEGERS or rig.name == 'Booleans':
        reason = _partial_signed_permutation(f)
        if reason:
            return NotExists(reason)
        u = _permutation_completion(f)
        if not is_unitary(u):
            raise DaggerTraceError("permutation completion is not unitary")
        return Exists(u)
    if rig.descriptor.is_complex_subfield:
        verdict = is_contraction(f, config)
        if isinstance(verdict, Exists):
            return Exists(None, note="contraction; components of unitaries are exactly the contractions")
        return verdict
    return Unknown(f"no unitary-component test over {rig.name}")


def unitary_completion(f: Matrix) -> Matrix:
    """The unitary [[0, f†], [f, id - f f†]] on A ⊕ B containing the isometry f: A -> B."""
    rig = f.rig
    if not rig.descriptor.has_negatives:
        raise MissingStructureError(f"{rig.name} has no negatives")
    if not is_isometry(f):
        raise PreconditionError("unitary_completion needs an isometry")
    part = BlockPartition([f.cols, f.rows])
    u = assemble([[zero(rig, f.cols, f.cols), dagger(f)],
                  [f, sub(identity(rig, f.rows), compose(dagger(f), f))]], part, part)
    if not is_unitary(u):
        raise DaggerTraceError("unitary completion failed its own check")
    return u


def complementary(p: Matrix, q: Matrix) -> bool:
    """``p + q = id`` and both composites vanish."""
    if not (p.is_square and p.shape == q.shape and p.rig is q.rig):
        return False
    if not (is_idempotent(p) and is_idempotent(q)):
        return False
    n = p.rows
    return (add(p, q) == identity(p.rig, n)
            and compose(p, q).is_zero and compose(q, p).is_zero)


def complement(p: Matrix) -> Matrix:
    """``id - p``, the only candidate complement over rigs with negatives."""
    return sub(identity(p.rig, p.rows), p)


# -- monos ----------------------------------------------------------------

def is_mono(f: Matrix, config: Optional[Config] = None) -> Verdict:
    """Left-cancellability of ``f`` (``m`` then ``f`` determines ``m``)."""
    config = config or default_config()
    rig = f.rig
    desc = rig.descriptor
    if desc.is_field:
        r = rank(f)
        return _rank_verdict(r, f.cols)
    if rig is INTEGERS:
        return _rank_verdict(rank(lift_to_rationals(f)), f.cols)
    if rig.name == 'DualNumbersZ':
        constant = Matrix(RATIONALS, f.rows, f.cols,
                          [[RATIONALS.element(e.payload[0]) for e in row] for row in f.entries])
        return _rank_verdict(rank(constant), f.cols, "constant part ")
    if rig.name == 'Booleans':
        if 2 ** f.cols > config.search_limit:
            return Unknown(f"{2 ** f.cols} vectors exceed the search limit")
        seen = {}
        for values in itertools.product((0, 1), repeat=f.cols):
            v = Matrix.column(rig, list(values))
            image = compose(v, f)
            if image in seen:
                return NotExists(f"vectors {seen[image]} and {values} have the same image")
            seen[image] = values
        return Exists(f, note=f"{len(seen)} vectors have distinct images")
    return Unknown(f"no mono test over {rig.name}")


def _rank_verdict(r: int, cols: int, what: str = "") -> Verdict:
    if r == cols:
        return Exists(r, note=f"{what}full column rank {r}")
    return NotExists(f"{what}column rank {r} < {cols}")
