"""
Seeded samplers for unitaries, isometries, coisometries, contractions and
dagger idempotents with exact entries.

Every sampler is a pure function of ``(seed, index)``: the stream for a
sample comes from ``numpy.random.default_rng([seed, index, tag])``, so
samples can be drawn in any order, or in parallel, and still repeat
exactly.

Rational and Gaussian unitaries are products of Cayley transforms of
skew-adjoint matrices, Householder reflections and signed permutations,
or direct sums of smaller unitaries. Over Integers, GF2 and Booleans the
samples are (signed) partial permutations.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

import numpy as np

from .common.config import Config, default_config
from .common.errors import DaggerTraceError, DimensionError, MissingStructureError
from .common.verdict import Exists
from .matrix import (
    Matrix, add, compose, compose_all, dagger, field_inverse, identity, inverse, oplus,
    scale, sub,
)
from .predicates import is_contraction, is_dagger_idempotent, is_isometry, is_unitary
from .rigs import GAUSSIAN, RATIONALS, Rig, get_rig
from .trace import TraceProblem

logger = logging.getLogger(__name__)

SAMPLED_RIGS = ('Rationals', 'GaussianRationals', 'Integers', 'GF2', 'Booleans')
SAMPLE_CLASSES = ('all', 'unitary', 'isometry', 'coisometry', 'contraction')

# Stable stream tags; never derived from hash().
_TAGS = {
    'matrix': 1, 'unitary': 2, 'isometry': 3, 'coisometry': 4, 'contraction': 5,
    'idempotent': 6, 'trace': 7, 'law': 8, 'maxed': 9,
    'isotropic': 10,
}


@dataclass(frozen=True)
class GenConfig:
    seed: int
    rig: Rig
    max_dim: int = 6
    coeff_bound: int = 10
    max_traced: int = 3

    def __post_init__(self):
        if self.rig.name not in SAMPLED_RIGS:
            raise MissingStructureError(f"no samplers over {self.rig.name}")
        if self.max_dim < 1 or self.coeff_bound < 1:
            raise ValueError("max_dim and coeff_bound must be positive")

    @classmethod
    def from_config(cls, config: Optional[Config] = None, rig=None) -> "GenConfig":
        config = config or default_config()
        return cls(config.seed, get_rig(rig or config.rig), config.max_dim, config.coeff_bound,
                   config.max_traced)

    def stream(self, index: int, tag: str) -> np.random.Generator:
        return np.random.default_rng([self.seed & 0xFFFFFFFFFFFFFFFF, index, _TAGS[tag]])


def _pick(rng: np.random.Generator, low: int, high: int) -> int:
    """Uniform integer in ``[low, high]``."""
    return int(rng.integers(low, high + 1))


def _fraction(rng: np.random.Generator, bound: int) -> Fraction:
    return Fraction(_pick(rng, -bound, bound), _pick(rng, 1, bound))


def random_scalar(rig: Rig, rng: np.random.Generator, bound: int):
    if rig is RATIONALS:
        return rig.element(_fraction(rng, bound))
    if rig is GAUSSIAN:
        return rig.element((_fraction(rng, bound), _fraction(rng, bound)))
    pool = rig.small_elements(bound)
    return pool[_pick(rng, 0, len(pool) - 1)]


def random_matrix(rig: Rig, rows: int, cols: int, rng: np.random.Generator, bound: int) -> Matrix:
    return Matrix(rig, rows, cols, [[random_scalar(rig, rng, bound) for _ in range(cols)]
                                    for _ in range(rows)])


# -- unitary building blocks --------------------------------------------------

def cayley(s: Matrix) -> Matrix:
    """``(1 - S);(1 + S)^-1`` for skew-adjoint ``S``; ``1 + S`` is always invertible."""
    if dagger(s) != s.map(s.rig.neg):
        raise ValueError("Cayley transform needs a skew-adjoint matrix")
    one = identity(s.rig, s.rows)
    inv = inverse(add(one, s))
    if not isinstance(inv, Exists):
        raise DaggerTraceError(f"1 + S is singular: {inv.certificate}")
    return compose(sub(one, s), inv.witness)


def random_skew_adjoint(rig: Rig, n: int, rng: np.random.Generator, bound: int) -> Matrix:
    entries = [[rig.zero] * n for _ in range(n)]
    for i in range(n):
        if rig is GAUSSIAN:
            entries[i][i] = rig.element((0, _fraction(rng, bound)))
        for j in range(i + 1, n):
            e = random_scalar(rig, rng, bound)
            entries[i][j] = e
            entries[j][i] = rig.neg(rig.dagger(e))
    return Matrix(rig, n, n, entries)


def householder(v: Matrix) -> Matrix:
    """The reflection ``1 - 2 v v† / (v† v)`` through the hyperplane orthogonal to ``v``."""
    rig = v.rig
    norm = compose(v, dagger(v))[0, 0]
    factor = rig.mul(rig.from_int(-2), field_inverse(rig, norm))
    return add(identity(rig, v.rows), scale(factor, compose(dagger(v), v)))


def signed_permutation(rig: Rig, n: int, rng: np.random.Generator) -> Matrix:
    """Permutation matrix with unit phases: signs over Q and Z, ``±1, ±i`` over Q(i)."""
    perm = rng.permutation(n)
    if rig is GAUSSIAN:
        phases = [rig.one, rig.neg(rig.one), rig.i, rig.neg(rig.i)]
    elif rig.descriptor.has_negatives:
        phases = [rig.one, rig.neg(rig.one)]
    else:
        phases = [rig.one]
    entries = [[rig.zero] * n for _ in range(n)]
    for col, row in enumerate(perm):
        entries[int(row)][col] = phases[_pick(rng, 0, len(phases) - 1)]
    return Matrix(rig, n, n, entries)


def partial_permutation(rig: Rig, rows: int, cols: int, rng: np.random.Generator,
                        fill: Optional[int] = None) -> Matrix:
    """At most one unit-phase entry per row and per column; ``fill`` fixes their number."""
    limit = min(rows, cols)
    count = _pick(rng, 0, limit) if fill is None else fill
    if count > limit:
        raise DimensionError(f"cannot place {count} entries in {rows}x{cols}")
    chosen_rows = rng.permutation(rows)[:count]
    chosen_cols = rng.permutation(cols)[:count]
    signs = [rig.one, rig.neg(rig.one)] if rig.descriptor.has_negatives else [rig.one]
    entries = [[rig.zero] * cols for _ in range(rows)]
    for r, c in zip(chosen_rows, chosen_cols):
        entries[int(r)][int(c)] = signs[_pick(rng, 0, len(signs) - 1)]
    return Matrix(rig, rows, cols, entries)


def _nonzero_column(rig: Rig, n: int, rng: np.random.Generator, bound: int) -> Matrix:
    while True:
        v = random_matrix(rig, n, 1, rng, bound)
        if not v.is_zero:
            return v


def _unitary_factor(rig: Rig, n: int, rng: np.random.Generator, bound: int) -> Matrix:
    kind = _pick(rng, 0, 2)
    if kind == 0:
        return cayley(random_skew_adjoint(rig, n, rng, bound))
    if kind == 1:
        return householder(_nonzero_column(rig, n, rng, bound))
    return signed_permutation(rig, n, rng)


def _unitary(rig: Rig, n: int, rng: np.random.Generator, bound: int) -> Matrix:
    if n == 0:
        return identity(rig, 0)
    if not rig.descriptor.is_complex_subfield:
        return signed_permutation(rig, n, rng)
    # Small skew entries keep the Cayley denominators readable.
    bound = min(bound, 3)
    if n >= 2 and _pick(rng, 0, 3) == 0:
        k = _pick(rng, 1, n - 1)
        return oplus(_unitary(rig, k, rng, bound), _unitary(rig, n - k, rng, bound))
    factors = [_unitary_factor(rig, n, rng, bound) for _ in range(_pick(rng, 1, 3))]
    return compose_all(*factors)


def _isometry(rig: Rig, dom: int, cod: int, rng: np.random.Generator, bound: int) -> Matrix:
    if dom > cod:
        raise DimensionError(f"no isometry from {dom} into {cod}")
    if not rig.descriptor.is_complex_subfield:
        return partial_permutation(rig, cod, dom, rng, fill=dom)
    u = _unitary(rig, cod, rng, bound)
    cols = sorted(int(c) for c in rng.permutation(cod)[:dom])
    return Matrix(rig, cod, dom, [[u[i, j] for j in cols] for i in range(cod)])


def _contraction(rig: Rig, dom: int, cod: int, rng: np.random.Generator, bound: int) -> Matrix:
    if not rig.descriptor.is_complex_subfield:
        return partial_permutation(rig, cod, dom, rng)
    ambient = max(dom, cod) + _pick(rng, 0, 2)
    u = _unitary(rig, ambient, rng, bound)
    rows = sorted(int(r) for r in rng.permutation(ambient)[:cod])
    cols = sorted(int(c) for c in rng.permutation(ambient)[:dom])
    f = Matrix(rig, cod, dom, [[u[i, j] for j in cols] for i in rows])
    if dom and _pick(rng, 0, 3) == 0:
        # Precompose a coordinate projection to get rank-deficient samples.
        keep = [rig.element(_pick(rng, 0, 1)) for _ in range(dom)]
        f = compose(oplus(*[Matrix(rig, 1, 1, [[k]]) for k in keep]), f)
    return f


# -- public samplers ----------------------------------------------------------

def _checked(f: Matrix, ok: bool, what: str) -> Matrix:
    if not ok:
        raise DaggerTraceError(f"sampled {what} failed its class check: {f}")
    return f


def gen_matrix(cfg: GenConfig, rows: int, cols: int, index: int = 0) -> Matrix:
    return random_matrix(cfg.rig, rows, cols, cfg.stream(index, 'matrix'), cfg.coeff_bound)


def isotropic_column(rig: Rig, n: int, rng: np.random.Generator, bound: int) -> Optional[List]:
    """A nonzero column ``v`` with ``v^T v = 0``, or None when the rig has none of length ``n``.

    Over GaussianRationals the pairs ``(a, a i)`` cancel under the transpose
    but not under conjugation; over GF2 any even-weight column works.
    """
    if n < 2:
        return None
    if rig is GAUSSIAN:
        v = [rig.zero] * n
        positions = [int(p) for p in rng.permutation(n)]
        for k in range(0, 2 * _pick(rng, 1, n // 2), 2):
            a = _fraction(rng, bound) or Fraction(1)
            v[positions[k]] = rig.element(a)
            v[positions[k + 1]] = rig.element((0, a))
        return v
    if rig.name == 'GF2':
        ones = {int(p) for p in rng.permutation(n)[:2 * _pick(rng, 1, n // 2)]}
        return [rig.one if i in ones else rig.zero for i in range(n)]
    return None


def gen_isotropic(cfg: GenConfig, rows: int, cols: int, index: int = 0) -> Optional[Matrix]:
    """A nonzero rank-one ``v c^T`` with ``f^T f = 0``, or None where no such ``v`` exists."""
    rig = cfg.rig
    rng = cfg.stream(index, 'isotropic')
    v = isotropic_column(rig, rows, rng, cfg.coeff_bound)
    if v is None:
        return None
    c = [random_scalar(rig, rng, cfg.coeff_bound) for _ in range(cols)]
    if all(x.is_zero for x in c):
        c[0] = rig.one
    return Matrix(rig, rows, cols, [[rig.mul(v[i], c[j]) for j in range(cols)] for i in range(rows)])


def gen_unitary(cfg: GenConfig, n: int, index: int = 0) -> Matrix:
    u = _unitary(cfg.rig, n, cfg.stream(index, 'unitary'), cfg.coeff_bound)
    return _checked(u, is_unitary(u), "unitary")


def gen_isometry(cfg: GenConfig, dom: int, cod: int, index: int = 0) -> Matrix:
    """An isometry ``dom -> cod``: ``dom`` columns of a sampled unitary on ``cod``."""
    f = _isometry(cfg.rig, dom, cod, cfg.stream(index, 'isometry'), cfg.coeff_bound)
    return _checked(f, is_isometry(f), "isometry")


def gen_coisometry(cfg: GenConfig, dom: int, cod: int, index: int = 0) -> Matrix:
    f = dagger(_isometry(cfg.rig, cod, dom, cfg.stream(index, 'coisometry'), cfg.coeff_bound))
    return _checked(f, is_isometry(dagger(f)), "coisometry")


def gen_contraction(cfg: GenConfig, dom: int, cod: int, index: int = 0) -> Matrix:
    """A contraction ``dom -> cod``: a block of a sampled unitary, sometimes cut down by a projection."""
    f = _contraction(cfg.rig, dom, cod, cfg.stream(index, 'contraction'), cfg.coeff_bound)
    return _checked(f, isinstance(is_contraction(f), Exists), "contraction")


def gen_dagger_idempotent(cfg: GenConfig, n: int, index: int = 0) -> Matrix:
    """``m†;m`` for a sampled isometry ``m: k -> n``."""
    rng = cfg.stream(index, 'idempotent')
    m = _isometry(cfg.rig, _pick(rng, 0, n), n, rng, cfg.coeff_bound)
    p = compose(dagger(m), m)
    return _checked(p, is_dagger_idempotent(p), "dagger idempotent")


def gen_in_class(cfg: GenConfig, cls: str, dom: int, cod: int, index: int = 0) -> Matrix:
    if cls == 'all':
        return gen_matrix(cfg, cod, dom, index)
    if cls == 'unitary':
        if dom != cod:
            raise DimensionError(f"no unitary {dom} -> {cod}")
        return gen_unitary(cfg, dom, index)
    if cls == 'isometry':
        return gen_isometry(cfg, dom, cod, index)
    if cls == 'coisometry':
        return gen_coisometry(cfg, dom, cod, index)
    if cls == 'contraction':
        return gen_contraction(cfg, dom, cod, index)
    raise ValueError(f"unknown class '{cls}', expected one of {', '.join(SAMPLE_CLASSES)}")


def class_dims(cls: str, rng: np.random.Generator, budget: int) -> List[int]:
    """Outer dimensions ``(a, b)`` below ``budget`` compatible with ``cls``."""
    a, b = _pick(rng, 0, budget), _pick(rng, 0, budget)
    if cls == 'unitary':
        b = a
    elif cls == 'isometry' and a > b:
        a, b = b, a
    elif cls == 'coisometry' and a < b:
        a, b = b, a
    return [a, b]


def gen_trace_problem(cfg: GenConfig, cls: str, index: int = 0) -> TraceProblem:
    """A sampled ``f: A ⊕ X -> B ⊕ X`` of class ``cls`` with ``X`` at most ``max_traced``."""
    rng = cfg.stream(index, 'trace')
    x = _pick(rng, 0, min(cfg.max_traced, cfg.max_dim))
    a, b = class_dims(cls, rng, cfg.max_dim - x)
    f = gen_in_class(cfg, cls, a + x, b + x, index)
    return TraceProblem.trace_out(f, x)

