"""
The dagger idempotent completion of the matrix category.

Objects are dagger idempotents ``p`` on some base dimension; an arrow
``(p) -> (q)`` is a matrix ``f`` with ``p;f;q = f``. The identity on
``(p)`` is ``p`` itself, so every dagger idempotent splits:

    section:    (p) -> full, carried by p
    retraction: full -> (p), carried by p
    section;retraction = id_(p)       retraction;section = p
"""

import logging
from dataclasses import dataclass
from typing import Iterable, List, NamedTuple, Optional

from .common.config import Config
from .common.errors import DaggerTraceError, MissingStructureError, PreconditionError
from .common.verdict import Exists, Verdict
from .matrix import Matrix, compose, compose_all, dagger, hstack, identity, oplus, zero
from .predicates import complementary, is_dagger_idempotent, is_isometry
from .pseudoinverse import is_ep, pinv, projections

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SplitObject:
    base_dim: int
    idem: Matrix

    def __post_init__(self):
        if self.idem.shape != (self.base_dim, self.base_dim):
            raise PreconditionError(f"idempotent is {self.idem.rows}x{self.idem.cols}, base is {self.base_dim}")
        if not is_dagger_idempotent(self.idem):
            raise PreconditionError(f"{self.idem} is not a dagger idempotent")

    @classmethod
    def full(cls, rig, n: int) -> "SplitObject":
        return cls(n, identity(rig, n))

    @property
    def rig(self):
        return self.idem.rig

    @property
    def is_zero_object(self) -> bool:
        return self.idem.is_zero


@dataclass(frozen=True)
class SplitArrow:
    src: SplitObject
    dst: SplitObject
    mat: Matrix

    def __post_init__(self):
        if self.mat.shape != (self.dst.base_dim, self.src.base_dim):
            raise PreconditionError(f"{self.mat.rows}x{self.mat.cols} matrix cannot go from base "
                                    f"{self.src.base_dim} to base {self.dst.base_dim}")
        if compose_all(self.src.idem, self.mat, self.dst.idem) != self.mat:
            raise PreconditionError("intertwining violation: p;f;q != f")


# -- category structure ---------------------------------------------------

def comp_identity(o: SplitObject) -> SplitArrow:
    return SplitArrow(o, o, o.idem)


def comp_compose(a: SplitArrow, b: SplitArrow) -> SplitArrow:
    if a.dst != b.src:
        raise PreconditionError("arrows do not meet: codomain of the first is not the domain of the second")
    return SplitArrow(a.src, b.dst, compose(a.mat, b.mat))


def comp_dagger(a: SplitArrow) -> SplitArrow:
    return SplitArrow(a.dst, a.src, dagger(a.mat))


def obj_oplus(*objects: SplitObject) -> SplitObject:
    return SplitObject(sum(o.base_dim for o in objects), oplus(*[o.idem for o in objects]))


def comp_oplus(*arrows: SplitArrow) -> SplitArrow:
    return SplitArrow(obj_oplus(*[a.src for a in arrows]), obj_oplus(*[a.dst for a in arrows]),
                      oplus(*[a.mat for a in arrows]))


def comp_is_unitary(a: SplitArrow) -> bool:
    return (comp_compose(a, comp_dagger(a)) == comp_identity(a.src)
            and comp_compose(comp_dagger(a), a) == comp_identity(a.dst))


# -- splittings -----------------------------------------------------------

class Splitting(NamedTuple):
    obj: SplitObject
    section: SplitArrow
    retraction: SplitArrow


def split(p: Matrix) -> Splitting:
    """Split a dagger idempotent through the object ``(p)``."""
    if not is_dagger_idempotent(p):
        raise PreconditionError(f"{p} is not a dagger idempotent")
    obj = SplitObject(p.rows, p)
    full = SplitObject.full(p.rig, p.rows)
    section = SplitArrow(obj, full, p)
    retraction = SplitArrow(full, obj, p)
    if comp_compose(section, retraction) != comp_identity(obj):
        raise DaggerTraceError("section;retraction is not the identity on (p)")
    if comp_compose(retraction, section).mat != p:
        raise DaggerTraceError("retraction;section is not p")
    return Splitting(obj, section, retraction)


def isometry_splitting_unitary(m: Matrix, p: Matrix) -> SplitArrow:
    """The unitary ``full(k) -> (p)`` carried by an isometry ``m`` with ``m†;m = p``.

    Any two splittings of ``p`` differ by such a unitary.
    """
    if not is_isometry(m):
        raise PreconditionError("expected an isometry")
    if compose(dagger(m), m) != p:
        raise PreconditionError("the isometry does not split p")
    u = SplitArrow(SplitObject.full(m.rig, m.cols), SplitObject(p.rows, p), m)
    if not comp_is_unitary(u):
        raise DaggerTraceError("splitting comparison is not unitary")
    return u


class DirectSumPresentation(NamedTuple):
    p_obj: SplitObject
    q_obj: SplitObject
    unitary: SplitArrow  # (p) ⊕ (q) -> full


def decompose_complementary(p: Matrix, q: Matrix) -> DirectSumPresentation:
    """Present the full object as ``(p) ⊕ (q)`` via the unitary carried by ``[p | q]``."""
    if not (is_dagger_idempotent(p) and is_dagger_idempotent(q) and complementary(p, q)):
        raise PreconditionError("p and q are not complementary dagger idempotents")
    rig = p.rig
    n = p.rows
    p_obj, q_obj = SplitObject(n, p), SplitObject(n, q)
    u = SplitArrow(obj_oplus(p_obj, q_obj), SplitObject.full(rig, n), hstack(p, q))
    if not comp_is_unitary(u):
        raise DaggerTraceError("direct-sum comparison is not unitary")
    if compose_all(u.mat, p, dagger(u.mat)) != oplus(p, zero(rig, n, n)):
        raise DaggerTraceError("p is not diag(id, 0) in the presentation")
    if compose_all(u.mat, q, dagger(u.mat)) != oplus(zero(rig, n, n), q):
        raise DaggerTraceError("q is not diag(0, id) in the presentation")
    return DirectSumPresentation(p_obj, q_obj, u)


def presentation_unitary(first: DirectSumPresentation, second: DirectSumPresentation) -> SplitArrow:
    """The unitary ``(p) ⊕ (q) -> (p') ⊕ (q')`` relating two presentations of one object."""
    if first.unitary.dst != second.unitary.dst:
        raise PreconditionError("presentations of different objects")
    u = comp_compose(first.unitary, comp_dagger(second.unitary))
    if not comp_is_unitary(u):
        raise DaggerTraceError("presentations are not unitarily related")
    return u


# -- pseudoinverses in the completion ----------------------------------------

class PinvIso(NamedTuple):
    p: SplitObject
    q: SplitObject
    iso: SplitArrow
    inv: SplitArrow


def pinv_as_iso(f: Matrix, config: Optional[Config] = None) -> PinvIso:
    """``f`` as an isomorphism from its coimage to its image, inverted by ``f+``."""
    g = pinv(f, config).matrix
    p = SplitObject(f.cols, compose(f, g))
    q = SplitObject(f.rows, compose(g, f))
    iso = SplitArrow(p, q, f)
    inv = SplitArrow(q, p, g)
    if comp_compose(iso, inv) != comp_identity(p) or comp_compose(inv, iso) != comp_identity(q):
        raise DaggerTraceError("f and f+ are not mutually inverse between coimage and image")
    return PinvIso(p, q, iso, inv)


def comp_pinv(a: SplitArrow, config: Optional[Config] = None) -> Verdict:
    """Pseudoinverse of ``(p, f, q)``: the arrow ``(q, f+, p)``."""
    result = pinv(a.mat, config)
    if not result.exists:
        return result.verdict
    h = SplitArrow(a.dst, a.src, result.matrix)
    ah = comp_compose(a, h)
    ha = comp_compose(h, a)
    if not (comp_compose(ah, a) == a and comp_compose(ha, h) == h
            and comp_dagger(ah) == ah and comp_dagger(ha) == ha):
        raise DaggerTraceError("transported pseudoinverse fails the Penrose equations")
    return Exists(h)


@dataclass(frozen=True)
class SVDPresentation:
    """``A = A1 ⊕ A2``, ``B = B1 ⊕ B2`` and an invertible ``a: A1 -> B1``."""

    a1: SplitObject
    a2: SplitObject
    b1: SplitObject
    b2: SplitObject
    a: SplitArrow
    a_inv: SplitArrow

    def reconstruct(self) -> Matrix:
        """retraction(A1); a; section(B1) as a plain matrix."""
        return compose_all(self.a1.idem, self.a.mat, self.b1.idem)

    def block_form(self) -> Matrix:
        """``f`` seen through the presentations; equals ``diag(a, 0)``."""
        u_a = hstack(self.a1.idem, self.a2.idem)
        u_b = hstack(self.b1.idem, self.b2.idem)
        return compose_all(u_a, self.a.mat, dagger(u_b))


def _check_svd(pres: SVDPresentation, f: Matrix) -> SVDPresentation:
    if pres.reconstruct() != f:
        raise DaggerTraceError("presentation does not reconstruct f")
    if pres.block_form() != oplus(f, zero(f.rig, f.rows, f.cols)):
        raise DaggerTraceError("block form is not diag(a, 0)")
    if comp_compose(pres.a, pres.a_inv) != comp_identity(pres.a1):
        raise DaggerTraceError("a;a+ is not the identity on A1")
    if comp_compose(pres.a_inv, pres.a) != comp_identity(pres.b1):
        raise DaggerTraceError("a+;a is not the identity on B1")
    return pres


def svd_decompose(f: Matrix, config: Optional[Config] = None) -> SVDPresentation:
    """Generalized singular value decomposition through coimage and image."""
    if not f.rig.descriptor.has_negatives:
        raise MissingStructureError(f"{f.rig.name} has no negatives")
    g = pinv(f, config).matrix
    proj = projections(f, config)
    a1, a2 = SplitObject(f.cols, proj.coimage), SplitObject(f.cols, proj.kernel)
    b1, b2 = SplitObject(f.rows, proj.image), SplitObject(f.rows, proj.cokernel)
    pres = SVDPresentation(a1, a2, b1, b2, SplitArrow(a1, b1, f), SplitArrow(b1, a1, g))
    return _check_svd(pres, f)


def ep_decompose(f: Matrix, config: Optional[Config] = None) -> SVDPresentation:
    """EP maps: the SVD presentation with ``A1 = B1`` and ``a`` an automorphism."""
    verdict = is_ep(f, config)
    if not isinstance(verdict, Exists):
        raise PreconditionError(f"not EP: {getattr(verdict, 'certificate', None) or verdict.reason}")
    pres = svd_decompose(f, config)
    if pres.a1 != pres.b1:
        raise DaggerTraceError("EP map with different coimage and image")
    return pres


class Kernel(NamedTuple):
    obj: SplitObject
    inclusion: SplitArrow


def kernel_of(f: Matrix, config: Optional[Config] = None) -> Kernel:
    """Kernel object ``(id - f;f+)`` and its inclusion into the domain."""
    if not f.rig.descriptor.has_negatives:
        raise MissingStructureError(f"{f.rig.name} has no negatives")
    k = projections(f, config).kernel
    sp = split(k)
    return Kernel(sp.obj, sp.section)


def kernel_property_failures(f: Matrix, kernel: Kernel, tests: Iterable[Matrix]) -> List[Matrix]:
    """Test arrows ``m`` violating: ``m;f = 0`` iff ``m = m;k``."""
    k = kernel.obj.idem
    failures = []
    for m in tests:
        kills = compose(m, f).is_zero
        fixed = compose(m, k) == m
        if kills != fixed:
            failures.append(m)
    return failures
