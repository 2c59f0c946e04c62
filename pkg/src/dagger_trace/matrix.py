"""
Matrices over a dagger rig: the arrows of the ambient matrix category.

A ``Matrix`` with ``rows`` x ``cols`` entries is an arrow ``cols -> rows``
(domain = number of columns, codomain = number of rows). ``compose(f, g)``
is diagram order, "f then g", and equals the ordinary product ``G F``.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, List, Optional, Sequence, Tuple

from .common.errors import DimensionError, MissingStructureError, RigMismatchError
from .common.verdict import Exists, NotExists, Verdict
from .rigs import INTEGERS, RATIONALS, Rig, RigElement, get_rig

logger = logging.getLogger(__name__)


def _coerce(rig: Rig, value: Any) -> RigElement:
    if isinstance(value, RigElement):
        rig.check(value)
        return value
    if isinstance(value, str):
        return rig.parse(value)
    if isinstance(value, int) and not isinstance(value, bool):
        return rig.from_int(value)
    return rig.element(value)


class Matrix:
    """A dense rows x cols array of rig elements; immutable."""

    __slots__ = ('rig', 'rows', 'cols', 'entries')

    def __init__(self, rig: Rig, rows: int, cols: int, entries: Sequence[Sequence[RigElement]]):
        if rows < 0 or cols < 0:
            raise DimensionError(f"negative dimension {rows}x{cols}")
        entries = tuple(tuple(row) for row in entries)
        if len(entries) != rows or any(len(row) != cols for row in entries):
            raise DimensionError(f"entries do not form a {rows}x{cols} array")
        for row in entries:
            rig.check(*row)
        object.__setattr__(self, 'rig', rig)
        object.__setattr__(self, 'rows', rows)
        object.__setattr__(self, 'cols', cols)
        object.__setattr__(self, 'entries', entries)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    # -- constructors ----------------------------------------------------

    @classmethod
    def from_rows(cls, rig, rows: Sequence[Sequence[Any]], cols: Optional[int] = None) -> "Matrix":
        """Build from nested rows of elements, element literals, ints or payloads.

        ``cols`` is only needed for matrices with no rows.
        """
        rig = get_rig(rig)
        data = [[_coerce(rig, v) for v in row] for row in rows]
        if cols is None:
            cols = len(data[0]) if data else 0
        return cls(rig, len(data), cols, data)

    @classmethod
    def from_text(cls, rig, text: str) -> "Matrix":
        """Parse ``"1, 1; 0, 1"``: rows separated by ``;``, entries by ``,``."""
        text = text.strip().lstrip('[').rstrip(']')
        if not text.strip():
            return cls.from_rows(rig, [])
        return cls.from_rows(rig, [[cell.strip() for cell in row.split(',')] for row in text.split(';')])

    @classmethod
    def column(cls, rig, values: Sequence[Any]) -> "Matrix":
        return cls.from_rows(rig, [[v] for v in values], cols=1)

    @classmethod
    def row(cls, rig, values: Sequence[Any]) -> "Matrix":
        rig = get_rig(rig)
        return cls(rig, 1, len(values), [[_coerce(rig, v) for v in values]])

    # -- accessors -------------------------------------------------------

    @property
    def dom(self) -> int:
        return self.cols

    @property
    def cod(self) -> int:
        return self.rows

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, index: Tuple[int, int]) -> RigElement:
        i, j = index
        return self.entries[i][j]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def is_zero(self) -> bool:
        return all(e.is_zero for row in self.entries for e in row)

    def to_strings(self) -> List[List[str]]:
        return [[self.rig.format(e) for e in row] for row in self.entries]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.rig is other.rig and self.shape == other.shape
                and self.entries == other.entries)

    def __hash__(self) -> int:
        return hash((self.rig.name, self.rows, self.cols, self.entries))

    def __str__(self) -> str:
        if self.rows == 0:
            return f"[](0x{self.cols})"
        return "[" + "; ".join(", ".join(row) for row in self.to_strings()) + "]"

    def __repr__(self) -> str:
        return f"Matrix({self.rig.name}, {self.rows}x{self.cols}, {self})"

    # -- operator sugar --------------------------------------------------

    def __add__(self, other: "Matrix") -> "Matrix":
        return add(self, other)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return sub(self, other)

    def __neg__(self) -> "Matrix":
        return neg(self)

    def __rshift__(self, other: "Matrix") -> "Matrix":
        """``f >> g`` is ``compose(f, g)``, f then g."""
        return compose(self, other)

    def map(self, fn) -> "Matrix":
        return Matrix(self.rig, self.rows, self.cols, [[fn(e) for e in row] for row in self.entries])

    def transpose(self) -> "Matrix":
        return Matrix(self.rig, self.cols, self.rows,
                      [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def dagger(self) -> "Matrix":
        return dagger(self)

    def power(self, k: int) -> "Matrix":
        """``k``-fold composite of an endomorphism with itself."""
        if not self.is_square:
            raise DimensionError(f"power of a non-square {self.rows}x{self.cols} matrix")
        if k < 0:
            raise ValueError("negative power")
        result = identity(self.rig, self.rows)
        for _ in range(k):
            result = compose(result, self)
        return result


# -- category structure ---------------------------------------------------

def _same_rig(f: Matrix, g: Matrix) -> Rig:
    if f.rig is not g.rig:
        raise RigMismatchError(f"matrices over {f.rig.name} and {g.rig.name}")
    return f.rig


def identity(rig, n: int) -> Matrix:
    rig = get_rig(rig)
    return Matrix(rig, n, n, [[rig.one if i == j else rig.zero for j in range(n)] for i in range(n)])


def zero(rig, rows: int, cols: int) -> Matrix:
    """The zero arrow ``cols -> rows``."""
    rig = get_rig(rig)
    return Matrix(rig, rows, cols, [[rig.zero] * cols for _ in range(rows)])


def compose(f: Matrix, g: Matrix) -> Matrix:
    """Diagram-order composite "f then g"."""
    rig = _same_rig(f, g)
    if f.rows != g.cols:
        raise DimensionError(f"cannot compose {f.rows}x{f.cols} then {g.rows}x{g.cols}: "
                             f"codomain {f.rows} != domain {g.cols}")
    out = []
    for i in range(g.rows):
        g_row = g.entries[i]
        out.append([rig.sum(rig.mul(g_row[j], f.entries[j][k]) for j in range(f.rows))
                    for k in range(f.cols)])
    return Matrix(rig, g.rows, f.cols, out)


def compose_all(*fs: Matrix) -> Matrix:
    result = fs[0]
    for f in fs[1:]:
        result = compose(result, f)
    return result


def dagger(f: Matrix) -> Matrix:
    if not f.rig.descriptor.has_dagger:
        raise MissingStructureError(f"{f.rig.name} has no dagger")
    return Matrix(f.rig, f.cols, f.rows,
                  [[f.rig.dagger(f.entries[i][j]) for i in range(f.rows)] for j in range(f.cols)])


def oplus(*fs: Matrix) -> Matrix:
    """Block-diagonal direct sum."""
    if not fs:
        raise DimensionError("oplus needs at least one matrix to fix the rig; use zero(rig, 0, 0)")
    rig = fs[0].rig
    rows = sum(f.rows for f in fs)
    cols = sum(f.cols for f in fs)
    out = [[rig.zero] * cols for _ in range(rows)]
    r0 = c0 = 0
    for f in fs:
        _same_rig(fs[0], f)
        for i in range(f.rows):
            out[r0 + i][c0:c0 + f.cols] = f.entries[i]
        r0 += f.rows
        c0 += f.cols
    return Matrix(rig, rows, cols, out)


def add(f: Matrix, g: Matrix) -> Matrix:
    rig = _same_rig(f, g)
    if f.shape != g.shape:
        raise DimensionError(f"cannot add {f.rows}x{f.cols} and {g.rows}x{g.cols}")
    return Matrix(rig, f.rows, f.cols,
                  [[rig.add(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(f.entries, g.entries)])


def neg(f: Matrix) -> Matrix:
    if not f.rig.descriptor.has_negatives:
        raise MissingStructureError(f"{f.rig.name} has no negatives")
    return f.map(f.rig.neg)


def sub(f: Matrix, g: Matrix) -> Matrix:
    if not f.rig.descriptor.has_negatives:
        raise MissingStructureError(f"{f.rig.name} has no negatives")
    return add(f, neg(g))


def scale(c: RigElement, f: Matrix) -> Matrix:
    return f.map(lambda e: f.rig.mul(c, e))


# -- block addressing -----------------------------------------------------

@dataclass(frozen=True)
class BlockPartition:
    """An ordered split of a dimension into biproduct summands."""

    sizes: Tuple[int, ...]

    def __init__(self, sizes: Sequence[int]):
        sizes = tuple(int(s) for s in sizes)
        if any(s < 0 for s in sizes):
            raise DimensionError(f"negative summand in partition {list(sizes)}")
        object.__setattr__(self, 'sizes', sizes)

    @property
    def total(self) -> int:
        return sum(self.sizes)

    def __len__(self) -> int:
        return len(self.sizes)

    def offset(self, i: int) -> int:
        return sum(self.sizes[:i])

    def span(self, i: int) -> range:
        start = self.offset(i)
        return range(start, start + self.sizes[i])

    def swapped(self, i: int, j: int) -> "BlockPartition":
        sizes = list(self.sizes)
        sizes[i], sizes[j] = sizes[j], sizes[i]
        return BlockPartition(sizes)

    def check(self, dim: int, what: str = "dimension") -> None:
        if self.total != dim:
            raise DimensionError(f"partition {list(self.sizes)} does not sum to {what} {dim}")


def submatrix(f: Matrix, rows: range, cols: range) -> Matrix:
    return Matrix(f.rig, len(rows), len(cols), [[f.entries[i][j] for j in cols] for i in rows])


def block(f: Matrix, row_part: BlockPartition, col_part: BlockPartition, i: int, j: int) -> Matrix:
    """Component from column summand ``j`` to row summand ``i``."""
    row_part.check(f.rows, "row count")
    col_part.check(f.cols, "column count")
    return submatrix(f, row_part.span(i), col_part.span(j))


def assemble(blocks: Sequence[Sequence[Optional[Matrix]]], row_part: BlockPartition,
             col_part: BlockPartition, rig=None) -> Matrix:
    """Inverse of ``block``; ``None`` stands for a zero block."""
    if rig is None:
        found = [b for row in blocks for b in row if b is not None]
        if not found:
            raise ValueError("assemble needs a rig when every block is None")
        rig = found[0].rig
    rig = get_rig(rig)
    if len(blocks) != len(row_part) or any(len(row) != len(col_part) for row in blocks):
        raise DimensionError("block grid does not match the partitions")
    out = [[rig.zero] * col_part.total for _ in range(row_part.total)]
    for bi, row in enumerate(blocks):
        for bj, b in enumerate(row):
            if b is None:
                continue
            if b.rig is not rig:
                raise RigMismatchError(f"block ({bi},{bj}) is over {b.rig.name}, expected {rig.name}")
            if b.shape != (row_part.sizes[bi], col_part.sizes[bj]):
                raise DimensionError(f"block ({bi},{bj}) is {b.rows}x{b.cols}, expected "
                                     f"{row_part.sizes[bi]}x{col_part.sizes[bj]}")
            r0, c0 = row_part.offset(bi), col_part.offset(bj)
            for i in range(b.rows):
                out[r0 + i][c0:c0 + b.cols] = b.entries[i]
    return Matrix(rig, row_part.total, col_part.total, out)


def hstack(*fs: Matrix) -> Matrix:
    """``[f1 | f2 | ...]``, the copairing out of a direct sum."""
    return assemble([list(fs)], BlockPartition([fs[0].rows]), BlockPartition([f.cols for f in fs]))


def vstack(*fs: Matrix) -> Matrix:
    """``[f1; f2; ...]``, the pairing into a direct sum."""
    return assemble([[f] for f in fs], BlockPartition([f.rows for f in fs]), BlockPartition([fs[0].cols]))


def symmetry(rig, part: BlockPartition, i: int = 0, j: int = 1) -> Matrix:
    """Swap summands ``i`` and ``j``: an arrow from ``part`` to ``part.swapped(i, j)``."""
    rig = get_rig(rig)
    target = part.swapped(i, j)
    order = list(range(len(part)))
    order[i], order[j] = order[j], order[i]
    out = [[rig.zero] * part.total for _ in range(part.total)]
    for slot, source in enumerate(order):
        for k in range(part.sizes[source]):
            out[target.offset(slot) + k][part.offset(source) + k] = rig.one
    return Matrix(rig, part.total, part.total, out)


# -- field linear algebra -------------------------------------------------

def _require_field(f: Matrix) -> Rig:
    if not f.rig.descriptor.is_field:
        raise MissingStructureError(f"{f.rig.name} is not a field")
    return f.rig


def field_inverse(rig: Rig, a: RigElement) -> RigElement:
    verdict = rig.inverse(a)
    if not isinstance(verdict, Exists):
        raise ZeroDivisionError(verdict.certificate)
    return verdict.witness


def rref(f: Matrix) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form and pivot columns, over a field."""
    rig = _require_field(f)
    a = [list(row) for row in f.entries]
    pivots: List[int] = []
    r = 0
    for c in range(f.cols):
        pivot = next((i for i in range(r, f.rows) if not a[i][c].is_zero), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = field_inverse(rig, a[r][c])
        a[r] = [rig.mul(inv, e) for e in a[r]]
        for i in range(f.rows):
            if i != r and not a[i][c].is_zero:
                factor = a[i][c]
                a[i] = [rig.sub(e, rig.mul(factor, p)) for e, p in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == f.rows:
            break
    return Matrix(rig, f.rows, f.cols, a), pivots


def rank(f: Matrix) -> int:
    return len(rref(f)[1])


def inverse(f: Matrix) -> Verdict:
    """Two-sided inverse of a square matrix over a field."""
    rig = _require_field(f)
    if not f.is_square:
        return NotExists(f"{f.rows}x{f.cols} is not square")
    n = f.rows
    reduced, pivots = rref(hstack(f, identity(rig, n)))
    if pivots[:n] != list(range(n)):
        return NotExists(f"singular: rank {sum(1 for p in pivots if p < n)} < {n}")
    return Exists(submatrix(reduced, range(n), range(n, 2 * n)))


def lift_to_rationals(f: Matrix) -> Matrix:
    """View an Integers matrix over Rationals."""
    if f.rig is not INTEGERS:
        raise RigMismatchError(f"expected an Integers matrix, got {f.rig.name}")
    return change_rig(f, RATIONALS, lambda e: Fraction(e.payload))


def change_rig(f: Matrix, rig: Rig, payload_fn) -> Matrix:
    """Rebuild ``f`` over ``rig`` with entries ``rig.element(payload_fn(entry))``."""
    return Matrix(rig, f.rows, f.cols, [[rig.element(payload_fn(e)) for e in row] for row in f.entries])
