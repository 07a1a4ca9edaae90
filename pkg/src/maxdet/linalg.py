"""Exact integer matrices.

Everything here works over Python ints, so no result is ever rounded.
``SignMatrix`` is the {+1, -1} specialisation of ``ZMatrix``; operations that
cannot leave the sign alphabet (transpose, negation, Kronecker product of two
sign matrices, block assembly of sign blocks) keep the narrower type.
"""

from __future__ import annotations

import operator
from fractions import Fraction
from typing import Iterable, Sequence


class DimensionError(ValueError):
    """Shapes do not fit together."""


class ZMatrix:
    """Immutable dense matrix of arbitrary-precision integers."""

    __slots__ = ("_rows",)

    def __init__(self, rows: Iterable[Iterable[int]]):
        data = tuple(tuple(operator.index(x) for x in row) for row in rows)
        if not data or not data[0]:
            raise DimensionError("matrix must have at least one row and one column")
        width = len(data[0])
        for i, row in enumerate(data):
            if len(row) != width:
                raise DimensionError(f"row {i} has length {len(row)}, expected {width}")
        self._rows = data
        self._check()

    def _check(self) -> None:
        pass

    @classmethod
    def _trusted(cls, rows: tuple) -> "ZMatrix":
        obj = object.__new__(cls)
        obj._rows = rows
        return obj

    # constructors

    @classmethod
    def identity(cls, n: int) -> "ZMatrix":
        return ZMatrix._trusted(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "ZMatrix":
        cols = rows if cols is None else cols
        return ZMatrix._trusted(tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def scalar(cls, n: int, value: int) -> "ZMatrix":
        return ZMatrix._trusted(tuple(tuple(value if i == j else 0 for j in range(n)) for i in range(n)))

    # shape and access

    @property
    def rows(self) -> int:
        return len(self._rows)

    @property
    def cols(self) -> int:
        return len(self._rows[0])

    @property
    def shape(self) -> tuple[int, int]:
        return len(self._rows), len(self._rows[0])

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def row(self, i: int) -> tuple[int, ...]:
        return self._rows[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self._rows)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self._rows]

    def entries(self) -> tuple[int, ...]:
        """Row-major flattening."""
        return tuple(x for r in self._rows for x in r)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self._rows[i][j]

    def __iter__(self):
        return iter(self._rows)

    def __len__(self) -> int:
        return len(self._rows)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ZMatrix):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.tolist()!r})"

    # arithmetic; results are plain ZMatrix unless noted

    def as_zmatrix(self) -> "ZMatrix":
        return ZMatrix._trusted(self._rows)

    def transpose(self) -> "ZMatrix":
        return type(self)._trusted(tuple(zip(*self._rows)))

    T = property(transpose)

    def __neg__(self) -> "ZMatrix":
        return type(self)._trusted(tuple(tuple(-x for x in r) for r in self._rows))

    def _same_shape(self, other: "ZMatrix") -> None:
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "ZMatrix") -> "ZMatrix":
        self._same_shape(other)
        return ZMatrix._trusted(
            tuple(tuple(map(operator.add, a, b)) for a, b in zip(self._rows, other._rows))
        )

    def __sub__(self, other: "ZMatrix") -> "ZMatrix":
        self._same_shape(other)
        return ZMatrix._trusted(
            tuple(tuple(map(operator.sub, a, b)) for a, b in zip(self._rows, other._rows))
        )

    def __mul__(self, k: int) -> "ZMatrix":
        k = operator.index(k)
        return ZMatrix._trusted(tuple(tuple(k * x for x in r) for r in self._rows))

    __rmul__ = __mul__

    def __matmul__(self, other: "ZMatrix") -> "ZMatrix":
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        cols = tuple(zip(*other._rows))
        return ZMatrix._trusted(
            tuple(tuple(sum(map(operator.mul, r, c)) for c in cols) for r in self._rows)
        )

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "ZMatrix":
        return type(self)._trusted(tuple(tuple(self._rows[i][j] for j in cols) for i in rows))

    def principal(self, idx: Sequence[int]) -> "ZMatrix":
        return self.submatrix(idx, idx)

    def permute_rows(self, order: Sequence[int]) -> "ZMatrix":
        return type(self)._trusted(tuple(self._rows[i] for i in order))

    def negate_rows(self, signs: Sequence[int]) -> "ZMatrix":
        """Left-multiply by diag(signs); signs are +1/-1."""
        return type(self)._trusted(
            tuple(r if s == 1 else tuple(-x for x in r) for r, s in zip(self._rows, signs))
        )

    def to_sign(self) -> "SignMatrix":
        return SignMatrix(self._rows)


class SignMatrix(ZMatrix):
    """Dense matrix with every entry in {+1, -1}."""

    __slots__ = ()

    def _check(self) -> None:
        for i, row in enumerate(self._rows):
            for j, x in enumerate(row):
                if x != 1 and x != -1:
                    raise ValueError(f"entry ({i}, {j}) = {x} is not +1 or -1")

    @classmethod
    def ones(cls, rows: int, cols: int | None = None) -> "SignMatrix":
        cols = rows if cols is None else cols
        return cls._trusted(tuple((1,) * cols for _ in range(rows)))

    def flip(self, i: int, j: int) -> "SignMatrix":
        """Copy with entry (i, j) negated."""
        rows = list(self._rows)
        r = list(rows[i])
        r[j] = -r[j]
        rows[i] = tuple(r)
        return SignMatrix._trusted(tuple(rows))


def ones(rows: int, cols: int | None = None) -> SignMatrix:
    return SignMatrix.ones(rows, cols)


def identity(n: int) -> ZMatrix:
    return ZMatrix.identity(n)


def gram(M: ZMatrix) -> ZMatrix:
    """Return M M^T (inner products of rows)."""
    rows = M._rows
    n = len(rows)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        ri = rows[i]
        out_i = out[i]
        for j in range(i, n):
            v = sum(map(operator.mul, ri, rows[j]))
            out_i[j] = v
            out[j][i] = v
    return ZMatrix._trusted(tuple(tuple(r) for r in out))


def det_exact(A: ZMatrix) -> int:
    """Determinant by fraction-free (Bareiss) elimination.

    Every division in the elimination is exact, so intermediate entries stay
    integers bounded by minors of ``A``.
    """
    if not A.is_square:
        raise DimensionError(f"determinant of non-square {A.shape} matrix")
    n = A.rows
    m = [list(r) for r in A._rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        row_k = m[k]
        for i in range(k + 1, n):
            row_i = m[i]
            a = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (pivot * row_i[j] - a * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def det_rational(rows: Sequence[Sequence[Fraction | int]]) -> Fraction:
    """Determinant of a square matrix with rational entries (Gaussian elimination)."""
    m = [[Fraction(x) for x in r] for r in rows]
    n = len(m)
    if any(len(r) != n for r in m):
        raise DimensionError("determinant of non-square matrix")
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            det = -det
        p = m[k][k]
        det *= p
        for i in range(k + 1, n):
            f = m[i][k] / p
            if f:
                m[i] = [a - f * b for a, b in zip(m[i], m[k])]
    return det


def tensor(A: ZMatrix, B: ZMatrix) -> ZMatrix:
    """Kronecker product ``[a_ij * B]``; sign inputs give a sign output."""
    rows = tuple(
        tuple(a * b for a in ra for b in rb)
        for ra in A._rows
        for rb in B._rows
    )
    if isinstance(A, SignMatrix) and isinstance(B, SignMatrix):
        return SignMatrix._trusted(rows)
    return ZMatrix._trusted(rows)


def block_assemble(layout: Sequence[Sequence[ZMatrix]]) -> ZMatrix:
    """Concatenate a grid of blocks.

    Blocks in a grid row must agree on row count and blocks in a grid column
    on column count.
    """
    if not layout or not layout[0]:
        raise DimensionError("empty block layout")
    width = len(layout[0])
    for r, grid_row in enumerate(layout):
        if len(grid_row) != width:
            raise DimensionError(f"grid row {r} has {len(grid_row)} blocks, expected {width}")
    col_widths = [layout[0][c].cols for c in range(width)]
    out = []
    all_sign = True
    for r, grid_row in enumerate(layout):
        h = grid_row[0].rows
        for c, blk in enumerate(grid_row):
            if blk.rows != h:
                raise DimensionError(f"block ({r}, {c}) has {blk.rows} rows, expected {h}")
            if blk.cols != col_widths[c]:
                raise DimensionError(f"block ({r}, {c}) has {blk.cols} columns, expected {col_widths[c]}")
            all_sign = all_sign and isinstance(blk, SignMatrix)
        for i in range(h):
            out.append(tuple(x for blk in grid_row for x in blk._rows[i]))
    cls = SignMatrix if all_sign else ZMatrix
    return cls._trusted(tuple(out))


def excess(M: ZMatrix) -> int:
    return sum(sum(r) for r in M._rows)


def row_sums(M: ZMatrix) -> tuple[int, ...]:
    return tuple(sum(r) for r in M._rows)


def col_sums(M: ZMatrix) -> tuple[int, ...]:
    return tuple(sum(c) for c in zip(*M._rows))


def block_jj_det(a, b, c, d, k: int) -> Fraction:
    """Determinant of the order-2k matrix [[aI + bJ, cJ], [cJ, aI + dJ]].

    The matrix minus aI has rank two, with nonzero eigenvalues k times the
    eigenvalues of [[b, c], [c, d]]; hence
    ``(a^2 + a k (b + d) + k^2 (b d - c^2)) a^(2k - 2)``.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    a, b, c, d = (Fraction(x) for x in (a, b, c, d))
    return (a * a + a * k * (b + d) + k * k * (b * d - c * c)) * a ** (2 * k - 2)


def jj_block_matrix(a: int, b: int, c: int, d: int, k: int) -> ZMatrix:
    """Explicit [[aI + bJ, cJ], [cJ, aI + dJ]] of order 2k (integer parameters)."""
    rows = []
    for i in range(2 * k):
        row = []
        for j in range(2 * k):
            same_half = (i < k) == (j < k)
            if same_half:
                row.append((a if i == j else 0) + (b if i < k else d))
            else:
                row.append(c)
        rows.append(row)
    return ZMatrix(rows)
