"""Hankel windows, the block matrix of a torus matrix, and exact rank/determinant.

For ``alpha = sum a_i x^-i`` the window ``M_{U;V}(alpha)`` is the ``V x U``
matrix with entry ``a_{i+j-1}`` (1-based).  Stacking the windows of an
``M x N`` torus matrix by rows ``m`` and columns ``n`` gives the coefficient
matrix of the linear system whose kernel is the solution space of a shape.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from .errors import FieldMismatch, NotSquare, PrecisionExhausted
from .field_kernel import FieldDescriptor, LaurentTail

__all__ = [
    "ShapeProfile",
    "TorusMatrix",
    "ExactMatrix",
    "BlockHankel",
    "hankel_window",
    "assemble_block",
    "exact_rank",
    "exact_det",
    "nullspace",
]


@dataclass(frozen=True, order=True)
class ShapeProfile:
    """Column degrees ``(U_1..U_N)`` and row degrees ``(V_1..V_M)``."""

    col_degrees: tuple
    row_degrees: tuple

    def __post_init__(self):
        u = tuple(int(x) for x in self.col_degrees)
        v = tuple(int(x) for x in self.row_degrees)
        if any(x < 0 for x in u + v):
            raise ValueError("shape degrees must be nonnegative")
        object.__setattr__(self, "col_degrees", u)
        object.__setattr__(self, "row_degrees", v)

    @classmethod
    def parse(cls, text: str) -> "ShapeProfile":
        """Parse ``"U1,..,UN;V1,..,VM"``."""
        if text.count(";") != 1:
            raise ValueError(f"shape {text!r} must contain exactly one ';'")
        left, right = text.split(";")

        def ints(part):
            part = part.strip()
            if not part:
                return ()
            try:
                return tuple(int(x) for x in part.split(","))
            except ValueError:
                raise ValueError(f"malformed shape {text!r}") from None

        return cls(ints(left), ints(right))

    def __str__(self):
        u = ",".join(map(str, self.col_degrees))
        v = ",".join(map(str, self.row_degrees))
        return f"{u};{v}"

    @property
    def sum_u(self) -> int:
        return sum(self.col_degrees)

    @property
    def sum_v(self) -> int:
        return sum(self.row_degrees)

    @property
    def is_square(self) -> bool:
        return self.sum_u == self.sum_v

    @property
    def need(self) -> int:
        """Largest tail index the assembled matrix reads (0 if it reads none)."""
        us = [u for u in self.col_degrees if u]
        vs = [v for v in self.row_degrees if v]
        if not us or not vs:
            return 0
        return max(us) + max(vs) - 1

    def transpose(self) -> "ShapeProfile":
        return ShapeProfile(self.row_degrees, self.col_degrees)


@dataclass(frozen=True)
class TorusMatrix:
    """``M x N`` grid of tails sharing one field and one precision."""

    field: FieldDescriptor
    rows: int
    cols: int
    precision: int
    entries: tuple = ()

    def __post_init__(self):
        entries = tuple(tuple(row) for row in self.entries)
        if len(entries) != self.rows or any(len(r) != self.cols for r in entries):
            raise ValueError(f"entries do not form a {self.rows}x{self.cols} grid")
        for row in entries:
            for t in row:
                if t.field != self.field:
                    raise FieldMismatch(f"entry over {t.field} in a {self.field} matrix")
                if t.precision != self.precision:
                    raise ValueError(
                        f"entry precision {t.precision} differs from matrix precision {self.precision}"
                    )
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_coefficients(cls, field: FieldDescriptor, grid: Sequence[Sequence[Sequence]], precision=None, cols=None):
        """Build from nested lists ``grid[m][n] = (a_1, .., a_P)``."""
        rows = len(grid)
        if cols is None:
            cols = len(grid[0]) if rows else 0
        tails = [[LaurentTail(field, tuple(c)) for c in row] for row in grid]
        if precision is None:
            precision = tails[0][0].precision if rows and cols else 0
        return cls(field, rows, cols, precision, tuple(tuple(r) for r in tails))

    @classmethod
    def empty(cls, field: FieldDescriptor, rows: int, cols: int, precision: int = 0):
        if rows and cols:
            raise ValueError("an empty torus matrix needs a zero dimension")
        return cls(field, rows, cols, precision, tuple(() for _ in range(rows)))

    def __getitem__(self, mn) -> LaurentTail:
        m, n = mn
        return self.entries[m][n]

    def transpose(self) -> "TorusMatrix":
        ent = tuple(tuple(self.entries[m][n] for m in range(self.rows)) for n in range(self.cols))
        return TorusMatrix(self.field, self.cols, self.rows, self.precision, ent)

    def truncate(self, precision: int) -> "TorusMatrix":
        # empty matrices may take any precision; entries raise on their own
        ent = tuple(tuple(t.truncate(precision) for t in row) for row in self.entries)
        return TorusMatrix(self.field, self.rows, self.cols, precision, ent)

    def column(self, n: int) -> tuple:
        return tuple(self.entries[m][n] for m in range(self.rows))


@dataclass(frozen=True)
class ExactMatrix:
    """Dense matrix of canonical field values; zero dimensions allowed."""

    field: FieldDescriptor
    rows: int
    cols: int
    entries: tuple = ()

    def __post_init__(self):
        entries = tuple(tuple(self.field.coerce(x) for x in row) for row in self.entries)
        if len(entries) != self.rows or any(len(r) != self.cols for r in entries):
            raise ValueError(f"entries do not form a {self.rows}x{self.cols} grid")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_rows(cls, field: FieldDescriptor, rows: Sequence[Sequence], cols=None):
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(field, len(rows), cols, tuple(tuple(r) for r in rows))

    def transpose(self) -> "ExactMatrix":
        ent = tuple(tuple(self.entries[i][j] for i in range(self.rows)) for j in range(self.cols))
        return ExactMatrix(self.field, self.cols, self.rows, ent)

    def tolist(self) -> list:
        return [list(r) for r in self.entries]


@dataclass(frozen=True)
class BlockHankel:
    matrix: ExactMatrix
    shape: ShapeProfile
    source: TorusMatrix

    @property
    def rows(self) -> int:
        return self.matrix.rows

    @property
    def cols(self) -> int:
        return self.matrix.cols


def hankel_window(alpha: LaurentTail, U: int, V: int) -> ExactMatrix:
    if U < 0 or V < 0:
        raise ValueError("window sizes must be nonnegative")
    if U == 0 or V == 0:
        return ExactMatrix(alpha.field, V, U, tuple(() for _ in range(V)))
    if alpha.precision < U + V - 1:
        raise PrecisionExhausted(
            f"window {U}x{V} needs {U + V - 1} coefficients, have {alpha.precision}",
            needed=U + V - 1,
            available=alpha.precision,
        )
    a = alpha.coeffs
    return ExactMatrix(alpha.field, V, U, tuple(tuple(a[i + j] for j in range(U)) for i in range(V)))


def assemble_block(A: TorusMatrix, shape: ShapeProfile) -> BlockHankel:
    U, V = shape.col_degrees, shape.row_degrees
    if len(U) != A.cols or len(V) != A.rows:
        raise ValueError(f"shape {shape} does not fit a {A.rows}x{A.cols} matrix")
    if shape.need > A.precision:
        raise PrecisionExhausted(
            f"shape {shape} needs {shape.need} coefficients, precision is {A.precision}",
            shape=shape,
            needed=shape.need,
            available=A.precision,
        )
    out = []
    for m, v in enumerate(V):
        for i in range(v):
            row = []
            for n, u in enumerate(U):
                a = A.entries[m][n].coeffs
                row.extend(a[i + j] for j in range(u))
            out.append(tuple(row))
    mat = ExactMatrix(A.field, shape.sum_v, shape.sum_u, tuple(out))
    return BlockHankel(mat, shape, A)


# ---------------------------------------------------------------------------
# elimination


def _integer_columns(mat: ExactMatrix):
    """Scale each column by the lcm of its denominators; return rows and the scale product."""
    scale = 1
    cols = []
    for j in range(mat.cols):
        col = [mat.entries[i][j] for i in range(mat.rows)]
        d = lcm(*(x.denominator for x in col)) if col else 1
        scale *= d
        cols.append([int(x * d) for x in col])
    rows = [[cols[j][i] for j in range(mat.cols)] for i in range(mat.rows)]
    return rows, scale


def _bareiss(a: list, ncols: int):
    """Fraction-free row echelon in place; returns (rank, sign, last pivot)."""
    nrows = len(a)
    prev = 1
    sign = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if a[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
            sign = -sign
        p = a[r][c]
        for i in range(r + 1, nrows):
            ai = a[i]
            f = ai[c]
            for j in range(c + 1, ncols):
                ai[j] = (p * ai[j] - f * a[r][j]) // prev
            ai[c] = 0
        prev = p
        r += 1
    return r, sign, prev


def _modp_echelon(a: list, ncols: int, p: int):
    """Row echelon over F_p in place; returns (rank, det factor of pivots with sign)."""
    nrows = len(a)
    r = 0
    det = 1
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if a[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
            det = -det
        pv = a[r][c]
        det = det * pv % p
        inv = pow(pv, -1, p)
        for i in range(r + 1, nrows):
            f = a[i][c]
            if f:
                f = f * inv % p
                ai, ar = a[i], a[r]
                for j in range(c, ncols):
                    ai[j] = (ai[j] - f * ar[j]) % p
        r += 1
    return r, det % p


def exact_rank(mat: ExactMatrix) -> int:
    if mat.rows == 0 or mat.cols == 0:
        return 0
    if mat.field.kind == "rational":
        rows, _ = _integer_columns(mat)
        rank, _, _ = _bareiss(rows, mat.cols)
        return rank
    rows = [list(r) for r in mat.entries]
    rank, _ = _modp_echelon(rows, mat.cols, mat.field.modulus)
    return rank


def exact_det(mat: ExactMatrix):
    """Determinant as a canonical field value; the 0x0 determinant is 1."""
    if mat.rows != mat.cols:
        raise NotSquare(f"determinant of a {mat.rows}x{mat.cols} matrix")
    f = mat.field
    if mat.rows == 0:
        return f.one
    if f.kind == "rational":
        rows, scale = _integer_columns(mat)
        rank, sign, last = _bareiss(rows, mat.cols)
        if rank < mat.rows:
            return f.zero
        return Fraction(sign * last, scale)
    rows = [list(r) for r in mat.entries]
    rank, det = _modp_echelon(rows, mat.cols, f.modulus)
    return det if rank == mat.rows else 0


def nullspace(mat: ExactMatrix) -> list:
    """Basis of ``{t : mat t = 0}`` from the reduced row echelon form.

    One vector per free column, with that coordinate set to 1.
    """
    f = mat.field
    n = mat.cols
    a = [list(r) for r in mat.entries]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = f.inv(a[r][c])
        a[r] = [f.mul(inv, x) for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                g = a[i][c]
                a[i] = [f.sub(x, f.mul(g, y)) for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    pivot_set = set(pivots)
    basis = []
    for free in range(n):
        if free in pivot_set:
            continue
        v = [f.zero] * n
        v[free] = f.one
        for row, pc in enumerate(pivots):
            v[pc] = f.neg(a[row][free])
        basis.append(tuple(v))
    return basis
