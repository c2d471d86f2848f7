"""Order-by-order construction of matrices whose square block Hankel matrices are nonsingular.

A new column is appended to a certified ``M x N`` matrix one coefficient
index ``L`` at a time.  Every square shape whose new-column block reads
index ``L`` has a determinant that is affine in the ``M`` unknowns
``a_L^{(m, N+1)}`` (each unknown sits alone in the last column of the new
column block).  The unknowns are then chosen off all these hyperplanes from
a fixed stream of small integers.  Rows are added by transposition.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .criterion import square_shapes
from .errors import InductionBroken, InfiniteFieldRequired, PrecisionExhausted
from .field_kernel import QQ, FieldDescriptor, LaurentTail
from .formats import matrix_digest
from .hankel import ExactMatrix, ShapeProfile, TorusMatrix, exact_det
from .series import CheckedShape, StarCertificate, star_check

__all__ = [
    "AffineConstraint",
    "Extension",
    "new_column_order",
    "shapes_at_order",
    "constraints_at_order",
    "candidate_stream",
    "pick_avoiding",
    "extend_with_column",
    "extend_with_row",
    "generate",
]

EXTENSION_ORDER = "columns-then-rows"


@dataclass(frozen=True)
class AffineConstraint:
    """``sum_m linear[m] * t_m + constant != 0``, produced by ``shape``."""

    linear: tuple
    constant: object
    shape: ShapeProfile

    def evaluate(self, field: FieldDescriptor, values: Sequence):
        acc = self.constant
        for r, t in zip(self.linear, values):
            acc = field.add(acc, field.mul(r, t))
        return acc

    def satisfied_by(self, field: FieldDescriptor, values: Sequence) -> bool:
        return bool(self.evaluate(field, values))


def new_column_order(shape: ShapeProfile) -> int:
    """Largest index of the last column's coefficients that the shape reads (0 if none)."""
    u = shape.col_degrees[-1]
    vs = [v for v in shape.row_degrees if v]
    if not u or not vs:
        return 0
    return u + max(vs) - 1


def shapes_at_order(cols: int, rows: int, L: int, max_order: int) -> list:
    """Square shapes of a ``rows x cols`` matrix with new-column order exactly ``L``.

    Only shapes reading indices ``<= max_order`` overall are kept.
    """
    return [sh for sh in square_shapes(cols, rows, max_order) if new_column_order(sh) == L]


def _assemble_with_unknowns(prime: TorusMatrix, column, values, shape: ShapeProfile):
    """Block matrix of ``prime | new column`` with ``a_L^{(m)} = values[m]``."""
    f = prime.field
    U, V = shape.col_degrees, shape.row_degrees
    out = []
    for m, v in enumerate(V):
        new = tuple(column[m]) + (values[m],)
        for i in range(v):
            row = []
            for n, u in enumerate(U[:-1]):
                a = prime.entries[m][n].coeffs
                row.extend(a[i + j] for j in range(u))
            row.extend(new[i + j] for j in range(U[-1]))
            out.append(tuple(row))
    return ExactMatrix(f, shape.sum_v, shape.sum_u, tuple(out))


def constraints_at_order(prime: TorusMatrix, column: Sequence[Sequence], L: int, max_order: int | None = None) -> list:
    """Affine nonvanishing conditions on the ``L``-th coefficients of the new column.

    ``column[m]`` holds the already fixed coefficients ``a_1 .. a_{L-1}`` of
    row ``m`` of the new column.  ``max_order`` bounds the indices read from
    ``prime`` (defaults to its precision, or ``L`` when it has no columns).
    """
    M, N = prime.rows, prime.cols
    if len(column) != M or any(len(c) != L - 1 for c in column):
        raise ValueError(f"column must hold {L - 1} known coefficients in each of {M} rows")
    if max_order is None:
        max_order = prime.precision if N else L
    if N and max_order > prime.precision:
        raise PrecisionExhausted(
            f"window {max_order} exceeds the precision {prime.precision} of the input",
            needed=max_order,
            available=prime.precision,
        )
    f = prime.field
    out = []
    for sh in shapes_at_order(N + 1, M, L, max_order):
        zero = [f.zero] * M
        r0 = exact_det(_assemble_with_unknowns(prime, column, zero, sh))
        linear = []
        for m in range(M):
            unit = list(zero)
            unit[m] = f.one
            linear.append(f.sub(exact_det(_assemble_with_unknowns(prime, column, unit, sh)), r0))
        if not any(linear):
            raise InductionBroken(
                f"shape {sh}: determinant does not depend on the order-{L} coefficients",
                shape=sh,
            )
        out.append(AffineConstraint(tuple(linear), r0, sh))
    return out


def _stream_rank(k: int) -> int:
    return 2 * k - 1 if k > 0 else -2 * k


def candidate_stream(size: int) -> Iterator[tuple]:
    """Integer tuples by max-abs, then lexicographic in the order ``0, 1, -1, 2, -2, ..``."""
    if size == 0:
        yield ()
        return
    for bound in itertools.count(0):
        vals = sorted(range(-bound, bound + 1), key=_stream_rank)
        for t in itertools.product(vals, repeat=size):
            if max(abs(x) for x in t) == bound:
                yield t


def _pick(constraints, field: FieldDescriptor, size: int):
    if field.is_finite:
        raise InfiniteFieldRequired(f"hyperplane avoidance is only guaranteed over an infinite field, not {field}")
    for c in constraints:
        if not any(c.linear):
            raise InductionBroken(f"constraint from {c.shape} has no linear part", shape=c.shape)
    for rejected, cand in enumerate(candidate_stream(size)):
        vals = tuple(field.coerce(x) for x in cand)
        if all(c.satisfied_by(field, vals) for c in constraints):
            return vals, rejected
    raise AssertionError("unreachable: the candidate stream is infinite")


def pick_avoiding(constraints: Sequence[AffineConstraint], field: FieldDescriptor, size: int) -> tuple:
    """First candidate tuple that makes every affine form nonzero."""
    return _pick(constraints, field, size)[0]


@dataclass(frozen=True)
class Extension:
    """A constructed matrix with its certificate and per-level rejection counts."""

    matrix: TorusMatrix
    certificate: StarCertificate
    rejections: tuple = ()


def _lift_certificate(prime: TorusMatrix, cert: StarCertificate | None, max_order: int) -> list:
    if cert is None:
        cert = star_check(prime, max_order)
        if not cert.ok:
            raise InductionBroken(f"input matrix is singular at square shape {cert.shape}", shape=cert.shape)
    if cert.max_order < max_order:
        raise ValueError(f"input certified to order {cert.max_order}, {max_order} requested")
    return [
        CheckedShape(ShapeProfile(c.shape.col_degrees + (0,), c.shape.row_degrees), c.det)
        for c in cert.checked
        if c.shape.need <= max_order
    ]


def _sort_checked(checked):
    return sorted(checked, key=lambda c: (c.shape.need, c.shape.col_degrees, c.shape.row_degrees))


def extend_with_column(prime: TorusMatrix, max_order: int, certificate: StarCertificate | None = None) -> Extension:
    """Append one column fixed for indices ``1..max_order``.

    ``certificate`` covers ``prime`` up to ``max_order``; without one the
    input is checked first.
    """
    M, N = prime.rows, prime.cols
    f = prime.field
    if f.is_finite:
        raise InfiniteFieldRequired(f"column extension needs an infinite field, not {f}")
    if N:
        prime = prime.truncate(max_order)
    checked = _lift_certificate(prime, certificate, max_order)
    column = [[] for _ in range(M)]
    rejections = []
    for L in range(1, max_order + 1):
        constraints = constraints_at_order(prime, column, L, max_order)
        vals, rejected = _pick(constraints, f, M)
        rejections.append(rejected)
        for c in constraints:
            checked.append(CheckedShape(c.shape, c.evaluate(f, vals)))
        for m in range(M):
            column[m].append(vals[m])
    entries = tuple(
        tuple(prime.entries[m]) + (LaurentTail(f, tuple(column[m])),) for m in range(M)
    )
    out = TorusMatrix(f, M, N + 1, max_order, entries)
    cert = StarCertificate(matrix_digest(out), f, max_order, tuple(_sort_checked(checked)), EXTENSION_ORDER)
    return Extension(out, cert, tuple(rejections))


def extend_with_row(prime: TorusMatrix, max_order: int, certificate: StarCertificate | None = None) -> Extension:
    """Append one row: transpose, extend by a column, transpose back."""
    t_cert = None
    if certificate is not None:
        t_cert = certificate.transpose(matrix_digest(prime.transpose()))
    ext = extend_with_column(prime.transpose(), max_order, t_cert)
    out = ext.matrix.transpose()
    return Extension(out, ext.certificate.transpose(matrix_digest(out)), ext.rejections)


def generate(M: int, N: int, max_order: int, field: FieldDescriptor = QQ) -> Extension:
    """An ``M x N`` matrix certified up to ``max_order``: grow columns first, then rows."""
    if M < 0 or N < 0 or max_order < 1:
        raise ValueError("dimensions must be nonnegative and max_order positive")
    if field.is_finite:
        raise InfiniteFieldRequired(f"generation needs an infinite field, not {field}")
    A = TorusMatrix.empty(field, 0, 0, max_order)
    cert = StarCertificate(matrix_digest(A), field, max_order, (), EXTENSION_ORDER)
    rejections = []
    for _ in range(N):
        ext = extend_with_column(A, max_order, cert)
        A, cert = ext.matrix, ext.certificate
        rejections.append(ext.rejections)
    for _ in range(M):
        ext = extend_with_row(A, max_order, cert)
        A, cert = ext.matrix, ext.certificate
        rejections.append(ext.rejections)
    return Extension(A, cert, tuple(rejections))
