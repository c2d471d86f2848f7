"""Exponential and binomial series as torus elements, and the square-block checker.

``exp_tail(lam, P)`` is ``e^{lam/x}`` with its constant term dropped;
``binomial_tail(w, P)`` is ``(1 - 1/x)^w`` likewise.  :func:`star_check`
verifies that every square block Hankel matrix reading coefficients up to a
given index is nonsingular.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .criterion import square_shapes
from .errors import PositiveCharacteristic, PrecisionExhausted
from .field_kernel import QQ, FieldDescriptor, LaurentTail
from .formats import matrix_digest
from .hankel import ExactMatrix, ShapeProfile, TorusMatrix, assemble_block, exact_det

__all__ = [
    "SeriesSpec",
    "TerminatingSeriesWarning",
    "exp_tail",
    "binomial_tail",
    "series_matrix",
    "CheckedShape",
    "StarCertificate",
    "FailureWitness",
    "star_check",
]


class TerminatingSeriesWarning(UserWarning):
    """The binomial exponent is a nonnegative integer, so the series is a polynomial."""


def _require_char0(field: FieldDescriptor):
    if field.characteristic != 0:
        raise PositiveCharacteristic(f"series with factorial denominators need characteristic 0, got {field}")


def exp_tail(lam, precision: int, field: FieldDescriptor = QQ) -> LaurentTail:
    _require_char0(field)
    lam = field.coerce(lam)
    return LaurentTail(field, tuple(lam**i / factorial(i) for i in range(1, precision + 1)))


def _binom(w: Fraction, i: int) -> Fraction:
    num = Fraction(1)
    for k in range(i):
        num *= w - k
    return num / factorial(i)


def binomial_tail(w, precision: int, field: FieldDescriptor = QQ) -> LaurentTail:
    _require_char0(field)
    w = field.coerce(w)
    if w.denominator == 1 and w >= 0:
        warnings.warn(
            f"(1 - x)^{w} terminates; its tail is eventually zero",
            TerminatingSeriesWarning,
            stacklevel=2,
        )
    return LaurentTail(field, tuple((-1) ** i * _binom(w, i) for i in range(1, precision + 1)))


@dataclass(frozen=True)
class SeriesSpec:
    family: str  # "exp" or "binomial"
    param: Fraction
    precision: int

    def __post_init__(self):
        if self.family not in ("exp", "binomial"):
            raise ValueError(f"unknown series family {self.family!r}")
        if self.precision < 0:
            raise ValueError("precision must be nonnegative")
        object.__setattr__(self, "param", QQ.coerce(self.param))

    def tail(self) -> LaurentTail:
        if self.family == "exp":
            return exp_tail(self.param, self.precision)
        return binomial_tail(self.param, self.precision)


def series_matrix(family: str, params, precision: int, layout: str = "row") -> TorusMatrix:
    """``1 x N`` (layout ``"row"``) or ``N x 1`` (``"column"``) matrix of series tails."""
    tails = [SeriesSpec(family, p, precision).tail() for p in params]
    if layout == "row":
        grid = (tuple(tails),)
        return TorusMatrix(QQ, 1, len(tails), precision, grid)
    if layout == "column":
        return TorusMatrix(QQ, len(tails), 1, precision, tuple((t,) for t in tails))
    raise ValueError(f"unknown layout {layout!r}")


@dataclass(frozen=True)
class CheckedShape:
    shape: ShapeProfile
    det: object


@dataclass(frozen=True)
class StarCertificate:
    """Square shapes of a matrix, each verified nonsingular, up to ``max_order``."""

    matrix_id: str
    field: FieldDescriptor
    max_order: int
    checked: tuple
    extension_order: str | None = None

    ok = True

    @property
    def shapes(self) -> list:
        return [c.shape for c in self.checked]

    def transpose(self, matrix_id: str) -> "StarCertificate":
        checked = sorted(
            (CheckedShape(c.shape.transpose(), c.det) for c in self.checked),
            key=lambda c: (c.shape.need, c.shape.col_degrees, c.shape.row_degrees),
        )
        return StarCertificate(matrix_id, self.field, self.max_order, tuple(checked), self.extension_order)


@dataclass(frozen=True)
class FailureWitness:
    """First square shape (in canonical order) whose block matrix is singular."""

    matrix_id: str
    max_order: int
    shape: ShapeProfile
    matrix: ExactMatrix

    ok = False


def star_check(A: TorusMatrix, max_order: int, max_sum: int | None = None):
    """Return a :class:`StarCertificate`, or a :class:`FailureWitness` for the first singular shape.

    ``max_sum`` optionally drops shapes with ``sum U = sum V`` above it.
    """
    shapes = square_shapes(A.cols, A.rows, max_order)
    if max_sum is not None:
        shapes = [sh for sh in shapes if sh.sum_u <= max_sum]
    for sh in shapes:
        if sh.need > A.precision:
            raise PrecisionExhausted(
                f"shape {sh} needs {sh.need} coefficients, precision is {A.precision}",
                shape=sh,
                needed=sh.need,
                available=A.precision,
            )
    mid = matrix_digest(A)
    checked = []
    for sh in shapes:
        mat = assemble_block(A, sh).matrix
        det = exact_det(mat)
        if not det:
            return FailureWitness(mid, max_order, sh, mat)
        checked.append(CheckedShape(sh, det))
    return StarCertificate(mid, A.field, max_order, tuple(checked))
