"""Solution spaces, defect scans and the product inequality for torus matrices.

For a shape ``(U; V)`` the solution space collects polynomial vectors
``xi`` with ``deg xi_n <= U_n - 1`` whose linear forms ``sum_n alpha_mn xi_n``
have vanishing tail coefficients ``1..V_m``.  Its dimension is
``sum U - rank`` of the assembled block Hankel matrix.

Every verdict here is relative to a finite window (shape sums and precision);
nothing is claimed about shapes or vectors outside it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Iterator, Sequence

from .errors import (
    EmptySearchSpace,
    FieldMismatch,
    InfiniteField,
    PrecisionExhausted,
    ZeroLinearForm,
    ZeroVector,
)
from .field_kernel import LaurentTail, Poly, module_action, norm_log
from .hankel import ShapeProfile, TorusMatrix, assemble_block, exact_rank, nullspace

__all__ = [
    "PolyVector",
    "DefectRecord",
    "DefectReport",
    "MinProductReport",
    "ChainCheck",
    "compositions",
    "shapes_up_to",
    "solution_dim",
    "kernel_basis",
    "linear_forms",
    "in_solution_space",
    "product_log",
    "defect_scan",
    "min_product_scan",
    "constant_chain_check",
    "square_shapes",
]

PolyVector = tuple  # tuple[Poly, ...]


def compositions(total: int, parts: int) -> Iterator[tuple]:
    """All tuples of ``parts`` nonnegative ints summing to ``total``, lexicographic."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def shapes_up_to(cols: int, rows: int, max_sum_u: int, max_sum_v: int) -> list:
    """Every shape with ``sum U <= max_sum_u`` and ``sum V <= max_sum_v``.

    Ordered by ``(sum U + sum V, U, V)``.
    """
    us = [u for s in range(max_sum_u + 1) for u in compositions(s, cols)]
    vs = [v for s in range(max_sum_v + 1) for v in compositions(s, rows)]
    shapes = [ShapeProfile(u, v) for u in us for v in vs]
    shapes.sort(key=lambda sh: (sh.sum_u + sh.sum_v, sh.col_degrees, sh.row_degrees))
    return shapes


def _check_shape(A: TorusMatrix, shape: ShapeProfile):
    if len(shape.col_degrees) != A.cols or len(shape.row_degrees) != A.rows:
        raise ValueError(f"shape {shape} does not fit a {A.rows}x{A.cols} matrix")


def solution_dim(A: TorusMatrix, shape: ShapeProfile) -> int:
    _check_shape(A, shape)
    return shape.sum_u - exact_rank(assemble_block(A, shape).matrix)


def _split(vec: Sequence, A: TorusMatrix, shape: ShapeProfile) -> PolyVector:
    out, pos = [], 0
    for u in shape.col_degrees:
        out.append(Poly(A.field, tuple(vec[pos : pos + u])))
        pos += u
    return tuple(out)


def kernel_basis(A: TorusMatrix, shape: ShapeProfile) -> list:
    """A basis of the solution space as polynomial vectors (``deg xi_n < U_n``)."""
    _check_shape(A, shape)
    block = assemble_block(A, shape)
    return [_split(v, A, shape) for v in nullspace(block.matrix)]


def linear_forms(A: TorusMatrix, xi: PolyVector) -> list:
    """The tails of ``sum_n alpha_mn xi_n`` for every row ``m``."""
    if len(xi) != A.cols:
        raise ValueError(f"vector of length {len(xi)} for a matrix with {A.cols} columns")
    for p in xi:
        if p.field != A.field:
            raise FieldMismatch(f"{p.field} polynomial against a {A.field} matrix")
    forms = []
    for m in range(A.rows):
        acc = None
        for n in range(A.cols):
            t = module_action(xi[n], A.entries[m][n])
            acc = t if acc is None else acc + t
        if acc is None:
            # a row of a matrix without columns: the form is the zero polynomial
            acc = LaurentTail.zero(A.field, A.precision)
        forms.append(acc)
    return forms


def in_solution_space(A: TorusMatrix, shape: ShapeProfile, xi: PolyVector) -> bool:
    """Membership test through degrees and tail coefficients (no linear algebra)."""
    _check_shape(A, shape)
    for p, u in zip(xi, shape.col_degrees):
        if not p.is_zero() and p.degree >= u:
            return False
    for form, v in zip(linear_forms(A, xi), shape.row_degrees):
        if v > form.precision:
            raise PrecisionExhausted(
                f"form known to {form.precision} coefficients, shape {shape} asks for {v}",
                shape=shape,
                needed=v,
                available=form.precision,
            )
        if any(form.coeffs[:v]):
            return False
    return True


def product_log(A: TorusMatrix, xi: PolyVector) -> int:
    """Exponent of ``prod_m ||sum_n alpha_mn xi_n|| * prod_n max(|xi_n|, 1)``."""
    if all(p.is_zero() for p in xi):
        raise ZeroVector("the product inequality excludes the zero vector")
    total = 0
    for m, form in enumerate(linear_forms(A, xi)):
        nl = norm_log(form)
        if not nl.resolved:
            raise ZeroLinearForm(
                f"form {m} vanishes to all {form.precision} known coefficients",
                row=m,
                precision=form.precision,
                xi=xi,
            )
        total += nl.value
    for p in xi:
        if not p.is_zero():
            total += max(p.degree, 0)
    return total


@dataclass(frozen=True)
class DefectRecord:
    shape: ShapeProfile
    dim: int
    dirichlet_bound: int
    defect: int


@dataclass(frozen=True)
class DefectReport:
    rows: int
    cols: int
    records: tuple
    c2_observed: int
    c1_derived: int
    max_sum_u: int
    max_sum_v: int
    precision: int
    skipped: int = 0

    @property
    def window(self) -> dict:
        return {
            "max_sum_u": self.max_sum_u,
            "max_sum_v": self.max_sum_v,
            "precision": self.precision,
            "skipped_beyond_precision": self.skipped,
        }


def defect_scan(A: TorusMatrix, max_sum_u: int, max_sum_v: int, clip: bool = False) -> DefectReport:
    """Dimension, Dirichlet bound and defect for every shape in the window.

    With ``clip`` set, shapes that read beyond the known precision are
    skipped (and counted) instead of raising :class:`PrecisionExhausted`.
    """
    shapes = shapes_up_to(A.cols, A.rows, max_sum_u, max_sum_v)
    kept = [sh for sh in shapes if sh.need <= A.precision]
    if not clip and len(kept) != len(shapes):
        bad = next(sh for sh in shapes if sh.need > A.precision)
        raise PrecisionExhausted(
            f"shape {bad} needs {bad.need} coefficients, precision is {A.precision}",
            shape=bad,
            needed=bad.need,
            available=A.precision,
        )
    records = []
    for sh in kept:
        dim = solution_dim(A, sh)
        bound = max(0, sh.sum_u - sh.sum_v)
        records.append(DefectRecord(sh, dim, bound, dim - bound))
    c2 = max((r.defect for r in records), default=0)
    k = A.rows + A.cols
    return DefectReport(
        rows=A.rows,
        cols=A.cols,
        records=tuple(records),
        c2_observed=c2,
        c1_derived=k * k + k * c2,
        max_sum_u=max_sum_u,
        max_sum_v=max_sum_v,
        precision=A.precision,
        skipped=len(shapes) - len(kept),
    )


@dataclass(frozen=True)
class MinProductReport:
    degree_bound: int
    min_log: object  # int, or None when every vector hit a vanishing form
    witness: PolyVector | None
    zero_form_witnesses: tuple = dc_field(default=())
    searched: int = 0

    @property
    def c1_observed(self):
        """Smallest integer ``C`` with ``-C < min_log`` over the searched vectors."""
        return None if self.min_log is None else 1 - self.min_log


def _vectors(A: TorusMatrix, degree_bound: int) -> Iterator[PolyVector]:
    f = A.field
    n, d = A.cols, degree_bound
    for flat in itertools.product(range(f.modulus), repeat=n * d):
        if not any(flat):
            continue
        yield tuple(Poly(f, flat[k * d : (k + 1) * d]) for k in range(n))


def min_product_scan(A: TorusMatrix, degree_bound: int) -> MinProductReport:
    """Exhaustive minimum of :func:`product_log` over ``deg xi_n < degree_bound``."""
    if not A.field.is_finite:
        raise InfiniteField("exhaustive search needs a finite coefficient field")
    if degree_bound <= 0 or A.cols == 0:
        raise EmptySearchSpace("no nonzero vector has every degree below the bound")
    best, witness = None, None
    zero_forms = []
    searched = 0
    for xi in _vectors(A, degree_bound):
        searched += 1
        try:
            val = product_log(A, xi)
        except ZeroLinearForm as exc:
            zero_forms.append((xi, exc.row, exc.precision))
            continue
        if best is None or val < best:
            best, witness = val, xi
    return MinProductReport(degree_bound, best, witness, tuple(zero_forms), searched)


@dataclass(frozen=True)
class ChainCheck:
    """Outcome of comparing an exhaustive product minimum against a defect scan."""

    min_report: MinProductReport
    defect_report: DefectReport
    c2_observed: int
    c1_bound: int
    holds: bool | None
    exempt: bool

    @property
    def c2_from_c1(self):
        """The dimension constant implied by the observed product constant."""
        c1 = self.min_report.c1_observed
        return None if c1 is None else c1 - self.defect_report.rows


def constant_chain_check(A: TorusMatrix, degree_bound: int) -> ChainCheck:
    """Check ``min product_log >= -((M+N)^2 + (M+N) c2)`` on a desk-scale window.

    ``c2`` is the largest defect over shapes with every ``U_n`` up to
    ``degree_bound + M + N + c2`` (iterated to a fixed point) and every
    ``V_m`` the precision allows.  A matrix with a vanishing linear form is
    reported as exempt: it disproves the bound-free property on this window.
    """
    M, N = A.rows, A.cols
    k = M + N
    mins = min_product_scan(A, degree_bound)
    c2 = 0
    while True:
        report = defect_scan(A, N * (degree_bound + k + c2), M * A.precision, clip=True)
        if report.c2_observed <= c2:
            break
        c2 = report.c2_observed
    c1 = k * k + k * c2
    exempt = bool(mins.zero_form_witnesses)
    holds = None if mins.min_log is None else mins.min_log >= -c1
    return ChainCheck(mins, report, c2, c1, holds, exempt)


def _capped_compositions(total: int, parts: int, cap: int) -> Iterator[tuple]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        if total <= cap:
            yield (total,)
        return
    for first in range(min(total, cap) + 1):
        for rest in _capped_compositions(total - first, parts - 1, cap):
            yield (first,) + rest


def square_shapes(cols: int, rows: int, max_order: int) -> list:
    """Nontrivial square shapes whose block matrix reads only indices ``<= max_order``.

    Ordered by ``(need, U, V)``; the empty ``0 x 0`` shape is left out.
    """
    out = []
    for s in range(1, min(cols, rows) * max_order + 1):
        for u in _capped_compositions(s, cols, max_order):
            for v in _capped_compositions(s, rows, max_order):
                sh = ShapeProfile(u, v)
                if sh.need <= max_order:
                    out.append(sh)
    out.sort(key=lambda sh: (sh.need, sh.col_degrees, sh.row_degrees))
    return out
