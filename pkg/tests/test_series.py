from fractions import Fraction

import pytest

from oracles import cofactor_det, minor_rank
from sbalaurent.constructor import generate
from sbalaurent.criterion import defect_scan, shapes_up_to
from sbalaurent.errors import PositiveCharacteristic
from sbalaurent.field_kernel import GF, QQ
from sbalaurent.hankel import ShapeProfile, TorusMatrix, assemble_block, exact_rank, hankel_window
from sbalaurent.series import (
    SeriesSpec,
    TerminatingSeriesWarning,
    binomial_tail,
    exp_tail,
    series_matrix,
    star_check,
)

F = Fraction


def test_exp_tail_examples():
    assert exp_tail(1, 4).coeffs == (1, F(1, 2), F(1, 6), F(1, 24))
    assert exp_tail(0, 3).coeffs == (0, 0, 0)
    assert exp_tail(2, 3).coeffs == (2, 2, F(4, 3))
    with pytest.raises(PositiveCharacteristic):
        exp_tail(1, 3, GF(5))


def test_binomial_tail_examples():
    assert binomial_tail(F(1, 2), 3).coeffs == (F(-1, 2), F(-1, 8), F(-1, 16))
    with pytest.warns(TerminatingSeriesWarning):
        assert binomial_tail(0, 3).coeffs == (0, 0, 0)
    assert binomial_tail(-1, 3).coeffs == (1, 1, 1)
    with pytest.raises(PositiveCharacteristic):
        binomial_tail(F(1, 2), 3, GF(7))


def test_series_spec():
    assert SeriesSpec("exp", "1/2", 2).tail().coeffs == (F(1, 2), F(1, 8))
    with pytest.raises(ValueError):
        SeriesSpec("sine", 1, 3)
    col = series_matrix("binomial", [F(1, 2), F(1, 3)], 4, "column")
    assert (col.rows, col.cols) == (2, 1)


def test_star_check_exp_one():
    A = TorusMatrix.from_coefficients(QQ, [[exp_tail(1, 5).coeffs]])
    cert = star_check(A, 5)
    assert cert.ok
    assert [(str(c.shape), c.det) for c in cert.checked] == [("1;1", 1), ("2;2", F(-1, 12)), ("3;3", F(-1, 8640))]


def test_star_check_rational_function_fails():
    A = TorusMatrix.from_coefficients(QQ, [[(1, 1, 1)]])
    w = star_check(A, 3)
    assert not w.ok
    assert w.shape == ShapeProfile((2,), (2,))
    assert w.matrix.tolist() == [[1, 1], [1, 1]]


def test_star_check_matches_constructor_certificate():
    g = generate(1, 1, 5)
    cert = star_check(g.matrix, 5)
    assert cert.checked == g.certificate.checked
    assert cert.matrix_id == g.certificate.matrix_id


def test_star_check_transpose_symmetry():
    for A in (generate(1, 2, 5).matrix, series_matrix("binomial", [F(1, 2), F(1, 3)], 7), series_matrix("exp", [1, 2], 6)):
        a, b = star_check(A, 5), star_check(A.transpose(), 5)
        assert a.ok == b.ok
        if a.ok:
            assert sorted(c.shape.transpose() for c in a.checked) == sorted(c.shape for c in b.checked)
        else:
            assert not b.ok


@pytest.mark.parametrize("lam", [1, 2, F(1, 2)])
def test_exp_hankel_determinants_nonzero(lam):
    t = exp_tail(lam, 7)
    for k in range(1, 5):
        rows = hankel_window(t, k, k).tolist()
        assert cofactor_det(rows) != 0


def test_terminating_binomial_fails_star_check():
    with pytest.warns(TerminatingSeriesWarning):
        t = binomial_tail(2, 5)
    assert t.coeffs == (-2, 1, 0, 0, 0)
    w = star_check(TorusMatrix(QQ, 1, 1, 5, ((t,),)), 5)
    assert not w.ok and w.shape == ShapeProfile((3,), (3,))


def test_star_implies_full_rank_on_window():
    g = generate(1, 2, 5)
    A = g.matrix
    rep = defect_scan(A, 3, 3)
    assert rep.c2_observed == 0
    for sh in shapes_up_to(A.cols, A.rows, 3, 3):
        rows = assemble_block(A, sh).matrix.tolist()
        expected = min(sh.sum_u, sh.sum_v)
        assert exact_rank(assemble_block(A, sh).matrix) == expected
        if len(rows) * (len(rows[0]) if rows else 0) <= 16:
            assert minor_rank(rows) == expected
