from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sbalaurent.errors import DivisionByZero, FieldMismatch, PrecisionExhausted
from sbalaurent.field_kernel import (
    GF,
    NEG_INFINITY,
    QQ,
    FieldDescriptor,
    LaurentElem,
    LaurentTail,
    Poly,
    Scalar,
    abs_log,
    fractional_part,
    module_action,
    norm_log,
    poly_arith,
    scalar_arith,
    vanishes_to,
)

F2, F3, F7 = GF(2), GF(3), GF(7)


def test_field_descriptor_validation():
    assert QQ.characteristic == 0
    assert GF(7).characteristic == 7
    with pytest.raises(ValueError):
        GF(9)
    with pytest.raises(ValueError):
        FieldDescriptor("rational", 5)
    with pytest.raises(ValueError):
        FieldDescriptor("complex")


def test_scalar_examples():
    assert scalar_arith(Scalar(QQ, Fraction(1, 2)), Scalar(QQ, Fraction(1, 3)), "add").value == Fraction(5, 6)
    assert scalar_arith(Scalar(F7, 3), Scalar(F7, 5), "mul").value == 1
    assert Scalar(QQ, "2/4").value == Fraction(1, 2)
    assert str(Scalar(QQ, "2/4")) == "1/2"
    assert str(Scalar(QQ, "-6/3")) == "-2"


def test_scalar_errors():
    with pytest.raises(DivisionByZero):
        scalar_arith(Scalar(QQ, 1), Scalar(QQ, 0), "div")
    with pytest.raises(DivisionByZero):
        Scalar(F7, 3) / Scalar(F7, 7)
    with pytest.raises(FieldMismatch):
        scalar_arith(Scalar(QQ, 1), Scalar(F7, 1), "add")


def test_text_encoding_round_trip():
    for text in ["0", "5", "-3/7", "22/7"]:
        assert QQ.format(QQ.parse(text)) == text
    assert F7.format(F7.parse("12")) == "5"
    with pytest.raises(ValueError):
        QQ.parse("1/2/3")


def test_poly_examples():
    x1 = Poly(QQ, (1, 1))
    assert poly_arith(x1, Poly(QQ, (-1, -1)), "add").is_zero()
    assert poly_arith(x1, Poly(QQ, (-1, 1)), "mul") == Poly(QQ, (-1, 0, 1))
    assert poly_arith(Poly(F2, (1, 1)), Poly(F2, (1, 1)), "mul") == Poly(F2, (1, 0, 1))
    assert Poly(QQ, (0, 0)).degree is NEG_INFINITY
    with pytest.raises(FieldMismatch):
        Poly(QQ, (1,)) + Poly(F2, (1,))


def test_neg_infinity_ordering():
    assert NEG_INFINITY < -(10**9)
    assert not NEG_INFINITY > 0
    assert NEG_INFINITY + 5 is NEG_INFINITY
    assert 5 + NEG_INFINITY is NEG_INFINITY
    assert max(NEG_INFINITY, -3) == -3


def test_abs_log_examples():
    assert abs_log(Poly(QQ, (1, 0, 0, 1))) == 3
    assert abs_log(Poly.zero(QQ)) is NEG_INFINITY
    assert abs_log(LaurentElem(Poly.zero(QQ), LaurentTail(QQ, (0, 5, 0)))) == -2
    assert abs_log(LaurentElem(Poly(QQ, (0, 1)), LaurentTail(QQ, (3,)))) == 1


def test_fractional_part_examples():
    t = LaurentTail(QQ, (1, 0))
    assert fractional_part(LaurentElem(Poly(QQ, (3, 0, 1)), t)) == t
    assert fractional_part(LaurentElem(Poly(QQ, (0, 1)), LaurentTail(QQ, ()))) == LaurentTail.zero(QQ, 0)
    t = LaurentTail(QQ, (0, Fraction(1, 2)))
    assert fractional_part(LaurentElem(Poly.zero(QQ), t)) == t


def test_norm_log_examples():
    assert norm_log(LaurentTail(QQ, (0, 3, 0, 1))).value == -2
    res = norm_log(LaurentTail(QQ, (0, 0, 0)))
    assert res.value is NEG_INFINITY and not res.resolved and res.upper_bound == -3
    assert norm_log(LaurentTail(QQ, (Fraction(1, 2),))).value == -1


def test_module_action_examples():
    a = LaurentTail(QQ, (7, 8, 9))
    assert module_action(Poly(QQ, (0, 1)), a) == LaurentTail(QQ, (8, 9))
    t = LaurentTail(QQ, (1, Fraction(1, 2)))
    assert module_action(Poly(QQ, (1,)), t) == t
    # (x + 1)(x^-1 + x^-2) = 1 + 2x^-1 + x^-2 and 2 = 0 in F_2
    assert module_action(Poly(F2, (1, 1)), LaurentTail(F2, (1, 1, 0))) == LaurentTail(F2, (0, 1))
    with pytest.raises(PrecisionExhausted):
        module_action(Poly(QQ, (0, 0, 0, 1)), LaurentTail(QQ, (1, 2)))


def test_vanishes_to():
    t = LaurentTail(QQ, (0, 0, 1))
    assert vanishes_to(t, 2)
    assert not vanishes_to(t, 3)
    with pytest.raises(PrecisionExhausted):
        vanishes_to(LaurentTail(QQ, (0, 0)), 3)


# -- properties --------------------------------------------------------------

residues = st.integers(min_value=0, max_value=4)
rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def polys(draw, field=GF(5), max_len=5):
    elems = residues if field.is_finite else rationals
    return Poly(field, tuple(draw(st.lists(elems, max_size=max_len))))


@st.composite
def tails(draw, field=GF(5), precision=8):
    elems = residues if field.is_finite else rationals
    return LaurentTail(field, tuple(draw(st.lists(elems, min_size=precision, max_size=precision))))


@given(polys(), polys())
def test_ultrametric_and_multiplicative(p, q):
    s = abs_log(p + q)
    assert s <= max(abs_log(p), abs_log(q))
    if abs_log(p) != abs_log(q):
        assert s == max(abs_log(p), abs_log(q))
    assert abs_log(p * q) == abs_log(p) + abs_log(q)


@given(polys(), polys())
def test_discreteness(p, q):
    if p != q:
        assert abs_log(p - q) >= 0


@given(tails(), tails())
def test_norm_ultrametric(s, t):
    a, b, c = norm_log(s), norm_log(t), norm_log(s + t)
    if a.resolved and b.resolved:
        if c.resolved:
            assert c.value <= max(a.value, b.value)
        if a.value != b.value:
            assert c.value == max(a.value, b.value)
    if c.resolved:
        assert c.value <= -1


@given(polys(field=QQ, max_len=3), tails(field=QQ, precision=5), polys(field=QQ, max_len=3), tails(field=QQ, precision=5))
@settings(max_examples=60)
def test_fractional_part_additive(p, s, q, t):
    f, g = LaurentElem(p, s), LaurentElem(q, t)
    assert fractional_part(f + g) == fractional_part(f) + fractional_part(g)


@given(polys(max_len=3), polys(max_len=3), tails(precision=8))
def test_module_action_associative(p, q, t):
    lhs = module_action(p * q, t)
    rhs = module_action(p, module_action(q, t))
    n = min(lhs.precision, rhs.precision)
    assert lhs.truncate(n) == rhs.truncate(n)
