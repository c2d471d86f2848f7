"""Exact arithmetic for K, K[x] and truncated elements of K((1/x)).

Scalars are stored as plain Python values in canonical form: ``Fraction``
for the rationals, an ``int`` in ``[0, p)`` for a prime field.  The owning
:class:`FieldDescriptor` does the arithmetic.  Containers (:class:`Poly`,
:class:`LaurentTail`) carry their field and refuse to mix with another one.

Absolute values and norms are reported by their integer exponent only, so
``|F| = e^M`` is returned as ``M`` and ``|0| = 0`` as :data:`NEG_INFINITY`.
A tail holds the coefficients ``a_1 .. a_P`` of ``x^-1 .. x^-P``; whatever
lies beyond index ``P`` is unknown, never assumed zero.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

from .errors import DivisionByZero, FieldMismatch, PrecisionExhausted

__all__ = [
    "NEG_INFINITY",
    "FieldDescriptor",
    "QQ",
    "GF",
    "Scalar",
    "scalar_arith",
    "Poly",
    "poly_arith",
    "LaurentTail",
    "LaurentElem",
    "NormLog",
    "abs_log",
    "fractional_part",
    "norm_log",
    "module_action",
    "vanishes_to",
]


@functools.total_ordering
class _NegInfinity:
    """Log-scale exponent of the zero element; below every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NEG_INFINITY"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("NEG_INFINITY")

    def __lt__(self, other):
        if other is self:
            return False
        if isinstance(other, int):
            return True
        return NotImplemented

    def __add__(self, other):
        if other is self or isinstance(other, int):
            return self
        return NotImplemented

    __radd__ = __add__

    def __reduce__(self):
        return (_NegInfinity, ())


NEG_INFINITY = _NegInfinity()

ExtendedInt = Union[int, _NegInfinity]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for n < 3.3e24
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldDescriptor:
    """The coefficient field K: either ``Q`` or ``F_p`` for a word-size prime."""

    kind: str
    modulus: int | None = None

    def __post_init__(self):
        if self.kind == "rational":
            if self.modulus is not None:
                raise ValueError("the rational field takes no modulus")
        elif self.kind == "prime":
            if not isinstance(self.modulus, int) or not _is_prime(self.modulus):
                raise ValueError(f"modulus {self.modulus!r} is not a prime")
            if self.modulus >= 2**63:
                raise ValueError("prime moduli are limited to machine-word size")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def rational(cls) -> "FieldDescriptor":
        return cls("rational")

    @classmethod
    def prime(cls, p: int) -> "FieldDescriptor":
        return cls("prime", p)

    @property
    def characteristic(self) -> int:
        return 0 if self.kind == "rational" else self.modulus

    @property
    def is_finite(self) -> bool:
        return self.kind == "prime"

    def __str__(self):
        return "QQ" if self.kind == "rational" else f"GF({self.modulus})"

    # -- element handling -------------------------------------------------

    @property
    def zero(self):
        return Fraction(0) if self.kind == "rational" else 0

    @property
    def one(self):
        return Fraction(1) if self.kind == "rational" else 1

    def coerce(self, value):
        """Return the canonical representative of ``value`` (int, Fraction or text)."""
        if isinstance(value, Scalar):
            if value.field != self:
                raise FieldMismatch(f"{value.field} scalar used in {self}")
            return value.value
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, bool):
            value = int(value)
        if self.kind == "rational":
            if isinstance(value, (int, Fraction)):
                return Fraction(value)
            raise TypeError(f"cannot coerce {type(value).__name__} to an exact rational")
        if isinstance(value, int):
            return value % self.modulus
        if isinstance(value, Fraction):
            if value.denominator % self.modulus == 0:
                raise DivisionByZero(f"{value} has no image in {self}")
            return value.numerator * pow(value.denominator, -1, self.modulus) % self.modulus
        raise TypeError(f"cannot coerce {type(value).__name__} to {self}")

    def parse(self, text: str):
        text = text.strip()
        if self.kind == "rational":
            num, sep, den = text.partition("/")
            try:
                n = int(num)
                d = int(den) if sep else 1
            except ValueError:
                raise ValueError(f"malformed rational {text!r}") from None
            if d == 0:
                raise DivisionByZero(f"zero denominator in {text!r}")
            return Fraction(n, d)
        try:
            n = int(text)
        except ValueError:
            raise ValueError(f"malformed residue {text!r}") from None
        return n % self.modulus

    def format(self, value) -> str:
        if self.kind == "rational":
            value = Fraction(value)
            if value.denominator == 1:
                return str(value.numerator)
            return f"{value.numerator}/{value.denominator}"
        return str(value % self.modulus)

    def add(self, a, b):
        if self.kind == "rational":
            return a + b
        return (a + b) % self.modulus

    def sub(self, a, b):
        if self.kind == "rational":
            return a - b
        return (a - b) % self.modulus

    def neg(self, a):
        if self.kind == "rational":
            return -a
        return -a % self.modulus

    def mul(self, a, b):
        if self.kind == "rational":
            return a * b
        return a * b % self.modulus

    def inv(self, a):
        if not a:
            raise DivisionByZero(f"inverse of zero in {self}")
        if self.kind == "rational":
            return 1 / a
        return pow(a, -1, self.modulus)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def elements(self) -> Iterator:
        """Enumerate the field (prime fields only)."""
        if self.kind == "rational":
            from .errors import InfiniteField

            raise InfiniteField("the rationals cannot be enumerated")
        return iter(range(self.modulus))


QQ = FieldDescriptor.rational()


def GF(p: int) -> FieldDescriptor:
    return FieldDescriptor.prime(p)


@dataclass(frozen=True)
class Scalar:
    """An element of K bundled with its field, for use at API boundaries."""

    field: FieldDescriptor
    value: object

    def __post_init__(self):
        object.__setattr__(self, "value", self.field.coerce(self.value))

    def _check(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatch(f"cannot combine {self.field} and {other.field}")
            return other.value
        return self.field.coerce(other)

    def __add__(self, other):
        return Scalar(self.field, self.field.add(self.value, self._check(other)))

    def __sub__(self, other):
        return Scalar(self.field, self.field.sub(self.value, self._check(other)))

    def __mul__(self, other):
        return Scalar(self.field, self.field.mul(self.value, self._check(other)))

    def __truediv__(self, other):
        return Scalar(self.field, self.field.div(self.value, self._check(other)))

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.value))

    def __bool__(self):
        return bool(self.value)

    def __str__(self):
        return self.field.format(self.value)


def scalar_arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    if a.field != b.field:
        raise FieldMismatch(f"cannot combine {a.field} and {b.field}")
    ops = {"add": a.__add__, "sub": a.__sub__, "mul": a.__mul__, "div": a.__truediv__}
    try:
        return ops[op](b)
    except KeyError:
        raise ValueError(f"unknown scalar operation {op!r}") from None


# ---------------------------------------------------------------------------
# K[x]


@dataclass(frozen=True)
class Poly:
    """Polynomial over K, coefficients in ascending powers of x, no trailing zeros."""

    field: FieldDescriptor
    coeffs: tuple = ()

    def __post_init__(self):
        cs = [self.field.coerce(c) for c in self.coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def zero(cls, field: FieldDescriptor) -> "Poly":
        return cls(field, ())

    @classmethod
    def monomial(cls, field: FieldDescriptor, degree: int, coeff=1) -> "Poly":
        return cls(field, (0,) * degree + (coeff,))

    @property
    def degree(self) -> ExtendedInt:
        return len(self.coeffs) - 1 if self.coeffs else NEG_INFINITY

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, j: int):
        return self.coeffs[j] if 0 <= j < len(self.coeffs) else self.field.zero

    def _same_field(self, other: "Poly"):
        if not isinstance(other, Poly):
            return NotImplemented
        if other.field != self.field:
            raise FieldMismatch(f"cannot combine {self.field} and {other.field} polynomials")
        return other

    def __add__(self, other):
        other = self._same_field(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        f = self.field
        return Poly(f, tuple(f.add(self.coeff(j), other.coeff(j)) for j in range(n)))

    def __neg__(self):
        return Poly(self.field, tuple(self.field.neg(c) for c in self.coeffs))

    def __sub__(self, other):
        other = self._same_field(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __mul__(self, other):
        other = self._same_field(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return Poly.zero(self.field)
        f = self.field
        out = [f.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = f.add(out[i + j], f.mul(a, b))
        return Poly(f, tuple(out))

    def scale(self, c) -> "Poly":
        c = self.field.coerce(c)
        return Poly(self.field, tuple(self.field.mul(c, a) for a in self.coeffs))

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for j, c in reversed(list(enumerate(self.coeffs))):
            if not c:
                continue
            s = self.field.format(c)
            if j == 0:
                terms.append(s)
            else:
                mono = "x" if j == 1 else f"x^{j}"
                if s in ("1", "-1"):
                    s = s[:-1] + mono
                else:
                    s = f"{s}*{mono}"
                terms.append(s)
        out = terms[0]
        for t in terms[1:]:
            out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        return out


def poly_arith(p: Poly, q: Poly, op: str) -> Poly:
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown polynomial operation {op!r}")


# ---------------------------------------------------------------------------
# truncated Laurent series and the torus L / K[x]


@dataclass(frozen=True)
class LaurentTail:
    """Known coefficients ``(a_1, .., a_P)`` of ``sum a_i x^-i``; a torus element."""

    field: FieldDescriptor
    coeffs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.field.coerce(c) for c in self.coeffs))

    @classmethod
    def zero(cls, field: FieldDescriptor, precision: int) -> "LaurentTail":
        return cls(field, (field.zero,) * precision)

    @property
    def precision(self) -> int:
        return len(self.coeffs)

    def coeff(self, i: int):
        """Coefficient of ``x^-i`` (1-based)."""
        if not 1 <= i <= len(self.coeffs):
            raise PrecisionExhausted(
                f"coefficient {i} is unknown at precision {self.precision}",
                needed=i,
                available=self.precision,
            )
        return self.coeffs[i - 1]

    def truncate(self, precision: int) -> "LaurentTail":
        if precision > self.precision:
            raise PrecisionExhausted(
                f"cannot extend precision {self.precision} to {precision}",
                needed=precision,
                available=self.precision,
            )
        return LaurentTail(self.field, self.coeffs[:precision])

    def _same_field(self, other):
        if not isinstance(other, LaurentTail):
            return NotImplemented
        if other.field != self.field:
            raise FieldMismatch(f"cannot combine {self.field} and {other.field} tails")
        return other

    def __add__(self, other):
        other = self._same_field(other)
        if other is NotImplemented:
            return other
        f = self.field
        return LaurentTail(f, tuple(f.add(a, b) for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return LaurentTail(self.field, tuple(self.field.neg(a) for a in self.coeffs))

    def __sub__(self, other):
        other = self._same_field(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def scale(self, c) -> "LaurentTail":
        c = self.field.coerce(c)
        return LaurentTail(self.field, tuple(self.field.mul(c, a) for a in self.coeffs))

    def __str__(self):
        body = ", ".join(self.field.format(c) for c in self.coeffs)
        return f"({body})"


@dataclass(frozen=True)
class LaurentElem:
    """``poly + tail``: an element of L known down to ``x^-precision``."""

    poly: Poly
    tail: LaurentTail

    def __post_init__(self):
        if self.poly.field != self.tail.field:
            raise FieldMismatch("polynomial part and tail live in different fields")

    @property
    def field(self) -> FieldDescriptor:
        return self.poly.field

    def __add__(self, other):
        if not isinstance(other, LaurentElem):
            return NotImplemented
        return LaurentElem(self.poly + other.poly, self.tail + other.tail)


@dataclass(frozen=True)
class NormLog:
    """Exponent of ``||t||``.

    When ``resolved`` is false every known coefficient vanished; ``value`` is
    then NEG_INFINITY and only ``||t|| < e^upper_bound`` is established.
    """

    value: ExtendedInt
    resolved: bool
    precision: int = dc_field(default=0)

    @property
    def upper_bound(self) -> int:
        if self.resolved:
            return self.value + 1
        return -self.precision


def abs_log(f) -> ExtendedInt:
    """Exponent ``M`` with ``|f| = e^M``; NEG_INFINITY when f is zero to known precision."""
    if isinstance(f, Poly):
        return f.degree
    if isinstance(f, LaurentTail):
        f = LaurentElem(Poly.zero(f.field), f)
    if not f.poly.is_zero():
        return f.poly.degree
    for i, a in enumerate(f.tail.coeffs, start=1):
        if a:
            return -i
    return NEG_INFINITY


def fractional_part(f: LaurentElem) -> LaurentTail:
    return f.tail


def norm_log(t: LaurentTail) -> NormLog:
    for i, a in enumerate(t.coeffs, start=1):
        if a:
            return NormLog(-i, True, t.precision)
    return NormLog(NEG_INFINITY, False, t.precision)


def module_action(p: Poly, t: LaurentTail) -> LaurentTail:
    """Tail of ``p * t``; coefficient ``i`` is ``sum_j p_j a_{i+j}``, precision ``P - deg p``."""
    if p.field != t.field:
        raise FieldMismatch(f"cannot act by a {p.field} polynomial on a {t.field} tail")
    f = t.field
    if p.is_zero():
        return LaurentTail.zero(f, t.precision)
    d = p.degree
    if d > t.precision:
        raise PrecisionExhausted(
            f"degree {d} exceeds tail precision {t.precision}",
            needed=d,
            available=t.precision,
        )
    a = t.coeffs
    out = []
    for i in range(1, t.precision - d + 1):
        s = f.zero
        for j, pj in enumerate(p.coeffs):
            if pj:
                s = f.add(s, f.mul(pj, a[i + j - 1]))
        out.append(s)
    return LaurentTail(f, tuple(out))


def vanishes_to(t: LaurentTail, depth: int) -> bool:
    """True iff coefficients ``1..depth`` are all zero, i.e. ``||t|| < e^-depth``."""
    if depth > t.precision:
        if any(t.coeffs):
            return False
        raise PrecisionExhausted(
            f"cannot decide ||t|| < e^-{depth} at precision {t.precision}",
            needed=depth,
            available=t.precision,
        )
    return not any(t.coeffs[:depth])


def tail_from(field: FieldDescriptor, values: Iterable) -> LaurentTail:
    return LaurentTail(field, tuple(values))


def poly_from(field: FieldDescriptor, values: Sequence) -> Poly:
    return Poly(field, tuple(values))
