"""Laurent polynomials and rational functions in the Kauffman variable ``A``.

Everything is exact over the rationals. ``q = A**2``; generic ``q`` is modeled by
working in the function field Q(A), so no specialization ever happens implicitly.

Polynomial kernels (products, gcds) are delegated to FLINT's ``fmpq_poly``; the
classes here keep the Laurent shift and the canonical normal form.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Union

from flint import fmpq, fmpq_poly

Scalar = Union[int, Fraction]


class RatFuncZeroDivision(ZeroDivisionError):
    """Raised when dividing by the zero rational function."""


class SpecializationError(ValueError):
    """Raised when evaluating at a point where the denominator vanishes."""


def _to_fmpq(c) -> fmpq:
    if isinstance(c, fmpq):
        return c
    if isinstance(c, Fraction):
        return fmpq(c.numerator, c.denominator)
    return fmpq(int(c))


def _to_fraction(c: fmpq) -> Fraction:
    return Fraction(int(c.p), int(c.q))


_ZERO_POLY = fmpq_poly([])
_ONE_POLY = fmpq_poly([1])


def _strip_low(p: fmpq_poly) -> tuple[int, fmpq_poly]:
    """Split ``p = x**k * r`` with ``r(0) != 0``."""
    if p == 0:
        return 0, _ZERO_POLY
    cs = p.coeffs()
    k = 0
    while cs[k] == 0:
        k += 1
    if k == 0:
        return 0, p
    return k, fmpq_poly(cs[k:])


def _shift_poly(p: fmpq_poly, k: int) -> fmpq_poly:
    if k == 0 or p == 0:
        return p
    return fmpq_poly([0] * k + p.coeffs())


class LaurentPoly:
    """Finitely supported sum ``sum c_k A**k`` with rational ``c_k``."""

    __slots__ = ("_low", "_poly")

    def __init__(self, coeffs: Mapping[int, Scalar] | None = None):
        low, poly = 0, _ZERO_POLY
        if coeffs:
            items = {int(k): c for k, c in coeffs.items() if c != 0}
            if items:
                lo = min(items)
                hi = max(items)
                dense = [0] * (hi - lo + 1)
                for k, c in items.items():
                    dense[k - lo] = _to_fmpq(c)
                low, poly = lo, fmpq_poly(dense)
        self._low = low
        self._poly = poly

    @classmethod
    def _raw(cls, low: int, poly: fmpq_poly) -> "LaurentPoly":
        k, r = _strip_low(poly)
        obj = cls.__new__(cls)
        obj._low = low + k if r != 0 else 0
        obj._poly = r
        return obj

    @classmethod
    def monomial(cls, exponent: int, coeff: Scalar = 1) -> "LaurentPoly":
        return cls({exponent: coeff})

    @property
    def coeffs(self) -> dict[int, Fraction]:
        return {
            self._low + i: _to_fraction(c)
            for i, c in enumerate(self._poly.coeffs())
            if c != 0
        }

    def is_zero(self) -> bool:
        return self._poly == 0

    @property
    def low_degree(self) -> int:
        return self._low

    @property
    def high_degree(self) -> int:
        if self.is_zero():
            raise ValueError("zero polynomial has no degree")
        return self._low + self._poly.degree()

    def __add__(self, other):
        other = _coerce_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        lo = min(self._low, other._low)
        p = _shift_poly(self._poly, self._low - lo) + _shift_poly(other._poly, other._low - lo)
        return LaurentPoly._raw(lo, p)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self._low, -self._poly)

    def __sub__(self, other):
        other = _coerce_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        return LaurentPoly._raw(self._low + other._low, self._poly * other._poly)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self.coeffs) != 1:
                raise ValueError("only monomials have Laurent inverses")
            ((k, c),) = self.coeffs.items()
            return LaurentPoly({-k * -n: Fraction(1) / c ** -n})
        return LaurentPoly._raw(self._low * n, self._poly**n)

    def __eq__(self, other):
        other = _coerce_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        return self._low == other._low and self._poly == other._poly

    def __hash__(self):
        return hash((self._low, tuple(self._poly.coeffs())))

    def evaluate(self, value: Scalar) -> Fraction:
        v = _to_fmpq(value)
        if v == 0 and self._low < 0 and not self.is_zero():
            raise SpecializationError("negative powers of A at A = 0")
        return _to_fraction(self._poly(v) * v**self._low) if not self.is_zero() else Fraction(0)

    def __repr__(self):
        return f"LaurentPoly({format_laurent(self)!r})"

    def __str__(self):
        return format_laurent(self)


def _coerce_laurent(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, (int, Fraction, fmpq)):
        return LaurentPoly({0: x})
    return NotImplemented


def format_laurent(p: LaurentPoly, var: str = "A", step: int = 1) -> str:
    """Render ``p`` in descending exponent order, e.g. ``-A^2 - A^-2``.

    With ``step=2`` the exponents are divided by two (rendering in ``q = A^2``).
    """
    terms = sorted(p.coeffs.items(), reverse=True)
    if not terms:
        return "0"
    out = []
    for i, (k, c) in enumerate(terms):
        e = k // step
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            mono = var if e == 1 else f"{var}^{e}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        if i == 0:
            out.append(("-" if sign == "-" else "") + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


class RatFunc:
    """An element of Q(A) kept in canonical reduced form.

    The value is ``A**shift * num(A) / den(A)`` where ``num`` and ``den`` are
    coprime polynomials, ``den(0) != 0`` and ``den`` is monic. Equal values
    therefore have identical representations.
    """

    __slots__ = ("_shift", "_num", "_den")

    def __init__(self, numerator=0, denominator=1):
        num = _coerce_laurent(numerator) if not isinstance(numerator, RatFunc) else None
        if isinstance(numerator, RatFunc) or isinstance(denominator, RatFunc):
            val = _as_ratfunc(numerator) / _as_ratfunc(denominator)
            self._shift, self._num, self._den = val._shift, val._num, val._den
            return
        den = _coerce_laurent(denominator)
        if num is NotImplemented or den is NotImplemented:
            raise TypeError("RatFunc needs Laurent polynomial or rational operands")
        if den.is_zero():
            raise RatFuncZeroDivision("zero denominator")
        self._shift, self._num, self._den = _normalize(num._low - den._low, num._poly, den._poly)

    @classmethod
    def _raw(cls, shift: int, num: fmpq_poly, den: fmpq_poly) -> "RatFunc":
        obj = cls.__new__(cls)
        obj._shift, obj._num, obj._den = shift, num, den
        return obj

    @property
    def numerator(self) -> LaurentPoly:
        return LaurentPoly._raw(self._shift, self._num)

    @property
    def denominator(self) -> LaurentPoly:
        return LaurentPoly._raw(0, self._den)

    def is_zero(self) -> bool:
        return self._num == 0

    def is_laurent(self) -> bool:
        return self._den == 1

    def as_laurent(self) -> LaurentPoly:
        if not self.is_laurent():
            raise ValueError(f"{self} is not a Laurent polynomial")
        return self.numerator

    def __add__(self, other):
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        if self._num == 0:
            return other
        if other._num == 0:
            return self
        s = min(self._shift, other._shift)
        n1 = _shift_poly(self._num, self._shift - s)
        n2 = _shift_poly(other._num, other._shift - s)
        if self._den == other._den:
            return RatFunc._from_parts(s, n1 + n2, self._den)
        return RatFunc._from_parts(s, n1 * other._den + n2 * self._den, self._den * other._den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(self._shift, -self._num, self._den)

    def __sub__(self, other):
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        if self._num == 0 or other._num == 0:
            return ZERO
        s = self._shift + other._shift
        if self._den == 1 and other._den == 1:
            return RatFunc._raw(s, self._num * other._num, _ONE_POLY)
        # cross-cancel before multiplying; both inputs are already reduced
        g1 = self._num.gcd(other._den)
        g2 = other._num.gcd(self._den)
        n = (self._num // g1) * (other._num // g2)
        d = (self._den // g2) * (other._den // g1)
        lc = d.coeffs()[-1]
        return RatFunc._raw(s, n / lc, d / lc)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self._num == 0:
            raise RatFuncZeroDivision("inverse of zero")
        return RatFunc._from_parts(-self._shift, self._den, self._num)

    def __truediv__(self, other):
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _as_ratfunc(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    @classmethod
    def _from_parts(cls, shift: int, num: fmpq_poly, den: fmpq_poly) -> "RatFunc":
        return cls._raw(*_normalize(shift, num, den))

    def __eq__(self, other):
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        return self._shift == other._shift and self._num == other._num and self._den == other._den

    def __hash__(self):
        return hash((self._shift, tuple(self._num.coeffs()), tuple(self._den.coeffs())))

    def evaluate(self, value: Scalar) -> Fraction:
        """Specialize ``A = value``; raises SpecializationError on a pole."""
        d = self.denominator.evaluate(value)
        if d == 0:
            raise SpecializationError(f"pole at A = {value}")
        return self.numerator.evaluate(value) / d

    def in_q(self) -> bool:
        """True when only even powers of A occur, so the value lies in Q(q)."""
        return all(k % 2 == 0 for k in self.numerator.coeffs) and all(
            k % 2 == 0 for k in self.denominator.coeffs
        )

    def format(self, var: str = "A") -> str:
        step = 1
        if var != "A":
            if not self.in_q():
                raise ValueError(f"{self} is not a function of q = A^2")
            step = 2
        num = format_laurent(self.numerator, var, step)
        if self.is_laurent():
            return num
        return f"({num})/({format_laurent(self.denominator, var, step)})"

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"RatFunc({self.format()!r})"


def _normalize(shift: int, num: fmpq_poly, den: fmpq_poly) -> tuple[int, fmpq_poly, fmpq_poly]:
    if den == 0:
        raise RatFuncZeroDivision("zero denominator")
    if num == 0:
        return 0, _ZERO_POLY, _ONE_POLY
    k, num = _strip_low(num)
    j, den = _strip_low(den)
    shift += k - j
    if den.degree() > 0:
        g = num.gcd(den)
        if g != 1:
            num = num // g
            den = den // g
    lc = den.coeffs()[-1]
    if lc != 1:
        num = num / lc
        den = den / lc
    return shift, num, den


def _as_ratfunc(x):
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, LaurentPoly):
        return RatFunc._raw(x._low, x._poly, _ONE_POLY) if not x.is_zero() else ZERO
    if isinstance(x, (int, Fraction, fmpq)):
        if x == 0:
            return ZERO
        return RatFunc._raw(0, fmpq_poly([_to_fmpq(x)]), _ONE_POLY)
    return NotImplemented


def as_ratfunc(x) -> RatFunc:
    """Coerce an int, Fraction, LaurentPoly or RatFunc to RatFunc."""
    r = _as_ratfunc(x)
    if r is NotImplemented:
        raise TypeError(f"cannot coerce {type(x).__name__} to RatFunc")
    return r


ZERO = RatFunc._raw(0, _ZERO_POLY, _ONE_POLY)
ONE = RatFunc._raw(0, _ONE_POLY, _ONE_POLY)


def A_pow(k: int, coeff: Scalar = 1) -> RatFunc:
    """The monomial ``coeff * A**k``."""
    return as_ratfunc(LaurentPoly.monomial(k, coeff))


A = A_pow(1)
#: value of an unknotted circle, fixed by the skew-symmetric self-duality of V(1)
DELTA = A_pow(2, -1) + A_pow(-2, -1)


def quantum_integer(n: int) -> RatFunc:
    """``[n] = (A^{2n} - A^{-2n}) / (A^2 - A^{-2})``, a Laurent polynomial."""
    if n == 0:
        return ZERO
    sign = 1
    if n < 0:
        n, sign = -n, -1
    return sign * sum((A_pow(2 * (n - 1 - 2 * j)) for j in range(n)), ZERO)


def loop_chebyshev(n: int) -> RatFunc:
    """``Delta_n`` with ``Delta_0 = 1``, ``Delta_1 = delta``; equals ``(-1)^n [n+1]``."""
    prev, cur = ONE, DELTA
    if n == 0:
        return prev
    for _ in range(n - 1):
        prev, cur = cur, DELTA * cur - prev
    return cur
