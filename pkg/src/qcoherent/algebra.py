"""Exact scalars and dense univariate polynomial arithmetic.

Two scalar fields are used throughout the library:

* plain rationals, carried by :class:`fractions.Fraction`;
* rational functions in one auxiliary parameter ``t`` over the rationals,
  carried by :class:`RatFunc`.  These exist so that one-parameter limiting
  identities can be evaluated exactly (take the limit as the value at
  ``t = 0`` after cancellation) instead of numerically.

:class:`Poly` is a dense univariate polynomial whose coefficients may live
in either field; all higher modules are generic over the scalars.  Every
value is immutable and every operation is pure and exact.
"""
from __future__ import annotations

import math
from fractions import Fraction

from .errors import (
    DomainError,
    InternalInconsistency,
    NotSimpleSet,
    PoleAtZero,
)


def rat(value) -> Fraction:
    """Parse a rational from an int, a Fraction or a "num/den" string."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise DomainError(f"cannot interpret {value!r} as a rational")


def rat_str(x) -> str:
    """Canonical "num/den" form, e.g. -3/7; integer values render as 5/1."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def sqrt_fraction(x: Fraction):
    """Exact rational square root of ``x``, or None if ``x`` is not a square."""
    if x < 0:
        return None
    num, den = x.numerator, x.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


class Poly:
    """Dense univariate polynomial; ``coeffs[i]`` multiplies ``x**i``.

    The zero polynomial has an empty coefficient tuple and degree -1;
    otherwise the last coefficient is non-zero.  Coefficients may be
    Fractions, :class:`RatFunc` values, or plain ints (which interoperate
    with both).
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @staticmethod
    def zero() -> "Poly":
        return Poly()

    @staticmethod
    def one() -> "Poly":
        return Poly([Fraction(1)])

    @staticmethod
    def x() -> "Poly":
        return Poly([Fraction(0), Fraction(1)])

    @staticmethod
    def constant(c) -> "Poly":
        return Poly([c])

    @staticmethod
    def monomial(c, k: int) -> "Poly":
        return Poly([0] * k + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self):
        """Leading coefficient; raises on the zero polynomial."""
        if not self.coeffs:
            raise DomainError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def coeff(self, i: int):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction, RatFunc)):
            return self == Poly([other])
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        if not isinstance(other, Poly):
            if isinstance(other, (int, Fraction, RatFunc)):
                other = Poly([other])
            else:
                return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self.coeff(i) + other.coeff(i) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other):
        if isinstance(other, Poly):
            return self + (-other)
        if isinstance(other, (int, Fraction, RatFunc)):
            return self + Poly([-other])
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Poly):
            if not self.coeffs or not other.coeffs:
                return Poly()
            out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if a == 0:
                    continue
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
            return Poly(out)
        if isinstance(other, (int, Fraction, RatFunc)):
            return Poly([c * other for c in self.coeffs])
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Poly):
            return self.exact_div(other)
        return Poly([c / other for c in self.coeffs])

    def __pow__(self, n: int):
        if n < 0:
            raise DomainError("negative polynomial power")
        result = Poly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other: "Poly"):
        """Euclidean division over the coefficient field."""
        if not isinstance(other, Poly):
            other = Poly([other])
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dlc = other.lc
        dd = other.degree
        if self.degree < dd:
            return Poly(), self
        quot = [Fraction(0)] * (self.degree - dd + 1)
        for k in range(self.degree - dd, -1, -1):
            c = rem[dd + k]
            if c == 0:
                continue
            c = c / dlc
            quot[k] = c
            for i, b in enumerate(other.coeffs):
                rem[i + k] = rem[i + k] - c * b
        return Poly(quot), Poly(rem)

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise InternalInconsistency(
                f"inexact polynomial division: {self} by {other} leaves {r}"
            )
        return q

    def __call__(self, x):
        """Evaluate by Horner's rule; ``x`` may be a scalar or a Poly."""
        if isinstance(x, Poly):
            acc = Poly()
            for c in reversed(self.coeffs):
                acc = acc * x + Poly([c])
            return acc
        acc = x * 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self / self.lc

    def __repr__(self):
        if not self.coeffs:
            return "Poly('0')"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeff(i)
            if c == 0:
                continue
            term = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if c == 1 and term:
                coeff = ""
            elif c == -1 and term:
                coeff = "-"
            else:
                coeff = str(c) + ("*" if term else "")
            s = coeff + term
            if parts and not s.startswith("-"):
                s = "+ " + s
            elif parts:
                s = "- " + s.lstrip("-")
            parts.append(s)
        return f"Poly('{' '.join(parts)}')"

    def to_strings(self) -> list[str]:
        """Serialize Fraction coefficients to "num/den" strings, index = power."""
        return [rat_str(c) for c in self.coeffs]

    @staticmethod
    def from_strings(items) -> "Poly":
        return Poly([rat(s) for s in items])


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd via the Euclidean algorithm over the coefficient field."""
    while not b.is_zero():
        a, b = b, divmod(a, b)[1]
    if a.is_zero():
        return a
    return a.monic()


def affine_substitute(p: Poly, s, t) -> Poly:
    """Return ``p(s*x + t)`` computed exactly.

    The degree is preserved when ``s != 0``; ``s = 0`` collapses the result
    to the constant ``p(t)``.
    """
    arg = Poly([t, s])
    acc = Poly()
    for c in reversed(p.coeffs):
        acc = acc * arg + Poly([c])
    return acc


class RatFunc:
    """Rational function num/den in the parameter ``t`` over the rationals.

    Canonical form: ``den`` is monic and ``gcd(num, den) = 1``; the zero
    element is 0/1.  Fractions and ints coerce into constants, so RatFunc
    values mix freely with rational scalars in polynomial arithmetic.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = self._lift(num)
        den = Poly.one() if den is None else self._lift(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            num, den = Poly(), Poly.one()
        else:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num.exact_div(g), den.exact_div(g)
            lead = den.lc
            if lead != 1:
                num, den = num / lead, den / lead
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFunc is immutable")

    @staticmethod
    def _lift(value) -> Poly:
        if isinstance(value, Poly):
            return value
        if isinstance(value, (int, Fraction)):
            return Poly([Fraction(value)])
        raise DomainError(f"cannot lift {value!r} into Q(t)")

    @staticmethod
    def t() -> "RatFunc":
        """The generator ``t`` of the field Q(t)."""
        return RatFunc(Poly.x())

    @staticmethod
    def coerce(value) -> "RatFunc":
        if isinstance(value, RatFunc):
            return value
        return RatFunc(value)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatFunc(other)
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __hash__(self):
        return hash((self.num.coeffs, self.den.coeffs))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatFunc(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return RatFunc(self.num * other.den + other.num * self.den,
                       self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, RatFunc)):
            return self + (-RatFunc.coerce(other))
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatFunc(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Poly):
            return NotImplemented
        other = RatFunc.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return RatFunc.coerce(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return RatFunc(1) / self ** (-n)
        return RatFunc(self.num ** n, self.den ** n)

    def limit_at_zero(self) -> Fraction:
        """Value at t = 0 after cancellation; raises PoleAtZero on a pole."""
        d0 = self.den.coeff(0)
        if d0 == 0:
            raise PoleAtZero(f"pole at t = 0 in {self!r}")
        return self.num.coeff(0) / d0

    def __repr__(self):
        if self.den == Poly.one():
            return f"RatFunc({self.num!r})"
        return f"RatFunc({self.num!r} / {self.den!r})"


def rf_limit_at_zero(f: RatFunc) -> Fraction:
    """Limit of ``f`` at t = 0, realized as the value after cancellation."""
    return RatFunc.coerce(f).limit_at_zero()


def expand_in_basis(f: Poly, basis) -> list:
    """Coordinates of ``f`` in a monic simple set covering degrees 0..deg f.

    The expansion is computed by descending triangular elimination, so the
    coefficients are unique and reconstruct ``f`` exactly.
    """
    basis = list(basis)
    for j, b in enumerate(basis):
        if b.degree != j or not b.is_monic():
            raise NotSimpleSet(
                f"basis[{j}] must be monic of degree {j}, got degree {b.degree}"
            )
    if f.degree >= len(basis):
        raise NotSimpleSet(
            f"basis covers degrees 0..{len(basis) - 1} but deg f = {f.degree}"
        )
    coords = [Fraction(0)] * len(basis)
    work = f
    for j in range(f.degree, -1, -1):
        c = work.coeff(j)
        coords[j] = c
        if c != 0:
            work = work - basis[j] * c
    if not work.is_zero():
        raise InternalInconsistency("triangular expansion left a remainder")
    return coords


def det_cofactor(rows) -> Poly:
    """Determinant of a square polynomial matrix by cofactor expansion."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise DomainError("matrix is not square")
    if n == 0:
        return Poly.one()
    if n == 1:
        return rows[0][0]
    total = Poly()
    for j in range(n):
        a = rows[0][j]
        if a.is_zero():
            continue
        minor = [[r[i] for i in range(n) if i != j] for r in rows[1:]]
        term = a * det_cofactor(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def det_bareiss(rows) -> Poly:
    """Determinant by fraction-free (Bareiss) elimination.

    All intermediate divisions are exact in the polynomial ring, which this
    routine asserts; entries must support exact_div.
    """
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise DomainError("matrix is not square")
    if n == 0:
        return Poly.one()
    m = [list(r) for r in rows]
    sign = 1
    prev = Poly.one()
    for k in range(n - 1):
        if m[k][k].is_zero():
            pivot_row = next(
                (i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
            if pivot_row is None:
                return Poly()
            m[k], m[pivot_row] = m[pivot_row], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]).exact_div(prev)
            m[i][k] = Poly()
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det
