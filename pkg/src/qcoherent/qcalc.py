"""q-symbols and the Hahn difference calculus on polynomials.

The Hahn operator with parameters (q, w) acts on a polynomial f by

    (D f)(x) = (f(q*x + w) - f(x)) / ((q - 1)*x + w),

and the companion shift operator by (L f)(x) = f(q*x + w).  The numerator
above vanishes at the operator's fixed point w/(1 - q), so the division is
exact on polynomials; this module asserts that exactness on every call.

Useful operator facts (all verified by the test suite):

    D[1/q, -w/q] o L[q, w] = q * D[q, w]
    D[q, w] o L[q, w]      = q * L[q, w] o D[q, w]
    L[1/q, -w/q] o L[q, w] = identity

Parameters are concrete exact scalars, never symbols; parametric identities
are validated by sampling many rational parameter points.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import Poly, affine_substitute
from .errors import DegreeMismatch, DomainError, InternalInconsistency


@dataclass(frozen=True)
class QParams:
    """The operator parameter pair (q, w) with derived fixed point w0.

    Requires q outside {0, 1} and, for rational q, also q != -1 so that
    q**n != 1 for every n >= 1.  w0 = w/(1 - q) satisfies w0*(1 - q) = w
    and is invariant under passing to the inverse parameters (1/q, -w/q).
    """

    q: Fraction
    omega: Fraction

    def __post_init__(self):
        q = self.q
        if q == 0 or q == 1 or q == -1:
            raise DomainError(f"q must avoid {{0, 1, -1}}, got {q}")

    @property
    def omega0(self):
        return self.omega / (1 - self.q)

    @property
    def inverse(self) -> "QParams":
        """Parameters of the inverse shift: L with these undoes L with self."""
        return QParams(1 / self.q, -self.omega / self.q)


class QSymbolCache:
    """Memoized q-brackets, q-factorials and q-binomials for one base."""

    def __init__(self, base):
        if base == 0 or base == 1:
            raise DomainError(f"q-symbol base must avoid {{0, 1}}, got {base}")
        self.base = base
        self._brackets = {0: base * 0}
        self._factorials = {0: base ** 0}

    def bracket(self, n: int):
        """[n] = (base**n - 1)/(base - 1)."""
        if n < 0:
            raise DomainError(f"q-bracket index must be >= 0, got {n}")
        if n not in self._brackets:
            self._brackets[n] = (self.base ** n - 1) / (self.base - 1)
        return self._brackets[n]

    def factorial(self, n: int):
        if n < 0:
            raise DomainError(f"q-factorial index must be >= 0, got {n}")
        if n not in self._factorials:
            top = max(self._factorials)
            acc = self._factorials[top]
            for j in range(top + 1, n + 1):
                acc = acc * self.bracket(j)
                self._factorials[j] = acc
        return self._factorials[n]

    def binom(self, n: int, k: int):
        if k < 0 or k > n:
            raise DomainError(f"binomial index k = {k} outside 0..{n}")
        return self.factorial(n) / (self.factorial(k) * self.factorial(n - k))


_caches: dict = {}


def _cache_for(base) -> QSymbolCache:
    try:
        cache = _caches.get(base)
    except TypeError:  # unhashable base
        return QSymbolCache(base)
    if cache is None:
        cache = _caches[base] = QSymbolCache(base)
    return cache


def q_bracket(n: int, base):
    return _cache_for(base).bracket(n)


def q_factorial(n: int, base):
    return _cache_for(base).factorial(n)


def q_binom(n: int, k: int, base):
    return _cache_for(base).binom(n, k)


def q_symbols(n: int, k: int, base):
    """Return the triple ([n], [n]!, binom(n, k)) in the given base."""
    cache = _cache_for(base)
    return cache.bracket(n), cache.factorial(n), cache.binom(n, k)


def shift(f: Poly, qp: QParams) -> Poly:
    """The shift (L f)(x) = f(q*x + w)."""
    return affine_substitute(f, qp.q, qp.omega)


def hahn_diff(f: Poly, qp: QParams) -> Poly:
    """The Hahn difference (D f)(x) = (f(q*x + w) - f(x)) / ((q-1)*x + w).

    Constants map to 0 and deg(D f) = deg f - 1 otherwise.  The division is
    exact; a non-zero remainder signals broken polynomial arithmetic.
    """
    if f.degree <= 0:
        return Poly()
    numerator = shift(f, qp) - f
    denominator = Poly([qp.omega, qp.q - 1])
    quotient, remainder = divmod(numerator, denominator)
    if not remainder.is_zero():
        raise InternalInconsistency(
            "Hahn difference division left a remainder; "
            "polynomial arithmetic is inconsistent"
        )
    return quotient


def hahn_power(f: Poly, m: int, qp: QParams) -> Poly:
    """m-fold Hahn difference; m = 0 is the identity."""
    if m < 0:
        raise DomainError(f"derivative order must be >= 0, got {m}")
    for _ in range(m):
        f = hahn_diff(f, qp)
    return f


def shift_power(f: Poly, m: int, qp: QParams) -> Poly:
    """m-fold shift; m = 0 is the identity."""
    if m < 0:
        raise DomainError(f"shift order must be >= 0, got {m}")
    for _ in range(m):
        f = shift(f, qp)
    return f


def normalized_derivative(p: Poly, n: int, m: int, qp: QParams) -> Poly:
    """The normalized discrete derivative ([n]!/[n+m]!) * D**m applied to p.

    Requires deg p = n + m; the output has degree n and stays monic when p
    is monic (the m-fold difference multiplies the leading coefficient by
    exactly [n+m]!/[n]!).
    """
    if p.degree != n + m:
        raise DegreeMismatch(
            f"expected a polynomial of degree {n + m}, got degree {p.degree}"
        )
    out = hahn_power(p, m, qp)
    if m == 0:
        return out
    factor = q_factorial(n, qp.q) / q_factorial(n + m, qp.q)
    return out * factor


def normalized_derivative_set(polys, m: int, qp: QParams) -> list:
    """Apply the degree-preserving normalization to a whole simple set.

    Given monic polys[0..L] this returns the simple set of m-th normalized
    derivatives, indexed 0..L-m.
    """
    return [normalized_derivative(polys[n + m], n, m, qp)
            for n in range(len(polys) - m)]


def phi_hat(phi: Poly, psi: Poly, qp: QParams) -> Poly:
    """Companion polynomial (1/q) * [phi(x) + ((q-1)x + w) * psi(x)].

    A regular functional satisfies the Pearson equation with pair
    (phi, psi) in direction (q, w) exactly when it satisfies the equation
    with pair (phi_hat, psi) in direction (1/q, -w/q).
    """
    return (phi + Poly([qp.omega, qp.q - 1]) * psi) * (1 / qp.q)
