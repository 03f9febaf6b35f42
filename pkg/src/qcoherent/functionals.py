"""Truncated moment functionals and their induced difference calculus.

A linear functional on polynomials is represented by its moment sequence
m_0 .. m_K against the monomials; K is the functional's *order*.  Every
operation computes and propagates the exact output order, and consuming
moments beyond the stored order raises instead of silently truncating.

The dual difference and shift operators act through the pairing:

    < D[q,w] u, f > = -(1/q) < u, D[1/q,-w/q] f >       (order grows by 1)
    < L[q,w] u, f > =        < u, L[1/q,-w/q] f >        (order preserved)

together with left multiplication (f u), the product rule

    D[q,w](f u) = D[q,w]f u + L[q,w]f D[q,w]u,

and the two equivalent q-binomial expansions of D**n (f u).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import Poly, rat, rat_str
from .errors import (
    DomainError,
    InternalInconsistency,
    NotSimpleSet,
    OrderExceeded,
)
from .qcalc import QParams, hahn_power, q_binom, shift_power


class MomentFunctional:
    """Moments m_0 .. m_K of a linear functional; m_i pairs with x**i."""

    __slots__ = ("moments",)

    def __init__(self, moments):
        moments = tuple(moments)
        if not moments:
            raise DomainError("a moment functional needs at least m_0")
        object.__setattr__(self, "moments", moments)

    def __setattr__(self, name, value):
        raise AttributeError("MomentFunctional is immutable")

    @property
    def order(self) -> int:
        return len(self.moments) - 1

    def moment(self, i: int):
        if i < 0 or i > self.order:
            raise OrderExceeded(
                f"moment index {i} exceeds stored order {self.order}")
        return self.moments[i]

    def truncated(self, order: int) -> "MomentFunctional":
        if order > self.order:
            raise OrderExceeded(
                f"cannot extend order {self.order} to {order}")
        return MomentFunctional(self.moments[:order + 1])

    def is_zero(self) -> bool:
        return all(m == 0 for m in self.moments)

    def __eq__(self, other):
        if isinstance(other, MomentFunctional):
            return self.moments == other.moments
        return NotImplemented

    def __hash__(self):
        return hash(self.moments)

    def __add__(self, other):
        if not isinstance(other, MomentFunctional):
            return NotImplemented
        k = min(self.order, other.order)
        return MomentFunctional(
            [self.moments[i] + other.moments[i] for i in range(k + 1)])

    def __sub__(self, other):
        if not isinstance(other, MomentFunctional):
            return NotImplemented
        k = min(self.order, other.order)
        return MomentFunctional(
            [self.moments[i] - other.moments[i] for i in range(k + 1)])

    def __mul__(self, scalar):
        return MomentFunctional([m * scalar for m in self.moments])

    __rmul__ = __mul__

    def __repr__(self):
        shown = ", ".join(str(m) for m in self.moments[:6])
        tail = ", ..." if self.order >= 6 else ""
        return f"MomentFunctional([{shown}{tail}], order={self.order})"

    def to_json(self) -> dict:
        return {"moments": [rat_str(m) for m in self.moments],
                "order": self.order}

    @staticmethod
    def from_json(data) -> "MomentFunctional":
        u = MomentFunctional([rat(s) for s in data["moments"]])
        if data.get("order") not in (None, u.order):
            raise DomainError("order field disagrees with moment count")
        return u


def act(u: MomentFunctional, f: Poly):
    """The pairing <u, f>; requires deg f <= order(u)."""
    if f.degree > u.order:
        raise OrderExceeded(
            f"polynomial of degree {f.degree} exceeds order {u.order}")
    total = Fraction(0)
    for i, c in enumerate(f.coeffs):
        total = total + c * u.moments[i]
    return total


def left_mult(f: Poly, u: MomentFunctional) -> MomentFunctional:
    """Moments of f*u, defined by <f u, x**n> = <u, f(x) x**n>.

    The output order drops by deg f.  A zero polynomial annihilates; the
    result keeps the input order.
    """
    if f.is_zero():
        return MomentFunctional([Fraction(0)] * (u.order + 1))
    d = f.degree
    if d > u.order:
        raise OrderExceeded(
            f"cannot multiply by degree {d} at order {u.order}")
    out = []
    for n in range(u.order - d + 1):
        s = Fraction(0)
        for i, c in enumerate(f.coeffs):
            s = s + c * u.moments[n + i]
        out.append(s)
    return MomentFunctional(out)


def functional_diff(u: MomentFunctional, qp: QParams) -> MomentFunctional:
    """The induced difference D[q,w] u; output order grows by one."""
    inv = qp.inverse
    scale = -1 / qp.q
    out = []
    for n in range(u.order + 2):
        inner = hahn_power(Poly.monomial(Fraction(1), n), 1, inv)
        out.append(scale * act(u, inner))
    return MomentFunctional(out)


def functional_diff_n(u: MomentFunctional, n: int, qp: QParams) -> MomentFunctional:
    for _ in range(n):
        u = functional_diff(u, qp)
    return u


def functional_shift(u: MomentFunctional, qp: QParams) -> MomentFunctional:
    """The induced shift L[q,w] u; <L u, x**n> = <u, ((x - w)/q)**n>."""
    inv = qp.inverse
    base = Poly([inv.omega, inv.q])  # (x - w)/q
    out, power = [], Poly.one()
    for _ in range(u.order + 1):
        out.append(act(u, power))
        power = power * base
    return MomentFunctional(out)


def leibniz_expansion(f: Poly, u: MomentFunctional, n: int, qp: QParams,
                      variant: int = 1) -> MomentFunctional:
    """One of the two q-binomial expansions of D**n (f u).

    variant 1: sum_j [n,j] L**(n-j)(D**j f) D**(n-j) u
    variant 2: sum_j [n,j] L**j(D**(n-j) f) D**j u

    The binomial base is the operator's own q.
    """
    if variant not in (1, 2):
        raise DomainError("variant must be 1 or 2")
    total = None
    for j in range(n + 1):
        coeff = q_binom(n, j, qp.q)
        if variant == 1:
            poly = shift_power(hahn_power(f, j, qp), n - j, qp)
            du = functional_diff_n(u, n - j, qp)
        else:
            poly = shift_power(hahn_power(f, n - j, qp), j, qp)
            du = functional_diff_n(u, j, qp)
        if poly.is_zero():
            continue  # vanishing term must not cap the joint order
        term = left_mult(poly, du) * coeff
        total = term if total is None else total + term
    if total is None:
        total = MomentFunctional([Fraction(0)] * (u.order + n + 1))
    return total


def functional_diff_power(f: Poly, u: MomentFunctional, n: int,
                          qp: QParams) -> MomentFunctional:
    """D**n (f u), cross-checked against the q-Leibniz expansion.

    Computes the n-fold difference of f*u directly and independently as the
    binomial sum; raises InternalInconsistency if they disagree on any
    jointly valid moment.
    """
    direct = functional_diff_n(left_mult(f, u), n, qp)
    expansion = leibniz_expansion(f, u, n, qp, variant=1)
    ok, idx, _ = functional_agree(direct, expansion)
    if not ok:
        raise InternalInconsistency(
            f"Leibniz expansion disagrees with direct differencing "
            f"at moment {idx}")
    return direct


def functional_agree(u: MomentFunctional, v: MomentFunctional,
                     up_to: int | None = None):
    """Compare moments on the jointly valid range.

    Returns (ok, first_failure_index_or_None, order_checked).
    """
    k = min(u.order, v.order)
    if up_to is not None:
        k = min(k, up_to)
    for i in range(k + 1):
        if u.moments[i] != v.moments[i]:
            return False, i, k
    return True, None, k


@dataclass(frozen=True)
class SemiclassicalWitness:
    """A Pearson pair (phi, psi) with the direction of the difference.

    direction "forward" means D[q,w](phi u) = psi u; "backward" means the
    same with parameters (1/q, -w/q).  The witness certifies the class
    bound max(deg phi - 2, deg psi - 1).
    """

    phi: Poly
    psi: Poly
    direction: str = "backward"

    def __post_init__(self):
        if self.direction not in ("forward", "backward"):
            raise DomainError(f"unknown direction {self.direction!r}")
        if self.psi.is_zero() or self.psi.degree < 1:
            raise DomainError("psi must be non-zero of degree >= 1")

    @property
    def class_bound(self) -> int:
        return max(self.phi.degree - 2, self.psi.degree - 1)


@dataclass(frozen=True)
class PearsonReport:
    holds: bool
    order_checked: int
    fails_at: int | None = None

    def to_json(self) -> dict:
        data = {"identity": "pearson", "status": "holds" if self.holds else "failed",
                "order_checked": self.order_checked}
        if self.fails_at is not None:
            data["first_failure"] = self.fails_at
        return data


def pearson_check(witness: SemiclassicalWitness, u: MomentFunctional,
                  qp: QParams) -> PearsonReport:
    """Verify D(phi u) = psi u on moments, in the witness direction."""
    if witness.phi.degree > u.order or witness.psi.degree > u.order:
        raise OrderExceeded("witness degrees exceed the functional's order")
    params = qp if witness.direction == "forward" else qp.inverse
    lhs = functional_diff(left_mult(witness.phi, u), params)
    rhs = left_mult(witness.psi, u)
    ok, idx, checked = functional_agree(lhs, rhs)
    return PearsonReport(holds=ok, order_checked=checked, fails_at=idx)


def dual_basis_functional(basis, n: int, order: int) -> MomentFunctional:
    """The unique functional e_n of the given order with <e_n, basis[j]> =
    delta(n, j) for every j <= order.

    The basis must be a simple set (deg basis[j] = j) covering degrees
    0..order; the moments follow from one triangular solve.
    """
    basis = list(basis)
    if len(basis) <= order:
        raise NotSimpleSet(
            f"basis covers degrees 0..{len(basis) - 1}, need 0..{order}")
    for j in range(order + 1):
        if basis[j].degree != j:
            raise NotSimpleSet(
                f"basis[{j}] has degree {basis[j].degree}, expected {j}")
    if not 0 <= n <= order:
        raise DomainError(f"index {n} outside 0..{order}")
    moments = []
    for j in range(order + 1):
        b = basis[j]
        target = Fraction(1) if j == n else Fraction(0)
        partial = sum((b.coeff(i) * moments[i] for i in range(j)), Fraction(0))
        moments.append((target - partial) / b.coeff(j))
    return MomentFunctional(moments)


def hankel_regular(u: MomentFunctional, depth: int | None = None) -> bool:
    """Finite regularity certificate: leading principal Hankel determinants
    built from the moments are non-zero up to floor(K/2)."""
    max_depth = u.order // 2
    depth = max_depth if depth is None else min(depth, max_depth)
    for r in range(depth + 1):
        rows = [[u.moments[i + j] for j in range(r + 1)] for i in range(r + 1)]
        if _fraction_det(rows) == 0:
            return False
    return True


def _fraction_det(rows) -> Fraction:
    n = len(rows)
    m = [list(map(Fraction, r)) for r in rows]
    det = Fraction(1)
    for k in range(n):
        pivot = next((i for i in range(k, n) if m[i][k] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != k:
            m[k], m[pivot] = m[pivot], m[k]
            det = -det
        det *= m[k][k]
        inv = 1 / m[k][k]
        for i in range(k + 1, n):
            factor = m[i][k] * inv
            if factor == 0:
                continue
            for j in range(k, n):
                m[i][j] -= factor * m[k][j]
    return det
