"""Three-term recurrences, the two master q-families, and their reductions.

Monic orthogonal sequences are generated from recurrence data

    x P_n = P_{n+1} + beta_n P_n + gamma_n P_{n-1},  gamma_n != 0.

Two master families cover (up to affine changes of variable) every
classical orthogonal sequence of the q-difference calculus:

* the L-family L_n(x; a, b, c | q) with
      beta_n    = (a + b - c (q^{n+1} + q^n - 1)) q^n
      gamma_n+1 = -(a - c q^{n+1}) (b - c q^{n+1}) (1 - q^{n+1}) q^n

* the J-family J_n(x; a, b, c, d | q) with the four-parameter closed forms
  implemented in :func:`j_coeffs`.

Classical labels (Al-Salam-Carlitz, big/little q-Laguerre and q-Jacobi,
q-Bessel and the two exceptional sequences) are defined purely through
affine reductions onto these families, never through independent data,
and each reduction map is verified coefficientwise by the test suite.
One-parameter limits (b -> 0) are evaluated exactly over the field Q(t).
"""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from fractions import Fraction

from .algebra import (
    Poly,
    RatFunc,
    expand_in_basis,
    rat,
    rat_str,
    rf_limit_at_zero,
)
from .errors import (
    DenominatorZero,
    DomainError,
    IdentityFailed,
    InternalInconsistency,
    MissingCoefficient,
    RegularityViolation,
    RestrictionViolation,
)
from .functionals import MomentFunctional
from .qcalc import QParams, normalized_derivative, normalized_derivative_set


class TTRRCoeffs:
    """Recurrence coefficient tables beta_0.. and gamma_1.. ."""

    __slots__ = ("beta", "gamma")

    def __init__(self, beta, gamma):
        beta = tuple(beta)
        gamma = tuple(gamma)
        for i, g in enumerate(gamma):
            if g == 0:
                raise RegularityViolation(f"gamma_{i + 1} = 0")
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "gamma", gamma)

    def __setattr__(self, name, value):
        raise AttributeError("TTRRCoeffs is immutable")

    @property
    def n_max(self) -> int:
        return len(self.beta) - 1

    def beta_at(self, n: int):
        if not 0 <= n < len(self.beta):
            raise MissingCoefficient(f"beta_{n} not stored (have 0..{self.n_max})")
        return self.beta[n]

    def gamma_at(self, n: int):
        """gamma_n for n >= 1."""
        if not 1 <= n <= len(self.gamma):
            raise MissingCoefficient(
                f"gamma_{n} not stored (have 1..{len(self.gamma)})")
        return self.gamma[n - 1]

    def shifted(self, scale, offset) -> "TTRRCoeffs":
        """Coefficients of s**n F_n((x - t)/s) given those of F_n."""
        if scale == 0:
            raise DomainError("affine scale must be non-zero")
        return TTRRCoeffs([scale * b + offset for b in self.beta],
                          [scale * scale * g for g in self.gamma])

    def agrees_with(self, other: "TTRRCoeffs", n_max: int) -> bool:
        return (all(self.beta_at(n) == other.beta_at(n) for n in range(n_max + 1))
                and all(self.gamma_at(n) == other.gamma_at(n)
                        for n in range(1, n_max + 1)))

    def to_json(self) -> dict:
        return {"beta": [rat_str(b) for b in self.beta],
                "gamma": [rat_str(g) for g in self.gamma]}


def ttrr_generate(coeffs: TTRRCoeffs, n_max: int) -> list[Poly]:
    """Monic P_0 .. P_{n_max} from the three-term recurrence."""
    if n_max < 0:
        raise DomainError("n_max must be >= 0")
    polys = [Poly.one()]
    if n_max == 0:
        return polys
    x = Poly.x()
    polys.append(x - coeffs.beta_at(0))
    for n in range(1, n_max):
        nxt = ((x - coeffs.beta_at(n)) * polys[n]
               - coeffs.gamma_at(n) * polys[n - 1])
        polys.append(nxt)
    return polys


def squared_norms(coeffs: TTRRCoeffs, n_max: int) -> list:
    """<u, P_n^2> = gamma_1 ... gamma_n for the normalized functional."""
    norms = [Fraction(1)]
    for n in range(1, n_max + 1):
        norms.append(norms[-1] * coeffs.gamma_at(n))
    return norms


def _validate_base(base):
    if base == 0 or base == 1 or base == -1:
        raise DomainError(f"family base must avoid {{0, 1, -1}}, got {base}")


def l_coeffs(a, b, c, base, n_max: int) -> TTRRCoeffs:
    """L-family recurrence coefficients at the given base (q or 1/q).

    Regularity requires a != c*base**n and b != c*base**n for 1 <= n <= n_max.
    """
    _validate_base(base)
    for n in range(1, n_max + 1):
        if a == c * base ** n:
            raise RegularityViolation(f"a = c*base^{n} in the L-family")
        if b == c * base ** n:
            raise RegularityViolation(f"b = c*base^{n} in the L-family")
    beta = [(a + b - c * (base ** (n + 1) + base ** n - 1)) * base ** n
            for n in range(n_max + 1)]
    gamma = [-(a - c * base ** (n + 1)) * (b - c * base ** (n + 1))
             * (1 - base ** (n + 1)) * base ** n
             for n in range(n_max)]
    return TTRRCoeffs(beta, gamma)


def l_coeffs_symmetric(sum_ab, prod_ab, c, base, n_max: int) -> TTRRCoeffs:
    """L-family coefficients from the symmetric data (a+b, ab, c).

    Identical to :func:`l_coeffs` whenever a and b exist in the field, but
    usable when only their sum and product are rational.
    """
    _validate_base(base)
    beta = [(sum_ab - c * (base ** (n + 1) + base ** n - 1)) * base ** n
            for n in range(n_max + 1)]
    gamma = []
    for n in range(n_max):
        bp = base ** (n + 1)
        value = -(prod_ab - c * sum_ab * bp + c * c * bp * bp) * (1 - bp) * base ** n
        if value == 0:
            raise RegularityViolation(
                f"gamma_{n + 1} = 0 for the symmetric L-family data")
        gamma.append(value)
    return TTRRCoeffs(beta, gamma)


def j_coeffs(a, b, c, d, base, n_max: int) -> TTRRCoeffs:
    """J-family recurrence coefficients at the given base.

    Regularity requires, for 1 <= n <= n_max: b != base**-n, d != base**-n,
    a != c*base**n, b != d*base**n, c != a*d*base**n.  Each closed-form
    denominator factor 1 - d*base**j is checked before dividing.
    """
    _validate_base(base)
    for n in range(1, n_max + 1):
        if b == base ** -n:
            raise RegularityViolation(f"b = base^-{n} in the J-family")
        if d == base ** -n:
            raise RegularityViolation(f"d = base^-{n} in the J-family")
        if a == c * base ** n:
            raise RegularityViolation(f"a = c*base^{n} in the J-family")
        if b == d * base ** n:
            raise RegularityViolation(f"b = d*base^{n} in the J-family")
        if c == a * d * base ** n:
            raise RegularityViolation(f"c = a*d*base^{n} in the J-family")

    def dfac(j: int):
        value = 1 - d * base ** j
        if value == 0:
            raise DenominatorZero(f"1 - d*base^{j} = 0 in the J-family")
        return value

    beta, gamma = [], []
    for n in range(n_max + 1):
        qn = base ** n
        num = ((a * (b + d) + c * (b + 1)) * (1 + d * base ** (2 * n + 1))
               - (c * (b + d) + a * d * (b + 1)) * (1 + base) * qn)
        beta.append(qn * num / (dfac(2 * n) * dfac(2 * n + 2)))
    for n in range(n_max):
        qn = base ** n
        qn1 = base ** (n + 1)
        num = (qn * (1 - qn1) * (1 - b * qn1) * (1 - d * qn1)
               * (a - c * qn1) * (b - d * qn1) * (c - a * d * qn1))
        gamma.append(-num / (dfac(2 * n + 1) * dfac(2 * n + 2) ** 2
                             * dfac(2 * n + 3)))
    return TTRRCoeffs(beta, gamma)


CLASSICAL_LABELS = (
    "al-salam-carlitz",
    "big-q-laguerre",
    "little-q-laguerre",
    "l-type",
    "big-q-jacobi",
    "little-q-jacobi",
    "q-bessel",
    "j-type",
)


@dataclass(frozen=True)
class FamilySpec:
    """A master family together with an affine change of variable.

    The represented polynomials are P_n(x) = scale**n * F_n((x - offset)/scale)
    where F_n is the base L- or J-family evaluated at ``base``.
    """

    kind: str
    params: tuple
    base: Fraction
    scale: Fraction = Fraction(1)
    offset: Fraction = Fraction(0)
    label: str | None = None

    def __post_init__(self):
        if self.kind not in ("L", "J"):
            raise DomainError(f"family kind must be 'L' or 'J', got {self.kind!r}")
        want = 3 if self.kind == "L" else 4
        if len(self.params) != want:
            raise DomainError(f"{self.kind}-family takes {want} parameters")
        _validate_base(self.base)
        if self.scale == 0:
            raise DomainError("affine scale must be non-zero")

    def base_ttrr(self, n_max: int) -> TTRRCoeffs:
        if self.kind == "L":
            return l_coeffs(*self.params, self.base, n_max)
        return j_coeffs(*self.params, self.base, n_max)

    def ttrr(self, n_max: int) -> TTRRCoeffs:
        return self.base_ttrr(n_max).shifted(self.scale, self.offset)

    def polynomials(self, n_max: int) -> list[Poly]:
        return ttrr_generate(self.ttrr(n_max), n_max)

    def to_json(self) -> dict:
        return {"kind": self.kind,
                "params": [rat_str(p) for p in self.params],
                "base": rat_str(self.base),
                "scale": rat_str(self.scale),
                "offset": rat_str(self.offset),
                "label": self.label}

    @staticmethod
    def from_json(data) -> "FamilySpec":
        return FamilySpec(kind=data["kind"],
                          params=tuple(rat(p) for p in data["params"]),
                          base=rat(data["base"]),
                          scale=rat(data.get("scale", "1/1")),
                          offset=rat(data.get("offset", "0/1")),
                          label=data.get("label"))


def family_polynomials(spec: FamilySpec, n_max: int) -> list[Poly]:
    return spec.polynomials(n_max)


def in_lambda_set(value, q, n_max: int) -> bool:
    """Membership in the excluded set {q**-n : 1 <= n <= n_max}."""
    return any(value == q ** -n for n in range(1, n_max + 1))


def _restrict(condition: bool, message: str):
    if not condition:
        raise RestrictionViolation(message)


def classical(label: str, params, qp: QParams, n_max: int = 12) -> FamilySpec:
    """Build a classical family as an affine reduction of L or J.

    ``params`` is the tuple of the family's own parameters; restrictions
    (including exclusions from {q**-n}) are enforced up to ``n_max``.
    """
    q = qp.q
    params = tuple(params)
    lam = lambda v: in_lambda_set(v, q, n_max)  # noqa: E731
    if label == "al-salam-carlitz":
        (a,) = params
        _restrict(a != 0, "al-salam-carlitz requires a != 0")
        return FamilySpec("L", (a, q ** 0, q * 0), q, label=label)
    if label == "big-q-laguerre":
        a, b = params
        _restrict(a * b != 0, "big-q-laguerre requires ab != 0")
        _restrict(not lam(a) and not lam(b),
                  "big-q-laguerre requires a, b outside {q^-n}")
        return FamilySpec("L", (1 / a, 1 / b, q ** 0), q,
                          scale=a * b * q, label=label)
    if label == "little-q-laguerre":
        (a,) = params
        _restrict(a != 0, "little-q-laguerre requires a != 0")
        _restrict(not lam(a), "little-q-laguerre requires a outside {q^-n}")
        return FamilySpec("L", (q * 0, q ** 0, a), q, label=label)
    if label == "l-type":
        (a,) = params
        _restrict(a != 0, "l-type requires a != 0")
        return FamilySpec("L", (q * 0, q * 0, -a), q, label=label)
    if label == "big-q-jacobi":
        a, b, c = params
        _restrict(a * c != 0, "big-q-jacobi requires ac != 0")
        for v, name in ((a, "a"), (b, "b"), (c, "c"), (a * b, "ab"),
                        (a * b / c, "ab/c")):
            _restrict(not lam(v), f"big-q-jacobi requires {name} outside {{q^-n}}")
        if b != 0:
            return FamilySpec("J", (q ** 0, a, c, a * b), q, scale=q, label=label)
        return FamilySpec("L", (1 / a, 1 / c, q ** 0), q,
                          scale=a * c * q, label=label)
    if label == "little-q-jacobi":
        a, b = params
        _restrict(a != 0, "little-q-jacobi requires a != 0")
        for v, name in ((a, "a"), (b, "b"), (a * b, "ab")):
            _restrict(not lam(v),
                      f"little-q-jacobi requires {name} outside {{q^-n}}")
        if b != 0:
            return FamilySpec("J", (q * 0, a, q ** 0, a * b), q, label=label)
        return FamilySpec("L", (1 / a, q * 0, q ** 0), q, scale=a, label=label)
    if label == "q-bessel":
        (a,) = params
        _restrict(a != 0, "q-bessel requires a != 0")
        _restrict(not lam(-a), "q-bessel requires -a outside {q^-n}")
        return FamilySpec("J", (q * 0, q * 0, q ** 0, -a / q), q, label=label)
    if label == "j-type":
        a, b = params
        _restrict(a * b != 0, "j-type requires ab != 0")
        _restrict(not lam(a), "j-type requires a outside {q^-n}")
        return FamilySpec("J", (b, q * 0, q * 0, a / q), q, scale=q, label=label)
    raise DomainError(f"unknown classical label {label!r}; "
                      f"known: {', '.join(CLASSICAL_LABELS)}")


class StructureTable:
    """Expansion coefficients c_{n,j} of pi * P_n^{[m]} in the set Q_j^{[k]}.

    Rows n = 0..n_max; row n stores every coefficient for j = 0..n+N where
    N = deg pi.  Coefficients below the band j = n - M are recorded as data
    (not errors) so near-coherence can be reported; ``in_band`` says they
    all vanish and ``cond1_ok`` that the band edge c_{n,n-M} is non-zero
    for n >= M.
    """

    def __init__(self, pi: Poly, m: int, k: int, index_m: int, entries,
                 n_max: int):
        self.pi = pi
        self.m = m
        self.k = k
        self.M = index_m
        self.N = pi.degree
        self.entries = dict(entries)
        self.n_max = n_max

    def c(self, n: int, j: int):
        if not 0 <= n <= self.n_max:
            raise MissingCoefficient(f"structure row {n} not computed")
        if j < 0 or j > n + self.N:
            return Fraction(0)
        return self.entries[(n, j)]

    @property
    def below_band(self) -> list:
        out = []
        for (n, j), value in sorted(self.entries.items()):
            if j < n - self.M and value != 0:
                out.append((n, j, value))
        return out

    @property
    def in_band(self) -> bool:
        return not self.below_band

    @property
    def cond1_ok(self) -> bool:
        return all(self.c(n, n - self.M) != 0
                   for n in range(self.M, self.n_max + 1))

    @property
    def is_coherent(self) -> bool:
        return self.in_band and self.cond1_ok

    def to_json(self) -> dict:
        return {
            "pi": self.pi.to_strings(),
            "m": self.m, "k": self.k, "M": self.M, "N": self.N,
            "n_max": self.n_max,
            "rows": [[rat_str(self.c(n, j)) for j in range(n + self.N + 1)]
                     for n in range(self.n_max + 1)],
            "in_band": self.in_band,
            "cond1_ok": self.cond1_ok,
        }


def structure_coeffs(p_polys, q_polys, pi: Poly, m: int, k: int,
                     index_m: int, qp: QParams,
                     n_max: int | None = None) -> StructureTable:
    """Expand pi * P_n^{[m]} in the simple set (Q_j^{[k]}) for each n.

    P_n^{[m]} is the degree-preserving normalized m-th difference, so the
    left side is monic of degree N + n and the top coefficient c_{n,n+N}
    is 1 by construction (asserted).
    """
    if not pi.is_monic():
        raise DomainError("pi must be monic")
    deg_pi = pi.degree
    available = min(len(p_polys) - 1 - m, len(q_polys) - 1 - k - deg_pi)
    if n_max is None:
        n_max = available
    if n_max > available:
        raise MissingCoefficient(
            f"need polynomials up to degree {n_max + max(m, k + deg_pi)}")
    q_der = normalized_derivative_set(q_polys, k, qp)
    entries = {}
    for row in range(n_max + 1):
        lhs = pi * normalized_derivative(p_polys[row + m], row, m, qp)
        coords = expand_in_basis(lhs, q_der[:row + deg_pi + 1])
        if coords[row + deg_pi] != 1:
            raise InternalInconsistency("top structure coefficient is not 1")
        for j, value in enumerate(coords):
            entries[(row, j)] = value
    return StructureTable(pi, m, k, index_m, entries, n_max)


def moments_from_ttrr(coeffs: TTRRCoeffs, order: int) -> MomentFunctional:
    """Moments m_0 .. m_order of the functional normalized by m_0 = 1.

    Uses the chain walk <u, x^{n+1} P_j> = <u, x^n (P_{j+1} + beta_j P_j +
    gamma_j P_{j-1})>, which touches coefficients only up to index
    ceil(order/2).
    """
    if order < 0:
        raise DomainError("order must be >= 0")
    width = order // 2 + 1
    cur = [Fraction(0)] * (width + 2)
    cur[0] = Fraction(1)
    moments = [cur[0]]
    for step in range(order):
        jmax = min(step + 1, order - step - 1, width)
        if jmax < 0:
            jmax = 0
        new = [Fraction(0)] * (width + 2)
        for j in range(jmax + 1):
            value = cur[j + 1] + coeffs.beta_at(j) * cur[j]
            if j >= 1:
                value = value + coeffs.gamma_at(j) * cur[j - 1]
            new[j] = value
        cur = new
        moments.append(cur[0])
    return MomentFunctional(moments)


@dataclass(frozen=True)
class ReductionReport:
    identity: str
    ok: bool
    n_checked: int
    first_failure: tuple | None = None

    def to_json(self) -> dict:
        data = {"identity": self.identity,
                "status": "holds" if self.ok else "failed",
                "order_checked": self.n_checked}
        if self.first_failure is not None:
            data["first_failure"] = list(self.first_failure)
        return data

    def raise_if_failed(self):
        if not self.ok:
            raise IdentityFailed(
                f"{self.identity} fails first at (n, power) = {self.first_failure}")
        return self


def _compare_polys(identity: str, lhs, rhs, n_max: int) -> ReductionReport:
    for n in range(n_max + 1):
        if lhs[n] != rhs[n]:
            diff = lhs[n] - rhs[n]
            power = next(i for i, c in enumerate(diff.coeffs) if c != 0)
            return ReductionReport(identity, False, n_max, (n, power))
    return ReductionReport(identity, True, n_max)


def _scaled(spec: FamilySpec, extra_scale) -> FamilySpec:
    """Compose an outer map x -> extra_scale**n * P_n(x / extra_scale)."""
    return dataclasses.replace(spec, scale=spec.scale * extra_scale)


def _lhs_l(p, q):
    return FamilySpec("L", (p["a"], p["b"], p["c"]), q)


def _lhs_j(p, q):
    return FamilySpec("J", (p["a"], p["b"], p["c"], p["d"]), q)


def _identity_specs(name: str, p: dict, qp: QParams, n_max: int):
    """LHS/RHS family specs for each displayed reduction identity."""
    q = qp.q
    a, b, c, d = (p.get(k) for k in ("a", "b", "c", "d"))
    if name == "l-as-j-via-b":
        return _lhs_l(p, q), FamilySpec("J", (a * b / c, c / b, b, 0 * q), q)
    if name == "l-as-j-via-a":
        return _lhs_l(p, q), FamilySpec("J", (a * b / c, c / a, a, 0 * q), q)
    if name == "asc-roundtrip":
        rhs = classical("al-salam-carlitz", (a / b,), qp, n_max)
        return FamilySpec("L", (a, b, 0 * q), q), _scaled(rhs, b)
    if name == "big-q-laguerre-roundtrip":
        rhs = classical("big-q-laguerre", (c / a, c / b), qp, n_max)
        return _lhs_l(p, q), _scaled(rhs, a * b / (c * q))
    if name == "little-q-laguerre-roundtrip-a0":
        rhs = classical("little-q-laguerre", (c / b,), qp, n_max)
        return FamilySpec("L", (0 * q, b, c), q), _scaled(rhs, b)
    if name == "little-q-laguerre-roundtrip-b0":
        rhs = classical("little-q-laguerre", (c / a,), qp, n_max)
        return FamilySpec("L", (a, 0 * q, c), q), _scaled(rhs, a)
    if name == "l-type-roundtrip":
        rhs = classical("l-type", (-c,), qp, n_max)
        return FamilySpec("L", (0 * q, 0 * q, c), q), rhs
    if name == "j-as-l-d0":
        return (FamilySpec("J", (a, b, c, 0 * q), q),
                FamilySpec("L", (a * b, c, b * c), q))
    if name == "big-q-jacobi-roundtrip":
        rhs = classical("big-q-jacobi", (b, d / b, c / a), qp, n_max)
        return _lhs_j(p, q), _scaled(rhs, a / q)
    if name == "little-q-jacobi-roundtrip-a0":
        rhs = classical("little-q-jacobi", (b, d / b), qp, n_max)
        return FamilySpec("J", (0 * q, b, c, d), q), _scaled(rhs, c)
    if name == "little-q-jacobi-roundtrip-b0":
        rhs = classical("little-q-jacobi", (a * d / c, c / a), qp, n_max)
        return FamilySpec("J", (a, 0 * q, c, d), q), _scaled(rhs, c)
    if name == "little-q-jacobi-roundtrip-c0":
        rhs = classical("little-q-jacobi", (d / b, b), qp, n_max)
        return FamilySpec("J", (a, b, 0 * q, d), q), _scaled(rhs, a * b)
    if name == "q-bessel-roundtrip":
        rhs = classical("q-bessel", (-d * q,), qp, n_max)
        return FamilySpec("J", (0 * q, 0 * q, c, d), q), _scaled(rhs, c)
    if name == "j-type-roundtrip":
        rhs = classical("j-type", (q * d, a), qp, n_max)
        return FamilySpec("J", (a, 0 * q, 0 * q, d), q), _scaled(rhs, 1 / q)
    raise DomainError(f"unknown reduction identity {name!r}")


def _limit_polys(j_params, base, n_max: int) -> list[Poly]:
    """J-family polynomials over Q(t), each coefficient sent to t = 0."""
    coeffs = j_coeffs(*j_params, base, n_max)
    polys = ttrr_generate(coeffs, n_max)
    return [Poly([rf_limit_at_zero(RatFunc.coerce(cf)) for cf in poly.coeffs])
            for poly in polys]


LIMIT_IDENTITIES = ("l00c-limit", "la10-limit")

REDUCTION_IDENTITIES = (
    "l-as-j-via-b",
    "l-as-j-via-a",
    "l00c-limit",
    "la10-limit",
    "asc-roundtrip",
    "big-q-laguerre-roundtrip",
    "little-q-laguerre-roundtrip-a0",
    "little-q-laguerre-roundtrip-b0",
    "l-type-roundtrip",
    "j-as-l-d0",
    "big-q-jacobi-roundtrip",
    "little-q-jacobi-roundtrip-a0",
    "little-q-jacobi-roundtrip-b0",
    "little-q-jacobi-roundtrip-c0",
    "q-bessel-roundtrip",
    "j-type-roundtrip",
)


def check_reduction(name: str, params: dict, qp: QParams,
                    n_max: int = 8) -> ReductionReport:
    """Generate both sides of one displayed reduction map and compare.

    The two limiting identities are evaluated over Q(t) with b = t and the
    limit realized exactly as the value at t = 0 after cancellation.
    """
    q = qp.q
    if name == "l00c-limit":
        c = params["c"]
        if c == 0:
            raise DomainError("l00c-limit requires c != 0")
        lhs = FamilySpec("L", (0 * q, 0 * q, c), q).polynomials(n_max)
        t = RatFunc.t()
        rhs = _limit_polys((RatFunc.coerce(0), RatFunc.coerce(c) / t, t,
                            RatFunc.coerce(0)), q, n_max)
        return _compare_polys(name, lhs, rhs, n_max)
    if name == "la10-limit":
        a = params["a"]
        lhs = FamilySpec("L", (a, q ** 0, 0 * q), q).polynomials(n_max)
        t = RatFunc.t()
        rhs = _limit_polys((RatFunc.coerce(a) / t, t, RatFunc.coerce(1),
                            RatFunc.coerce(0)), q, n_max)
        return _compare_polys(name, lhs, rhs, n_max)
    lhs_spec, rhs_spec = _identity_specs(name, params, qp, n_max)
    return _compare_polys(name, lhs_spec.polynomials(n_max),
                          rhs_spec.polynomials(n_max), n_max)
