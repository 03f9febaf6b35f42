"""Recurrence coefficients from Pearson data, and the self-coherent
classification for pivot degrees N <= 2 with index 0 and orders (1, 0).

Given a regular functional u satisfying the backward Pearson equation

    D[1/q,-w/q](phi u) = psi u,   deg phi <= 2,  psi = b0 + b1 x,

the associated monic orthogonal sequence has closed-form recurrence
coefficients driven by the sequences (brackets in base 1/q)

    d_n = b1 q**-n + a2 [n],   e_n = b0 q**-n + (a1 - w/q * d_n) [n],

subject to d_n != 0 and phi(-e_n / d_{2n}) != 0; see
:func:`pearson_ttrr`.

The classifier consumes one self-structure relation

    pi(x) D[q,w] P_{n+1}(x) = [n+1]_q (P_{n+N}(x) + ... + c_{n,n} P_n(x))

through its data (pi, beta_0, gamma_1) and reconstructs the family: an
L-family at base q for N in {0, 1}, an L-family at base 1/q when N = 2 and
the d-sequence is constant, and a J-family at base 1/q otherwise.  When a
quadratic discriminant is not a rational square the family parameters stay
implicit, but the predicted recurrence is still emitted through forms that
are symmetric in the root pair.  Every classification is finished by an
internal cross-check: the predicted recurrence must match
:func:`pearson_ttrr` applied to the reconstructed Pearson pair.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import Poly, rat_str, sqrt_fraction
from .errors import (
    DegenerateInput,
    DomainError,
    InternalInconsistency,
    RegularityViolation,
)
from .families import (
    FamilySpec,
    TTRRCoeffs,
    l_coeffs_symmetric,
)
from .qcalc import QParams, q_bracket


@dataclass(frozen=True)
class PearsonTTRR:
    """Pearson data with the derived d/e sequences and the recurrence."""

    phi: Poly
    psi: Poly
    qp: QParams
    d: tuple
    e: tuple
    coeffs: TTRRCoeffs


def pearson_ttrr(phi: Poly, psi: Poly, qp: QParams, n_max: int) -> PearsonTTRR:
    """Recurrence coefficients of the monic sequence attached to a backward
    Pearson pair with deg phi <= 2 and deg psi = 1.

    Raises RegularityViolation when some d_n vanishes or some
    phi(-e_n / d_{2n}) vanishes (which would force gamma_{n+1} = 0).
    """
    if phi.is_zero() or phi.degree > 2:
        raise DomainError("phi must be non-zero of degree <= 2")
    if psi.degree != 1:
        raise DomainError("psi must have degree exactly 1")
    q, w = qp.q, qp.omega
    a1, a2 = phi.coeff(1), phi.coeff(2)
    b0, b1 = psi.coeff(0), psi.coeff(1)
    qbar = 1 / q

    top = 2 * n_max + 2
    d, e = [], []
    for n in range(top + 1):
        br = q_bracket(n, qbar)
        dn = b1 * q ** -n + a2 * br
        if dn == 0:
            raise RegularityViolation(f"d_{n} = 0 for the Pearson pair")
        d.append(dn)
        e.append(b0 * q ** -n + (a1 - w / q * dn) * br)

    beta = [-e[0] / d[0]]
    for n in range(1, n_max + 1):
        brn = q_bracket(n, qbar)
        brn1 = q_bracket(n + 1, qbar)
        beta.append(-w / q * brn + brn * e[n - 1] / d[2 * n - 2]
                    - brn1 * e[n] / d[2 * n])
    gamma = []
    for n in range(n_max):
        value = phi(-e[n] / d[2 * n])
        if value == 0:
            raise RegularityViolation(
                f"phi(-e_{n}/d_{2 * n}) = 0: gamma_{n + 1} would vanish")
        brn1 = q_bracket(n + 1, qbar)
        if n == 0:
            gamma.append(-brn1 * value / d[1])  # the d_{-1} factors cancel
        else:
            gamma.append(-q ** -n * brn1 * d[n - 1] * value
                         / (d[2 * n - 1] * d[2 * n + 1]))
    return PearsonTTRR(phi, psi, qp, tuple(d), tuple(e),
                       TTRRCoeffs(beta, gamma))


@dataclass(frozen=True)
class ClassificationTrace:
    """Everything the classifier derived, including the implicit fallback.

    ``family`` is None exactly when ``implicit`` is true, i.e. when some
    root pair exists only over a quadratic extension; ``predicted`` always
    carries the full recurrence.  ``pearson_phi``/``pearson_psi`` is the
    reconstructed backward Pearson pair of the functional.
    """

    case_label: str
    branch: str | None
    alpha: Fraction
    beta: Fraction
    lam: Fraction | None
    mu: Fraction | None
    delta: Fraction | None
    sum_roots: Fraction | None
    prod_roots: Fraction | None
    roots: tuple | None
    family: FamilySpec | None
    implicit: bool
    predicted: TTRRCoeffs
    pearson_phi: Poly
    pearson_psi: Poly
    note: str = ""

    def to_json(self) -> dict:
        def opt(x):
            return None if x is None else rat_str(x)

        spec = self.family
        return {
            "case": self.case_label,
            "branch": self.branch,
            "family": None if spec is None else spec.kind,
            "params": None if spec is None else [rat_str(p) for p in spec.params],
            "base": None if spec is None else rat_str(spec.base),
            "shift": None if spec is None else {"scale": rat_str(spec.scale),
                                                "offset": rat_str(spec.offset)},
            "implicit": self.implicit,
            "alpha": opt(self.alpha),
            "beta": opt(self.beta),
            "lambda": opt(self.lam),
            "mu": opt(self.mu),
            "delta": opt(self.delta),
            "sum_roots": opt(self.sum_roots),
            "prod_roots": opt(self.prod_roots),
            "roots": None if self.roots is None else [rat_str(r) for r in self.roots],
            "predicted_ttrr": self.predicted.to_json(),
            "pearson": {"phi": self.pearson_phi.to_strings(),
                        "psi": self.pearson_psi.to_strings()},
            "note": self.note,
        }


def _split_quadratic(sum_roots, prod_roots):
    """Roots of z**2 - sum*z + prod over Q (ascending), or None."""
    root = sqrt_fraction(sum_roots * sum_roots - 4 * prod_roots)
    if root is None:
        return None
    return ((sum_roots - root) / 2, (sum_roots + root) / 2)


def _case_iiib_ttrr(lam, mu, sum_rs, prod_rs, omega0, q, n_max) -> TTRRCoeffs:
    """Recurrence from the root-symmetric four-parameter forms.

    The gamma numerator quartic is the product of the two reversed
    quadratics mu*r*z**2 - lam*z + s and mu*s*z**2 - lam*z + r, expanded in
    the symmetric functions of (r, s).
    """
    beta, gamma = [], []
    for n in range(n_max + 1):
        zn = q ** -n
        den = (1 - mu * q ** (-2 * n)) * (1 - mu * q ** (-2 * n - 2))
        if den == 0:
            raise DegenerateInput("vanishing denominator in the beta form")
        num = ((lam + sum_rs) * (1 + mu * q ** (-2 * n - 1))
               - (1 + q ** -1) * (lam + mu * sum_rs) * zn)
        beta.append(omega0 + zn * num / den)
    for n in range(n_max):
        z = q ** (-n - 1)
        quartic = (mu * mu * prod_rs * z ** 4 - lam * mu * sum_rs * z ** 3
                   + (mu * (sum_rs ** 2 - 2 * prod_rs) + lam ** 2) * z ** 2
                   - lam * sum_rs * z + prod_rs)
        den = ((1 - mu * q ** (-2 * n - 1)) * (1 - mu * q ** (-2 * n - 2)) ** 2
               * (1 - mu * q ** (-2 * n - 3)))
        if den == 0:
            raise DegenerateInput("vanishing denominator in the gamma form")
        value = (-q ** -n * (1 - q ** (-n - 1)) * (1 - mu * q ** (-n - 1))
                 * quartic / den)
        if value == 0:
            raise DegenerateInput(
                f"gamma_{n + 1} = 0: data do not come from a regular sequence")
        gamma.append(value)
    return TTRRCoeffs(beta, gamma)


def classify_self_coherent(pi: Poly, beta0, gamma1, qp: QParams,
                           n_max: int = 10) -> ClassificationTrace:
    """Identify the monic orthogonal sequence behind one self-structure
    relation from (pi, beta_0, gamma_1) alone.

    Emits the case label, the reconstructed Pearson pair, the predicted
    recurrence to depth n_max, and (when every needed discriminant is a
    rational square) an explicit family spec whose polynomials reproduce
    the sequence.
    """
    if gamma1 == 0:
        raise DegenerateInput("gamma_1 must be non-zero")
    if not pi.is_monic() or pi.degree > 2:
        raise DomainError("pi must be monic of degree 0, 1 or 2")
    q, omega0 = qp.q, qp.omega0
    beta0 = Fraction(beta0)
    gamma1 = Fraction(gamma1)
    deg = pi.degree

    if deg == 0:
        alpha = -q / gamma1
        case = "I"
    elif deg == 1:
        c_shift = pi(omega0)
        if c_shift + beta0 == omega0:
            raise DegenerateInput(
                "c + beta_0 = omega_0 forces a zero band coefficient")
        alpha = -q * (beta0 - omega0 + c_shift) / gamma1
        case = "II"
    else:
        if gamma1 + pi(beta0) == 0:
            raise DegenerateInput(
                "gamma_1 + pi(beta_0) = 0 contradicts regularity")
        alpha = -q * (gamma1 + pi(beta0)) / gamma1
        case = "III"
    beta = -alpha * (beta0 - omega0)
    pearson_psi = Poly([beta - alpha * omega0, alpha])

    branch = None
    lam = mu = delta = None
    sum_roots = prod_roots = None
    roots = None
    family = None
    note = ""

    if case == "I":
        sum_roots = beta0 - omega0
        prod_roots = gamma1 / (q - 1)
        predicted = l_coeffs_symmetric(
            sum_roots, prod_roots, Fraction(0), q, n_max).shifted(
                Fraction(1), omega0)
        roots = _split_quadratic(sum_roots, prod_roots)
        if roots is None:
            note = "NonRationalRoot: root pair lives in a quadratic extension"
        else:
            family = FamilySpec("L", (roots[0], roots[1], Fraction(0)), q,
                                offset=omega0)
    elif case == "II":
        c_shift = pi(omega0)
        predicted_beta = []
        predicted_gamma = []
        for n in range(n_max + 1):
            qn = q ** n
            predicted_beta.append(
                omega0 - (beta * (1 - q) + (1 + q) * (1 - qn)) * qn
                / (alpha * (1 - q)))
        for n in range(n_max):
            qn = q ** n
            value = ((1 - q ** (n + 1)) * q ** (n + 1)
                     * (-alpha * c_shift * (1 - q) + (q + beta * (1 - q)) * qn
                        - q ** (2 * n + 1))
                     / (alpha ** 2 * (1 - q) ** 2))
            if value == 0:
                raise DegenerateInput(
                    f"gamma_{n + 1} = 0: data do not come from a regular sequence")
            predicted_gamma.append(value)
        predicted = TTRRCoeffs(predicted_beta, predicted_gamma)
        sum_roots = q + beta * (1 - q)
        prod_roots = alpha * c_shift * q * (1 - q)
        r_scale = 1 / (alpha * (q - 1))
        roots = _split_quadratic(sum_roots, prod_roots)
        if roots is None:
            note = "NonRationalRoot: root pair lives in a quadratic extension"
        else:
            family = FamilySpec(
                "L", (roots[0] * r_scale, roots[1] * r_scale, r_scale), q,
                offset=omega0)
    else:
        shifted = Poly([pi(omega0),
                        pi.coeff(1) + 2 * omega0, Fraction(1)])
        sum_rs = -shifted.coeff(1)
        prod_rs = shifted.coeff(0)
        sum_roots, prod_roots = sum_rs, prod_rs
        if alpha == q / (q - 1):
            case = "IIIa"
            c_shift = (q - 1) * beta + q * sum_rs
            predicted = l_coeffs_symmetric(
                sum_rs, prod_rs, c_shift, 1 / q, n_max).shifted(
                    Fraction(1), omega0)
            roots = _split_quadratic(sum_rs, prod_rs)
            if roots is None:
                note = ("NonRationalRoot: pivot roots live in a quadratic "
                        "extension")
            else:
                family = FamilySpec("L", (roots[0], roots[1], c_shift),
                                    1 / q, offset=omega0)
        else:
            case = "IIIb"
            mu = q * (q + alpha * (1 - q))
            lam = sum_rs * q - beta * (1 - q)
            if mu == 0:
                raise InternalInconsistency("mu = 0 despite alpha branch")
            for j in range(0, 2 * n_max + 4):
                if mu == q ** j:
                    raise DegenerateInput(
                        f"mu = q^{j} makes some d_n vanish")
            predicted = _case_iiib_ttrr(lam, mu, sum_rs, prod_rs, omega0,
                                        q, n_max)
            if prod_rs == 0:
                s_val = sum_rs
                if lam == 0:
                    branch = "bessel"
                    if s_val == 0:
                        raise DegenerateInput(
                            "r = s = lambda = 0 forces gamma = 0")
                    roots = (Fraction(0), Fraction(0))
                    family = FamilySpec(
                        "J", (Fraction(0), Fraction(0), s_val, mu), 1 / q,
                        offset=omega0)
                else:
                    branch = "r-zero"
                    a_val = lam / mu
                    b_val = mu * s_val / lam
                    roots = (a_val, b_val)
                    family = FamilySpec(
                        "J", (a_val, b_val, Fraction(0), mu), 1 / q,
                        offset=omega0)
            else:
                branch = "general"
                delta = lam * lam - 4 * prod_rs * mu
                pivot = _split_quadratic(sum_rs, prod_rs)
                droot = sqrt_fraction(delta) if delta >= 0 else None
                if pivot is None or droot is None:
                    note = ("NonRationalRoot: implicit form retained, "
                            "recurrence from symmetric data")
                else:
                    r_val = pivot[0]
                    a_val = (lam + droot) / (2 * mu)
                    b_val = (lam - droot) / (2 * r_val)
                    roots = (a_val, b_val)
                    family = FamilySpec(
                        "J", (a_val, b_val, r_val, mu), 1 / q, offset=omega0)

    cross = pearson_ttrr(pi, pearson_psi, qp, n_max).coeffs
    if not predicted.agrees_with(cross, n_max):
        raise InternalInconsistency(
            "symmetric-form recurrence disagrees with the Pearson engine")
    if family is not None and not family.ttrr(n_max).agrees_with(
            predicted, n_max):
        raise InternalInconsistency(
            "explicit family recurrence disagrees with the prediction")

    return ClassificationTrace(
        case_label=case, branch=branch, alpha=alpha, beta=beta, lam=lam,
        mu=mu, delta=delta, sum_roots=sum_roots, prod_roots=prod_roots,
        roots=roots, family=family, implicit=family is None,
        predicted=predicted, pearson_phi=pi, pearson_psi=pearson_psi,
        note=note)


# -- canonical self-coherent instances (the four proof cases) ---------------


@dataclass(frozen=True)
class CaseInstance:
    """One concrete self-coherent sequence with its structure data."""

    label: str
    spec: FamilySpec
    pi: Poly
    qp: QParams

    def structure_data(self, n_max: int = 1):
        """(pi, beta_0, gamma_1) as consumed by the classifier."""
        ttrr = self.spec.ttrr(max(n_max, 1))
        return self.pi, ttrr.beta_at(0), ttrr.gamma_at(1)


def case_i_instance(qp: QParams, a, b) -> CaseInstance:
    """Pivot of degree 0: the shifted L-family with c = 0 (ab != 0)."""
    if a * b == 0:
        raise DegenerateInput("case I requires ab != 0")
    spec = FamilySpec("L", (Fraction(a), Fraction(b), Fraction(0)), qp.q,
                      offset=qp.omega0)
    return CaseInstance("I", spec, Poly.one(), qp)


def case_ii_instance(qp: QParams, a, b, r) -> CaseInstance:
    """Pivot x - w0 + c with c = -a*b*r/q: the shifted L(ar, br, r).

    (a, b) are the root pair of the classification quadratic, so the pivot
    constant satisfies a*b = alpha*c*q*(1-q) with alpha = 1/(r*(q-1)).
    """
    a, b, r = Fraction(a), Fraction(b), Fraction(r)
    if r == 0:
        raise DegenerateInput("case II requires r != 0")
    spec = FamilySpec("L", (a * r, b * r, r), qp.q, offset=qp.omega0)
    c_shift = -a * b * r / qp.q
    pi = Poly([c_shift - qp.omega0, Fraction(1)])
    return CaseInstance("II", spec, pi, qp)


def _pivot_from_roots(qp: QParams, r, s) -> Poly:
    x = Poly.x()
    return (x - qp.omega0 - r) * (x - qp.omega0 - s)


def case_iiia_instance(qp: QParams, r, s, c) -> CaseInstance:
    """Quadratic pivot with constant d-sequence: L(r, s, c) at base 1/q."""
    r, s, c = Fraction(r), Fraction(s), Fraction(c)
    spec = FamilySpec("L", (r, s, c), 1 / qp.q, offset=qp.omega0)
    return CaseInstance("IIIa", spec, _pivot_from_roots(qp, r, s), qp)


def case_iiib_instance(qp: QParams, a, b, r, mu) -> CaseInstance:
    """Quadratic pivot, non-constant d-sequence: J(a, b, r, mu) at 1/q.

    The second pivot root is s = a*b.
    """
    a, b, r, mu = Fraction(a), Fraction(b), Fraction(r), Fraction(mu)
    if mu == 0:
        raise DegenerateInput("case IIIb requires mu != 0")
    spec = FamilySpec("J", (a, b, r, mu), 1 / qp.q, offset=qp.omega0)
    return CaseInstance("IIIb", spec, _pivot_from_roots(qp, r, a * b), qp)


def case_iiib_bessel_instance(qp: QParams, s, mu) -> CaseInstance:
    """The r = lambda = 0 branch: J(0, 0, s, mu) at base 1/q (s != 0)."""
    s, mu = Fraction(s), Fraction(mu)
    if s == 0 or mu == 0:
        raise DegenerateInput("the branch requires s != 0 and mu != 0")
    spec = FamilySpec("J", (Fraction(0), Fraction(0), s, mu), 1 / qp.q,
                      offset=qp.omega0)
    return CaseInstance("IIIb", spec, _pivot_from_roots(qp, Fraction(0), s),
                        qp)
