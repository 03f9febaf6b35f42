"""Coherence-pair machinery and its moment-level verification.

Two monic orthogonal sequences (P_n), (Q_n) with functionals u, v form a
coherent pair with index M, order (m, k) and monic pivot pi of degree N
when the banded structure relation

    pi(x) P_n^{[m]}(x) = sum_{j = n-M}^{n+N} c_{n,j} Q_j^{[k]}(x)

holds with c_{n,n+N} = 1 and c_{n,n-M} != 0 for n >= M (superscripts are
the degree-preserving normalized differences).  From the expansion
coefficients this module constructs the polynomial tables

* psi(x; n): coefficient of u after m-fold backward differencing of
  pi times the k-th derivative dual functionals,
* phi(x; n, j): coefficients of the j-th backward derivative of v in the
  (k+N)-fold differencing of the same product,
* varphi(x; n, i) and xi(x; n, j): the Leibniz redistributions used when
  m >= k+N resp. m < k+N,
* big_phi(x; j): the chain solving the k = 0 case recursively,

builds the Cramer determinant systems they satisfy, and verifies every
resulting functional equation exactly on moments.  "Backward" throughout
means the difference parameters (1/q, -w/q).

All determinants are computed twice, by fraction-free elimination and by
cofactor expansion, and the results are required to agree.
"""
from __future__ import annotations

from dataclasses import dataclass

from .algebra import Poly, det_bareiss, det_cofactor
from .errors import (
    DegreeClaimViolated,
    DomainError,
    IndexOutOfRange,
    InternalInconsistency,
    MissingData,
)
from .families import (
    FamilySpec,
    StructureTable,
    moments_from_ttrr,
    squared_norms,
    structure_coeffs,
    ttrr_generate,
)
from .functionals import (
    MomentFunctional,
    SemiclassicalWitness,
    functional_agree,
    functional_diff_n,
    left_mult,
)
from .qcalc import (
    QParams,
    hahn_diff,
    hahn_power,
    q_binom,
    q_factorial,
    shift,
    shift_power,
)


@dataclass(frozen=True)
class CoherenceConfig:
    """Structure-relation shape: derivative orders (m, k), index M, pivot pi."""

    m: int
    k: int
    M: int
    pi: Poly

    def __post_init__(self):
        if min(self.m, self.k, self.M) < 0:
            raise DomainError("m, k, M must be non-negative")
        if not self.pi.is_monic():
            raise DomainError("pi must be monic")

    @property
    def N(self) -> int:
        return self.pi.degree


@dataclass(frozen=True)
class VerifyReport:
    """Outcome of one exact moment-level identity check."""

    identity: str
    status: str  # "holds" | "failed" | "degenerate"
    order_checked: int = -1
    first_failure: int | None = None
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.status == "holds"

    def to_json(self) -> dict:
        data = {"identity": self.identity, "status": self.status,
                "order_checked": self.order_checked}
        if self.first_failure is not None:
            data["first_failure"] = self.first_failure
        if self.detail:
            data["detail"] = self.detail
        return data


def _report(identity: str, lhs: MomentFunctional, rhs: MomentFunctional,
            detail: str = "") -> VerifyReport:
    ok, idx, checked = functional_agree(lhs, rhs)
    return VerifyReport(identity, "holds" if ok else "failed", checked,
                        idx, detail)


@dataclass(frozen=True)
class DeterminantSystem:
    """Cramer data: the system determinant and its column replacements."""

    det: Poly
    replaced: tuple  # replacement-column determinants, in column order
    columns: tuple   # which column index each replacement corresponds to

    @property
    def degenerate(self) -> bool:
        return self.det.is_zero()


class CoherencePair:
    """A coherent pair instance with everything needed for verification.

    Holds the two polynomial sequences, their moment functionals, squared
    norms, the structure table, and the operator parameters.  All psi/phi
    tables are built lazily and cached.
    """

    def __init__(self, config: CoherenceConfig, qp: QParams, p_polys,
                 q_polys, u: MomentFunctional, v: MomentFunctional,
                 u_norms, v_norms, table: StructureTable):
        self.config = config
        self.qp = qp
        self.p = list(p_polys)
        self.q = list(q_polys)
        self.u = u
        self.v = v
        self.u_norms = list(u_norms)
        self.v_norms = list(v_norms)
        self.table = table
        self._psi: dict = {}
        self._phi: dict = {}

    @classmethod
    def self_coherent(cls, spec: FamilySpec, config: CoherenceConfig,
                      qp: QParams, order: int = 40,
                      depth: int = 8) -> "CoherencePair":
        """Build the pair P = Q from one family spec.

        ``order`` is the stored moment order; ``depth`` the largest index n
        for which the psi/phi tables will be requested.
        """
        span = depth + config.m + config.k + config.N + 1
        n_need = max(span, order // 2 + 1)
        ttrr = spec.ttrr(n_need)
        polys = ttrr_generate(ttrr, span)
        u = moments_from_ttrr(ttrr, order)
        norms = squared_norms(ttrr, span)
        table = structure_coeffs(polys, polys, config.pi, config.m,
                                 config.k, config.M, qp)
        return cls(config, qp, polys, polys, u, u, norms, norms, table)

    # -- polynomial tables -------------------------------------------------

    def psi(self, n: int) -> Poly:
        """Multiplier of u in the m-fold differenced structure relation.

        psi(x; n) = sum over the window j in [n-N, n+M] of
        (-q)**m [j+m]!/[j]! * c_{j,n} / <u, P_{j+m}^2> * P_{j+m}(x);
        degree m+n+M exactly when the band-edge coefficient is non-zero.
        """
        if n in self._psi:
            return self._psi[n]
        cfg, q = self.config, self.qp.q
        total = Poly()
        hi = n + cfg.M
        if hi > self.table.n_max:
            raise MissingData(f"structure table stops before row {hi}")
        for j in range(max(0, n - cfg.N), hi + 1):
            cjn = self.table.c(j, n)
            if cjn == 0:
                continue
            scale = ((-q) ** cfg.m * q_factorial(j + cfg.m, q)
                     / q_factorial(j, q) / self.u_norms[j + cfg.m] * cjn)
            total = total + self.p[j + cfg.m] * scale
        if self.table.c(hi, n) != 0 and total.degree != cfg.m + n + cfg.M:
            raise DegreeClaimViolated(
                f"deg psi(.;{n}) = {total.degree}, expected {cfg.m + n + cfg.M}")
        self._psi[n] = total
        return total

    def phi(self, n: int, j: int) -> Poly:
        """Coefficient of the j-th backward derivative of v (0 <= j <= N).

        phi(x; n, j) = (-q)**k [n+k]!/([n]! <v, Q_{n+k}^2>) * sum over l of
        [k+N, l]_{1/q} [N-l, N-j-l]_{1/q}
        L'**(k+N-l)(D'**l pi) * L'**j(D'**(N-j-l) Q_{n+k}),
        primes denoting the backward operators; degree k+n+j.
        """
        key = (n, j)
        if key in self._phi:
            return self._phi[key]
        cfg, qp = self.config, self.qp
        if not 0 <= j <= cfg.N:
            raise IndexOutOfRange(f"phi column {j} outside 0..{cfg.N}")
        inv = qp.inverse
        qbar = inv.q
        scale = ((-qp.q) ** cfg.k * q_factorial(n + cfg.k, qp.q)
                 / q_factorial(n, qp.q) / self.v_norms[n + cfg.k])
        total = Poly()
        for ell in range(0, cfg.N - j + 1):
            dq = cfg.N - j - ell
            if dq > n + cfg.k:
                continue  # difference order exhausts Q_{n+k}
            p1 = shift_power(hahn_power(cfg.pi, ell, inv),
                             cfg.k + cfg.N - ell, inv)
            p2 = shift_power(hahn_power(self.q[n + cfg.k], dq, inv), j, inv)
            if p1.is_zero() or p2.is_zero():
                continue
            coeff = q_binom(cfg.k + cfg.N, ell, qbar) * q_binom(
                cfg.N - ell, cfg.N - j - ell, qbar)
            total = total + p1 * p2 * coeff
        total = total * scale
        if total.degree != cfg.k + n + j:
            raise DegreeClaimViolated(
                f"deg phi(.;{n},{j}) = {total.degree}, expected {cfg.k + n + j}")
        self._phi[key] = total
        return total

    def varphi(self, n: int, i: int) -> Poly:
        """Leibniz redistribution of phi used when m >= k+N.

        varphi(x; n, i) = sum over j+l = i (0 <= j <= m-k-N, 0 <= l <= N) of
        [m-k-N, j]_{1/q} L'**j(D'**(m-k-N-j) phi(.; n, l)).
        """
        cfg, inv = self.config, self.qp.inverse
        extra = cfg.m - cfg.k - cfg.N
        if extra < 0:
            raise DomainError("varphi requires m >= k+N")
        total = Poly()
        for j in range(0, min(i, extra) + 1):
            ell = i - j
            if ell < 0 or ell > cfg.N:
                continue
            term = shift_power(
                hahn_power(self.phi(n, ell), extra - j, inv), j, inv)
            if term.is_zero():
                continue
            total = total + term * q_binom(extra, j, inv.q)
        return total

    def xi(self, n: int, j: int) -> Poly:
        """Leibniz redistribution of psi used when m < k+N.

        xi(x; n, j) = [k+N-m, j]_{1/q} L'**j(D'**(k+N-m-j) psi(.; n)).
        """
        cfg, inv = self.config, self.qp.inverse
        extra = cfg.k + cfg.N - cfg.m
        if not 0 <= j <= extra:
            raise IndexOutOfRange(f"xi column {j} outside 0..{extra}")
        term = shift_power(hahn_power(self.psi(n), extra - j, inv), j, inv)
        return term * q_binom(extra, j, inv.q)

    # -- functional building blocks ----------------------------------------

    def dprime(self, w: MomentFunctional, j: int = 1) -> MomentFunctional:
        """j-fold backward difference of a functional."""
        return functional_diff_n(w, j, self.qp.inverse)

    def _sum(self, terms) -> MomentFunctional:
        total = None
        for term in terms:
            total = term if total is None else total + term
        if total is None:
            raise InternalInconsistency("empty functional sum")
        return total

    def _phi_side(self, n: int) -> MomentFunctional:
        """sum_j phi(.; n, j) applied to the j-th backward derivative of v."""
        return self._sum(
            left_mult(self.phi(n, j), self.dprime(self.v, j))
            for j in range(self.config.N + 1))

    # -- verification ------------------------------------------------------

    def verify_functional_equation(self, n: int) -> VerifyReport:
        """The coherence functional equation for one n, exactly on moments.

        For m >= k+N:  psi(.; n) u = D'**(m-k-N) ( sum_j phi(.; n, j) D'**j v );
        for m < k+N:   D'**(k+N-m) ( psi(.; n) u ) = sum_j phi(.; n, j) D'**j v.
        """
        cfg = self.config
        psi_u = left_mult(self.psi(n), self.u)
        if cfg.m >= cfg.k + cfg.N:
            lhs = psi_u
            rhs = self.dprime(self._phi_side(n), cfg.m - cfg.k - cfg.N)
            name = f"coherence-equation-high[n={n}]"
        else:
            lhs = self.dprime(psi_u, cfg.k + cfg.N - cfg.m)
            rhs = self._phi_side(n)
            name = f"coherence-equation-low[n={n}]"
        return _report(name, lhs, rhs)

    def verify_varphi_row(self, n: int) -> VerifyReport:
        """psi(.; n) u = sum_i varphi(.; n, i) D'**i v (m >= k+N form)."""
        cfg = self.config
        lhs = left_mult(self.psi(n), self.u)
        rhs = self._sum(
            left_mult(self.varphi(n, i), self.dprime(self.v, i))
            for i in range(cfg.m - cfg.k + 1)
            if not self.varphi(n, i).is_zero())
        return _report(f"varphi-row[n={n}]", lhs, rhs)

    # -- determinant systems -----------------------------------------------

    @staticmethod
    def _det(rows) -> Poly:
        fast = det_bareiss(rows)
        slow = det_cofactor(rows)
        if fast != slow:
            raise InternalInconsistency(
                "fraction-free and cofactor determinants disagree")
        return fast

    def varphi_system(self) -> DeterminantSystem:
        """Determinants A, A1, A2 of the varphi matrix (case m >= k+N).

        The matrix has order m-k+1 with entry (n, j) = varphi(x; n, j);
        A1 and A2 replace its first resp. second column by the vector of
        psi(x; n), n = 0..m-k.
        """
        cfg = self.config
        if cfg.m < cfg.k + cfg.N:
            raise DomainError("varphi system requires m >= k+N")
        if cfg.N == 0 and cfg.m <= cfg.k:
            raise DomainError("with N = 0 the varphi system needs m > k")
        size = cfg.m - cfg.k + 1
        matrix = [[self.varphi(n, j) for j in range(size)]
                  for n in range(size)]
        column = [self.psi(n) for n in range(size)]
        dets = []
        for col in (0, 1):
            replaced = [row[:] for row in matrix]
            for n in range(size):
                replaced[n][col] = column[n]
            dets.append(self._det(replaced))
        return DeterminantSystem(self._det(matrix), tuple(dets), (0, 1))

    def xi_system(self) -> DeterminantSystem:
        """Determinants B, B1, B2, B_{N+2} of the phi/xi matrix (m < k+N).

        The matrix has order k-m+2N+1; columns 0..N hold phi(x; i, j) and
        columns N+1..k-m+2N hold -xi(x; i, j-N).  The replacement vector is
        xi(x; i, 0), substituted into columns 1, 2 and N+2 (1-based).
        """
        cfg = self.config
        if cfg.m >= cfg.k + cfg.N:
            raise DomainError("xi system requires m < k+N")
        size = cfg.k - cfg.m + 2 * cfg.N + 1
        matrix = []
        for i in range(size):
            row = [self.phi(i, j) for j in range(cfg.N + 1)]
            row += [-self.xi(i, j - cfg.N)
                    for j in range(cfg.N + 1, size)]
            matrix.append(row)
        column = [self.xi(i, 0) for i in range(size)]
        dets = []
        for col in (0, 1, cfg.N + 1):
            replaced = [row[:] for row in matrix]
            for i in range(size):
                replaced[i][col] = column[i]
            dets.append(self._det(replaced))
        return DeterminantSystem(self._det(matrix), tuple(dets),
                                 (0, 1, cfg.N + 1))

    def verify_varphi_system(self) -> list[VerifyReport]:
        """Rational-transformation identities from the varphi determinants.

        Checks, exactly on moments: A v = A1 u; A D'v = A2 u; and the two
        self-contained difference equations each functional then satisfies.
        """
        system = self.varphi_system()
        if system.degenerate:
            return [VerifyReport("varphi-system", "degenerate",
                                 detail="determinant vanishes identically")]
        a, (a1, a2) = system.det, system.replaced
        qp = self.qp
        out = [
            _report("A*v = A1*u",
                    left_mult(a, self.v), left_mult(a1, self.u)),
            _report("A*D'v = A2*u",
                    left_mult(a, self.dprime(self.v)),
                    left_mult(a2, self.u)),
        ]
        lhs = self.dprime(left_mult(a1 * shift(a, qp), self.u))
        rhs_poly = (hahn_diff(a, qp) * a1 * qp.q
                    + hahn_diff(a, qp.inverse) * a1
                    + shift(a, qp.inverse) * a2)
        out.append(_report("difference equation for u",
                           lhs, left_mult(rhs_poly, self.u)))
        aa1 = a * a1
        lhs = self.dprime(left_mult(shift(aa1, qp), self.v))
        rhs_poly = hahn_diff(aa1, qp) * qp.q + a * a2
        out.append(_report("difference equation for v",
                           lhs, left_mult(rhs_poly, self.v)))
        return out

    def verify_xi_system(self) -> list[VerifyReport]:
        """Rational-transformation identities from the phi/xi determinants.

        Checks B v = B1 u, B D'v = B2 u, B D'u = B_{N+2} u, and the two
        difference equations they imply.
        """
        if self.v.is_zero():
            return [VerifyReport("xi-system", "degenerate",
                                 detail="zero functional input")]
        system = self.xi_system()
        if system.degenerate:
            return [VerifyReport("xi-system", "degenerate",
                                 detail="determinant vanishes identically")]
        b, (b1, b2, blast) = system.det, system.replaced
        qp = self.qp
        out = [
            _report("B*v = B1*u",
                    left_mult(b, self.v), left_mult(b1, self.u)),
            _report("B*D'v = B2*u",
                    left_mult(b, self.dprime(self.v)),
                    left_mult(b2, self.u)),
            _report("B*D'u = B(N+2)*u",
                    left_mult(b, self.dprime(self.u)),
                    left_mult(blast, self.u)),
        ]
        bb1 = b * b1
        lhs = self.dprime(left_mult(shift(bb1, qp), self.v))
        rhs_poly = hahn_diff(bb1, qp) * qp.q + b * b2
        out.append(_report("difference equation for v",
                           lhs, left_mult(rhs_poly, self.v)))
        lhs = self.dprime(left_mult(shift(b, qp), self.u))
        rhs_poly = hahn_diff(b, qp) * qp.q + blast
        out.append(_report("difference equation for u",
                           lhs, left_mult(rhs_poly, self.u)))
        return out

    # -- the k = 0 chain ----------------------------------------------------

    def phi_chain(self) -> list[Poly]:
        """The recursive chain big_phi(x; j), j = 0..m, for order k = 0.

        big_phi(.; j) = ( <v, Q_j^2> psi(.; j)
            - sum_{l<j} [m, l]_{1/q} L'**(m-l)(D'**l Q_j) big_phi(.; l) )
            / ( [j]_{1/q}! [m, j]_{1/q} ),
        with deg big_phi(.; 0) = M+m and deg big_phi(.; j) <= M+m+j.
        """
        cfg, inv = self.config, self.qp.inverse
        if cfg.k != 0:
            raise DomainError("the chain construction requires k = 0")
        if cfg.N == 0 and cfg.m < 1:
            raise DomainError("with N = 0 the chain requires m >= 1")
        qbar = inv.q
        chain: list[Poly] = []
        for j in range(cfg.m + 1):
            value = self.psi(j) * self.v_norms[j]
            for ell in range(j):
                factor = shift_power(
                    hahn_power(self.q[j], ell, inv), cfg.m - ell, inv)
                value = value - factor * chain[ell] * q_binom(cfg.m, ell, qbar)
            value = value / (q_factorial(j, qbar) * q_binom(cfg.m, j, qbar))
            bound = cfg.M + cfg.m + j
            if j == 0 and value.degree != bound:
                raise DegreeClaimViolated(
                    f"deg big_phi(.;0) = {value.degree}, expected {bound}")
            if value.degree > bound:
                raise DegreeClaimViolated(
                    f"deg big_phi(.;{j}) = {value.degree}, bound {bound}")
            chain.append(value)
        return chain

    def verify_phi_chain(self) -> list[VerifyReport]:
        """The three functional equations of the k = 0 chain plus the
        degree-based class bounds for both functionals."""
        cfg, qp = self.config, self.qp
        chain = self.phi_chain()
        pi_v = left_mult(cfg.pi, self.v)
        out = [
            _report("D'(big_phi_1 u) = big_phi_0 u",
                    self.dprime(left_mult(chain[1], self.u)),
                    left_mult(chain[0], self.u)),
            _report("pi v = big_phi_m u",
                    pi_v, left_mult(chain[cfg.m], self.u)),
        ]
        top = chain[cfg.m]
        lhs = self.dprime(left_mult(shift(top, qp), pi_v))
        rhs_poly = hahn_diff(top, qp) * qp.q + chain[cfg.m - 1]
        out.append(_report("chain difference equation for pi v",
                           lhs, left_mult(rhs_poly, pi_v)))

        u_witness = SemiclassicalWitness(chain[1], chain[0], "backward")
        u_bound = cfg.M + cfg.m - 1
        out.append(VerifyReport(
            "class bound for u",
            "holds" if u_witness.class_bound <= u_bound else "failed",
            detail=f"witness bound {u_witness.class_bound} <= {u_bound}"))
        v_witness = SemiclassicalWitness(
            shift(top, qp) * cfg.pi,
            (hahn_diff(top, qp) * qp.q + chain[cfg.m - 1]) * cfg.pi,
            "backward")
        v_bound = cfg.N + cfg.M + 2 * (cfg.m - 1)
        out.append(VerifyReport(
            "class bound for v",
            "holds" if v_witness.class_bound <= v_bound else "failed",
            detail=f"witness bound {v_witness.class_bound} <= {v_bound}"))
        return out

    # -- independent oracles (k = 0) ----------------------------------------

    def kzero_psi_oracle(self, n: int) -> VerifyReport:
        """Direct m-fold differencing of Q_n pi v against <v,Q_n^2> psi(.;n) u.

        Uses nothing from the psi construction except the structure table,
        so it validates the whole table/psi pipeline.
        """
        if self.config.k != 0:
            raise DomainError("oracle applies to k = 0 only")
        lhs = self.dprime(
            left_mult(self.q[n] * self.config.pi, self.v), self.config.m)
        rhs = left_mult(self.psi(n), self.u) * self.v_norms[n]
        return _report(f"direct-differencing oracle[n={n}]", lhs, rhs)

    def kzero_phi_oracle(self, n: int) -> VerifyReport:
        """(k+N)-fold differencing of pi b_n against the phi expansion,
        with b_n = Q_n v / <v, Q_n^2>; pins down the phi index convention."""
        cfg = self.config
        if cfg.k != 0:
            raise DomainError("oracle applies to k = 0 only")
        lhs = self.dprime(
            left_mult(cfg.pi * self.q[n], self.v),
            cfg.N) * (1 / self.v_norms[n])
        rhs = self._phi_side(n)
        return _report(f"phi-expansion oracle[n={n}]", lhs, rhs)
