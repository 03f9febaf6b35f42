import random
from fractions import Fraction

import pytest

from qcoherent.algebra import Poly
from qcoherent.classify import (
    case_i_instance,
    case_ii_instance,
    case_iiia_instance,
    case_iiib_bessel_instance,
    case_iiib_instance,
    classify_self_coherent,
    pearson_ttrr,
)
from qcoherent.errors import DegenerateInput, DomainError, RegularityViolation
from qcoherent.families import l_coeffs
from qcoherent.qcalc import QParams
from qcoherent.sampling import sample_case_instance, sample_qparams

F = Fraction

QP = QParams(F(1, 2), F(1))
QP0 = QParams(F(1, 2), F(0))


def test_pearson_engine_case_zero_pivot_closed_forms():
    # phi = 1, psi = -(q/gamma_1)(x - beta_0) reproduces the c = 0 family
    q = QP0.q
    a, b = F(2), F(3)
    gamma1 = a * b * (q - 1)
    beta0 = a + b  # omega0 = 0
    psi = Poly([q * beta0 / gamma1, -q / gamma1])
    result = pearson_ttrr(Poly.one(), psi, QP0, 10)
    expected = l_coeffs(a, b, F(0), q, 10)
    assert result.coeffs.agrees_with(expected, 10)
    for n in range(11):
        assert result.coeffs.beta_at(n) == 5 * q**n
    for n in range(10):
        assert result.coeffs.gamma_at(n + 1) == -6 * (1 - q ** (n + 1)) * q**n


def test_pearson_engine_shifted_family():
    # same data conjugated by omega0 = 2
    inst = case_i_instance(QP, 2, 3)
    ttrr = inst.spec.ttrr(10)
    beta0, gamma1 = ttrr.beta_at(0), ttrr.gamma_at(1)
    psi = Poly([QP.q * beta0 / gamma1, -QP.q / gamma1])
    result = pearson_ttrr(Poly.one(), psi, QP, 10)
    assert result.coeffs.agrees_with(ttrr, 10)


def test_pearson_engine_constant_d_collapse():
    # a2 = 0, b1 != 0: d_n = b1 q^-n never vanishes
    result = pearson_ttrr(Poly([F(1), F(2)]), Poly([F(1), F(3)]), QP, 6)
    q = QP.q
    assert all(result.d[n] == 3 * q**-n for n in range(len(result.d)))


def test_pearson_engine_validation():
    with pytest.raises(DomainError):
        pearson_ttrr(Poly([1, 0, 0, 1]), Poly([0, 1]), QP, 4)
    with pytest.raises(DomainError):
        pearson_ttrr(Poly.one(), Poly([1]), QP, 4)
    # d_1 = 2 b1 + a2 = 0 at q = 1/2 (phi = 2x^2, psi = 1 - x)
    with pytest.raises(RegularityViolation):
        pearson_ttrr(Poly([0, 0, 2]), Poly([1, -1]), QP, 4)


def test_classify_worked_example():
    trace = classify_self_coherent(Poly.one(), F(5), F(-3), QP0, n_max=10)
    assert trace.case_label == "I"
    assert trace.roots in ((F(2), F(3)), (F(3), F(2)))
    assert trace.family is not None
    assert sorted(trace.family.params[:2]) == [F(2), F(3)]
    assert trace.family.params[2] == 0
    expected = l_coeffs(F(2), F(3), F(0), QP0.q, 10)
    assert trace.predicted.agrees_with(expected, 10)


def test_classify_rejects_degenerate_case_ii_pivot():
    inst = case_ii_instance(QP, 2, 3, F(1, 5))
    ttrr = inst.spec.ttrr(2)
    beta0, gamma1 = ttrr.beta_at(0), ttrr.gamma_at(1)
    bad_pi = Poly([-beta0, F(1)])  # c = omega0 - beta0 forces degeneracy
    with pytest.raises(DegenerateInput):
        classify_self_coherent(bad_pi, beta0, gamma1, QP)


def test_classify_rejects_zero_gamma():
    with pytest.raises(DegenerateInput):
        classify_self_coherent(Poly.one(), F(1), F(0), QP)


def test_classify_irrational_roots_fall_back_to_implicit():
    # beta0, gamma1 chosen so the root pair has discriminant 2
    q = QP0.q
    sum_ab, prod_ab = F(2), F(1, 2)  # z^2 - 2z + 1/2: discriminant 2
    beta0 = sum_ab
    gamma1 = prod_ab * (q - 1)
    trace = classify_self_coherent(Poly.one(), beta0, gamma1, QP0, n_max=8)
    assert trace.implicit and trace.family is None
    assert "NonRationalRoot" in trace.note
    # the predicted recurrence is still exact
    for n in range(9):
        assert trace.predicted.beta_at(n) == sum_ab * q**n
    for n in range(8):
        assert trace.predicted.gamma_at(n + 1) == (
            -prod_ab * (1 - q ** (n + 1)) * q**n)


def test_classify_bessel_branch():
    inst = case_iiib_bessel_instance(QP, F(2), F(1, 3))
    trace = classify_self_coherent(*inst.structure_data(10), QP, n_max=10)
    assert trace.case_label == "IIIb" and trace.branch == "bessel"
    assert trace.family.params == (0, 0, F(2), F(1, 3))
    assert trace.lam == 0
    assert inst.spec.polynomials(10) == trace.family.polynomials(10)


def test_classify_bessel_degenerate_when_both_roots_vanish():
    # pivot (x - w0)^2 with lambda = 0 cannot support a regular sequence:
    # build the data directly rather than from a family
    pi = Poly([QP.omega0**2, -2 * QP.omega0, F(1)])
    # alpha chosen away from the constant-d branch with lambda = 0:
    # lambda = -beta(1-q) = alpha(beta0-omega0)(1-q) = 0 -> beta0 = omega0
    beta0 = QP.omega0
    # any gamma1 with gamma1 + pi(beta0) != 0 and alpha != q/(q-1)
    with pytest.raises(DegenerateInput):
        classify_self_coherent(pi, beta0, F(1), QP, n_max=6)


@pytest.mark.parametrize("label", ["I", "II", "IIIa", "IIIb",
                                   "IIIb-rzero", "IIIb-bessel"])
def test_round_trip_seeded(label):
    rng = random.Random(f"round-trip-{label}")
    hits = 0
    while hits < 6:
        qp = sample_qparams(rng)
        try:
            inst = sample_case_instance(rng, label, qp, depth=6)
        except Exception:
            continue
        pi, beta0, gamma1 = inst.structure_data(10)
        trace = classify_self_coherent(pi, beta0, gamma1, qp, n_max=10)
        assert trace.predicted.agrees_with(inst.spec.ttrr(10), 10)
        assert not trace.implicit
        assert trace.family.polynomials(10) == inst.spec.polynomials(10)
        if label.startswith("IIIb"):
            assert trace.case_label == "IIIb"
            expected_branch = {"IIIb": "general", "IIIb-rzero": "r-zero",
                               "IIIb-bessel": "bessel"}[label]
            assert trace.branch == expected_branch
        else:
            assert trace.case_label == label
        hits += 1


def test_case_instance_guards():
    with pytest.raises(DegenerateInput):
        case_i_instance(QP, 0, 3)
    with pytest.raises(DegenerateInput):
        case_ii_instance(QP, 1, 1, 0)
    with pytest.raises(DegenerateInput):
        case_iiib_instance(QP, 1, 1, 1, 0)
    with pytest.raises(DegenerateInput):
        case_iiib_bessel_instance(QP, 0, F(1, 3))


def test_classification_trace_serialization():
    inst = case_iiia_instance(QP, F(1, 3), F(-2), F(1, 4))
    trace = classify_self_coherent(*inst.structure_data(8), QP, n_max=8)
    data = trace.to_json()
    assert data["case"] == "IIIa"
    assert data["implicit"] is False
    assert data["family"] == "L"
    assert data["base"] == "2/1"
    assert data["shift"] == {"scale": "1/1", "offset": "2/1"}
    assert len(data["predicted_ttrr"]["beta"]) == 9
    assert data["pearson"]["phi"] == inst.pi.to_strings()


def test_classify_case_ii_implicit_fallback():
    # alpha = 1, beta = 1, c = 2 at q = 1/2 gives root discriminant -1:
    # no explicit family, but the recurrence prediction stays exact
    qp = QP
    q, w0 = qp.q, qp.omega0
    alpha, beta, c = F(1), F(1), F(2)
    beta0 = w0 - beta / alpha
    gamma1 = q * (beta - alpha * c) / alpha**2
    pi = Poly([c - w0, F(1)])
    trace = classify_self_coherent(pi, beta0, gamma1, qp, n_max=8)
    assert trace.case_label == "II" and trace.implicit
    assert "NonRationalRoot" in trace.note
    assert trace.sum_roots == q + beta * (1 - q)
    assert trace.prod_roots == alpha * c * q * (1 - q)
    engine = pearson_ttrr(pi, Poly([beta - alpha * w0, alpha]), qp, 8)
    assert trace.predicted.agrees_with(engine.coeffs, 8)


def test_classify_case_iiia_implicit_fallback():
    # symmetric pivot data with irrational roots: sum 1, product -1/4
    from qcoherent.families import l_coeffs_symmetric

    qp = QP
    q, w0 = qp.q, qp.omega0
    sum_rs, prod_rs, c = F(1), F(-1, 4), F(1, 5)
    base = 1 / q
    ttrr = l_coeffs_symmetric(sum_rs, prod_rs, c, base, 8).shifted(F(1), w0)
    x = Poly.x()
    pi = (x - w0) * (x - w0) - sum_rs * (x - w0) + prod_rs
    trace = classify_self_coherent(pi, ttrr.beta_at(0), ttrr.gamma_at(1),
                                   qp, n_max=8)
    assert trace.case_label == "IIIa" and trace.implicit
    assert trace.predicted.agrees_with(ttrr, 8)


def test_classify_case_iiib_implicit_fallback():
    # rational pivot roots but an irrational family-root discriminant
    from qcoherent.classify import _case_iiib_ttrr

    qp = QP
    q, w0 = qp.q, qp.omega0
    lam, mu, sum_rs, prod_rs = F(1), F(1, 3), F(1), F(1, 4)
    assert lam * lam - 4 * prod_rs * mu == F(2, 3)  # not a square
    ttrr = _case_iiib_ttrr(lam, mu, sum_rs, prod_rs, w0, q, 8)
    x = Poly.x()
    pi = (x - w0) * (x - w0) - sum_rs * (x - w0) + prod_rs
    trace = classify_self_coherent(pi, ttrr.beta_at(0), ttrr.gamma_at(1),
                                   qp, n_max=8)
    assert trace.case_label == "IIIb" and trace.branch == "general"
    assert trace.implicit and trace.family is None
    assert trace.lam == lam and trace.mu == mu
    assert trace.delta == F(2, 3)
    assert trace.predicted.agrees_with(ttrr, 8)
