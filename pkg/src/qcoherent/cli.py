"""Command-line surface: generate, verify, classify, emit JSON reports.

Subcommands
-----------
gen       family polynomials as a JSON array of coefficient arrays
moments   truncated moment sequence of a family's functional
verify    pearson | structure | coherence | reduction | leibniz
classify  identify a self-coherent sequence from (pi, beta_0, gamma_1)

Rationals are always written "num/den".  Output is deterministic given the
command line (seeded sampling only); exit codes are 0 on success, 1 when a
verified identity fails, 2 on usage or domain errors.  QCOHERENT_NMAX sets
the default generation depth.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction

from .algebra import Poly, rat, rat_str
from .classify import classify_self_coherent
from .coherence import CoherenceConfig, CoherencePair
from .errors import QCoherentError
from .families import (
    CLASSICAL_LABELS,
    FamilySpec,
    REDUCTION_IDENTITIES,
    check_reduction,
    classical,
    moments_from_ttrr,
    structure_coeffs,
)
from .functionals import (
    MomentFunctional,
    SemiclassicalWitness,
    functional_agree,
    functional_diff_n,
    leibniz_expansion,
    left_mult,
    pearson_check,
)
from .qcalc import QParams
from .sampling import rational, sample_case_instance, sample_poly_coeffs

_CLASSICAL_ARITY = {
    "al-salam-carlitz": 1, "big-q-laguerre": 2, "little-q-laguerre": 1,
    "l-type": 1, "big-q-jacobi": 3, "little-q-jacobi": 2, "q-bessel": 1,
    "j-type": 2,
}


def _default_n() -> int:
    return int(os.environ.get("QCOHERENT_NMAX", "8"))


def _parse_poly(text: str) -> Poly:
    return Poly.from_strings(json.loads(text))


def _qparams(args) -> QParams:
    return QParams(rat(args.q), rat(args.omega))


def _family_from_args(args, qp: QParams, n_max: int) -> FamilySpec:
    label = args.family
    supplied = [rat(v) for v in (args.a, args.b, args.c, args.d)
                if v is not None]
    if label == "L":
        if len(supplied) != 3:
            raise QCoherentError("family L takes --a --b --c")
        spec = FamilySpec("L", tuple(supplied), qp.q)
    elif label == "J":
        if len(supplied) != 4:
            raise QCoherentError("family J takes --a --b --c --d")
        spec = FamilySpec("J", tuple(supplied), qp.q)
    elif label in _CLASSICAL_ARITY:
        want = _CLASSICAL_ARITY[label]
        if len(supplied) != want:
            raise QCoherentError(f"family {label} takes {want} parameter(s)")
        spec = classical(label, tuple(supplied), qp, n_max)
    else:
        raise QCoherentError(
            f"unknown family {label!r}; use L, J or one of: "
            + ", ".join(CLASSICAL_LABELS))
    if args.scale is not None or args.offset is not None:
        scale = rat(args.scale) if args.scale is not None else Fraction(1)
        offset = rat(args.offset) if args.offset is not None else Fraction(0)
        spec = FamilySpec(spec.kind, spec.params, spec.base,
                          scale=spec.scale * scale, offset=offset,
                          label=spec.label)
    return spec


def _emit(payload) -> None:
    print(json.dumps(payload, indent=2))


def _emit_csv(header: str, rows) -> None:
    print(header)
    for row in rows:
        print(",".join(str(cell) for cell in row))


def _exit_from_reports(reports) -> int:
    return 1 if any(r.get("status") == "failed" for r in reports) else 0


def _cmd_gen(args) -> int:
    qp = _qparams(args)
    spec = _family_from_args(args, qp, args.n)
    polys = spec.polynomials(args.n)
    if args.format == "csv":
        rows = [(n, power, coeff)
                for n, poly in enumerate(polys)
                for power, coeff in enumerate(poly.to_strings())]
        _emit_csv("n,power,coefficient", rows)
    else:
        _emit([p.to_strings() for p in polys])
    return 0


def _cmd_moments(args) -> int:
    qp = _qparams(args)
    spec = _family_from_args(args, qp, max(args.order // 2 + 1, 1))
    u = moments_from_ttrr(spec.ttrr(args.order // 2 + 1), args.order)
    if args.format == "csv":
        _emit_csv("n,moment",
                  [(n, rat_str(m)) for n, m in enumerate(u.moments)])
    else:
        _emit(u.to_json())
    return 0


def _cmd_verify_pearson(args) -> int:
    qp = _qparams(args)
    spec = _family_from_args(args, qp, args.order // 2 + 1)
    u = moments_from_ttrr(spec.ttrr(args.order // 2 + 1), args.order)
    witness = SemiclassicalWitness(_parse_poly(args.phi),
                                   _parse_poly(args.psi), args.direction)
    report = pearson_check(witness, u, qp).to_json()
    report["class_bound"] = witness.class_bound
    _emit(report)
    return _exit_from_reports([report])


def _cmd_verify_structure(args) -> int:
    qp = _qparams(args)
    pi = _parse_poly(args.pi)
    depth = args.n
    spec = _family_from_args(args, qp, depth + max(args.m, args.k) + 2)
    polys = spec.polynomials(depth + max(args.m, args.k + pi.degree) + 1)
    table = structure_coeffs(polys, polys, pi, args.m, args.k, args.M, qp,
                             n_max=depth)
    payload = table.to_json()
    payload["status"] = "holds" if table.is_coherent else "failed"
    _emit(payload)
    return 0 if table.is_coherent else 1


def _case_pipeline(pair: CoherencePair, depth: int) -> list[dict]:
    reports = []
    table = pair.table
    reports.append({
        "identity": "banded structure relation",
        "status": "holds" if table.is_coherent else "failed",
        "order_checked": table.n_max,
    })
    for n in range(min(4, depth) + 1):
        reports.append(pair.verify_functional_equation(n).to_json())
    cfg = pair.config
    if cfg.m >= cfg.k + cfg.N and (cfg.N > 0 or cfg.m > cfg.k):
        reports.extend(r.to_json() for r in pair.verify_varphi_system())
    if cfg.m < cfg.k + cfg.N:
        reports.extend(r.to_json() for r in pair.verify_xi_system())
    if cfg.k == 0:
        reports.extend(r.to_json() for r in pair.verify_phi_chain())
        for n in range(min(4, depth) + 1):
            reports.append(pair.kzero_psi_oracle(n).to_json())
            if cfg.N >= 1:
                reports.append(pair.kzero_phi_oracle(n).to_json())
    return reports


def _cmd_verify_coherence(args) -> int:
    rng = random.Random(args.seed)
    qp = None
    if args.q is not None:
        qp = QParams(rat(args.q), rat(args.omega))
    instance = sample_case_instance(rng, args.case, qp, depth=args.depth)
    config = CoherenceConfig(1, 0, 0, instance.pi)
    pair = CoherencePair.self_coherent(instance.spec, config, instance.qp,
                                       order=args.order, depth=args.depth)
    reports = _case_pipeline(pair, args.depth)
    _emit({
        "case": args.case,
        "seed": args.seed,
        "q": rat_str(instance.qp.q),
        "omega": rat_str(instance.qp.omega),
        "family": instance.spec.to_json(),
        "pi": instance.pi.to_strings(),
        "reports": reports,
    })
    return _exit_from_reports(reports)


def _cmd_verify_reduction(args) -> int:
    if args.identity not in REDUCTION_IDENTITIES:
        raise QCoherentError(
            f"unknown identity {args.identity!r}; known: "
            + ", ".join(REDUCTION_IDENTITIES))
    rng = random.Random(args.seed)
    reports = []
    attempts = 0
    while len(reports) < args.points:
        attempts += 1
        if attempts > 200 * args.points:
            raise QCoherentError("could not sample admissible parameters")
        qp = QParams(_sample_q(rng), Fraction(0))
        params = {name: rational(rng, nonzero=True) for name in "abcd"}
        try:
            report = check_reduction(args.identity, params, qp, args.n)
        except QCoherentError:
            continue
        entry = report.to_json()
        entry["q"] = rat_str(qp.q)
        entry["params"] = {k: rat_str(v) for k, v in params.items()}
        reports.append(entry)
    _emit({"identity": args.identity, "seed": args.seed, "points": reports})
    return _exit_from_reports(reports)


def _sample_q(rng: random.Random) -> Fraction:
    from .sampling import sample_q

    return sample_q(rng)


def _cmd_verify_leibniz(args) -> int:
    rng = random.Random(args.seed)
    reports = []
    for trial in range(args.trials):
        qp = QParams(_sample_q(rng), rational(rng))
        f = Poly(sample_poly_coeffs(rng, 3))
        u = MomentFunctional(
            [rational(rng) for _ in range(12)])
        for order in range(args.n + 1):
            direct = functional_diff_n(left_mult(f, u), order, qp)
            status = "holds"
            failure = None
            checked = direct.order
            for variant in (1, 2):
                expansion = leibniz_expansion(f, u, order, qp, variant)
                ok, idx, checked = functional_agree(direct, expansion)
                if not ok:
                    status, failure = "failed", idx
                    break
            report = {"identity": f"leibniz[trial={trial},n={order}]",
                      "status": status, "order_checked": checked}
            if failure is not None:
                report["first_failure"] = failure
            reports.append(report)
    _emit({"seed": args.seed, "trials": args.trials, "reports": reports})
    return _exit_from_reports(reports)


def _cmd_classify(args) -> int:
    qp = _qparams(args)
    trace = classify_self_coherent(_parse_poly(args.pi), rat(args.beta0),
                                   rat(args.gamma1), qp, n_max=args.n)
    if args.format == "csv":
        beta = trace.predicted.beta
        gamma = trace.predicted.gamma
        rows = [(n, rat_str(beta[n]),
                 rat_str(gamma[n - 1]) if n >= 1 else "")
                for n in range(len(beta))]
        _emit_csv("n,beta,gamma", rows)
    else:
        _emit(trace.to_json())
    return 0


def _add_family_options(parser, require_q=True):
    parser.add_argument("--family", required=True,
                        help="L, J, or a classical label")
    for name in "abcd":
        parser.add_argument(f"--{name}", help="family parameter (num/den)")
    parser.add_argument("--q", required=require_q, help="base q (num/den)")
    parser.add_argument("--omega", default="0/1",
                        help="shift parameter w (default 0/1)")
    parser.add_argument("--scale", help="extra affine scale")
    parser.add_argument("--offset", help="affine offset")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcoherent",
        description="exact q-difference calculus on orthogonal polynomials")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate family polynomials")
    _add_family_options(gen)
    gen.add_argument("--n", type=int, default=_default_n())
    gen.add_argument("--format", choices=["json", "csv"], default="json")
    gen.set_defaults(func=_cmd_gen)

    mom = sub.add_parser("moments", help="moment sequence of a family")
    _add_family_options(mom)
    mom.add_argument("--order", type=int, default=20)
    mom.add_argument("--format", choices=["json", "csv"], default="json")
    mom.set_defaults(func=_cmd_moments)

    verify = sub.add_parser("verify", help="verify identities exactly")
    vsub = verify.add_subparsers(dest="verify_command", required=True)

    vp = vsub.add_parser("pearson", help="check D(phi u) = psi u on moments")
    _add_family_options(vp)
    vp.add_argument("--phi", required=True, help="JSON coefficient array")
    vp.add_argument("--psi", required=True, help="JSON coefficient array")
    vp.add_argument("--direction", choices=["forward", "backward"],
                    default="backward")
    vp.add_argument("--order", type=int, default=24)
    vp.set_defaults(func=_cmd_verify_pearson)

    vs = vsub.add_parser("structure",
                         help="expand pi * P_n^[m] in the Q_j^[k] basis")
    _add_family_options(vs)
    vs.add_argument("--pi", required=True, help="JSON coefficient array")
    vs.add_argument("--m", type=int, default=1)
    vs.add_argument("--k", type=int, default=0)
    vs.add_argument("--M", type=int, default=0)
    vs.add_argument("--n", type=int, default=_default_n())
    vs.set_defaults(func=_cmd_verify_structure)

    vc = vsub.add_parser("coherence",
                         help="full pipeline on a sampled self-coherent pair")
    vc.add_argument("--case", required=True,
                    choices=["I", "II", "IIIa", "IIIb", "IIIb-rzero",
                             "IIIb-bessel"])
    vc.add_argument("--seed", type=int, default=0)
    vc.add_argument("--q", help="fix q instead of sampling")
    vc.add_argument("--omega", default="0/1")
    vc.add_argument("--order", type=int, default=36)
    vc.add_argument("--depth", type=int, default=6)
    vc.set_defaults(func=_cmd_verify_coherence)

    vr = vsub.add_parser("reduction", help="verify a reduction identity")
    vr.add_argument("--identity", required=True)
    vr.add_argument("--seed", type=int, default=0)
    vr.add_argument("--points", type=int, default=10)
    vr.add_argument("--n", type=int, default=_default_n())
    vr.set_defaults(func=_cmd_verify_reduction)

    vl = vsub.add_parser("leibniz",
                         help="compare expansions of the n-fold difference")
    vl.add_argument("--seed", type=int, default=0)
    vl.add_argument("--trials", type=int, default=10)
    vl.add_argument("--n", type=int, default=4)
    vl.set_defaults(func=_cmd_verify_leibniz)

    cls = sub.add_parser("classify",
                         help="identify a self-coherent sequence")
    cls.add_argument("--pi", required=True, help="JSON coefficient array")
    cls.add_argument("--beta0", required=True)
    cls.add_argument("--gamma1", required=True)
    cls.add_argument("--q", required=True)
    cls.add_argument("--omega", default="0/1")
    cls.add_argument("--n", type=int, default=_default_n())
    cls.add_argument("--format", choices=["json", "csv"], default="json")
    cls.set_defaults(func=_cmd_classify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except QCoherentError as exc:
        _emit({"error": type(exc).__name__, "detail": str(exc)})
        return 2
    except (ValueError, json.JSONDecodeError) as exc:
        _emit({"error": type(exc).__name__, "detail": str(exc)})
        return 2


if __name__ == "__main__":
    sys.exit(main())
