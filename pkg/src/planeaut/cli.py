"""Command-line entry point: planeaut <subcommand> ..."""

from __future__ import annotations

import argparse
import json
import sys
import warnings

from . import actions as A
from . import covers as C
from . import smoothness as S
from . import specialgroups as G
from . import stabilizer as T
from . import verify as V
from .parser import ParseError, parse_assignments, parse_constant, parse_form


def _emit(args, payload: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True, default=str))
    else:
        print("\n".join(lines))


def _form(args):
    form = parse_form(args.form)
    spec = parse_assignments(args.set or [])
    if spec:
        form = form.specialize(spec)
    return form


def _refs(items) -> list:
    out = []
    for item in items or []:
        for part in item.split(","):
            if part.strip():
                out.append(next(iter(parse_form(part).terms)))
    return out


def _scaled(c, name: str) -> str:
    t = c.to_text()
    if t in ("1", "-1"):
        return t[:-1] + name
    return f"({t})*{name}" if " " in t else f"{t}*{name}"


# ---------------------------------------------------------------------------


def cmd_normal_form(args) -> int:
    act = A.DiagAction.parse(args.type)
    nf = A.normal_form(args.degree, act, _refs(args.ref), weight_class=args.weight_class)
    data = nf.to_json()
    lines = [
        f"type {act}  degree {args.degree}  class {nf.weight_class}",
        f"F = {nf.base.to_text()}",
        f"parameters: {', '.join(nf.parameter_names) or 'none'}",
    ]
    if args.identifications and nf.reference:
        fam = A.family_identifications(nf)
        data["identifications"] = fam.to_json()
        lines.append(f"identifications: order {fam.order} (normalizer order {fam.normalizer_order})")
        for t in fam.transformations:
            lines.append("  " + ", ".join(f"{p} -> {_scaled(s, p)}" for p, s in zip(fam.parameters, t)))
    _emit(args, data, lines)
    return 0


def cmd_stabilizer(args) -> int:
    form = _form(args)
    rep = T.aut_lower_bound(form) if args.blocks else (
        T.monomial_stabilizer(form) if form.is_specialized() else T.diagonal_stabilizer(form)
    )
    lines = [
        f"F = {form.to_text()}",
        f"diagonal order: {rep.diagonal_order} invariants {list(rep.diagonal_invariants)}",
        f"total order: {rep.total_order} ({rep.completeness})",
    ]
    for g in rep.diagonal_generators:
        lines.append(f"  generator {g.to_text()}")
    for k, c in sorted(rep.blocks.items()):
        lines.append(f"block {k}: {c.verdict} ({c.branches} branches)")
    if rep.assumed_nonzero:
        lines.append(f"assumed nonzero: {', '.join(rep.assumed_nonzero)}")
    lines += [f"note: {n}" for n in rep.notes]
    _emit(args, rep.to_json(), lines)
    return 0


def cmd_smooth_check(args) -> int:
    form = _form(args)
    results = {}
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", S.ThresholdViolation)
        if args.mode in ("exact", "both"):
            results["exact"] = S.is_smooth(form)
        if args.mode in ("ff", "both"):
            p = args.prime or S.minimal_valid_prime(form.degree, S.orders_of(form))
            results["finite_field"] = S.finite_field_check(form, p=p)
    payload = {k: v.to_json() for k, v in results.items()}
    lines = [f"F = {form.to_text()}"]
    for k, v in results.items():
        extra = f" at p = {v.prime}, {v.point_count} points" if v.prime else ""
        lines.append(f"{k}: {v.verdict}{extra}")
        if v.point is not None:
            lines.append(f"  singular point: {v.point}")
        lines += [f"  {d}" for d in v.details]
    for w in caught:
        lines.append(f"warning: {w.message}")
    verdicts = {v.verdict for v in results.values()}
    if len(verdicts) > 1:
        payload["agreement"] = False
        lines.append("warning: exact and finite-field verdicts disagree (bad reduction?)")
    _emit(args, payload, lines)
    return 0


def cmd_ramification(args) -> int:
    form = _form(args)
    act = A.DiagAction.parse(args.type)
    prof = C.ramification_profile(form, act)
    lines = [
        f"type {act} on a curve of genus {prof.g}",
        "profile: " + ", ".join(f"{c} point(s) of index {e}" for e, c in prof.entries),
        f"quotient genus g0 = {prof.g0}",
    ]
    lines += [f"  {s}: index {e}, {c} point(s)" for s, e, c in prof.sources]
    _emit(args, {"profile": prof.to_json(), "fixed_data": C.fixed_data(act)}, lines)
    return 0


def cmd_hessian(args) -> int:
    grp = G.hessian_group(args.subgroup)
    data = grp.to_json()
    eo = grp.element_orders()
    lines = [
        f"order {grp.order} from {', '.join(grp.generators)}",
        "element orders: " + ", ".join(f"{k}:{v}" for k, v in sorted(eo.items())),
    ]
    if args.subgroup != 216:
        big = G.hessian_group(216 if args.subgroup == 72 else 72)
        normal = grp.is_normal_in(big)
        data["normal_in"] = {str(big.order): normal}
        lines.append(f"normal in the order-{big.order} group: {normal}")
    _emit(args, data, lines)
    return 0


def cmd_gamma(args) -> int:
    b = [parse_constant(x) for x in (args.b1, args.b2, args.b3)]
    rows = {}
    lines = [f"(b1, b2, b3) = ({', '.join(x.to_text() for x in b)})"]
    for lam in G.lambda_choices():
        u = G.upsilon(*b, lam)
        member = G.in_gamma(*b, lam)
        rows[lam.to_text()] = {"upsilon": [x.to_text() for x in u], "in_gamma": member}
        lines.append(f"lambda = {lam.to_text()}: Upsilon = ({', '.join(x.to_text() for x in u)}), in Gamma: {member}")
    rep = G.gamma_report()
    if rep["linear_conditions_identical"]:
        lines.append("warning: " + V.WARNINGS["gamma-identity"])
    _emit(args, {"per_lambda": rows, "structure": rep}, lines)
    return 0


def cmd_types_conjugate(args) -> int:
    t1, t2 = (A.DiagAction.parse(t) for t in args.types)
    res = A.types_conjugate(t1, t2)
    lines = [f"{t1} ~ {t2}: {res.conjugate}"]
    if res.permutation is not None:
        lines.append(f"  permutation {list(res.permutation)}, power {res.power}")
    if res.invariant:
        lines.append(f"  {res.invariant}")
    _emit(args, res.to_json(), lines)
    return 0


def cmd_verify_paper(args) -> int:
    report = V.verify_paper(args.scope)
    if args.json:
        print(V.dumps(report))
    else:
        for it in report["items"]:
            print(f"{it['status']:4}  {it['id']}")
            if it["status"] != "PASS":
                print(f"      expected: {json.dumps(it['expected'], sort_keys=True, default=str)}")
                print(f"      computed: {json.dumps(it['computed'], sort_keys=True, default=str)}")
                for n in it["notes"]:
                    print(f"      note: {n}")
        c = report["counts"]
        print(f"{c['PASS']} passed, {c['WARN']} warned, {c['FAIL']} failed")
    return 0 if report["ok"] else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON")
    curve = argparse.ArgumentParser(add_help=False)
    curve.add_argument("form", help='ternary form, e.g. "X^5 + Y^4*Z + X*Z^4 + b*X^3*Z^2"')
    curve.add_argument("--set", action="append", metavar="NAME=VALUE", help="assign parameters (repeatable)")

    p = argparse.ArgumentParser(prog="planeaut", description="Automorphisms of smooth plane curves.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("normal-form", parents=[common], help="invariant family of a cyclic type")
    s.add_argument("--degree", type=int, required=True)
    s.add_argument("--type", required=True, metavar="m,a,b")
    s.add_argument("--ref", action="append", help="reference monomials (comma separated, repeatable)")
    s.add_argument("--class", dest="weight_class", type=int, help="weight class when no reference is given")
    s.add_argument("--identifications", action="store_true", help="also list parameter identifications")
    s.set_defaults(func=cmd_normal_form)

    s = sub.add_parser("stabilizer", parents=[common, curve], help="diagonal, monomial and block automorphisms")
    s.add_argument("--no-blocks", dest="blocks", action="store_false", help="skip the block eliminations")
    s.set_defaults(func=cmd_stabilizer)

    s = sub.add_parser("smooth-check", parents=[common, curve], help="exact and finite-field smoothness")
    s.add_argument("--mode", choices=("exact", "ff", "both"), default="exact")
    s.add_argument("--prime", type=int, help="prime for the finite-field scan")
    s.set_defaults(func=cmd_smooth_check)

    s = sub.add_parser("ramification", parents=[common, curve], help="fixed points and quotient genus")
    s.add_argument("--type", required=True, metavar="m,a,b")
    s.set_defaults(func=cmd_ramification)

    s = sub.add_parser("hessian", parents=[common], help="Hessian group closures")
    s.add_argument("--subgroup", type=int, choices=(36, 72, 216), default=216)
    s.set_defaults(func=cmd_hessian)

    s = sub.add_parser("gamma", parents=[common], help="evaluate the Upsilon conditions")
    s.add_argument("--b1", required=True)
    s.add_argument("--b2", required=True)
    s.add_argument("--b3", required=True)
    s.set_defaults(func=cmd_gamma)

    s = sub.add_parser("types-conjugate", parents=[common], help="compare two cyclic types")
    s.add_argument("types", nargs=2, metavar="m,a,b")
    s.set_defaults(func=cmd_types_conjugate)

    s = sub.add_parser("verify-paper", parents=[common], help="regression against the stored tables")
    s.add_argument("--scope", choices=("all",) + V.SCOPES, default="all")
    s.set_defaults(func=cmd_verify_paper)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError, AssertionError, RuntimeError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
