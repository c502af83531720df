"""Regression driver: recompute the reference tables and theorem data against fixtures."""

from __future__ import annotations

import json
from importlib import resources

from . import actions as A
from . import covers as C
from . import smoothness as S
from . import specialgroups as G
from . import stabilizer as T
from .cyclotomic import CycNum
from .forms import Monomial, ProjMatrix
from .parser import parse_assignments, parse_form

SCHEMA = 1
SCOPES = ("table5", "table6", "theorems", "ramification", "hessian", "charp")

WARNINGS = {
    "index-2-vs-4": (
        "the four points [1:0:h] of the Z/8 family are described both with index 2 and with index 4; "
        "their stabilizer in the order-8 group has order 4, which is what is reported"
    ),
    "lambda-choice": (
        "Gamma depends on a cube root lambda of omega that is not pinned down; "
        "all three choices are evaluated and reported separately"
    ),
    "gamma-identity": (
        "for every admissible lambda the conditions Upsilon_2 = Upsilon_3 = omega^2 Upsilon_4 hold identically, "
        "so Gamma is the surface Upsilon_1 = 1 and its first projection is all of K*; "
        "(1, 1, zeta(6)) is an exact member, so the exclusion of alpha_3 in Gamma_1 is empty as written"
    ),
}


def load_fixtures() -> dict:
    with resources.files("planeaut").joinpath("data/fixtures.json").open() as fh:
        return json.load(fh)


def _monos(texts) -> list[Monomial]:
    return [next(iter(parse_form(t).terms)) for t in texts]


def _mtext(monos) -> list[str]:
    return sorted(m.to_text() for m in monos)


def _curve(fx: dict):
    form = parse_form(fx["form"])
    spec = parse_assignments([f"{k}={v}" for k, v in sorted(fx.get("set", {}).items())])
    return form, spec


def _item(item_id, scope, expected, computed, ok, notes=(), warn=False) -> dict:
    status = "FAIL" if not ok else ("WARN" if warn else "PASS")
    return {
        "id": item_id,
        "scope": scope,
        "status": status,
        "expected": expected,
        "computed": computed,
        "notes": list(notes),
    }


def _guard(item_id, scope, fn) -> list[dict]:
    try:
        out = fn()
    except Exception as exc:  # a crash is a failed item, not a crashed report
        return [_item(item_id, scope, None, f"{type(exc).__name__}: {exc}", False)]
    return out if isinstance(out, list) else [out]


# ---------------------------------------------------------------------------


def _table_row(fx: dict, d: int, scope: str) -> list[dict]:
    act = A.DiagAction.parse(fx["type"])
    ref = _monos(fx["reference"])
    w = A.weight(ref[0], act) if ref else fx["weight_class"]
    support = A.invariant_monomials(d, act, w)
    exp_support = _monos(fx["support"])
    computed = {"support": _mtext(support), "weight_class": w}
    expected = {"support": _mtext(exp_support)}
    ok = set(support) == set(exp_support) and len(support) == len(exp_support)
    names = sorted(A.parameter_name(m, d) for m in support if m not in set(ref))
    if "parameters" in fx:
        expected["parameters"] = sorted(fx["parameters"])
        computed["parameters"] = names
        ok = ok and names == sorted(fx["parameters"])
    else:
        expected["parameter_count"] = fx["parameter_count"]
        computed["parameter_count"] = len(names)
        ok = ok and len(names) == fx["parameter_count"]
    expected["error"] = fx.get("error")
    try:
        nf = A.normal_form(d, act, ref, weight_class=None if ref else w)
        computed["error"] = None
        ok = ok and fx.get("error") is None and sorted(nf.parameter_names) == names
    except (A.ForcedFactor, A.DegenerateClass) as exc:
        computed["error"] = type(exc).__name__
        ok = ok and fx.get("error") == type(exc).__name__
    return [_item(fx["id"], scope, expected, computed, ok, [f"type {act}"])]


def check_table5(fixtures: dict) -> list[dict]:
    out = []
    for fx in fixtures["table5"]:
        out += _guard(fx["id"], "table5", lambda fx=fx: _table_row(fx, 5, "table5"))
    return out


def check_table6(fixtures: dict) -> list[dict]:
    out = []
    for fx in fixtures["table6"]:
        out += _guard(fx["id"], "table6", lambda fx=fx: _table_row(fx, 6, "table6"))
    return out


# ---------------------------------------------------------------------------


def _theorem_curve(fx: dict) -> dict:
    form, spec = _curve(fx)
    act = A.DiagAction.parse(fx["type"])
    T.verify_automorphism(form, act.matrix())
    rep = T.aut_lower_bound(form.specialize(spec))
    certified = sorted(k for k, c in rep.blocks.items() if c.certified)
    computed = {
        "diagonal_order": rep.diagonal_order,
        "certified_shapes": certified,
        "completeness": rep.completeness,
    }
    expected = {"diagonal_order": fx["diagonal_order"], "certified_shapes": sorted(fx["certified_shapes"])}
    ok = rep.diagonal_order == fx["diagonal_order"] and certified == expected["certified_shapes"]
    return _item(fx["id"], "theorems", expected, computed, ok, [f"generator of type {act} verified"])


def _reference_order(fx: dict) -> dict:
    form, order = G.reference_curve(fx["kind"], fx["degree"])
    rep = T.monomial_stabilizer(form)
    computed = {"monomial_order": rep.total_order, "formula": order}
    expected = {"monomial_order": fx["monomial_order"]}
    ok = rep.total_order == fx["monomial_order"] == order
    if "diagonal_order" in fx:
        expected["diagonal_order"] = fx["diagonal_order"]
        computed["diagonal_order"] = rep.diagonal_order
        ok = ok and rep.diagonal_order == fx["diagonal_order"]
    if "block_certified" in fx:
        blocks = {k: T.block_reduce(form, k).certified for k in T.SHAPES}
        expected["block_certified"] = fx["block_certified"]
        computed["block_certified"] = all(blocks.values())
        ok = ok and all(blocks.values()) == fx["block_certified"]
    return _item(fx["id"], "theorems", expected, computed, ok)


def _conjugacy(fx: dict) -> dict:
    t1, t2 = (A.DiagAction.parse(t) for t in fx["types"])
    res = A.types_conjugate(t1, t2)
    notes = [res.invariant] if res.invariant else []
    return _item(fx["id"], "theorems", {"conjugate": fx["conjugate"]}, res.to_json(), res.conjugate == fx["conjugate"], notes)


def _identification(fx: dict) -> dict:
    act = A.DiagAction.parse(fx["type"])
    nf = A.normal_form(5, act, _monos(fx["reference"]))
    fam = A.family_identifications(nf)
    scalings = sorted(s[0].to_text() for s in fam.transformations if s)
    computed = {"order": fam.order, "scalings": scalings, "parameters": list(fam.parameters), "group": fam.is_group()}
    expected = {"order": fx["order"], "scalings": sorted(fx["scalings"])}
    ok = fam.order == fx["order"] and scalings == expected["scalings"] and fam.is_group()
    return _item(fx["id"], "theorems", expected, computed, ok)


def _swap_check() -> dict:
    core = parse_form("X^5 + Y^5 + Z^5")
    full = parse_form("X^5 + Y^5 + Z^5 + X^2*Y*Z^2 + X*Y^3*Z")
    core_order = T.monomial_stabilizer(core).total_order
    full_order = T.monomial_stabilizer(full).total_order
    swap = T.verify_automorphism(full, ProjMatrix([[0, 0, 1], [0, 1, 0], [1, 0, 0]]))
    computed = {"core_order": core_order, "specialized_order": full_order, "swap_factor": swap.to_text()}
    ok = core_order > 5 and full_order > 5
    return _item(
        "degeneracy-5-12",
        "theorems",
        {"core_order": "> 5", "specialized_order": "> 5"},
        computed,
        ok,
        ["the X <-> Z swap preserves the 5,(1,2) family, so its generic group is larger than Z/5"],
    )


def _descendants() -> list[dict]:
    k6 = parse_form("X^5*Y + Y^5*Z + Z^5*X + X^2*Y*Z^3")
    rk = G.descendant_check(k6)
    c1 = parse_form("X^5 + Y^5 + Z^4*X + X^3*Y^2")
    rc = G.descendant_check(c1, candidate_order=4)
    gens = G.klein6_generators()
    klein6 = G.klein(6)
    lams = [T.verify_automorphism(klein6, E).to_text() for E in gens]
    return [
        _item("descendant-K6", "theorems", {"klein_core": True}, {"klein_core": rk["klein_core"], "core": rk["core"]}, rk["klein_core"]),
        _item(
            "descendant-C1",
            "theorems",
            {"divides_fermat": False, "divides_klein": False},
            {k: rc[k] for k in ("divides_fermat", "divides_klein", "fermat_order", "klein_order")},
            not rc["divides_fermat"] and not rc["divides_klein"],
        ),
        _item("klein6-generators", "theorems", {"verified": 2}, {"verified": len(lams), "factors": lams}, len(lams) == 2),
    ]


def _gamma() -> list[dict]:
    lam = G.lambda_choices()[0]
    u = G.upsilon(CycNum.rational(0), CycNum.rational(1), CycNum.rational(1), lam)
    z = G.upsilon(CycNum.rational(7), CycNum.rational(0), CycNum.rational(0), lam)
    rep = G.gamma_report()
    items = [
        _item("gamma-upsilon1", "theorems", {"Upsilon_1(0,1,1)": "3"}, {"Upsilon_1(0,1,1)": u[0].to_text()}, u[0] == 3),
        _item(
            "gamma-zero",
            "theorems",
            {"Upsilon_1(b,0,0)": "0", "in_gamma": False},
            {"Upsilon_1(b,0,0)": z[0].to_text(), "in_gamma": G.gamma_membership(7, 0, 0)["any"]},
            z[0] == 0 and not G.gamma_membership(7, 0, 0)["any"],
        ),
        _item(
            "gamma-lambda",
            "theorems",
            {"choices": 3},
            {"choices": [x.to_text() for x in G.lambda_choices()], "cubes": sorted({(x**3).to_text() for x in G.lambda_choices()})},
            all(x**3 == G.omega() for x in G.lambda_choices()),
            [WARNINGS["lambda-choice"]],
            warn=True,
        ),
    ]
    structure = {
        "ranks": {k: v["rank"] for k, v in sorted(rep["per_lambda"].items())},
        "exact_witness": rep["exact_witness"],
    }
    items.append(
        _item(
            "gamma-structure",
            "theorems",
            {"Gamma_1": "finite subset of K*"},
            structure,
            True,
            [WARNINGS["gamma-identity"]],
            warn=rep["gamma1_is_all_of_K_star"],
        )
    )
    return items


def check_theorems(fixtures: dict) -> list[dict]:
    out = []
    for fx in fixtures["theorem_curves"]:
        out += _guard(fx["id"], "theorems", lambda fx=fx: _theorem_curve(fx))
    for fx in fixtures["reference_orders"]:
        out += _guard(fx["id"], "theorems", lambda fx=fx: _reference_order(fx))
    for fx in fixtures["nonconjugate_pairs"]:
        out += _guard(fx["id"], "theorems", lambda fx=fx: _conjugacy(fx))
    for fx in fixtures["identifications"]:
        out += _guard(fx["id"], "theorems", lambda fx=fx: _identification(fx))
    out += _guard("degeneracy-5-12", "theorems", _swap_check)
    out += _guard("descendants", "theorems", _descendants)
    out += _guard("gamma", "theorems", _gamma)
    return out


# ---------------------------------------------------------------------------


def _profile(fx: dict) -> dict:
    form, spec = _curve(fx)
    act = A.DiagAction.parse(fx["type"])
    prof = C.ramification_profile(form, act, spec)
    computed = {"entries": [list(e) for e in prof.entries], "g0": prof.g0, "g": prof.g}
    expected = {"entries": fx["entries"], "g0": fx["g0"]}
    ok = computed["entries"] == fx["entries"] and prof.g0 == fx["g0"]
    warn = fx.get("warn")
    return _item(fx["id"], "ramification", expected, computed, ok, [WARNINGS[warn]] if warn else [], warn=bool(warn))


def check_ramification(fixtures: dict) -> list[dict]:
    out = []
    for fx in fixtures["ramification"]:
        out += _guard(fx["id"], "ramification", lambda fx=fx: _profile(fx))
    return out


# ---------------------------------------------------------------------------


def check_hessian(fixtures: dict) -> list[dict]:
    fx = fixtures["hessian"]
    groups = {}

    def orders():
        items = []
        for key, want in sorted(fx["orders"].items(), key=lambda kv: int(kv[0])):
            grp = G.hessian_group(int(key))
            groups[key] = grp
            items.append(_item(f"hessian-order-{int(key):03d}", "hessian", want, grp.order, grp.order == want))
        return items

    def normality():
        items = []
        for small, big in fx["normal_pairs"]:
            res = groups[small].is_normal_in(groups[big])
            items.append(_item(f"hessian-normal-{small}-{big}", "hessian", True, res, res))
        return items

    def element_orders():
        eo = groups["216"].element_orders()
        got = {str(k): v for k, v in sorted(eo.items())}
        ok = set(eo) <= set(fx["allowed_element_orders"]) and 5 not in eo
        return _item("hessian-element-orders", "hessian", {"subset_of": fx["allowed_element_orders"]}, got, ok)

    def five():
        named = G.quintic_exclusion_elements()
        elems = [named[k] for k in fx["five_elements"]]
        d = fx["five_elements_degree"]
        spaces = G.invariant_forms(elems, d)
        forms = [f for sp in spaces for f in sp.basis]
        passing = [f.to_text() for f in forms if S.core_necessary(f)]
        perm_only = G.invariant_forms(elems[:4], d)
        notes = [
            f"joint invariant space has {len(forms)} basis forms",
            f"the four permutations alone admit {sum(len(s.basis) for s in perm_only)} basis forms",
        ]
        return _item("hessian-quintic-exclusion", "hessian", {"passing_core_necessary": []}, {"passing_core_necessary": passing}, not passing, notes)

    def single():
        w = G.omega()
        d = fx["single_diagonal_degree"]
        spaces = G.invariant_forms([ProjMatrix.diag(1, w, w * w)], d)
        act = A.DiagAction(3, 1, 2)
        oracle = set(A.invariant_monomials(d, act, 0))
        trivial = [sp for sp in spaces if all(c == 1 for c in sp.characters)]
        got = set()
        for sp in trivial:
            for f in sp.basis:
                got |= set(f.terms)
        fermat = set(G.fermat(d).terms)
        ok = got == oracle and len(got) == fx["single_diagonal_class_size"] and fermat <= got
        return _item(
            "hessian-single-diagonal",
            "hessian",
            {"monomials": fx["single_diagonal_class_size"]},
            {"monomials": len(got), "contains_fermat": fermat <= got},
            ok,
        )

    out = _guard("hessian-orders", "hessian", orders)
    if len(groups) == len(fx["orders"]):
        out += _guard("hessian-normality", "hessian", normality)
        out += _guard("hessian-element-orders", "hessian", element_orders)
    out += _guard("hessian-quintic-exclusion", "hessian", five)
    out += _guard("hessian-single-diagonal", "hessian", single)
    return out


# ---------------------------------------------------------------------------


def _ff_curve(fx: dict) -> dict:
    form, spec = _curve(fx)
    form = form.specialize(spec)
    p = fx["ff_prime"]
    exact = S.is_smooth(form).verdict
    cert = S.finite_field_check(form, p=p, theory_valid=True)
    count = S.ff_diagonal_automorphisms(form, p)
    computed = {"exact": exact, "finite_field": cert.verdict, "diagonal_count": count, "points": cert.point_count}
    expected = {"exact": "smooth", "finite_field": "smooth", "diagonal_count": fx["ff_diagonal"]}
    ok = exact == cert.verdict == "smooth" and count == fx["ff_diagonal"]
    return _item(f"ff-{fx['id']}", "charp", expected, computed, ok, [f"p = {p}"])


def _family(fx: dict) -> dict:
    form = parse_form(fx["form"])
    name = fx["parameter"]
    verdicts = {}
    disagreements = []
    for v in fx["values"]:
        spec = {name: CycNum.rational(v)}
        exact = S.is_smooth(form, spec).verdict
        verdicts[str(v)] = exact
        for p in fx["primes"]:
            ff = S.finite_field_check(form, spec, p=p, theory_valid=True).verdict
            if ff != exact:
                disagreements.append(f"{name}={v} p={p}: exact {exact}, finite field {ff}")
    singular = sorted(int(k) for k, v in verdicts.items() if v == "singular")
    computed = {"singular": singular, "verdicts": verdicts, "disagreements": disagreements}
    ok = singular == sorted(fx["singular"]) and not disagreements
    return _item(fx["id"], "charp", {"singular": sorted(fx["singular"]), "disagreements": []}, computed, ok)


def _fermat(degrees) -> list[dict]:
    items = []
    for d in degrees:
        form = G.fermat(d)
        p = S.minimal_valid_prime(d)
        exact = S.is_smooth(form).verdict
        ff = S.finite_field_check(form, p=p, theory_valid=True).verdict
        items.append(
            _item(f"fermat-{d}", "charp", {"exact": "smooth", "finite_field": "smooth"}, {"exact": exact, "finite_field": ff, "prime": p}, exact == ff == "smooth")
        )
    return items


def check_charp(fixtures: dict) -> list[dict]:
    fx = fixtures["charp"]
    out = []
    for row in fx["minimal_primes"]:
        def prime(row=row):
            got = S.minimal_valid_prime(row["degree"], row["orders"])
            return _item(row["id"], "charp", row["prime"], got, got == row["prime"])

        out += _guard(row["id"], "charp", prime)
    for row in fixtures["theorem_curves"]:
        if "ff_prime" in row:
            out += _guard(f"ff-{row['id']}", "charp", lambda row=row: _ff_curve(row))
    for row in fx["families"]:
        out += _guard(row["id"], "charp", lambda row=row: _family(row))
    out += _guard("fermat", "charp", lambda: _fermat(fx["fermat_degrees"]))
    return out


# ---------------------------------------------------------------------------

CHECKS = {
    "table5": check_table5,
    "table6": check_table6,
    "theorems": check_theorems,
    "ramification": check_ramification,
    "hessian": check_hessian,
    "charp": check_charp,
}


def verify_paper(scope: str = "all") -> dict:
    if scope != "all" and scope not in CHECKS:
        raise ValueError(f"scope must be 'all' or one of {', '.join(SCOPES)}")
    fixtures = load_fixtures()
    items = []
    for s in SCOPES if scope == "all" else (scope,):
        items += CHECKS[s](fixtures)
    items.sort(key=lambda it: it["id"])
    counts = {k: sum(it["status"] == k for it in items) for k in ("PASS", "WARN", "FAIL")}
    return {
        "schema": SCHEMA,
        "scope": scope,
        "ok": counts["FAIL"] == 0,
        "counts": counts,
        "items": items,
    }


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True, default=str)
