import cmath

import pytest

from planeaut import specialgroups as G
from planeaut.actions import DiagAction, invariant_monomials
from planeaut.cyclotomic import CycNum, zeta
from planeaut.forms import ProjMatrix
from planeaut.parser import parse_form
from planeaut.stabilizer import verify_automorphism


def test_generators_have_expected_orders():
    gens = G.hessian_generators()
    assert {k: G.projective_order(v) for k, v in gens.items()} == {"S": 3, "T": 3, "U": 3, "V": 4}


def test_closure_and_cap():
    assert G.closure(list(G.hessian_subgroup_generators(36).values())).order == 36
    with pytest.raises(G.CapExceeded):
        G.closure(list(G.hessian_generators().values()), cap=100)


def test_group_properties():
    h = G.hessian_group(216)
    assert h.is_closed()
    assert ProjMatrix.identity().canonical() in h
    assert 5 not in h.element_orders()
    assert sum(h.element_orders().values()) == 216
    assert G.hessian_group(72).is_subgroup_of(h)


def test_invariant_forms_single_diagonal():
    w = G.omega()
    spaces = G.invariant_forms([ProjMatrix.diag(1, w, w * w)], 6)
    by_char = {sp.characters[0]: sp for sp in spaces}
    trivial = by_char[CycNum.rational(1)]
    support = {m for f in trivial.basis for m in f.terms}
    assert support == set(invariant_monomials(6, DiagAction(3, 1, 2), 0))
    assert sorted(len(sp.basis) for sp in spaces) == [9, 9, 10]


def test_invariant_forms_identity():
    spaces = G.invariant_forms([ProjMatrix.identity()], 4)
    assert len(spaces) == 1 and len(spaces[0].basis) == 15


def test_invariant_forms_are_invariant():
    elems = list(G.quintic_exclusion_elements().values())[:4]
    for sp in G.invariant_forms(elems, 5):
        for f in sp.basis:
            for E, c in zip(elems, sp.characters):
                assert verify_automorphism(f, E) == c


def test_reference_curves():
    assert G.reference_curve("fermat", 5)[1] == 150
    assert G.reference_curve("klein", 5)[1] == 39
    assert G.reference_curve("klein", 6)[1] == 63
    with pytest.raises(ValueError):
        G.reference_curve("hesse", 5)
    for E in G.klein6_generators():
        verify_automorphism(G.klein(6), E)


def test_descendant_checks():
    rep = G.descendant_check(parse_form("X^5*Y + Y^5*Z + Z^5*X + X^2*Y*Z^3"))
    assert rep["klein_core"] and not rep["fermat_core"]
    rep = G.descendant_check(parse_form("X^5 + Y^5 + Z^4*X + X^3*Y^2"), candidate_order=4)
    assert not rep["divides_fermat"] and not rep["divides_klein"]
    rep = G.descendant_check(parse_form("X^6 + Y^6 + Z^6 + X^3*Y^2*Z"))
    assert rep["fermat_core"]


def test_upsilon_examples():
    lam = G.lambda_choices()[0]
    one, zero = CycNum.rational(1), CycNum.rational(0)
    assert G.upsilon(zero, one, one, lam)[0] == 3
    assert G.upsilon(CycNum.rational(5), zero, zero, lam)[0] == 0
    assert not G.in_gamma(5, 0, 0, lam)
    assert not G.in_gamma(0, 1, 1, lam)


def _upsilon_direct(b1, b2, b3, lam):
    # second evaluator: expand each displayed polynomial term by term
    w = lam**3
    u1 = b3 * b2**5 + b1 * b3**3 * b2 + b2 + b3**5
    u2 = lam**2 * (
        5 * w * b3 * b2**5 + b3 * b2**5 + 5 * w**2 * b2 + w * b2
        + 2 * w**2 * b1 * b3**3 * b2 + w * b1 * b3**3 * b2 + 3 * b1 * b3**3 * b2
        + w**2 * b3**5 + 5 * b3**5
    )
    return u1, u2


def test_upsilon_second_evaluator():
    for lam in G.lambda_choices():
        lc = lam.to_complex()
        for b in [(1, 2, 3), (0.5, -1, 2j), (1j, 1 + 1j, -0.25)]:
            u = G.upsilon(*b, lc)
            v = _upsilon_direct(*b, lc)
            assert abs(u[0] - v[0]) < 1e-9 * max(1, abs(v[0]))
            assert abs(u[1] - v[1]) < 1e-9 * max(1, abs(v[1]))


def test_upsilon_is_polynomial():
    lam = G.lambda_choices()[1].to_complex()
    a = (0.3, 1.1, -0.7)
    # Upsilon_1 is affine in b1
    u0 = G.upsilon(0, *a[1:], lam)[0]
    u1 = G.upsilon(1, *a[1:], lam)[0]
    u2 = G.upsilon(2, *a[1:], lam)[0]
    assert abs((u2 - u1) - (u1 - u0)) < 1e-12


def test_lambda_choices_are_cube_roots():
    assert all(l**3 == G.omega() for l in G.lambda_choices())
    assert len({l for l in G.lambda_choices()}) == 3


def test_gamma_structure():
    rep = G.gamma_report()
    assert rep["linear_conditions_identical"]
    assert rep["exact_witness"]["in_gamma"]
    assert G.gamma_membership(1, 1, zeta(6))["any"]


def test_gamma_witness_for_any_alpha():
    for alpha in (1, 2, -3, zeta(5)):
        b1, b2, b3 = G.gamma1_witness(alpha)
        for lam in G.lambda_choices():
            u = G.upsilon(b1, b2, b3, lam.to_complex())
            w2 = cmath.exp(4j * cmath.pi / 3)
            assert abs(u[0] - 1) < 1e-9
            assert abs(u[1] - u[2]) < 1e-8 * max(1, abs(u[1]))
            assert abs(u[2] - w2 * u[3]) < 1e-8 * max(1, abs(u[2]))


def test_elimination_on_non_admissible_lambda():
    # with lambda^3 != omega the linear conditions have rank 2 and Gamma is finite
    red = G.gamma_reduction(CycNum.rational(2))
    assert red["rank"] == 2
    cands = G.gamma1_candidates(CycNum.rational(2))
    assert cands and all(c["verified"] for c in cands)
    with pytest.raises(ValueError):
        G.gamma1_candidates(G.lambda_choices()[0])
