import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from planeaut.actions import (
    DegenerateClass,
    DiagAction,
    ForcedFactor,
    InfiniteNormalizer,
    family_identifications,
    invariant_monomials,
    normal_form,
    types_conjugate,
    weight,
    weight_classes,
)
from planeaut.cyclotomic import CycNum, zeta
from planeaut.forms import Monomial, monomials_of_degree, substitute, symbolic_proportional


def test_action_validation():
    assert DiagAction.parse("8,(1,4)") == DiagAction(8, 1, 4)
    assert DiagAction.parse("8,1,4") == DiagAction(8, 1, 4)
    with pytest.raises(ValueError):
        DiagAction(4, 2, 2)
    with pytest.raises(ValueError):
        DiagAction(4, 0, 2)  # projective order 2
    with pytest.raises(ValueError):
        DiagAction(1, 0, 0)
    assert DiagAction(4, 0, 1).is_homology
    assert not DiagAction(4, 1, 2).is_homology


def test_weights():
    assert weight(Monomial(5, 0, 0), DiagAction(8, 1, 4)) == 0
    assert weight(Monomial(0, 4, 1), DiagAction(8, 1, 4)) == 0
    assert weight(Monomial(5, 1, 0), DiagAction(3, 1, 2)) == 1


def test_invariant_monomials_examples():
    got = invariant_monomials(5, DiagAction(4, 1, 2), 0)
    want = {Monomial(5, 0, 0), Monomial(1, 4, 0), Monomial(1, 0, 4), Monomial(3, 0, 2), Monomial(2, 2, 1), Monomial(0, 2, 3)}
    assert set(got) == want
    assert len(invariant_monomials(6, DiagAction(3, 1, 2), 1)) == 9


def test_normal_form_unit_reference():
    nf = normal_form(5, DiagAction(16, 1, 12), [Monomial(5, 0, 0), Monomial(0, 4, 1), Monomial(1, 0, 4)])
    assert nf.parameters == ()
    assert all(c.constant_value() == 1 for c in nf.base.terms.values())


def test_normal_form_errors():
    with pytest.raises(ForcedFactor):
        normal_form(5, DiagAction(4, 1, 3), [Monomial(5, 0, 0)])
    with pytest.raises(ValueError):
        normal_form(5, DiagAction(8, 1, 4), [Monomial(5, 0, 0), Monomial(0, 5, 0)])


def _class_degenerate(d, act, w):
    monos = invariant_monomials(d, act, w)
    return any(max(m[v] for m in monos) < d - 1 for v in range(3))


def test_degenerate_class_exists():
    act = DiagAction(13, 1, 10)
    bad = [w for w in range(13) if invariant_monomials(5, act, w) and _class_degenerate(5, act, w)]
    assert bad
    with pytest.raises(DegenerateClass):
        normal_form(5, act, weight_class=bad[0])


def test_normal_form_invariance():
    for text, ref in [("8,(1,4)", [(5, 0, 0)]), ("3,(1,2)", [(5, 1, 0)]), ("4,(1,2)", [(5, 0, 0)])]:
        act = DiagAction.parse(text)
        d = sum(ref[0])
        nf = normal_form(d, act, ref)
        image = substitute(nf.base, act.matrix())
        assert symbolic_proportional(nf.base, image)
        assert image == nf.base.scale(zeta(act.m, nf.weight_class))


def test_conjugacy_examples():
    res = types_conjugate(DiagAction(4, 0, 1), DiagAction(4, 1, 2))
    assert not res.conjugate and "homology" in res.invariant
    assert types_conjugate(DiagAction(3, 1, 2), DiagAction(3, 1, 2)).conjugate
    assert not types_conjugate(DiagAction(5, 0, 1), DiagAction(5, 1, 2)).conjugate
    # diag(1, i, -1) and diag(1, -1, i) differ by swapping Y and Z
    res = types_conjugate(DiagAction(4, 1, 2), DiagAction(4, 2, 3))
    assert res.conjugate and res.permutation is not None


def test_identifications():
    nf = normal_form(5, DiagAction(10, 2, 5), [Monomial(5, 0, 0), Monomial(0, 5, 0), Monomial(1, 0, 4)])
    fam = family_identifications(nf)
    assert fam.order == 2 and fam.is_group()
    assert fam.apply(1, {"b20": CycNum.rational(3)}) in ({"b20": CycNum.rational(-3)}, {"b20": CycNum.rational(3)})
    empty = family_identifications(normal_form(5, DiagAction(16, 1, 12), [(5, 0, 0), (0, 4, 1), (1, 0, 4)]))
    assert empty.parameters == () and empty.order == 1
    with pytest.raises(InfiniteNormalizer):
        family_identifications(normal_form(5, DiagAction(5, 0, 1), [(0, 0, 5)]))


@st.composite
def actions(draw):
    m = draw(st.integers(2, 12))
    b = draw(st.integers(1, m - 1))
    a = draw(st.integers(0, b - 1))
    return (m, a, b)


def _valid(t):
    try:
        return DiagAction(*t)
    except ValueError:
        return None


@settings(max_examples=60, deadline=None)
@given(actions(), st.integers(2, 8))
def test_weight_classes_partition(t, d):
    act = _valid(t)
    if act is None:
        return
    classes = weight_classes(d, act)
    seen = [m for ms in classes.values() for m in ms]
    assert sorted(seen) == sorted(monomials_of_degree(d))
    assert len(seen) == (d + 1) * (d + 2) // 2


@settings(max_examples=60, deadline=None)
@given(actions(), st.integers(0, 6), st.integers(0, 6), st.integers(0, 6), st.integers(0, 6))
def test_weight_additive(t, i, j, k, l):
    act = _valid(t)
    if act is None:
        return
    m1, m2 = Monomial(i, j, 0), Monomial(0, k, l)
    prod = Monomial(i, j + k, l)
    assert weight(prod, act) == (weight(m1, act) + weight(m2, act)) % act.m


@settings(max_examples=30, deadline=None)
@given(st.lists(actions(), min_size=3, max_size=3))
def test_conjugacy_is_an_equivalence(ts):
    acts = [_valid(t) for t in ts]
    if any(a is None for a in acts):
        return
    a, b, c = acts
    assert types_conjugate(a, a).conjugate
    assert types_conjugate(a, b).conjugate == types_conjugate(b, a).conjugate
    if types_conjugate(a, b).conjugate and types_conjugate(b, c).conjugate:
        assert types_conjugate(a, c).conjugate


def test_conjugacy_certificate_is_correct():
    a, b = DiagAction(8, 1, 4), DiagAction(8, 3, 4)
    res = types_conjugate(a, b)
    assert res.conjugate
    perm, t = res.permutation, res.power
    ex = a.exponents
    img = tuple(ex[perm[i]] for i in range(3))
    target = tuple(t * e for e in b.exponents)
    diff = {(x - y) % 8 for x, y in zip(img, target)}
    assert len(diff) == 1
