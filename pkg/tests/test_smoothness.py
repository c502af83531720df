import warnings

import pytest

from planeaut import smoothness as S
from planeaut.cyclotomic import CycNum, zeta
from planeaut.forms import NotSpecialized
from planeaut.parser import parse_form
from planeaut.specialgroups import fermat, klein

Z8 = parse_form("X^5 + Y^4*Z + X*Z^4 + b*X^3*Z^2")
Z10 = parse_form("X^5 + Y^5 + X*Z^4 + b*X^3*Z^2")
C1 = parse_form("X^5 + Y^5 + Z^4*X + X^3*Y^2")


def at(form, b):
    return form.specialize({"b": CycNum.rational(b)})


def test_core_necessary():
    assert S.core_necessary(fermat(5))
    assert not S.core_necessary(parse_form("X^3*Y*Z + X^2*Y^2*Z + X*Y^3*Z"))
    assert not S.core_necessary(parse_form("X^5 + X*Z^4 + X*Y^4 + X*Y^2*Z^2"))


def test_core_failure_gives_reference_witness():
    cert = S.is_smooth(parse_form("X^5 + X*Y^4 + Y^2*Z^3"))
    assert cert.verdict == "singular" and cert.method == "core-check"
    assert cert.point == (0, 0, 1)
    # a common factor passes the degree test but is still caught
    assert not S.is_smooth(parse_form("X^5 + X*Y^4 + X*Z^4")).smooth


def test_z8_family():
    assert S.is_smooth(at(Z8, 2)).verdict == "singular"
    assert S.is_smooth(at(Z8, -2)).verdict == "singular"
    assert S.is_smooth(at(Z8, 1)).smooth


def test_z10_family():
    assert not S.is_smooth(at(Z10, 2)).smooth
    assert not S.is_smooth(at(Z10, -2)).smooth
    assert S.is_smooth(at(Z10, 3)).smooth


def test_rational_singular_witnesses_verify():
    cert = S.is_smooth(parse_form("X^3 + Y^3 - X*Y*Z"))
    assert cert.verdict == "singular"
    assert cert.point is not None


def test_cyclotomic_coefficients():
    f = parse_form("zeta(3)*X^6 + Y^6 + Z^6")
    assert S.is_smooth(f).smooth
    p = S.minimal_valid_prime(6, S.orders_of(f))
    assert p % 3 == 1
    assert S.finite_field_check(f, p=p, theory_valid=True).smooth


def test_klein_smooth():
    assert S.is_smooth(klein(5)).smooth
    assert S.is_smooth(klein(6)).smooth


def test_parameters_must_be_assigned():
    with pytest.raises(NotSpecialized):
        S.is_smooth(Z8)


def test_finite_field_examples():
    cert = S.finite_field_check(C1, p=29, theory_valid=True)
    assert cert.smooth
    g = 6
    assert abs(cert.point_count - 30) <= 2 * g * 29**0.5
    bad = S.finite_field_check(Z8, {"b": CycNum.rational(2)}, p=41)
    assert bad.verdict == "singular" and bad.singular_points


def test_thresholds_and_primes():
    assert S.threshold(6) == 21
    assert S.minimal_valid_prime(6) == 23
    assert S.minimal_valid_prime(5, [4]) == 17
    assert S.minimal_valid_prime(5, [8]) == 17
    assert S.minimal_valid_prime(6, [3]) == 31


def test_threshold_violation():
    with pytest.warns(S.ThresholdViolation):
        cert = S.finite_field_check(C1, p=13)
    assert cert.warnings
    with pytest.raises(ValueError):
        S.finite_field_check(C1, p=13, theory_valid=True)


def test_prime_errors(monkeypatch):
    f = parse_form("zeta(4)*X^5 + Y^5 + Z^5")
    with pytest.raises(S.NoRootOfUnity):
        S.finite_field_check(f, p=19, theory_valid=True)
    with pytest.raises(ValueError):
        S.finite_field_check(C1, p=21)
    monkeypatch.setenv("PLANEAUT_MAX_PRIME", "50")
    with pytest.raises(S.PrimeTooLarge):
        S.finite_field_check(C1, p=53)
    with pytest.raises(S.BadReduction):
        S.reduce_mod_p([CycNum.rational(1) / 17], 17)


def test_reduction_is_a_ring_map():
    p = 37
    a, b = zeta(9, 2) + 3, zeta(4) - zeta(12, 5)
    ra, rb, rab, rsum = S.reduce_mod_p([a, b, a * b, a + b], p)
    assert rab == ra * rb % p
    assert rsum == (ra + rb) % p


def test_ff_diagonal_counts():
    assert S.ff_diagonal_automorphisms(C1, 17) == 4
    assert S.ff_diagonal_automorphisms(fermat(5), 11) == 25


def test_probe_parameter():
    out = S.probe_parameter(Z8, "b", [CycNum.rational(v) for v in (1, 2)])
    assert list(out.values()) == ["smooth", "singular"]


def test_no_warning_above_threshold():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        S.finite_field_check(C1, p=17)
