import random
from fractions import Fraction

import pytest

from planeaut.cyclotomic import CycNum, zeta
from planeaut.forms import (
    Monomial,
    ParamPoly,
    ProjMatrix,
    SingularMatrix,
    TernaryForm,
    core_and_exponent,
    partials,
    proportional,
    random_specialized_matrix,
    substitute,
    symbolic_proportional,
)
from planeaut.parser import NotHomogeneous, ParseError, parse_assignments, parse_constant, parse_form


def test_substitute_identity():
    f = parse_form("X^5 + Y^5 + Z^5")
    assert substitute(f, ProjMatrix.identity()) == f


def test_substitute_diagonal_parametric():
    f = parse_form("X^5 + Y^4*Z + X*Z^4 + b*X^3*Z^2")
    P = ProjMatrix([[1, 0, 0], [0, "l2", 0], [0, 0, "l3"]])
    g = substitute(f, P)
    l2, l3, b = ParamPoly.var("l2"), ParamPoly.var("l3"), ParamPoly.var("b")
    assert g.coeff(Monomial(0, 4, 1)) == l2**4 * l3
    assert g.coeff(Monomial(1, 0, 4)) == l3**4
    assert g.coeff(Monomial(3, 0, 2)) == b * l3**2
    assert g.coeff(Monomial(5, 0, 0)) == ParamPoly.const(1)


def test_substitute_singular_matrix():
    with pytest.raises(SingularMatrix):
        substitute(parse_form("X^2 + Y^2"), ProjMatrix([[1, 1, 0], [1, 1, 0], [0, 0, 1]]))


def test_core_and_exponent():
    core, e = core_and_exponent(parse_form("X^5 + Y^4*Z + X*Z^4 + b*X^3*Z^2"))
    assert (core, e) == (parse_form("X^5"), 5)
    core, e = core_and_exponent(parse_form("X^5*Y + Y^5*Z + Z^5*X + a3*X^2*Y*Z^3"))
    assert (core, e) == (parse_form("X^5*Y + Y^5*Z + Z^5*X"), 5)
    f = parse_form("X^4 + Y^4 + Z^4")
    assert core_and_exponent(f) == (f, 4)


def test_partials():
    fx, fy, fz = partials(parse_form("X^5"))
    assert fx == parse_form("5*X^4")
    assert fy.is_zero() and fz.is_zero()
    assert fy.degree == 4


def test_proportional():
    f = parse_form("X^3 + Y^3 + Z^3")
    assert proportional(f, f.scale(zeta(3))) == zeta(3)
    assert proportional(f, parse_form("X^3 + 2*Y^3 + Z^3")) is None
    b = parse_form("X^3 + b*Y^3")
    assert symbolic_proportional(b, b.scale(CycNum.rational(2)))


def test_matrix_algebra():
    rng = random.Random(3)
    for _ in range(5):
        P = random_specialized_matrix(rng, order=3)
        assert (P @ P.inverse()).is_scalar()
    D = ProjMatrix.diag(1, zeta(4), -1)
    assert D.canonical() == D.scale(zeta(4)).canonical()
    M = ProjMatrix.monomial((1, 2, 0), (1, 2, 3))
    assert M.is_monomial()


def test_parse_examples():
    f = parse_form("X^5 + Y^4*Z + X*Z^4 + b*X^3*Z^2")
    assert f.parameters() == {"b"}
    assert parse_form("X^4 + Y^4").degree == 4
    with pytest.raises(NotHomogeneous):
        parse_form("X^4 + Y^3")
    g = parse_form("zeta(3)^2 * X^6 + Y^6 + Z^6")
    assert g.coeff(Monomial(6, 0, 0)).constant_value() == zeta(3, 2)


def test_parse_arithmetic():
    assert parse_form("(X + Y)^2") == parse_form("X^2 + 2*X*Y + Y^2")
    assert parse_form("X^2/2 - -Y^2") == parse_form("1/2*X^2 + Y^2")
    assert parse_form("X * Y * Z") == parse_form("X*Y*Z")


def test_parse_errors_carry_position():
    with pytest.raises(ParseError) as exc:
        parse_form("X^2 + * Y^2")
    assert exc.value.position == 6
    with pytest.raises(ParseError):
        parse_form("X^2 / Y")
    with pytest.raises(ParseError):
        parse_form("_v*X^2")
    with pytest.raises(ParseError):
        parse_form("X^2 + Y^2)")


def test_parse_constants_and_assignments():
    assert parse_constant("zeta(4)^2") == -1
    assert parse_constant("3/4") == CycNum.rational(Fraction(3, 4))
    got = parse_assignments(["b=2", "a3=zeta(3), c=-1"])
    assert got == {"b": CycNum.rational(2), "a3": zeta(3), "c": CycNum.rational(-1)}
    with pytest.raises(ValueError):
        parse_assignments(["b"])


def test_json_round_trip():
    f = parse_form("zeta(8)*X^5 + b*Y^4*Z + X*Z^4")
    assert TernaryForm.from_json(f.to_json()) == f
