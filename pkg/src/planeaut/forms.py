"""Sparse ternary forms with parameter-polynomial coefficients."""

from __future__ import annotations

import json
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, NamedTuple

from .cyclotomic import CycNum

VARIABLES = ("X", "Y", "Z")

# Matrix unknowns live in their own namespace so they can never collide
# with curve parameters (the parser rejects names starting with "_").
UNKNOWN_PREFIX = "_"


class SingularMatrix(ValueError):
    pass


class NotSpecialized(ValueError):
    pass


def is_unknown(name: str) -> bool:
    return name.startswith(UNKNOWN_PREFIX)


# ---------------------------------------------------------------------------
# parameter polynomials

PMono = tuple  # tuple of (name, exponent) pairs sorted by name


def _pmono_mul(a: PMono, b: PMono) -> PMono:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for name, e in b:
        d[name] = d.get(name, 0) + e
    return tuple(sorted(d.items()))


class ParamPoly:
    """Polynomial in named parameters with CycNum coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[PMono, CycNum] | None = None):
        clean = {}
        if terms:
            for mono, c in terms.items():
                c = CycNum.coerce(c)
                if not c.is_zero():
                    clean[mono] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def const(cls, c) -> "ParamPoly":
        return cls({(): CycNum.coerce(c)})

    @classmethod
    def var(cls, name: str) -> "ParamPoly":
        return cls({((name, 1),): CycNum.rational(1)})

    @classmethod
    def coerce(cls, x) -> "ParamPoly":
        if isinstance(x, ParamPoly):
            return x
        if isinstance(x, str):
            return cls.var(x)
        return cls.const(x)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not m for m in self.terms)

    def constant_value(self) -> CycNum:
        if not self.is_constant():
            raise NotSpecialized(f"{self.to_text()} still depends on {sorted(self.variables())}")
        return self.terms.get((), CycNum.rational(0))

    def variables(self) -> set[str]:
        return {name for m in self.terms for name, _ in m}

    def single_term(self):
        """(coefficient, monomial) if this is a single term, else None."""
        if len(self.terms) != 1:
            return None
        ((m, c),) = self.terms.items()
        return c, m

    def __add__(self, other):
        other = ParamPoly.coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out[m] + c if m in out else c
        return ParamPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return ParamPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-ParamPoly.coerce(other))

    def __rsub__(self, other):
        return ParamPoly.coerce(other) - self

    def __mul__(self, other):
        other = ParamPoly.coerce(other)
        if not self.terms or not other.terms:
            return ParamPoly()
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _pmono_mul(m1, m2)
                p = c1 * c2
                out[m] = out[m] + p if m in out else p
        return ParamPoly(out)

    __rmul__ = __mul__

    def scale(self, c) -> "ParamPoly":
        c = CycNum.coerce(c)
        return ParamPoly({m: v * c for m, v in self.terms.items()})

    def __truediv__(self, other):
        if isinstance(other, ParamPoly):
            other = other.constant_value()
        return self.scale(1 / CycNum.coerce(other))

    def __pow__(self, k: int):
        if k < 0:
            return ParamPoly.const(1 / self.constant_value()) ** (-k)
        out = ParamPoly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def subs(self, assignment: Mapping[str, object]) -> "ParamPoly":
        """Replace named parameters by ParamPolys / scalars."""
        if not assignment or not (self.variables() & set(assignment)):
            return self
        vals = {k: ParamPoly.coerce(v) for k, v in assignment.items()}
        out = ParamPoly()
        for m, c in self.terms.items():
            term = ParamPoly({tuple((n, e) for n, e in m if n not in vals): c})
            for n, e in m:
                if n in vals:
                    term = term * vals[n] ** e
            out = out + term
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Rational, CycNum)):
            other = ParamPoly.const(other)
        if not isinstance(other, ParamPoly):
            return NotImplemented
        if self.terms.keys() != other.terms.keys():
            return False
        return all(self.terms[m] == other.terms[m] for m in self.terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset((m, hash(c)) for m, c in self.terms.items()))
        return self._hash

    def __repr__(self):
        return f"ParamPoly({self.to_text()})"

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=lambda m: (-sum(e for _, e in m), m)):
            c = self.terms[m]
            mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in m)
            if not mono:
                parts.append(c.to_text())
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            elif c.is_simple_text():
                parts.append(f"{c.to_text()}*{mono}")
            else:
                parts.append(f"({c.to_text()})*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def is_simple_text(self) -> bool:
        if len(self.terms) != 1:
            return False
        ((m, c),) = self.terms.items()
        return c.is_simple_text()


# ---------------------------------------------------------------------------
# ternary forms


class Monomial(NamedTuple):
    i: int
    j: int
    k: int

    @property
    def degree(self) -> int:
        return self.i + self.j + self.k

    @property
    def exponent(self) -> int:
        return max(self)

    def to_text(self) -> str:
        parts = []
        for v, e in zip(VARIABLES, self):
            if e == 1:
                parts.append(v)
            elif e > 1:
                parts.append(f"{v}^{e}")
        return "*".join(parts) if parts else "1"


def grlex_key(m: Monomial):
    """Sort key: graded lexicographic, X > Y > Z, largest first."""
    return (-(m[0] + m[1] + m[2]), -m[0], -m[1])


def monomials_of_degree(d: int) -> list[Monomial]:
    out = [Monomial(i, j, d - i - j) for i in range(d + 1) for j in range(d - i + 1)]
    return sorted(out, key=grlex_key)


class TernaryForm:
    """Homogeneous degree-d form in X, Y, Z over ParamPoly."""

    __slots__ = ("degree", "terms")

    def __init__(self, degree: int, terms: Mapping | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Monomial, ParamPoly] = {}
        for mono, c in items:
            mono = Monomial(*mono)
            if mono.degree != degree:
                raise ValueError(f"monomial {mono.to_text()} has degree {mono.degree}, expected {degree}")
            c = ParamPoly.coerce(c)
            if mono in clean:
                c = clean[mono] + c
            if c.is_zero():
                clean.pop(mono, None)
            else:
                clean[mono] = c
        self.degree = degree
        self.terms = clean

    # -- construction ---------------------------------------------------
    @classmethod
    def from_monomials(cls, degree: int, monos: Iterable, coeff=1) -> "TernaryForm":
        return cls(degree, {Monomial(*m): ParamPoly.coerce(coeff) for m in monos})

    @property
    def support(self) -> list[Monomial]:
        return sorted(self.terms, key=grlex_key)

    def coeff(self, mono) -> ParamPoly:
        return self.terms.get(Monomial(*mono), ParamPoly())

    def is_zero(self) -> bool:
        return not self.terms

    def parameters(self) -> set[str]:
        out: set[str] = set()
        for c in self.terms.values():
            out |= c.variables()
        return out

    def is_specialized(self) -> bool:
        return all(c.is_constant() for c in self.terms.values())

    def numeric_terms(self) -> dict[Monomial, CycNum]:
        if not self.is_specialized():
            raise NotSpecialized(f"parameters remain: {sorted(self.parameters())}")
        return {m: c.constant_value() for m, c in self.terms.items()}

    def specialize(self, assignment: Mapping[str, object]) -> "TernaryForm":
        return TernaryForm(self.degree, {m: c.subs(assignment) for m, c in self.terms.items()})

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other: "TernaryForm") -> "TernaryForm":
        if other.degree != self.degree and not other.is_zero() and not self.is_zero():
            raise ValueError("cannot add forms of different degree")
        deg = self.degree if not self.is_zero() else other.degree
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out[m] + c if m in out else c
        return TernaryForm(deg, out)

    def __neg__(self):
        return TernaryForm(self.degree, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "TernaryForm":
        c = ParamPoly.coerce(c)
        return TernaryForm(self.degree, {m: v * c for m, v in self.terms.items()})

    def __mul__(self, other: "TernaryForm") -> "TernaryForm":
        return TernaryForm(self.degree + other.degree, _mul_terms(self.terms, other.terms))

    def __eq__(self, other):
        if not isinstance(other, TernaryForm):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        return hash((self.degree, frozenset(self.terms.items())))

    def __repr__(self):
        return f"TernaryForm({self.to_text()})"

    # -- serialisation --------------------------------------------------------
    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in self.support:
            c = self.terms[m]
            mono = m.to_text()
            if c == 1:
                s = mono
            elif c == -1:
                s = "-" + mono
            elif c.is_simple_text():
                s = f"{c.to_text()}*{mono}" if mono != "1" else c.to_text()
            else:
                s = f"({c.to_text()})*{mono}"
            parts.append(s)
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "terms": [
                {"i": m.i, "j": m.j, "k": m.k, "coeff": self.terms[m].to_text()} for m in self.support
            ],
        }

    @classmethod
    def from_json(cls, data) -> "TernaryForm":
        from .parser import parse_scalar

        if isinstance(data, str):
            data = json.loads(data)
        return cls(
            int(data["degree"]),
            {Monomial(t["i"], t["j"], t["k"]): parse_scalar(str(t["coeff"])) for t in data["terms"]},
        )

    def evaluate(self, point) -> ParamPoly:
        x, y, z = (ParamPoly.coerce(v) for v in point)
        total = ParamPoly()
        for (i, j, k), c in self.terms.items():
            total = total + c * x ** i * y ** j * z ** k
        return total


def _mul_terms(a: Mapping, b: Mapping) -> dict:
    out: dict = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = Monomial(m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
            p = c1 * c2
            out[m] = out[m] + p if m in out else p
    return out


# ---------------------------------------------------------------------------
# projective matrices


class ProjMatrix:
    """3x3 matrix of ParamPoly acting on forms by F -> F(P (X, Y, Z)^T)."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        rows = tuple(tuple(ParamPoly.coerce(x) for x in row) for row in rows)
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise ValueError("ProjMatrix needs 3x3 entries")
        self.rows = rows

    @classmethod
    def identity(cls) -> "ProjMatrix":
        return cls([[1, 0, 0], [0, 1, 0], [0, 0, 1]])

    @classmethod
    def diag(cls, a, b, c) -> "ProjMatrix":
        return cls([[a, 0, 0], [0, b, 0], [0, 0, c]])

    @classmethod
    def monomial(cls, perm, scalars) -> "ProjMatrix":
        """Row r maps coordinate r to scalars[r] * x_{perm[r]}."""
        rows = [[0, 0, 0] for _ in range(3)]
        for r in range(3):
            rows[r][perm[r]] = scalars[r]
        return cls(rows)

    @property
    def is_specialized(self) -> bool:
        return all(x.is_constant() for row in self.rows for x in row)

    def entry(self, r: int, c: int) -> ParamPoly:
        return self.rows[r][c]

    def numeric(self) -> tuple[tuple[CycNum, ...], ...]:
        return tuple(tuple(x.constant_value() for x in row) for row in self.rows)

    def det(self) -> ParamPoly:
        (a, b, c), (d, e, f), (g, h, i) = self.rows
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)

    def __matmul__(self, other: "ProjMatrix") -> "ProjMatrix":
        A, B = self.rows, other.rows
        return ProjMatrix(
            [[A[r][0] * B[0][c] + A[r][1] * B[1][c] + A[r][2] * B[2][c] for c in range(3)] for r in range(3)]
        )

    def scale(self, c) -> "ProjMatrix":
        return ProjMatrix([[x * ParamPoly.coerce(c) for x in row] for row in self.rows])

    def inverse(self) -> "ProjMatrix":
        det = self.det()
        if not det.is_constant():
            raise NotSpecialized("inverse needs a specialized matrix")
        dv = det.constant_value()
        if dv.is_zero():
            raise SingularMatrix("matrix is not invertible")
        (a, b, c), (d, e, f), (g, h, i) = self.rows
        adj = [
            [e * i - f * h, c * h - b * i, b * f - c * e],
            [f * g - d * i, a * i - c * g, c * d - a * f],
            [d * h - e * g, b * g - a * h, a * e - b * d],
        ]
        inv = 1 / dv
        return ProjMatrix([[x.scale(inv) for x in row] for row in adj])

    def canonical(self) -> "ProjMatrix":
        """Scale so that the first nonzero entry (row-major) is 1."""
        for row in self.rows:
            for x in row:
                if not x.is_zero():
                    return self.scale(ParamPoly.const(1 / x.constant_value()))
        raise SingularMatrix("zero matrix")

    def is_scalar(self) -> bool:
        r = self.rows
        off = all(r[i][j].is_zero() for i in range(3) for j in range(3) if i != j)
        return off and r[0][0] == r[1][1] == r[2][2]

    def is_monomial(self) -> bool:
        return all(sum(not x.is_zero() for x in row) == 1 for row in self.rows)

    def __eq__(self, other):
        if not isinstance(other, ProjMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def projectively_equal(self, other: "ProjMatrix") -> bool:
        return self.canonical() == other.canonical()

    def to_text(self) -> str:
        """Bracket notation [L0; L1; L2] for the images of X, Y, Z."""
        out = []
        for row in self.rows:
            lin = TernaryForm(1, {Monomial(*(int(i == c) for i in range(3))): row[c] for c in range(3)})
            out.append(lin.to_text())
        return "[" + "; ".join(out) + "]"

    def __repr__(self):
        return f"ProjMatrix({self.to_text()})"

    def to_json(self):
        return [[x.to_text() for x in row] for row in self.rows]


def _linear_images(P: ProjMatrix) -> list[dict]:
    out = []
    for row in P.rows:
        out.append({Monomial(*(int(i == c) for i in range(3))): row[c] for c in range(3) if not row[c].is_zero()})
    return out


def substitute(form: TernaryForm, P: ProjMatrix) -> TernaryForm:
    """F o P, i.e. F(P (X, Y, Z)^T), expanded and collected."""
    if P.is_specialized:
        if P.det().constant_value().is_zero():
            raise SingularMatrix("substitution matrix has zero determinant")
    if P.is_monomial():
        return _substitute_monomial(form, P)
    images = _linear_images(P)
    powers: list[dict[int, dict]] = [{0: {Monomial(0, 0, 0): ParamPoly.const(1)}} for _ in range(3)]

    def power(r: int, e: int) -> dict:
        cache = powers[r]
        if e not in cache:
            cache[e] = _mul_terms(power(r, e - 1), images[r])
        return cache[e]

    out: dict = {}
    for mono, c in form.terms.items():
        prod = {Monomial(0, 0, 0): c}
        for r in range(3):
            if mono[r]:
                prod = _mul_terms(prod, power(r, mono[r]))
        for m, v in prod.items():
            out[m] = out[m] + v if m in out else v
    return TernaryForm(form.degree, out)


def _substitute_monomial(form: TernaryForm, P: ProjMatrix) -> TernaryForm:
    target = []
    scal = []
    for row in P.rows:
        c = next(i for i in range(3) if not row[i].is_zero())
        target.append(c)
        scal.append(row[c])
    pw: dict = {}

    def spow(r, e):
        key = (r, e)
        if key not in pw:
            pw[key] = scal[r] ** e
        return pw[key]

    out: dict = {}
    for mono, c in form.terms.items():
        new = [0, 0, 0]
        v = c
        for r in range(3):
            e = mono[r]
            if e:
                new[target[r]] += e
                v = v * spow(r, e)
        m = Monomial(*new)
        out[m] = out[m] + v if m in out else v
    return TernaryForm(form.degree, out)


def core_and_exponent(form: TernaryForm) -> tuple[TernaryForm, int]:
    if form.is_zero():
        raise ValueError("core of the zero form is undefined")
    exponent = max(max(m) for m in form.terms)
    core = TernaryForm(form.degree, {m: c for m, c in form.terms.items() if max(m) == exponent})
    return core, exponent


def partials(form: TernaryForm) -> tuple[TernaryForm, TernaryForm, TernaryForm]:
    d = form.degree
    out = []
    for r in range(3):
        terms = {}
        for m, c in form.terms.items():
            if m[r]:
                new = list(m)
                new[r] -= 1
                terms[Monomial(*new)] = c.scale(m[r])
        out.append(TernaryForm(d - 1, terms))
    return tuple(out)


def proportional(f: TernaryForm, g: TernaryForm):
    """Return lambda with g = lambda * f for specialized forms, else None."""
    if f.is_zero() or g.is_zero():
        return None
    if set(f.terms) != set(g.terms):
        return None
    ft, gt = f.numeric_terms(), g.numeric_terms()
    m0 = next(iter(ft))
    lam = gt[m0] / ft[m0]
    for m in ft:
        if gt[m] != lam * ft[m]:
            return None
    return lam


def symbolic_proportional(f: TernaryForm, g: TernaryForm) -> bool:
    """g = c * f for a nonzero constant c, identically in the parameters."""
    if f.is_zero() or set(f.terms) != set(g.terms):
        return False
    m0 = next(iter(f.terms))
    a, b = f.terms[m0], g.terms[m0]
    mono, c = next(iter(a.terms.items()))
    if mono not in b.terms:
        return False
    lam = b.terms[mono] / c
    return all(g.terms[m] == f.terms[m].scale(lam) for m in f.terms)


def random_specialized_matrix(rng, order: int = 1, bound: int = 3) -> ProjMatrix:
    """Invertible matrix with small random entries (test helper)."""
    from .cyclotomic import zeta

    while True:
        rows = []
        for _ in range(3):
            row = []
            for _ in range(3):
                v = Fraction(rng.randint(-bound, bound))
                if order > 1 and rng.random() < 0.3:
                    row.append(CycNum.coerce(v) * zeta(order, rng.randrange(order)))
                else:
                    row.append(v)
            rows.append(row)
        P = ProjMatrix(rows)
        if not P.det().constant_value().is_zero():
            return P


__all__ = [
    "CycNum",
    "Monomial",
    "ParamPoly",
    "ProjMatrix",
    "SingularMatrix",
    "NotSpecialized",
    "TernaryForm",
    "core_and_exponent",
    "grlex_key",
    "monomials_of_degree",
    "partials",
    "substitute",
]
