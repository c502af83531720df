"""Cyclic diagonal actions diag(1, z^a, z^b) and their invariant normal forms."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from math import gcd

from .cyclotomic import CycNum, zeta
from .forms import Monomial, ParamPoly, ProjMatrix, TernaryForm, grlex_key, monomials_of_degree
from .smith import solve_torus


class DegenerateClass(ValueError):
    """Some variable has exponent < d - 1 in every monomial of the class."""


class ForcedFactor(ValueError):
    """Every monomial of the class shares a coordinate factor."""


class InfiniteNormalizer(ValueError):
    """The reference monomials do not pin down a finite diagonal normalizer."""


@dataclass(frozen=True, order=True)
class DiagAction:
    m: int
    a: int
    b: int

    def __post_init__(self):
        if self.m < 2:
            raise ValueError("order must be at least 2")
        if not 0 <= self.a < self.b < self.m:
            raise ValueError(f"need 0 <= a < b < m, got {self.m},({self.a},{self.b})")
        if gcd(gcd(self.m, self.a), self.b) != 1:
            raise ValueError(f"diag(1, z^{self.a}, z^{self.b}) has order below {self.m}")

    @classmethod
    def parse(cls, text: str) -> "DiagAction":
        """Accept 'm,a,b' or 'm,(a,b)'."""
        parts = [p for p in text.replace("(", ",").replace(")", ",").split(",") if p.strip()]
        if len(parts) != 3:
            raise ValueError(f"cannot read a type from {text!r}")
        return cls(*(int(p) for p in parts))

    @property
    def is_homology(self) -> bool:
        return self.a == 0

    @property
    def exponents(self) -> tuple[int, int, int]:
        return (0, self.a, self.b)

    def matrix(self, power: int = 1) -> ProjMatrix:
        return ProjMatrix.diag(1, zeta(self.m, self.a * power), zeta(self.m, self.b * power))

    def label(self) -> str:
        return f"{self.m},({self.a},{self.b})"

    def __str__(self):
        return self.label()


def weight(mon, act: DiagAction) -> int:
    return (act.a * mon[1] + act.b * mon[2]) % act.m


def invariant_monomials(d: int, act: DiagAction, w: int) -> list[Monomial]:
    return [m for m in monomials_of_degree(d) if weight(m, act) == w % act.m]


def weight_classes(d: int, act: DiagAction) -> dict[int, list[Monomial]]:
    out: dict[int, list[Monomial]] = {w: [] for w in range(act.m)}
    for m in monomials_of_degree(d):
        out[weight(m, act)].append(m)
    return out


def parameter_name(mon: Monomial, d: int) -> str:
    """beta_{j,i} for X^(d-j) Y^i Z^(j-i), rendered b{j}{i}."""
    j, i = d - mon[0], mon[1]
    if j >= 10 or i >= 10:
        return f"b{j}_{i}"
    return f"b{j}{i}"


def class_obstruction(d: int, monos) -> str | None:
    """Name the reason a class cannot carry a smooth curve, if any."""
    monos = list(monos)
    for v, name in enumerate("XYZ"):
        if not monos or max(m[v] for m in monos) < d - 1:
            return f"degenerate: every monomial has {name}-degree below {d - 1}"
    for v, name in enumerate("XYZ"):
        if all(m[v] > 0 for m in monos):
            return f"forced factor {name}"
    return None


@dataclass(frozen=True)
class NormalForm:
    base: TernaryForm
    action: DiagAction
    weight_class: int
    reference: tuple[Monomial, ...]
    parameters: tuple[tuple[str, Monomial], ...] = field(default=())

    @property
    def parameter_names(self) -> list[str]:
        return [p for p, _ in self.parameters]

    def to_json(self) -> dict:
        return {
            "type": [self.action.m, self.action.a, self.action.b],
            "degree": self.base.degree,
            "weight_class": self.weight_class,
            "reference": [m.to_text() for m in self.reference],
            "parameters": {p: m.to_text() for p, m in self.parameters},
            "support": [m.to_text() for m in self.base.support],
            "form": self.base.to_text(),
        }


def normal_form(d: int, act: DiagAction, reference=None, weight_class: int | None = None) -> NormalForm:
    """Invariant family of degree d for act: unit coefficients on reference."""
    reference = [Monomial(*m) for m in (reference or ())]
    for m in reference:
        if m.degree != d:
            raise ValueError(f"reference monomial {m.to_text()} is not of degree {d}")
    ws = {weight(m, act) for m in reference}
    if weight_class is not None:
        ws.add(weight_class % act.m)
    if len(ws) != 1:
        raise ValueError("reference monomials must share one weight class (or give weight_class)")
    w = ws.pop()
    monos = invariant_monomials(d, act, w)
    for v, name in enumerate("XYZ"):
        if max(m[v] for m in monos) < d - 1:
            raise DegenerateClass(f"class {w} of type {act}: every monomial has {name}-degree below {d - 1}")
    for v, name in enumerate("XYZ"):
        if all(m[v] > 0 for m in monos):
            raise ForcedFactor(f"class {w} of type {act}: every monomial is divisible by {name}")
    ref = set(reference)
    terms = {}
    params = []
    for m in monos:
        if m in ref:
            terms[m] = ParamPoly.const(1)
        else:
            name = parameter_name(m, d)
            terms[m] = ParamPoly.var(name)
            params.append((name, m))
    return NormalForm(
        TernaryForm(d, terms), act, w, tuple(sorted(ref, key=grlex_key)), tuple(params)
    )


# ---------------------------------------------------------------------------
# conjugacy of cyclic diagonal subgroups


def _normalize(triple, m):
    return tuple((x - triple[0]) % m for x in triple)


def _element_signature(triple, m):
    order = m // gcd(m, gcd(gcd(triple[0], triple[1]), triple[2])) if any(triple) else 1
    pattern = tuple(sorted(Counter(x % m for x in triple).values(), reverse=True))
    return order, pattern


def _group_signature(act: DiagAction) -> Counter:
    return Counter(_element_signature(tuple(t * e for e in act.exponents), act.m) for t in range(act.m))


@dataclass(frozen=True)
class Conjugacy:
    conjugate: bool
    permutation: tuple[int, int, int] | None = None
    power: int | None = None
    invariant: str | None = None

    def to_json(self) -> dict:
        return {
            "conjugate": self.conjugate,
            "permutation": list(self.permutation) if self.permutation else None,
            "power": self.power,
            "invariant": self.invariant,
        }


def types_conjugate(t1: DiagAction, t2: DiagAction) -> Conjugacy:
    """Decide whether the cyclic groups of t1 and t2 are conjugate in PGL_3.

    The certificate (perm, t) says that permuting the coordinates by perm sends
    the generator of t1 to the t-th power of the generator of t2.
    """
    if t1.m != t2.m:
        return Conjugacy(False, invariant=f"orders differ: {t1.m} vs {t2.m}")
    m = t1.m
    target = {}
    for t in range(1, m):
        if gcd(t, m) == 1:
            target.setdefault(_normalize(tuple(t * e for e in t2.exponents), m), t)
    for perm in permutations(range(3)):
        img = _normalize(tuple(t1.exponents[perm[i]] for i in range(3)), m)
        if img in target:
            return Conjugacy(True, permutation=perm, power=target[img])
    s1, s2 = _group_signature(t1), _group_signature(t2)
    if s1 != s2:
        h1 = sorted({o for (o, p) in s1 if p == (2, 1)})
        h2 = sorted({o for (o, p) in s2 if p == (2, 1)})
        if h1 != h2:
            note = f"homology orders differ: {t1} has {h1 or 'none'}, {t2} has {h2 or 'none'}"
        else:
            note = "element orders and eigenvalue multiplicity patterns differ"
        return Conjugacy(False, invariant=note)
    return Conjugacy(False, invariant="no coordinate permutation matches the two subgroups")


# ---------------------------------------------------------------------------
# identifications inside a family


@dataclass(frozen=True)
class FamilyIdentifications:
    parameters: tuple[str, ...]
    transformations: tuple[tuple[CycNum, ...], ...]
    normalizer_order: int

    @property
    def order(self) -> int:
        return len(self.transformations)

    def apply(self, index: int, values: dict) -> dict:
        scal = self.transformations[index]
        return {p: values[p] * s for p, s in zip(self.parameters, scal)}

    def is_group(self) -> bool:
        elems = set(self.transformations)
        ident = tuple(CycNum.rational(1) for _ in self.parameters)
        if ident not in elems:
            return False
        return all(tuple(x * y for x, y in zip(g, h)) in elems for g in elems for h in elems)

    def to_json(self) -> dict:
        return {
            "parameters": list(self.parameters),
            "order": self.order,
            "normalizer_order": self.normalizer_order,
            "scalings": [[s.to_text() for s in t] for t in self.transformations],
        }


def _exp_point(p, d: int) -> CycNum:
    q = Fraction(p) % 1
    return zeta(q.denominator, q.numerator, minimal=True) if q else CycNum.rational(1)


def family_identifications(nf: NormalForm) -> FamilyIdentifications:
    """Diagonal diag(1, l2, l3) keeping the reference coefficients equal to 1.

    The overall scalar is fixed by the first reference monomial, so the
    conditions are l^(e - e0) = 1 for every reference exponent e.
    """
    if not nf.reference:
        raise InfiniteNormalizer("no reference monomials")
    e0 = nf.reference[0]
    rows = [(m[1] - e0[1], m[2] - e0[2]) for m in nf.reference[1:]]
    group = solve_torus(rows, 2) if rows else None
    if group is None:
        raise InfiniteNormalizer("reference monomials give a lattice of rank < 2")
    scalings = set()
    for x, y in group.elements():
        out = []
        for _, mon in nf.parameters:
            out.append(_exp_point(x * (mon[1] - e0[1]) + y * (mon[2] - e0[2]), 1))
        scalings.add(tuple(out))
    ordered = sorted(scalings, key=lambda t: tuple((c.normalized_trace(), c.to_text()) for c in t), reverse=True)
    return FamilyIdentifications(tuple(nf.parameter_names), tuple(ordered), group.order)
