"""Diagonal and monomial automorphisms of a form, plus block eliminations.

Parameters left in a form are treated as generic nonzero values; every
report lists the parameters it assumed nonzero.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations

from .cyclotomic import CycNum, is_root_of_unity, zeta
from .forms import (
    Monomial,
    NotSpecialized,
    ParamPoly,
    ProjMatrix,
    TernaryForm,
    is_unknown,
    proportional,
    substitute,
    symbolic_proportional,
)
from .smith import TorusGroup, solve_torus, solve_torus_affine

DEFAULT_BRANCH_LIMIT = 64


class BranchLimitExceeded(RuntimeError):
    pass


class NotAnAutomorphism(AssertionError):
    pass


def _branch_limit() -> int:
    return int(os.environ.get("PLANEAUT_BRANCH_LIMIT", DEFAULT_BRANCH_LIMIT))


def exp_point(q) -> CycNum:
    """exp(2 pi i q) for rational q, as an exact root of unity."""
    q = Fraction(q) % 1
    if not q:
        return CycNum.rational(1)
    return zeta(q.denominator, q.numerator)


def _q_of_root(c: CycNum) -> Fraction | None:
    r = is_root_of_unity(c)
    return None if r is None else Fraction(r[1], r[0])


def verify_automorphism(form: TernaryForm, E: ProjMatrix) -> CycNum | ParamPoly:
    """Return lambda with F o E = lambda F; raise NotAnAutomorphism otherwise."""
    G = substitute(form, E)
    if form.is_specialized() and E.is_specialized:
        lam = proportional(form, G)
        if lam is None:
            raise NotAnAutomorphism(f"{E.to_text()} does not preserve the form")
        return lam
    if not symbolic_proportional(form, G):
        raise NotAnAutomorphism(f"{E.to_text()} does not preserve the form identically")
    m0 = next(iter(form.terms))
    a, b = form.terms[m0], G.terms[m0]
    mono, c = next(iter(a.terms.items()))
    return b.terms[mono] / c


def _sort_key(E: ProjMatrix):
    return tuple(
        (x.constant_value().normalized_trace(), x.constant_value().to_text()) if x.is_constant() else (0, x.to_text())
        for row in E.rows
        for x in row
    )


@dataclass
class StabilizerReport:
    form: TernaryForm
    diagonal_generators: list[ProjMatrix] = field(default_factory=list)
    diagonal_invariants: tuple[int, ...] = ()
    diagonal_order: int | str = "infinite"
    monomial_elements: list[ProjMatrix] = field(default_factory=list)
    nonunity: list[dict] = field(default_factory=list)
    total_order: int | str = "infinite"
    completeness: str = "diagonal-only"
    assumed_nonzero: list[str] = field(default_factory=list)
    blocks: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "form": self.form.to_text(),
            "diagonal": {
                "order": self.diagonal_order,
                "invariants": list(self.diagonal_invariants),
                "generators": [g.to_text() for g in self.diagonal_generators],
            },
            "monomial_elements": [e.to_text() for e in self.monomial_elements],
            "nonunity": self.nonunity,
            "total_order": self.total_order,
            "completeness": self.completeness,
            "assumed_nonzero": self.assumed_nonzero,
            "blocks": {k: v.to_json() for k, v in sorted(self.blocks.items())},
            "notes": self.notes,
        }


def _difference_rows(support: list[Monomial]) -> list[tuple[int, int]]:
    e0 = support[0]
    return [(m[1] - e0[1], m[2] - e0[2]) for m in support[1:]]


def _torus_matrix(x, y) -> ProjMatrix:
    return ProjMatrix.diag(1, exp_point(x), exp_point(y))


def diagonal_group(form: TernaryForm) -> TorusGroup | None:
    if form.is_zero():
        raise ValueError("zero form")
    return solve_torus(_difference_rows(form.support), 2)


def diagonal_stabilizer(form: TernaryForm) -> StabilizerReport:
    """Group of diag(1, v, s) with F(X, vY, sZ) proportional to F."""
    rep = StabilizerReport(form, assumed_nonzero=sorted(form.parameters()))
    group = diagonal_group(form)
    if group is None:
        rep.notes.append("support exponent differences have rank < 2: infinite diagonal stabilizer")
        return rep
    rep.diagonal_invariants = group.invariants
    rep.diagonal_order = group.order
    rep.total_order = group.order
    for d, ex in group.generators:
        E = _torus_matrix(Fraction(ex[0], d), Fraction(ex[1], d))
        verify_automorphism(form, E)
        rep.diagonal_generators.append(E)
    return rep


def diagonal_elements(form: TernaryForm) -> list[ProjMatrix]:
    group = diagonal_group(form)
    if group is None:
        raise ValueError("infinite diagonal stabilizer")
    return [_torus_matrix(x, y) for x, y in group.elements()]


def monomial_stabilizer(form: TernaryForm) -> StabilizerReport:
    """All automorphisms of the shape (permutation) x (diagonal)."""
    if not form.is_specialized():
        raise NotSpecialized(f"parameters remain: {sorted(form.parameters())}")
    rep = diagonal_stabilizer(form)
    if rep.diagonal_order == "infinite":
        rep.completeness = "diagonal-only"
        return rep
    coef = form.numeric_terms()
    support = form.support
    supp = set(support)
    e0 = support[0]
    rows = _difference_rows(support)
    homog = solve_torus(rows, 2)
    elements: list[ProjMatrix] = []
    for perm in permutations(range(3)):

        def image(m):
            new = [0, 0, 0]
            for r in range(3):
                new[perm[r]] += m[r]
            return Monomial(*new)

        if {image(m) for m in support} != supp:
            continue
        rhs = []
        bad = None
        for m in support[1:]:
            ratio = (coef[image(m)] / coef[m]) * (coef[e0] / coef[image(e0)])
            q = _q_of_root(ratio)
            if q is None:
                bad = {"permutation": list(perm), "monomial": m.to_text(), "ratio": ratio.to_text()}
                break
            rhs.append(q)
        if bad is not None:
            rep.nonunity.append(bad)
            continue
        part = solve_torus_affine(rows, rhs, 2)
        if part is None:
            continue
        for hx, hy in homog.elements():
            c1, c2 = exp_point(part[0] + hx), exp_point(part[1] + hy)
            E = ProjMatrix.monomial(perm, (1, c1, c2))
            verify_automorphism(form, E)
            elements.append(E)
    rep.monomial_elements = sorted(elements, key=_sort_key)
    rep.total_order = len(elements)
    rep.completeness = "monomial-complete"
    return rep


# ---------------------------------------------------------------------------
# block eliminations

SHAPES = {
    "fixX": [[1, 0, 0], [0, "_v", "_w"], [0, "_s", "_t"]],
    "fixY": [["_v", 0, "_w"], [0, 1, 0], ["_s", 0, "_t"]],
    "fixZ": [["_v", "_w", 0], ["_s", "_t", 0], [0, 0, 1]],
}

_UNKNOWNS = ("_v", "_w", "_s", "_t")


@dataclass
class BlockCertificate:
    shape: str
    verdict: str
    branches: int
    steps: list[str]
    residual: list[list[str]] = field(default_factory=list)

    @property
    def certified(self) -> bool:
        return self.verdict == "reduces-to-diagonal"

    def to_json(self) -> dict:
        return {
            "shape": self.shape,
            "verdict": self.verdict,
            "branches": self.branches,
            "steps": self.steps,
            "residual": self.residual,
        }


def _unknowns_of(term_mono) -> list[tuple[str, int]]:
    return [(n, e) for n, e in term_mono if is_unknown(n)]


def block_equations(form: TernaryForm, shape: str) -> list[ParamPoly]:
    """Polynomial conditions on v, w, s, t for the block matrix to preserve F."""
    E = ProjMatrix(SHAPES[shape])
    G = substitute(form, E)
    eqs = []
    for m, c in G.terms.items():
        if m not in form.terms:
            eqs.append(c)
    support = form.support
    ref = next((m for m in support if form.terms[m].is_constant()), support[0])
    c_ref, g_ref = form.terms[ref], G.coeff(ref)
    for m in support:
        if m != ref:
            eqs.append(G.coeff(m) * c_ref - g_ref * form.terms[m])
    return [e for e in eqs if not e.is_zero()]


def _fmt_eq(p: ParamPoly) -> str:
    return p.to_text().replace("_", "") + " = 0"


def block_reduce(form: TernaryForm, shape: str, branch_limit: int | None = None) -> BlockCertificate:
    """Try to show that every block automorphism of the given shape is diagonal.

    Rules: a vanishing single term that is a power of one unknown forces that
    unknown to 0; a single term in several unknowns branches; a branch dies when
    it forces a nonzero constant to vanish or makes the block singular.
    """
    if shape not in SHAPES:
        raise ValueError(f"shape must be one of {sorted(SHAPES)}")
    limit = branch_limit if branch_limit is not None else _branch_limit()
    E = ProjMatrix(SHAPES[shape])
    det = E.det()
    eqs0 = block_equations(form, shape)
    steps: list[str] = []
    stack = [({}, eqs0, "")]
    survivors = []
    branches = 1
    while stack:
        assign, eqs, label = stack.pop()
        while True:
            d = det.subs(assign)
            if d.is_zero():
                steps.append(f"{label or 'root'}: block determinant vanishes, branch discarded")
                eqs = None
                break
            eqs = [e.subs({k: 0 for k in assign}) for e in eqs]
            eqs = [e for e in eqs if not e.is_zero()]
            singles = [e for e in eqs if len(e.terms) == 1]
            if not singles:
                break
            chosen = min(singles, key=lambda e: (len(_unknowns_of(next(iter(e.terms)))), e.to_text()))
            unk = _unknowns_of(next(iter(chosen.terms)))
            if not unk:
                steps.append(f"{label or 'root'}: {_fmt_eq(chosen)} is impossible, branch discarded")
                eqs = None
                break
            if len(unk) == 1:
                name = unk[0][0]
                steps.append(f"{label or 'root'}: {_fmt_eq(chosen)} gives {name[1:]} = 0")
                assign = {**assign, name: 0}
                continue
            names = [n for n, _ in unk]
            steps.append(f"{label or 'root'}: {_fmt_eq(chosen)} branches on {', '.join(n[1:] for n in names)}")
            for n in reversed(names):
                branches += 1
                if branches > limit:
                    raise BranchLimitExceeded(f"more than {limit} branches for shape {shape}")
                stack.append(({**assign, n: 0}, eqs, f"{label}{n[1:]}=0;"))
            eqs = None
            break
        if eqs is not None:
            survivors.append((assign, eqs))
    residual = []
    ok = True
    for assign, eqs in survivors:
        if not ("_w" in assign and "_s" in assign):
            ok = False
            residual.append(sorted(_fmt_eq(e) for e in eqs))
    verdict = "reduces-to-diagonal" if ok else "inconclusive"
    return BlockCertificate(shape, verdict, branches, steps, residual)


def aut_lower_bound(form: TernaryForm) -> StabilizerReport:
    """Merge the diagonal, monomial and block computations into one report."""
    if form.is_specialized():
        rep = monomial_stabilizer(form)
    else:
        rep = diagonal_stabilizer(form)
    for shape in SHAPES:
        rep.blocks[shape] = block_reduce(form, shape)
    all_certified = all(c.certified for c in rep.blocks.values())
    if all_certified and rep.diagonal_order != "infinite":
        non_diag = [E for E in rep.monomial_elements if not _is_diagonal(E)]
        if not non_diag:
            rep.completeness = "reduces-to-diagonal-certified"
            rep.total_order = rep.diagonal_order
            rep.notes.append(
                "exact among automorphisms fixing a coordinate point or line; "
                "primitive groups are excluded only by the special-group checks"
            )
    return rep


def _is_diagonal(E: ProjMatrix) -> bool:
    return all(E.rows[i][j].is_zero() for i in range(3) for j in range(3) if i != j)
