"""Hessian groups, Fermat and Klein reference curves, invariant forms, and Upsilon."""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field

import mpmath
import numpy as np

from . import upoly as U
from .cyclotomic import CycNum, is_root_of_unity, zeta
from .forms import (
    Monomial,
    ProjMatrix,
    TernaryForm,
    core_and_exponent,
    monomials_of_degree,
    substitute,
)


class CapExceeded(RuntimeError):
    pass


def omega() -> CycNum:
    return zeta(3)


def hessian_generators() -> dict[str, ProjMatrix]:
    w = omega()
    w2 = w * w
    c = 1 / (w - w2)
    return {
        "S": ProjMatrix.diag(1, w, w2),
        "T": ProjMatrix([[0, 1, 0], [0, 0, 1], [1, 0, 0]]),
        "U": ProjMatrix.diag(1, 1, w),
        "V": ProjMatrix([[c, c, c], [c, c * w, c * w2], [c, c * w2, c * w]]),
    }


def hessian_subgroup_generators(order: int) -> dict[str, ProjMatrix]:
    g = hessian_generators()
    if order == 216:
        return g
    if order == 36:
        return {k: g[k] for k in "STV"}
    if order == 72:
        out = {k: g[k] for k in "STV"}
        out["UVU^-1"] = g["U"] @ g["V"] @ g["U"].inverse()
        return out
    raise ValueError("Hessian subgroups are of order 36, 72 or 216")


def projective_order(E: ProjMatrix, cap: int = 1000) -> int:
    P = E
    for k in range(1, cap + 1):
        if P.is_scalar():
            return k
        P = P @ E
    raise CapExceeded(f"no projective order up to {cap}")


@dataclass
class FiniteMatrixGroup:
    elements: list[ProjMatrix]
    generators: dict[str, ProjMatrix]
    _index: set = field(default_factory=set, repr=False)

    def __post_init__(self):
        self._index = {E.canonical() for E in self.elements}

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, E: ProjMatrix) -> bool:
        return E.canonical() in self._index

    def element_orders(self) -> Counter:
        return Counter(projective_order(E) for E in self.elements)

    def is_closed(self) -> bool:
        return all((A @ B) in self for A in self.elements for B in self.generators.values())

    def is_subgroup_of(self, other: "FiniteMatrixGroup") -> bool:
        return all(E in other for E in self.elements)

    def is_normal_in(self, other: "FiniteMatrixGroup") -> bool:
        if not self.is_subgroup_of(other):
            return False
        for g in other.generators.values():
            gi = g.inverse()
            if not all((gi @ E @ g) in self for E in self.elements):
                return False
        return True

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "generators": {k: v.to_text() for k, v in sorted(self.generators.items())},
            "element_orders": {str(k): v for k, v in sorted(self.element_orders().items())},
        }


def closure(generators, cap: int = 1000) -> FiniteMatrixGroup:
    """Breadth-first closure of the generated projective group."""
    if not isinstance(generators, dict):
        generators = {f"g{i}": g for i, g in enumerate(generators)}
    gens = [g.canonical() for g in generators.values()]
    ident = ProjMatrix.identity()
    seen = {ident}
    out = [ident]
    queue = deque([ident])
    while queue:
        A = queue.popleft()
        for g in gens:
            B = (A @ g).canonical()
            if B not in seen:
                seen.add(B)
                out.append(B)
                if len(out) > cap:
                    raise CapExceeded(f"group has more than {cap} elements")
                queue.append(B)
    return FiniteMatrixGroup(out, dict(generators))


def hessian_group(order: int = 216) -> FiniteMatrixGroup:
    return closure(hessian_subgroup_generators(order))


# ---------------------------------------------------------------------------
# invariant forms


def _nullspace(rows: list[list], ncols: int) -> list[list]:
    """Basis of {x : rows . x = 0} by exact Gauss-Jordan elimination."""
    A = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [CycNum.rational(0)] * ncols
        v[f] = CycNum.rational(1)
        for i, pc in enumerate(pivots):
            v[pc] = -A[i][f]
        basis.append(v)
    return basis


def induced_matrix(E: ProjMatrix, d: int) -> list[list[CycNum]]:
    """Matrix of F -> F o E on the monomial basis of degree d (columns = images)."""
    monos = monomials_of_degree(d)
    idx = {m: i for i, m in enumerate(monos)}
    n = len(monos)
    M = [[CycNum.rational(0)] * n for _ in range(n)]
    for j, m in enumerate(monos):
        img = substitute(TernaryForm(d, {m: 1}), E)
        for mm, c in img.numeric_terms().items():
            M[idx[mm]][j] = c
    return M


def _eigen_candidates(E: ProjMatrix, d: int) -> list[CycNum]:
    r = projective_order(E)
    P = E
    for _ in range(r - 1):
        P = P @ E
    mu = P.entry(0, 0).constant_value() ** d
    n, e = is_root_of_unity(mu)
    # c^r = mu = zeta_n^e; c = zeta_{n r}^(e + n k)
    return [zeta(n * r, e + n * k, minimal=True) for k in range(r)]


@dataclass(frozen=True)
class InvariantSpace:
    characters: tuple[CycNum, ...]
    basis: tuple[TernaryForm, ...]

    def to_json(self) -> dict:
        return {"characters": [c.to_text() for c in self.characters], "basis": [f.to_text() for f in self.basis]}


def invariant_forms(elements, d: int) -> list[InvariantSpace]:
    """Forms F of degree d with F o E = c_E F for every E, by character tuple."""
    elements = list(elements)
    monos = monomials_of_degree(d)
    n = len(monos)
    mats = [induced_matrix(E, d) for E in elements]
    cands = [_eigen_candidates(E, d) for E in elements]
    zero = CycNum.rational(0)
    results = []

    def recurse(k, basis, chars):
        # basis: list of coefficient vectors spanning the current joint eigenspace
        if not basis:
            return
        if k == len(elements):
            forms = tuple(TernaryForm(d, {monos[i]: v[i] for i in range(n) if v[i]}) for v in basis)
            results.append(InvariantSpace(tuple(chars), forms))
            return
        M = mats[k]
        images = [[sum((M[i][j] * v[j] for j in range(n) if v[j] and M[i][j]), zero) for i in range(n)] for v in basis]
        for c in cands[k]:
            # solve sum_l x_l (M - c) v_l = 0
            cols = [[images[l][i] - c * basis[l][i] for l in range(len(basis))] for i in range(n)]
            sol = _nullspace(cols, len(basis))
            new = [[sum((x[l] * basis[l][i] for l in range(len(basis)) if x[l]), zero) for i in range(n)] for x in sol]
            recurse(k + 1, new, chars + [c])

    ident = [[CycNum.rational(int(i == j)) for i in range(n)] for j in range(n)]
    recurse(0, ident, [])
    return results


# ---------------------------------------------------------------------------
# reference curves and descendants


def fermat(d: int) -> TernaryForm:
    return TernaryForm(d, {(d, 0, 0): 1, (0, d, 0): 1, (0, 0, d): 1})


def klein(d: int) -> TernaryForm:
    return TernaryForm(d, {(d - 1, 1, 0): 1, (0, d - 1, 1): 1, (1, 0, d - 1): 1})


def reference_curve(kind: str, d: int) -> tuple[TernaryForm, int]:
    if d < 4:
        raise ValueError("degree must be at least 4")
    kind = kind.lower()
    if kind == "fermat":
        return fermat(d), 6 * d * d
    if kind == "klein":
        return klein(d), 3 * (d * d - 3 * d + 3)
    raise ValueError("kind is 'fermat' or 'klein'")


def klein6_generators() -> list[ProjMatrix]:
    return [
        ProjMatrix([[0, 0, 1], [1, 0, 0], [0, 1, 0]]),
        ProjMatrix.diag(1, zeta(21, 1), zeta(21, -4)),
    ]


def quintic_exclusion_elements() -> dict[str, ProjMatrix]:
    """Coordinate permutations together with diag(1, w, w^2)."""
    w = omega()
    return {
        "[Z;Y;X]": ProjMatrix([[0, 0, 1], [0, 1, 0], [1, 0, 0]]),
        "[X;Z;Y]": ProjMatrix([[1, 0, 0], [0, 0, 1], [0, 1, 0]]),
        "[Y;X;Z]": ProjMatrix([[0, 1, 0], [1, 0, 0], [0, 0, 1]]),
        "[Y;Z;X]": ProjMatrix([[0, 1, 0], [0, 0, 1], [1, 0, 0]]),
        "[X;wY;w^2Z]": ProjMatrix.diag(1, w, w * w),
    }


def descendant_check(form: TernaryForm, candidate_order: int | None = None) -> dict:
    """Compare the core with the Fermat and Klein supports."""
    d = form.degree
    core, exponent = core_and_exponent(form)
    supp = set(core.terms)
    fer = set(fermat(d).terms)
    kl = set(klein(d).terms)
    kl_rev = {Monomial(m[0], m[2], m[1]) for m in kl}
    out = {
        "degree": d,
        "core": core.to_text(),
        "exponent": exponent,
        "fermat_core": supp == fer,
        "klein_core": supp == kl or supp == kl_rev,
        "fermat_order": 6 * d * d,
        "klein_order": 3 * (d * d - 3 * d + 3),
    }
    if candidate_order is not None:
        out["candidate_order"] = candidate_order
        out["divides_fermat"] = (6 * d * d) % candidate_order == 0
        out["divides_klein"] = (3 * (d * d - 3 * d + 3)) % candidate_order == 0
    return out


# ---------------------------------------------------------------------------
# Upsilon and Gamma


def lambda_choices() -> list[CycNum]:
    """The three cube roots of omega = zeta_3."""
    return [zeta(9, 1), zeta(9, 4), zeta(9, 7)]


def upsilon(b1, b2, b3, lam) -> tuple:
    """The four Upsilon polynomials; inputs may be CycNums, Fractions or complex floats."""
    l3 = lam**3
    l6 = l3 * l3
    p = b1 * b3**3
    u1 = b3 * b2**5 + (p + 1) * b2 + b3**5
    u2 = lam**2 * ((5 * l3 + 1) * b3 * b2**5 + (5 * l6 + l3 + (2 * l6 + l3 + 3) * p) * b2 + (l6 + 5) * b3**5)
    u3 = lam**5 * (
        (l6 + 5) * b3 * b2**5 + (5 * l3 + (3 * l6 + 2 * l3 + 1) * p + 1) * b2 + l3 * (5 * l3 + 1) * b3**5
    )
    u4 = lam * (
        lam**4 * (5 * l3 + 1) * b3 * b2**5
        + lam * (l6 + (l6 + 3 * l3 + 2) * p + 5) * b2
        + lam * (5 * l3 + 1) * b3**5
    )
    return u1, u2, u3, u4


def in_gamma(b1, b2, b3, lam) -> bool:
    b1, b2, b3 = (CycNum.coerce(x) for x in (b1, b2, b3))
    if b1.is_zero() or b2.is_zero() or b3.is_zero():
        return False
    u1, u2, u3, u4 = upsilon(b1, b2, b3, CycNum.coerce(lam))
    w2 = omega() ** 2
    return u1 == 1 and u2 == u3 and u3 == w2 * u4


def gamma_membership(b1, b2, b3) -> dict:
    per = {lam.to_text(): in_gamma(b1, b2, b3, lam) for lam in lambda_choices()}
    return {"per_lambda": per, "any": any(per.values())}


def _linear_coeffs(lam: CycNum):
    """Write Upsilon_2..4 as vectors over (A, B, C, P, 1)."""
    l3 = lam**3
    l6 = l3 * l3
    z = CycNum.rational(0)
    u2 = [lam**2 * (5 * l3 + 1), lam**2 * (5 * l6 + l3), lam**2 * (l6 + 5), lam**2 * (2 * l6 + l3 + 3), z]
    u3 = [lam**5 * (l6 + 5), lam**5 * (5 * l3 + 1), lam**5 * l3 * (5 * l3 + 1), lam**5 * (3 * l6 + 2 * l3 + 1), z]
    u4 = [lam**5 * (5 * l3 + 1), lam**2 * (l6 + 5), lam**2 * (5 * l3 + 1), lam**2 * (l6 + 3 * l3 + 2), z]
    return u2, u3, u4


def _linear_conditions(lam: CycNum):
    """Upsilon_2 - Upsilon_3 and Upsilon_3 - w^2 Upsilon_4 over (A, B, C, 1).

    Here A = b3 b2^5, B = b2, C = b3^5, and P = b1 b3^3 b2 has been replaced
    by 1 - A - B - C using Upsilon_1 = 1.
    """
    u2, u3, u4 = _linear_coeffs(lam)
    w2 = omega() ** 2
    e2 = [x - y for x, y in zip(u2, u3)]
    e3 = [x - w2 * y for x, y in zip(u3, u4)]

    def eliminate_p(e):
        a, b, c, p, k = e
        return [a - p, b - p, c - p, k + p]

    return eliminate_p(e2), eliminate_p(e3)


def _rank(rows) -> int:
    return len(rows) - len(_nullspace([list(col) for col in zip(*rows)], len(rows)))


def gamma_reduction(lam) -> dict:
    """Reduce Gamma for one lambda.

    With A = b3 b2^5, B = b2, C = b3^5, P = b1 b3^3 b2 the conditions are
    A + B + C + P = 1 plus two linear equations in A, B, C.  If those have
    rank 2, two of A, B, C are linear in the third (t) and A^5 = C B^25 gives
    a polynomial h(t); each root gives b2 = B, b3 = A / B^5, b1 = P B^14 / A^3.
    With rank 0 the last two conditions hold identically.
    """
    lam = CycNum.coerce(lam)
    f2, f3 = _linear_conditions(lam)
    rank = _rank([f2, f3])
    out = {"lambda": lam, "rank": rank}
    if rank < 2:
        return out
    one, zero = CycNum.rational(1), CycNum.rational(0)
    for t in range(3):
        i, j = [u for u in range(3) if u != t]
        det = f2[i] * f3[j] - f2[j] * f3[i]
        if not det.is_zero():
            break
    else:
        # rank 2 only through the constant column: no solutions at all
        out["h"] = [one]
        out["parameter"] = None
        return out
    # f[i] x_i + f[j] x_j = -(f[t] x_t + f[3])
    lin = {t: [zero, one]}
    lin[i] = U.trim([-(f2[3] * f3[j] - f3[3] * f2[j]) / det, -(f2[t] * f3[j] - f3[t] * f2[j]) / det])
    lin[j] = U.trim([-(f2[i] * f3[3] - f3[i] * f2[3]) / det, -(f2[i] * f3[t] - f3[i] * f2[t]) / det])
    A, B, C = lin[0], lin[1], lin[2]
    B25, A5 = [one], [one]
    for _ in range(25):
        B25 = U.mul(B25, B)
    for _ in range(5):
        A5 = U.mul(A5, A)
    out.update({"parameter": "ABC"[t], "A": A, "B": B, "C": C, "h": U.sub(A5, U.mul(C, B25))})
    return out


def _mp(c: CycNum):
    # exact coefficients to high-precision complex
    total = mpmath.mpc(0)
    for i, q in enumerate(c.coeffs):
        if q:
            total += mpmath.mpf(q.numerator) / q.denominator * mpmath.expjpi(mpmath.mpf(2 * i) / c.order)
    return total


def gamma1_candidates(lam, tol: float = 1e-7) -> list[dict]:
    """Numerical points of Gamma for one lambda when Gamma is finite.

    Each candidate is re-checked with the complex-float Upsilon evaluator.
    """
    red = gamma_reduction(lam)
    if red["rank"] < 2:
        raise ValueError("Gamma is not finite for this lambda: the linear conditions have rank below 2")
    h = red["h"]
    if len(h) < 2:
        return []
    with mpmath.workdps(60):
        roots = [complex(r) for r in mpmath.polyroots([_mp(c) for c in reversed(h)], maxsteps=400, extraprec=400)]
    out = []
    lamc = CycNum.coerce(lam).to_complex()
    w2 = complex(np.exp(4j * np.pi / 3))
    for t in roots:
        A, B, C = (U.evaluate([c.to_complex() for c in red[k]], t) for k in "ABC")
        if abs(A) < tol or abs(B) < tol:
            continue
        P = 1 - A - B - C
        b2, b3, b1 = B, A / B**5, P * B**14 / A**3
        if abs(b3) < tol or abs(b1) < tol:
            continue
        u1, u2, u3, u4 = upsilon(b1, b2, b3, lamc)
        scale = max(1.0, abs(u2), abs(u4))
        ok = abs(u1 - 1) < 1e-6 and abs(u2 - u3) < 1e-6 * scale and abs(u3 - w2 * u4) < 1e-6 * scale
        out.append({"b1": complex(b1), "b2": complex(b2), "b3": complex(b3), "verified": bool(ok)})
    return out


def gamma1_witness(alpha) -> tuple[complex, complex, complex] | None:
    """A float point (alpha, 1, b3) of Gamma when the linear conditions are identities.

    With b2 = 1, Upsilon_1 = 1 reads b3 (b3^4 + alpha b3^2 + 1) = 0, which
    always has a nonzero root.
    """
    if any(gamma_reduction(lam)["rank"] for lam in lambda_choices()):
        return None
    a = CycNum.coerce(alpha).to_complex()
    if a == 0:
        return None
    for s in np.roots([1, a, 1]):
        b3 = complex(np.sqrt(s))
        if abs(b3) > 1e-12:
            return (a, 1 + 0j, b3)
    return None


def gamma_report() -> dict:
    """Structure of Gamma for each admissible lambda."""
    per = {}
    for lam in lambda_choices():
        red = gamma_reduction(lam)
        per[lam.to_text()] = {
            "rank": red["rank"],
            "finite": red["rank"] == 2,
            "degree": len(red["h"]) - 1 if "h" in red else None,
        }
    identities = all(v["rank"] == 0 for v in per.values())
    return {
        "per_lambda": per,
        "linear_conditions_identical": identities,
        "gamma1_is_all_of_K_star": identities,
        "exact_witness": {"point": "(1, 1, zeta(6))", "in_gamma": gamma_membership(1, 1, zeta(6))["any"]},
    }
