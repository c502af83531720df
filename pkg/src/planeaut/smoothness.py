"""Smoothness of plane curves: exact elimination and a finite-field scan.

The exact test works on the partials G_X, G_Y, G_Z of a specialized form.
One partial with a nonzero Y^(d-1) coefficient is monic in y on the patch
Z = 1, so its resultants against the other two vanish exactly at the
x-coordinates of common zeros.  Candidate x-values are then resolved by a gcd
over K[x]/(h) that splits h whenever a zero divisor shows up.  The line Z = 0
is handled by a univariate gcd.
"""

from __future__ import annotations

import os
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import upoly as U
from .cyclotomic import CycNum, lcm
from .forms import Monomial, NotSpecialized, TernaryForm

DEFAULT_MAX_PRIME = 10_000


class NoRootOfUnity(ValueError):
    pass


class BadReduction(ValueError):
    pass


class PrimeTooLarge(ValueError):
    pass


class ThresholdViolation(UserWarning):
    pass


@dataclass
class SmoothnessCertificate:
    verdict: str
    method: str
    witness: dict | None = None
    point: tuple | None = None
    details: list[str] = field(default_factory=list)
    point_count: int | None = None
    prime: int | None = None
    singular_points: list[tuple[int, int, int]] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def smooth(self) -> bool:
        return self.verdict == "smooth"

    def to_json(self) -> dict:
        out = {"verdict": self.verdict, "method": self.method, "details": self.details}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.point is not None:
            out["point"] = [c.to_text() if hasattr(c, "to_text") else str(c) for c in self.point]
        if self.prime is not None:
            out["prime"] = self.prime
            out["point_count"] = self.point_count
            out["singular_points"] = [list(p) for p in self.singular_points]
        if self.warnings:
            out["warnings"] = self.warnings
        return out


def core_necessary(form: TernaryForm) -> bool:
    """Each variable reaches exponent d - 1 somewhere and no variable divides every term."""
    d = form.degree
    if not all(any(m[v] >= d - 1 for m in form.terms) for v in range(3)):
        return False
    return not (d > 1 and any(all(m[v] > 0 for m in form.terms) for v in range(3)))


def _prepare(form: TernaryForm, specialization) -> TernaryForm:
    if specialization:
        form = form.specialize(specialization)
    if not form.is_specialized():
        raise NotSpecialized(f"assign values to {sorted(form.parameters())}")
    return form


def _field_coeffs(form: TernaryForm) -> dict[Monomial, object]:
    terms = form.numeric_terms()
    if all(c.is_rational() for c in terms.values()):
        return {m: c.to_fraction() for m, c in terms.items()}
    return terms


def _diff(coeffs: dict, v: int) -> dict:
    out = {}
    for m, c in coeffs.items():
        if m[v]:
            new = list(m)
            new[v] -= 1
            out[Monomial(*new)] = c * m[v]
    return out


def _eval(coeffs: dict, point) -> object:
    total = Fraction(0)
    for m, c in coeffs.items():
        t = c
        for v in range(3):
            if m[v]:
                t = t * point[v] ** m[v]
        total = total + t
    return total


def _ypoly(coeffs: dict, x, z) -> list:
    """Univariate polynomial in Y after fixing X = x, Z = z."""
    if not coeffs:
        return []
    n = max(m[1] for m in coeffs) + 1
    out = [Fraction(0)] * n
    for m, c in coeffs.items():
        out[m[1]] = out[m[1]] + c * (x ** m[0]) * (z ** m[2])
    return U.trim(out)


def _by_y(coeffs: dict) -> list[list]:
    """Affine (Z = 1) polynomial as a list in y of polynomials in x."""
    if not coeffs:
        return []
    ny = max(m[1] for m in coeffs) + 1
    nx = max(m[0] for m in coeffs) + 1
    grid = [[Fraction(0)] * nx for _ in range(ny)]
    for m, c in coeffs.items():
        grid[m[1]][m[0]] = grid[m[1]][m[0]] + c
    return [U.trim(row) for row in grid]


def _singular_certificate(point, coeffs, method, why) -> SmoothnessCertificate:
    cert = SmoothnessCertificate("singular", method, point=tuple(point), details=[why])
    cert.witness = {"point": [c.to_text() if hasattr(c, "to_text") else str(c) for c in point]}
    parts = [coeffs] + [_diff(coeffs, v) for v in range(3)]
    if any(_eval(p, point) for p in parts):
        raise AssertionError("singular witness does not verify")
    return cert


def is_smooth(form: TernaryForm, specialization=None) -> SmoothnessCertificate:
    """Exact decision whether the specialized form defines a smooth curve."""
    form = _prepare(form, specialization)
    d = form.degree
    coeffs = _field_coeffs(form)
    one, zero = Fraction(1), Fraction(0)
    if not core_necessary(form):
        for v in range(3):
            if all(m[v] < d - 1 for m in coeffs):
                pt = [zero, zero, zero]
                pt[v] = one
                return _singular_certificate(
                    pt, coeffs, "core-check", f"no monomial has {'XYZ'[v]}-degree >= {d - 1}"
                )
    G = [_diff(coeffs, v) for v in range(3)]
    lead = Monomial(0, d - 1, 0)
    order = [i for i in range(3) if G[i].get(lead)]
    if not order:
        return _singular_certificate([zero, one, zero], coeffs, "resultant", "all partials vanish at [0:1:0]")
    i1 = order[0]
    others = [i for i in range(3) if i != i1]

    # line Z = 0, points [1 : t : 0]
    line = [_ypoly(Gi, one, zero) for Gi in G]
    g = []
    for p in line:
        g = U.gcd(g, p)
    if not any(line):
        return _singular_certificate([one, zero, zero], coeffs, "resultant", "partials vanish on Z = 0")
    if U.degree(g) >= 1:
        if U.degree(g) == 1:
            t0 = -g[0] / g[1]
            return _singular_certificate([one, t0, zero], coeffs, "resultant", "singular point on Z = 0")
        cert = SmoothnessCertificate("singular", "resultant", details=["singular point on Z = 0"])
        cert.witness = {"patch": "Z=0, X=1", "y_minpoly": U.to_text(g, "y")}
        return cert

    # affine patch Z = 1
    B = [_by_y(Gi) for Gi in G]
    m = d - 1
    npts = (d - 1) ** 2 + 1
    xs = [Fraction(k) for k in range(npts)]
    res = []
    for j in others:
        nj = len(B[j]) - 1
        if nj < 0:
            return SmoothnessCertificate("singular", "resultant", details=["a partial vanishes identically"])
        vals = [U.resultant(_ypoly(G[i1], x, one), _ypoly(G[j], x, one), m, nj) for x in xs]
        res.append(U.interpolate(xs, vals))
    if not res[0] or not res[1]:
        return SmoothnessCertificate(
            "singular", "resultant", details=["two partials share a component, so they meet the third"]
        )
    h = U.squarefree(U.gcd(res[0], res[1]))
    if U.degree(h) < 1:
        return SmoothnessCertificate("smooth", "resultant", details=[f"resultant gcd is constant; d = {d}"])
    for h1, g1 in _d5_gcd(h, B[i1], B[others[0]]):
        for h2, g2 in _d5_gcd(h1, g1, B[others[1]]):
            if len(g2) >= 2:
                if U.degree(h2) == 1 and len(g2) == 2:
                    x0 = -h2[0] / h2[1]
                    c0 = U.evaluate(g2[0], x0) if g2[0] else zero
                    y0 = -c0 / U.evaluate(g2[1], x0)
                    return _singular_certificate([x0, y0, one], coeffs, "resultant", "singular point on Z = 1")
                cert = SmoothnessCertificate("singular", "resultant", details=["singular point on Z = 1"])
                cert.witness = {
                    "patch": "Z=1",
                    "x_minpoly": U.to_text(h2, "x"),
                    "y_degree": len(g2) - 1,
                }
                return cert
    return SmoothnessCertificate("smooth", "resultant", details=[f"no common zero after splitting; d = {d}"])


# -- gcd over K[x]/(h) with splitting ----------------------------------------


def _inverse_mod(a: list, h: list) -> list:
    r0, r1 = h, U.rem(a, h)
    s0, s1 = [], [Fraction(1)]
    while U.degree(r1) > 0:
        q, r = U.divmod_(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, U.sub(s0, U.mul(q, s1))
    if not r1:
        raise ZeroDivisionError("not invertible")
    return U.rem(U.scale(s1, 1 / r1[0]), h)


def _normalize(h: list, P: list) -> list[tuple[list, list]]:
    P = [U.rem(c, h) if c else [] for c in P]
    while P and not P[-1]:
        P.pop()
    if not P:
        return [(h, [])]
    g = U.gcd(P[-1], h)
    if U.degree(g) == 0:
        inv = _inverse_mod(P[-1], h)
        return [(h, [U.rem(U.mul(c, inv), h) if c else [] for c in P])]
    h2 = U.divmod_(h, g)[0]
    return _normalize(U.monic(g), P) + _normalize(U.monic(h2), P)


def _ydivrem(A: list, B: list, h: list) -> list:
    """Remainder of A by monic B in (K[x]/h)[y]."""
    A = [U.rem(c, h) if c else [] for c in A]
    nb = len(B) - 1
    while len(A) - 1 >= nb and A:
        c = A[-1]
        if c:
            shift = len(A) - 1 - nb
            for i, b in enumerate(B):
                if b:
                    A[shift + i] = U.rem(U.sub(A[shift + i], U.mul(c, b)), h)
        A.pop()
        while A and not A[-1]:
            A.pop()
    return A


def _d5_gcd(h: list, A: list, B: list) -> list[tuple[list, list]]:
    out = []
    for h1, Bn in _normalize(h, B):
        if not Bn:
            out.extend(_normalize(h1, A))
            continue
        out.extend(_d5_gcd(h1, Bn, _ydivrem(A, Bn, h1)))
    return out


# -- finite fields -------------------------------------------------------------


def threshold(d: int) -> int:
    """(d - 1)(d - 2) + 1; primes above it are safe for the reduction arguments."""
    return (d - 1) * (d - 2) + 1


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def minimal_valid_prime(d: int, orders=()) -> int:
    L = 1
    for n in orders:
        L = lcm(L, n)
    p = threshold(d) + 1
    while not (_is_prime(p) and (p - 1) % L == 0):
        p += 1
    return p


def _primitive_root(p: int) -> int:
    n = p - 1
    fac = []
    k, q = n, 2
    while q * q <= k:
        if k % q == 0:
            fac.append(q)
            while k % q == 0:
                k //= q
        q += 1
    if k > 1:
        fac.append(k)
    for g in range(2, p):
        if all(pow(g, n // f, p) != 1 for f in fac):
            return g
    return 1


def reduce_mod_p(values, p: int) -> list[int]:
    """Images of CycNums in F_p under one consistent embedding of the roots of unity."""
    values = [CycNum.coerce(v) for v in values]
    L = 1
    for v in values:
        if not v.is_rational():
            L = lcm(L, v.order)
    if (p - 1) % L:
        raise NoRootOfUnity(f"p = {p} is not 1 mod {L}")
    rL = pow(_primitive_root(p), (p - 1) // L, p)
    out = []
    for v in values:
        r = pow(rL, L // v.order, p) if not v.is_rational() else 1
        acc = 0
        for i, q in enumerate(v.coeffs):
            if not q:
                continue
            if q.denominator % p == 0:
                raise BadReduction(f"{v.to_text()} has a denominator divisible by {p}")
            acc += q.numerator * pow(q.denominator, -1, p) * pow(r, i, p)
        out.append(acc % p)
    return out


def _max_prime() -> int:
    return int(os.environ.get("PLANEAUT_MAX_PRIME", DEFAULT_MAX_PRIME))


def _scan(polys: list[dict], p: int, chunk: int = 1 << 20):
    """Count zeros of polys[0] and list common zeros of all polys on P^2(F_p)."""
    count = 0
    common: list[tuple[int, int, int]] = []
    zs = np.arange(p, dtype=np.int64)
    zpow = [np.ones(p, dtype=np.int64)]
    deg = max(max((max(m) for m in P), default=0) for P in polys)
    for _ in range(deg):
        zpow.append(zpow[-1] * zs % p)

    def ev(P, x, ys):
        # values on the grid [x : y : z] for y in ys, z in F_p
        acc = np.zeros((len(ys), p), dtype=np.int64)
        for (i, j, k), c in P.items():
            coef = c * pow(x, i, p) % p
            if not coef:
                continue
            yj = np.array([pow(int(y), j, p) for y in ys], dtype=np.int64)
            acc = (acc + (coef * yj % p)[:, None] * zpow[k][None, :]) % p
        return acc

    rows_per = max(1, chunk // p)
    patches = [(1, list(range(p))), (0, [1])]
    for x, yvals in patches:
        for s in range(0, len(yvals), rows_per):
            ys = yvals[s : s + rows_per]
            vals = [ev(P, x, ys) for P in polys]
            zero_f = vals[0] == 0
            count += int(zero_f.sum())
            mask = zero_f
            for v in vals[1:]:
                mask &= v == 0
            for a, b in zip(*np.nonzero(mask)):
                common.append((x, ys[a], int(b)))
    # the point [0 : 0 : 1]
    last = [sum(c for m, c in P.items() if m[0] == 0 and m[1] == 0) % p for P in polys]
    if last[0] == 0:
        count += 1
        if all(v == 0 for v in last):
            common.append((0, 0, 1))
    return count, common


def finite_field_check(form: TernaryForm, specialization=None, p: int = 0, theory_valid: bool = False):
    """Scan P^2(F_p) for singular points of the reduction of the form."""
    form = _prepare(form, specialization)
    d = form.degree
    if p > _max_prime():
        raise PrimeTooLarge(f"p = {p} exceeds the scan cap {_max_prime()}")
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    cert_warnings = []
    if p <= threshold(d):
        msg = f"p = {p} <= (d-1)(d-2)+1 = {threshold(d)}"
        if theory_valid:
            raise ValueError(msg)
        warnings.warn(msg, ThresholdViolation, stacklevel=2)
        cert_warnings.append(msg)
    terms = form.numeric_terms()
    monos = list(terms)
    red = reduce_mod_p([terms[m] for m in monos], p)
    F = {m: c for m, c in zip(monos, red) if c}
    polys = [F] + [{mm: c * m[v] % p for m, c in F.items() if m[v] and c * m[v] % p
                    for mm in [Monomial(*[m[u] - (u == v) for u in range(3)])]} for v in range(3)]
    count, common = _scan(polys, p)
    verdict = "singular" if common else "smooth"
    cert = SmoothnessCertificate(
        verdict,
        "finite-field",
        details=[f"scanned {p * p + p + 1} points"],
        point_count=count,
        prime=p,
        singular_points=common[:20],
        warnings=cert_warnings,
    )
    return cert


def ff_diagonal_automorphisms(form: TernaryForm, p: int) -> int:
    """Number of (v, s) in (F_p^*)^2 with F(X, vY, sZ) proportional to F."""
    support = form.support
    e0 = support[0]
    rows = [(m[1] - e0[1], m[2] - e0[2]) for m in support[1:]]
    vs = np.arange(1, p, dtype=np.int64)
    ok = np.ones((p - 1, p - 1), dtype=bool)
    for a, b in rows:
        va = np.array([pow(int(v), a, p) for v in vs], dtype=np.int64)
        sb = np.array([pow(int(s), b, p) for s in vs], dtype=np.int64)
        ok &= (va[:, None] * sb[None, :]) % p == 1
    return int(ok.sum())


def probe_parameter(form: TernaryForm, name: str, values, fixed=None) -> dict:
    """Exact smoothness verdict for each value of one parameter."""
    out = {}
    for v in values:
        spec = dict(fixed or {})
        spec[name] = v
        out[v] = is_smooth(form, spec).verdict
    return out


def orders_of(form: TernaryForm) -> list[int]:
    return sorted({c.order for c in form.numeric_terms().values() if not c.is_rational()})
