"""Fixed points of a cyclic diagonal action on a curve and the Hurwitz count."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import upoly as U
from .actions import DiagAction
from .forms import NotSpecialized, TernaryForm, proportional, substitute
from .stabilizer import NotAnAutomorphism


class NonIntegralGenus(ValueError):
    pass


REFERENCE_POINTS = {"[1:0:0]": 0, "[0:1:0]": 1, "[0:0:1]": 2}

# line name -> (coordinate set to zero, the two remaining coordinates)
LINES = {"Y=0": (1, (0, 2)), "Z=0": (2, (0, 1)), "X=0": (0, (1, 2))}


def genus(d: int) -> int:
    return (d - 1) * (d - 2) // 2


def line_stabilizers(act: DiagAction) -> dict[str, int]:
    """Order of the stabilizer of a non-reference point of each reference line."""
    m = act.m
    return {"Y=0": gcd(act.b, m), "Z=0": gcd(act.a, m), "X=0": gcd(act.b - act.a, m)}


def fixed_data(act: DiagAction) -> dict:
    """Fixed loci of every nontrivial power of the generator."""
    m = act.m
    powers = []
    for t in range(1, m):
        ex = tuple((t * e) % m for e in act.exponents)
        entry = {"power": t, "exponents": list(ex), "fixed_points": list(REFERENCE_POINTS)}
        lines = []
        if ex[1] == ex[2]:
            lines.append("X=0")
        if ex[0] == ex[2]:
            lines.append("Y=0")
        if ex[0] == ex[1]:
            lines.append("Z=0")
        if lines:
            entry["fixed_line"] = lines[0]
        powers.append(entry)
    return {
        "type": act.label(),
        "reference_points": {p: m for p in REFERENCE_POINTS},
        "line_stabilizers": line_stabilizers(act),
        "powers": powers,
    }


@dataclass(frozen=True)
class RamificationProfile:
    m: int
    entries: tuple[tuple[int, int], ...]
    g0: int
    g: int
    sources: tuple[tuple[str, int, int], ...] = ()

    def __post_init__(self):
        for e, count in self.entries:
            if e <= 1 or self.m % e:
                raise ValueError(f"ramification index {e} does not divide {self.m}")
            if count < 1:
                raise ValueError("point counts must be positive")
        if self.g0 < 0 or self.g < 0:
            raise NonIntegralGenus(f"negative genus: g = {self.g}, g0 = {self.g0}")
        total = sum((e - 1) * c for e, c in self.entries)
        if 2 * self.g - 2 != self.m * (2 * self.g0 - 2) + total:
            raise ValueError("Hurwitz identity fails")

    @property
    def branch_points(self) -> int:
        return sum(c * e // self.m for e, c in self.entries)

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "g": self.g,
            "g0": self.g0,
            "entries": [{"index": e, "points": c} for e, c in self.entries],
            "sources": [{"locus": s, "index": e, "points": c} for s, e, c in self.sources],
        }


def _binary_restriction(coeffs: dict, zero: int, keep: tuple[int, int], d: int) -> list:
    """F on the line x_zero = 0, as a polynomial in u = x_keep[0] / x_keep[1]."""
    out = [Fraction(0)] * (d + 1)
    for mono, c in coeffs.items():
        if mono[zero] == 0:
            out[mono[keep[0]]] = out[mono[keep[0]]] + c
    return out


def _count_line_points(coeffs: dict, line: str, d: int) -> int:
    zero, keep = LINES[line]
    poly = _binary_restriction(coeffs, zero, keep, d)
    if not any(poly):
        raise NonIntegralGenus(f"the curve contains the line {line}")
    # strip the two reference points of the line
    while not poly[0]:
        poly = poly[1:]
    poly = U.trim(poly)
    if U.degree(poly) < 1:
        return 0
    if U.degree(U.gcd(poly, U.derivative(poly))) > 0:
        raise NonIntegralGenus(f"the restriction to {line} has a repeated root (tangency or singularity)")
    return U.degree(poly)


def ramification_profile(form: TernaryForm, act: DiagAction, specialization=None) -> RamificationProfile:
    if specialization:
        form = form.specialize(specialization)
    if not form.is_specialized():
        raise NotSpecialized(f"assign values to {sorted(form.parameters())}")
    if proportional(form, substitute(form, act.matrix())) is None:
        raise NotAnAutomorphism(f"type {act} does not act on the curve")
    d, m = form.degree, act.m
    terms = form.numeric_terms()
    coeffs = {k: (c.to_fraction() if c.is_rational() else c) for k, c in terms.items()}
    sources = []
    for name, v in REFERENCE_POINTS.items():
        pure = tuple(d if u == v else 0 for u in range(3))
        if not any(mono == pure for mono in coeffs):
            sources.append((name, m, 1))
    for line, s in line_stabilizers(act).items():
        if s > 1:
            count = _count_line_points(coeffs, line, d)
            if count:
                sources.append((line, s, count))
    merged: dict[int, int] = {}
    for _, e, c in sources:
        merged[e] = merged.get(e, 0) + c
    entries = tuple(sorted(merged.items(), reverse=True))
    g = genus(d)
    total = sum((e - 1) * c for e, c in entries)
    num = Fraction(2 * g - 2 - total, m) + 2
    if num.denominator != 1 or num.numerator % 2:
        raise NonIntegralGenus(f"Hurwitz gives g0 = {num / 2} for type {act}")
    g0 = num.numerator // 2
    if g0 < 0:
        raise NonIntegralGenus(f"Hurwitz gives negative g0 = {g0} for type {act}")
    for e, c in entries:
        if c % (m // e):
            raise NonIntegralGenus(f"{c} points of index {e} do not form orbits of size {m // e}")
    return RamificationProfile(m, entries, g0, g, tuple(sources))
