"""Smith normal form over the integers and the torus solvers built on it.

A system of binomial equations v^a_i * s^b_i = r_i over roots of unity is
linear in exponents: writing v = exp(2 pi i x), s = exp(2 pi i y) it reads
a_i x + b_i y = rho_i (mod 1).  The Smith form U M V = D diagonalises it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


def smith_normal_form(matrix: list[list[int]]):
    """Return (D, U, V) with U @ M @ V = D, U and V unimodular.

    D is diagonal (rectangular) with d_1 | d_2 | ..., non-negative.
    """
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    A = [list(map(int, row)) for row in matrix]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, f):  # row_dst += f * row_src
        A[dst] = [a + f * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + f * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, f):
        for row in A:
            row[dst] += f * row[src]
        for row in V:
            row[dst] += f * row[src]

    t = 0
    while t < min(m, n):
        # pick the smallest nonzero entry in the trailing block as pivot
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        done = False
        while not done:
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    add_row(t, i, -q)
                    if A[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    add_col(t, j, -q)
                    if A[t][j]:
                        swap_cols(t, j)
                        done = False
            if done:
                # enforce divisibility of the trailing block
                for i in range(t + 1, m):
                    bad = next((j for j in range(t + 1, n) if A[i][j] % A[t][t]), None)
                    if bad is not None:
                        add_row(i, t, 1)
                        done = False
                        break
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
        t += 1
    return A, U, V


def rank_and_invariants(D: list[list[int]]) -> tuple[int, list[int]]:
    diag = [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]
    nz = [d for d in diag if d]
    return len(nz), nz


@dataclass(frozen=True)
class TorusGroup:
    """Finite subgroup of (Q/Z)^n given by cyclic generators.

    Each generator is (d, exponents) meaning the point exponents/d.
    """

    ncols: int
    generators: tuple[tuple[int, tuple[int, ...]], ...]
    invariants: tuple[int, ...]

    @property
    def order(self) -> int:
        out = 1
        for d in self.invariants:
            out *= d
        return out

    def elements(self) -> list[tuple[Fraction, ...]]:
        pts = [tuple(Fraction(0) for _ in range(self.ncols))]
        for d, ex in self.generators:
            new = []
            for p in pts:
                for t in range(d):
                    new.append(tuple((x + Fraction(t * e, d)) % 1 for x, e in zip(p, ex)))
            pts = new
        return sorted(set(pts))


def _ncols(rows, ncols):
    if ncols is not None:
        return ncols
    return len(rows[0])


def solve_torus(rows: list[tuple[int, ...]], ncols: int | None = None) -> TorusGroup | None:
    """Solutions x in (Q/Z)^n of rows . x = 0 (mod 1); None when infinite."""
    n = _ncols(rows, ncols)
    if not rows:
        return None if n else TorusGroup(0, (), ())
    D, U, V = smith_normal_form([list(r) for r in rows])
    r, inv = rank_and_invariants(D)
    if r < n:
        return None
    gens = []
    for i, d in enumerate(inv):
        if d > 1:
            gens.append((d, tuple(V[k][i] % d for k in range(n))))
    return TorusGroup(n, tuple(gens), tuple(d for d in inv if d > 1))


def solve_torus_affine(rows: list[tuple[int, ...]], rhs: list[Fraction], ncols: int | None = None):
    """One solution x of rows . x = rhs (mod 1), or None if inconsistent.

    Raises ValueError if the homogeneous system has infinitely many
    solutions (the caller decides how to report that).
    """
    n = _ncols(rows, ncols)
    D, U, V = smith_normal_form([list(r) for r in rows])
    r, inv = rank_and_invariants(D)
    if r < n:
        raise ValueError("rank-deficient binomial system")
    urhs = [sum(Fraction(u) * Fraction(b) for u, b in zip(Urow, rhs)) for Urow in U]
    for i in range(r, len(rows)):
        if urhs[i] % 1:
            return None
    phi = [urhs[i] / inv[i] for i in range(n)]
    x = tuple(sum(Fraction(V[k][i]) * phi[i] for i in range(n)) % 1 for k in range(n))
    return x
