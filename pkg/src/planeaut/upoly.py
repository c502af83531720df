"""Dense univariate polynomials over an exact field.

A polynomial is a list of coefficients, lowest degree first, with no trailing
zeros.  Coefficients may be Fractions or CycNums; only field operations and
truthiness (nonzero test) are used.
"""

from __future__ import annotations

from fractions import Fraction


def trim(p: list) -> list:
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def degree(p: list) -> int:
    return len(p) - 1


def add(a: list, b: list) -> list:
    n = max(len(a), len(b))
    zero = Fraction(0)
    return trim([(a[i] if i < len(a) else zero) + (b[i] if i < len(b) else zero) for i in range(n)])


def neg(a: list) -> list:
    return [-c for c in a]


def sub(a: list, b: list) -> list:
    return add(a, neg(b))


def scale(a: list, c) -> list:
    return trim([x * c for x in a])


def mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return trim(out)


def divmod_(a: list, b: list) -> tuple[list, list]:
    b = trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = trim(a)
    if len(r) < len(b):
        return [], r
    q = [Fraction(0)] * (len(r) - len(b) + 1)
    inv = 1 / b[-1]
    while len(r) >= len(b) and r:
        shift = len(r) - len(b)
        c = r[-1] * inv
        q[shift] = c
        for i, y in enumerate(b):
            r[shift + i] = r[shift + i] - c * y
        r.pop()
        r = trim(r)
    return trim(q), r


def rem(a: list, b: list) -> list:
    return divmod_(a, b)[1]


def monic(a: list) -> list:
    a = trim(a)
    if not a:
        return a
    inv = 1 / a[-1]
    return [x * inv for x in a]


def gcd(a: list, b: list) -> list:
    a, b = trim(a), trim(b)
    while b:
        a, b = b, rem(a, b)
    return monic(a)


def derivative(a: list) -> list:
    return trim([a[i] * i for i in range(1, len(a))])


def squarefree(a: list) -> list:
    """Monic square-free part (characteristic zero)."""
    a = trim(a)
    if len(a) <= 1:
        return monic(a) if a else []
    g = gcd(a, derivative(a))
    return monic(divmod_(a, g)[0])


def evaluate(a: list, x):
    out = Fraction(0)
    for c in reversed(a):
        out = out * x + c
    return out


def resultant(a: list, b: list, deg_a: int | None = None, deg_b: int | None = None):
    """Resultant with formal degrees; a must have its full formal degree.

    If b has actual degree below deg_b the Sylvester determinant picks up
    lc(a)^(deg_b - deg b).
    """
    a, b = trim(a), trim(b)
    m = degree(a) if deg_a is None else deg_a
    n = degree(b) if deg_b is None else deg_b
    if degree(a) != m:
        raise ValueError("first argument must attain its formal degree")
    if not b:
        return Fraction(0)
    factor = a[-1] ** (n - degree(b)) if n > degree(b) else Fraction(1)
    return factor * _res(a, b)


def _res(a: list, b: list):
    m, n = degree(a), degree(b)
    if n == 0:
        return b[0] ** m
    if m == 0:
        return a[0] ** n
    r = rem(a, b)
    if not r:
        return Fraction(0)
    sign = -1 if (m * n) % 2 else 1
    return sign * b[-1] ** (m - degree(r)) * _res(b, r)


def interpolate(xs: list, ys: list) -> list:
    """Newton interpolation through (xs[i], ys[i])."""
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    out: list = []
    for i in range(n - 1, -1, -1):
        out = add(mul(out, [-xs[i], Fraction(1)]), [coef[i]])
    return trim(out)


def to_text(a: list, var: str = "x") -> str:
    parts = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if not c:
            continue
        ct = c.to_text() if hasattr(c, "to_text") else str(c)
        if i and ct in ("1", "-1"):
            ct = ct[:-1]
        elif i and (" " in ct):
            ct = f"({ct})"
        mon = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if i and ct and ct != "-":
            mon = "*" + mon
        parts.append(f"{ct}{mon}")
    return " + ".join(parts).replace("+ -", "- ") if parts else "0"
