"""Exact arithmetic in cyclotomic fields Q(zeta_n).

An element of Q(zeta_n) is stored as its coordinate vector in the power
basis 1, zeta_n, ..., zeta_n^(phi(n)-1), always reduced modulo the n-th
cyclotomic polynomial, so equality over a fixed order is a tuple
comparison.  Mixed-order operands are embedded into Q(zeta_lcm).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational

# Ambient orders above this are rejected early.
MAX_ORDER = 2520


class CyclotomicError(ValueError):
    pass


class OrderTooLarge(CyclotomicError):
    pass


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


@lru_cache(maxsize=None)
def _factorize(n: int) -> tuple[tuple[int, int], ...]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def euler_phi(n: int) -> int:
    result = n
    for p, _ in _factorize(n):
        result = result // p * (p - 1)
    return result


def moebius(n: int) -> int:
    fac = _factorize(n)
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise CyclotomicError(f"order must be positive, got {n}")
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _exact_div_monic(num, cyclotomic_polynomial(d))
    return tuple(num)


def _exact_div_monic(num: list[int], den: tuple[int, ...]) -> list[int]:
    num = list(num)
    dn = len(den) - 1
    q = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c:
            q[i - dn] = c
            for j in range(dn + 1):
                num[i - dn + j] -= c * den[j]
    assert not any(num[:dn]), "non-exact cyclotomic division"
    return q


def _check_order(n: int) -> None:
    if n < 1:
        raise CyclotomicError(f"order must be positive, got {n}")
    if n > MAX_ORDER:
        raise OrderTooLarge(f"cyclotomic order {n} exceeds cap {MAX_ORDER}")


def _reduce(n: int, poly: list) -> tuple[Fraction, ...]:
    """Reduce a coefficient list modulo Phi_n (in place on a copy)."""
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    p = list(poly)
    for i in range(len(p) - 1, deg - 1, -1):
        c = p[i]
        if c:
            base = i - deg
            for j in range(deg):
                if phi[j]:
                    p[base + j] -= c * phi[j]
    if len(p) < deg:
        p.extend([0] * (deg - len(p)))
    return tuple(Fraction(c) for c in p[:deg])


@lru_cache(maxsize=4096)
def _zeta_power(n: int, k: int) -> tuple[Fraction, ...]:
    k %= n
    return _reduce(n, [0] * k + [1])


class CycNum:
    """An exact element of Q(zeta_order)."""

    __slots__ = ("order", "coeffs", "_hash")

    def __init__(self, order: int, coeffs):
        _check_order(order)
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != euler_phi(order):
            coeffs = _reduce(order, list(coeffs))
        self.order = order
        self.coeffs = coeffs
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def _raw(cls, order: int, coeffs: tuple[Fraction, ...]) -> "CycNum":
        obj = cls.__new__(cls)
        obj.order = order
        obj.coeffs = coeffs
        obj._hash = None
        return obj

    @classmethod
    def rational(cls, q) -> "CycNum":
        return cls._raw(1, (Fraction(q),))

    @classmethod
    def coerce(cls, x) -> "CycNum":
        if isinstance(x, CycNum):
            return x
        if isinstance(x, (int, Rational)):
            return cls.rational(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to CycNum")

    # -- structure ----------------------------------------------------
    def embed(self, order: int) -> "CycNum":
        """The same value viewed in Q(zeta_order); order must be a multiple."""
        if order == self.order:
            return self
        if order % self.order:
            raise CyclotomicError(f"cannot embed order {self.order} into {order}")
        _check_order(order)
        step = order // self.order
        poly = [Fraction(0)] * (step * (len(self.coeffs) - 1) + 1)
        for i, c in enumerate(self.coeffs):
            if c:
                poly[i * step] = c
        return CycNum._raw(order, _reduce(order, poly))

    def restrict(self, order: int) -> "CycNum | None":
        """Express self in Q(zeta_order) if it lies there, else None."""
        if order == self.order:
            return self
        if self.order % order:
            big = lcm(self.order, order)
            return self.embed(big).restrict(order)
        # Solve by matching: build the image of each basis vector of the
        # small field and do exact linear algebra over Q.
        small_phi = euler_phi(order)
        basis = [CycNum._raw(order, _zeta_power(order, i)).embed(self.order) for i in range(small_phi)]
        return _solve_in_basis(self, basis, order)

    def minimal(self) -> "CycNum":
        """Representation over the smallest order field that contains self."""
        n = self.order
        if n == 1:
            return self
        if self.is_rational():
            return CycNum.rational(self.coeffs[0])
        for d in sorted(_divisors(n)):
            if d == n:
                break
            if d % 4 == 2:
                continue
            r = self.restrict(d)
            if r is not None:
                return r
        if n % 4 == 2:
            r = self.restrict(n // 2)
            if r is not None:
                return r
        return self

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise CyclotomicError(f"{self} is not rational")
        return self.coeffs[0]

    def normalized_trace(self) -> Fraction:
        """Tr(self)/phi(order); invariant under embeddings."""
        n = self.order
        total = Fraction(0)
        for i, c in enumerate(self.coeffs):
            if c:
                m = n // gcd(i, n)
                total += c * Fraction(moebius(m), euler_phi(m))
        return total

    def to_complex(self) -> complex:
        import cmath

        n = self.order
        return sum(
            (float(c) * cmath.exp(2j * cmath.pi * i / n) for i, c in enumerate(self.coeffs) if c),
            0j,
        )

    def conjugate_by(self, k: int) -> "CycNum":
        """Galois action zeta -> zeta^k, gcd(k, order) = 1."""
        n = self.order
        if gcd(k, n) != 1:
            raise CyclotomicError("Galois exponent must be a unit")
        poly = [Fraction(0)] * n
        for i, c in enumerate(self.coeffs):
            if c:
                poly[(i * k) % n] += c
        return CycNum._raw(n, _reduce(n, poly))

    # -- arithmetic ---------------------------------------------------
    def _align(self, other) -> tuple["CycNum", "CycNum"]:
        other = CycNum.coerce(other)
        if self.order == other.order:
            return self, other
        n = lcm(self.order, other.order)
        return self.embed(n), other.embed(n)

    def __add__(self, other):
        try:
            a, b = self._align(other)
        except TypeError:
            return NotImplemented
        return CycNum._raw(a.order, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycNum._raw(self.order, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        try:
            a, b = self._align(other)
        except TypeError:
            return NotImplemented
        return CycNum._raw(a.order, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            q = Fraction(other)
            return CycNum._raw(self.order, tuple(x * q for x in self.coeffs))
        try:
            a, b = self._align(other)
        except TypeError:
            return NotImplemented
        if a.order == 1:
            return CycNum._raw(1, (a.coeffs[0] * b.coeffs[0],))
        if b.is_rational():
            q = b.coeffs[0]
            return CycNum._raw(a.order, tuple(x * q for x in a.coeffs))
        if a.is_rational():
            q = a.coeffs[0]
            return CycNum._raw(a.order, tuple(x * q for x in b.coeffs))
        prod = [Fraction(0)] * (len(a.coeffs) + len(b.coeffs) - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        prod[i + j] += x * y
        return CycNum._raw(a.order, _reduce(a.order, prod))

    __rmul__ = __mul__

    def inverse(self) -> "CycNum":
        if self.is_zero():
            raise ZeroDivisionError("division by zero in cyclotomic field")
        if self.is_rational():
            return CycNum._raw(self.order, _scalar_vec(self.order, 1 / self.coeffs[0]))
        phi = [Fraction(c) for c in cyclotomic_polynomial(self.order)]
        inv = _poly_inverse_mod(list(self.coeffs), phi)
        return CycNum._raw(self.order, _reduce(self.order, inv))

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            if other == 0:
                raise ZeroDivisionError("division by zero in cyclotomic field")
            q = Fraction(other)
            return CycNum._raw(self.order, tuple(x / q for x in self.coeffs))
        try:
            other = CycNum.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return CycNum.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = CycNum.rational(1).embed(self.order) if self.order > 1 else CycNum.rational(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- comparison ---------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Rational)):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, CycNum):
            return NotImplemented
        if self.order == other.order:
            return self.coeffs == other.coeffs
        a, b = self._align(other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.normalized_trace())
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"CycNum({self.to_text()})"

    def to_text(self) -> str:
        """Literal syntax understood by the form parser."""
        root = self._root_text()
        if root is not None:
            return root
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                parts.append(_fmt_q(c))
                continue
            root = f"zeta({self.order})" + (f"^{i}" if i > 1 else "")
            if c == 1:
                parts.append(root)
            elif c == -1:
                parts.append("-" + root)
            else:
                parts.append(f"{_fmt_q(c)}*{root}")
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def is_simple_text(self) -> bool:
        """True when to_text() needs no parentheses as a factor."""
        nz = [c for c in self.coeffs if c]
        return len(nz) <= 1 or self._root_text() is not None

    def _root_text(self) -> str | None:
        # roots of unity outside the power basis print as zeta(N)^e
        nz = [c for c in self.coeffs if c]
        if len(nz) <= 1 or any(abs(c) != 1 for c in nz):
            return None
        r = is_root_of_unity(self)
        if r is None:
            return None
        n, e = r
        return f"zeta({n})" + (f"^{e}" if e > 1 else "")


def _fmt_q(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _scalar_vec(order: int, q: Fraction) -> tuple[Fraction, ...]:
    return (q,) + (Fraction(0),) * (euler_phi(order) - 1)


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _poly_trim(p: list) -> list:
    while p and not p[-1]:
        p.pop()
    return p


def _poly_divmod(a: list, b: list) -> tuple[list, list]:
    a = _poly_trim(list(a))
    b = _poly_trim(list(b))
    if not b:
        raise ZeroDivisionError
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    inv = 1 / Fraction(b[-1])
    while len(a) >= len(b) and a:
        c = a[-1] * inv
        s = len(a) - len(b)
        q[s] = c
        for j, bj in enumerate(b):
            a[s + j] -= c * bj
        a.pop()
        _poly_trim(a)
    return q, a


def _poly_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    return _poly_trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def _poly_inverse_mod(a: list, m: list) -> list:
    """u with u*a = 1 mod m over Q (m irreducible, a nonzero mod m)."""
    r0, r1 = _poly_trim(list(m)), _poly_trim(list(a))
    s0, s1 = [], [Fraction(1)]
    while len(r1) > 1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
    if not r1:
        raise ZeroDivisionError("element not invertible")
    c = r1[0]
    return [x / c for x in s1]


def _solve_in_basis(x: CycNum, basis: list[CycNum], order: int) -> CycNum | None:
    """Find rationals q with sum q_i basis_i = x (basis in x's field)."""
    rows = len(x.coeffs)
    cols = len(basis)
    mat = [[basis[j].coeffs[i] for j in range(cols)] + [x.coeffs[i]] for i in range(rows)]
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if mat[i][c]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [v * inv for v in mat[r]]
        for i in range(rows):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [vi - f * vr for vi, vr in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    if any(mat[i][cols] for i in range(r, rows)):
        return None
    sol = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        sol[c] = mat[i][cols]
    return CycNum._raw(order, tuple(sol))


def zeta(n: int, k: int = 1, minimal: bool = False) -> CycNum:
    """zeta_n^k; with minimal=True the order is reduced to n/gcd(n, k)."""
    _check_order(n)
    if minimal:
        g = gcd(n, k % n) if k % n else n
        n, k = n // g, (k % n) // g if k % n else 0
    return CycNum._raw(n, _zeta_power(n, k))


ONE = CycNum.rational(1)
ZERO = CycNum.rational(0)


def arith(a: CycNum, b: CycNum, op: str) -> CycNum:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def is_root_of_unity(a) -> tuple[int, int] | None:
    """(N, e) with a = zeta_N^e and N minimal, or None."""
    a = CycNum.coerce(a)
    n = a.order
    if a.is_zero():
        return None
    if a.is_rational():
        q = a.coeffs[0]
        if q == 1:
            return (1, 0)
        if q == -1:
            return (2, 1)
        return None
    for k in range(n):
        b = a * CycNum._raw(n, _zeta_power(n, -k))
        if not b.is_rational():
            continue
        q = b.coeffs[0]
        if q == 1:
            big, e = n, k
        elif q == -1:
            big, e = 2 * n, (2 * k + n) % (2 * n)
        else:
            return None
        g = gcd(big, e)
        return (big // g, e // g)
    return None


def multiplicative_order(a) -> int | None:
    r = is_root_of_unity(a)
    return None if r is None else r[0]


def root_of_unity(order: int, exponent: int) -> CycNum:
    """zeta_order^exponent at minimal order (convenience for solvers)."""
    return zeta(order, exponent, minimal=True)
