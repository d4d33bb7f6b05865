"""Exact arithmetic in cyclotomic fields Q(zeta_N).

A :class:`CyclotomicNumber` stores rational coefficients in the power basis
``1, z, ..., z**(phi(N)-1)`` of Q(zeta_N), reduced modulo the N-th cyclotomic
polynomial.  Every result is renormalised to the smallest conductor whose
field contains it, so two equal values always have identical
``(conductor, coeffs)`` and equality is a tuple comparison.

Conductors congruent to 2 mod 4 never appear: Q(zeta_2m) == Q(zeta_m) for odd
m and inputs are folded down on construction.
"""
from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Sequence

__all__ = [
    "CyclotomicNumber",
    "ZERO",
    "ONE",
    "zeta",
    "cyclo",
    "cyclo_sum",
    "from_sqrt_rational",
    "sqrt_rational",
    "embed",
    "totient",
    "cyclotomic_polynomial",
]


# ---------------------------------------------------------------------------
# number theory helpers


@lru_cache(maxsize=None)
def _divisors(n: int) -> tuple[int, ...]:
    small, large = [], []
    for k in range(1, math.isqrt(n) + 1):
        if n % k == 0:
            small.append(k)
            if k != n // k:
                large.append(n // k)
    return tuple(small + large[::-1])


@lru_cache(maxsize=None)
def _prime_factors(n: int) -> tuple[int, ...]:
    out = []
    p = 2
    while p * p <= n:
        while n % p == 0:
            out.append(p)
            n //= p
        p += 1
    if n > 1:
        out.append(n)
    return tuple(out)


@lru_cache(maxsize=None)
def totient(n: int) -> int:
    result = n
    for p in set(_prime_factors(n)):
        result -= result // p
    return result


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    num = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n)[:-1]:
        num = _poly_div_monic(num, cyclotomic_polynomial(d))
    return tuple(num)


def _poly_div_monic(num: list[int], den: Sequence[int]) -> list[int]:
    num = list(num)
    deg = len(den) - 1
    quot = [0] * (len(num) - deg)
    for k in range(len(num) - 1, deg - 1, -1):
        c = num[k]
        if c:
            quot[k - deg] = c
            for i, di in enumerate(den):
                num[k - deg + i] -= c * di
    if any(num[:deg]):
        raise ArithmeticError("polynomial division is not exact")
    return quot


def _reduce_raw(n: int, raw: list) -> tuple:
    """Reduce coefficients of 1, z, ..., z**(n-1) modulo Phi_n."""
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    a = list(raw)
    for k in range(len(a) - 1, deg - 1, -1):
        c = a[k]
        if c:
            a[k] = 0
            shift = k - deg
            for i in range(deg):
                if phi[i]:
                    a[shift + i] -= c * phi[i]
    return tuple(Fraction(x) for x in a[:deg])


@lru_cache(maxsize=None)
def _lift_matrix(n: int, big: int) -> tuple[tuple[Fraction, ...], ...]:
    """Canonical Q(zeta_big) vectors of zeta_n**j for j < phi(n)."""
    step = big // n
    rows = []
    for j in range(totient(n)):
        raw = [0] * big
        raw[(j * step) % big] = 1
        rows.append(_reduce_raw(big, raw))
    return tuple(rows)


def _lift(n: int, coeffs: tuple, big: int) -> list:
    if n == big:
        return list(coeffs)
    if n == 1:
        out = [Fraction(0)] * totient(big)
        out[0] = coeffs[0]
        return out
    rows = _lift_matrix(n, big)
    out = [Fraction(0)] * totient(big)
    for c, row in zip(coeffs, rows):
        if c:
            for i, r in enumerate(row):
                if r:
                    out[i] += c * r
    return out


@lru_cache(maxsize=None)
def _subfield_solver(n: int, m: int):
    """Data to express an element of Q(zeta_n) in the basis of Q(zeta_m), m | n."""
    cols = _lift_matrix(m, n)  # phi(m) vectors of length phi(n)
    dm = len(cols)
    # greedy choice of dm independent rows of the phi(n) x phi(m) matrix
    echelon: list[tuple[int, list[Fraction]]] = []
    chosen = []
    for i in range(totient(n)):
        row = [cols[j][i] for j in range(dm)]
        v = list(row)
        for piv, e in echelon:
            if v[piv]:
                f = v[piv] / e[piv]
                v = [a - f * b for a, b in zip(v, e)]
        nz = next((k for k, x in enumerate(v) if x), None)
        if nz is not None:
            echelon.append((nz, v))
            chosen.append(i)
            if len(chosen) == dm:
                break
    square = [[cols[j][i] for j in range(dm)] for i in chosen]
    return tuple(chosen), _invert(square), cols


def _invert(mat: list[list[Fraction]]) -> list[list[Fraction]]:
    k = len(mat)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(k)] for i, row in enumerate(mat)]
    for col in range(k):
        piv = next(r for r in range(col, k) if aug[r][col])
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(k):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[k:] for row in aug]


def _in_subfield(n: int, coeffs: tuple, m: int):
    chosen, inv, cols = _subfield_solver(n, m)
    rhs = [coeffs[i] for i in chosen]
    x = [sum((a * b for a, b in zip(row, rhs)), Fraction(0)) for row in inv]
    recon = [Fraction(0)] * len(coeffs)
    for xj, col in zip(x, cols):
        if xj:
            for i, c in enumerate(col):
                if c:
                    recon[i] += xj * c
    if tuple(recon) == tuple(coeffs):
        return tuple(x)
    return None


def _normalize(n: int, coeffs: tuple) -> "CyclotomicNumber":
    if n == 1 or not any(coeffs[1:]):
        return _make(1, (coeffs[0],))
    for m in _divisors(n)[1:-1]:
        if m % 4 == 2:
            continue
        sub = _in_subfield(n, coeffs, m)
        if sub is not None:
            return _make(m, sub)
    return _make(n, coeffs)


def _fold_raw(n: int, coeffs: Sequence) -> tuple[int, list]:
    """Fold an arbitrary-length exponent list into a length-N raw vector with
    N not congruent to 2 mod 4."""
    raw = [Fraction(0)] * n
    for j, c in enumerate(coeffs):
        if c:
            raw[j % n] += Fraction(c)
    if n % 4 == 2:
        m = n // 2
        half = (m + 1) // 2
        folded = [Fraction(0)] * m
        for j, c in enumerate(raw):
            if c:
                # zeta_2m = -zeta_m**((m+1)/2)
                folded[(j * half) % m] += -c if j % 2 else c
        return m, folded
    return n, raw


def _make(n: int, coeffs: tuple) -> "CyclotomicNumber":
    obj = CyclotomicNumber.__new__(CyclotomicNumber)
    obj.conductor = n
    obj.coeffs = coeffs
    obj._hash = None
    return obj


# ---------------------------------------------------------------------------


class CyclotomicNumber:
    """Exact element of a cyclotomic field.

    ``CyclotomicNumber(N, coeffs)`` builds ``sum_j coeffs[j] * zeta_N**j`` for
    any number of coefficients; the value is reduced and moved to its minimal
    conductor.
    """

    __slots__ = ("conductor", "coeffs", "_hash")

    def __init__(self, conductor: int = 1, coeffs: Sequence = (0,)):
        if conductor < 1:
            raise ValueError("conductor must be a positive integer")
        n, raw = _fold_raw(conductor, coeffs)
        other = _normalize(n, _reduce_raw(n, raw))
        self.conductor = other.conductor
        self.coeffs = other.coeffs
        self._hash = None

    # -- predicates ---------------------------------------------------------
    def is_rational(self) -> bool:
        return self.conductor == 1

    def to_fraction(self) -> Fraction:
        if self.conductor != 1:
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def __bool__(self) -> bool:
        return any(self.coeffs)

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        n1, n2 = self.conductor, other.conductor
        if n1 == n2:
            c = tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
            return _make(1, c) if n1 == 1 else _normalize(n1, c)
        big = n1 * n2 // math.gcd(n1, n2)
        a = _lift(n1, self.coeffs, big)
        b = _lift(n2, other.coeffs, big)
        return _normalize(big, tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self):
        return _make(self.conductor, tuple(-c for c in self.coeffs))

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        n1, n2 = self.conductor, other.conductor
        if n2 == 1:
            s = other.coeffs[0]
            if not s:
                return ZERO
            return _make(n1, tuple(c * s for c in self.coeffs))
        if n1 == 1:
            s = self.coeffs[0]
            if not s:
                return ZERO
            return _make(n2, tuple(c * s for c in other.coeffs))
        big = n1 * n2 // math.gcd(n1, n2)
        s1, s2 = big // n1, big // n2
        raw = [Fraction(0)] * big
        for j, a in enumerate(self.coeffs):
            if a:
                for k, b in enumerate(other.coeffs):
                    if b:
                        raw[(j * s1 + k * s2) % big] += a * b
        return _normalize(big, _reduce_raw(big, raw))

    __rmul__ = __mul__

    def galois(self, k: int) -> "CyclotomicNumber":
        """Image under the automorphism zeta -> zeta**k (k coprime to the conductor)."""
        n = self.conductor
        if n == 1:
            return self
        if math.gcd(k, n) != 1:
            raise ValueError(f"{k} is not a unit modulo {n}")
        raw = [Fraction(0)] * n
        for j, c in enumerate(self.coeffs):
            if c:
                raw[(j * k) % n] += c
        return _normalize(n, _reduce_raw(n, raw))

    def conj(self) -> "CyclotomicNumber":
        return self.galois(-1)

    conjugate = conj

    def inverse(self) -> "CyclotomicNumber":
        if not self:
            raise ZeroDivisionError("inverse of zero")
        n = self.conductor
        if n == 1:
            return _make(1, (1 / self.coeffs[0],))
        # product of the other Galois conjugates, divided by the norm
        other = ONE
        for k in range(2, n):
            if math.gcd(k, n) == 1:
                other = other * self.galois(k)
        norm = (self * other).to_fraction()
        return other * Fraction(1, 1) / norm

    def __truediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if other.conductor == 1:
            s = other.coeffs[0]
            if not s:
                raise ZeroDivisionError("division by zero")
            return _make(self.conductor, tuple(c / s for c in self.coeffs))
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def abs2(self) -> "CyclotomicNumber":
        return self * self.conj()

    # -- comparison ---------------------------------------------------------
    def __eq__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self.conductor == other.conductor and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            if self.conductor == 1:
                self._hash = hash(self.coeffs[0])
            else:
                self._hash = hash((self.conductor, self.coeffs))
        return self._hash

    # -- numerics -----------------------------------------------------------
    def __complex__(self) -> complex:
        n = self.conductor
        if n == 1:
            return complex(self.coeffs[0])
        total = 0j
        for j, c in enumerate(self.coeffs):
            if c:
                total += float(c) * _root(n, j)
        return total

    def embed(self) -> complex:
        return complex(self)

    # -- text / json --------------------------------------------------------
    def __repr__(self) -> str:
        cs = ", ".join(str(c) for c in self.coeffs)
        return f"CyclotomicNumber({self.conductor}, [{cs}])"

    def __str__(self) -> str:
        return format_cyclo(self)

    def to_json(self) -> dict:
        return {
            "conductor": self.conductor,
            "coeffs": [[str(c.numerator), str(c.denominator)] for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "CyclotomicNumber":
        coeffs = [Fraction(int(p), int(q)) for p, q in obj["coeffs"]]
        return cls(int(obj["conductor"]), coeffs)


@lru_cache(maxsize=4096)
def _root(n: int, j: int) -> complex:
    j %= n
    # exact values at the quarter turns keep e.g. zeta_4 == 1j bit-for-bit
    if 4 * j % n == 0:
        return (1, 1j, -1, -1j)[4 * j // n]
    return cmath.exp(2j * math.pi * j / n)


ZERO = _make(1, (Fraction(0),))
ONE = _make(1, (Fraction(1),))


def _coerce(x) -> CyclotomicNumber | None:
    if isinstance(x, CyclotomicNumber):
        return x
    if isinstance(x, (int, Fraction, Rational)):
        return _make(1, (Fraction(x),))
    return None


def cyclo(x) -> CyclotomicNumber:
    """Coerce an int, Fraction or CyclotomicNumber."""
    out = _coerce(x)
    if out is None:
        raise TypeError(f"cannot interpret {x!r} as a cyclotomic number")
    return out


def zeta(n: int, k: int = 1) -> CyclotomicNumber:
    """The root of unity exp(2 pi i k / n)."""
    raw = [0] * n
    raw[k % n] = 1
    return CyclotomicNumber(n, raw)


def embed(a) -> complex:
    return complex(cyclo(a))


def cyclo_sum(values: Iterable) -> CyclotomicNumber:
    """Sum many values with a single normalisation at the end."""
    rational = Fraction(0)
    groups: dict[int, list] = {}
    for v in values:
        v = cyclo(v)
        if v.conductor == 1:
            rational += v.coeffs[0]
            continue
        acc = groups.get(v.conductor)
        if acc is None:
            groups[v.conductor] = list(v.coeffs)
        else:
            for i, c in enumerate(v.coeffs):
                if c:
                    acc[i] += c
    if not groups:
        return _make(1, (rational,))
    big = 1
    for n in groups:
        big = big * n // math.gcd(big, n)
    total = [Fraction(0)] * totient(big)
    total[0] += rational
    for n, acc in groups.items():
        for i, c in enumerate(_lift(n, tuple(acc), big)):
            if c:
                total[i] += c
    return _normalize(big, tuple(total))


# ---------------------------------------------------------------------------
# square roots


def _squarefree_split(k: int) -> tuple[int, int]:
    """k = s**2 * m with m square-free; returns (s, m)."""
    s, m = 1, 1
    counts: dict[int, int] = {}
    for p in _prime_factors(k):
        counts[p] = counts.get(p, 0) + 1
    for p, e in counts.items():
        s *= p ** (e // 2)
        if e % 2:
            m *= p
    return s, m


@lru_cache(maxsize=None)
def _sqrt_prime(p: int) -> CyclotomicNumber:
    if p == 2:
        return zeta(8) + zeta(8, 7)
    # quadratic Gauss sum g, with g**2 = (-1)**((p-1)/2) * p
    raw = [0] * p
    for a in range(1, p):
        raw[a] = 1 if pow(a, (p - 1) // 2, p) == 1 else -1
    g = CyclotomicNumber(p, raw)
    if p % 4 == 1:
        return g
    return -zeta(4) * g


def from_sqrt_rational(k: int) -> CyclotomicNumber:
    """Exact square root of a square-free integer as a cyclotomic number.

    Positive ``k`` gives the positive real root; negative ``k`` gives
    ``i * sqrt(-k)``.
    """
    if not isinstance(k, int):
        raise TypeError("k must be an integer")
    if k == 0:
        return ZERO
    mag = abs(k)
    s, _ = _squarefree_split(mag)
    if s != 1:
        raise ValueError(f"{k} is not square-free")
    result = zeta(4) if k < 0 else ONE
    for p in _prime_factors(mag):
        result = result * _sqrt_prime(p)
    return result


def sqrt_rational(q) -> CyclotomicNumber:
    """Square root of any rational (principal branch)."""
    q = Fraction(q)
    if q == 0:
        return ZERO
    sign = -1 if q < 0 else 1
    num, den = abs(q.numerator), q.denominator
    s, m = _squarefree_split(num * den)
    return from_sqrt_rational(sign * m) * Fraction(s, den)


# ---------------------------------------------------------------------------
# pretty printing

_SUB = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")
_SUP = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


def _zeta_str(n: int, k: int) -> str:
    base = "ζ" + str(n).translate(_SUB)
    return base if k == 1 else base + str(k).translate(_SUP)


def _scaled(coef: Fraction, body: str) -> str:
    if coef == 1:
        return body
    if coef == -1:
        return "-" + body
    return f"{coef}*{body}"


def format_cyclo(a: CyclotomicNumber) -> str:
    """Readable form: rationals, r*zeta_N^k monomials, (p+q sqrt m)/r, else a polynomial in zeta."""
    if a.conductor == 1:
        return str(a.coeffs[0])
    n = a.conductor
    mono = _root_monomial(a)
    if mono is not None:
        coef, k = mono
        return _scaled(coef, _zeta_str(n, k))
    quad = _quadratic_form(a)
    if quad is not None:
        return quad
    terms = []
    for j, c in enumerate(a.coeffs):
        if not c:
            continue
        body = "1" if j == 0 else _zeta_str(n, j)
        if j == 0:
            t = str(c)
        else:
            t = _scaled(c, body)
        terms.append(t)
    out = terms[0]
    for t in terms[1:]:
        out += " - " + t[1:] if t.startswith("-") else " + " + t
    return out


def _root_monomial(a: CyclotomicNumber):
    """(r, k) with a == r * zeta_N**k for the conductor N of a, or None."""
    n = a.conductor
    m = n if n % 2 == 0 else 2 * n
    for j in range(1, m):
        z = zeta(m, j)
        q = a * z.conj()
        if q.conductor == 1:
            for k in range(1, n):
                w = zeta(n, k)
                if w == z:
                    return q.coeffs[0], k
                if w == -z:
                    return -q.coeffs[0], k
    return None


def _quadratic_form(a: CyclotomicNumber) -> str | None:
    n = a.conductor
    images = {a}
    for k in range(2, n):
        if math.gcd(k, n) == 1:
            images.add(a.galois(k))
            if len(images) > 2:
                return None
    if len(images) != 2:
        return None
    r = cyclo_sum(images) / 2
    if r.conductor != 1:
        return None
    t = a - r
    q = t * t
    if q.conductor != 1:
        return None
    qf = q.to_fraction()
    s_num, m = _squarefree_split(abs(qf.numerator) * qf.denominator)
    s = Fraction(s_num, qf.denominator)
    m = -m if qf < 0 else m
    if t != from_sqrt_rational(m) * s:
        s = -s
    rf = r.to_fraction()
    den = math.lcm(rf.denominator, s.denominator)
    A, B = int(rf * den), int(s * den)
    root = f"√{m}" if m > 0 else f"i√{-m}"
    if B == 1:
        sq = root
    elif B == -1:
        sq = "-" + root
    else:
        sq = f"{B}{root}"
    if A == 0:
        num = sq
    else:
        num = f"{A}" + (sq if sq.startswith("-") else "+" + sq)
    if den == 1:
        return num
    if A == 0 and B in (1, -1):
        return f"{num}/{den}"
    return f"({num})/{den}"
