"""Exact arithmetic in the Gaussian integers Z[i] and the Gaussian rationals Q(i).

Also provides unique factorization into Gaussian primes, p-adic valuations and
absolute values, and base-p digit extraction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Union

from .errors import DomainError

RationalLike = Union[int, Fraction]


@dataclass(frozen=True)
class GaussInt:
    """A Gaussian integer ``re + im*i``."""

    re: int
    im: int

    def __post_init__(self):
        if not isinstance(self.re, int) or not isinstance(self.im, int):
            raise TypeError("GaussInt parts must be int")

    @classmethod
    def coerce(cls, x) -> "GaussInt":
        if isinstance(x, GaussInt):
            return x
        if isinstance(x, int):
            return cls(x, 0)
        if isinstance(x, GaussRat) and x.is_integral():
            return cls(int(x.re), int(x.im))
        if isinstance(x, Fraction) and x.denominator == 1:
            return cls(int(x), 0)
        raise TypeError(f"cannot convert {x!r} to GaussInt")

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def conj(self) -> "GaussInt":
        return GaussInt(self.re, -self.im)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_unit(self) -> bool:
        return self.norm() == 1

    def __bool__(self):
        return not self.is_zero()

    def __neg__(self):
        return GaussInt(-self.re, -self.im)

    def __add__(self, other):
        if isinstance(other, GaussInt):
            return GaussInt(self.re + other.re, self.im + other.im)
        if isinstance(other, int):
            return GaussInt(self.re + other, self.im)
        if isinstance(other, (GaussRat, Fraction)):
            return GaussRat.coerce(self) + other
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, GaussInt):
            return GaussInt(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        if isinstance(other, int):
            return GaussInt(self.re * other, self.im * other)
        if isinstance(other, (GaussRat, Fraction)):
            return GaussRat.coerce(self) * other
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        return GaussRat.coerce(self) / other

    def __rtruediv__(self, other):
        return GaussRat.coerce(other) / GaussRat.coerce(self)

    def __pow__(self, e: int):
        if e < 0:
            return GaussRat.coerce(self) ** e
        result = GaussInt(1, 0)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, GaussInt):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        if isinstance(other, GaussRat):
            return other == self
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def divides(self, other: "GaussInt") -> bool:
        """True iff ``self | other`` in Z[i]."""
        other = GaussInt.coerce(other)
        if self.is_zero():
            return other.is_zero()
        n = self.norm()
        p = other * self.conj()
        return p.re % n == 0 and p.im % n == 0

    def exact_div(self, other: "GaussInt") -> "GaussInt":
        other = GaussInt.coerce(other)
        n = other.norm()
        p = self * other.conj()
        if n == 0 or p.re % n or p.im % n:
            raise DomainError(f"{other} does not divide {self}")
        return GaussInt(p.re // n, p.im // n)

    def __complex__(self):
        return complex(self.re, self.im)

    def __str__(self):
        return format_gauss(Fraction(self.re), Fraction(self.im))

    def __repr__(self):
        return f"GaussInt({self.re}, {self.im})"


@dataclass(frozen=True)
class GaussRat:
    """A Gaussian rational ``re + im*i`` with exact rational parts."""

    re: Fraction
    im: Fraction

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @classmethod
    def coerce(cls, x) -> "GaussRat":
        if isinstance(x, GaussRat):
            return x
        if isinstance(x, GaussInt):
            return cls(Fraction(x.re), Fraction(x.im))
        if isinstance(x, (int, Fraction)):
            return cls(Fraction(x), Fraction(0))
        raise TypeError(f"cannot convert {x!r} to GaussRat")

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def conj(self) -> "GaussRat":
        return GaussRat(self.re, -self.im)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_integral(self) -> bool:
        return self.re.denominator == 1 and self.im.denominator == 1

    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self):
        return not self.is_zero()

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __add__(self, other):
        try:
            other = GaussRat.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussRat(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = GaussRat.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussRat(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return GaussRat.coerce(other) - self

    def __mul__(self, other):
        try:
            other = GaussRat.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussRat(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def inverse(self) -> "GaussRat":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        return GaussRat(self.re / n, -self.im / n)

    def __truediv__(self, other):
        try:
            other = GaussRat.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return GaussRat.coerce(other) / self

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = GaussRat(Fraction(1), Fraction(0))
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (GaussRat, GaussInt)):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def common_denominator(self) -> int:
        return math.lcm(self.re.denominator, self.im.denominator)

    def as_fraction(self) -> tuple[GaussInt, int]:
        """Return ``(g, m)`` with ``self == g / m``, ``m > 0`` minimal in Z."""
        m = self.common_denominator()
        return GaussInt(int(self.re * m), int(self.im * m)), m

    def __str__(self):
        return format_gauss(self.re, self.im)

    def __repr__(self):
        return f"GaussRat({self.re!s}, {self.im!s})"


def _fmt_q(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_gauss(re: Fraction, im: Fraction) -> str:
    """Render ``re + im*i`` compactly, e.g. ``-1+3i``, ``6i``, ``1/2-3/2i``."""
    if im == 0:
        return _fmt_q(re)
    if abs(im) == 1:
        im_s = "i"
    else:
        im_s = _fmt_q(abs(im)) + "i"
    if re == 0:
        return ("-" if im < 0 else "") + im_s
    return _fmt_q(re) + ("-" if im < 0 else "+") + im_s


ONE = GaussInt(1, 0)
I = GaussInt(0, 1)
UNITS = (GaussInt(1, 0), GaussInt(0, 1), GaussInt(-1, 0), GaussInt(0, -1))


def normalize(g: GaussInt) -> tuple[GaussInt, GaussInt]:
    """Return ``(u, h)`` with ``g == u*h`` and ``h`` in the sector re > 0, im >= 0.

    Zero normalizes to ``(1, 0)``.
    """
    g = GaussInt.coerce(g)
    if g.is_zero():
        return ONE, g
    for u in UNITS:
        # h = g / u = g * conj(u) since units have norm 1
        h = g * u.conj()
        if h.re > 0 and h.im >= 0:
            return u, h
    raise AssertionError("unreachable")


def associated(a: GaussInt, b: GaussInt) -> bool:
    return normalize(a)[1] == normalize(b)[1]


def _round_div(a: int, n: int) -> int:
    return (2 * a + n) // (2 * n)


def gauss_gcd(a, b) -> GaussInt:
    """Greatest common divisor in Z[i], normalized to the sector re > 0, im >= 0."""
    a = GaussInt.coerce(a)
    b = GaussInt.coerce(b)
    if a.is_zero() and b.is_zero():
        raise DomainError("gcd(0, 0) is undefined")
    while not b.is_zero():
        n = b.norm()
        p = a * b.conj()
        q = GaussInt(_round_div(p.re, n), _round_div(p.im, n))
        a, b = b, a - q * b
    return normalize(a)[1]


@lru_cache(maxsize=None)
def _is_rational_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


@lru_cache(maxsize=4096)
def is_gaussian_prime(p: GaussInt) -> bool:
    p = GaussInt.coerce(p)
    n = p.norm()
    if _is_rational_prime(n):
        return True
    q = isqrt(n)
    if q * q == n and q % 4 == 3 and _is_rational_prime(q):
        return p.re == 0 or p.im == 0
    return False


def _require_prime(p) -> GaussInt:
    p = GaussInt.coerce(p)
    if not is_gaussian_prime(p):
        raise DomainError(f"{p} is not a Gaussian prime")
    return p


def _factor_int(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@lru_cache(maxsize=None)
def _split_prime(q: int) -> GaussInt:
    """A normalized Gaussian prime of norm ``q`` for a rational prime q = 1 mod 4."""
    c = 2
    while pow(c, (q - 1) // 2, q) != q - 1:
        c += 1
    k = pow(c, (q - 1) // 4, q)
    return gauss_gcd(GaussInt(q, 0), GaussInt(k, 1))


def _primes_above(q: int) -> list[GaussInt]:
    if q == 2:
        return [GaussInt(1, 1)]
    if q % 4 == 3:
        return [GaussInt(q, 0)]
    pi = _split_prime(q)
    return [pi, normalize(pi.conj())[1]]


def _sort_key(p: GaussInt):
    return (p.norm(), p.re, p.im)


def _factor_gauss_int(g: GaussInt) -> tuple[GaussInt, dict[GaussInt, int]]:
    factors: dict[GaussInt, int] = {}
    for q in _factor_int(g.norm()):
        for pi in _primes_above(q):
            e = 0
            while pi.divides(g):
                g = g.exact_div(pi)
                e += 1
            if e:
                factors[pi] = e
    if not g.is_unit():
        raise AssertionError(f"factorization left non-unit cofactor {g}")
    return g, factors


@dataclass(frozen=True)
class GaussFactorization:
    """``unit * prod(p**e for p, e in factors)``; exponents may be negative."""

    unit: GaussInt
    factors: tuple[tuple[GaussInt, int], ...]

    def value(self) -> GaussRat:
        out = GaussRat.coerce(self.unit)
        for p, e in self.factors:
            out = out * GaussRat.coerce(p) ** e
        return out

    def __str__(self):
        parts = [str(self.unit)] + [
            f"({p})" + (f"^{e}" if e != 1 else "") for p, e in self.factors
        ]
        return " * ".join(parts)


def factor(x) -> GaussFactorization:
    """Factor a nonzero Gaussian rational into normalized Gaussian primes."""
    x = GaussRat.coerce(x)
    if x.is_zero():
        raise DomainError("cannot factor zero")
    g, m = x.as_fraction()
    u_num, f_num = _factor_gauss_int(g)
    u_den, f_den = _factor_gauss_int(GaussInt(m, 0))
    exps = dict(f_num)
    for p, e in f_den.items():
        exps[p] = exps.get(p, 0) - e
    # x = u_num * P_num / (u_den * P_den), units have inverse conj(u)
    unit = u_num * u_den.conj()
    factors = tuple(sorted(((p, e) for p, e in exps.items() if e), key=lambda t: _sort_key(t[0])))
    return GaussFactorization(unit, factors)


def _int_valuation(g: GaussInt, p: GaussInt) -> int:
    e = 0
    while p.divides(g):
        g = g.exact_div(p)
        e += 1
    return e


def valuation(x, p) -> int | float:
    """The p-adic valuation of a Gaussian rational; ``math.inf`` for zero."""
    p = _require_prime(p)
    x = GaussRat.coerce(x)
    if x.is_zero():
        return math.inf
    g, m = x.as_fraction()
    return _int_valuation(g, p) - _int_valuation(GaussInt(m, 0), p)


def p_abs(x, p) -> Fraction:
    """``N(p) ** -valuation(x, p)`` as an exact rational."""
    v = valuation(x, p)
    if v == math.inf:
        return Fraction(0)
    return Fraction(GaussInt.coerce(p).norm()) ** (-v)


@lru_cache(maxsize=None)
def residue_system(p: GaussInt) -> tuple[GaussInt, ...]:
    """Representatives of Z[i]/(p) indexed by digit values 0..N(p)-1.

    For p above a split or ramified rational prime the rational integers
    0..N(p)-1 already form a complete system. For an inert prime q the digit
    c stands for ``(c mod q) + (c div q)*i``.
    """
    p = _require_prime(p)
    n = p.norm()
    if isqrt(n) ** 2 == n and (p.re == 0 or p.im == 0):
        q = isqrt(n)
        reps = tuple(GaussInt(c % q, c // q) for c in range(n))
    else:
        reps = tuple(GaussInt(c, 0) for c in range(n))
    # complete and irredundant: pairwise differences never divisible by p
    for a in range(n if n <= 400 else 0):
        for b in range(a + 1, n):
            assert not p.divides(reps[a] - reps[b]), "residue system is not complete"
    return reps


def residue_digit(n: GaussInt, p: GaussInt) -> int:
    reps = residue_system(p)
    hits = [c for c, r in enumerate(reps) if p.divides(n - r)]
    assert len(hits) == 1
    return hits[0]


def base_p_digits(n, p, count: int) -> list[int]:
    """Digits c_0..c_{count-1} with n = sum(c_j * p**j) mod p**count."""
    n = GaussInt.coerce(n)
    p = _require_prime(p)
    reps = residue_system(p)
    digits = []
    for _ in range(count):
        c = residue_digit(n, p)
        digits.append(c)
        n = (n - reps[c]).exact_div(p)
    return digits
