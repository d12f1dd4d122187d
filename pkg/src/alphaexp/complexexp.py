"""Alpha-expansions of arbitrary complex numbers.

Inputs are exact rationals carrying a declared error bound, so every floor is
either certified or rejected with :class:`PrecisionError`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .errors import DomainError, PrecisionError
from .finiteness import require_finite
from .gaussian import GaussRat
from .numsys import Expansion, LatticePoint, NumberSystem, expand

FLOOR, CEIL = "floor", "ceil"


@dataclass(frozen=True)
class ComplexInput:
    """Rational approximation ``re + im*i`` of a complex number.

    ``error`` bounds the distance of each coordinate from the true value; an
    error of 0 means the input is exact.
    """

    re: Fraction
    im: Fraction
    error: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("re", "im", "error"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.error < 0:
            raise DomainError("error bound must be non-negative")

    @classmethod
    def exact(cls, x) -> "ComplexInput":
        x = GaussRat.coerce(x)
        return cls(x.re, x.im)

    @property
    def value(self) -> GaussRat:
        return GaussRat(self.re, self.im)

    @property
    def precision_bits(self) -> int | None:
        """Bits of absolute precision, ``None`` for exact input."""
        if self.error == 0:
            return None
        return max(0, math.floor(-math.log2(self.error)))

    def __complex__(self):
        return complex(float(self.re), float(self.im))


def sqrt_input(n: int, bits: int) -> ComplexInput:
    """``sqrt(n)`` rounded down to ``bits`` binary places, error ``2**-bits``."""
    if n < 0:
        raise DomainError("sqrt_input needs n >= 0")
    scale = 1 << bits
    r = isqrt(n * scale * scale)
    exact = r * r == n * scale * scale
    return ComplexInput(Fraction(r, scale), Fraction(0), Fraction(0) if exact else Fraction(1, scale))


def sqrt2(bits: int) -> ComplexInput:
    return sqrt_input(2, bits)


def default_precision(n: int) -> int:
    return 64 + 4 * n


def _scale(ns: NumberSystem, x: ComplexInput, n: int) -> tuple[GaussRat, Fraction, Fraction]:
    """``alpha**n * x`` exactly, plus per-coordinate error bounds of the product."""
    a = ns.alpha_pow(n)
    z = a * x.value
    e = (abs(a.re) + abs(a.im)) * x.error
    return z, e, e


def _coords(ns: NumberSystem, z: GaussRat, err_re: Fraction, err_im: Fraction):
    """``f^-1(z) = (s, t)`` with error bounds, ``f(1) = a2``, ``f(i) = a2*alpha + a1``."""
    if ns.degree == 1:
        return (z.re / ns.a2, err_re / ns.a2), (Fraction(0), Fraction(0))
    b1 = ns.brunotte[1]
    t = z.im / b1.im
    t_err = err_im / abs(b1.im)
    s = (z.re - t * b1.re) / ns.a2
    s_err = (err_re + t_err * abs(b1.re)) / ns.a2
    return (s, s_err), (t, t_err)


def _certified_round(v: Fraction, err: Fraction, mode: str, bits: int | None, what: str) -> int:
    op = math.floor if mode == FLOOR else math.ceil
    lo, hi = op(v - err), op(v + err)
    if lo != hi:
        gap = abs(v - round(v))
        need = None
        if bits is not None:
            extra = 8 if gap == 0 else max(1, math.ceil(math.log2(err / gap)) + 2)
            need = bits + extra
        raise PrecisionError(
            f"{mode} of {what} is ambiguous: {float(v)} +- {float(err)}", required_bits=need
        )
    return lo


def lambda_map(
    ns: NumberSystem, x: ComplexInput, rounding: tuple[str, str] = (FLOOR, FLOOR), _n: int = 0
) -> LatticePoint:
    """Lattice point ``f(floor(f^-1(alpha**_n * x)))``.

    ``rounding`` selects floor or ceiling per Brunotte coordinate.
    """
    z, er, ei = _scale(ns, x, _n)
    (s, se), (t, te) = _coords(ns, z, er, ei)
    bits = x.precision_bits
    lam = _certified_round(s, se, rounding[0], bits, "first coordinate")
    if ns.degree == 1:
        return LatticePoint(lam, 0)
    mu = _certified_round(t, te, rounding[1], bits, "second coordinate")
    return LatticePoint(lam, mu)


def approximate_expansion(
    ns: NumberSystem, x: ComplexInput, n: int, rounding: tuple[str, str] = (FLOOR, FLOOR)
) -> Expansion:
    """``w_n``: the integer expansion of ``lambda(alpha**n x)`` shifted ``n`` places right."""
    if n < 0:
        raise DomainError("n must be >= 0")
    require_finite(ns)
    if ns.degree == 1 and x.im != 0:
        raise DomainError("a real base only expands real numbers")
    p = lambda_map(ns, x, rounding, _n=n)
    e = expand(ns, p)
    if e.is_empty:
        return Expansion((), -1 - n, truncated=True)
    return Expansion(e.digits, e.msb_exponent - n, truncated=True)


def approximation_sequence(
    ns: NumberSystem, x: ComplexInput, ns_range, rounding=(FLOOR, FLOOR)
) -> list[tuple[int, LatticePoint, Expansion, Expansion]]:
    """Rows ``(n, lambda(alpha**n x), integer word, w_n)``."""
    rows = []
    for n in ns_range:
        p = lambda_map(ns, x, rounding, _n=n)
        e = expand(ns, p)
        rows.append((n, p, e, approximate_expansion(ns, x, n, rounding)))
    return rows


def common_prefix_length(a: Expansion, b: Expansion) -> int:
    """Number of leading positions (from the higher msb down) where two words agree.

    Positions below a word's least significant digit count as zeros.
    """
    top = max(a.msb_exponent, b.msb_exponent)
    low = min(a.lsb_exponent, b.lsb_exponent)
    k = 0
    for j in range(top, low - 1, -1):
        if a.digit_at(j) != b.digit_at(j):
            break
        k += 1
    return k


@dataclass(frozen=True)
class NumericValue:
    value: complex
    rounding_error: float
    tail_bound: float

    @property
    def error_bound(self) -> float:
        return self.rounding_error + self.tail_bound


def _round_dyadic(q: Fraction, bits: int) -> Fraction:
    scale = 1 << bits
    return Fraction(round(q * scale), scale)


def tail_bound(ns: NumberSystem, lsb: int) -> float:
    """Bound on ``|sum_{j < lsb} d_j alpha**j|`` over all digit choices."""
    s = ns.abs_alpha
    return ns.digit_max * s ** lsb / (s - 1)


def numeric_evaluate(ns: NumberSystem, e: Expansion, precision_bits: int = 64) -> NumericValue:
    """``sum(d_j alpha**j)`` rounded to ``precision_bits`` places.

    For truncated words the bound also covers every possible continuation.
    """
    if e.is_empty:
        tb = tail_bound(ns, e.lsb_exponent) if e.truncated else 0.0
        return NumericValue(0j, 0.0, tb)
    acc = GaussRat.coerce(0)
    for d in e.digits:
        acc = acc * ns.alpha + d
    acc = acc * ns.alpha_pow(e.lsb_exponent)
    re, im = _round_dyadic(acc.re, precision_bits), _round_dyadic(acc.im, precision_bits)
    # dyadic rounding plus the final conversion to double
    v = complex(float(re), float(im))
    rerr = 2.0 ** (-precision_bits) + abs(v) * 2.0 ** -52
    tb = tail_bound(ns, e.lsb_exponent) if e.truncated else 0.0
    return NumericValue(v, rerr, tb)
