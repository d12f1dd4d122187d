"""p-adic convergence of digit series and expansions of ambinumbers.

A word ``d_k ... d_l ...`` is an alpha-expansion exactly when its partial sums
``S_l`` tend to 0 in every completion ``K_p`` with ``p | den(alpha)``. On finite
windows the prefix ending at exponent ``l`` is a lattice point iff
``S_l * alpha**(1-l)`` lies in the closure ``R_p`` of ``Z[1/alpha]`` for every
such ``p``. With ``r_p`` the exponent of ``p`` in ``den(alpha)`` this forces
``v_p(S_l) >= r_p * (1 - l)``; the bound alone suffices when ``R_p`` is the
full valuation ring (split primes, or ``r_p = 1`` at ``1+i``), but an inert
prime in the denominator makes ``R_p`` a proper suborder.

Ambinumbers ``(x, y)`` pair a complex number with a lattice point embedded
diagonally in all ``K_p``; their expansions are assembled from ``(x, 0)``, the
word of ``(0, 1)`` and digit multiplication.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .complexexp import ComplexInput, NumericValue, approximate_expansion, numeric_evaluate
from .digitarith import add, multiply
from .errors import DomainError, PrecisionError
from .finiteness import require_finite
from .gaussian import GaussInt, GaussRat, factor, valuation
from .numsys import (
    Expansion,
    LatticePoint,
    NumberSystem,
    evaluate,
    expand,
    lattice_value,
    require_lattice,
    validate_expansion,
)

GUARD_DIGITS = 12


def den_primes(ns: NumberSystem) -> list[tuple[GaussInt, int]]:
    """``(p, r_p)`` for the primes dividing ``den(alpha)``, smallest norm first."""
    if ns.den.is_unit():
        return []
    return list(factor(ns.den).factors)


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    """``(g, s, t)`` with ``s*a + t*b == g == gcd(a, b)``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    return a, s0, t0


def _hnf2(vectors) -> tuple[int, int, int]:
    """Basis ``(h11, h12), (0, h22)`` of the Z-span of full-rank vectors in Z**2."""
    px = py = g2 = 0
    for x, y in vectors:
        if x == 0:
            g2 = math.gcd(g2, y)
        elif px == 0:
            px, py = x, y
        else:
            g, s, t = _egcd(px, x)
            g2 = math.gcd(g2, (x // g) * py - (px // g) * y)
            px, py = g, s * py + t * y
    if px < 0:
        px, py = -px, -py
    return px, py % g2, g2


def _rational_prime(p: GaussInt) -> tuple[int, int, bool]:
    """``(l, e, split)``: the rational prime under ``p``, ramification index, splitting."""
    n = p.norm()
    if n == 2:
        return 2, 2, False
    if p.im == 0:
        return p.re, 1, False
    return n, 1, True


@dataclass(frozen=True)
class LocalOrder:
    """The closure ``R_p`` of ``Z[1/alpha]`` in ``K_p``.

    ``R_p`` contains ``l**conductor * O_p``; modulo that ideal it is the span of
    ``(re, im)`` vectors with Hermite basis ``hnf``. When ``conductor == 0``,
    ``R_p`` is the full valuation ring and membership is ``v_p >= 0``.
    """

    prime: GaussInt
    ell: int
    conductor: int
    hnf: tuple[int, int, int]

    def _reduce(self, y: GaussRat, j: int) -> tuple[int, int]:
        g, d = y.as_fraction()
        while d % self.ell == 0:
            d //= self.ell
            g = g.exact_div(GaussInt(self.ell, 0))
        mod = self.ell**j
        inv = pow(d, -1, mod)
        return (g.re * inv) % mod, (g.im * inv) % mod

    def contains(self, y) -> bool:
        y = GaussRat.coerce(y)
        if y.is_zero():
            return True
        if valuation(y, self.prime) < 0:
            return False
        if self.conductor == 0:
            return True
        a, b = self._reduce(y, self.conductor)
        h11, h12, h22 = self.hnf
        if a % h11:
            return False
        return (b - (a // h11) * h12) % h22 == 0


def _span_mod(ns: NumberSystem, lo: "LocalOrder", r: int, e: int, j: int) -> tuple[int, int, int]:
    beta = ns.alpha.inverse()
    mod = lo.ell**j
    vecs = [(mod, 0), (0, mod)]
    k, bk = 0, GaussRat.coerce(1)
    while k * r < e * j:
        vecs.append(lo._reduce(bk, j))
        bk = bk * beta
        k += 1
    return _hnf2(vecs)


@lru_cache(maxsize=256)
def local_order(ns: NumberSystem, p: GaussInt, r: int) -> LocalOrder:
    ell, e, split = _rational_prime(p)
    trivial = LocalOrder(p, ell, 0, (1, 0, 1))
    if split or ns.degree == 1:
        # Z_l is already the whole valuation ring (split), and real sums stay real
        return trivial
    for m in range(0, 64):
        hnf = _span_mod(ns, trivial, r, e, m + 1)
        probe = LocalOrder(p, ell, m + 1, hnf)
        if m == 0:
            if probe.contains(1) and probe.contains(GaussRat(0, 1)):
                return trivial
        elif probe.contains(ell**m) and probe.contains(GaussRat(0, ell**m)):
            return LocalOrder(p, ell, m, _span_mod(ns, trivial, r, e, m))
    raise AssertionError(f"no conductor found for {p}")


def valuation_bound_is_exact(ns: NumberSystem) -> bool:
    """True when every ``R_p`` is the valuation ring, so ``v_p(S_l) >= r_p*(1-l)`` decides validity."""
    return all(local_order(ns, p, r).conductor == 0 for p, r in den_primes(ns))


@dataclass(frozen=True)
class PrimeTrace:
    prime: GaussInt
    exponent: int
    valuations: tuple[tuple[int, int | float], ...]  # (l, v_p(S_l))
    conductor: int = 0


@dataclass(frozen=True)
class ConvergenceReport:
    """p-adic evidence for a word over a window of partial sums ``S_l``.

    ``invalid_at`` is ``None`` for a valid word, else ``(l, p)`` for the first
    (highest) ``l`` and smallest prime where ``S_l * alpha**(1-l)`` leaves
    ``R_p``. ``valuation_invalid_at`` records the first failure of the bare bound
    ``v_p(S_l) >= r_p*(1-l)``, which is necessary, and sufficient exactly when
    every ``R_p`` has conductor 0.
    """

    traces: tuple[PrimeTrace, ...]
    invalid_at: tuple[int, GaussInt] | None
    valuation_invalid_at: tuple[int, GaussInt] | None
    lattice_valid: bool

    @property
    def valid(self) -> bool:
        return self.invalid_at is None

    @property
    def consistent(self) -> bool:
        """p-adic verdict and lattice-membership verdict agree."""
        return self.valid == self.lattice_valid


def check_convergence(ns: NumberSystem, e: Expansion, depth: int | None = None) -> ConvergenceReport:
    """Check ``S_l * alpha**(1-l)`` in ``R_p`` for ``l = k, k-1, ..., k-depth``.

    ``depth`` defaults to the whole word.
    """
    primes = den_primes(ns)
    orders = {p: local_order(ns, p, r) for p, r in primes}
    if e.is_empty:
        traces = tuple(PrimeTrace(p, r, (), orders[p].conductor) for p, r in primes)
        return ConvergenceReport(traces, None, None, True)
    if depth is None:
        depth = len(e) - 1
    k = e.msb_exponent
    window = Expansion(e.digits[: depth + 1], k, e.truncated or depth + 1 < len(e))
    vals: dict[GaussInt, list] = {p: [] for p, _ in primes}
    bad = bad_v = None
    s = GaussRat.coerce(0)
    for l, d in window.items():
        s = s + ns.alpha_pow(l) * d
        for p, r in primes:
            v = valuation(s, p)
            vals[p].append((l, v))
            if bad_v is None and v < r * (1 - l):
                bad_v = (l, p)
            if bad is None and not orders[p].contains(s * ns.alpha_pow(1 - l)):
                bad = (l, p)
    traces = tuple(PrimeTrace(p, r, tuple(vals[p]), orders[p].conductor) for p, r in primes)
    return ConvergenceReport(traces, bad, bad_v, validate_expansion(ns, window))


def fractional_leading_digits(ns: NumberSystem) -> list[int]:
    """Digits allowed as the leading digit of a purely fractional word."""
    return [d for d in ns.digits if d and check_convergence(ns, Expansion((d,), -1)).valid]


# --- ambinumbers ----------------------------------------------------------


@dataclass(frozen=True)
class Ambinumber:
    """``(x, y)`` in ``C x K_den``; ``y`` is restricted to the lattice."""

    complex_part: ComplexInput
    lattice_part: LatticePoint


def _stable(ns: NumberSystem, build, frac_digits: int, guard: int, doublings: int = 4) -> Expansion:
    """Truncation of ``build(frac_digits + g)`` once two consecutive guards agree.

    Guards run through ``guard, 2*guard, 4*guard, ...``; the approximations of
    exact rationals occasionally lag by more than a dozen places.
    """
    prev = build(frac_digits + guard).truncate(-frac_digits)
    g = guard
    for _ in range(doublings):
        g *= 2
        cur = build(frac_digits + g).truncate(-frac_digits)
        if cur == prev:
            return cur
        prev = cur
    raise PrecisionError(f"digits above exponent -{frac_digits} not stable up to {g} guard digits")


def _minus_one_raw(ns: NumberSystem, n: int) -> Expansion:
    return approximate_expansion(ns, ComplexInput.exact(-1), n)


def expansion_of_minus_one(ns: NumberSystem, frac_digits: int, guard: int = GUARD_DIGITS) -> Expansion:
    """Word converging to -1 in C and to 0 in every ``K_p``, cut at ``-frac_digits``."""
    require_finite(ns)
    return _stable(ns, lambda n: _minus_one_raw(ns, n), frac_digits, guard)


_ONE_AT_ZERO = Expansion((1,), 0)


def _unit_raw(ns: NumberSystem, n: int) -> Expansion:
    return add(ns, _minus_one_raw(ns, n), _ONE_AT_ZERO, check=False)


def expansion_of_unit(ns: NumberSystem, frac_digits: int, guard: int = GUARD_DIGITS) -> Expansion:
    """The ambinumber ``(0, 1)``: the word of -1 with 1 added at exponent 0."""
    require_finite(ns)
    return _stable(ns, lambda n: _unit_raw(ns, n), frac_digits, guard)


def unit_needs_carry(ns: NumberSystem, frac_digits: int = 8) -> bool:
    """True when adding 1 to the word of -1 is not a single digit change."""
    return _minus_one_raw(ns, frac_digits).digit_at(0) == ns.digit_max


def ambi_expansion(
    ns: NumberSystem, a: Ambinumber, frac_digits: int, guard: int = GUARD_DIGITS
) -> Expansion:
    """Expansion of ``(x, y)`` as ``(x, 0) + y * (0, 1)``, cut at ``-frac_digits``."""
    require_finite(ns)
    y_word = expand(ns, require_lattice(ns, a.lattice_part))

    def build(n: int) -> Expansion:
        # y*(0,1) has y_word.msb extra digits above the cut; widen the factor
        unit = _unit_raw(ns, n + max(0, y_word.msb_exponent))
        zero_y = multiply(ns, y_word, unit, check=False) if not y_word.is_empty else Expansion((), -1 - n, True)
        x_word = approximate_expansion(ns, a.complex_part, n)
        return add(ns, x_word, zero_y, check=False)

    return _stable(ns, build, frac_digits, guard)


def residual_valuations(
    ns: NumberSystem, e: Expansion, y
) -> dict[GaussInt, int | float]:
    """``v_p(evaluate(e) - y)`` for each ``p | den(alpha)``."""
    diff = evaluate(ns, e) - GaussRat.coerce(y)
    return {p: valuation(diff, p) for p, _ in den_primes(ns)}


def converges_to(ns: NumberSystem, e: Expansion, y, frac_digits: int, slack: int = 2) -> bool:
    """Finite-depth proxy for ``e -> y`` in every ``K_p``."""
    res = residual_valuations(ns, e, y)
    return all(res[p] >= r * (frac_digits - slack) for p, r in den_primes(ns))


@dataclass(frozen=True)
class WordLimit:
    """Limits of an arbitrary digit series.

    ``trends[p]`` lists ``(l, log_{N(p)} |S_l - S_{l+1}|_p)`` for nonzero digits,
    which equals ``r_p*l - v_p(d_l)``.
    """

    complex_limit: NumericValue
    trends: dict
    cauchy: bool


def any_word_is_some_ambinumber(ns: NumberSystem, e: Expansion, depth: int | None = None) -> WordLimit:
    """Complex limit and p-adic Cauchy evidence for any digit word."""
    if depth is not None:
        e = Expansion(e.digits[: depth + 1], e.msb_exponent, e.truncated or depth + 1 < len(e))
    value = numeric_evaluate(ns, e)
    trends = {}
    cauchy = True
    for p, r in den_primes(ns):
        seq = [(l, r * l - valuation(GaussRat.coerce(d), p)) for l, d in e.items() if d]
        trends[p] = seq
        # the exponent is bounded by r_p*l, hence tends to -infinity
        cauchy = cauchy and all(x <= r * l for l, x in seq)
    return WordLimit(value, trends, cauchy)


def constant_word(digit: int, frac_digits: int, msb: int = 0) -> Expansion:
    """``d d d ... d`` from exponent ``msb`` down to ``-frac_digits``."""
    if digit < 0:
        raise DomainError("digit must be non-negative")
    return Expansion((digit,) * (msb + frac_digits + 1), msb, truncated=True)


def ambi_value(ns: NumberSystem, a: Ambinumber) -> tuple[complex, GaussRat]:
    return complex(a.complex_part), lattice_value(ns, a.lattice_part)
