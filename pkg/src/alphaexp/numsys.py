"""Number systems (alpha, D), the Brunotte lattice and integer alpha-expansions.

A :class:`NumberSystem` fixes a base ``alpha`` in Q(i) with ``|alpha| > 1`` and
the digit set ``{0, ..., |a0| - 1}`` where ``a2*X**2 + a1*X + a0`` is the
primitive minimal polynomial of alpha. Lattice points are stored in Brunotte
coordinates ``(lam, mu)`` standing for ``lam*a2 + mu*(a2*alpha + a1)``, so the
backward division map is pure integer arithmetic.

Real rational bases ``a/b`` are admitted as a degree-1 special case: the
polynomial is ``a2*X + a0`` with ``a2 = b``, ``a0 = -a``, ``a1 = 0`` and the
lattice is ``bZ`` (``mu`` is always 0).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterator, NamedTuple, Union

from .errors import DomainError, ResourceError
from .gaussian import GaussInt, GaussRat, gauss_gcd, normalize


class LatticePoint(NamedTuple):
    lam: int
    mu: int


ORIGIN = LatticePoint(0, 0)


@dataclass(frozen=True)
class NumberSystem:
    alpha: GaussRat
    a2: int
    a1: int
    a0: int
    num: GaussInt
    den: GaussInt
    degree: int = 2

    @property
    def base(self) -> int:
        """Number of digits, ``|a0|``."""
        return abs(self.a0)

    @property
    def digit_max(self) -> int:
        return abs(self.a0) - 1

    @property
    def digits(self) -> range:
        return range(abs(self.a0))

    @property
    def sign_a0(self) -> int:
        return 1 if self.a0 > 0 else -1

    @cached_property
    def brunotte(self) -> tuple[GaussRat, ...]:
        if self.degree == 1:
            return (GaussRat.coerce(self.a2),)
        return (GaussRat.coerce(self.a2), self.alpha * self.a2 + self.a1)

    @cached_property
    def abs_alpha_sq(self) -> Fraction:
        return self.alpha.norm()

    @cached_property
    def abs_alpha(self) -> float:
        return math.sqrt(self.abs_alpha_sq)

    @cached_property
    def alpha_complex(self) -> complex:
        return complex(self.alpha)

    @cached_property
    def lattice_det(self) -> Fraction:
        """Covolume of the lattice (area of a fundamental cell)."""
        if self.degree == 1:
            return Fraction(self.a2)
        return abs(self.a2 * self.brunotte[1].im)

    def alpha_pow(self, e: int) -> GaussRat:
        return _alpha_pow(self.alpha, e)

    def __str__(self):
        return f"NumberSystem(alpha={self.alpha}, P=({self.a2},{self.a1},{self.a0}))"


@lru_cache(maxsize=4096)
def _alpha_pow(alpha: GaussRat, e: int) -> GaussRat:
    return alpha**e


def make_number_system(alpha) -> NumberSystem:
    """Build ``(alpha, D)``; raises :class:`DomainError` unless ``|alpha| > 1``."""
    alpha = GaussRat.coerce(alpha)
    if alpha.norm() <= 1:
        raise DomainError(f"non-expanding base: |{alpha}| <= 1")
    if alpha.is_real():
        a, b = alpha.re.numerator, alpha.re.denominator
        return NumberSystem(
            alpha=alpha, a2=b, a1=0, a0=-a, num=GaussInt(a, 0), den=GaussInt(b, 0), degree=1
        )
    w = alpha.common_denominator()
    u, v = int(alpha.re * w), int(alpha.im * w)
    coeffs = (w * w, -2 * u * w, u * u + v * v)
    g = math.gcd(*coeffs)
    a2, a1, a0 = (c // g for c in coeffs)
    g_num = gauss_gcd(GaussInt(u, v), GaussInt(w, 0))
    num = GaussInt(u, v).exact_div(g_num)
    den = GaussInt(w, 0).exact_div(g_num)
    unit, den = normalize(den)
    num = num * unit.conj()
    ns = NumberSystem(alpha=alpha, a2=a2, a1=a1, a0=a0, num=num, den=den)
    assert alpha * alpha * a2 + alpha * a1 + a0 == 0
    assert num.norm() == abs(a0) and den.norm() == a2
    return ns


def lattice_value(ns: NumberSystem, p: LatticePoint) -> GaussRat:
    if ns.degree == 1:
        return GaussRat.coerce(p.lam * ns.a2)
    b0, b1 = ns.brunotte
    return b0 * p.lam + b1 * p.mu


def to_lattice(ns: NumberSystem, x) -> LatticePoint | None:
    """Brunotte coordinates of ``x``, or ``None`` if ``x`` is not in the lattice."""
    x = GaussRat.coerce(x)
    if ns.degree == 1:
        if x.im != 0:
            return None
        lam = x.re / ns.a2
        return LatticePoint(int(lam), 0) if lam.denominator == 1 else None
    b1 = ns.brunotte[1]
    mu = x.im / b1.im
    lam = (x.re - mu * b1.re) / ns.a2
    if mu.denominator != 1 or lam.denominator != 1:
        return None
    return LatticePoint(int(lam), int(mu))


def require_lattice(ns: NumberSystem, x) -> LatticePoint:
    if isinstance(x, LatticePoint):
        return x
    p = to_lattice(ns, x)
    if p is None:
        raise DomainError(f"{x} is not in the lattice of {ns}")
    return p


def backward_divide(ns: NumberSystem, n: LatticePoint) -> tuple[int, LatticePoint]:
    """One step of ``N -> (N - d)/alpha`` in Brunotte coordinates."""
    u, v = n
    if ns.degree == 1:
        s = u * ns.a2
        d = s % ns.base
        return d, LatticePoint((s - d) // -ns.a0, 0)
    s = u * ns.a2 + v * ns.a1
    d = s % ns.base
    w = (s - d) // ns.a0
    return d, LatticePoint(v, -w)


def child_residue(ns: NumberSystem, n: LatticePoint) -> int:
    """Residue r mod a2 such that ``alpha*N + d`` is in the lattice iff d = r."""
    if ns.degree == 1:
        return (n.lam * ns.a0) % ns.a2
    return (n.lam * ns.a1 + n.mu * ns.a0) % ns.a2


def child(ns: NumberSystem, n: LatticePoint, d: int) -> LatticePoint | None:
    """Coordinates of ``alpha*N + d``, or ``None`` when it leaves the lattice."""
    if ns.degree == 1:
        t = d - n.lam * ns.a0
        return LatticePoint(t // ns.a2, 0) if t % ns.a2 == 0 else None
    t = d - n.lam * ns.a1 - n.mu * ns.a0
    if t % ns.a2:
        return None
    return LatticePoint(t // ns.a2, n.lam)


@dataclass(frozen=True)
class Expansion:
    """A digit word, most significant digit first.

    ``msb_exponent`` is the exponent of ``digits[0]``; the empty word (value 0)
    has ``msb_exponent == -1`` so its least significant exponent is 0.
    ``truncated`` marks a finite prefix of an infinite expansion.
    """

    digits: tuple[int, ...]
    msb_exponent: int
    truncated: bool = False

    def __post_init__(self):
        digits = tuple(int(d) for d in self.digits)
        msb = self.msb_exponent
        k = 0
        while k < len(digits) and digits[k] == 0:
            k += 1
        if k:
            lsb = msb - len(digits) + 1
            digits = digits[k:]
            msb = lsb + len(digits) - 1
        object.__setattr__(self, "digits", digits)
        object.__setattr__(self, "msb_exponent", msb)

    @classmethod
    def integer(cls, digits) -> "Expansion":
        digits = tuple(digits)
        return cls(digits, len(digits) - 1)

    @classmethod
    def from_terms(cls, terms: dict[int, int], lsb: int, truncated: bool = False) -> "Expansion":
        """Word from ``{exponent: digit}`` covering exponents down to ``lsb``."""
        top = max([e for e, d in terms.items() if d] + [lsb - 1])
        return cls(tuple(terms.get(e, 0) for e in range(top, lsb - 1, -1)), top, truncated)

    @property
    def lsb_exponent(self) -> int:
        return self.msb_exponent - len(self.digits) + 1

    @property
    def is_empty(self) -> bool:
        return not self.digits

    def __len__(self):
        return len(self.digits)

    def items(self) -> Iterator[tuple[int, int]]:
        """``(exponent, digit)`` pairs from most to least significant."""
        for k, d in enumerate(self.digits):
            yield self.msb_exponent - k, d

    def digit_at(self, e: int) -> int:
        k = self.msb_exponent - e
        return self.digits[k] if 0 <= k < len(self.digits) else 0

    def shifted(self, s: int) -> "Expansion":
        return Expansion(self.digits, self.msb_exponent + s, self.truncated)

    def truncate(self, lsb: int) -> "Expansion":
        """Drop digits below exponent ``lsb`` (pads with zeros when needed)."""
        terms = dict(self.items())
        return Expansion.from_terms(terms, lsb, truncated=self.truncated or lsb > self.lsb_exponent)

    def word(self, sep: str = "") -> str:
        return sep.join(str(d) for d in self.digits)

    def __str__(self):
        return format_expansion(self)


def _token_sep(base: int | None, digits) -> str:
    if base is not None:
        return "" if base <= 10 else ","
    return "" if all(d < 10 for d in digits) else ","


def format_expansion(e: Expansion, base: int | None = None, frac_width: int | None = None) -> str:
    """Render with a radix point, e.g. ``22.3`` or ``0.0042``.

    Integer words print without a point. ``frac_width`` pads fractional digits
    with zeros (the display used for truncated words).
    """
    sep = _token_sep(base, e.digits)
    if e.is_empty and not frac_width:
        return "0" if e.truncated else ""
    lsb = min(e.lsb_exponent, 0)
    if frac_width is not None:
        lsb = min(lsb, -frac_width)
    top = max(e.msb_exponent, 0)
    int_part = [e.digit_at(j) for j in range(top, -1, -1)]
    frac_part = [e.digit_at(j) for j in range(-1, lsb - 1, -1)]
    if e.msb_exponent < 0 or (not e.digits and frac_width):
        int_part = [0]
    s = sep.join(map(str, int_part))
    if frac_part:
        s += "." + sep.join(map(str, frac_part))
    return s


def parse_expansion(text: str) -> Expansion:
    """Parse ``"22"``, ``"2.234"``, ``"17,25"`` or ``"1,17.3,4"`` into an Expansion."""
    text = text.strip()
    if text in ("", "e", "eps", "ε"):
        return Expansion((), -1)
    if "." in text:
        ip, fp = text.split(".", 1)
    else:
        ip, fp = text, ""

    def toks(s: str) -> list[int]:
        if not s:
            return []
        if "," in s:
            return [int(t) for t in s.split(",") if t != ""]
        return [int(c) for c in s]

    ints, fracs = toks(ip), toks(fp)
    return Expansion(tuple(ints + fracs), len(ints) - 1, truncated=bool(fracs))


@dataclass(frozen=True)
class CycleReport:
    """Outcome when the backward-division orbit of ``start`` never reaches 0."""

    start: LatticePoint
    cycle: tuple[LatticePoint, ...]
    cycle_digits: tuple[int, ...]
    preperiod_digits: tuple[int, ...] = field(default=())


def integer_expansion(ns: NumberSystem, n, max_steps: int = 10**6) -> Expansion | CycleReport:
    """Integer alpha-expansion of a lattice point, or the cycle its orbit falls into."""
    n = require_lattice(ns, n)
    start = n
    seen: dict[LatticePoint, int] = {}
    digits: list[int] = []
    for _ in range(max_steps):
        if n == ORIGIN:
            return Expansion.integer(reversed(digits))
        if n in seen:
            k = seen[n]
            orbit = list(seen)
            return CycleReport(start, tuple(orbit[k:]), tuple(digits[k:]), tuple(digits[:k]))
        seen[n] = len(digits)
        d, n = backward_divide(ns, n)
        digits.append(d)
    raise ResourceError(f"no expansion or cycle after {max_steps} steps")


def expand(ns: NumberSystem, n, max_steps: int = 10**6) -> Expansion:
    """Like :func:`integer_expansion` but raises :class:`DomainError` on a cycle."""
    out = integer_expansion(ns, n, max_steps)
    if isinstance(out, CycleReport):
        vals = ", ".join(str(lattice_value(ns, p)) for p in out.cycle)
        raise DomainError(f"{lattice_value(ns, out.start)} has no integer expansion (cycle {{{vals}}})")
    return out


def evaluate(ns: NumberSystem, e: Expansion) -> GaussRat:
    """Exact value ``sum(d_j * alpha**j)``."""
    if e.is_empty:
        return GaussRat.coerce(0)
    acc = GaussRat.coerce(0)
    for d in e.digits:
        acc = acc * ns.alpha + d
    return acc * ns.alpha_pow(e.lsb_exponent)


def prefix_points(ns: NumberSystem, e: Expansion) -> Iterator[LatticePoint | None]:
    """Lattice coordinates of successive prefixes; stops after the first ``None``."""
    n = ORIGIN
    for d in e.digits:
        n = child(ns, n, d)
        yield n
        if n is None:
            return


def validate_expansion(ns: NumberSystem, e: Expansion) -> bool:
    """True iff every prefix ``d_k..d_l`` rescaled by ``alpha**-l`` is a lattice point."""
    return all(p is not None for p in prefix_points(ns, e))


def validate_expansion_slow(ns: NumberSystem, e: Expansion) -> bool:
    """Same predicate as :func:`validate_expansion` via exact evaluation and ``to_lattice``."""
    acc = GaussRat.coerce(0)
    for d in e.digits:
        acc = acc * ns.alpha + d
        if to_lattice(ns, acc) is None:
            return False
    return True
