"""Addition and multiplication of alpha-expansions by digit manipulation.

Column sums that reach ``|a0|`` are reduced by subtracting ``|a0|`` and adding
the integer expansion of ``|a0|/alpha`` one place to the left. Carries can
sustain themselves forever above the top digit while emitting only zeros (the
worked sum ``442 + 2234`` does this, and for other bases the pending carries
even grow without bound). Every emitted digit is already final, so the engine
stops once the pending carry window represents zero, i.e. once the window
polynomial is divisible by the minimal polynomial of alpha.
"""

from __future__ import annotations

from collections import defaultdict
from functools import lru_cache

from .errors import DomainError, ResourceError
from .finiteness import require_finite
from .gaussian import GaussRat
from .numsys import (
    CycleReport,
    Expansion,
    NumberSystem,
    evaluate,
    integer_expansion,
    to_lattice,
    validate_expansion,
)

MAX_REWRITES = 10**4


class WorkWord:
    """Exponent -> non-negative coefficient map used during carry reduction."""

    def __init__(self):
        self.coeffs: defaultdict[int, int] = defaultdict(int)

    def add_word(self, e: Expansion, scale: int = 1, shift: int = 0) -> None:
        if scale == 0:
            return
        for j, d in e.items():
            if d:
                self.coeffs[j + shift] += scale * d

    def value(self, ns: NumberSystem) -> GaussRat:
        acc = GaussRat.coerce(0)
        for j, c in self.coeffs.items():
            acc = acc + ns.alpha_pow(j) * c
        return acc

    def __bool__(self):
        return any(self.coeffs.values())


@lru_cache(maxsize=128)
def carry_word(ns: NumberSystem) -> Expansion:
    """Integer expansion of ``|a0|/alpha``, the carry pattern."""
    require_finite(ns)
    v = GaussRat.coerce(ns.base) / ns.alpha
    p = to_lattice(ns, v)
    assert p is not None, "|a0|/alpha must lie in the lattice"
    e = integer_expansion(ns, p)
    assert not isinstance(e, CycleReport)
    return e


def _reduce(
    ns: NumberSystem, ww: WorkWord, max_rewrites: int, trace: list | None = None
) -> dict[int, int]:
    """Carry-reduce ``ww`` lowest exponent first; returns ``{exponent: digit}``.

    Each rewrite subtracts the largest multiple of ``|a0|`` from one column and
    carries that many copies of the carry word.
    """
    coeffs = {j: c for j, c in ww.coeffs.items() if c}
    if not coeffs:
        return {}
    base = ns.base
    carry = [(j + 1, d) for j, d in carry_word(ns).items() if d]
    width = max(off for off, _ in carry)
    top = max(coeffs)
    j = min(coeffs)
    out: dict[int, int] = {}
    seen: dict[tuple[int, ...], int] = {}
    rewrites = 0
    while True:
        q, d = divmod(coeffs.pop(j, 0), base)
        out[j] = d
        if q:
            for off, c in carry:
                coeffs[j + off] = coeffs.get(j + off, 0) + q * c
            rewrites += 1
            if rewrites > max_rewrites:
                raise ResourceError(f"carry reduction exceeded {max_rewrites} rewrites")
            if trace is not None:
                trace.append((j, q, dict(out), dict(coeffs)))
        j += 1
        if j <= top:
            continue
        window = tuple(coeffs.get(j + k, 0) for k in range(width))
        if _represents_zero(ns, window):
            break
        if window in seen:
            raise DomainError("carry pattern repeats with nonzero value: no finite expansion")
        seen[window] = j
    return out


def _represents_zero(ns: NumberSystem, window: tuple[int, ...]) -> bool:
    """True iff ``sum(window[k] * alpha**k) == 0``.

    By Gauss's lemma this holds iff the integer polynomial with coefficients
    ``window`` is divisible by the primitive minimal polynomial over Z.
    """
    poly = list(window)
    while poly and poly[-1] == 0:
        poly.pop()
    if not poly:
        return True
    lead = [ns.a0, ns.a1, ns.a2] if ns.degree == 2 else [ns.a0, ns.a2]
    n = len(lead) - 1
    # long division from the top; remainder must vanish with integer quotient
    while len(poly) > n:
        c = poly[-1]
        if c % lead[-1]:
            return False
        q = c // lead[-1]
        shift = len(poly) - 1 - n
        for k in range(n + 1):
            poly[shift + k] -= q * lead[k]
        poly.pop()
    return not any(poly)


def _check_inputs(ns, words, check):
    for w in words:
        if check and not validate_expansion(ns, w):
            raise DomainError(f"{w} is not a valid expansion")


def add(
    ns: NumberSystem,
    x: Expansion,
    y: Expansion,
    max_rewrites: int = MAX_REWRITES,
    check: bool = True,
) -> Expansion:
    """Digitwise sum of two expansions.

    With ``check=False`` arbitrary digit words are accepted (ambinumber use).
    A truncated operand limits the result to its precision.
    """
    require_finite(ns)
    _check_inputs(ns, (x, y), check)
    ww = WorkWord()
    ww.add_word(x)
    ww.add_word(y)
    out = _reduce(ns, ww, max_rewrites)
    truncated = [w.lsb_exponent for w in (x, y) if w.truncated and not w.is_empty]
    if truncated:
        lsb = max(truncated)
    else:
        lsb = min(w.lsb_exponent for w in (x, y))
    res = Expansion.from_terms(out, lsb, truncated=bool(truncated))
    if check:
        assert validate_expansion(ns, res)
    return res


def multiply(
    ns: NumberSystem,
    x: Expansion,
    y: Expansion,
    max_rewrites: int = MAX_REWRITES,
    check: bool = True,
) -> Expansion:
    """Schoolbook product: ``d`` shifted copies of ``x`` for each digit ``d`` of ``y``."""
    require_finite(ns)
    _check_inputs(ns, (x, y), check)
    if x.is_empty or y.is_empty:
        return Expansion((), -1)
    ww = WorkWord()
    for t, d in y.items():
        ww.add_word(x, scale=d, shift=t)
    out = _reduce(ns, ww, max_rewrites)
    cuts = []
    if x.truncated:
        cuts.append(x.lsb_exponent + y.msb_exponent)
    if y.truncated:
        cuts.append(y.lsb_exponent + x.msb_exponent)
    lsb = max(cuts) if cuts else x.lsb_exponent + y.lsb_exponent
    res = Expansion.from_terms(out, lsb, truncated=bool(cuts))
    if check:
        assert validate_expansion(ns, res)
    return res


def _oracle(ns: NumberSystem, value: GaussRat) -> Expansion:
    p = to_lattice(ns, value)
    if p is None:
        raise AssertionError(f"{value} left the lattice")
    e = integer_expansion(ns, p)
    if isinstance(e, CycleReport):
        raise DomainError(f"{value} has no integer expansion")
    return e


def oracle_add(ns: NumberSystem, x: Expansion, y: Expansion) -> Expansion:
    """Evaluate exactly, add in Q(i), re-expand."""
    return _oracle(ns, evaluate(ns, x) + evaluate(ns, y))


def oracle_mul(ns: NumberSystem, x: Expansion, y: Expansion) -> Expansion:
    return _oracle(ns, evaluate(ns, x) * evaluate(ns, y))
