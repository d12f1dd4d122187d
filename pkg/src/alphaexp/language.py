"""The language of integer alpha-expansions and its tree.

Each node ``N`` of the tree branches into the digits of one residue class
modulo ``a2``; this makes level enumeration a streaming depth-first walk.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Iterator

from .errors import DomainError, ResourceError
from .finiteness import require_finite
from .numsys import (
    ORIGIN,
    LatticePoint,
    NumberSystem,
    child,
    child_residue,
    expand,
    lattice_value,
    to_lattice,
)

LEVEL_CAP = 10**6


@dataclass(frozen=True)
class TreeNode:
    value: LatticePoint
    path: tuple[int, ...]
    children_residue: int


def branch_digits(ns: NumberSystem, n: LatticePoint) -> tuple[int, list[int]]:
    """``(r, D(N))`` where ``D(N) = {d in D : d = r mod a2}``."""
    r = child_residue(ns, n)
    return r, list(range(r, ns.base, ns.a2))


def branch_digits_brute(ns: NumberSystem, n: LatticePoint) -> list[int]:
    """``D(N)`` by testing ``alpha*N + d`` for lattice membership, digit by digit."""
    v = lattice_value(ns, n) * ns.alpha
    return [d for d in ns.digits if to_lattice(ns, v + d) is not None]


def iter_tree(ns: NumberSystem, depth: int, root: LatticePoint = ORIGIN) -> Iterator[TreeNode]:
    """Depth-first pre-order walk of the tree down to ``depth`` edges below ``root``."""
    stack = [(root, ())]
    while stack:
        n, path = stack.pop()
        r, ds = branch_digits(ns, n)
        yield TreeNode(n, path, r)
        if len(path) < depth:
            for d in reversed(ds):
                stack.append((child(ns, n, d), path + (d,)))


def enumerate_level(
    ns: NumberSystem, k: int, cap: int = LEVEL_CAP, root: LatticePoint = ORIGIN
) -> list[tuple[tuple[int, ...], LatticePoint]]:
    """All length-``k`` paths from ``root`` as ``(word, node)`` pairs, sorted by word.

    Words may start with zeros.
    """
    if k < 0:
        raise DomainError("level must be >= 0")
    out = []
    for node in iter_tree(ns, k, root):
        if len(node.path) == k:
            out.append((node.path, node.value))
            if len(out) > cap:
                raise ResourceError(f"level {k} exceeds cap {cap}")
    return out


def level_size_bound(ns: NumberSystem, k: int) -> int:
    return (-(-ns.base // ns.a2)) ** k


# --- length bracket -------------------------------------------------------


def _sqrt_bounds(q: Fraction, bits: int = 96) -> tuple[Fraction, Fraction]:
    """Rational ``lo <= sqrt(q) <= hi``."""
    scale = 1 << bits
    num = q.numerator * scale * scale
    lo = isqrt(num // q.denominator)
    hi = isqrt(-(-num // q.denominator))
    if hi * hi * q.denominator < num:
        hi += 1
    return Fraction(lo, scale), Fraction(hi, scale)


def _pow_bounds(ns: NumberSystem, j: int) -> tuple[Fraction, Fraction]:
    """Bounds on ``|alpha|**j`` for ``j >= 0`` using the exact square."""
    s2 = ns.abs_alpha_sq
    if j % 2 == 0:
        v = s2 ** (j // 2)
        return v, v
    lo, hi = _sqrt_bounds(s2)
    v = s2 ** (j // 2)
    return lo * v, hi * v


@lru_cache(maxsize=64)
def _ball_max_length(ns: NumberSystem, radius_sq: Fraction) -> int:
    """Longest integer expansion among lattice points with ``|N|**2 <= radius_sq``."""
    best = 0
    for p in _lattice_points_in_disk(ns, radius_sq):
        best = max(best, len(expand(ns, p)))
    return best


def _lattice_points_in_disk(ns: NumberSystem, radius_sq: Fraction) -> Iterator[LatticePoint]:
    r = math.isqrt(math.ceil(radius_sq)) + 1
    if ns.degree == 1:
        for lam in range(-r // ns.a2 - 1, r // ns.a2 + 2):
            if Fraction(lam * ns.a2) ** 2 <= radius_sq:
                yield LatticePoint(lam, 0)
        return
    b1 = ns.brunotte[1]
    mu_max = int(r / abs(b1.im)) + 1
    for mu in range(-mu_max, mu_max + 1):
        x0 = mu * b1.re
        lo = math.floor((-r - x0) / ns.a2) - 1
        hi = math.ceil((r - x0) / ns.a2) + 1
        for lam in range(lo, hi + 1):
            p = LatticePoint(lam, mu)
            if lattice_value(ns, p).norm() <= radius_sq:
                yield p


def length_bounds(ns: NumberSystem, n) -> tuple[int, int]:
    """Integer bracket ``lower <= len(expansion of N) <= upper`` for ``N != 0``.

    The lower end comes from ``|N| <= (|a0|-1) * (|alpha|**L - 1)/(|alpha| - 1)``.
    The matching lower estimate on ``|N|`` is vacuous here because
    ``|a0| - 1 > |alpha| - 1`` always, so the upper end uses the contraction
    ``|T(N)| <= (|N| + |a0| - 1)/|alpha|``: after ``j`` steps with
    ``|alpha|**j >= |N|`` the orbit sits in the forward-invariant disk of radius
    ``1 + (|a0|-1)/(|alpha|-1)``, whose longest expansion is found by enumeration.
    """
    if not isinstance(n, LatticePoint):
        p = to_lattice(ns, n)
        if p is None:
            raise DomainError(f"{n} is not a lattice point")
        n = p
    if n == ORIGIN:
        raise DomainError("length bracket needs a nonzero lattice point")
    require_finite(ns)
    norm_n = lattice_value(ns, n).norm()
    dmax = ns.digit_max
    s_lo, s_hi = _sqrt_bounds(ns.abs_alpha_sq)
    n_lo, _ = _sqrt_bounds(norm_n)

    # smallest L with dmax * (s**L - 1) / (s - 1) >= |N|, using upper bounds for s
    lower = 1
    while True:
        _, p_hi = _pow_bounds(ns, lower)
        if dmax * (p_hi - 1) >= n_lo * (s_lo - 1):
            break
        lower += 1

    j0 = 0
    while ns.abs_alpha_sq ** j0 < norm_n:
        j0 += 1
    c_hi = Fraction(dmax) / (s_lo - 1)
    radius_sq = (1 + c_hi) ** 2
    upper = j0 + _ball_max_length(ns, _round_up(radius_sq))
    return lower, upper


def _round_up(q: Fraction, bits: int = 16) -> Fraction:
    scale = 1 << bits
    return Fraction(-(-q.numerator * scale // q.denominator), scale)
