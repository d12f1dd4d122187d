"""Deciding the finiteness property through the conjugate shift radix system.

The backward division map on the lattice is conjugate (via :func:`iota`) to the
shift radix system ``tau_r(z0, z1) = (z1, -floor(r0*z0 + r1*z1))`` with
``r = (a2/a0, a1/a0)``. Finiteness is decided on a finite witness set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

from .errors import DomainError, ResourceError
from .numsys import LatticePoint, NumberSystem, lattice_value

ORBIT_LIMIT = 10**6


@dataclass(frozen=True)
class SrsParam:
    """Parameter vector of a shift radix system, stored over a common denominator.

    ``tau(z)`` uses ``floor((sum(num_k * z_k)) / den)`` with ``den > 0`` so the
    floor is integer floor division.
    """

    r: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "r", tuple(Fraction(x) for x in self.r))
        if not self.is_contracting():
            raise DomainError(f"SRS parameter {self.r} is not contracting")

    @property
    def dim(self) -> int:
        return len(self.r)

    def is_contracting(self) -> bool:
        """Roots of ``X**n + r_{n-1} X**(n-1) + ... + r_0`` inside the open unit disk."""
        if self.dim == 1:
            return abs(self.r[0]) < 1
        r0, r1 = self.r
        # Schur-Cohn conditions for a real monic quadratic
        return abs(r0) < 1 and abs(r1) < 1 + r0

    @cached_property
    def _integer_form(self) -> tuple[tuple[int, ...], int]:
        den = 1
        for x in self.r:
            den = math.lcm(den, x.denominator)
        return tuple(int(x * den) for x in self.r), den


def srs_param(ns: NumberSystem) -> SrsParam:
    if ns.degree == 1:
        return SrsParam((Fraction(ns.a2, ns.a0),))
    return SrsParam((Fraction(ns.a2, ns.a0), Fraction(ns.a1, ns.a0)))


def srs_step(p: SrsParam, z: tuple[int, ...]) -> tuple[int, ...]:
    nums, den = p._integer_form
    s = sum(c * x for c, x in zip(nums, z))
    return tuple(z[1:]) + (-(s // den),)


def _neg(z):
    return tuple(-x for x in z)


def _seeds(dim: int) -> set[tuple[int, ...]]:
    out = set()
    for k in range(dim):
        e = tuple(1 if j == k else 0 for j in range(dim))
        out.add(e)
        out.add(_neg(e))
    return out


@dataclass(frozen=True)
class WitnessSet:
    points: frozenset

    def __contains__(self, z):
        return tuple(z) in self.points

    def __iter__(self):
        return iter(sorted(self.points))

    def __len__(self):
        return len(self.points)


def build_witness_set(p: SrsParam, cap: int = 10**5) -> WitnessSet:
    """Close ``{+-e_k}`` under ``z -> tau(z)`` and ``z -> -tau(-z)``."""
    points = _seeds(p.dim)
    frontier = set(points)
    for _ in range(cap):
        new = set()
        for z in frontier:
            for w in (srs_step(p, z), _neg(srs_step(p, _neg(z)))):
                if w not in points:
                    new.add(w)
        if not new:
            return WitnessSet(frozenset(points))
        points |= new
        frontier = new
        if len(points) > cap:
            break
    raise ResourceError(f"witness set did not close within cap={cap}")


def iota(ns: NumberSystem, z: tuple[int, ...]) -> LatticePoint:
    """The conjugacy ``Z^n -> lattice``, ``z -> sgn(a0) * (z0*a2 + z1*(a2*alpha + a1))``."""
    s = ns.sign_a0
    if ns.degree == 1:
        return LatticePoint(s * z[0], 0)
    return LatticePoint(s * z[0], s * z[1])


def iota_inv(ns: NumberSystem, p: LatticePoint) -> tuple[int, ...]:
    s = ns.sign_a0
    if ns.degree == 1:
        return (s * p.lam,)
    return (s * p.lam, s * p.mu)


@dataclass(frozen=True)
class OrbitVerdict:
    witness: tuple[int, ...]
    reaches_zero: bool
    steps: int
    cycle: tuple[tuple[int, ...], ...] = ()


def srs_orbit(p: SrsParam, z: tuple[int, ...], limit: int = ORBIT_LIMIT) -> OrbitVerdict:
    zero = tuple(0 for _ in z)
    seen: dict[tuple[int, ...], int] = {}
    w = tuple(z)
    for k in range(limit):
        if w == zero:
            return OrbitVerdict(tuple(z), True, k)
        if w in seen:
            orbit = list(seen)
            return OrbitVerdict(tuple(z), False, k, tuple(orbit[seen[w]:]))
        seen[w] = k
        w = srs_step(p, w)
    raise ResourceError(f"orbit of {z} exceeded {limit} states")


@dataclass(frozen=True)
class FinitenessDecision:
    finite: bool
    param: SrsParam
    witnesses: WitnessSet
    verdicts: tuple[OrbitVerdict, ...]

    @property
    def counterexample(self) -> OrbitVerdict | None:
        return next((v for v in self.verdicts if not v.reaches_zero), None)

    @property
    def cycles(self) -> list[tuple[tuple[int, ...], ...]]:
        """Distinct cycles met by witness orbits, each rotated to its minimum."""
        out = []
        for v in self.verdicts:
            if v.cycle:
                k = v.cycle.index(min(v.cycle))
                c = v.cycle[k:] + v.cycle[:k]
                if c not in out:
                    out.append(c)
        return out


def decide_finiteness(ns: NumberSystem, cap: int = 10**5) -> FinitenessDecision:
    p = srs_param(ns)
    wit = build_witness_set(p, cap)
    verdicts = tuple(srs_orbit(p, z) for z in wit)
    return FinitenessDecision(all(v.reaches_zero for v in verdicts), p, wit, verdicts)


@lru_cache(maxsize=256)
def has_finiteness_property(ns: NumberSystem) -> bool:
    return decide_finiteness(ns).finite


def require_finite(ns: NumberSystem) -> None:
    if not has_finiteness_property(ns):
        raise DomainError(f"{ns} does not have the finiteness property")


def witness_values(ns: NumberSystem, wit: WitnessSet):
    """The witness set mapped into the lattice, as exact complex values."""
    return {lattice_value(ns, iota(ns, z)) for z in wit}
