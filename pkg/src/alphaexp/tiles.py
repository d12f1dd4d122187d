"""Point-cloud approximations of the tiles G(N) and renderers for the tiling.

``G(N)`` collects the complex numbers whose expansion has integer part ``N``.
A depth-``m`` cloud evaluates every valid length-``m`` fractional tail below
``N``; every tile point lies within ``tail_bound(m)`` of the cloud and vice
versa.
"""

from __future__ import annotations

import colorsys
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy.spatial import cKDTree

from .complexexp import ComplexInput, approximate_expansion
from .errors import DomainError, ResourceError
from .finiteness import require_finite
from .gaussian import base_p_digits
from .language import enumerate_level
from .numsys import ORIGIN, Expansion, LatticePoint, NumberSystem, child, lattice_value
from .padic import den_primes

CLOUD_CAP = 2 * 10**6
FLOAT_SLACK = 1e-9

# red, yellow, blue, green, then generated hues
BASE_PALETTE = ((220, 50, 47), (235, 200, 40), (38, 110, 210), (60, 170, 80))


def tail_bound(ns: NumberSystem, m: int) -> float:
    """Distance bound between a depth-``m`` cloud and its tile."""
    s = ns.abs_alpha
    return ns.digit_max * s ** (-m) / (s - 1)


def _children(ns: NumberSystem, lam: np.ndarray, mu: np.ndarray):
    """Vectorised child rule: all ``(parent index, digit, lam', mu')``."""
    a2, a1, a0 = ns.a2, ns.a1, ns.a0
    if ns.degree == 1:
        s = lam * a0
    else:
        s = lam * a1 + mu * a0
    r = np.mod(s, a2)
    per = -(-ns.base // a2)
    idx, ds = [], []
    for k in range(per):
        d = r + k * a2
        ok = d < ns.base
        idx.append(np.nonzero(ok)[0])
        ds.append(d[ok])
    idx = np.concatenate(idx)
    ds = np.concatenate(ds)
    new_lam = (ds - s[idx]) // a2
    new_mu = lam[idx] if ns.degree == 2 else np.zeros_like(new_lam)
    return idx, ds, new_lam, new_mu


def _values(ns: NumberSystem, lam: np.ndarray, mu: np.ndarray) -> np.ndarray:
    if ns.degree == 1:
        return lam.astype(float) * ns.a2 + 0j
    b1 = complex(ns.brunotte[1])
    return lam * float(ns.a2) + mu * b1


@dataclass(frozen=True)
class TileCloud:
    base: LatticePoint
    depth: int
    points: np.ndarray = field(repr=False, compare=False)
    color_index: int
    words: tuple | None = field(default=None, repr=False, compare=False)

    def __len__(self):
        return len(self.points)

    @property
    def center(self) -> complex:
        return complex(self.points.mean()) if len(self.points) else 0j

    def diameter(self) -> float:
        if len(self.points) < 2:
            return 0.0
        pts = np.column_stack([self.points.real, self.points.imag])
        try:
            from scipy.spatial import ConvexHull

            pts = pts[ConvexHull(pts).vertices]
        except Exception:
            pass
        diff = pts[:, None, :] - pts[None, :, :]
        return float(np.sqrt((diff**2).sum(-1)).max())


def tile_cloud(
    ns: NumberSystem, n: LatticePoint, depth: int, cap: int = CLOUD_CAP, keep_words: bool = False
) -> TileCloud:
    """All ``N + 0.d_-1 ... d_-depth`` along valid tails of the tree below ``N``."""
    if depth < 0:
        raise DomainError("depth must be >= 0")
    require_finite(ns)
    lam = np.array([n.lam], dtype=np.int64)
    mu = np.array([n.mu], dtype=np.int64)
    words = np.zeros((1, 0), dtype=np.int8) if keep_words else None
    for _ in range(depth):
        idx, ds, lam, mu = _children(ns, lam, mu)
        if len(lam) > cap:
            raise ResourceError(f"cloud below {n} exceeds cap {cap} at depth {depth}")
        if keep_words:
            words = np.column_stack([words[idx], ds.astype(np.int8)])
    if np.abs(lam).max(initial=0) > 2**52 or np.abs(mu).max(initial=0) > 2**52:
        raise ResourceError("lattice coordinates exceed float precision")
    pts = _values(ns, lam, mu) / ns.alpha_complex**depth
    w = tuple(tuple(int(d) for d in row) for row in words) if keep_words else None
    return TileCloud(n, depth, pts, color_of(ns, n), w)


def tile_words(ns: NumberSystem, cloud: TileCloud) -> list[Expansion]:
    """The full digit words behind a cloud built with ``keep_words=True``."""
    if cloud.words is None:
        raise DomainError("cloud was built without words")
    from .numsys import expand

    head = expand(ns, cloud.base)
    return [
        Expansion(head.digits + tail, head.msb_exponent if head.digits else -1, truncated=True)
        if head.digits
        else Expansion(tail, -1, truncated=True)
        for tail in cloud.words
    ]


# --- colouring ------------------------------------------------------------


def color_prime(ns: NumberSystem):
    """Smallest-norm prime divisor of ``den(alpha)``, ``None`` if ``den`` is a unit."""
    primes = den_primes(ns)
    return primes[0][0] if primes else None


def palette_size(ns: NumberSystem) -> int:
    p = color_prime(ns)
    return 4 if p is None else p.norm() ** 2


def color_of(ns: NumberSystem, n: LatticePoint) -> int:
    """Colour index from base-p digits ``c0, c1, c2`` of ``N``.

    The index is ``c1 + N(p)*c2`` when ``c0 == 0``, otherwise
    ``(c0 + N(p)*c1 + N(p)**2*c2) mod N(p)**2``. Without a prime in the
    denominator the parity of the lattice coordinates is used.
    """
    p = color_prime(ns)
    if p is None:
        return (n.lam % 2) + 2 * (n.mu % 2)
    v = lattice_value(ns, n)
    g, m = v.as_fraction()
    assert m == 1, "lattice points are Gaussian integers"
    c0, c1, c2 = base_p_digits(g, p, 3)
    q = p.norm()
    if c0 == 0:
        return c1 + q * c2
    return (c0 + q * c1 + q * q * c2) % (q * q)


def palette(size: int) -> list[tuple[int, int, int]]:
    out = list(BASE_PALETTE[:size])
    for k in range(len(out), size):
        h = (k * 0.61803398875) % 1.0
        r, g, b = colorsys.hsv_to_rgb(h, 0.65, 0.9)
        out.append((int(r * 255), int(g * 255), int(b * 255)))
    return out


# --- figure configuration -------------------------------------------------


def words_up_to(ns: NumberSystem, max_len: int) -> list[LatticePoint]:
    """Distinct lattice points whose integer expansion has at most ``max_len`` digits."""
    seen = []
    for _, node in enumerate_level(ns, max_len):
        if node not in seen:
            seen.append(node)
    return seen


@dataclass(frozen=True)
class Window:
    xmin: float
    xmax: float
    ymin: float
    ymax: float

    def __post_init__(self):
        if not (self.xmax > self.xmin and self.ymax > self.ymin):
            raise DomainError(f"zero-area window {self}")

    @classmethod
    def parse(cls, text: str) -> "Window":
        parts = [float(t) for t in text.split(",")]
        if len(parts) != 4:
            raise DomainError("window needs xmin,xmax,ymin,ymax")
        return cls(*parts)

    @property
    def width(self) -> float:
        return self.xmax - self.xmin

    @property
    def height(self) -> float:
        return self.ymax - self.ymin


def bounding_window(clouds, margin: float = 0.05) -> Window:
    pts = np.concatenate([c.points for c in clouds])
    xmin, xmax = pts.real.min(), pts.real.max()
    ymin, ymax = pts.imag.min(), pts.imag.max()
    dx, dy = (xmax - xmin) * margin, (ymax - ymin) * margin
    return Window(
        math.floor(xmin - dx), math.ceil(xmax + dx), math.floor(ymin - dy), math.ceil(ymax + dy)
    )


def figure_clouds(ns: NumberSystem, max_word_length: int = 3, depth: int = 8) -> list[TileCloud]:
    return [tile_cloud(ns, n, depth) for n in words_up_to(ns, max_word_length)]


@lru_cache(maxsize=8)
def default_window(ns: NumberSystem, max_word_length: int = 3) -> Window:
    """Box around the tiles of all words of length at most ``max_word_length``."""
    return bounding_window(figure_clouds(ns, max_word_length, depth=8))


# --- rendering ------------------------------------------------------------


def _raster(ns, clouds, window: Window, pixels: tuple[int, int]) -> np.ndarray:
    w, h = pixels
    if w <= 0 or h <= 0:
        raise DomainError("pixel dimensions must be positive")
    img = np.full((h, w, 3), 255, dtype=np.uint8)
    pal = palette(max([palette_size(ns)] + [c.color_index + 1 for c in clouds]))
    for c in clouds:
        pts = c.points
        px = ((pts.real - window.xmin) / window.width * w).astype(np.int64)
        py = ((window.ymax - pts.imag) / window.height * h).astype(np.int64)
        ok = (px >= 0) & (px < w) & (py >= 0) & (py < h)
        img[py[ok], px[ok]] = pal[c.color_index]
    return img


def _ppm(img: np.ndarray) -> bytes:
    h, w, _ = img.shape
    return f"P6\n{w} {h}\n255\n".encode("ascii") + img.tobytes()


def _svg(ns, clouds, window: Window, pixels: tuple[int, int]) -> bytes:
    w, h = pixels
    if w <= 0 or h <= 0:
        raise DomainError("pixel dimensions must be positive")
    pal = palette(max([palette_size(ns)] + [c.color_index + 1 for c in clouds]))
    r = max(0.5, 0.6 * w / max(1, math.isqrt(sum(len(c) for c in clouds) or 1)) / 4)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" '
        f'viewBox="0 0 {w} {h}">',
        f'<rect width="{w}" height="{h}" fill="white"/>',
    ]
    for c in clouds:
        rgb = "#%02x%02x%02x" % pal[c.color_index]
        pts = c.points
        px = (pts.real - window.xmin) / window.width * w
        py = (window.ymax - pts.imag) / window.height * h
        ok = (px >= 0) & (px <= w) & (py >= 0) & (py <= h)
        out.append(f'<g fill="{rgb}" data-tile="{c.base.lam},{c.base.mu}">')
        out.extend(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="{r:.2f}"/>' for x, y in zip(px[ok], py[ok]))
        out.append("</g>")
    out.append("</svg>")
    return ("\n".join(out) + "\n").encode("utf-8")


def render(ns: NumberSystem, clouds, window: Window, pixels=(600, 600), fmt: str = "ppm") -> bytes:
    """Scatter the clouds into a PPM (P6) raster or an SVG 1.1 document."""
    if fmt == "ppm":
        return _ppm(_raster(ns, clouds, window, pixels))
    if fmt == "svg":
        return _svg(ns, clouds, window, pixels)
    raise DomainError(f"unknown image format {fmt!r}")


def render_slices(ns: NumberSystem, clouds, window: Window, pixels=(300, 300)) -> dict[int, bytes]:
    """One PPM per colour class: the stacked-slice view of the tiles in ``C x K_p``."""
    out = {}
    for k in sorted({c.color_index for c in clouds}):
        out[k] = render(ns, [c for c in clouds if c.color_index == k], window, pixels, "ppm")
    return out


# --- coverage probe -------------------------------------------------------


def integer_part(ns: NumberSystem, e: Expansion) -> LatticePoint:
    """Lattice point spelled by the digits of ``e`` at exponents ``>= 0``."""
    n = ORIGIN
    for j, d in e.items():
        if j < 0:
            break
        n = child(ns, n, d)
        if n is None:
            raise DomainError(f"{e} has an invalid integer part")
    return n


def _candidates(ns: NumberSystem, x: complex, radius: float) -> list[LatticePoint]:
    """Lattice points within ``radius`` of ``x``."""
    if ns.degree == 1:
        lo = math.floor((x.real - radius) / ns.a2)
        hi = math.ceil((x.real + radius) / ns.a2)
        return [LatticePoint(k, 0) for k in range(lo, hi + 1) if abs(k * ns.a2 - x.real) <= radius]
    b1 = complex(ns.brunotte[1])
    out = []
    mu_r = math.ceil(radius / abs(b1.imag)) + 1
    mu0 = round(x.imag / b1.imag)
    for mu in range(mu0 - mu_r, mu0 + mu_r + 1):
        c = x - mu * b1
        lo = math.floor((c.real - radius) / ns.a2)
        hi = math.ceil((c.real + radius) / ns.a2)
        for lam in range(lo, hi + 1):
            if abs(lam * ns.a2 + mu * b1 - x) <= radius:
                out.append(LatticePoint(lam, mu))
    return out


def tiles_containing(ns: NumberSystem, xs: np.ndarray, depth: int, slack: float = FLOAT_SLACK):
    """For each point, the base points ``N`` whose tile passes a pruned descent.

    Level ``j`` keeps tree nodes whose partial value lies within
    ``tail_bound(j)`` of the point, so a survivor at level ``depth`` certifies
    that the point is within ``tail_bound(depth)`` of ``G(N)``, and every tile
    containing the point survives.
    """
    xs = np.asarray(xs, dtype=complex)
    r0 = tail_bound(ns, 0) + slack
    sample, base_idx, lam, mu = [], [], [], []
    bases: list[LatticePoint] = []
    index: dict[LatticePoint, int] = {}
    for k, x in enumerate(xs):
        for n in _candidates(ns, complex(x), r0):
            if n not in index:
                index[n] = len(bases)
                bases.append(n)
            sample.append(k)
            base_idx.append(index[n])
            lam.append(n.lam)
            mu.append(n.mu)
    sample = np.array(sample, dtype=np.int64)
    base_idx = np.array(base_idx, dtype=np.int64)
    lam = np.array(lam, dtype=np.int64)
    mu = np.array(mu, dtype=np.int64)
    alpha = ns.alpha_complex
    for j in range(1, depth + 1):
        idx, _, lam, mu = _children(ns, lam, mu)
        sample, base_idx = sample[idx], base_idx[idx]
        pts = _values(ns, lam, mu) / alpha**j
        keep = np.abs(pts - xs[sample]) <= tail_bound(ns, j) + slack
        sample, base_idx, lam, mu = sample[keep], base_idx[keep], lam[keep], mu[keep]
    out: list[set[LatticePoint]] = [set() for _ in range(len(xs))]
    for s, b in zip(sample.tolist(), base_idx.tolist()):
        out[s].add(bases[b])
    return out


@dataclass(frozen=True)
class CoverageStats:
    samples: int
    hits: int
    multiplicity: dict[int, int]
    coarse_multiplicity: dict[int, int]
    depth: int
    resolve_depth: int
    tolerance: float

    @property
    def hit_rate(self) -> float:
        return self.hits / self.samples if self.samples else 0.0

    def fraction_with_multiplicity(self, k: int, coarse: bool = False) -> float:
        h = self.coarse_multiplicity if coarse else self.multiplicity
        return h.get(k, 0) / self.samples if self.samples else 0.0


def tiling_coverage_probe(
    ns: NumberSystem,
    window: Window,
    samples: int,
    depth: int,
    seed: int = 0,
    resolve_depth: int | None = None,
) -> CoverageStats:
    """Sample the window uniformly and test the tiling property at desk scale.

    A sample is a hit when it lies within ``tail_bound(depth)`` of the cloud of
    the integer part of its approximate expansion. The coarse multiplicity
    counts tiles whose depth-``depth`` clouds come within that tolerance; the
    resolved multiplicity repeats the count with the tolerance of
    ``resolve_depth`` (default ``3*depth``), which separates genuine overlaps
    from the tolerance band around tile boundaries.
    """
    require_finite(ns)
    if resolve_depth is None:
        resolve_depth = 3 * depth
    tol = tail_bound(ns, depth)
    if samples <= 0:
        return CoverageStats(0, 0, {}, {}, depth, resolve_depth, tol)
    rng = np.random.default_rng(seed)
    xs = rng.uniform(window.xmin, window.xmax, samples) + 1j * rng.uniform(
        window.ymin, window.ymax, samples
    )
    trees: dict[LatticePoint, cKDTree] = {}

    def tree(n):
        if n not in trees:
            c = tile_cloud(ns, n, depth)
            trees[n] = cKDTree(np.column_stack([c.points.real, c.points.imag]))
        return trees[n]

    hits = 0
    for x in xs:
        xin = ComplexInput(Fraction(float(x.real)), Fraction(float(x.imag)))
        n = integer_part(ns, approximate_expansion(ns, xin, depth))
        dist, _ = tree(n).query([x.real, x.imag])
        hits += dist <= tol + FLOAT_SLACK
    coarse = tiles_containing(ns, xs, depth)
    fine = tiles_containing(ns, xs, resolve_depth)

    def hist(sets):
        h: dict[int, int] = {}
        for s in sets:
            h[len(s)] = h.get(len(s), 0) + 1
        return dict(sorted(h.items()))

    return CoverageStats(samples, int(hits), hist(fine), hist(coarse), depth, resolve_depth, tol)
