import numpy as np
import pytest

from alphaexp.errors import DomainError, ResourceError
from alphaexp.gaussian import GaussInt, GaussRat, base_p_digits
from alphaexp.language import branch_digits
from alphaexp.numsys import ORIGIN, LatticePoint, lattice_value, to_lattice
from alphaexp.padic import check_convergence
from alphaexp.tiles import (
    Window,
    color_of,
    color_prime,
    default_window,
    figure_clouds,
    palette_size,
    render,
    render_slices,
    tail_bound,
    tile_cloud,
    tile_words,
    tiles_containing,
    tiling_coverage_probe,
    words_up_to,
)


def test_depth_zero_is_single_point(ns):
    n = to_lattice(ns, GaussRat(1, 3))
    c = tile_cloud(ns, n, 0)
    assert len(c) == 1
    assert c.points[0] == pytest.approx(complex(1, 3))


def test_depth_one_cloud(ns):
    # fractional digits available below the root node
    _, digits = branch_digits(ns, ORIGIN)
    c = tile_cloud(ns, ORIGIN, 1, keep_words=True)
    got = sorted(c.points, key=lambda z: (z.real, z.imag))
    want = sorted((d / ns.alpha_complex for d in digits), key=lambda z: (z.real, z.imag))
    assert np.allclose(got, want)
    assert sorted(d for (d,) in c.words) == digits == [0, 2, 4]


@pytest.mark.parametrize("depth", [2, 5])
def test_cloud_words_converge(ns, depth):
    c = tile_cloud(ns, to_lattice(ns, GaussRat(-1, 3)), depth, keep_words=True)
    words = tile_words(ns, c)
    assert len(words) == len(c)
    for w in words:
        assert check_convergence(ns, w).valid


def test_cloud_size_bound(ns):
    for m in range(7):
        assert len(tile_cloud(ns, ORIGIN, m)) <= 3**m


def test_diameter_stabilizes(ns):
    d = [tile_cloud(ns, ORIGIN, m).diameter() for m in range(2, 11)]
    for m, (a, b) in enumerate(zip(d, d[1:]), start=2):
        assert abs(b - a) <= 2 * tail_bound(ns, m)


def test_deeper_cloud_near_shallower(ns):
    shallow = tile_cloud(ns, ORIGIN, 4).points
    deep = tile_cloud(ns, ORIGIN, 8).points
    dist = np.abs(deep[:, None] - shallow[None, :]).min(axis=1)
    assert dist.max() <= tail_bound(ns, 4) + 1e-9


def test_cap(ns):
    with pytest.raises(ResourceError):
        tile_cloud(ns, ORIGIN, 10, cap=100)
    with pytest.raises(DomainError):
        tile_cloud(ns, ORIGIN, -1)


def test_colors(ns):
    assert color_prime(ns) == GaussInt(1, 1)
    assert palette_size(ns) == 4
    assert color_of(ns, ORIGIN) == 0
    classes = set()
    for lam in range(-2, 3):
        for mu in range(-2, 3):
            n = LatticePoint(lam, mu)
            g, _ = lattice_value(ns, n).as_fraction()
            c0, c1, c2 = base_p_digits(g, GaussInt(1, 1), 3)
            assert c0 == 0
            assert color_of(ns, n) == c1 + 2 * c2
            classes.add(color_of(ns, n))
    assert classes == {0, 1, 2, 3}


def test_color_of_two(ns):
    two = to_lattice(ns, 2)
    assert color_of(ns, two) == 2


def test_words_up_to(ns):
    assert len(words_up_to(ns, 3)) == 24


def test_default_window(ns):
    assert default_window(ns) == Window(-13, 7, -10, 9)


def test_window_rejects_zero_area():
    with pytest.raises(DomainError):
        Window(0, 0, 0, 1)
    with pytest.raises(DomainError):
        Window.parse("0,1,2")


def test_render_blank(ns):
    img = render(ns, [], Window(0, 1, 0, 1), (4, 3))
    assert img == b"P6\n4 3\n255\n" + b"\xff" * 36


def test_render_ppm_and_svg(ns):
    clouds = figure_clouds(ns, 2, depth=4)
    w = Window(-13, 7, -10, 9)
    ppm = render(ns, clouds, w, (80, 60))
    assert ppm.startswith(b"P6\n80 60\n255\n") and len(ppm) == len(b"P6\n80 60\n255\n") + 80 * 60 * 3
    assert ppm != render(ns, [], w, (80, 60))
    svg = render(ns, clouds, w, (80, 60), "svg").decode()
    assert svg.startswith("<?xml") and svg.rstrip().endswith("</svg>")
    assert svg.count("<circle") > 0
    with pytest.raises(DomainError):
        render(ns, clouds, w, (80, 60), "gif")


def test_render_slices(ns):
    clouds = figure_clouds(ns, 3, depth=3)
    slices = render_slices(ns, clouds, default_window(ns), (40, 40))
    assert sorted(slices) == [0, 1, 2, 3]


def test_probe_empty(ns):
    s = tiling_coverage_probe(ns, Window(-1, 1, -1, 1), 0, 6)
    assert s.samples == 0 and s.hits == 0 and s.multiplicity == {}


def test_probe_small(ns):
    s = tiling_coverage_probe(ns, default_window(ns), 400, 8, seed=3)
    assert s.hit_rate == 1.0
    assert s.fraction_with_multiplicity(1) >= 0.97


def test_interior_point_multiplicity_one(ns):
    c = tile_cloud(ns, ORIGIN, 12)
    rng = np.random.default_rng(5)
    idx = rng.choice(len(c), 20, replace=False)
    # perturb cloud points by half the depth-12 tail bound
    x = c.points[idx] + 0.5 * tail_bound(ns, 12) * np.exp(2j * np.pi * rng.random(20))
    sets = tiles_containing(ns, x, 36)
    assert all(s == {ORIGIN} for s in sets)
