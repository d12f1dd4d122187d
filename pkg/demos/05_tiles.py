"""
Tiles and the tiling of the plane
=================================

The points whose expansion has integer part ``N`` form a tile. Point clouds
of valid fractional tails approximate each tile up to a geometric tail bound.
Images are written to ``demos/output``.
"""

# %%
from fractions import Fraction as F
from pathlib import Path

from alphaexp import GaussRat, make_number_system
from alphaexp.tiles import (
    color_of,
    default_window,
    figure_clouds,
    render,
    render_slices,
    tail_bound,
    tile_cloud,
    tiling_coverage_probe,
    words_up_to,
)
from alphaexp.numsys import ORIGIN, lattice_value

ns = make_number_system(GaussRat(F(-1, 2), F(3, 2)))
out = Path(__file__).parent / "output"
out.mkdir(exist_ok=True)

# %%
for m in range(0, 11, 2):
    c = tile_cloud(ns, ORIGIN, m)
    print(f"depth {m:>2}: {len(c):>6} points, diameter {c.diameter():.4f}, tail bound {tail_bound(ns, m):.4f}")

# %%
pts = words_up_to(ns, 3)
print(len(pts), "tiles, colours", sorted({color_of(ns, n) for n in pts}))
print({str(lattice_value(ns, n)): color_of(ns, n) for n in pts[:6]})

# %%
clouds = figure_clouds(ns, 3, depth=8)
window = default_window(ns)
(out / "tiles.ppm").write_bytes(render(ns, clouds, window, (600, 600)))
(out / "tiles.svg").write_bytes(render(ns, figure_clouds(ns, 3, depth=5), window, (600, 600), "svg"))
for k, img in render_slices(ns, clouds, window).items():
    (out / f"slice_{k}.ppm").write_bytes(img)
print("wrote", sorted(p.name for p in out.iterdir()))

# %%
stats = tiling_coverage_probe(ns, window, 2000, 10)
print("hit rate", stats.hit_rate)
print("multiplicity at depth", stats.resolve_depth, stats.multiplicity)
print("multiplicity within the depth", stats.depth, "tolerance", stats.coarse_multiplicity)
