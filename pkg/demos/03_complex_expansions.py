"""
Expanding arbitrary complex numbers
===================================

Scaling ``x`` by ``alpha**n``, rounding into the lattice and shifting the word
back gives approximations ``w_n`` whose leading digits settle as ``n`` grows.
Inputs are exact rationals with an error bound, so every floor is certified.
"""

# %%
from fractions import Fraction as F

from alphaexp import GaussRat, make_number_system
from alphaexp.complexexp import (
    approximate_expansion,
    approximation_sequence,
    common_prefix_length,
    default_precision,
    numeric_evaluate,
    sqrt2,
)
from alphaexp.errors import PrecisionError
from alphaexp.numsys import format_expansion, lattice_value

ns = make_number_system(GaussRat(F(-1, 2), F(3, 2)))

# %%
x = sqrt2(default_precision(15))
prev = None
for n, p, word, w in approximation_sequence(ns, x, range(1, 16)):
    agree = common_prefix_length(prev, w) if prev else 0
    print(f"{n:>2} {str(lattice_value(ns, p)):>12} {word.word():>17}  {format_expansion(w)}  ({agree})")
    prev = w

# %%
w = approximate_expansion(ns, sqrt2(default_precision(50)), 50)
v = numeric_evaluate(ns, w)
print(format_expansion(w))
print(v.value, "+-", v.error_bound)

# %%
# Too little input precision is reported with the number of bits needed.
try:
    approximate_expansion(ns, sqrt2(20), 50)
except PrecisionError as exc:
    print("precision error:", exc, "| required bits:", exc.required_bits)
