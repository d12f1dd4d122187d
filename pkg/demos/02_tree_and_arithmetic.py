"""
The tree of words and digitwise arithmetic
==========================================

Valid words form a tree: the digits allowed after a prefix are exactly one
residue class modulo ``a2``. Sums and products can then be carried out on the
digits themselves.
"""

# %%
from fractions import Fraction as F

from alphaexp import GaussRat, make_number_system
from alphaexp.digitarith import add, carry_word, multiply, oracle_add
from alphaexp.language import branch_digits, enumerate_level, length_bounds
from alphaexp.numsys import ORIGIN, expand, parse_expansion, to_lattice

ns = make_number_system(GaussRat(F(-1, 2), F(3, 2)))

# %%
print("children of the root:", branch_digits(ns, ORIGIN)[1])
print("children of '20':", branch_digits(ns, to_lattice(ns, GaussRat(-1, 3)))[1])
print("level sizes:", [len(enumerate_level(ns, k)) for k in range(9)])

# %%
# A carry of |a0| = 5 in one column is the word of 5/alpha one place up.
print("carry word:", carry_word(ns).word())
x, y = parse_expansion("442"), parse_expansion("2234")
s = add(ns, x, y)
print("442 + 2234 =", s.word(), " oracle:", oracle_add(ns, x, y).word())
print("223 * 42 =", multiply(ns, parse_expansion("223"), parse_expansion("42")).word())

# %%
# The length of a word is bracketed by the size of the point.
for n in [GaussRat(2, 0), GaussRat(-6, 6), GaussRat(177, 843)]:
    lo, hi = length_bounds(ns, n)
    print(f"{str(n):>10}  {lo} <= {len(expand(ns, n))} <= {hi}")
