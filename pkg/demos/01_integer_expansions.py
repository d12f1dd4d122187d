"""
Integer expansions in a rational base
=====================================

A base ``alpha`` in Q(i) comes with a lattice of points that have finite digit
words. Here we take ``alpha = (-1+3i)/2``, spell out a few lattice points and
then look at a base where some points never terminate.
"""

# %%
from fractions import Fraction as F

from alphaexp import GaussRat, decide_finiteness, expand, make_number_system, to_lattice
from alphaexp.finiteness import iota, witness_values
from alphaexp.numsys import evaluate, integer_expansion, lattice_value

ns = make_number_system(GaussRat(F(-1, 2), F(3, 2)))
print(ns)
print("digits:", list(ns.digits), " basis:", [str(b) for b in ns.brunotte])

# %%
# Points of the lattice 2*lam + (1+3i)*mu and their words.
for lam in range(-2, 3):
    row = []
    for mu in range(-2, 3):
        p = to_lattice(ns, 2 * lam + GaussRat(1, 3) * mu)
        row.append(f"{expand(ns, p).word() or '0':>7}")
    print(" ".join(row))

# %%
# Evaluating a word gives the point back.
w = expand(ns, GaussRat(-6, 6))
print(w.word(), "->", evaluate(ns, w))

# %%
# Finiteness is decided on a finite witness set of the shift radix system.
dec = decide_finiteness(ns)
print("finite:", dec.finite)
print("witness values:", sorted(str(v) for v in witness_values(ns, dec.witnesses)))

# %%
# For alpha = (3+2i)/3 some points fall into a cycle instead of reaching 0.
cyc = make_number_system(GaussRat(F(1), F(2, 3)))
dec = decide_finiteness(cyc)
print("finite:", dec.finite)
for c in dec.cycles:
    pts = [lattice_value(cyc, iota(cyc, z)) for z in c]
    rep = integer_expansion(cyc, iota(cyc, c[0]))
    print("cycle", [str(p) for p in pts], "digits", list(rep.cycle_digits))
