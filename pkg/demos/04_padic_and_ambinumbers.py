"""
p-adic convergence and ambinumbers
==================================

A digit word is an expansion when its partial sums converge in the completions
at the primes of the denominator of ``alpha``. Infinite words then describe
pairs ``(x, y)`` of a complex number and a lattice point.
"""

# %%
from fractions import Fraction as F

from alphaexp import GaussRat, make_number_system
from alphaexp.complexexp import ComplexInput, numeric_evaluate, sqrt2
from alphaexp.numsys import Expansion, format_expansion, parse_expansion, to_lattice
from alphaexp.padic import (
    Ambinumber,
    ambi_expansion,
    check_convergence,
    den_primes,
    expansion_of_minus_one,
    expansion_of_unit,
    local_order,
    residual_valuations,
)

ns = make_number_system(GaussRat(F(-1, 2), F(3, 2)))

# %%
for word in ["223011", "200"]:
    rep = check_convergence(ns, parse_expansion(word))
    print(word, "valid" if rep.valid else f"invalid at {rep.invalid_at}", rep.traces[0].valuations)

# %%
# With an inert prime in the denominator the valuation bound alone is too weak.
ns2 = make_number_system(GaussRat(F(-1, 3), F(5, 3)))
p, r = den_primes(ns2)[0]
print("prime", p, "conductor", local_order(ns2, p, r).conductor)
rep = check_convergence(ns2, Expansion((24,), 0))
print("digit 24: bound holds", rep.valuation_invalid_at is None, "| valid", rep.valid)

# %%
print("(-1, 0):", format_expansion(expansion_of_minus_one(ns, 27)))
print("( 0, 1):", format_expansion(expansion_of_unit(ns, 27)))

# %%
y = GaussRat(1, 3)
pt = to_lattice(ns, y)
for x, label in [(ComplexInput.exact(0), "0"), (sqrt2(500), "sqrt2")]:
    for fd in (10, 20, 30):
        w = ambi_expansion(ns, Ambinumber(x, pt), fd)
        v = numeric_evaluate(ns, w)
        res = residual_valuations(ns, w, y)
        print(f"({label}, 1+3i) {fd:>2}: {format_expansion(w)}  C: {v.value:.6f}  v_p: {list(res.values())}")
