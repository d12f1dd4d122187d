from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from alphaexp.cli import parse_gauss_expr
from alphaexp.complexexp import ComplexInput, numeric_evaluate, sqrt2
from alphaexp.gaussian import GaussInt, GaussRat, valuation
from alphaexp.language import branch_digits
from alphaexp.numsys import ORIGIN, Expansion, child, evaluate, expand, format_expansion, parse_expansion, to_lattice
from alphaexp.padic import (
    Ambinumber,
    ambi_expansion,
    any_word_is_some_ambinumber,
    check_convergence,
    constant_word,
    converges_to,
    den_primes,
    expansion_of_minus_one,
    expansion_of_unit,
    fractional_leading_digits,
    local_order,
    residual_valuations,
    unit_needs_carry,
    valuation_bound_is_exact,
)

from conftest import SMALL_WORDS

P = GaussInt(1, 1)
MINUS_ONE = "0.243100111243211314444112303"
UNIT = "1.243100111243211314444112303"
ZERO_Y = "0.12320244240042344032002044"
SQRT2_Y = "2.13231231234442321444022"


def test_den_primes(ns, ns2):
    assert den_primes(ns) == [(P, 1)]
    assert den_primes(ns2) == [(GaussInt(3, 0), 1)]


def test_local_orders(ns, ns2):
    assert local_order(ns, P, 1).conductor == 0
    assert valuation_bound_is_exact(ns)
    lo = local_order(ns2, GaussInt(3, 0), 1)
    # inert 3 in the denominator: R_3 = Z_3 + 3 Z_3[i]
    assert lo.conductor == 1
    assert lo.contains(1) and lo.contains(GaussRat(0, 3)) and not lo.contains(GaussRat(0, 1))
    assert not valuation_bound_is_exact(ns2)


def test_bare_bound_not_sufficient_at_inert_prime(ns2):
    # the single digit 24 has v_3(24) = 1 but is not a lattice point
    rep = check_convergence(ns2, Expansion((24,), 0))
    assert rep.valuation_invalid_at is None
    assert not rep.valid and not rep.lattice_valid


@pytest.mark.parametrize("word", sorted(SMALL_WORDS.values()))
def test_small_words_valid(ns, word):
    rep = check_convergence(ns, parse_expansion(word))
    assert rep.valid and rep.consistent
    for l, v in rep.traces[0].valuations:
        assert v >= -l + 1


def test_200_rejected(ns):
    rep = check_convergence(ns, parse_expansion("200"))
    assert rep.invalid_at == (0, P)
    assert not rep.lattice_valid


def test_empty_word_valid(ns):
    assert check_convergence(ns, parse_expansion("")).valid


def test_fractional_leading_digit(ns):
    assert fractional_leading_digits(ns) == [2, 4]


def test_depth_window(ns):
    # only the top digit is inspected with depth 0
    assert check_convergence(ns, parse_expansion("200"), depth=0).valid


def _random_word(ns, draw_digits, valid):
    n, ds = ORIGIN, []
    for k in draw_digits:
        if valid:
            _, opts = branch_digits(ns, n)
            d = opts[k % len(opts)]
            n = child(ns, n, d)
        else:
            d = k % ns.base
        ds.append(d)
    return ds


@settings(max_examples=300, deadline=None)
@given(st.lists(st.integers(0, 100), min_size=1, max_size=12), st.integers(-8, 8), st.booleans())
def test_valuation_equals_lattice_criterion(finite_ns, raw, msb, valid):
    ds = _random_word(finite_ns, raw, valid)
    rep = check_convergence(finite_ns, Expansion(tuple(ds), msb))
    assert rep.consistent
    if valuation_bound_is_exact(finite_ns):
        assert (rep.valuation_invalid_at is None) == rep.valid
    elif rep.valid:
        assert rep.valuation_invalid_at is None
    if valid:
        assert rep.valid


def test_minus_one(ns):
    w = expansion_of_minus_one(ns, 27)
    assert format_expansion(w) == MINUS_ONE
    v = numeric_evaluate(ns, w)
    assert abs(v.value + 1) <= v.error_bound
    assert check_convergence(ns, w).valid


def test_unit(ns):
    assert not unit_needs_carry(ns)
    u = expansion_of_unit(ns, 27)
    assert format_expansion(u) == UNIT
    m = expansion_of_minus_one(ns, 27)
    diff = [j for j in range(-27, 1) if u.digit_at(j) != m.digit_at(j)]
    assert diff == [0] and u.digit_at(0) == m.digit_at(0) + 1


def test_ambinumber_examples(ns):
    y = to_lattice(ns, parse_gauss_expr("1+3i"))
    w0 = ambi_expansion(ns, Ambinumber(ComplexInput.exact(0), y), 26)
    assert format_expansion(w0) == ZERO_Y
    w1 = ambi_expansion(ns, Ambinumber(sqrt2(400), y), 23)
    assert format_expansion(w1) == SQRT2_Y


def test_ambinumber_limits(ns):
    y = parse_gauss_expr("1+3i")
    pt = to_lattice(ns, y)
    prev = -1
    for fd in (10, 20, 30, 40):
        w = ambi_expansion(ns, Ambinumber(sqrt2(500), pt), fd)
        v = numeric_evaluate(ns, w)
        assert abs(v.value - 2**0.5) <= v.error_bound
        assert converges_to(ns, w, y, fd)
        r = residual_valuations(ns, w, y)[P]
        assert r > prev
        prev = r


@pytest.mark.parametrize("n", ["2", "6i", "-6+6i", "-1-3i"])
def test_lattice_pair_is_integer_word(ns, n):
    pt = to_lattice(ns, parse_gauss_expr(n))
    w = ambi_expansion(ns, Ambinumber(ComplexInput.exact(parse_gauss_expr(n)), pt), 15)
    assert w.truncate(0).digits == expand(ns, pt).digits
    assert all(w.digit_at(j) == 0 for j in range(-15, 0))


def test_second_base_ambinumber(ns2):
    pt = to_lattice(ns2, ns2.alpha * 9 + 6)
    w = ambi_expansion(ns2, Ambinumber(ComplexInput.exact(F(1, 3)), pt), 12)
    v = numeric_evaluate(ns2, w)
    assert abs(v.value - 1 / 3) <= v.error_bound
    assert converges_to(ns2, w, ns2.alpha * 9 + 6, 12)


def test_any_word_constant_fours(ns_cyclic):
    e = constant_word(4, 150)
    lim = any_word_is_some_ambinumber(ns_cyclic, e)
    assert lim.cauchy
    assert lim.complex_limit.error_bound < 1e-5
    # geometric series 4 * sum alpha**-j for j >= 0
    a = ns_cyclic.alpha_complex
    assert abs(lim.complex_limit.value - 4 / (1 - 1 / a)) <= lim.complex_limit.error_bound
    for p, r in den_primes(ns_cyclic):
        for l, x in lim.trends[p]:
            assert x == r * l - valuation(4, p)


def test_any_word_empty(ns):
    lim = any_word_is_some_ambinumber(ns, parse_expansion(""))
    assert lim.complex_limit.value == 0 and lim.cauchy
    assert all(v == [] for v in lim.trends.values())


def test_finite_valid_word_y_limit(ns):
    e = parse_expansion("223011")
    assert evaluate(ns, e) == parse_gauss_expr("-6+6i")
