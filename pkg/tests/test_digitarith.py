import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from alphaexp.digitarith import add, carry_word, multiply, oracle_add, oracle_mul
from alphaexp.errors import DomainError, ResourceError
from alphaexp.numsys import Expansion, LatticePoint, evaluate, expand, parse_expansion, validate_expansion


def w(s):
    return parse_expansion(s)


def test_worked_sum_and_product(ns):
    assert add(ns, w("442"), w("2234")).word() == "201"
    assert multiply(ns, w("223"), w("42")).word() == "2232141"


def test_carry_words(ns, ns2):
    assert carry_word(ns).word() == "203"
    assert carry_word(ns2).word(",") == "9,15,23,20"


def test_identities(ns):
    x = w("2234")
    assert add(ns, x, w("")) == x
    assert multiply(ns, x, w("")).is_empty


def test_invalid_operand_rejected(ns):
    with pytest.raises(DomainError):
        add(ns, w("200"), w("2"))


def test_rewrite_budget(ns):
    with pytest.raises(ResourceError):
        multiply(ns, w("223"), w("42"), max_rewrites=1)


def test_non_finite_base_rejected(ns_cyclic):
    with pytest.raises(DomainError):
        add(ns_cyclic, w("4"), w("4"))


def test_fractional_words(ns):
    x = w("2.2")
    y = w("4.4")
    s = add(ns, x, y)
    assert evaluate(ns, s) == evaluate(ns, x) + evaluate(ns, y)


def _random_points(ns, rng, k, r=200):
    out = []
    for _ in range(k):
        mu = 0 if ns.degree == 1 else rng.randint(-r, r)
        out.append(LatticePoint(rng.randint(-r, r), mu))
    return out


def test_against_oracle_random(finite_ns):
    rng = random.Random(3)
    pts = _random_points(finite_ns, rng, 40)
    for a, b in zip(pts, reversed(pts)):
        x, y = expand(finite_ns, a), expand(finite_ns, b)
        assert add(finite_ns, x, y) == oracle_add(finite_ns, x, y)
        assert multiply(finite_ns, x, y) == oracle_mul(finite_ns, x, y)


@settings(max_examples=100, deadline=None)
@given(st.integers(-60, 60), st.integers(-60, 60), st.integers(-60, 60), st.integers(-60, 60))
def test_commutative_and_valid(ns2, a, b, c, d):
    x, y = expand(ns2, LatticePoint(a, b)), expand(ns2, LatticePoint(c, d))
    s, t = add(ns2, x, y), add(ns2, y, x)
    assert s == t and validate_expansion(ns2, s)
    assert multiply(ns2, x, y) == multiply(ns2, y, x)


def test_unchecked_words_keep_value(ns):
    # arbitrary digit strings may be combined when checking is disabled
    x, y = w("1"), w("3.1")
    s = add(ns, x, y, check=False)
    assert evaluate(ns, s) == evaluate(ns, x) + evaluate(ns, y)
    exact = Expansion((1, 3), 0)
    m = multiply(ns, w("11"), exact, check=False)
    assert evaluate(ns, m) == evaluate(ns, w("11")) * evaluate(ns, exact)


def test_truncated_product_drops_unknown_digits(ns):
    m = multiply(ns, w("11"), w("1.3"), check=False)
    assert m.truncated and m.lsb_exponent == 0
