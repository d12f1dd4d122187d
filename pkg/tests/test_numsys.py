from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from alphaexp.cli import parse_gauss_expr
from alphaexp.errors import DomainError
from alphaexp.gaussian import GaussInt, GaussRat
from alphaexp.numsys import (
    ORIGIN,
    CycleReport,
    Expansion,
    LatticePoint,
    backward_divide,
    child,
    evaluate,
    expand,
    format_expansion,
    integer_expansion,
    lattice_value,
    make_number_system,
    parse_expansion,
    to_lattice,
    validate_expansion,
    validate_expansion_slow,
)

from conftest import SMALL_WORDS

coords = st.integers(-40, 40)


def test_polynomial_and_basis(ns):
    assert (ns.a2, ns.a1, ns.a0) == (2, 2, 5)
    assert list(ns.digits) == [0, 1, 2, 3, 4]
    assert ns.brunotte == (GaussRat.coerce(2), GaussRat(F(1), F(3)))
    assert ns.num == GaussInt(-2, 1) and ns.den == GaussInt(1, 1)


def test_second_base(ns2):
    assert (ns2.a2, ns2.a1, ns2.a0) == (9, 6, 26)


def test_cyclic_base(ns_cyclic):
    assert (ns_cyclic.a2, ns_cyclic.a1, ns_cyclic.a0) == (9, -18, 13)
    assert ns_cyclic.brunotte[1] == GaussRat(F(-9), F(6))


def test_rational_base():
    ns = make_number_system(GaussRat(F(-3, 2), F(0)))
    assert ns.degree == 1 and (ns.a2, ns.a0) == (2, 3)
    assert expand(ns, 6).word() == "21120"


def test_non_expanding_rejected():
    for a in ("1/2", "(1+i)/2", "i", "-1"):
        with pytest.raises(DomainError):
            make_number_system(parse_gauss_expr(a))


@pytest.mark.parametrize("n, word", sorted(SMALL_WORDS.items()))
def test_small_word_expansions(ns, n, word):
    assert expand(ns, parse_gauss_expr(n)).word() == word


def test_worked_step(ns):
    d, n1 = backward_divide(ns, to_lattice(ns, GaussRat(F(1), F(3))))
    assert d == 2 and lattice_value(ns, n1) == 2


def test_cycle_report(ns_cyclic):
    rep = integer_expansion(ns_cyclic, GaussRat(F(0), F(6)))
    assert isinstance(rep, CycleReport)
    assert [lattice_value(ns_cyclic, p) for p in rep.cycle] == [GaussRat(F(0), F(6))]
    assert rep.cycle_digits == (4,)
    with pytest.raises(DomainError):
        expand(ns_cyclic, GaussRat(F(0), F(6)))


def test_zero_is_empty(ns):
    e = expand(ns, 0)
    assert e.is_empty and evaluate(ns, e) == 0


def test_off_lattice(ns):
    assert to_lattice(ns, 1) is None
    with pytest.raises(DomainError):
        expand(ns, 1)


def test_format_and_parse_roundtrip():
    for text in ("22", "22.3", "0.0042", "2.234112142444000"):
        e = parse_expansion(text)
        assert format_expansion(e) == text
    e = parse_expansion("9,15.23,20")
    assert e.digits == (9, 15, 23, 20) and e.msb_exponent == 1
    assert format_expansion(e, base=26) == "9,15.23,20"


def test_leading_zeros_stripped():
    e = Expansion((0, 0, 4, 2), 3)
    assert e.digits == (4, 2) and e.msb_exponent == 1


@settings(max_examples=300)
@given(coords, coords)
def test_expansion_evaluates_back(ns, lam, mu):
    p = LatticePoint(lam, mu)
    e = expand(ns, p)
    assert evaluate(ns, e) == lattice_value(ns, p)
    assert validate_expansion(ns, e) and validate_expansion_slow(ns, e)


@settings(max_examples=200)
@given(coords, coords)
def test_finite_bases_expand(finite_ns, lam, mu):
    if finite_ns.degree == 1:
        mu = 0
    p = LatticePoint(lam, mu)
    assert evaluate(finite_ns, expand(finite_ns, p)) == lattice_value(finite_ns, p)


@settings(max_examples=200)
@given(coords, coords, st.integers(0, 30))
def test_child_inverts_backward_division(ns2, lam, mu, d):
    p = LatticePoint(lam, mu)
    c = child(ns2, p, d)
    direct = to_lattice(ns2, lattice_value(ns2, p) * ns2.alpha + d)
    assert c == direct
    if c is not None and d < ns2.base:
        assert backward_divide(ns2, c) == (d, p)


@settings(max_examples=200)
@given(st.lists(st.integers(0, 4), max_size=12), st.integers(-6, 6))
def test_fast_and_slow_validation_agree(ns, ds, msb):
    e = Expansion(tuple(ds), msb)
    assert validate_expansion(ns, e) == validate_expansion_slow(ns, e)
