from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from alphaexp.errors import DomainError
from alphaexp.finiteness import (
    SrsParam,
    build_witness_set,
    decide_finiteness,
    has_finiteness_property,
    iota,
    iota_inv,
    srs_param,
    srs_step,
    witness_values,
)
from alphaexp.gaussian import GaussRat
from alphaexp.numsys import backward_divide, lattice_value, make_number_system

from conftest import CYCLIC, MAIN, SECOND

WITNESS_MAIN = {(0, 1), (-1, 1), (0, 0), (-1, 0), (0, -1), (1, 0), (1, -1)}
V_MAIN = {
    GaussRat(F(1), F(3)), GaussRat(F(-1), F(3)), GaussRat(F(0), F(0)), GaussRat(F(-2), F(0)),
    GaussRat(F(-1), F(-3)), GaussRat(F(2), F(0)), GaussRat(F(1), F(-3)),
}


def test_witness_set_main(ns):
    dec = decide_finiteness(ns)
    assert dec.finite
    assert set(dec.witnesses) == WITNESS_MAIN
    assert witness_values(ns, dec.witnesses) == V_MAIN


def test_cyclic_base_not_finite(ns_cyclic):
    dec = decide_finiteness(ns_cyclic)
    assert not dec.finite
    cycle_points = [[lattice_value(ns_cyclic, iota(ns_cyclic, z)) for z in c] for c in dec.cycles]
    assert [GaussRat(F(0), F(6))] in cycle_points


@pytest.mark.parametrize(
    "alpha, finite",
    [
        (MAIN, True),
        (SECOND, True),
        (CYCLIC, False),
        (GaussRat(F(-3, 2), F(0)), True),
        (GaussRat(F(-1), F(1)), True),
        (GaussRat(F(3, 2), F(0)), False),
        (GaussRat(F(1), F(1)), False),
    ],
)
def test_verdicts(alpha, finite):
    assert has_finiteness_property(make_number_system(alpha)) is finite


def test_positive_rational_base_has_negative_fixed_point():
    ns = make_number_system(GaussRat(F(3, 2), F(0)))
    d, nxt = backward_divide(ns, iota(ns, (1,)))
    assert lattice_value(ns, iota(ns, (1,))) == -2 and nxt == iota(ns, (1,)) and d == 1


def test_non_contracting_parameter_rejected():
    with pytest.raises(DomainError):
        SrsParam((F(2), F(0)))


@pytest.mark.parametrize("alpha", [MAIN, SECOND, CYCLIC])
def test_conjugacy_box(alpha):
    ns = make_number_system(alpha)
    p = srs_param(ns)
    for z0 in range(-50, 51):
        for z1 in range(-50, 51):
            z = (z0, z1)
            _, nxt = backward_divide(ns, iota(ns, z))
            assert nxt == iota(ns, srs_step(p, z))


@given(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6))
def test_iota_roundtrip(ns2, a, b):
    assert iota_inv(ns2, iota(ns2, (a, b))) == (a, b)


def test_witness_set_closed(ns2):
    p = srs_param(ns2)
    w = build_witness_set(p)
    for z in w:
        assert srs_step(p, z) in w
        assert tuple(-x for x in srs_step(p, tuple(-x for x in z))) in w
