import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from alphaexp.cli import parse_gauss_expr
from alphaexp.errors import DomainError, ResourceError
from alphaexp.language import (
    branch_digits,
    branch_digits_brute,
    enumerate_level,
    iter_tree,
    length_bounds,
    level_size_bound,
)
from alphaexp.numsys import ORIGIN, LatticePoint, expand, lattice_value, to_lattice

from conftest import SMALL_WORDS


def test_root_and_subtree_children(ns):
    assert branch_digits(ns, ORIGIN)[1] == [0, 2, 4]
    n = to_lattice(ns, parse_gauss_expr("-1+3i"))  # the node reached by "20"
    assert branch_digits(ns, n)[1] == [1, 3]


def test_two_child_node(ns2):
    n = to_lattice(ns2, ns2.alpha * 9 + 6)
    assert branch_digits(ns2, n)[1] == [8, 17]


def test_residue_classes_brute_force(finite_ns):
    rng = random.Random(7)
    for _ in range(300):
        p = LatticePoint(rng.randint(-500, 500), 0 if finite_ns.degree == 1 else rng.randint(-500, 500))
        assert branch_digits(finite_ns, p)[1] == branch_digits_brute(finite_ns, p)


def test_level_sizes(ns):
    sizes = [len(enumerate_level(ns, k)) for k in range(9)]
    assert sizes == [1, 3, 9, 24, 62, 155, 388, 971, 2431]
    assert all(s <= 3**k == level_size_bound(ns, k) for k, s in enumerate(sizes))


def test_level_words_are_expansions(ns):
    for word, node in enumerate_level(ns, 4):
        stripped = list(word)
        while stripped and stripped[0] == 0:
            stripped.pop(0)
        assert list(expand(ns, node).digits) == stripped


def test_level_order_is_lexicographic(ns2):
    words = [w for w, _ in enumerate_level(ns2, 3)]
    assert words == sorted(words)


def test_level_cap(ns):
    with pytest.raises(ResourceError):
        enumerate_level(ns, 6, cap=100)
    with pytest.raises(DomainError):
        enumerate_level(ns, -1)


def test_tree_preorder_parents_first(ns):
    seen = set()
    for node in iter_tree(ns, 3):
        assert node.path[:-1] in seen or not node.path
        seen.add(node.path)


@pytest.mark.parametrize("n", sorted(SMALL_WORDS))
def test_length_bracket_small_words(ns, n):
    lo, hi = length_bounds(ns, parse_gauss_expr(n))
    assert lo <= len(SMALL_WORDS[n]) <= hi


@settings(max_examples=200, deadline=None)
@given(st.integers(-300, 300), st.integers(-300, 300))
def test_length_bracket_property(finite_ns, lam, mu):
    if finite_ns.degree == 1:
        mu = 0
    p = LatticePoint(lam, mu)
    if p == ORIGIN:
        return
    lo, hi = length_bounds(finite_ns, p)
    assert lo <= len(expand(finite_ns, p)) <= hi


def test_length_bracket_zero(ns):
    with pytest.raises(DomainError):
        length_bounds(ns, 0)
