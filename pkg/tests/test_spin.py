from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import elements, t_elements
from thompson_links.errors import BudgetExceeded
from thompson_links.graphs import gamma_F, gamma_T
from thompson_links.poly import q_poly
from thompson_links.spin import (
    ScaledPoly, SpinWeightSystem, chromatic, chromatic_from_tutte, chromatic_weights, coefficient_chromatic,
    coefficient_spin, digit_sum, in_F_arrow, in_h_stabilizer, in_T_arrow, normalize_check,
    partition_function, permutation_weights, stabilizes_odd_digit_sum, tutte,
)
from thompson_links.thompson import (
    IDENTITY, TElement, TreePair, element_C, multiply, random_element, reduce, slopes, x0,
)

SWAP = [1, 0]


def count_colourings(n, edges, Q):
    return sum(all(c[u] != c[v] for u, v in edges)
               for c in itertools.product(range(Q), repeat=n))


def test_identity_coefficient():
    assert coefficient_chromatic(IDENTITY, 2) == 2
    assert coefficient_chromatic(IDENTITY) == ScaledPoly(q_poly({1: 1}), 0)
    assert in_F_arrow(IDENTITY)


def test_x0_coefficient():
    # Γ(x0) is a triangle with one doubled edge: Q(Q-1)(Q-2) / (Q-1)^2
    assert str(coefficient_chromatic(x0())) == "(Q^2 - 2*Q) / (Q - 1)"
    assert coefficient_chromatic(x0(), 3) == Fraction(3, 2)
    assert not in_F_arrow(x0())


@given(elements(7), st.sampled_from([2, 3, 4]))
def test_chromatic_counts_colourings(g, Q):
    graph = gamma_F(g)
    edges = [(a.source, a.target) for a in graph.edges]
    assert chromatic(graph)(Q) == count_colourings(graph.n_vertices, edges, Q)


@given(elements(9))
def test_chromatic_from_tutte(g):
    assert chromatic(gamma_F(g)) == chromatic_from_tutte(gamma_F(g))


@given(elements(8), st.sampled_from([2, 3, 4]))
def test_coefficient_matches_spin_sum(g, Q):
    assert coefficient_chromatic(g, Q) == coefficient_spin(g, Q)


@given(t_elements(6), st.sampled_from([2, 3]))
def test_T_coefficient_matches_spin_sum(g, Q):
    assert coefficient_chromatic(g, Q) == coefficient_spin(g, Q)


def test_C_coefficients():
    c = element_C()
    for Q in (2, 3):
        assert coefficient_chromatic(c, Q) == partition_function(gamma_T(c), chromatic_weights(Q))
    assert not in_T_arrow(c)


@given(elements(10))
def test_F_arrow_characterisations(g):
    member = in_F_arrow(g)
    assert coefficient_chromatic(g, 2) == (2 if member else 0)
    assert stabilizes_odd_digit_sum(g) == member
    assert in_h_stabilizer(g, SWAP, 0) == member
    if member:
        assert slopes(g)[1] % 2 == 0


@given(elements(8), elements(8))
def test_F_arrow_is_a_subgroup(g, h):
    if in_F_arrow(g) and in_F_arrow(h):
        assert in_F_arrow(reduce(multiply(g, h)))


@given(t_elements(7))
def test_T_arrow_characterisations(g):
    member = in_T_arrow(g)
    assert coefficient_chromatic(g, 2) == (2 if member else 0)
    assert stabilizes_odd_digit_sum(g, up_to_swap=True) == member
    assert in_h_stabilizer(g, SWAP, 0) == member


def test_rotation_by_half_swaps_parity():
    half_turn = TElement(TreePair((None, None), (None, None)), 1)
    assert in_T_arrow(half_turn)
    assert not stabilizes_odd_digit_sum(half_turn)
    assert stabilizes_odd_digit_sum(half_turn, up_to_swap=True)


def test_digit_sum():
    assert digit_sum(Fraction(1, 2)) == 1
    assert digit_sum(Fraction(3, 8)) == 2
    assert digit_sum(Fraction(0)) == 0


@given(elements(8))
def test_identity_permutation_stabilises_everything(g):
    assert in_h_stabilizer(g, [0, 1, 2], 1)


@pytest.mark.parametrize("Q", [2, 3, 5])
def test_chromatic_weights_normalised(Q):
    assert normalize_check(chromatic_weights(Q))


def test_permutation_weights_normalised():
    assert normalize_check(permutation_weights([1, 2, 0]))
    assert not normalize_check(SpinWeightSystem(2, [[1, 1], [1, 1]], [[1, 1], [1, 1]]))


@given(elements(8), st.sampled_from([2, 3]))
def test_identity_permutation_counts_spins(g, Q):
    # Γ(g) is connected, so only constant spin assignments survive
    assert partition_function(gamma_F(g), permutation_weights(list(range(Q)))) == Q


def test_tutte_small():
    # a doubled edge: x + y
    assert str(tutte((2, [(0, 1), (0, 1)]))) == "x + y"


def test_spin_budget():
    rng = random.Random(3)
    g = random_element(rng, 12)
    while g.leaf_count < 6:
        g = random_element(rng, 12)
    with pytest.raises(BudgetExceeded):
        coefficient_spin(g, 2, max_vertices=3)
