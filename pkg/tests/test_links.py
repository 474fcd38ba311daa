from __future__ import annotations

import random
from itertools import product

import pytest
from hypothesis import given, strategies as st

from thompson_links.errors import BudgetExceeded, ThompsonError
from thompson_links.graphs import random_standard_graph
from thompson_links.links import (
    CROSSING_FACTOR, DELTA, LinkDiagram, braid_closure, components, disjoint_union, format_jones,
    jones, jones_set, kauffman_bracket, link_equiv_up_to_unknots, link_invariant, medial_link,
    mirror, semidual, unknot, writhe,
)
from thompson_links.poly import LaurentPoly

TREFOIL = LinkDiagram([[1, 5, 2, 4], [3, 1, 4, 6], [5, 3, 6, 2]])
FIGURE_EIGHT = LinkDiagram([[4, 2, 5, 1], [8, 6, 1, 5], [6, 3, 7, 4], [2, 7, 3, 8]])
HOPF = LinkDiagram([[4, 1, 3, 2], [2, 3, 1, 4]])
BORROMEAN = LinkDiagram([[6, 1, 7, 2], [12, 8, 9, 7], [4, 12, 1, 11],
                         [10, 5, 11, 6], [8, 4, 5, 3], [2, 9, 3, 10]])


def t(terms):
    """Jones polynomial from {exponent of t: coefficient} (half-integers allowed)."""
    return LaurentPoly({int(2 * k): c for k, c in terms.items()}, "s")


def brute_bracket(L: LinkDiagram) -> LaurentPoly:
    """Plain 2^c state sum with union-find loop counting (a lone loop counts δ)."""
    total = LaurentPoly()
    labels = L.labels()
    for state in product((0, 1), repeat=len(L.crossings)):
        parent = {x: x for x in labels}

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x

        # each label is one arc; a smoothing glues arcs together
        for (a, b, c, d), s in zip(L.crossings, state):
            pairs = ((a, d), (b, c)) if s == 0 else ((a, b), (c, d))
            for p, q in pairs:
                parent[find(p)] = find(q)
        loops = len({find(x) for x in labels}) + L.free_loops
        a_count = state.count(0)
        term = LaurentPoly({a_count - (len(state) - a_count): 1}) * DELTA ** loops
        total = total + term
    return total


def random_diagram(rng: random.Random, max_crossings: int = 8) -> LinkDiagram:
    if rng.random() < 0.5:
        n = rng.randint(2, 4)
        word = [rng.choice([1, -1]) * rng.randint(1, n - 1) for _ in range(rng.randint(1, max_crossings))]
        return braid_closure(word, n)
    while True:
        g = random_standard_graph(rng, max_vertices=5, max_edges=max_crossings)
        if g.edges:
            return medial_link(g)


diagrams = st.integers(0, 2 ** 32 - 1).map(lambda s: random_diagram(random.Random(s)))


def test_unknot():
    assert kauffman_bracket(unknot()) == DELTA
    assert jones(unknot()) == 1


def test_corpus_jones():
    assert jones(TREFOIL) == t({-1: 1, -3: 1, -4: -1})
    assert jones(FIGURE_EIGHT) == t({2: 1, 1: -1, 0: 1, -1: -1, -2: 1})
    assert jones(BORROMEAN) == t({3: -1, 2: 3, 1: -2, 0: 4, -1: -2, -2: 3, -3: -1})
    assert jones_set(HOPF) == {t({-0.5: -1, -2.5: -1}), t({2.5: -1, 0.5: -1})}


def test_kink():
    kink = LinkDiagram([[1, 1, 2, 2]])
    assert kauffman_bracket(kink) == DELTA * CROSSING_FACTOR ** -1
    assert jones(kink) == 1


def test_format_jones():
    assert format_jones(jones(TREFOIL)) == "t^(-1) + t^(-3) - t^(-4)"
    assert "t^(-1/2)" in format_jones(jones(HOPF, [1, 1])) + format_jones(jones(HOPF, [1, -1]))


def test_braid_trefoil_is_mirror_of_corpus():
    right = braid_closure([1, 1, 1], 2)
    assert writhe(right) == 3
    assert jones(right) == t({1: 1, 3: 1, 4: -1})
    assert link_invariant(mirror(TREFOIL)) == link_invariant(right)


@given(diagrams)
def test_bracket_matches_state_sum(L):
    assert kauffman_bracket(L) == brute_bracket(L)


@given(diagrams)
def test_distant_unknot_multiplies_by_delta(L):
    U = disjoint_union(L, unknot())
    assert kauffman_bracket(U) == kauffman_bracket(L) * DELTA
    assert jones_set(U) == {v * t({0.5: -1, -0.5: -1}) for v in jones_set(L)}


@given(diagrams)
def test_mirror_inverts_A(L):
    br = kauffman_bracket(L)
    assert kauffman_bracket(mirror(L)) == LaurentPoly({-k: c for k, c in br.items()})


@given(st.lists(st.sampled_from([1, -1, 2, -2]), min_size=1, max_size=6), st.sampled_from([1, -1]))
def test_reidemeister_one(word, e):
    base = braid_closure(word, 3)
    kinked = braid_closure(word + [e * 3], 4)
    assert kauffman_bracket(kinked) == kauffman_bracket(base) * CROSSING_FACTOR ** e
    assert jones_set(kinked) == jones_set(base)


@given(st.lists(st.sampled_from([1, -1, 2, -2]), max_size=6), st.sampled_from([1, 2]))
def test_reidemeister_two(word, i):
    L1 = braid_closure(word + [i, -i], 3)
    L2 = braid_closure(word, 3)
    assert kauffman_bracket(L1) == kauffman_bracket(L2)


@given(st.lists(st.sampled_from([1, -1, 2, -2]), max_size=6))
def test_reidemeister_three(word):
    assert kauffman_bracket(braid_closure(word + [1, 2, 1], 3)) == \
        kauffman_bracket(braid_closure(word + [2, 1, 2], 3))
    assert kauffman_bracket(braid_closure(word + [-1, -2, -1], 3)) == \
        kauffman_bracket(braid_closure(word + [-2, -1, -2], 3))


@pytest.mark.parametrize("L", [TREFOIL, FIGURE_EIGHT, HOPF, BORROMEAN], ids=["3_1", "4_1", "hopf", "borr"])
@pytest.mark.parametrize("outer_shaded", [False, True])
def test_semidual_medial_round_trip(L, outer_shaded):
    g = semidual(L, outer_shaded)
    assert g.is_planar_embedding()
    assert len(g.edges) == len(L.crossings)
    assert link_equiv_up_to_unknots(medial_link(g), L)


def test_components_and_writhe():
    assert len(components(HOPF)) == 2
    assert len(components(BORROMEAN)) == 3
    assert writhe(TREFOIL) == -3
    assert writhe(FIGURE_EIGHT) == 0


def test_equivalence_separates_knots():
    assert not link_equiv_up_to_unknots(TREFOIL, FIGURE_EIGHT)
    assert not link_equiv_up_to_unknots(TREFOIL, mirror(TREFOIL))
    assert link_equiv_up_to_unknots(TREFOIL, disjoint_union(TREFOIL, unknot(2)))


def test_budget():
    with pytest.raises(BudgetExceeded):
        kauffman_bracket(BORROMEAN, max_crossings=5)


def test_invalid_pd():
    with pytest.raises(ThompsonError):
        LinkDiagram([[1, 2, 3, 4]])


def test_json_round_trip():
    assert LinkDiagram.loads(BORROMEAN.dumps()) == BORROMEAN
    assert LinkDiagram.from_json({"pd": [[1, 1, 2, 2]]}) == LinkDiagram([[1, 1, 2, 2]])
