from __future__ import annotations

import json
import random

import pytest
from hypothesis import given, strategies as st

from thompson_links.alexander import (
    apply_move, classify, find_moves, from_link, from_link_oriented, reduce_badness_step,
    reduce_to_thompson, standardize, subdivide, tb,
)
from thompson_links.errors import ThompsonError
from thompson_links.graphs import gamma_F, is_bipartite, is_thompson, random_standard_graph
from thompson_links.links import LinkDiagram, braid_closure, link_invariant, medial_link, semidual, unknot
from thompson_links.spin import in_F_arrow
from thompson_links.thompson import IDENTITY

seeds = st.integers(0, 2 ** 32 - 1)
TB_DROP = {"Case1": 2, "Case2": 1, "Case3": 1, "Case4": 1}


def graph_from(seed, max_vertices=6, max_edges=10):
    return random_standard_graph(random.Random(seed), max_vertices, max_edges)


@given(seeds)
def test_local_moves_preserve_link(seed):
    g = graph_from(seed).to_embedded()
    before = link_invariant(medial_link(g))
    for move in find_moves(g):
        h = apply_move(g, move)
        assert h.is_planar_embedding()
        assert link_invariant(medial_link(h)) == before


@given(seeds, st.integers(0, 100), st.sampled_from([0, 1]), st.sampled_from([1, -1]))
def test_subdivision_preserves_link(seed, k, end, t):
    g = graph_from(seed).to_embedded()
    if not g.edges:
        return
    h = subdivide(g, k % len(g.edges), end, t)
    assert h.is_planar_embedding()
    assert is_bipartite(h) == is_bipartite(g)
    assert link_invariant(medial_link(h)) == link_invariant(medial_link(g))


@given(seeds, st.booleans())
def test_reduction_step(seed, oriented):
    g = graph_from(seed)
    if oriented and not is_bipartite(g):
        return
    found = classify(g)
    if found is None:
        assert tb(g) == 0 and is_thompson(g)
        return
    h, entry = reduce_badness_step(g, oriented)
    assert entry.move == found[0]
    assert tb(g) - tb(h) == TB_DROP[entry.move]
    assert (entry.tb_before, entry.tb_after) == (tb(g), tb(h))
    assert link_invariant(medial_link(h)) == link_invariant(medial_link(g))
    if oriented:
        assert is_bipartite(h)


@given(seeds)
def test_reduce_to_thompson(seed):
    g = graph_from(seed, 5, 7)
    h = reduce_to_thompson(g)
    assert is_thompson(h)
    assert link_invariant(medial_link(h), 400) == link_invariant(medial_link(g))


@given(seeds)
def test_standardize_round_trip(seed):
    emb = graph_from(seed, 5, 7).to_embedded()
    std = standardize(emb)
    assert link_invariant(medial_link(std)) == link_invariant(medial_link(emb))


@given(st.lists(st.sampled_from([1, -1, 2, -2]), min_size=1, max_size=5))
def test_from_link_on_braid_closures(word):
    L = braid_closure(word, 3)
    result = from_link(L)
    assert result.verified
    assert link_invariant(medial_link(gamma_F(result.element)), 400) == link_invariant(L)


def test_unknot_gives_identity():
    assert from_link(unknot()).element == IDENTITY
    assert from_link_oriented(unknot()).element == IDENTITY


def test_trace_is_json():
    result = from_link(LinkDiagram([[1, 5, 2, 4], [3, 1, 4, 6], [5, 3, 6, 2]]))
    data = json.loads(json.dumps(result.to_json()))
    assert data["verified"] is True
    assert [e["tb_before"] - e["tb_after"] for e in data["trace"] if e["move"].startswith("Case")] \
        == [TB_DROP[e["move"]] for e in data["trace"] if e["move"].startswith("Case")]


def test_oriented_trefoil():
    result = from_link_oriented(LinkDiagram([[1, 5, 2, 4], [3, 1, 4, 6], [5, 3, 6, 2]]))
    assert result.verified and in_F_arrow(result.element)


def test_oriented_rejects_non_bipartite():
    figure_eight = LinkDiagram([[4, 2, 5, 1], [8, 6, 1, 5], [6, 3, 7, 4], [2, 7, 3, 8]])
    assert not is_bipartite(semidual(figure_eight))
    with pytest.raises(ThompsonError):
        from_link_oriented(figure_eight)


def test_reduction_of_thompson_graph_refused():
    with pytest.raises(ThompsonError):
        reduce_badness_step(gamma_F(IDENTITY))
