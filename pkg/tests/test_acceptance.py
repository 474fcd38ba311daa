"""Acceptance criteria 1-10, each with its stated tolerance and time limit.

Every test prints one ``CRITERION n: PASS/FAIL`` line (visible with or without
``-s``) before asserting.
"""

from __future__ import annotations

import random
import time
from dataclasses import replace
from fractions import Fraction

import pytest

from thompson_links.alexander import (
    apply_move, find_moves, from_link, from_link_oriented, reduce_badness_step, tb,
)
from thompson_links.graphs import (
    StandardSignedGraph, gamma_F, gamma_T, is_bipartite, random_standard_graph, reconstruct,
)
from thompson_links.links import (
    CROSSING_FACTOR, DELTA, LinkDiagram, braid_closure, disjoint_union, jones, jones_set,
    kauffman_bracket, link_equiv_up_to_unknots, link_invariant, medial_link, semidual, unknot,
)
from thompson_links.poly import LaurentPoly, q_poly
from thompson_links.spin import (
    ScaledPoly, chromatic_weights, coefficient_chromatic, coefficient_spin, in_F_arrow,
    in_h_stabilizer, partition_function,
)
from thompson_links.thompson import (
    IDENTITY, TElement, add_cancelling_caret, element_C, evaluate, power, random_element, slopes,
)

CORPUS = {
    "unknot": LinkDiagram((), 1),
    "hopf": LinkDiagram([[4, 1, 3, 2], [2, 3, 1, 4]]),
    "trefoil": LinkDiagram([[1, 5, 2, 4], [3, 1, 4, 6], [5, 3, 6, 2]]),
    "figure-eight": LinkDiagram([[4, 2, 5, 1], [8, 6, 1, 5], [6, 3, 7, 4], [2, 7, 3, 8]]),
    "borromean": LinkDiagram([[6, 1, 7, 2], [12, 8, 9, 7], [4, 12, 1, 11],
                              [10, 5, 11, 6], [8, 4, 5, 3], [2, 9, 3, 10]]),
}
BORROMEAN_REFERENCE_LEAVES = 20
TB_DROP = {"Case1": 2, "Case2": 1, "Case3": 1, "Case4": 1}


@pytest.fixture
def report(capsys):
    def emit(n: int, ok: bool, elapsed: float, limit: float, detail: str = ""):
        status = "PASS" if ok and elapsed < limit else "FAIL"
        with capsys.disabled():
            print(f"\nCRITERION {n}: {status} ({elapsed:.2f}s / limit {limit:.0f}s) {detail}".rstrip())
        assert ok, detail
        assert elapsed < limit, f"took {elapsed:.1f}s, limit {limit}s"
    return emit


def test_criterion_1_gamma_round_trip(report):
    rng = random.Random(1)
    start = time.perf_counter()
    bad = 0
    for _ in range(1000):
        g = random_element(rng, 12)
        bad += reconstruct(gamma_F(g)) != g
    report(1, bad == 0, time.perf_counter() - start, 10, f"{bad} mismatches in 1000")


def test_criterion_2_coefficient_oracle(report):
    rng = random.Random(2)
    start = time.perf_counter()
    bad = 0
    for _ in range(200):
        g = random_element(rng, 8)
        for Q in (2, 3, 4):
            bad += coefficient_chromatic(g, Q) != coefficient_spin(g, Q)
    report(2, bad == 0, time.perf_counter() - start, 60, f"{bad} mismatches in 600")


def test_criterion_3_identity_and_caret(report):
    rng = random.Random(3)
    start = time.perf_counter()
    ok = coefficient_chromatic(IDENTITY) == ScaledPoly(q_poly({1: 1}), 0)
    for _ in range(50):
        g = random_element(rng, 8)
        h = add_cancelling_caret(g, rng.randrange(g.leaf_count))
        ok &= coefficient_chromatic(h) == coefficient_chromatic(g)
    report(3, ok, time.perf_counter() - start, 60)


def test_criterion_4_F_arrow_consistency(report):
    rng = random.Random(4)
    start = time.perf_counter()
    bad = members = 0
    for _ in range(500):
        g = random_element(rng, 10)
        member = is_bipartite(gamma_F(g))
        members += member
        bad += coefficient_chromatic(g, 2) != (2 if member else 0)
        bad += member and slopes(g)[1] % 2 != 0
        bad += in_h_stabilizer(g, [1, 0], 0) != member
    report(4, bad == 0 and 0 < members < 500, time.perf_counter() - start, 60,
           f"{members} members, {bad} disagreements")


def _random_diagram(rng):
    if rng.random() < 0.5:
        n = rng.randint(2, 4)
        word = [rng.choice([1, -1]) * rng.randint(1, n - 1) for _ in range(rng.randint(1, 8))]
        return braid_closure(word, n)
    while True:
        g = random_standard_graph(rng, 5, 8)
        if g.edges:
            return medial_link(g)


def test_criterion_5_skein_engine(report):
    rng = random.Random(5)
    start = time.perf_counter()
    ok = jones(unknot()) == 1
    loop = LaurentPoly({1: -1, -1: -1}, "s")
    for _ in range(20):
        L = _random_diagram(rng)
        assert len(L.crossings) <= 8
        ok &= jones_set(disjoint_union(L, unknot())) == {loop * v for v in jones_set(L)}
    for _ in range(20):
        word = [rng.choice([1, -1, 2, -2]) for _ in range(rng.randint(0, 5))]
        base = kauffman_bracket(braid_closure(word, 3))
        i = rng.choice([1, 2])
        ok &= kauffman_bracket(braid_closure(word + [i, -i], 3)) == base
        ok &= kauffman_bracket(braid_closure(word + [1, 2, 1], 3)) == \
            kauffman_bracket(braid_closure(word + [2, 1, 2], 3))
        for e in (1, -1):
            ok &= kauffman_bracket(braid_closure(word + [3 * e], 4)) == base * CROSSING_FACTOR ** e
    ok &= kauffman_bracket(LinkDiagram([[1, 1, 2, 2]])) == DELTA * LaurentPoly({-3: -1})
    report(5, ok, time.perf_counter() - start, 30)


def test_criterion_6_move_soundness(report):
    rng = random.Random(6)
    start = time.perf_counter()
    counts = {k: 0 for k in ("I", "IIa", "IIb", *TB_DROP)}
    bad = []
    graphs = [random_standard_graph(rng, 6, 10) for _ in range(500)]
    # Thompson graphs with flipped signs exercise Case 4 directly
    for _ in range(500):
        g = gamma_F(random_element(rng, 6))
        if g.edges:
            edges = list(g.edges)
            k = rng.randrange(len(edges))
            edges[k] = replace(edges[k], sign=-edges[k].sign)
            graphs.append(StandardSignedGraph(g.n_vertices, tuple(edges)))
    for g in graphs:
        inv = link_invariant(medial_link(g), 400)
        for move in find_moves(g):
            counts[move.kind] += 1
            if link_invariant(medial_link(apply_move(g, move)), 400) != inv:
                bad.append(move.kind)
        if tb(g):
            h, entry = reduce_badness_step(g)
            counts[entry.move] += 1
            if tb(g) - tb(h) != TB_DROP[entry.move] or link_invariant(medial_link(h), 400) != inv:
                bad.append(entry.move)
    ok = not bad and all(counts.values())
    report(6, ok, time.perf_counter() - start, 300, f"counts {counts}, failures {bad[:5]}")


def test_criterion_7_all_links(report):
    start = time.perf_counter()
    ok = True
    details = []
    for name, L in CORPUS.items():
        result = from_link(L)
        out = medial_link(gamma_F(result.element))
        ok &= bool(result.verified) and link_equiv_up_to_unknots(out, L, 400)
        details.append(f"{name}={result.leaf_count}")
        if name == "borromean":
            details[-1] += f" (reference {BORROMEAN_REFERENCE_LEAVES})"
    report(7, ok, time.perf_counter() - start, 300, "leaves: " + ", ".join(details))


def test_criterion_8_all_oriented(report):
    start = time.perf_counter()
    ok = True
    used = []
    for name, L in CORPUS.items():
        if not any(is_bipartite(semidual(L, s)) for s in (False, True)):
            continue
        result = from_link_oriented(L)
        ok &= in_F_arrow(result.element) and bool(result.verified)
        used.append(f"{name}={result.leaf_count}")
    ok &= len(used) >= 3
    report(8, ok, time.perf_counter() - start, 300, "2-colourable: " + ", ".join(used))


def test_criterion_9_T_sanity(report):
    start = time.perf_counter()
    c = element_C()
    ok = evaluate(c, 0) == Fraction(3, 4) and power(c, 3) == TElement(IDENTITY, 0)
    for Q in (2, 3):
        ok &= coefficient_chromatic(c, Q) == partition_function(gamma_T(c), chromatic_weights(Q))
    report(9, ok, time.perf_counter() - start, 5)


def test_criterion_10_torus_links(capsys):
    with capsys.disabled():
        print("\nCRITERION 10: SKIPPED (no explicit tree pair for omega is available)")
    pytest.skip("no explicit tree pair for omega is available")
