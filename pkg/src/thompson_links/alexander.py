"""Realising links by elements of Thompson's group F.

Pipeline: link diagram -> signed planar graph (semidual) -> standard graph
(vertices on a line) -> badness reduction to a Thompson graph -> tree pair.
Every rewrite is built from the link-preserving local moves

* I: delete a 1-valent vertex and its edge (Reidemeister I),
* IIa: contract a 2-valent vertex whose edges have opposite signs (R II),
* IIb: delete two opposite-signed edges bounding a 2-gon (R II),

or their inverses, plus adding isolated vertices (distant unknots).
"""

from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass, field
from typing import Optional, Sequence, Union

from .errors import BudgetExceeded, ThompsonError
from .graphs import (DOWN, UP, Arc, EmbeddedSignedGraph, StandardSignedGraph, _components,
                     gamma_F, is_bipartite, reconstruct, two_colouring)
from .links import LinkDiagram, kauffman_bracket, link_invariant, medial_link, semidual, strip_delta
from .thompson import TreePair, reduce

Dart = tuple[int, int]


def tb(graph: StandardSignedGraph) -> int:
    """Badness: in-degree defects per half plus wrongly signed arcs."""
    total = 0
    for v in range(1, graph.n_vertices):
        total += abs(1 - len(graph.in_edges(v, UP))) + abs(1 - len(graph.in_edges(v, DOWN)))
    total += sum(1 for a in graph.edges if a.half == UP and a.sign < 0)
    total += sum(1 for a in graph.edges if a.half == DOWN and a.sign > 0)
    return total


# ---------------------------------------------------------------------------
# local moves on embedded graphs

@dataclass(frozen=True)
class Move:
    kind: str  # "I", "IIa" or "IIb"
    location: Union[int, tuple[int, int]]


def _as_embedded(graph) -> EmbeddedSignedGraph:
    return graph if isinstance(graph, EmbeddedSignedGraph) else graph.to_embedded()


def find_moves(graph) -> list[Move]:
    g = _as_embedded(graph)
    moves = []
    for x, rot in enumerate(g.rotation):
        if len(rot) == 1:
            moves.append(Move("I", x))
        elif len(rot) == 2:
            (e1, _), (e2, _) = rot
            u1, v1, s1 = g.edges[e1]
            u2, v2, s2 = g.edges[e2]
            if e1 != e2 and s1 != s2 and u1 != v1 and u2 != v2:
                a = v1 if u1 == x else u1
                b = v2 if u2 == x else u2
                if a != b:
                    moves.append(Move("IIa", x))
    for face in g.faces():
        if len(face) == 2:
            e1, e2 = sorted(d[0] for d in face)
            if e1 == e2:
                continue
            (u1, v1, s1), (u2, v2, s2) = g.edges[e1], g.edges[e2]
            if s1 != s2 and u1 != v1 and {u1, v1} == {u2, v2}:
                moves.append(Move("IIb", (e1, e2)))
    return moves


def _rebuild(g: EmbeddedSignedGraph, keep_vertices: Sequence[int], drop_edges: set[int],
             rotation: dict[int, list[Dart]], rename: Optional[dict[int, int]] = None,
             ) -> EmbeddedSignedGraph:
    rename = rename or {}
    vindex = {v: i for i, v in enumerate(keep_vertices)}
    keep_edges = [e for e in range(len(g.edges)) if e not in drop_edges]
    eindex = {e: i for i, e in enumerate(keep_edges)}
    edges = []
    for e in keep_edges:
        u, v, s = g.edges[e]
        edges.append((vindex[rename.get(u, u)], vindex[rename.get(v, v)], s))
    rot = [tuple((eindex[e], end) for e, end in rotation[v] if e not in drop_edges)
           for v in keep_vertices]
    return EmbeddedSignedGraph(len(keep_vertices), tuple(edges), tuple(rot))


def apply_move(graph, move: Move) -> EmbeddedSignedGraph:
    """Apply a move found by :func:`find_moves`; raises if the pattern is absent."""
    g = _as_embedded(graph)
    if move not in find_moves(g):
        raise ThompsonError(f"move {move} does not apply")
    rotation = {v: list(r) for v, r in enumerate(g.rotation)}
    if move.kind == "I":
        x = move.location
        (e, _), = g.rotation[x]
        keep = [v for v in range(g.n_vertices) if v != x]
        return _rebuild(g, keep, {e}, rotation)
    if move.kind == "IIb":
        return _rebuild(g, list(range(g.n_vertices)), set(move.location), rotation)
    # IIa: fuse the two neighbours of x
    x = move.location
    (e1, end1), (e2, end2) = g.rotation[x]
    a = g.edges[e1][1 - end1]
    b = g.edges[e2][1 - end2]
    da, db = (e1, 1 - end1), (e2, 1 - end2)
    rb = rotation[b]
    i = rb.index(db)
    spliced = rb[i + 1:] + rb[:i]
    ra = rotation[a]
    j = ra.index(da)
    rotation[a] = ra[:j] + spliced + ra[j + 1:]
    keep = [v for v in range(g.n_vertices) if v not in (x, b)]
    return _rebuild(g, keep, {e1, e2}, rotation, rename={b: a})


def subdivide(graph: EmbeddedSignedGraph, e: int, end: int = 1, t: int = 1) -> EmbeddedSignedGraph:
    """Replace edge ``e`` by a path of three edges (inverse of a IIa move).

    The end ``end`` of ``e`` is moved to a new vertex ``a``, and ``a`` is joined
    to the old endpoint ``w`` through a new vertex ``b`` by edges of signs
    ``t`` and ``-t``. Contracting ``b`` restores the input.
    """
    g = graph
    n, m = g.n_vertices, len(g.edges)
    a, b = n, n + 1
    w = g.edges[e][end]
    edges = [list(x) for x in g.edges]
    edges[e][end] = a
    edges.append([a, b, t])    # edge m
    edges.append([b, w, -t])   # edge m + 1
    rotation = [list(r) for r in g.rotation]
    rotation[w] = [(m + 1, 1) if d == (e, end) else d for d in rotation[w]]
    rotation.append([(e, end), (m, 0)])
    rotation.append([(m, 1), (m + 1, 0)])
    return EmbeddedSignedGraph(n + 2, tuple(tuple(x) for x in edges),
                               tuple(tuple(r) for r in rotation))


def remove_loops(graph: EmbeddedSignedGraph) -> EmbeddedSignedGraph:
    while True:
        loops = [e for e, (u, v, _) in enumerate(graph.edges) if u == v]
        if not loops:
            return graph
        graph = subdivide(graph, loops[0])


# ---------------------------------------------------------------------------
# badness reduction

@dataclass
class TraceEntry:
    move: str
    location: object
    tb_before: Optional[int] = None
    tb_after: Optional[int] = None
    vertices_added: int = 0
    edges_added: int = 0


@dataclass
class RewriteTrace:
    entries: list[TraceEntry] = field(default_factory=list)

    def append(self, entry: TraceEntry) -> None:
        self.entries.append(entry)

    def __len__(self) -> int:
        return len(self.entries)

    def to_json(self) -> list[dict]:
        return [asdict(e) for e in self.entries]


def _good_sign(half: str) -> int:
    return 1 if half == UP else -1


def _flip(half: str) -> str:
    return DOWN if half == UP else UP


class _Layout:
    """Mutable standard graph: a spine order of vertex ids plus arcs between ids."""

    def __init__(self, graph: StandardSignedGraph):
        self.order = list(range(graph.n_vertices))
        self.next_id = graph.n_vertices
        # arc = [endpoint, endpoint, half, sign, nesting key]
        self.arcs = [[a.source, a.target, a.half, a.sign, a.rank] for a in graph.edges]
        self.mirrored = False

    def pos(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.order)}

    def span(self, arc, pos=None) -> tuple[int, int]:
        pos = pos or self.pos()
        return tuple(sorted((arc[0], arc[1]), key=pos.__getitem__))

    def in_arcs(self, v: int, half: str, pos=None) -> list[list]:
        pos = pos or self.pos()
        return [a for a in self.arcs if a[2] == half and self.span(a, pos)[1] == v]

    def insert_left_of(self, v: int) -> int:
        w = self.next_id
        self.next_id += 1
        self.order.insert(self.order.index(v), w)
        return w

    def left_of(self, v: int) -> int:
        return self.order[self.order.index(v) - 1]

    def add_arc(self, u: int, v: int, half: str, sign: int) -> list:
        """New arc, innermost among any parallel arcs."""
        key = {u, v}
        parallel = [a[4] for a in self.arcs if a[2] == half and {a[0], a[1]} == key]
        arc = [u, v, half, sign, min(parallel) - 1 if parallel else 0]
        self.arcs.append(arc)
        return arc

    def mirror(self) -> None:
        for a in self.arcs:
            a[2] = _flip(a[2])
            a[3] = -a[3]
        self.mirrored = not self.mirrored

    def edge_pairs(self) -> list[tuple[int, int]]:
        pos = self.pos()
        return [(pos[a[0]], pos[a[1]]) for a in self.arcs]

    def to_standard(self) -> StandardSignedGraph:
        pos = self.pos()
        groups: dict[tuple, list] = {}
        for a in self.arcs:
            s, t = sorted((pos[a[0]], pos[a[1]]))
            groups.setdefault((s, t, a[2]), []).append(a)
        arcs = []
        for (s, t, half), group in groups.items():
            for rank, a in enumerate(sorted(group, key=lambda a: a[4])):
                arcs.append(Arc(s, t, half, a[3], rank))
        arcs.sort(key=lambda a: (a.half != UP, a.source, a.target, a.rank))
        return StandardSignedGraph(len(self.order), tuple(arcs))


class _Gadgets:
    def __init__(self, layout: _Layout, oriented: bool):
        self.L = layout
        self.oriented = oriented
        self.vertices_added = 0
        self.edges_added = 0

    def new_vertex_left_of(self, v: int) -> int:
        self.vertices_added += 1
        return self.L.insert_left_of(v)

    def arc(self, u: int, v: int, half: str, sign: int) -> None:
        self.edges_added += 1
        self.L.add_arc(u, v, half, sign)

    def iib(self, q: int, p: int) -> None:
        """Inverse IIb between adjacent vertices ``q < p``: an up + and a down - arc."""
        if self.oriented:
            pairs = self.L.edge_pairs()
            pos = self.L.pos()
            if two_colouring(len(self.L.order), pairs + [(pos[q], pos[p])]) is None:
                # route through a fresh isolated vertex (a distant unknot)
                u = self.new_vertex_left_of(p)
                self.iib(q, u)
                self.iib(u, p)
                return
        self.arc(q, p, UP, 1)
        self.arc(q, p, DOWN, -1)

    def fix_missing(self, w: int, half: str) -> None:
        """Give ``w`` an in-arc in ``half`` via a pendant vertex (inverse I, then inverse IIb)."""
        p = self.new_vertex_left_of(w)
        self.arc(p, w, half, _good_sign(half))
        self.iib(self.L.left_of(p), p)


def _innermost(arcs: list[list], pos: dict[int, int]) -> list:
    return max(arcs, key=lambda a: (min(pos[a[0]], pos[a[1]]), -a[4]))


def _case3_up(G: _Gadgets, v: int) -> None:
    L = G.L
    pos = L.pos()
    e_k = _innermost(L.in_arcs(v, UP, pos), pos)
    downs = L.in_arcs(v, DOWN, pos)
    f_d = _innermost(downs, pos) if downs else None
    v2 = G.new_vertex_left_of(v)
    x = G.new_vertex_left_of(v)
    for a in (e_k, f_d):
        if a is not None:
            a[a.index(v, 0, 2)] = v2
    G.arc(v2, x, UP, 1)
    G.arc(x, v, DOWN, -1)
    G.fix_missing(x, DOWN)


def _case4_up(G: _Gadgets, arc: list) -> None:
    L = G.L
    pos = L.pos()
    a, v = sorted(arc[:2], key=pos.__getitem__)
    ys = [G.new_vertex_left_of(v) for _ in range(4)]
    y1, y2, y3, y4 = ys
    arc[0], arc[1], arc[2] = y2, y3, DOWN
    arc[4] = 0
    G.arc(a, y1, UP, 1)
    G.arc(y1, y2, DOWN, -1)
    G.arc(y3, y4, DOWN, -1)
    G.arc(y4, v, UP, 1)
    G.fix_missing(y1, DOWN)
    for y in (y2, y3, y4):
        G.fix_missing(y, UP)


def classify(graph: StandardSignedGraph) -> Optional[tuple[str, int]]:
    """The reduction case that applies (lowest vertex first), or None if TB = 0."""
    n = graph.n_vertices
    ins = [(len(graph.in_edges(v, UP)), len(graph.in_edges(v, DOWN))) for v in range(n)]
    for case, test in (("Case1", lambda u, d: u + d == 0),
                       ("Case2", lambda u, d: u + d == 1),
                       ("Case3", lambda u, d: u > 1 or d > 1)):
        for v in range(1, n):
            if test(*ins[v]):
                return case, v
    bad = [a for a in graph.edges if a.sign != _good_sign(a.half)]
    if bad:
        a = min(bad, key=lambda a: (a.target, a.half != UP, a.source, a.rank))
        return "Case4", a.target
    return None


def reduce_badness_step(graph: StandardSignedGraph, oriented: bool = False,
                        ) -> tuple[StandardSignedGraph, TraceEntry]:
    """One link-preserving rewrite that lowers TB (by 2 in Case 1, by 1 otherwise)."""
    found = classify(graph)
    if found is None:
        raise ThompsonError("graph is already Thompson (TB = 0)")
    case, v = found
    before = tb(graph)
    L = _Layout(graph)
    G = _Gadgets(L, oriented)
    location: object = v
    if case == "Case1":
        G.iib(L.left_of(v), v)
    elif case == "Case2":
        half = DOWN if graph.in_edges(v, UP) else UP
        G.fix_missing(v, half)
        location = (v, half)
    elif case == "Case3":
        mirror = len(graph.in_edges(v, UP)) <= 1
        if mirror:
            L.mirror()
        _case3_up(G, v)
        if mirror:
            L.mirror()
        location = (v, DOWN if mirror else UP)
    else:
        bad = [a for a in L.arcs if a[3] != _good_sign(a[2]) and max(a[0], a[1]) == v]
        arc = min(bad, key=lambda a: (a[2] != UP, min(a[0], a[1]), a[4]))
        mirror = arc[2] == DOWN
        if mirror:
            L.mirror()
        _case4_up(G, arc)
        if mirror:
            L.mirror()
        location = (v, DOWN if mirror else UP)
    out = L.to_standard()
    after = tb(out)
    if after >= before:
        raise AssertionError(f"{case} did not lower TB ({before} -> {after})")
    return out, TraceEntry(case, location, before, after, G.vertices_added, G.edges_added)


# ---------------------------------------------------------------------------
# standardization

def _contiguous(flags: list[bool]) -> bool:
    changes = sum(flags[i] != flags[(i + 1) % len(flags)] for i in range(len(flags)))
    return changes <= 2


def _cyclic_equal(a: Sequence, b: Sequence) -> bool:
    if len(a) != len(b):
        return False
    if not a:
        return True
    try:
        i = list(b).index(a[0])
    except ValueError:
        return False
    return list(a) == list(b[i:]) + list(b[:i])


def _layout_component(g: EmbeddedSignedGraph, comp: list[int]):
    """Spine order and arcs realising ``g`` restricted to ``comp``, or None."""
    if len(comp) == 1:
        return [comp[0]], []
    cset = set(comp)
    edges = [e for e, (u, v, _) in enumerate(g.edges) if u in cset]
    for perm in itertools.permutations(comp[1:]):
        order = [comp[0], *perm]
        pos = {v: i for i, v in enumerate(order)}
        if not all(_contiguous([pos[g.edges[e][1 - end]] > pos[v] for e, end in g.rotation[v]])
                   for v in order):
            continue
        spans = [tuple(sorted((pos[g.edges[e][0]], pos[g.edges[e][1]]))) for e in edges]
        conflict = [(i, j) for i in range(len(edges)) for j in range(i + 1, len(edges))
                    if spans[i][0] < spans[j][0] < spans[i][1] < spans[j][1]
                    or spans[j][0] < spans[i][0] < spans[j][1] < spans[i][1]]
        colour = two_colouring(len(edges), conflict)
        if colour is None:
            continue
        groups = _components(len(edges), conflict)
        for flips in itertools.product((1, -1), repeat=len(groups)):
            half = [None] * len(edges)
            for grp, f in zip(groups, flips):
                for i in grp:
                    half[i] = UP if colour[i] * f > 0 else DOWN
            found = _match_ranks(g, order, pos, edges, spans, half)
            if found is not None:
                return order, found
    return None


def _match_ranks(g, order, pos, edges, spans, half):
    parallel: dict[tuple, list[int]] = {}
    for i in range(len(edges)):
        parallel.setdefault((spans[i], half[i]), []).append(i)
    groups = [v for v in parallel.values() if len(v) > 1]
    for perms in itertools.product(*(itertools.permutations(grp) for grp in groups)):
        rank = [0] * len(edges)
        for perm in perms:
            for r, i in enumerate(perm):
                rank[i] = r
        arcs = [Arc(spans[i][0], spans[i][1], half[i], g.edges[e][2], rank[i])
                for i, e in enumerate(edges)]
        emb = EmbeddedSignedGraph.from_halves(len(order), arcs, lambda h, v: v)
        flip = [pos[g.edges[e][0]] > pos[g.edges[e][1]] for e in edges]

        def original(d):
            k, end = d
            return (edges[k], 1 - end if flip[k] else end)

        if all(_cyclic_equal([original(d) for d in emb.rotation[pos[v]]], g.rotation[v])
               for v in order):
            return arcs
    return None


def standardize(graph: EmbeddedSignedGraph, trace: Optional[RewriteTrace] = None,
                max_component: int = 10, max_subdivisions: int = 8) -> StandardSignedGraph:
    """Standard graph with the same medial link as ``graph`` (up to moves).

    Loops are removed and, when a component admits no spine order matching its
    rotation system, edges are replaced by three-edge paths (inverse IIa moves)
    until one does.
    """
    if trace is None:
        trace = RewriteTrace()
    g = graph
    while any(u == v for u, v, _ in g.edges):
        e = next(e for e, (u, v, _) in enumerate(g.edges) if u == v)
        g = subdivide(g, e)
        trace.append(TraceEntry("Subdivide", e, vertices_added=2, edges_added=2))
    subdivisions = 0
    while True:
        layouts = []
        failed = None
        for comp in g.components():
            if len(comp) > max_component:
                raise BudgetExceeded(f"component with {len(comp)} vertices exceeds {max_component}")
            found = _layout_component(g, comp)
            if found is None:
                failed = comp
                break
            layouts.append(found)
        if failed is None:
            break
        if subdivisions >= max_subdivisions:
            raise BudgetExceeded("no standard layout found within the subdivision budget")
        cset = set(failed)
        candidates = [(e, end) for e, (u, _, _) in enumerate(g.edges) if u in cset for end in (0, 1)]
        choice = candidates[subdivisions % len(candidates)]
        for e, end in candidates:
            h = subdivide(g, e, end)
            comp = next(c for c in h.components() if failed[0] in c)
            if len(comp) <= max_component and _layout_component(h, comp) is not None:
                choice = (e, end)
                break
        g = subdivide(g, *choice)
        subdivisions += 1
        trace.append(TraceEntry("Subdivide", choice, vertices_added=2, edges_added=2))
    offset = 0
    arcs: list[Arc] = []
    for order, comp_arcs in layouts:
        arcs += [Arc(a.source + offset, a.target + offset, a.half, a.sign, a.rank) for a in comp_arcs]
        offset += len(order)
    return StandardSignedGraph(offset, tuple(arcs))


# ---------------------------------------------------------------------------
# links -> elements of F

VERIFY_MAX_CROSSINGS = 400


@dataclass
class FromLinkResult:
    element: TreePair
    trace: RewriteTrace
    standard_graph: StandardSignedGraph
    thompson_graph: StandardSignedGraph
    verified: Optional[bool] = None
    unknots: Optional[int] = None

    @property
    def leaf_count(self) -> int:
        return self.element.leaf_count

    def to_json(self) -> dict:
        return {"element": str(self.element), "leaf_count": self.leaf_count,
                "unknots": self.unknots, "verified": self.verified,
                "trace": self.trace.to_json()}


def reduce_to_thompson(graph: StandardSignedGraph, trace: Optional[RewriteTrace] = None,
                       oriented: bool = False) -> StandardSignedGraph:
    if trace is None:
        trace = RewriteTrace()
    budget = tb(graph)
    while tb(graph) > 0:
        graph, entry = reduce_badness_step(graph, oriented)
        trace.append(entry)
        budget -= 1
        if budget < 0:
            raise AssertionError("TB reduction did not terminate within its bound")
    return graph


def _delta_count(L: LinkDiagram, max_crossings: int) -> int:
    from .links import _normalised_bracket, writhes
    br = kauffman_bracket(L, max_crossings)
    return strip_delta(_normalised_bracket(br, next(iter(writhes(L)))))[1]


def _realise(L: LinkDiagram, g0: EmbeddedSignedGraph, oriented: bool, verify: bool,
             max_crossings: int) -> FromLinkResult:
    trace = RewriteTrace()
    if g0.n_vertices == 0:
        # the empty link: one isolated vertex, i.e. a single distant unknot
        g0 = EmbeddedSignedGraph(1, (), ((),))
    std = standardize(g0, trace)
    thom = reduce_to_thompson(std, trace, oriented)
    element = reduce(reconstruct(thom, reduced=False))
    result = FromLinkResult(element, trace, std, thom)
    if verify:
        out = medial_link(gamma_F(element))
        result.verified = link_invariant(out, max_crossings) == link_invariant(L, max_crossings)
        result.unknots = _delta_count(out, max_crossings) - _delta_count(L, max_crossings)
    return result


def from_link(L: LinkDiagram, verify: bool = True,
              max_crossings: int = VERIFY_MAX_CROSSINGS) -> FromLinkResult:
    """Element g of F whose medial link of Γ(g) is ``L`` up to distant unknots."""
    return _realise(L, semidual(L), False, verify, max_crossings)


def from_link_oriented(L: LinkDiagram, verify: bool = True,
                       max_crossings: int = VERIFY_MAX_CROSSINGS) -> FromLinkResult:
    """As :func:`from_link` but with ``g`` in the oriented subgroup F→.

    Needs a checkerboard shading whose graph is bipartite; both shadings of
    the diagram are tried.
    """
    for outer_shaded in (False, True):
        g0 = semidual(L, outer_shaded)
        if is_bipartite(g0):
            result = _realise(L, g0, True, verify, max_crossings)
            if not is_bipartite(gamma_F(result.element)):
                raise AssertionError("oriented construction left F->")
            return result
    raise ThompsonError("neither checkerboard shading of this diagram has a bipartite graph")
