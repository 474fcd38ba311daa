"""Signed planar graphs attached to tree pairs.

A :class:`StandardSignedGraph` has vertices ``0..n-1`` on the x-axis and edges
drawn as arcs in the upper or lower half-plane. ``gamma_F`` turns a tree pair
into such a graph (upper arcs from the top tree, signed +1; lower arcs from the
bottom tree, signed -1) and ``reconstruct`` inverts it.

Arcs that share both endpoints and a half-plane are ordered by ``rank``
(0 = innermost). All other nesting is forced by the endpoints, so planarity is
a purely combinatorial check.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field, replace
from typing import Iterable, Optional, Sequence

from .errors import ThompsonError
from .thompson import BinTree, TElement, TreePair, leaf_count, reduce

UP, DOWN = "up", "down"


@dataclass(frozen=True)
class Arc:
    source: int
    target: int
    half: str
    sign: int
    rank: int = 0

    def to_json(self) -> dict:
        return {"s": self.source, "t": self.target, "half": self.half, "sign": self.sign, "rank": self.rank}

    @classmethod
    def from_json(cls, d: dict) -> "Arc":
        return cls(int(d["s"]), int(d["t"]), str(d["half"]), int(d["sign"]), int(d.get("rank", 0)))


def _check_arcs(n: int, arcs: Sequence[Arc], pos=None) -> None:
    pos = pos or (lambda half, v: v)
    for a in arcs:
        if a.half not in (UP, DOWN):
            raise ThompsonError(f"bad half {a.half!r} in {a}")
        if a.sign not in (1, -1):
            raise ThompsonError(f"bad sign in {a}")
        if not (0 <= a.source < n and 0 <= a.target < n):
            raise ThompsonError(f"arc {a} has an endpoint outside 0..{n - 1}")
    for half in (UP, DOWN):
        spans = []
        for a in arcs:
            if a.half != half:
                continue
            i, j = pos(half, a.source), pos(half, a.target)
            if i >= j:
                raise ThompsonError(f"arc {a} is not monotone")
            spans.append((i, j, a.rank))
        if len(set(spans)) != len(spans):
            raise ThompsonError(f"duplicate rank among parallel {half} arcs")
        for x, (i, j, _) in enumerate(spans):
            for (k, l, _) in spans[x + 1:]:
                if i < k < j < l or k < i < l < j:
                    raise ThompsonError(f"{half} arcs ({i},{j}) and ({k},{l}) cross")


@dataclass(frozen=True)
class StandardSignedGraph:
    n_vertices: int
    edges: tuple[Arc, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(self.edges))
        if self.n_vertices < 1:
            raise ThompsonError("a standard graph needs at least one vertex")
        _check_arcs(self.n_vertices, self.edges)

    def arcs(self, half: str) -> list[Arc]:
        return [a for a in self.edges if a.half == half]

    def in_edges(self, v: int, half: Optional[str] = None) -> list[Arc]:
        return [a for a in self.edges if a.target == v and (half is None or a.half == half)]

    def degree(self, v: int) -> int:
        return sum((a.source == v) + (a.target == v) for a in self.edges)

    def canonical(self) -> "StandardSignedGraph":
        """Same graph with edges sorted; used for equality comparisons."""
        return StandardSignedGraph(self.n_vertices, tuple(sorted(
            self.edges, key=lambda a: (a.half, a.source, a.target, a.rank))))

    def to_json(self) -> dict:
        return {"n": self.n_vertices, "edges": [a.to_json() for a in self.edges]}

    @classmethod
    def from_json(cls, d: dict) -> "StandardSignedGraph":
        return cls(int(d["n"]), tuple(Arc.from_json(e) for e in d["edges"]))

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    def to_embedded(self) -> "EmbeddedSignedGraph":
        return EmbeddedSignedGraph.from_halves(self.n_vertices, self.edges, lambda half, v: v)


@dataclass(frozen=True)
class CyclicSignedGraph:
    """Vertices on a circle. ``up`` arcs lie outside, ``down`` arcs inside.

    Arc endpoints are vertex labels (top-tree leaf indices). Inside arcs are
    monotone in the bottom-tree indexing ``(v + offset) mod n``.
    """

    n_vertices: int
    edges: tuple[Arc, ...] = ()
    offset: int = 0

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(self.edges))
        _check_arcs(self.n_vertices, self.edges, self.position)

    def position(self, half: str, v: int) -> int:
        return v if half == UP else (v + self.offset) % self.n_vertices

    @property
    def root_mark(self) -> int:
        return (-self.offset) % self.n_vertices

    def to_json(self) -> dict:
        return {"n": self.n_vertices, "offset": self.offset, "root_mark": self.root_mark,
                "edges": [a.to_json() for a in self.edges]}

    def to_embedded(self) -> "EmbeddedSignedGraph":
        return EmbeddedSignedGraph.from_halves(self.n_vertices, self.edges, self.position)


@dataclass(frozen=True)
class EmbeddedSignedGraph:
    """Planar multigraph given by a rotation system.

    ``edges[e] = (u, v, sign)``. ``rotation[x]`` lists the darts at vertex
    ``x`` counter-clockwise; a dart is ``(e, end)`` with ``end`` 0 at ``u`` and
    1 at ``v``.
    """

    n_vertices: int
    edges: tuple[tuple[int, int, int], ...]
    rotation: tuple[tuple[tuple[int, int], ...], ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        object.__setattr__(self, "rotation", tuple(tuple(tuple(d) for d in r) for r in self.rotation))
        if len(self.rotation) != self.n_vertices:
            raise ThompsonError("rotation system must list every vertex")
        seen = set()
        for x, rot in enumerate(self.rotation):
            for e, end in rot:
                if self.edges[e][end] != x:
                    raise ThompsonError(f"dart ({e},{end}) listed at wrong vertex {x}")
                seen.add((e, end))
        if len(seen) != 2 * len(self.edges) or sum(map(len, self.rotation)) != len(seen):
            raise ThompsonError("every edge end must appear exactly once in the rotation")

    @classmethod
    def from_halves(cls, n: int, arcs: Sequence[Arc], pos) -> "EmbeddedSignedGraph":
        """Rotation system of arcs drawn on a line (or circle) in two half-planes."""
        edges = tuple((a.source, a.target, a.sign) for a in arcs)
        rotation = []
        for v in range(n):
            up_out, up_in, down_in, down_out = [], [], [], []
            for e, a in enumerate(arcs):
                for end, (x, other) in enumerate(((a.source, a.target), (a.target, a.source))):
                    if x != v:
                        continue
                    p = pos(a.half, other)
                    forward = p > pos(a.half, v)
                    dart = (e, end)
                    if a.half == UP:
                        (up_out if forward else up_in).append((p, a.rank, dart))
                    else:
                        (down_out if forward else down_in).append((p, a.rank, dart))
            up_out.sort(key=lambda r: (r[0], r[1]))
            up_in.sort(key=lambda r: (r[0], -r[1]))
            down_in.sort(key=lambda r: (-r[0], r[1]))
            down_out.sort(key=lambda r: (-r[0], -r[1]))
            rotation.append(tuple(r[2] for r in up_out + up_in + down_in + down_out))
        return cls(n, edges, tuple(rotation))

    def other_end(self, dart: tuple[int, int]) -> tuple[int, int]:
        return (dart[0], 1 - dart[1])

    def vertex_of(self, dart: tuple[int, int]) -> int:
        return self.edges[dart[0]][dart[1]]

    def _index(self) -> dict:
        return {d: (x, i) for x, rot in enumerate(self.rotation) for i, d in enumerate(rot)}

    def next_ccw(self, dart, index=None) -> tuple[int, int]:
        index = index or self._index()
        x, i = index[dart]
        rot = self.rotation[x]
        return rot[(i + 1) % len(rot)]

    def faces(self) -> list[list[tuple[int, int]]]:
        """Faces as cycles of darts (each dart traversed once)."""
        index = self._index()
        seen = set()
        out = []
        for rot in self.rotation:
            for d in rot:
                if d in seen:
                    continue
                face = []
                cur = d
                while cur not in seen:
                    seen.add(cur)
                    face.append(cur)
                    twin = self.other_end(cur)
                    x, i = index[twin]
                    rot2 = self.rotation[x]
                    cur = rot2[(i - 1) % len(rot2)]
                out.append(face)
        return out

    def components(self) -> list[list[int]]:
        return _components(self.n_vertices, [(u, v) for u, v, _ in self.edges])

    def is_planar_embedding(self) -> bool:
        """Euler check V - E + F = 2 on each connected component."""
        comps = self.components()
        n_faces = len(self.faces())
        isolated = sum(1 for c in comps if all(self.degree(x) == 0 for x in c))
        # an isolated vertex contributes V=1, E=0, F=1 but has no darts
        return self.n_vertices - len(self.edges) + n_faces + isolated == 2 * len(comps)

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    def to_json(self) -> dict:
        return {"n": self.n_vertices, "edges": [list(e) for e in self.edges],
                "rotation": [[list(d) for d in r] for r in self.rotation]}

    @classmethod
    def from_json(cls, d: dict) -> "EmbeddedSignedGraph":
        return cls(int(d["n"]), tuple(tuple(e) for e in d["edges"]),
                   tuple(tuple(tuple(x) for x in r) for r in d["rotation"]))


AnyGraph = "StandardSignedGraph | CyclicSignedGraph | EmbeddedSignedGraph"


def edge_list(graph) -> list[tuple[int, int]]:
    if isinstance(graph, EmbeddedSignedGraph):
        return [(u, v) for u, v, _ in graph.edges]
    return [(a.source, a.target) for a in graph.edges]


def _components(n: int, edges: Iterable[tuple[int, int]]) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        seen[s] = True
        comp, todo = [], [s]
        while todo:
            x = todo.pop()
            comp.append(x)
            for y in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    todo.append(y)
        comps.append(sorted(comp))
    return comps


def two_colouring(n: int, edges: Iterable[tuple[int, int]]) -> Optional[list[int]]:
    """Colours ``+1``/``-1`` with vertex 0 (and each component's least vertex) ``+1``.

    Returns None when some component has an odd cycle (or a self-loop).
    """
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    colour = [0] * n
    for s in range(n):
        if colour[s]:
            continue
        colour[s] = 1
        todo = deque([s])
        while todo:
            x = todo.popleft()
            for y in adj[x]:
                if colour[y] == 0:
                    colour[y] = -colour[x]
                    todo.append(y)
                elif colour[y] == colour[x]:
                    return None
    return colour


def is_bipartite(graph) -> bool:
    return two_colouring(graph.n_vertices, edge_list(graph)) is not None


# ---------------------------------------------------------------------------
# tree pair -> graph

def tree_arcs(tree: BinTree) -> list[tuple[int, int]]:
    """Arcs ``(p, k)`` of the planar tree on the leaves of ``tree``.

    Each caret contributes the arc from the vertex its subtree hangs from to the
    first leaf of its right subtree.
    """
    out = []

    def walk(t, first: int, anchor: int) -> int:
        if t is None:
            return first + 1
        mid = walk(t[0], first, anchor)
        out.append((anchor, mid))
        return walk(t[1], mid, mid)

    walk(tree, 0, 0)
    return out


def gamma_F(g: TreePair) -> StandardSignedGraph:
    n = leaf_count(g.top)
    arcs = [Arc(p, k, UP, 1) for p, k in tree_arcs(g.top)]
    arcs += [Arc(p, k, DOWN, -1) for p, k in tree_arcs(g.bottom)]
    return StandardSignedGraph(n, tuple(arcs))


def gamma_T(g: TElement) -> CyclicSignedGraph:
    n = g.leaf_count
    off = g.offset
    arcs = [Arc(p, k, UP, 1) for p, k in tree_arcs(g.pair.top)]
    arcs += [Arc((p - off) % n, (k - off) % n, DOWN, -1) for p, k in tree_arcs(g.pair.bottom)]
    return CyclicSignedGraph(n, tuple(arcs), off)


# ---------------------------------------------------------------------------
# predicates and graph -> tree pair

def check_conditions(graph: StandardSignedGraph) -> bool:
    """Each vertex other than 0 has exactly one in-arc in each half."""
    return all(
        len(graph.in_edges(v, UP)) == 1 and len(graph.in_edges(v, DOWN)) == 1
        for v in range(1, graph.n_vertices)
    )


def is_thompson(graph: StandardSignedGraph) -> bool:
    return check_conditions(graph) and all(
        a.sign == (1 if a.half == UP else -1) for a in graph.edges)


def _tree_from_arcs(n: int, arcs: list[Arc]) -> BinTree:
    out_arcs: dict[int, list[int]] = {}
    for a in arcs:
        out_arcs.setdefault(a.source, []).append(a.target)

    def build(lo: int, hi: int) -> BinTree:
        if hi - lo == 1:
            return None
        inside = [t for t in out_arcs.get(lo, []) if t < hi]
        if not inside:
            raise ThompsonError(f"vertex {lo} has no arc inside ({lo}, {hi})")
        k = max(inside)
        return (build(lo, k), build(k, hi))

    return build(0, n)


def _first_violation(graph: StandardSignedGraph) -> str:
    for v in range(1, graph.n_vertices):
        for half in (UP, DOWN):
            k = len(graph.in_edges(v, half))
            if k != 1:
                return f"vertex {v} has {k} {half} in-arcs"
    for a in graph.edges:
        if a.sign != (1 if a.half == UP else -1):
            return f"arc {a} has the wrong sign for its half"
    return "unknown"


def reconstruct(graph: StandardSignedGraph, reduced: bool = True) -> TreePair:
    """Tree pair whose graph is ``graph`` (reduced unless ``reduced=False``)."""
    if not is_thompson(graph):
        raise ThompsonError(f"not a Thompson graph: {_first_violation(graph)}")
    n = graph.n_vertices
    g = TreePair(_tree_from_arcs(n, graph.arcs(UP)), _tree_from_arcs(n, graph.arcs(DOWN)))
    if gamma_F(g).canonical() != replace(graph, edges=tuple(
            replace(a, rank=0) for a in graph.edges)).canonical():
        raise ThompsonError("graph arcs are inconsistent with a pair of planar trees")
    return reduce(g) if reduced else g


# ---------------------------------------------------------------------------
# sign sequences

def sign_sequence(g: TreePair) -> Optional[list[int]]:
    """2-colouring of Γ(g) with vertex 0 = +1, or None if Γ(g) is not bipartite."""
    graph = gamma_F(g)
    return two_colouring(graph.n_vertices, edge_list(graph))


def _greedy_tree(signs: Sequence[int], nearest: bool) -> list[tuple[int, int]]:
    stack = [0]
    arcs = []
    for v in range(1, len(signs)):
        idx = [i for i, u in enumerate(stack) if signs[u] != signs[v]]
        if not idx:
            raise ThompsonError(f"no visible vertex of opposite sign for vertex {v}")
        i = idx[-1] if nearest else idx[0]
        arcs.append((stack[i], v))
        del stack[i + 1:]
        stack.append(v)
    return arcs


def from_sign_sequence(signs: Sequence[int]) -> TreePair:
    """Element of F→ realising ``signs`` (not reduced, so the round trip is exact).

    The top tree joins each vertex to the nearest visible vertex of opposite
    sign on its left; the bottom tree joins it to the farthest one.
    """
    signs = list(signs)
    if not signs or any(s not in (1, -1) for s in signs):
        raise ThompsonError("a sign sequence is a non-empty list of +1/-1")
    if signs[0] != 1 or (len(signs) > 1 and signs[1] != -1):
        raise ThompsonError("a sign sequence must begin with +, -")
    n = len(signs)
    arcs = [Arc(p, k, UP, 1) for p, k in _greedy_tree(signs, True)]
    arcs += [Arc(p, k, DOWN, -1) for p, k in _greedy_tree(signs, False)]
    return reconstruct(StandardSignedGraph(n, tuple(arcs)), reduced=False)


# ---------------------------------------------------------------------------
# export

def to_dot(graph, name: str = "G") -> str:
    lines = [f"graph {name} {{", "  rankdir=LR;", '  node [shape=circle];']
    lines.append("  { rank=same; " + " ".join(f"v{i};" for i in range(graph.n_vertices)) + " }")
    for i in range(graph.n_vertices):
        extra = ""
        if isinstance(graph, CyclicSignedGraph) and i == graph.root_mark:
            extra = ", peripheries=2"
        lines.append(f'  v{i} [label="{i}"{extra}];')
    if isinstance(graph, EmbeddedSignedGraph):
        for u, v, s in graph.edges:
            lines.append(f'  v{u} -- v{v} [label="{"+" if s > 0 else "-"}"];')
    else:
        for a in graph.edges:
            port = "n" if a.half == UP else "s"
            style = "solid" if a.half == UP else "dashed"
            lines.append(f'  v{a.source}:{port} -- v{a.target}:{port} '
                         f'[label="{"+" if a.sign > 0 else "-"}", style={style}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_svg(graph: StandardSignedGraph, spacing: int = 60) -> str:
    """Schematic drawing: vertices on a line, arcs as half-ellipses."""
    n = graph.n_vertices
    width = spacing * (n + 1)
    height = spacing * (n + 1)
    mid = height // 2
    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">']
    for a in graph.edges:
        x1, x2 = spacing * (a.source + 1), spacing * (a.target + 1)
        r = (x2 - x1) / 2
        ry = r * (1 + 0.15 * a.rank)
        sweep = 1 if a.half == UP else 0
        colour = "black" if a.sign > 0 else "red"
        parts.append(f'<path d="M {x1} {mid} A {r} {ry} 0 0 {sweep} {x2} {mid}" '
                     f'fill="none" stroke="{colour}"/>')
    for i in range(n):
        parts.append(f'<circle cx="{spacing * (i + 1)}" cy="{mid}" r="4"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def random_standard_graph(rng, max_vertices: int = 6, max_edges: int = 10) -> StandardSignedGraph:
    """Random standard graph: arcs are drawn one at a time, skipping crossings."""
    n = rng.randint(1, max_vertices)
    arcs: list[Arc] = []
    if n == 1:
        return StandardSignedGraph(1, ())
    for _ in range(rng.randint(0, max_edges) * 3):
        if len(arcs) >= max_edges:
            break
        i, j = sorted(rng.sample(range(n), 2))
        half = rng.choice((UP, DOWN))
        same = [a for a in arcs if a.half == half]
        if any(a.source < i < a.target < j or i < a.source < j < a.target for a in same):
            continue
        rank = sum(1 for a in same if (a.source, a.target) == (i, j))
        arcs.append(Arc(i, j, half, rng.choice((1, -1)), rank))
    return StandardSignedGraph(n, tuple(arcs))
