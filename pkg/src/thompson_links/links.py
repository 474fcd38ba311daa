"""Link diagrams in PD notation, the Kauffman bracket and the Jones polynomial.

PD convention (as in KnotTheory and the Knot Atlas): a crossing ``(a, b, c, d)``
lists its four arcs starting from the incoming under-strand, so the
under-strand runs ``a -> c``. The A-smoothing joins ``a-d`` and ``b-c``; the
B-smoothing joins ``a-b`` and ``c-d``. The crossing is positive when the
over-strand runs ``b -> d``.

Medial links are built from a rotation system: the regions around vertices are
shaded, the faces of the graph are unshaded, and an edge of sign +1 is drawn so
that its A-smoothing joins the two shaded sides.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Optional, Sequence

from .errors import BudgetExceeded, ThompsonError
from .graphs import CyclicSignedGraph, EmbeddedSignedGraph, StandardSignedGraph
from .poly import LaurentPoly

DEFAULT_MAX_CROSSINGS = 30

A = LaurentPoly({1: 1})
DELTA = LaurentPoly({2: -1, -2: -1})
CROSSING_FACTOR = LaurentPoly({3: -1})  # -A^3


@dataclass(frozen=True)
class LinkDiagram:
    crossings: tuple[tuple[int, int, int, int], ...] = ()
    free_loops: int = 0

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(tuple(int(x) for x in c) for c in self.crossings))
        counts: dict[int, int] = {}
        for c in self.crossings:
            if len(c) != 4:
                raise ThompsonError(f"crossing {c} does not have four arcs")
            for x in c:
                counts[x] = counts.get(x, 0) + 1
        bad = [x for x, k in counts.items() if k != 2]
        if bad:
            raise ThompsonError(f"arc labels {sorted(bad)} do not occur exactly twice")
        if self.free_loops < 0:
            raise ThompsonError("free_loops must be non-negative")

    def __len__(self) -> int:
        return len(self.crossings)

    def labels(self) -> list[int]:
        return sorted({x for c in self.crossings for x in c})

    def to_json(self) -> dict:
        return {"crossings": [list(c) for c in self.crossings], "free_loops": self.free_loops}

    @classmethod
    def from_json(cls, d) -> "LinkDiagram":
        """Accept ``{"crossings": ...}``, ``{"pd": ...}`` or a bare crossing list."""
        if isinstance(d, list):
            d = {"crossings": d}
        crossings = d.get("crossings", d.get("pd", []))
        return cls(tuple(tuple(c) for c in crossings), int(d.get("free_loops", 0)))

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def loads(cls, text: str) -> "LinkDiagram":
        return cls.from_json(json.loads(text))


def unknot(n: int = 1) -> LinkDiagram:
    return LinkDiagram((), n)


def relabel(L: LinkDiagram, start: int = 1) -> LinkDiagram:
    """Renumber arc labels ``start, start+1, ...`` in order of first appearance."""
    mapping: dict[int, int] = {}
    for c in L.crossings:
        for x in c:
            mapping.setdefault(x, start + len(mapping))
    return LinkDiagram(tuple(tuple(mapping[x] for x in c) for c in L.crossings), L.free_loops)


def disjoint_union(L1: LinkDiagram, L2: LinkDiagram) -> LinkDiagram:
    L1 = relabel(L1)
    L2 = relabel(L2, start=len(L1.labels()) + 1)
    return LinkDiagram(L1.crossings + L2.crossings, L1.free_loops + L2.free_loops)


def mirror(L: LinkDiagram) -> LinkDiagram:
    """Swap over and under at every crossing."""
    return LinkDiagram(tuple((b, c, d, a) for a, b, c, d in L.crossings), L.free_loops)


# ---------------------------------------------------------------------------
# bracket

def _join(match: dict, p: int, q: int) -> int:
    """Connect arc ends ``p`` and ``q``; return the number of loops closed."""
    if p == q:
        return 1
    if match.get(p) == q:
        del match[p], match[q]
        return 1
    ep = match.pop(p) if p in match else p
    eq = match.pop(q) if q in match else q
    if ep in match:
        del match[ep]
    if eq in match:
        del match[eq]
    match[ep] = eq
    match[eq] = ep
    return 0


def _elimination_order(crossings: Sequence[tuple]) -> list[int]:
    remaining = set(range(len(crossings)))
    open_labels: dict[int, int] = {}
    order = []
    while remaining:
        best = max(remaining, key=lambda i: (sum(x in open_labels for x in crossings[i]), -i))
        remaining.discard(best)
        order.append(best)
        for x in crossings[best]:
            open_labels[x] = open_labels.get(x, 0) + 1
            if open_labels[x] == 2:
                del open_labels[x]
    return order


def kauffman_bracket(L: LinkDiagram, max_crossings: int = DEFAULT_MAX_CROSSINGS) -> LaurentPoly:
    """State sum with ``<empty> = 1`` and each loop worth ``-A^2 - A^-2``."""
    if len(L.crossings) > max_crossings:
        raise BudgetExceeded(f"{len(L.crossings)} crossings exceeds the budget of {max_crossings}")
    delta_pows = [LaurentPoly({0: 1})]
    states: dict[frozenset, LaurentPoly] = {frozenset(): LaurentPoly({0: 1})}
    for i in _elimination_order(L.crossings):
        a, b, c, d = L.crossings[i]
        new: dict[frozenset, LaurentPoly] = {}
        for key, poly in states.items():
            for weight, pairs in ((1, ((a, d), (b, c))), (-1, ((a, b), (c, d)))):
                match = {}
                for x, y in key:
                    match[x] = y
                    match[y] = x
                loops = sum(_join(match, p, q) for p, q in pairs)
                while len(delta_pows) <= loops:
                    delta_pows.append(delta_pows[-1] * DELTA)
                term = poly.shift(weight) * delta_pows[loops]
                k = frozenset((min(x, y), max(x, y)) for x, y in match.items())
                new[k] = new[k] + term if k in new else term
        states = {k: v for k, v in new.items() if not v.is_zero()}
    total = sum(states.values(), LaurentPoly({}))
    return total * DELTA ** L.free_loops


# ---------------------------------------------------------------------------
# orientation and writhe

def components(L: LinkDiagram) -> list[list[tuple[int, int]]]:
    """Components as lists of ``(crossing, slot)`` entry points, in travel order."""
    where: dict[int, list[tuple[int, int]]] = {}
    for i, c in enumerate(L.crossings):
        for t, x in enumerate(c):
            where.setdefault(x, []).append((i, t))
    seen = set()
    comps = []
    for i in range(len(L.crossings)):
        for t in range(4):
            if (i, t) in seen:
                continue
            comp = []
            cur = (i, t)
            while cur not in seen:
                x, s = cur
                exit_slot = (s + 2) % 4
                seen.add(cur)
                seen.add((x, exit_slot))
                comp.append(cur)
                label = L.crossings[x][exit_slot]
                occ = where[label]
                cur = occ[0] if occ[1] == (x, exit_slot) else occ[1]
            comps.append(comp)
    return comps


def _crossing_data(L: LinkDiagram):
    """Per crossing: (under component, under entry slot, over component, over entry slot)."""
    info: dict[int, dict] = {}
    comps = components(L)
    for k, comp in enumerate(comps):
        for x, s in comp:
            role = "under" if s % 2 == 0 else "over"
            info.setdefault(x, {})[role] = (k, s)
    return comps, info


def _sign(under_slot: int, over_slot: int) -> int:
    return 1 if (under_slot, over_slot) in ((0, 1), (2, 3)) else -1


def writhe(L: LinkDiagram, orientation: Optional[Sequence[int]] = None) -> int:
    comps, info = _crossing_data(L)
    eps = list(orientation) if orientation is not None else [1] * len(comps)
    total = 0
    for x, d in info.items():
        ku, su = d["under"]
        ko, so = d["over"]
        total += _sign(su, so) * eps[ku] * eps[ko]
    return total


def _writhe_model(L: LinkDiagram):
    """Self writhe and pairwise mixed-crossing sums for the reference orientation."""
    comps, info = _crossing_data(L)
    w_self = 0
    mixed: dict[tuple[int, int], int] = {}
    for d in info.values():
        ku, su = d["under"]
        ko, so = d["over"]
        s = _sign(su, so)
        if ku == ko:
            w_self += s
        else:
            key = (min(ku, ko), max(ku, ko))
            mixed[key] = mixed.get(key, 0) + s
    return len(comps), w_self, {k: v for k, v in mixed.items() if v}


def writhes(L: LinkDiagram) -> set[int]:
    """All writhes over choices of component orientations."""
    n, w_self, mixed = _writhe_model(L)
    free = sorted({k for pair in mixed for k in pair})
    out = set()
    for signs in product((1, -1), repeat=max(len(free) - 1, 0)):
        eps = dict(zip(free, (1,) + signs))
        out.add(w_self + sum(v * eps[i] * eps[j] for (i, j), v in mixed.items()))
    return out


def _normalised_bracket(bracket: LaurentPoly, w: int) -> LaurentPoly:
    return bracket * CROSSING_FACTOR ** (-w)


def _to_jones(f: LaurentPoly) -> LaurentPoly:
    """Substitute ``A = t^(-1/4)``; the result is in ``s = t^(1/2)``."""
    q = f.exact_div(DELTA)
    if q is None:
        raise ThompsonError("bracket is not divisible by the loop value")
    return q.rescale_exponents(-2, var="s")


def jones(L: LinkDiagram, orientation: Optional[Sequence[int]] = None,
          max_crossings: int = DEFAULT_MAX_CROSSINGS) -> LaurentPoly:
    """Jones polynomial as a Laurent polynomial in ``s = t^(1/2)``.

    ``orientation`` gives +1/-1 per component of :func:`components`; the
    default orients every component along its traversal.
    """
    if not L.crossings and L.free_loops == 0:
        raise ThompsonError("the empty diagram has no Jones polynomial")
    br = kauffman_bracket(L, max_crossings)
    return _to_jones(_normalised_bracket(br, writhe(L, orientation)))


def jones_set(L: LinkDiagram, max_crossings: int = DEFAULT_MAX_CROSSINGS) -> set[LaurentPoly]:
    br = kauffman_bracket(L, max_crossings)
    return {_to_jones(_normalised_bracket(br, w)) for w in writhes(L)}


def format_jones(v: LaurentPoly) -> str:
    return v.format("t", Fraction(1, 2))


def strip_delta(f: LaurentPoly) -> tuple[LaurentPoly, int]:
    """Divide out every factor ``-A^2 - A^-2``; return the quotient and the count."""
    k = 0
    while not f.is_zero():
        q = f.exact_div(DELTA)
        if q is None:
            break
        f, k = q, k + 1
    return f, k


def link_invariant(L: LinkDiagram, max_crossings: int = DEFAULT_MAX_CROSSINGS) -> frozenset:
    """Writhe-normalised brackets over all orientations with δ factors removed."""
    br = kauffman_bracket(L, max_crossings)
    return frozenset(strip_delta(_normalised_bracket(br, w))[0] for w in writhes(L))


def link_equiv_up_to_unknots(L1: LinkDiagram, L2: LinkDiagram,
                             max_crossings: int = DEFAULT_MAX_CROSSINGS) -> bool:
    """Compare Jones data over all orientations, ignoring distant unknots.

    This is an invariant comparison, so distinct links with equal Jones
    polynomials are reported equal.
    """
    return link_invariant(L1, max_crossings) == link_invariant(L2, max_crossings)


# ---------------------------------------------------------------------------
# graph <-> diagram

def medial_link(graph) -> LinkDiagram:
    """One crossing per edge; isolated vertices give free loops."""
    if isinstance(graph, (StandardSignedGraph, CyclicSignedGraph)):
        graph = graph.to_embedded()
    corner: dict[tuple, int] = {}
    for x, rot in enumerate(graph.rotation):
        for i, d in enumerate(rot):
            corner[(d, rot[(i + 1) % len(rot)])] = len(corner) + 1
    nxt: dict[tuple, tuple] = {}
    prv: dict[tuple, tuple] = {}
    for rot in graph.rotation:
        for i, d in enumerate(rot):
            nxt[d] = rot[(i + 1) % len(rot)]
            prv[d] = rot[(i - 1) % len(rot)]
    crossings = []
    for e, (_, _, sign) in enumerate(graph.edges):
        d0, d1 = (e, 0), (e, 1)
        ul, ll = corner[(d0, nxt[d0])], corner[(prv[d0], d0)]
        lr, ur = corner[(d1, nxt[d1])], corner[(prv[d1], d1)]
        crossings.append((ll, ul, ur, lr) if sign > 0 else (ul, ur, lr, ll))
    loops = sum(1 for rot in graph.rotation if not rot)
    return relabel(LinkDiagram(tuple(crossings), loops))


def faces(L: LinkDiagram) -> list[list[tuple[int, int]]]:
    """Faces as lists of corners ``(crossing, s)``; quadrant ``s`` lies between slots s and s+1."""
    where: dict[int, list[tuple[int, int]]] = {}
    for i, c in enumerate(L.crossings):
        for t, x in enumerate(c):
            where.setdefault(x, []).append((i, t))
    seen = set()
    out = []
    for i in range(len(L.crossings)):
        for t in range(4):
            if (i, t) in seen:
                continue
            face = []
            cur = (i, t)
            while cur not in seen:
                seen.add(cur)
                x, s = cur
                occ = where[L.crossings[x][s]]
                j, s2 = occ[0] if occ[1] == cur else occ[1]
                face.append((j, (s2 - 1) % 4))
                cur = (j, (s2 - 1) % 4)
            out.append(face)
    return out


def semidual(L: LinkDiagram, outer_shaded: bool = False) -> EmbeddedSignedGraph:
    """Signed graph whose vertices are the shaded faces.

    Each connected piece of the diagram is shaded so that its face with the
    most sides (the one drawn unbounded) is unshaded; ``outer_shaded=True``
    picks the other checkerboard shading. Free loops become isolated vertices.
    """
    fs = faces(L)
    face_of: dict[tuple[int, int], int] = {}
    for k, f in enumerate(fs):
        for corner in f:
            face_of[corner] = k
    # faces across a crossing's quadrant boundary are adjacent
    adj: list[set[int]] = [set() for _ in fs]
    for i in range(len(L.crossings)):
        for s in range(4):
            f1, f2 = face_of[(i, s)], face_of[(i, (s + 1) % 4)]
            adj[f1].add(f2)
            adj[f2].add(f1)
    colour: dict[int, int] = {}
    comps: list[list[int]] = []
    for start in range(len(fs)):
        if start in colour:
            continue
        comp = [start]
        colour[start] = 0
        todo = [start]
        while todo:
            f = todo.pop()
            for g in adj[f]:
                if g not in colour:
                    colour[g] = 1 - colour[f]
                    comp.append(g)
                    todo.append(g)
                elif colour[g] == colour[f]:
                    raise ThompsonError("diagram faces are not 2-colourable (non-planar PD data)")
        comps.append(comp)
    shaded: set[int] = set()
    for comp in comps:
        outer = max(comp, key=lambda f: (len(fs[f]), -f))
        shaded |= {f for f in comp if (colour[f] == colour[outer]) == outer_shaded}
    vertex = {f: k for k, f in enumerate(sorted(shaded))}
    edges = []
    for i in range(len(L.crossings)):
        s = 1 if face_of[(i, 1)] in shaded else 0
        edges.append((vertex[face_of[(i, s)]], vertex[face_of[(i, s + 2)]], 1 if s == 0 else -1))
    rotation: list[list[tuple[int, int]]] = [[] for _ in vertex]
    for f in sorted(shaded):
        for (i, s) in fs[f]:
            end = 0 if s < 2 else 1
            rotation[vertex[f]].append((i, end))
        # the face walk runs clockwise round a shaded face
        rotation[vertex[f]].reverse()
    n = len(vertex)
    rotation += [[] for _ in range(L.free_loops)]
    return EmbeddedSignedGraph(n + L.free_loops, tuple(edges), tuple(tuple(r) for r in rotation))


# ---------------------------------------------------------------------------
# braid closures (explicit Reidemeister moves for tests and examples)

def braid_closure(word: Sequence[int], n_strands: int) -> LinkDiagram:
    """PD code of the closure of a braid word (``i`` for σ_i, ``-i`` for σ_i⁻¹)."""
    next_label = n_strands + 1
    initial = list(range(1, n_strands + 1))
    current = list(initial)
    crossings = []
    for g in word:
        i = abs(g) - 1
        if not 0 <= i < n_strands - 1:
            raise ThompsonError(f"generator {g} out of range for {n_strands} strands")
        x, y = current[i], current[i + 1]
        x2, y2 = next_label, next_label + 1
        next_label += 2
        crossings.append([x, y, y2, x2] if g > 0 else [y, y2, x2, x])
        current[i], current[i + 1] = x2, y2
    rename = {f: s for f, s in zip(current, initial) if f != s}
    crossings = [tuple(rename.get(a, a) for a in c) for c in crossings]
    used = {a for c in crossings for a in c}
    loops = sum(1 for p in initial if p not in used)
    return relabel(LinkDiagram(tuple(crossings), loops))
