"""Spin-model partition functions and the chromatic coefficient.

The coefficient attached to the chromatic choice is

    (Q - 1)^-(L-1) * Chr_Γ(Q),

where ``L`` is the leaf count of the tree pair and Γ its planar graph. The
brute-force :func:`partition_function` is the independent oracle: each edge of
Γ carries the weight ``(J - I) / sqrt(Q - 1)`` and there are ``2(L-1)`` edges,
so the square roots pair up into a rational factor.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional, Sequence, Union

from .errors import BudgetExceeded, ThompsonError
from .graphs import (DOWN, UP, CyclicSignedGraph, EmbeddedSignedGraph,
                     gamma_F, gamma_T, is_bipartite)
from .poly import LaurentPoly, TuttePoly, q_poly
from .thompson import TElement, TreePair, evaluate, leaf_depth

DEFAULT_MAX_VERTICES = 16

Matrix = tuple[tuple[Fraction, ...], ...]


def _matrix(rows) -> Matrix:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


@dataclass(frozen=True)
class SpinWeightSystem:
    """Weights ``W_plus`` (for + edges) and ``W_minus`` (for - edges) on Q spins.

    Every edge weight is additionally multiplied by ``sqrt(edge_scale)``; the
    scale is kept separate so that the partition function stays rational.
    """

    Q: int
    W_plus: Matrix
    W_minus: Matrix
    edge_scale: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "W_plus", _matrix(self.W_plus))
        object.__setattr__(self, "W_minus", _matrix(self.W_minus))
        object.__setattr__(self, "edge_scale", Fraction(self.edge_scale))
        if self.Q < 1:
            raise ThompsonError("Q must be positive")
        for W in (self.W_plus, self.W_minus):
            if len(W) != self.Q or any(len(r) != self.Q for r in W):
                raise ThompsonError(f"weight matrices must be {self.Q}x{self.Q}")

    def weight(self, sign: int) -> Matrix:
        return self.W_plus if sign > 0 else self.W_minus

    @property
    def normalized(self) -> bool:
        return normalize_check(self)


def chromatic_weights(Q: int) -> SpinWeightSystem:
    """``(J - I) / sqrt(Q - 1)`` on both signs."""
    if Q < 2:
        raise ThompsonError("the chromatic weights need Q >= 2")
    W = [[int(x != y) for y in range(Q)] for x in range(Q)]
    return SpinWeightSystem(Q, W, W, Fraction(1, Q - 1))


def permutation_weights(h: Sequence[int]) -> SpinWeightSystem:
    """``W(x, y) = 1`` iff ``y = h(x)``, on both signs."""
    Q = len(h)
    W = [[int(h[x] == y) for y in range(Q)] for x in range(Q)]
    return SpinWeightSystem(Q, W, W)


def normalize_check(w: SpinWeightSystem) -> bool:
    """Two vertices joined by a + edge and a - edge, with the first spin pinned.

    Summing the free spin must give 1 for every pinned value, which is the
    value of a single strand.
    """
    for x in range(w.Q):
        total = sum(w.W_plus[x][y] * w.W_minus[x][y] for y in range(w.Q)) * w.edge_scale
        if total != 1:
            return False
    return True


def _signed_edges(graph) -> tuple[int, list[tuple[int, int, int]]]:
    if isinstance(graph, EmbeddedSignedGraph):
        return graph.n_vertices, list(graph.edges)
    return graph.n_vertices, [(a.source, a.target, a.sign) for a in graph.edges]


def partition_function(graph, w: SpinWeightSystem,
                       max_vertices: int = DEFAULT_MAX_VERTICES) -> Fraction:
    """Sum over spin assignments of the product of edge weights (exact)."""
    n, edges = _signed_edges(graph)
    if n > max_vertices:
        raise BudgetExceeded(f"{n} vertices exceeds the budget of {max_vertices}")
    scale = Fraction(1)
    if w.edge_scale != 1:
        if len(edges) % 2:
            raise ThompsonError("odd edge count with an irrational edge scale")
        scale = w.edge_scale ** (len(edges) // 2)
    # edges grouped by their later endpoint so each is applied once
    back: list[list[tuple[int, int, bool, Matrix]]] = [[] for _ in range(n)]
    for u, v, s in edges:
        W = w.weight(s)
        if u <= v:
            back[v].append((u, v, True, W))
        else:
            back[u].append((v, u, False, W))
    spins = [0] * n

    def rec(v: int) -> Fraction:
        if v == n:
            return Fraction(1)
        total = Fraction(0)
        for x in range(w.Q):
            spins[v] = x
            prod = Fraction(1)
            for a, b, forward, W in back[v]:
                sa = spins[a]
                prod *= W[sa][x] if forward else W[x][sa]
                if not prod:
                    break
            if prod:
                total += prod * rec(v + 1)
        return total

    return rec(0) * scale


# ---------------------------------------------------------------------------
# chromatic and Tutte polynomials

def _multi_edges(graph) -> tuple[int, list[tuple[int, int]]]:
    if isinstance(graph, tuple):
        return graph
    n, edges = _signed_edges(graph)
    return n, [(u, v) for u, v, _ in edges]


def chromatic(graph) -> LaurentPoly:
    """Chromatic polynomial in ``Q``. Accepts a graph object or ``(n, edge_list)``."""
    n, edges = _multi_edges(graph)
    if any(u == v for u, v in edges):
        return q_poly({})
    simple = frozenset((min(u, v), max(u, v)) for u, v in edges)
    return _chromatic(n, simple)


_Q = q_poly({1: 1})
_Q_MINUS_1 = q_poly({1: 1, 0: -1})


@lru_cache(maxsize=100_000)
def _chromatic(n: int, edges: frozenset) -> LaurentPoly:
    if not edges:
        return _Q ** n
    adj: dict[int, set[int]] = {v: set() for v in range(n)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    isolated = [v for v in range(n) if not adj[v]]
    if isolated:
        return _Q ** len(isolated) * _chromatic(*_compact(n, edges, set(isolated)))
    for v in range(n):
        if len(adj[v]) == 1:
            return _Q_MINUS_1 * _chromatic(*_compact(n, edges, {v}))
    u, v = min(edges, key=lambda e: len(adj[e[0]]) + len(adj[e[1]]))
    deleted = edges - {(u, v)}
    contracted = frozenset(
        (min(a, b), max(a, b))
        for a, b in ((u if x == v else x, u if y == v else y) for x, y in deleted)
        if a != b
    )
    return _chromatic(n, deleted) - _chromatic(*_compact(n, contracted, {v}))


def _compact(n: int, edges, removed: set[int]) -> tuple[int, frozenset]:
    keep = [v for v in range(n) if v not in removed]
    index = {v: i for i, v in enumerate(keep)}
    return len(keep), frozenset((index[u], index[v]) for u, v in edges
                                if u not in removed and v not in removed)


def tutte(graph) -> TuttePoly:
    """Tutte polynomial of a multigraph (loops and parallel edges allowed)."""
    n, edges = _multi_edges(graph)
    return _tutte(tuple(sorted((min(u, v), max(u, v)) for u, v in edges)))


def _connected(a: int, b: int, edges) -> bool:
    adj: dict[int, list[int]] = {}
    for u, v in edges:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    seen = {a}
    todo = [a]
    while todo:
        x = todo.pop()
        if x == b:
            return True
        for y in adj.get(x, ()):
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return False


@lru_cache(maxsize=100_000)
def _tutte(edges: tuple) -> TuttePoly:
    if not edges:
        return TuttePoly.one()
    (u, v), rest = edges[0], edges[1:]
    if u == v:
        return _tutte(rest).times_y()
    contracted = tuple(sorted(
        (min(a, b), max(a, b))
        for a, b in ((u if x == v else x, u if y == v else y) for x, y in rest)
    ))
    if not _connected(u, v, rest):
        return _tutte(contracted).times_x()
    return _tutte(rest) + _tutte(contracted)


def chromatic_from_tutte(graph) -> LaurentPoly:
    """``(-1)^(|V| - c) Q^c T(1 - Q, 0)``."""
    n, edges = _multi_edges(graph)
    from .graphs import _components
    c = len(_components(n, edges))
    t = tutte((n, edges)).specialize_x(q_poly({0: 1, 1: -1}), 0)
    return t * _Q ** c * (-1) ** (n - c)


# ---------------------------------------------------------------------------
# coefficients

@dataclass(frozen=True)
class ScaledPoly:
    """The rational function ``numerator(Q) / (Q - 1)^exponent``."""

    numerator: LaurentPoly
    exponent: int

    def simplified(self) -> "ScaledPoly":
        num, k = self.numerator, self.exponent
        while k > 0 and not num.is_zero():
            q = num.exact_div(_Q_MINUS_1)
            if q is None:
                break
            num, k = q, k - 1
        if num.is_zero():
            k = 0
        return ScaledPoly(num, k)

    def __call__(self, Q: int) -> Fraction:
        if Q == 1 and self.exponent:
            raise ZeroDivisionError("Q = 1 is a pole")
        return Fraction(self.numerator(Q)) / Fraction(Q - 1) ** self.exponent

    def __eq__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            other = ScaledPoly(other if isinstance(other, LaurentPoly) else q_poly({0: other}), 0)
        if not isinstance(other, ScaledPoly):
            return NotImplemented
        a, b = self.simplified(), other.simplified()
        return a.numerator == b.numerator and a.exponent == b.exponent

    def __hash__(self):
        s = self.simplified()
        return hash((s.numerator, s.exponent))

    def __str__(self):
        s = self.simplified()
        num = s.numerator.format("Q")
        if s.exponent == 0:
            return num
        den = "(Q - 1)" if s.exponent == 1 else f"(Q - 1)^{s.exponent}"
        return f"({num}) / {den}"


Element = Union[TreePair, TElement]


def _graph_of(g: Element):
    return gamma_T(g) if isinstance(g, TElement) else gamma_F(g)


def coefficient_chromatic(g: Element, Q: Optional[int] = None):
    """Chromatic coefficient of ``g``: exact Fraction for integer Q, else a :class:`ScaledPoly`."""
    graph = _graph_of(g)
    poly = ScaledPoly(chromatic(graph), graph.n_vertices - 1)
    if Q is None:
        return poly
    if Q < 2:
        raise ThompsonError("Q must be at least 2")
    return poly(Q)


def coefficient_spin(g: Element, Q: int, max_vertices: int = DEFAULT_MAX_VERTICES) -> Fraction:
    """The same coefficient from the brute-force spin sum."""
    return partition_function(_graph_of(g), chromatic_weights(Q), max_vertices)


def in_F_arrow(g: TreePair) -> bool:
    return is_bipartite(gamma_F(g))


def in_T_arrow(g: TElement) -> bool:
    return is_bipartite(gamma_T(g))


# ---------------------------------------------------------------------------
# dyadic subsets and stabilizers

def digit_sum(x: Fraction) -> int:
    """Number of 1s in the finite binary expansion of a dyadic ``x`` in [0, 1)."""
    x = Fraction(x)
    if not 0 <= x < 1 or x.denominator & (x.denominator - 1):
        raise ThompsonError(f"{x} is not a dyadic rational in [0, 1)")
    return bin(x.numerator).count("1")


def dyadic_grid(depth: int) -> list[Fraction]:
    return [Fraction(k, 2 ** depth) for k in range(2 ** depth)]


def dyadic_subset_action(g: Element, depth: int) -> dict[Fraction, Fraction]:
    """Images of the odd-digit-sum points of the depth-``depth`` grid."""
    if depth > 16:
        raise BudgetExceeded("depth is limited to 16")
    out = {}
    for x in dyadic_grid(depth):
        if digit_sum(x) % 2:
            out[x] = evaluate(g, x) % 1
    return out


def stabilizes_odd_digit_sum(g: Element, depth: Optional[int] = None, up_to_swap: bool = False) -> bool:
    """True iff ``g`` preserves digit-sum parity on the grid of the given depth.

    The default depth is the leaf depth of ``g``, where the test is exact:
    on each leaf interval the parity change is that of its left endpoint.
    With ``up_to_swap`` a global exchange of odd and even is also accepted,
    which is the right notion for elements of T (rotation by 1/2 swaps them).
    """
    if depth is None:
        depth = leaf_depth(g)
    if depth > 16:
        raise BudgetExceeded("depth is limited to 16")
    changes = {(digit_sum(x) + digit_sum(evaluate(g, x) % 1)) % 2 for x in dyadic_grid(depth)}
    return changes == {0} or (up_to_swap and len(changes) == 1)


def _tree_distances(n: int, arcs: list[tuple[int, int]], root: int) -> list[int]:
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in arcs:
        adj[u].append(v)
        adj[v].append(u)
    dist = [-1] * n
    dist[root] = 0
    todo = deque([root])
    while todo:
        x = todo.popleft()
        for y in adj[x]:
            if dist[y] < 0:
                dist[y] = dist[x] + 1
                todo.append(y)
    return dist


def in_h_stabilizer(g: Element, h: Union[Sequence[int], Callable[[int], int]], x0: int) -> bool:
    """Compare ``h^d(x0)`` along the upper and the lower tree at every vertex."""
    hf = h if callable(h) else (lambda x, table=tuple(h): table[x])
    graph = _graph_of(g)
    n = graph.n_vertices
    root_down = graph.root_mark if isinstance(graph, CyclicSignedGraph) else 0
    d_up = _tree_distances(n, [(a.source, a.target) for a in graph.edges if a.half == UP], 0)
    d_down = _tree_distances(n, [(a.source, a.target) for a in graph.edges if a.half == DOWN], root_down)
    # the root of the lower tree carries h^{d_up}(x0) as its own label
    base = x0
    for _ in range(d_up[root_down]):
        base = hf(base)

    def iterate(x, k):
        for _ in range(k):
            x = hf(x)
        return x

    return all(iterate(x0, d_up[v]) == iterate(base, d_down[v]) for v in range(n))
