"""Thompson's groups F and T as pairs of planar binary trees.

A tree is ``None`` (a leaf) or a pair ``(left, right)`` (a caret). Leaves, read
left to right, are the standard dyadic intervals of a partition of [0, 1].
An element of F sends the i-th leaf interval of the top tree affinely onto the
i-th leaf interval of the bottom tree; an element of T sends it to leaf
``(i + offset) mod L`` of the bottom tree.

Group operations work on the interval-list form and convert back to trees, so
all arithmetic is exact (``fractions.Fraction`` with power-of-two denominators).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Union

from .errors import ParseError, ThompsonError

BinTree = Optional[tuple]  # None is a leaf, (left, right) is a caret
LEAF: BinTree = None
DyadicRational = Fraction
Interval = tuple[Fraction, Fraction]


def caret(left: BinTree = LEAF, right: BinTree = LEAF) -> BinTree:
    return (left, right)


@lru_cache(maxsize=None)
def leaf_count(tree: BinTree) -> int:
    if tree is None:
        return 1
    return leaf_count(tree[0]) + leaf_count(tree[1])


def format_tree(tree: BinTree) -> str:
    if tree is None:
        return "."
    return f"({format_tree(tree[0])} {format_tree(tree[1])})"


def is_dyadic(x: Fraction) -> bool:
    d = Fraction(x).denominator
    return d & (d - 1) == 0


def dyadic(value) -> Fraction:
    """Coerce ``value`` (int, str like '3/8', Fraction) to an exact dyadic rational."""
    x = Fraction(value)
    if not is_dyadic(x):
        raise ThompsonError(f"{value} is not a dyadic rational")
    return x


def _log2_length(iv: Interval) -> int:
    """Depth n of a standard dyadic interval of length 2^-n."""
    length = iv[1] - iv[0]
    return length.denominator.bit_length() - 1


# ---------------------------------------------------------------------------
# trees <-> interval partitions

def tree_intervals(tree: BinTree, lo: Fraction = Fraction(0), hi: Fraction = Fraction(1)) -> list[Interval]:
    """Leaf intervals of ``tree`` in planar (left to right) order."""
    out: list[Interval] = []
    stack = [(tree, lo, hi)]
    while stack:
        t, a, b = stack.pop()
        if t is None:
            out.append((a, b))
        else:
            m = (a + b) / 2
            stack.append((t[1], m, b))
            stack.append((t[0], a, m))
    return out


def tree_from_intervals(intervals: list[Interval]) -> BinTree:
    """Inverse of :func:`tree_intervals` for a standard dyadic partition of [0, 1]."""

    def build(i: int, j: int, a: Fraction, b: Fraction) -> BinTree:
        if j - i == 1:
            if intervals[i] != (a, b):
                raise ThompsonError(f"interval {intervals[i]} is not standard dyadic here")
            return None
        m = (a + b) / 2
        k = i
        while k < j and intervals[k][1] <= m:
            k += 1
        if k == i or k == j or intervals[k - 1][1] != m:
            raise ThompsonError("partition is not a standard dyadic partition")
        return (build(i, k, a, m), build(k, j, m, b))

    if not intervals:
        raise ThompsonError("empty partition")
    return build(0, len(intervals), Fraction(0), Fraction(1))


def _siblings(left: Interval, right: Interval) -> bool:
    a, m = left
    m2, b = right
    if m != m2 or m - a != b - m:
        return False
    return (a / (2 * (m - a))).denominator == 1


# ---------------------------------------------------------------------------
# element types

@dataclass(frozen=True)
class TreePair:
    """Element of F given by a top tree (domain) and bottom tree (range)."""

    top: BinTree
    bottom: BinTree

    def __post_init__(self):
        if leaf_count(self.top) != leaf_count(self.bottom):
            raise ThompsonError(
                f"leaf-count mismatch: top has {leaf_count(self.top)}, "
                f"bottom has {leaf_count(self.bottom)}"
            )

    @property
    def leaf_count(self) -> int:
        return leaf_count(self.top)

    def __str__(self) -> str:
        return f"{format_tree(self.top)} ; {format_tree(self.bottom)}"

    def is_reduced(self) -> bool:
        return not _cancelling_carets(tree_intervals(self.top), tree_intervals(self.bottom), 0)


@dataclass(frozen=True)
class TElement:
    """Element of T: a tree pair plus the bottom leaf receiving top leaf 0."""

    pair: TreePair
    offset: int = 0

    def __post_init__(self):
        if not 0 <= self.offset < self.pair.leaf_count:
            raise ThompsonError(f"offset {self.offset} outside [0, {self.pair.leaf_count})")

    @property
    def leaf_count(self) -> int:
        return self.pair.leaf_count

    def __str__(self) -> str:
        return f"{self.pair} @ {self.offset}"


Element = Union[TreePair, TElement]

IDENTITY = TreePair(None, None)


def _as_parts(g: Element) -> tuple[list[Interval], list[Interval], int]:
    if isinstance(g, TElement):
        return tree_intervals(g.pair.top), tree_intervals(g.pair.bottom), g.offset
    return tree_intervals(g.top), tree_intervals(g.bottom), 0


def _from_parts(top, bot, off, as_t: bool) -> Element:
    pair = TreePair(tree_from_intervals(top), tree_from_intervals(bot))
    if as_t:
        return TElement(pair, off)
    if off:
        raise ThompsonError("result is not in F (non-zero cyclic offset)")
    return pair


# ---------------------------------------------------------------------------
# parsing

class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            found = self.peek() or "end of input"
            raise ParseError(f"expected {ch!r}, found {found!r}", self.pos)
        self.pos += 1

    def tree(self) -> BinTree:
        ch = self.peek()
        if ch == ".":
            self.pos += 1
            return None
        if ch == "(":
            self.pos += 1
            left = self.tree()
            right = self.tree()
            self.expect(")")
            return (left, right)
        raise ParseError(f"expected '.' or '(', found {ch or 'end of input'!r}", self.pos)

    def integer(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise ParseError("expected an integer offset", start)
        return int(self.text[start:self.pos])

    def end(self):
        if self.peek():
            raise ParseError(f"unexpected trailing {self.peek()!r}", self.pos)


def parse_tree(text: str) -> BinTree:
    p = _Parser(text)
    t = p.tree()
    p.end()
    return t


def _parse(text: str) -> tuple[BinTree, BinTree, Optional[int]]:
    p = _Parser(text)
    top = p.tree()
    p.expect(";")
    bottom = p.tree()
    offset = None
    if p.peek() == "@":
        p.pos += 1
        offset = p.integer()
    p.end()
    return top, bottom, offset


def parse_element(text: str) -> TreePair:
    """Parse ``"tree ; tree"`` into a (possibly unreduced) element of F."""
    top, bottom, offset = _parse(text)
    if offset not in (None, 0):
        raise ParseError("non-zero offset given for an element of F")
    return TreePair(top, bottom)


def parse_t_element(text: str) -> TElement:
    """Parse ``"tree ; tree @ offset"`` (offset optional, default 0)."""
    top, bottom, offset = _parse(text)
    return TElement(TreePair(top, bottom), offset or 0)


def parse_any(text: str) -> Element:
    top, bottom, offset = _parse(text)
    pair = TreePair(top, bottom)
    return pair if offset is None else TElement(pair, offset)


# ---------------------------------------------------------------------------
# reduction

def _cancelling_carets(top: list[Interval], bot: list[Interval], off: int) -> list[int]:
    n = len(top)
    found = []
    for i in range(n - 1):
        j = (i + off) % n
        if j == n - 1:
            continue
        if _siblings(top[i], top[i + 1]) and _siblings(bot[j], bot[j + 1]):
            found.append(i)
    return found


def _reduce_parts(top, bot, off):
    top, bot = list(top), list(bot)
    while True:
        carets = _cancelling_carets(top, bot, off)
        if not carets:
            return top, bot, off
        i = carets[0]
        j = (i + off) % len(top)
        top[i:i + 2] = [(top[i][0], top[i + 1][1])]
        bot[j:j + 2] = [(bot[j][0], bot[j + 1][1])]
        if off > j:
            off -= 1


def reduce(g: TreePair) -> TreePair:
    """Cancel carets until none remain; the result is the canonical form."""
    top, bot, _ = _reduce_parts(*_as_parts(g))
    return TreePair(tree_from_intervals(top), tree_from_intervals(bot))


def reduce_T(g: TElement) -> TElement:
    top, bot, off = _reduce_parts(*_as_parts(g))
    return TElement(TreePair(tree_from_intervals(top), tree_from_intervals(bot)), off)


# ---------------------------------------------------------------------------
# arithmetic

def _split(top, bot, off, i):
    """Add a caret under top leaf ``i`` and under its image leaf."""
    n = len(top)
    j = (i + off) % n
    a, b = top[i]
    c, d = bot[j]
    top[i:i + 1] = [(a, (a + b) / 2), ((a + b) / 2, b)]
    bot[j:j + 1] = [(c, (c + d) / 2), ((c + d) / 2, d)]
    return off if off <= j else off + 1


def _refine(top, bot, off, breakpoints: set[Fraction], side: str):
    """Split leaves until the chosen side has exactly ``breakpoints``."""
    top, bot = list(top), list(bot)
    k = 0
    while True:
        ivs = top if side == "top" else bot
        if k >= len(ivs):
            return top, bot, off
        a, b = ivs[k]
        if any(a < p < b for p in breakpoints):
            n = len(top)
            i = k if side == "top" else (k - off) % n
            off = _split(top, bot, off, i)
        else:
            k += 1


def _breakpoints(ivs: list[Interval]) -> set[Fraction]:
    return {a for a, _ in ivs} | {ivs[-1][1]}


def _compose_parts(g, h):
    gt, gb, go = g
    ht, hb, ho = h
    common = _breakpoints(hb) | _breakpoints(gt)
    ht, hb, ho = _refine(ht, hb, ho, common, "bottom")
    gt, gb, go = _refine(gt, gb, go, common, "top")
    assert hb == gt
    return _reduce_parts(ht, gb, (ho + go) % len(ht))


def multiply(g: TreePair, h: TreePair) -> TreePair:
    """The composite map ``g o h`` (apply ``h`` first), reduced."""
    return _from_parts(*_compose_parts(_as_parts(g), _as_parts(h)), as_t=False)


def invert(g: TreePair) -> TreePair:
    return TreePair(g.bottom, g.top)


def multiply_T(g: Element, h: Element) -> TElement:
    return _from_parts(*_compose_parts(_as_parts(g), _as_parts(h)), as_t=True)


def invert_T(g: TElement) -> TElement:
    n = g.leaf_count
    return TElement(TreePair(g.pair.bottom, g.pair.top), (-g.offset) % n)


def power(g: Element, n: int) -> Element:
    as_t = isinstance(g, TElement)
    mul = multiply_T if as_t else multiply
    if n < 0:
        g = invert_T(g) if as_t else invert(g)
        n = -n
    result: Element = TElement(IDENTITY, 0) if as_t else IDENTITY
    for _ in range(n):
        result = mul(g, result)
    return result


def evaluate(g: Element, t) -> Fraction:
    """Image of the dyadic point ``t`` under the PL map of ``g``.

    For elements of T the argument and the result are taken mod 1.
    """
    t = Fraction(t)
    top, bot, off = _as_parts(g)
    circle = isinstance(g, TElement)
    if circle:
        t = t % 1
    elif not 0 <= t <= 1:
        raise ThompsonError(f"{t} is outside [0, 1]")
    n = len(top)
    for i, (a, b) in enumerate(top):
        if a <= t <= b:
            c, d = bot[(i + off) % n]
            image = c + (t - a) * (d - c) / (b - a)
            return image % 1 if circle else image
    raise AssertionError("unreachable: partition covers [0, 1]")


def breakpoints(g: Element) -> list[Fraction]:
    top, _, _ = _as_parts(g)
    return sorted(_breakpoints(top))


def slopes(g: TreePair) -> tuple[int, int]:
    """``(log2 g'(0), log2 g'(1))``: the abelianisation of F."""
    top, bot, _ = _as_parts(g)
    return (_log2_length(top[0]) - _log2_length(bot[0]),
            _log2_length(top[-1]) - _log2_length(bot[-1]))


def leaf_depth(g: Element) -> int:
    """Largest depth of a leaf interval in either tree."""
    top, bot, _ = _as_parts(g)
    return max(_log2_length(iv) for iv in top + bot)


# ---------------------------------------------------------------------------
# named elements and random sampling

def x0() -> TreePair:
    return TreePair(((None, None), None), (None, (None, None)))


def x1() -> TreePair:
    return TreePair((None, ((None, None), None)), (None, (None, (None, None))))


def element_C() -> TElement:
    """The order-3 element of T: [0,1/2] -> [3/4,1] -> [1/2,3/4] -> [0,1/2]."""
    t = (None, (None, None))
    return TElement(TreePair(t, t), 2)


def random_tree(rng: random.Random, n_leaves: int) -> BinTree:
    if n_leaves == 1:
        return None
    k = rng.randint(1, n_leaves - 1)
    return (random_tree(rng, k), random_tree(rng, n_leaves - k))


def random_element(rng: random.Random, max_leaves: int, reduced: bool = True) -> TreePair:
    n = rng.randint(1, max_leaves)
    g = TreePair(random_tree(rng, n), random_tree(rng, n))
    return reduce(g) if reduced else g


def random_t_element(rng: random.Random, max_leaves: int) -> TElement:
    n = rng.randint(1, max_leaves)
    g = TElement(TreePair(random_tree(rng, n), random_tree(rng, n)), rng.randrange(n))
    return reduce_T(g)


def add_cancelling_caret(g: Element, leaf: int) -> Element:
    """Expand top leaf ``leaf`` and its image leaf by one caret (unreduces ``g``)."""
    top, bot, off = _as_parts(g)
    top, bot = list(top), list(bot)
    off = _split(top, bot, off, leaf)
    return _from_parts(top, bot, off, as_t=isinstance(g, TElement))
