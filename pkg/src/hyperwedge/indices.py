"""Signed-index combinatorics.

Basis vectors are labelled by nonzero integers.  A window (n, p) selects the
labels {-n, ..., -1, 1, ..., p}; the linear order on labels is plain integer
order, which lists the negative labels before the positive ones.  Everything
downstream (wedge signs, Pfaffian-style partition sums, coordinate orderings)
reduces to the handful of primitives in this module: sorting with a
permutation sign, shuffle signs of block concatenations, enumeration of
unordered partitions into equal blocks, the goodness predicate on co-finite
index sets, and the Young-diagram indexing of window coordinates.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple

IndexSet = tuple[int, ...]
Diagram = tuple[int, ...]


class DimensionMismatch(ValueError):
    """A window, grade, or index-set size does not fit the operation."""


def _as_signed(value) -> int:
    i = int(value)
    if i != value or i == 0:
        raise ValueError(f"index labels must be nonzero integers, got {value!r}")
    return i


@dataclass(frozen=True)
class Window:
    """Label range {-n, ..., -1, 1, ..., p} for a coefficient space."""

    n: int
    p: int

    def __post_init__(self):
        if self.n < 0 or self.p < 0:
            raise ValueError(f"window sides must be nonnegative, got ({self.n}, {self.p})")

    @property
    def size(self) -> int:
        return self.n + self.p

    def elements(self) -> IndexSet:
        return tuple(range(-self.n, 0)) + tuple(range(1, self.p + 1))

    def __contains__(self, label: int) -> bool:
        return (-self.n <= label <= -1) or (1 <= label <= self.p)

    def contains_set(self, indices: Iterable[int]) -> bool:
        return all(i in self for i in indices)

    def leq(self, other: "Window") -> bool:
        """Componentwise comparison: self fits inside other."""
        return self.n <= other.n and self.p <= other.p

    def __str__(self) -> str:
        return f"({self.n},{self.p})"


def index_set(elems: Iterable[int], window: Window | None = None) -> IndexSet:
    """Canonical ascending tuple of distinct nonzero labels.

    >>> index_set([3, -1, 1])
    (-1, 1, 3)
    """
    out = tuple(sorted(_as_signed(i) for i in elems))
    for a, b in zip(out, out[1:]):
        if a == b:
            raise ValueError(f"duplicate index {a}")
    if window is not None and not window.contains_set(out):
        raise DimensionMismatch(f"indices {out} do not fit window {window}")
    return out


def sort_with_sign(seq: Iterable[int]) -> tuple[IndexSet, int]:
    """Sort labels ascending and report the permutation sign.

    The sign is +1 or -1 for an even or odd number of inversions, and 0 when
    the input has a repeated label (so callers can drop annihilated wedge
    terms without a separate check).
    """
    elems = [_as_signed(i) for i in seq]
    inversions = 0
    for a in range(len(elems)):
        x = elems[a]
        for b in range(a + 1, len(elems)):
            if x == elems[b]:
                return tuple(sorted(elems)), 0
            if x > elems[b]:
                inversions += 1
    return tuple(sorted(elems)), (1 if inversions % 2 == 0 else -1)


def shuffle_sign(blocks: Iterable[Iterable[int]]) -> int:
    """Sign of the permutation taking the sorted union to the concatenation.

    Every block must be strictly ascending and the blocks pairwise disjoint;
    violations raise ValueError.  The empty family has sign +1.
    """
    word: list[int] = []
    for block in blocks:
        b = [_as_signed(i) for i in block]
        if any(x >= y for x, y in zip(b, b[1:])):
            raise ValueError(f"block {tuple(b)} is not strictly ascending")
        word.extend(b)
    sorted_word, sign = sort_with_sign(word)
    del sorted_word
    if sign == 0:
        raise ValueError("blocks overlap")
    return sign


def enumerate_partitions(
    elems: Iterable[int], m: int
) -> Iterator[tuple[tuple[IndexSet, ...], int]]:
    """Unordered partitions of a label set into blocks of size m.

    Yields (blocks, sign) pairs.  Blocks are listed in the canonical order
    (ascending by smallest member, each block ascending) and the sign is the
    shuffle sign of that ordering.  Each unordered partition appears exactly
    once; the total count is (ml)! / ((m!)^l l!) for l = |set|/m.
    """
    if m <= 0:
        raise ValueError("block size must be positive")
    base = index_set(elems)
    if len(base) % m:
        raise ValueError(f"cannot split {len(base)} labels into blocks of {m}")

    def rec(rest: IndexSet) -> Iterator[tuple[IndexSet, ...]]:
        if not rest:
            yield ()
            return
        head, pool = rest[0], rest[1:]
        for combo in itertools.combinations(pool, m - 1):
            block = (head,) + combo
            taken = set(combo)
            remaining = tuple(x for x in pool if x not in taken)
            for tail in rec(remaining):
                yield (block,) + tail

    for blocks in rec(base):
        yield blocks, shuffle_sign(blocks)


class GoodParams(NamedTuple):
    """Width/degree parameters (m, l) and their dual pair (r, s).

    They fix the two depth thresholds of the goodness predicate: an index is
    deep-negative when it is at most m - 1 - m*l, and a positive gap is deep
    when it is at least r*s - r.
    """

    m: int
    l: int
    r: int
    s: int

    @property
    def deep_negative(self) -> int:
        return self.m - 1 - self.m * self.l

    @property
    def deep_positive(self) -> int:
        return self.r * self.s - self.r


def is_good(
    negative_members: Iterable[int],
    positive_missing: Iterable[int],
    params: GoodParams,
) -> bool:
    """Goodness of a co-finite label set.

    The set is described by its finitely many negative members together with
    the finitely many positive labels it omits.  It is good when the two
    finite parts have equal cardinality, at most one member is deep-negative,
    and at most one omitted positive is deep.
    """
    neg = [_as_signed(i) for i in negative_members]
    pos = [_as_signed(j) for j in positive_missing]
    if any(i > 0 for i in neg):
        raise ValueError("negative part contains a positive label")
    if any(j < 0 for j in pos):
        raise ValueError("positive complement contains a negative label")
    if len(set(neg)) != len(neg) or len(set(pos)) != len(pos):
        raise ValueError("parts must not repeat labels")
    if len(neg) != len(pos):
        return False
    if sum(1 for i in neg if i <= params.deep_negative) > 1:
        return False
    if sum(1 for j in pos if j >= params.deep_positive) > 1:
        return False
    return True


def conjugate_partition(parts: Iterable[int]) -> Diagram:
    """Transpose of a Young diagram given as weakly decreasing row lengths."""
    rows = tuple(parts)
    if not rows:
        return ()
    return tuple(sum(1 for q in rows if q >= j) for j in range(1, rows[0] + 1))


def young_diagram(indices: Iterable[int], window: Window) -> Diagram:
    """Diagram measuring how far a size-p window coordinate sits from {1..p}.

    Position k of the sorted coordinate contributes the number of label steps
    it moved below k.  That step vector is weakly decreasing with nonnegative
    entries for any size-p subset of the window, and its conjugate is
    returned, so {1,...,p} maps to the empty diagram,
    {-1,1,3,4} in window (2,4) to (2), and {-2,1,3,4} there to (2,1).
    """
    iset = index_set(indices, window=window)
    if len(iset) != window.p:
        raise DimensionMismatch(
            f"coordinate has {len(iset)} indices, window {window} needs {window.p}"
        )
    steps = []
    for k, i in enumerate(iset, start=1):
        shifted = i if i > 0 else i + 1
        steps.append(k - shifted)
    return conjugate_partition(tuple(s for s in steps if s > 0))


def diagram_leq(a: Iterable[int], b: Iterable[int]) -> bool:
    """Containment order on diagrams: every row of a fits inside b."""
    return all(
        x <= y
        for x, y in itertools.zip_longest(tuple(a), tuple(b), fillvalue=0)
    )
