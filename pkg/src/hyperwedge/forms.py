"""Partition-sum coordinate forms and the identities built on them.

The basic object is the width-m, degree-l form attached to a label set A of
size m*l: the signed sum, over all unordered partitions of A into m-blocks,
of the products of the block coordinates.  For even m the block order does
not matter and the sum is a nonzero polynomial; for odd m and degree at
least two the symmetrized sum collapses to zero, and only the multilinear
version survives (it is computed here with determinants in place of
permanents).  A relative variant glues a fixed disjoint tail J into every
block coordinate.

These forms carry the structure constants of the wedge product, satisfy a
pivot expansion that lowers the degree by one, and cut out the coordinate
varieties tested in the varieties module.  Signs in the pivot expansion are
not guessed: they are read off by comparing coefficients against the full
form, verified symbolically once, and cached per shape.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from typing import Iterable, Iterator, Sequence

from .indices import (
    DimensionMismatch,
    IndexSet,
    Window,
    enumerate_partitions,
    index_set,
    sort_with_sign,
)
from .multivector import Multivector
from .polynomials import WedgePolynomial, poly_equal, poly_mul


@dataclass(frozen=True)
class FormSpec:
    """Shape of one form: width m, degree l, member set, optional tail."""

    m: int
    l: int
    indices: IndexSet
    tail: IndexSet = ()

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("width must be positive")
        if self.l < 1:
            raise ValueError("degree must be positive")
        members = index_set(self.indices)
        extra = index_set(self.tail) if self.tail else ()
        if len(members) != self.m * self.l:
            raise DimensionMismatch(
                f"need {self.m * self.l} member labels, got {len(members)}"
            )
        if set(members) & set(extra):
            raise ValueError("tail overlaps the member set")
        object.__setattr__(self, "indices", members)
        object.__setattr__(self, "tail", extra)

    @property
    def grade(self) -> int:
        return self.m + len(self.tail)

    @property
    def label(self) -> str:
        body = ",".join(map(str, self.indices))
        if self.tail:
            return f"hpf({self.m},{self.l})@{body}|" + ",".join(map(str, self.tail))
        return f"hpf({self.m},{self.l})@{body}"


@cache
def _partition_table(count: int, m: int):
    """All m-block partitions of 1..count with their shuffle signs.

    Enumeration runs on the positions 1..count once per shape; relabelling to
    an actual ascending member set preserves relative order and hence every
    sign, so callers map positions to labels without re-enumerating.
    """
    return tuple(enumerate_partitions(range(1, count + 1), m))


@cache
def _coordinate_table(spec: FormSpec):
    """Signed coordinate keys of the form's terms, one row per partition."""
    if spec.m % 2 and spec.l >= 2:
        return ()
    members, tail = spec.indices, spec.tail
    rows = []
    for blocks, sign in _partition_table(len(members), spec.m):
        keys = tuple(
            tuple(sorted(tuple(members[q - 1] for q in block) + tail))
            for block in blocks
        )
        rows.append((sign, keys))
    return tuple(rows)


def hpf_polynomial(spec: FormSpec) -> WedgePolynomial:
    """The form as a polynomial in size-(m + |tail|) coordinates."""
    terms = {keys: Fraction(sign) for sign, keys in _coordinate_table(spec)}
    return WedgePolynomial(spec.grade, terms, None, spec.label)


def hpf_eval(spec: FormSpec, v: Multivector) -> Fraction:
    """Value of the form at v; exact shortcut around building the polynomial."""
    if v.grade != spec.grade:
        raise DimensionMismatch(
            f"form wants grade {spec.grade}, argument has grade {v.grade}"
        )
    if not v.window.contains_set(spec.indices + spec.tail):
        raise DimensionMismatch(f"form labels do not fit window {v.window}")
    total = Fraction(0)
    for sign, keys in _coordinate_table(spec):
        value = Fraction(sign)
        for key in keys:
            value *= v.coeff(key)
            if not value:
                break
        else:
            total += value
    return total


def _alternating_sum(rows: Sequence[Sequence[Fraction]], signed: bool) -> Fraction:
    """Permanent (signed=False) or determinant (signed=True) by expansion."""
    size = len(rows)
    total = Fraction(0)
    for perm in itertools.permutations(range(size)):
        term = Fraction(1)
        for i, j in enumerate(perm):
            term *= rows[i][j]
            if not term:
                break
        else:
            if signed:
                inversions = sum(
                    1
                    for a in range(size)
                    for b in range(a + 1, size)
                    if perm[a] > perm[b]
                )
                if inversions % 2:
                    term = -term
            total += term
    return total


def hpf_multilinear(spec: FormSpec, vs: Iterable[Multivector]) -> Fraction:
    """Fully polarized form on l separate grade-m arguments.

    The sum runs over ordered block assignments, so feeding the same vector
    into every slot returns l! times hpf_eval.  Odd widths are fine here:
    block swaps cost a sign, which turns each partition's permanent into a
    determinant.
    """
    if spec.tail:
        raise ValueError("relative forms do not polarize")
    vec = list(vs)
    if len(vec) != spec.l:
        raise DimensionMismatch(f"form wants {spec.l} arguments, got {len(vec)}")
    window = vec[0].window
    for v in vec:
        if v.window != window:
            raise DimensionMismatch("arguments live in different windows")
        if v.grade != spec.m:
            raise DimensionMismatch(
                f"arguments must have grade {spec.m}, got {v.grade}"
            )
    if not window.contains_set(spec.indices):
        raise DimensionMismatch(f"form labels do not fit window {window}")
    members = spec.indices
    signed = spec.m % 2 == 1
    total = Fraction(0)
    for blocks, sign in _partition_table(len(members), spec.m):
        keys = [
            tuple(members[q - 1] for q in block) for block in blocks
        ]
        columns = [[v.coeff(key) for v in vec] for key in keys]
        if any(not any(col) for col in columns):
            continue
        rows = [[columns[j][i] for j in range(len(keys))] for i in range(len(vec))]
        total += sign * _alternating_sum(rows, signed)
    return total


def wedge_via_hpf(vs: Iterable[Multivector]) -> Multivector:
    """Rebuild an iterated wedge from form values, coordinate by coordinate."""
    vec = list(vs)
    if not vec:
        raise ValueError("need at least one factor")
    window = vec[0].window
    m = vec[0].grade
    if m < 1:
        raise DimensionMismatch("factors must have positive grade")
    for v in vec:
        if v.window != window or v.grade != m:
            raise DimensionMismatch("factors must share window and grade")
    support = sorted({i for v in vec for key in v.support() for i in key})
    out_grade = m * len(vec)
    terms = {}
    for chosen in itertools.combinations(support, out_grade):
        value = hpf_multilinear(FormSpec(m, len(vec), chosen), vec)
        if value:
            terms[chosen] = value
    return Multivector(window, out_grade, terms)


def plucker_relation(body: Iterable[int], extension: Iterable[int], window: Window) -> WedgePolynomial:
    """Quadratic exchange relation between coordinates around |body| + 1.

    One index at a time moves from the larger set to the smaller one; signs
    track its position and the re-sorting of the enlarged set.  Moves that
    would repeat an index contribute nothing.
    """
    small = index_set(body, window=window)
    large = index_set(extension, window=window)
    if len(large) != len(small) + 2:
        raise DimensionMismatch(
            f"need the larger set two bigger, got sizes {len(small)} and {len(large)}"
        )
    grade = len(small) + 1
    pairs = []
    blocked = set(small)
    for position, mover in enumerate(large):
        if mover in blocked:
            continue
        enlarged, sort_sign = sort_with_sign(small + (mover,))
        rest = tuple(x for x in large if x != mover)
        sign = sort_sign * (-1 if position % 2 else 1)
        pairs.append(((enlarged, rest), Fraction(sign)))
    label = (
        "plucker@" + ",".join(map(str, small)) + "|" + ",".join(map(str, large))
    )
    return WedgePolynomial(grade, pairs, window, label)


@cache
def _filtration_table(m: int, l: int, pivot_pos: int):
    """Signed pivot blocks on canonical positions, verified symbolically."""
    count = m * (l + 1)
    canon = tuple(range(1, count + 1))
    pivot = canon[pivot_pos]
    full = hpf_polynomial(FormSpec(m, l + 1, canon))
    assembled = WedgePolynomial.zero(m)
    rows = []
    for combo in itertools.combinations(canon, m):
        if pivot not in combo:
            continue
        rest = tuple(x for x in canon if x not in combo)
        residual = hpf_polynomial(FormSpec(m, l, rest))
        mono, reference = residual.sorted_terms()[0]
        target = tuple(sorted(mono + (combo,)))
        sign = full.coeff(target) / reference
        if sign == 1:
            step = 1
        elif sign == -1:
            step = -1
        else:
            raise RuntimeError(f"expansion sign at {combo} is {sign}, not a unit")
        rows.append((step, tuple(q - 1 for q in combo)))
        assembled = assembled + step * poly_mul(
            WedgePolynomial.variable(combo), residual
        )
    if not poly_equal(assembled, full):
        raise RuntimeError("pivot expansion failed symbolic verification")
    return tuple(rows)


def filtration_expansion(
    m: int, l: int, members: Iterable[int], pivot: int
) -> list[tuple[int, IndexSet, FormSpec]]:
    """Expand the degree-(l+1) form on members along blocks through pivot.

    Returns (sign, block, residual spec) rows whose assembled combination
    sign * x_block * hpf(residual) sums to the full degree-(l+1) form.  Signs
    depend only on the pivot's position and the shape (m, l), so they are
    resolved once on canonical positions and relabelled.
    """
    if m < 2 or m % 2:
        raise ValueError("pivot expansion needs a positive even width")
    if l < 1:
        raise ValueError("residual degree must be positive")
    base = index_set(members)
    if len(base) != m * (l + 1):
        raise DimensionMismatch(f"need {m * (l + 1)} labels, got {len(base)}")
    if pivot not in base:
        raise ValueError(f"pivot {pivot} is not among the labels")
    out = []
    for sign, positions in _filtration_table(m, l, base.index(pivot)):
        block = tuple(base[q] for q in positions)
        rest = tuple(x for x in base if x not in block)
        out.append((sign, block, FormSpec(m, l, rest)))
    return out


def component_form_specs(m: int, l: int, window: Window) -> Iterator[FormSpec]:
    """All relative forms cutting the (m, l) component out of the window.

    Member sets run over size-(m*l) subsets, tails over size-(p - m) subsets
    of the rest.  In windows too small for both choices the iterator is
    empty, matching the fact that the component fills the whole space there.
    """
    if m < 1 or l < 1:
        raise ValueError("width and degree must be positive")
    tail_size = window.p - m
    if tail_size < 0:
        return
    labels = window.elements()
    for chosen in itertools.combinations(labels, m * l):
        taken = set(chosen)
        pool = tuple(x for x in labels if x not in taken)
        for extra in itertools.combinations(pool, tail_size):
            yield FormSpec(m, l, chosen, extra)
