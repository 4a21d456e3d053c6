"""Sparse exact multivectors over a signed index window.

A multivector of grade g in window (n, p) is a finite rational combination of
basis wedges e_I, where I runs over ascending g-subsets of the window labels.
Coefficients are `fractions.Fraction` throughout; floating point input is
rejected.  The module also provides covectors (finite functionals used for
contraction), dense rational matrices with exact determinant and rank, the
four window-transition maps, the Hodge star, and the induced GL action.

Conventions that fix every sign in the package:

* wedge signs come from sorting concatenated index lists, counting inversions
  in plain integer order;
* contraction is the right interior product: contracting e^k removes k from
  e_I with sign (-1)^(number of indices after k), so removing the last index
  is free of signs and contracting by e^(p+1) exactly undoes multiplication
  by e_(p+1);
* the star of e_I is sgn(I, I_complement) times the basis wedge on the
  negated complement, taken in the mirrored window (p, n), with no further
  normalization.
"""
from __future__ import annotations

import re
from fractions import Fraction
from types import MappingProxyType
from typing import Callable, Iterable, Mapping

from .indices import (
    DimensionMismatch,
    IndexSet,
    Window,
    shuffle_sign,
    sort_with_sign,
)


class FormatError(ValueError):
    """Serialized data violates the on-disk contract."""


def _coerce(value) -> Fraction:
    if isinstance(value, float):
        raise TypeError("floating point coefficients are not allowed")
    return Fraction(value)


def _ascending_key(indices: Iterable[int]) -> IndexSet:
    key = tuple(int(i) for i in indices)
    for a, b in zip(key, key[1:]):
        if a >= b:
            raise ValueError(f"index set {key} is not strictly ascending")
    if any(i == 0 for i in key):
        raise ValueError("index 0 is not a valid label")
    return key


class Multivector:
    """Immutable sparse element of one exterior power of a window space."""

    __slots__ = ("window", "grade", "_terms")

    def __init__(
        self,
        window: Window,
        grade: int,
        terms: Mapping[IndexSet, Fraction] | Iterable[tuple[IndexSet, Fraction]] = (),
    ):
        if grade < 0:
            raise ValueError("grade must be nonnegative")
        store: dict[IndexSet, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for raw_key, raw_coeff in items:
            key = _ascending_key(raw_key)
            if len(key) != grade:
                raise DimensionMismatch(
                    f"term {key} has {len(key)} indices, expected grade {grade}"
                )
            if not window.contains_set(key):
                raise DimensionMismatch(f"term {key} is outside window {window}")
            coeff = _coerce(raw_coeff)
            if coeff:
                store[key] = coeff
        object.__setattr__(self, "window", window)
        object.__setattr__(self, "grade", grade)
        object.__setattr__(self, "_terms", store)

    def __setattr__(self, name, value):
        raise AttributeError("Multivector is immutable")

    # -------------------------------------------------------- constructors

    @classmethod
    def zero(cls, window: Window, grade: int) -> "Multivector":
        return cls(window, grade)

    @classmethod
    def basis(cls, window: Window, indices: Iterable[int], coeff=1) -> "Multivector":
        """Basis wedge for the given labels in any order.

        Sorting contributes the permutation sign; a repeated label yields the
        zero multivector of the matching grade.
        """
        raw = tuple(indices)
        iset, sign = sort_with_sign(raw)
        if not window.contains_set(iset):
            raise DimensionMismatch(f"indices {iset} outside window {window}")
        if sign == 0:
            return cls(window, len(raw))
        return cls(window, len(raw), {iset: sign * _coerce(coeff)})

    # -------------------------------------------------------- inspection

    @property
    def terms(self) -> Mapping[IndexSet, Fraction]:
        return MappingProxyType(self._terms)

    def coeff(self, indices: Iterable[int]) -> Fraction:
        return self._terms.get(_ascending_key(indices), Fraction(0))

    def support(self) -> tuple[IndexSet, ...]:
        return tuple(sorted(self._terms))

    def is_zero(self) -> bool:
        return not self._terms

    # -------------------------------------------------------- algebra

    def _require_compatible(self, other: "Multivector"):
        if self.window != other.window or self.grade != other.grade:
            raise DimensionMismatch(
                f"cannot combine grade {self.grade} in {self.window} "
                f"with grade {other.grade} in {other.window}"
            )

    def __add__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        self._require_compatible(other)
        acc = dict(self._terms)
        for key, coeff in other._terms.items():
            acc[key] = acc.get(key, Fraction(0)) + coeff
        return Multivector(self.window, self.grade, acc)

    def __sub__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return Multivector(
            self.window, self.grade, {k: -c for k, c in self._terms.items()}
        )

    def __mul__(self, scalar):
        if isinstance(scalar, Multivector):
            return NotImplemented
        s = _coerce(scalar)
        return Multivector(
            self.window, self.grade, {k: s * c for k, c in self._terms.items()}
        )

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        return (
            self.window == other.window
            and self.grade == other.grade
            and self._terms == other._terms
        )

    __hash__ = None

    def __repr__(self):
        if self.is_zero():
            body = "0"
        else:
            parts = []
            for key in self.support():
                c = self._terms[key]
                label = "e(" + ",".join(str(i) for i in key) + ")"
                parts.append(f"{c}*{label}" if key else str(c))
            body = " + ".join(parts)
        return f"<{body} | grade {self.grade} in {self.window}>"


class Covector:
    """Finite functional f = sum of f_i e^i over the window labels."""

    __slots__ = ("window", "_coeffs")

    def __init__(self, window: Window, coeffs: Mapping[int, Fraction]):
        store = {}
        for label, value in coeffs.items():
            if label not in window:
                raise DimensionMismatch(f"label {label} outside window {window}")
            c = _coerce(value)
            if c:
                store[int(label)] = c
        object.__setattr__(self, "window", window)
        object.__setattr__(self, "_coeffs", store)

    def __setattr__(self, name, value):
        raise AttributeError("Covector is immutable")

    @classmethod
    def dual_basis(cls, window: Window, label: int) -> "Covector":
        return cls(window, {label: Fraction(1)})

    def coeff(self, label: int) -> Fraction:
        return self._coeffs.get(label, Fraction(0))

    def items(self):
        return tuple(sorted(self._coeffs.items()))

    def __add__(self, other):
        if not isinstance(other, Covector) or other.window != self.window:
            return NotImplemented
        merged = dict(self._coeffs)
        for k, v in other._coeffs.items():
            merged[k] = merged.get(k, Fraction(0)) + v
        return Covector(self.window, merged)

    def __eq__(self, other):
        if not isinstance(other, Covector):
            return NotImplemented
        return self.window == other.window and self._coeffs == other._coeffs

    __hash__ = None

    def __repr__(self):
        body = " + ".join(f"{c}*e^({i})" for i, c in self.items()) or "0"
        return f"<{body} | covector on {self.window}>"


class RationalMatrix:
    """Dense square matrix over the window labels, exact rational entries."""

    __slots__ = ("window", "_rows")

    def __init__(self, window: Window, rows: Iterable[Iterable]):
        size = window.size
        data = tuple(tuple(_coerce(x) for x in row) for row in rows)
        if len(data) != size or any(len(row) != size for row in data):
            raise DimensionMismatch(f"matrix must be {size}x{size} for {window}")
        object.__setattr__(self, "window", window)
        object.__setattr__(self, "_rows", data)

    def __setattr__(self, name, value):
        raise AttributeError("RationalMatrix is immutable")

    @classmethod
    def identity(cls, window: Window) -> "RationalMatrix":
        return cls.from_function(
            window, lambda r, c: Fraction(1) if r == c else Fraction(0)
        )

    @classmethod
    def from_function(
        cls, window: Window, fn: Callable[[int, int], Fraction]
    ) -> "RationalMatrix":
        labels = window.elements()
        return cls(window, [[fn(r, c) for c in labels] for r in labels])

    def _pos(self, label: int) -> int:
        w = self.window
        if label not in w:
            raise DimensionMismatch(f"label {label} outside window {w}")
        return label + w.n if label < 0 else label + w.n - 1

    def entry(self, row_label: int, col_label: int) -> Fraction:
        return self._rows[self._pos(row_label)][self._pos(col_label)]

    def column(self, col_label: int) -> dict[int, Fraction]:
        j = self._pos(col_label)
        return {
            label: row[j]
            for label, row in zip(self.window.elements(), self._rows)
            if row[j]
        }

    def matmul(self, other: "RationalMatrix") -> "RationalMatrix":
        if other.window != self.window:
            raise DimensionMismatch("matrix windows differ")
        size = self.window.size
        rows = [
            [
                sum((self._rows[i][k] * other._rows[k][j] for k in range(size)),
                    Fraction(0))
                for j in range(size)
            ]
            for i in range(size)
        ]
        return RationalMatrix(self.window, rows)

    def det(self) -> Fraction:
        """Bareiss fraction-free determinant (exact; intermediate divisions cancel)."""
        a = [list(row) for row in self._rows]
        size = len(a)
        if size == 0:
            return Fraction(1)
        sign = 1
        prev = Fraction(1)
        for k in range(size - 1):
            if a[k][k] == 0:
                pivot = next((i for i in range(k + 1, size) if a[i][k]), None)
                if pivot is None:
                    return Fraction(0)
                a[k], a[pivot] = a[pivot], a[k]
                sign = -sign
            for i in range(k + 1, size):
                for j in range(k + 1, size):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
                a[i][k] = Fraction(0)
            prev = a[k][k]
        return sign * a[-1][-1]

    def rank(self) -> int:
        a = [list(row) for row in self._rows]
        size = len(a)
        rank = 0
        row = 0
        for col in range(size):
            pivot = next((i for i in range(row, size) if a[i][col]), None)
            if pivot is None:
                continue
            a[row], a[pivot] = a[pivot], a[row]
            inv = 1 / a[row][col]
            for i in range(row + 1, size):
                factor = a[i][col] * inv
                if factor:
                    for j in range(col, size):
                        a[i][j] -= factor * a[row][j]
            rank += 1
            row += 1
            if row == size:
                break
        return rank

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.window == other.window and self._rows == other._rows

    __hash__ = None


# ------------------------------------------------------------------ products

def wedge(u: Multivector, v: Multivector) -> Multivector:
    """Exterior product; terms sharing an index annihilate."""
    if u.window != v.window:
        raise DimensionMismatch(f"windows differ: {u.window} vs {v.window}")
    acc: dict[IndexSet, Fraction] = {}
    right = [(key, frozenset(key), coeff) for key, coeff in v._terms.items()]
    for key_u, coeff_u in u._terms.items():
        set_u = frozenset(key_u)
        for key_v, set_v, coeff_v in right:
            if not set_u.isdisjoint(set_v):
                continue
            merged, sign = _merge_sorted(key_u, key_v)
            contrib = coeff_u * coeff_v * sign
            prior = acc.get(merged)
            acc[merged] = contrib if prior is None else prior + contrib
    return Multivector(u.window, u.grade + v.grade, acc)


def _merge_sorted(left: IndexSet, right: IndexSet) -> tuple[IndexSet, int]:
    """Merge two ascending disjoint tuples, counting crossing inversions."""
    merged = []
    inversions = 0
    i = j = 0
    while i < len(left) and j < len(right):
        if left[i] < right[j]:
            merged.append(left[i])
            i += 1
        else:
            merged.append(right[j])
            inversions += len(left) - i
            j += 1
    merged.extend(left[i:])
    merged.extend(right[j:])
    return tuple(merged), (1 if inversions % 2 == 0 else -1)


def wedge_power(v: Multivector, l: int) -> Multivector:
    if l < 0:
        raise ValueError("power must be nonnegative")
    out = Multivector(v.window, 0, {(): Fraction(1)})
    for _ in range(l):
        if out.is_zero():
            return Multivector.zero(v.window, out.grade + v.grade * (l - _))
        out = wedge(out, v)
    return out


def contract(f: Covector, v: Multivector) -> Multivector:
    """Right interior product by the covector f."""
    if f.window != v.window:
        raise DimensionMismatch("covector and multivector windows differ")
    if v.grade == 0:
        raise DimensionMismatch("cannot contract a grade-0 element")
    acc: dict[IndexSet, Fraction] = {}
    for key, coeff in v._terms.items():
        for pos in range(len(key) - 1, -1, -1):
            weight = f.coeff(key[pos])
            if not weight:
                continue
            sign = -1 if (len(key) - 1 - pos) % 2 else 1
            rest = key[:pos] + key[pos + 1:]
            contrib = coeff * weight * sign
            prior = acc.get(rest)
            acc[rest] = contrib if prior is None else prior + contrib
    return Multivector(v.window, v.grade - 1, acc)


# ------------------------------------------------------------------ transitions

TRANSITION_KINDS = ("i", "j", "i_dagger", "j_dagger")


def transition(kind: str, v: Multivector) -> Multivector:
    """Window-change maps.

    "i" widens the negative side by one row without touching coefficients,
    "j" appends the next positive label as a new top wedge factor,
    "i_dagger" removes the deepest negative row (terms using it die), and
    "j_dagger" contracts away the current top label.  The dagger maps undo
    their partners exactly: i_dagger(i(v)) = v and j_dagger(j(v)) = v.
    """
    w = v.window
    if kind == "i":
        return Multivector(Window(w.n + 1, w.p), v.grade, dict(v._terms))
    if kind == "j":
        label = w.p + 1
        wider = Window(w.n, w.p + 1)
        return Multivector(
            wider, v.grade + 1, {key + (label,): c for key, c in v._terms.items()}
        )
    if kind == "i_dagger":
        if w.n < 1:
            raise DimensionMismatch("no negative row to drop")
        deepest = -w.n
        kept = {key: c for key, c in v._terms.items() if deepest not in key}
        return Multivector(Window(w.n - 1, w.p), v.grade, kept)
    if kind == "j_dagger":
        if w.p < 1 or v.grade < 1:
            raise DimensionMismatch("need a positive column and positive grade")
        top = w.p
        kept = {key[:-1]: c for key, c in v._terms.items() if key[-1] == top}
        return Multivector(Window(w.n, w.p - 1), v.grade - 1, kept)
    raise ValueError(f"unknown transition kind {kind!r}; expected one of {TRANSITION_KINDS}")


def hodge_star(v: Multivector) -> Multivector:
    """Grade-complementing duality into the mirrored window (p, n).

    e_I maps to sgn(I, complement) e_(negated complement); the pairing that
    motivates the negation matches e_i with e_(-i).
    """
    w = v.window
    universe = w.elements()
    acc: dict[IndexSet, Fraction] = {}
    for key, coeff in v._terms.items():
        members = set(key)
        comp = tuple(x for x in universe if x not in members)
        sign = shuffle_sign([key, comp])
        image = tuple(sorted(-x for x in comp))
        acc[image] = coeff * sign
    return Multivector(Window(w.p, w.n), w.size - v.grade, acc)


def gl_apply(m: RationalMatrix, v: Multivector) -> Multivector:
    """Apply the grade-wise extension of a linear map (invertible or not)."""
    if m.window != v.window:
        raise DimensionMismatch("matrix and multivector windows differ")
    images: dict[int, Multivector] = {}

    def image(label: int) -> Multivector:
        cached = images.get(label)
        if cached is None:
            cached = Multivector(
                v.window, 1, {(r,): c for r, c in m.column(label).items()}
            )
            images[label] = cached
        return cached

    total = Multivector.zero(v.window, v.grade)
    for key, coeff in v._terms.items():
        part = Multivector(v.window, 0, {(): coeff})
        for label in key:
            part = wedge(part, image(label))
            if part.is_zero():
                break
        if part.grade != v.grade:
            part = Multivector.zero(v.window, v.grade)
        total = total + part
    return total


def rank_two_form(v: Multivector) -> int:
    """Largest r with the r-th wedge power nonzero (grade-2 input)."""
    if v.grade != 2:
        raise DimensionMismatch("rank is defined for grade-2 elements")
    rank = 0
    power = Multivector(v.window, 0, {(): Fraction(1)})
    while True:
        power = wedge(power, v)
        if power.is_zero():
            return rank
        rank += 1


# ------------------------------------------------------------------ files

_FRACTION_RE = re.compile(r"^-?(0|[1-9][0-9]*)(/[1-9][0-9]*)?$")


def parse_fraction(text) -> Fraction:
    """Strict "p" or "p/q" decimal string, q positive."""
    if not isinstance(text, str) or not _FRACTION_RE.match(text):
        raise FormatError(f"bad rational literal {text!r}")
    return Fraction(text)


def multivector_to_obj(v: Multivector) -> dict:
    return {
        "window": [v.window.n, v.window.p],
        "grade": v.grade,
        "terms": [
            {"indices": list(key), "coeff": str(v._terms[key])}
            for key in v.support()
        ],
    }


def multivector_from_obj(obj) -> Multivector:
    if not isinstance(obj, dict):
        raise FormatError("multivector document must be an object")
    window_part = obj.get("window")
    if (
        not isinstance(window_part, (list, tuple))
        or len(window_part) != 2
        or not all(isinstance(x, int) and not isinstance(x, bool) for x in window_part)
        or any(x < 0 for x in window_part)
    ):
        raise FormatError("window must be a pair of nonnegative integers")
    grade = obj.get("grade")
    if not isinstance(grade, int) or isinstance(grade, bool) or grade < 0:
        raise FormatError("grade must be a nonnegative integer")
    term_part = obj.get("terms")
    if not isinstance(term_part, list):
        raise FormatError("terms must be a list")
    window = Window(*window_part)
    seen: dict[IndexSet, Fraction] = {}
    for item in term_part:
        if not isinstance(item, dict):
            raise FormatError("each term must be an object")
        indices = item.get("indices")
        if not isinstance(indices, list) or not all(
            isinstance(i, int) and not isinstance(i, bool) for i in indices
        ):
            raise FormatError("indices must be a list of integers")
        coeff = parse_fraction(item.get("coeff"))
        if coeff == 0:
            raise FormatError("explicit zero coefficients are not canonical")
        try:
            key = _ascending_key(indices)
        except ValueError as exc:
            raise FormatError(str(exc)) from None
        if len(key) != grade:
            raise FormatError(f"term {key} does not match grade {grade}")
        if not window.contains_set(key):
            raise FormatError(f"term {key} outside window {window}")
        if key in seen:
            raise FormatError(f"duplicate term {key}")
        seen[key] = coeff
    return Multivector(window, grade, seen)
