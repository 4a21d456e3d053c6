"""Polynomials in window coordinates x_I.

Variables are indexed by ascending size-g subsets I of a window, one variable
per coordinate of a grade-g multivector.  A monomial is a multiset of such
index sets, kept as a sorted tuple, so x_{12}x_{34} and x_{34}x_{12} collapse
to one key.  Coefficients are exact rationals; zero coefficients are never
stored.

A polynomial may carry an ambient window.  When it does, evaluation insists
the argument lives in exactly that window; when it does not (window None),
evaluation still checks that every variable fits inside the argument's
window, so a stray index can never be silently read as zero.
"""
from __future__ import annotations

from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Optional

from .indices import DimensionMismatch, IndexSet, Window
from .multivector import FormatError, Multivector, parse_fraction

Monomial = tuple[IndexSet, ...]


def _variable_key(indices: Iterable[int]) -> IndexSet:
    key = tuple(int(i) for i in indices)
    for a, b in zip(key, key[1:]):
        if a >= b:
            raise ValueError(f"variable index set {key} is not strictly ascending")
    if any(i == 0 for i in key):
        raise ValueError("index 0 is not a valid variable label")
    return key


def monomial(factors: Iterable[Iterable[int]]) -> Monomial:
    """Canonical product key: validated factors in sorted multiset order."""
    return tuple(sorted(_variable_key(f) for f in factors))


def _coerce(value) -> Fraction:
    if isinstance(value, float):
        raise TypeError("floating point coefficients are not allowed")
    return Fraction(value)


class WedgePolynomial:
    """Sparse polynomial over the coordinates of one exterior power."""

    __slots__ = ("grade", "window", "label", "_terms")

    def __init__(
        self,
        grade: int,
        terms: Mapping[Monomial, Fraction] | Iterable[tuple[Monomial, Fraction]] = (),
        window: Optional[Window] = None,
        label: Optional[str] = None,
    ):
        if grade < 0:
            raise ValueError("grade must be nonnegative")
        store: dict[Monomial, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for raw_mono, raw_coeff in items:
            mono = monomial(raw_mono)
            for factor in mono:
                if len(factor) != grade:
                    raise DimensionMismatch(
                        f"variable {factor} has size {len(factor)}, expected {grade}"
                    )
                if window is not None and not window.contains_set(factor):
                    raise DimensionMismatch(
                        f"variable {factor} is outside window {window}"
                    )
            coeff = store.get(mono, Fraction(0)) + _coerce(raw_coeff)
            if coeff:
                store[mono] = coeff
            else:
                store.pop(mono, None)
        object.__setattr__(self, "grade", grade)
        object.__setattr__(self, "window", window)
        object.__setattr__(self, "label", label)
        object.__setattr__(self, "_terms", store)

    def __setattr__(self, name, value):
        raise AttributeError("WedgePolynomial is immutable")

    @classmethod
    def zero(cls, grade: int, window: Optional[Window] = None) -> "WedgePolynomial":
        return cls(grade, (), window)

    @classmethod
    def variable(
        cls, indices: Iterable[int], window: Optional[Window] = None
    ) -> "WedgePolynomial":
        key = _variable_key(indices)
        return cls(len(key), {(key,): Fraction(1)}, window)

    # ---------------------------------------------------------- inspection

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return MappingProxyType(self._terms)

    def coeff(self, factors: Iterable[Iterable[int]]) -> Fraction:
        return self._terms.get(monomial(factors), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        return max((len(mono) for mono in self._terms), default=0)

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        """Terms by total degree, then lexicographically on the monomial."""
        return sorted(self._terms.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def with_window(self, window: Optional[Window]) -> "WedgePolynomial":
        return WedgePolynomial(self.grade, self._terms, window, self.label)

    # ---------------------------------------------------------- arithmetic

    def __add__(self, other):
        if not isinstance(other, WedgePolynomial):
            return NotImplemented
        return poly_add(self, other)

    def __sub__(self, other):
        if not isinstance(other, WedgePolynomial):
            return NotImplemented
        return poly_add(self, poly_scale(other, -1))

    def __neg__(self):
        return poly_scale(self, -1)

    def __mul__(self, other):
        if isinstance(other, WedgePolynomial):
            return poly_mul(self, other)
        return poly_scale(self, other)

    def __rmul__(self, scalar):
        return poly_scale(self, scalar)

    def __eq__(self, other):
        if not isinstance(other, WedgePolynomial):
            return NotImplemented
        return (
            self.grade == other.grade
            and self.window == other.window
            and self._terms == other._terms
        )

    __hash__ = None

    def __repr__(self):
        parts = []
        for mono, coeff in self.sorted_terms():
            factors = "".join("x(" + ",".join(map(str, f)) + ")" for f in mono)
            parts.append(f"{coeff}{factors}" if factors else str(coeff))
        body = " + ".join(parts) or "0"
        home = self.window if self.window is not None else "any window"
        return f"<{body} | grade {self.grade}, {home}>"


def _require_same_frame(a: WedgePolynomial, b: WedgePolynomial):
    if a.grade != b.grade:
        raise DimensionMismatch(f"grades differ: {a.grade} vs {b.grade}")
    if a.window != b.window:
        raise DimensionMismatch(f"windows differ: {a.window} vs {b.window}")


def poly_add(a: WedgePolynomial, b: WedgePolynomial) -> WedgePolynomial:
    _require_same_frame(a, b)
    acc = dict(a._terms)
    for mono, coeff in b._terms.items():
        acc[mono] = acc.get(mono, Fraction(0)) + coeff
    return WedgePolynomial(a.grade, acc, a.window)


def poly_mul(a: WedgePolynomial, b: WedgePolynomial) -> WedgePolynomial:
    _require_same_frame(a, b)
    acc: dict[Monomial, Fraction] = {}
    for mono_a, coeff_a in a._terms.items():
        for mono_b, coeff_b in b._terms.items():
            mono = tuple(sorted(mono_a + mono_b))
            acc[mono] = acc.get(mono, Fraction(0)) + coeff_a * coeff_b
    return WedgePolynomial(a.grade, acc, a.window)


def poly_scale(a: WedgePolynomial, scalar) -> WedgePolynomial:
    s = _coerce(scalar)
    return WedgePolynomial(
        a.grade, {m: s * c for m, c in a._terms.items()}, a.window, a.label
    )


def poly_eval(p: WedgePolynomial, v: Multivector) -> Fraction:
    """Substitute x_I := coefficient of e_I in v."""
    if v.grade != p.grade:
        raise DimensionMismatch(
            f"polynomial over grade {p.grade} evaluated at grade {v.grade}"
        )
    if p.window is not None:
        if v.window != p.window:
            raise DimensionMismatch(
                f"polynomial lives in {p.window}, argument in {v.window}"
            )
    else:
        for mono in p._terms:
            for factor in mono:
                if not v.window.contains_set(factor):
                    raise DimensionMismatch(
                        f"variable {factor} is outside window {v.window}"
                    )
    total = Fraction(0)
    for mono, coeff in p._terms.items():
        value = coeff
        for factor in mono:
            value *= v.coeff(factor)
            if not value:
                break
        total += value
    return total


def poly_equal(a: WedgePolynomial, b: WedgePolynomial) -> bool:
    """Symbolic equality of canonical forms; ambient window is ignored."""
    return a.grade == b.grade and a._terms == b._terms


# ------------------------------------------------------------------- files

def poly_to_obj(p: WedgePolynomial) -> dict:
    return {
        "window": None if p.window is None else [p.window.n, p.window.p],
        "grade": p.grade,
        "label": p.label,
        "terms": [
            {"coeff": str(coeff), "factors": [list(f) for f in mono]}
            for mono, coeff in p.sorted_terms()
        ],
    }


def poly_from_obj(obj) -> WedgePolynomial:
    if not isinstance(obj, dict):
        raise FormatError("polynomial document must be an object")
    window_part = obj.get("window")
    window = None
    if window_part is not None:
        if (
            not isinstance(window_part, (list, tuple))
            or len(window_part) != 2
            or not all(
                isinstance(x, int) and not isinstance(x, bool) for x in window_part
            )
            or any(x < 0 for x in window_part)
        ):
            raise FormatError("window must be null or a pair of nonnegative integers")
        window = Window(*window_part)
    grade = obj.get("grade")
    if not isinstance(grade, int) or isinstance(grade, bool) or grade < 0:
        raise FormatError("grade must be a nonnegative integer")
    label = obj.get("label")
    if label is not None and not isinstance(label, str):
        raise FormatError("label must be null or a string")
    term_part = obj.get("terms")
    if not isinstance(term_part, list):
        raise FormatError("terms must be a list")
    seen: dict[Monomial, Fraction] = {}
    for item in term_part:
        if not isinstance(item, dict):
            raise FormatError("each term must be an object")
        coeff = parse_fraction(item.get("coeff"))
        if coeff == 0:
            raise FormatError("explicit zero coefficients are not canonical")
        factors = item.get("factors")
        if not isinstance(factors, list) or not all(
            isinstance(f, list)
            and all(isinstance(i, int) and not isinstance(i, bool) for i in f)
            for f in factors
        ):
            raise FormatError("factors must be a list of integer lists")
        try:
            mono = monomial(factors)
        except ValueError as exc:
            raise FormatError(str(exc)) from None
        for factor in mono:
            if len(factor) != grade:
                raise FormatError(f"variable {factor} does not match grade {grade}")
            if window is not None and not window.contains_set(factor):
                raise FormatError(f"variable {factor} outside window {window}")
        if mono in seen:
            raise FormatError(f"duplicate monomial {mono}")
        seen[mono] = coeff
    return WedgePolynomial(grade, seen, window, label)
