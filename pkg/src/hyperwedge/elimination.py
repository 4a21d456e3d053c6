"""Projection onto good coordinates and rational recovery of the rest.

A size-p window coordinate I is judged through its co-finite extension
I + {p+1, p+2, ...}: the negative members and the omitted positive labels
must each hold at most one deep element.  The surviving coordinates keep
their exact values, zeros included, so "known to vanish" and "never
projected" stay distinguishable.

Recovery of a dropped coordinate x_I uses a carrier: a superset of I whose
extra m*l indices all exceed max(I).  Writing the width-m degree-(l+1)
form on the carrier as x_I * D + Q with D the degree-l form on the extra
indices, the unique value forcing the carrier form to vanish is -Q/D.
Since I sits at the bottom of the carrier, the collected sign on x_I * D
is +1; the splitting is verified symbolically in the test suite.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Optional

from .forms import FormSpec, hpf_polynomial
from .indices import (
    DimensionMismatch,
    GoodParams,
    Window,
    index_set,
    is_good,
    young_diagram,
)
from .multivector import FormatError, Multivector, parse_fraction


class ReconstructionError(Exception):
    """A single-coordinate recovery that cannot proceed."""


class ZeroDenominator(ReconstructionError):
    """The carrier's denominator form vanishes on the known coordinates."""


class MissingCoordinates(ReconstructionError):
    """Prerequisite coordinates are absent from the assignment."""

    def __init__(self, coordinates):
        self.coordinates = tuple(coordinates)
        super().__init__(
            "prerequisite coordinates unknown: "
            + ", ".join(map(str, self.coordinates))
        )


def _coerce(value) -> Fraction:
    if isinstance(value, float):
        raise TypeError("float coefficients are not exact; pass Fraction or int")
    return Fraction(value)


def _depth(name: str, value: int) -> None:
    if not isinstance(value, int) or isinstance(value, bool) or value < 1:
        raise ValueError(f"{name} must be a positive integer, got {value!r}")


class CoordinateAssignment:
    """Partially known top-grade coordinates over a window.

    known maps size-p index sets to exact rationals; every other size-p
    subset counts as missing.  params fixes the goodness thresholds the
    assignment was produced under.
    """

    __slots__ = ("window", "grade", "_known", "params")

    def __init__(self, window: Window, grade: int, known, params: GoodParams):
        if grade != window.p:
            raise DimensionMismatch(
                f"assignment grade must equal the window grade {window.p}, got {grade}"
            )
        params = GoodParams(*params)
        for name, value in zip(("m", "l", "r", "s"), params):
            _depth(name, value)
        store = {}
        for key, value in known.items():
            iset = index_set(key, window=window)
            if len(iset) != grade:
                raise DimensionMismatch(
                    f"coordinate {iset} has size {len(iset)}, expected {grade}"
                )
            store[iset] = _coerce(value)
        object.__setattr__(self, "window", window)
        object.__setattr__(self, "grade", grade)
        object.__setattr__(self, "_known", store)
        object.__setattr__(self, "params", params)

    def __setattr__(self, name, value):
        raise AttributeError("CoordinateAssignment is immutable")

    @property
    def known(self):
        return MappingProxyType(self._known)

    def missing(self) -> tuple:
        labels = self.window.elements()
        return tuple(
            key
            for key in itertools.combinations(labels, self.grade)
            if key not in self._known
        )

    def __repr__(self):
        return (
            f"CoordinateAssignment({self.window}, known={len(self._known)},"
            f" missing={len(self.missing())})"
        )


def good_projection(v: Multivector, params: GoodParams) -> CoordinateAssignment:
    """Keep exactly the good size-p coordinates of v, zeros included.

    Inputs of grade other than the window grade have no good coordinates
    at all (the co-finite extension is unbalanced), so they project to the
    empty assignment.
    """
    window = v.window
    known = {}
    if v.grade == window.p:
        positives = tuple(range(1, window.p + 1))
        for key in itertools.combinations(window.elements(), window.p):
            negatives = [i for i in key if i < 0]
            absent = [j for j in positives if j not in key]
            if is_good(negatives, absent, params):
                known[key] = v.coeff(key)
    return CoordinateAssignment(window, window.p, known, params)


def _eval_on_known(poly, known, skip) -> Fraction:
    """Evaluate a form polynomial against a partial coordinate table.

    Monomials holding a known-zero factor contribute nothing even when a
    cofactor is unknown.  Unknown factors of the surviving monomials are
    collected and reported together.
    """
    total = Fraction(0)
    needed = set()
    for mono, coeff in poly.terms.items():
        if skip is not None and skip in mono:
            continue
        value = coeff
        unknown = False
        dead = False
        for factor in mono:
            have = known.get(factor)
            if have is None:
                unknown = True
            elif have == 0:
                dead = True
                break
            else:
                value = value * have
        if dead:
            continue
        if unknown:
            needed.update(f for f in mono if f not in known)
            continue
        total += value
    if needed:
        raise MissingCoordinates(sorted(needed))
    return total


def reconstruct_coordinate(
    m: int, l: int, assignment: CoordinateAssignment, target, carrier
) -> Fraction:
    """Value of x_target forced by the vanishing of the carrier form.

    The carrier must contain the target as its initial subinterval and
    exactly m*l further indices.  Raises ZeroDenominator when the degree-l
    form on those extra indices vanishes, MissingCoordinates when needed
    coordinates are absent.
    """
    _depth("m", m)
    _depth("l", l)
    window = assignment.window
    p = assignment.grade
    if p < m:
        raise DimensionMismatch(f"window grade {p} is below the form width {m}")
    tgt = index_set(target, window=window)
    if len(tgt) != p:
        raise DimensionMismatch(f"target has size {len(tgt)}, expected {p}")
    car = index_set(carrier, window=window)
    if len(car) != p + m * l:
        raise DimensionMismatch(
            f"carrier needs {p + m * l} indices, got {len(car)}"
        )
    if car[:p] != tgt:
        raise ValueError("target must be the initial subinterval of the carrier")
    head, tail = tgt[:m], tgt[m:]
    extra = car[p:]
    denominator = _eval_on_known(
        hpf_polynomial(FormSpec(m, l, extra, tail)), assignment.known, None
    )
    if denominator == 0:
        raise ZeroDenominator(
            f"denominator form on {extra} vanishes at the known coordinates"
        )
    numerator = _eval_on_known(
        hpf_polynomial(FormSpec(m, l + 1, head + extra, tail)),
        assignment.known,
        tgt,
    )
    return -numerator / denominator


@dataclass(frozen=True)
class ReconstructionResult:
    """Outcome of a full recovery pass; failure lives in `stuck`."""

    completed: Optional[Multivector]
    stuck: tuple
    attempts: int


def _order_key(window):
    def key(iset):
        diagram = young_diagram(iset, window)
        return (sum(diagram), diagram, iset)

    return key


def _shallow_first(extra):
    return tuple(sorted(-x for x in extra))


def reconstruct_all(
    m: int, l: int, projected: CoordinateAssignment, budget: Optional[int] = None
) -> ReconstructionResult:
    """Recover missing coordinates in diagram order until done or stuck.

    Carriers for each target are tried shallowest complement first; a
    carrier that fails with a zero denominator or missing prerequisites is
    skipped.  Passes repeat while progress happens, so coordinates whose
    prerequisites arrived late get another chance.  budget caps the total
    number of single-coordinate attempts.
    """
    _depth("m", m)
    _depth("l", l)
    if budget is not None and (not isinstance(budget, int) or budget < 0):
        raise ValueError(f"budget must be None or a nonnegative integer, got {budget!r}")
    window = projected.window
    p = projected.grade
    room = m * l
    known = dict(projected.known)
    pending = sorted(projected.missing(), key=_order_key(window))
    attempts = 0
    exhausted = False
    progress = True
    while pending and progress and not exhausted:
        progress = False
        for tgt in list(pending):
            larger = [x for x in window.elements() if x > tgt[-1]]
            if len(larger) < room:
                continue
            assignment = CoordinateAssignment(window, p, known, projected.params)
            found = None
            for extra in sorted(itertools.combinations(larger, room), key=_shallow_first):
                if budget is not None and attempts >= budget:
                    exhausted = True
                    break
                attempts += 1
                try:
                    found = reconstruct_coordinate(m, l, assignment, tgt, tgt + extra)
                except ReconstructionError:
                    continue
                break
            if found is not None:
                known[tgt] = found
                pending.remove(tgt)
                progress = True
            if exhausted:
                break
    if pending:
        return ReconstructionResult(None, tuple(sorted(pending)), attempts)
    values = {key: value for key, value in known.items() if value}
    return ReconstructionResult(Multivector(window, p, values), (), attempts)


def assignment_to_obj(assignment: CoordinateAssignment) -> dict:
    """Plain-data form: window, grade, thresholds, known terms, missing list."""
    params = assignment.params
    return {
        "window": [assignment.window.n, assignment.window.p],
        "grade": assignment.grade,
        "good_params": {"m": params.m, "l": params.l, "r": params.r, "s": params.s},
        "terms": [
            {"indices": list(key), "coeff": str(value)}
            for key, value in sorted(assignment.known.items())
        ],
        "missing": [list(key) for key in assignment.missing()],
    }


def _plain_int(value) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def assignment_from_obj(obj) -> CoordinateAssignment:
    """Strict inverse of assignment_to_obj; any defect raises FormatError."""
    if not isinstance(obj, dict):
        raise FormatError("assignment document must be an object")
    window_obj = obj.get("window")
    if (
        not isinstance(window_obj, list)
        or len(window_obj) != 2
        or not all(_plain_int(x) and x >= 0 for x in window_obj)
    ):
        raise FormatError(f"bad window {window_obj!r}")
    window = Window(window_obj[0], window_obj[1])
    grade = obj.get("grade")
    if not _plain_int(grade) or grade != window.p:
        raise FormatError(f"grade {grade!r} does not match window {window}")
    params_obj = obj.get("good_params")
    if not isinstance(params_obj, dict) or set(params_obj) != {"m", "l", "r", "s"}:
        raise FormatError(f"bad good_params {params_obj!r}")
    for name in ("m", "l", "r", "s"):
        if not _plain_int(params_obj[name]) or params_obj[name] < 1:
            raise FormatError(f"good_params.{name} must be a positive integer")
    params = GoodParams(
        params_obj["m"], params_obj["l"], params_obj["r"], params_obj["s"]
    )
    terms = obj.get("terms")
    if not isinstance(terms, list):
        raise FormatError("terms must be a list")
    known = {}
    for entry in terms:
        if not isinstance(entry, dict):
            raise FormatError("each term must be an object")
        indices = entry.get("indices")
        if not isinstance(indices, list) or not all(_plain_int(i) for i in indices):
            raise FormatError(f"bad indices {indices!r}")
        key = tuple(indices)
        if tuple(sorted(set(key))) != key:
            raise FormatError(f"indices must be strictly ascending, got {key}")
        if not window.contains_set(key):
            raise FormatError(f"indices {key} fall outside window {window}")
        if len(key) != grade:
            raise FormatError(f"coordinate {key} has size {len(key)}, expected {grade}")
        if key in known:
            raise FormatError(f"duplicate coordinate {key}")
        coeff = entry.get("coeff")
        if not isinstance(coeff, str):
            raise FormatError(f"coeff must be a string, got {coeff!r}")
        known[key] = parse_fraction(coeff)
    assignment = CoordinateAssignment(window, grade, known, params)
    declared = obj.get("missing")
    actual = [list(key) for key in assignment.missing()]
    if declared != actual:
        raise FormatError(f"missing list {declared!r} does not match coordinates")
    return assignment
