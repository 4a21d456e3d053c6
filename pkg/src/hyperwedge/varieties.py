"""Membership tests for wedge-power loci and their duals.

Every test here is exact over the rationals.  Reports carry a certificate:
a violated equation with its value, a nonvanishing power coordinate, or a
note that the window is too small for any equation to exist.  The two
randomized procedures (contraction trials, odd-partition sampling) draw
from a seeded generator, so equal inputs and seeds give equal output.
"""

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional

from .forms import FormSpec, component_form_specs, hpf_eval
from .indices import DimensionMismatch, Window
from .multivector import (
    Covector,
    Multivector,
    contract,
    hodge_star,
    wedge,
    wedge_power,
)
from .polynomials import poly_eval
from .forms import plucker_relation

_ENTRY_BOUND = 2**19

_KINDS = ("grassmannian", "pf", "hpf", "dual_hpf", "two_sided")


def _check_width(name: str, value: int) -> None:
    if not isinstance(value, int) or isinstance(value, bool) or value < 2 or value % 2:
        raise ValueError(f"{name} must be a positive even integer, got {value!r}")


def _check_depth(name: str, value: int) -> None:
    if not isinstance(value, int) or isinstance(value, bool) or value < 1:
        raise ValueError(f"{name} must be a positive integer, got {value!r}")


@dataclass(frozen=True)
class VarietySpec:
    """Tagged choice of locus; build through the classmethods."""

    kind: str
    m: Optional[int] = None
    l: Optional[int] = None
    r: Optional[int] = None
    s: Optional[int] = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown variety kind {self.kind!r}")
        if self.kind == "pf":
            _check_depth("l", self.l)
        if self.kind in ("hpf", "two_sided"):
            _check_width("m", self.m)
            _check_depth("l", self.l)
        if self.kind in ("dual_hpf", "two_sided"):
            _check_width("r", self.r)
            _check_depth("s", self.s)

    @classmethod
    def grassmannian(cls) -> "VarietySpec":
        return cls("grassmannian")

    @classmethod
    def pf(cls, l: int) -> "VarietySpec":
        return cls("pf", l=l)

    @classmethod
    def hpf(cls, m: int, l: int) -> "VarietySpec":
        return cls("hpf", m=m, l=l)

    @classmethod
    def dual_hpf(cls, r: int, s: int) -> "VarietySpec":
        return cls("dual_hpf", r=r, s=s)

    @classmethod
    def two_sided(cls, m: int, l: int, r: int, s: int) -> "VarietySpec":
        return cls("two_sided", m=m, l=l, r=r, s=s)

    def describe(self) -> str:
        if self.kind == "grassmannian":
            return "Gr"
        if self.kind == "pf":
            return f"Pf({self.l})"
        if self.kind == "hpf":
            return f"HPf({self.m},{self.l})"
        if self.kind == "dual_hpf":
            return f"HPf*({self.r},{self.s})"
        return f"HPf({self.m},{self.l})&HPf*({self.r},{self.s})"


@dataclass(frozen=True)
class MembershipReport:
    """Verdict plus the evidence it rests on."""

    member: bool
    certificate: dict
    trials: Optional[int] = None
    seed: Optional[int] = None

    def to_obj(self) -> dict:
        return {
            "member": self.member,
            "certificate": self.certificate,
            "trials": self.trials,
            "seed": self.seed,
        }


@dataclass(frozen=True)
class TypeSpec:
    """Partition of factor grades and a number of summands."""

    pi: tuple
    k: int

    def __post_init__(self):
        parts = tuple(self.pi)
        object.__setattr__(self, "pi", parts)
        if not parts:
            raise ValueError("partition needs at least one part")
        for part in parts:
            if not isinstance(part, int) or isinstance(part, bool) or part < 1:
                raise ValueError(f"parts must be positive integers, got {part!r}")
        if not isinstance(self.k, int) or isinstance(self.k, bool) or self.k < 1:
            raise ValueError(f"summand count must be positive, got {self.k!r}")

    @property
    def grade(self) -> int:
        return sum(self.pi)


def _power_certificate(power: Multivector, l: int, **extra) -> dict:
    key = power.support()[0]
    cert = {
        "kind": "nonzero_power",
        "power": l,
        "coordinate": list(key),
        "value": str(power.coeff(key)),
    }
    cert.update(extra)
    return cert


def in_pf(l: int, v: Multivector) -> MembershipReport:
    """Does the l-th wedge power of the two-form vanish?

    Runs through the width-2 locus test so a refutation names a violated
    pf form, not just the surviving power coordinate.
    """
    _check_depth("l", l)
    if v.grade != 2:
        raise DimensionMismatch(f"expected a two-form, got grade {v.grade}")
    return in_hpf(2, l, v)


def in_grassmannian(v: Multivector) -> MembershipReport:
    """Check every quadratic exchange relation on the coordinates of v.

    Grades 0 and 1 have no relations, and neither does the top grade, so
    those verdicts come back positive with a zero equation count.
    """
    count = 0
    if v.grade >= 1:
        labels = v.window.elements()
        for small in combinations(labels, v.grade - 1):
            for large in combinations(labels, v.grade + 1):
                relation = plucker_relation(small, large, v.window)
                value = poly_eval(relation, v)
                count += 1
                if value:
                    return MembershipReport(
                        False,
                        {
                            "kind": "violated_form",
                            "label": relation.label,
                            "value": str(value),
                        },
                    )
    return MembershipReport(True, {"kind": "all_forms_vanish", "count": count})


def in_hpf(m: int, l: int, v: Multivector) -> MembershipReport:
    """Power test and equation test for the width-m depth-l locus.

    Both routes run on every call and must agree; a mismatch would mean a
    defect in the form tables, so it raises instead of returning.
    """
    _check_depth("m", m)
    _check_depth("l", l)
    if v.grade != m:
        raise DimensionMismatch(f"locus lives in grade {m}, argument has {v.grade}")
    power = wedge_power(v, l)
    violated = None
    count = 0
    for chosen in combinations(v.window.elements(), m * l):
        spec = FormSpec(m, l, chosen)
        value = hpf_eval(spec, v)
        count += 1
        if value:
            violated = (spec.label, value)
            break
    if (violated is None) != power.is_zero():
        raise RuntimeError("wedge power and equations disagree; table defect")
    if violated is None:
        return MembershipReport(
            True, {"kind": "zero_power", "power": l, "forms_checked": count}
        )
    label, value = violated
    cert = {
        "kind": "violated_form",
        "label": label,
        "value": str(value),
        "power": l,
    }
    key = power.support()[0]
    cert["power_coordinate"] = list(key)
    cert["power_value"] = str(power.coeff(key))
    return MembershipReport(False, cert)


def in_hpf_component(m: int, l: int, v: Multivector) -> MembershipReport:
    """Evaluate all relative forms on a top-grade element of the window."""
    _check_depth("m", m)
    _check_depth("l", l)
    w = v.window
    if v.grade != w.p:
        raise DimensionMismatch(
            f"component test wants grade {w.p} in {w}, argument has {v.grade}"
        )
    if w.p < m:
        reason = f"p = {w.p} < m = {m}"
        return MembershipReport(True, {"kind": "trivial_region", "reason": reason})
    if w.n < m * (l - 1):
        reason = f"n = {w.n} < m*(l-1) = {m * (l - 1)}"
        return MembershipReport(True, {"kind": "trivial_region", "reason": reason})
    count = 0
    for spec in component_form_specs(m, l, w):
        value = hpf_eval(spec, v)
        count += 1
        if value:
            return MembershipReport(
                False,
                {"kind": "violated_form", "label": spec.label, "value": str(value)},
            )
    return MembershipReport(True, {"kind": "all_forms_vanish", "count": count})


def in_dual_hpf(r: int, s: int, v: Multivector) -> MembershipReport:
    """Complement-side test: star the element, then take the s-th power."""
    _check_depth("r", r)
    _check_depth("s", s)
    expected = v.window.size - r
    if v.grade != expected:
        raise DimensionMismatch(
            f"dual locus lives in grade {expected}, argument has {v.grade}"
        )
    power = wedge_power(hodge_star(v), s)
    if power.is_zero():
        return MembershipReport(True, {"kind": "zero_power", "power": s, "side": "dual"})
    return MembershipReport(False, _power_certificate(power, s, side="dual"))


def in_two_sided(m: int, l: int, r: int, s: int, v: Multivector) -> MembershipReport:
    """Component test on v and on its star image, both reported."""
    primal = in_hpf_component(m, l, v)
    dual = in_hpf_component(r, s, hodge_star(v))
    certificate = {
        "kind": "two_sided",
        "primal": primal.certificate,
        "dual": dual.certificate,
    }
    return MembershipReport(primal.member and dual.member, certificate)


def check_membership(spec: VarietySpec, v: Multivector) -> MembershipReport:
    if spec.kind == "grassmannian":
        return in_grassmannian(v)
    if spec.kind == "pf":
        return in_pf(spec.l, v)
    if spec.kind == "hpf":
        return in_hpf(spec.m, spec.l, v)
    if spec.kind == "dual_hpf":
        return in_dual_hpf(spec.r, spec.s, v)
    return in_two_sided(spec.m, spec.l, spec.r, spec.s, v)


def nilpotency_degree(v: Multivector) -> int:
    """Least l with the l-th power zero; 1 when v itself vanishes."""
    if v.grade == 0:
        if v.is_zero():
            return 1
        raise ValueError("nonzero scalars have no vanishing power")
    power = v
    degree = 1
    while not power.is_zero():
        degree += 1
        power = wedge(power, v)
    return degree


def _random_element(rng, window: Window, grade: int, terms=4, bound=9) -> Multivector:
    keys = list(combinations(window.elements(), grade))
    data = {}
    for key in rng.sample(keys, min(terms, len(keys))):
        c = rng.randint(-bound, bound)
        if c:
            data[key] = Fraction(c)
    return Multivector(window, grade, data)


def type_witness(ts: TypeSpec, window: Window, seed: int) -> Multivector:
    """Random sum of k products with factor grades given by the partition.

    Factors are arbitrary elements of their grade, not just products of
    vectors.  Each summand is redrawn until its product is nonzero.
    """
    if ts.grade > window.size:
        raise DimensionMismatch(
            f"total grade {ts.grade} exceeds window size {window.size}"
        )
    rng = random.Random(seed)
    total = Multivector.zero(window, ts.grade)
    for _ in range(ts.k):
        for _ in range(256):
            prod = Multivector(window, 0, {(): Fraction(1)})
            for part in ts.pi:
                prod = wedge(prod, _random_element(rng, window, part))
            if not prod.is_zero():
                break
        else:
            raise RuntimeError("could not draw a nonzero summand")
        total = total + prod
    return total


def odd_partition_check(
    ts: TypeSpec, samples: int, window: Window, seed: int
) -> bool:
    """Sample witnesses and confirm the (k+1)-st power of each vanishes.

    Needs an odd part in the partition; with all parts even the power can
    survive, so the call is refused rather than answered.
    """
    if not any(part % 2 for part in ts.pi):
        raise ValueError("partition has no odd part")
    rng = random.Random(seed)
    for _ in range(samples):
        witness = type_witness(ts, window, seed=rng.getrandbits(48))
        if not wedge_power(witness, ts.k + 1).is_zero():
            return False
    return True


def contraction_membership(
    m: int, l: int, v: Multivector, trials: int = 64, seed: int = 0
) -> MembershipReport:
    """Randomized necessary test through repeated contraction.

    Each trial contracts v down to grade m by dense random covectors with
    entries below 2**19 in absolute value, then checks the l-th power of
    the result.  Passing every trial is strong evidence, not proof; a
    failing trial is an exact refutation and is returned with the
    covectors that produced it.
    """
    _check_depth("m", m)
    _check_depth("l", l)
    _check_depth("trials", trials)
    if v.grade < m:
        raise DimensionMismatch(f"cannot contract grade {v.grade} down to {m}")
    w = v.window
    labels = w.elements()
    rng = random.Random(seed)
    for trial in range(trials):
        current = v
        drawn = []
        for _ in range(v.grade - m):
            f = Covector(
                w,
                {
                    label: Fraction(rng.randrange(-_ENTRY_BOUND, _ENTRY_BOUND))
                    for label in labels
                },
            )
            drawn.append(f)
            current = contract(f, current)
        power = wedge_power(current, l)
        if not power.is_zero():
            key = power.support()[0]
            certificate = {
                "kind": "violated_contraction",
                "trial": trial,
                "covectors": [
                    [[label, str(c)] for label, c in f.items()] for f in drawn
                ],
                "power": l,
                "coordinate": list(key),
                "value": str(power.coeff(key)),
            }
            return MembershipReport(False, certificate, trials=trials, seed=seed)
    certificate = {
        "kind": "trials_passed",
        "count": trials,
        "entry_bound": _ENTRY_BOUND,
    }
    return MembershipReport(True, certificate, trials=trials, seed=seed)


def pf_contraction_witness(v: Multivector) -> Optional[Covector]:
    """Covector f with v ^ (f . v)^2 nonzero, or None when no such f exists.

    The expression is quadratic in f, so vanishing on all basis covectors
    and all two-element sums forces vanishing everywhere.
    """
    if v.grade != 3:
        raise DimensionMismatch(f"expected a three-form, got grade {v.grade}")
    labels = v.window.elements()

    def survives(f: Covector) -> bool:
        return not wedge(v, wedge_power(contract(f, v), 2)).is_zero()

    singles = {i: Covector.dual_basis(v.window, i) for i in labels}
    for i in labels:
        if survives(singles[i]):
            return singles[i]
    for i, j in combinations(labels, 2):
        candidate = singles[i] + singles[j]
        if survives(candidate):
            return candidate
    return None


def pf_contraction_identically_zero(v: Multivector) -> bool:
    """True when every single contraction of the three-form has rank <= 2."""
    return pf_contraction_witness(v) is None
