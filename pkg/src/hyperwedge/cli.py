"""Command line front end.

Commands operate on multivector files in the JSON format of the
multivector module and print exact rationals, equation bundles, or
membership reports.  Exit codes are a stable contract: 0 for success or
a member verdict, 1 for a non-member verdict or a failing demo, 2 for
parse and parameter errors, 3 for dimension mismatches.
"""
import argparse
import itertools
import json
import random
import sys
from fractions import Fraction
from pathlib import Path

from .forms import FormSpec, component_form_specs, hpf_eval, hpf_polynomial
from .indices import DimensionMismatch, Window, shuffle_sign
from .multivector import (
    Covector,
    FormatError,
    Multivector,
    RationalMatrix,
    contract,
    gl_apply,
    hodge_star,
    multivector_from_obj,
    multivector_to_obj,
    parse_fraction,
    transition,
    wedge,
    wedge_power,
)
from .polynomials import WedgePolynomial, poly_to_obj
from .varieties import (
    VarietySpec,
    check_membership,
    contraction_membership,
    in_grassmannian,
    in_hpf,
    in_hpf_component,
    pf_contraction_identically_zero,
    pf_contraction_witness,
)

DEFAULT_TRIALS = 64
DEFAULT_SEED = 1729


# ------------------------------------------------------------------ helpers

def _load_multivector(source: str) -> Multivector:
    text = sys.stdin.read() if source == "-" else Path(source).read_text()
    return multivector_from_obj(json.loads(text))


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        Path(args.out).write_text(text + "\n")
    else:
        print(text)


def _parse_labels(text: str) -> tuple:
    body = text.strip()
    if not body:
        return ()
    return tuple(int(tok.strip()) for tok in body.split(","))


def _parse_covector(window: Window, text: str) -> Covector:
    body = text.strip()
    if not body:
        raise FormatError("empty covector")
    entries: dict[int, Fraction] = {}
    for chunk in body.split(","):
        piece = chunk.strip()
        head, sep, rest = piece.partition("=")
        if not sep:
            raise FormatError(f"bad covector entry {piece!r}; want label=value")
        try:
            label = int(head.strip())
        except ValueError as exc:
            raise FormatError(f"bad covector label {head.strip()!r}") from exc
        value = parse_fraction(rest.strip())
        entries[label] = entries.get(label, Fraction(0)) + value
    return Covector(window, entries)


def _mv_text(v: Multivector) -> str:
    if v.is_zero():
        return "0"
    parts = []
    for key in v.support():
        body = ",".join(str(i) for i in key)
        parts.append(f"{v.coeff(key)}*e({body})")
    return " + ".join(parts)


def _poly_text(p: WedgePolynomial) -> str:
    parts = []
    for mono, coeff in p.sorted_terms():
        body = "".join("x(" + ",".join(map(str, f)) + ")" for f in mono) or "1"
        parts.append(f"{coeff}*{body}")
    return " + ".join(parts) or "0"


def _verdict(report) -> str:
    return "member" if report.member else "non-member"


def _trivial_region(m: int, l: int, window: Window):
    if window.p < m:
        return True, f"p = {window.p} < m = {m}"
    if window.n < m * (l - 1):
        return True, f"n = {window.n} < m*(l-1) = {m * (l - 1)}"
    return False, None


def _check_locus_params(name_m: str, m: int, name_l: str, l: int) -> None:
    if m < 2 or m % 2:
        raise ValueError(f"{name_m} must be a positive even integer, got {m}")
    if l < 1:
        raise ValueError(f"{name_l} must be a positive integer, got {l}")


def _pullback_dual(spec: FormSpec, window: Window) -> WedgePolynomial:
    """Star-side equation rewritten in the coordinates of this window.

    Each mirror coordinate x'_K equals sgn(I, I^c) x_I, where I^c is the
    negation of K and I its complement, so substituting factor by factor
    turns a form on the mirror window into one of full grade here.
    """
    source = hpf_polynomial(spec)
    universe = window.elements()
    terms: dict[tuple, Fraction] = {}
    for mono, coeff in source.terms.items():
        scale = coeff
        factors = []
        for key in mono:
            comp = tuple(sorted(-x for x in key))
            absent = set(comp)
            image = tuple(x for x in universe if x not in absent)
            scale = scale * shuffle_sign([image, comp])
            factors.append(image)
        keyed = tuple(sorted(factors))
        total = terms.get(keyed, Fraction(0)) + scale
        if total:
            terms[keyed] = total
        else:
            terms.pop(keyed, None)
    label = "dual(" + spec.label[4:]
    return WedgePolynomial(window.p, terms, window, label)


# ----------------------------------------------------------------- commands

def cmd_eval(args) -> int:
    m, l = args.form
    spec = FormSpec(m, l, _parse_labels(args.members), _parse_labels(args.tail))
    v = _load_multivector(args.source)
    _emit(args, str(hpf_eval(spec, v)))
    return 0


def cmd_ideal(args) -> int:
    m, l = args.form
    _check_locus_params("width m", m, "depth l", l)
    if args.dual:
        _check_locus_params("dual width r", args.dual[0], "dual depth s", args.dual[1])
    n, p = args.window
    window = Window(n, p)
    doc = {
        "window": [n, p],
        "form": [m, l],
        "dual": list(args.dual) if args.dual else None,
    }
    trivial, reason = _trivial_region(m, l, window)
    doc["trivial"] = trivial
    doc["reason"] = reason
    equations = []
    if not trivial:
        for spec in component_form_specs(m, l, window):
            equations.append(poly_to_obj(hpf_polynomial(spec).with_window(window)))
    if args.dual:
        r, s = args.dual
        mirror = Window(p, n)
        dual_trivial, dual_reason = _trivial_region(r, s, mirror)
        doc["dual_trivial"] = dual_trivial
        doc["dual_reason"] = dual_reason
        if not dual_trivial:
            for spec in component_form_specs(r, s, mirror):
                equations.append(poly_to_obj(_pullback_dual(spec, window)))
    doc["count"] = len(equations)
    doc["equations"] = equations
    _emit(args, json.dumps(doc, indent=2))
    return 0


def _member_flag_error(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 2


def cmd_member(args) -> int:
    has_pf = args.pf is not None
    has_form = args.form is not None
    has_dual = args.dual is not None
    if not (args.gr or has_pf or has_form or has_dual):
        return _member_flag_error("pick a locus: --gr, --pf L, --form M L, or --dual R S")
    if args.gr and (has_pf or has_form or has_dual or args.max_bound):
        return _member_flag_error("--gr does not combine with other locus flags")
    if has_pf and (has_form or has_dual or args.max_bound):
        return _member_flag_error("--pf does not combine with other locus flags")
    if args.max_bound and (not has_form or has_dual):
        return _member_flag_error("--max-bound needs --form M L and nothing else")

    v = _load_multivector(args.source)
    if args.max_bound:
        m, l = args.form
        spec_text = f"maxbound({m},{l})"
        report = contraction_membership(m, l, v, trials=args.trials, seed=args.seed)
    elif args.gr:
        spec = VarietySpec.grassmannian()
        spec_text = spec.describe()
        report = check_membership(spec, v)
    elif has_pf:
        spec = VarietySpec.pf(args.pf)
        spec_text = spec.describe()
        report = check_membership(spec, v)
    elif has_form and has_dual:
        spec = VarietySpec.two_sided(args.form[0], args.form[1], args.dual[0], args.dual[1])
        spec_text = spec.describe()
        report = check_membership(spec, v)
    elif has_form:
        m, l = args.form
        spec_text = VarietySpec.hpf(m, l).describe()
        if v.grade == m:
            report = in_hpf(m, l, v)
        elif v.grade == v.window.p:
            report = in_hpf_component(m, l, v)
        else:
            raise DimensionMismatch(
                f"grade {v.grade} is neither the locus width {m} "
                f"nor the window grade {v.window.p}"
            )
    else:
        spec = VarietySpec.dual_hpf(args.dual[0], args.dual[1])
        spec_text = spec.describe()
        report = check_membership(spec, v)

    obj = report.to_obj()
    doc = {
        "spec": spec_text,
        "verdict": _verdict(report),
        "certificate": obj["certificate"],
        "trials": obj["trials"],
        "seed": obj["seed"],
    }
    _emit(args, json.dumps(doc, indent=2))
    return 0 if report.member else 1


def cmd_wedge(args) -> int:
    left = _load_multivector(args.left)
    right = _load_multivector(args.right)
    _emit(args, json.dumps(multivector_to_obj(wedge(left, right)), indent=2))
    return 0


def cmd_star(args) -> int:
    v = _load_multivector(args.source)
    _emit(args, json.dumps(multivector_to_obj(hodge_star(v)), indent=2))
    return 0


def cmd_contract(args) -> int:
    v = _load_multivector(args.source)
    f = _parse_covector(v.window, args.covector)
    _emit(args, json.dumps(multivector_to_obj(contract(f, v)), indent=2))
    return 0


# -------------------------------------------------------------------- demos

def _sample(rng: random.Random, window: Window, grade: int) -> Multivector:
    pool = list(itertools.combinations(window.elements(), grade))
    while True:
        terms = {}
        for key in rng.sample(pool, min(3, len(pool))):
            c = rng.randint(-9, 9)
            if c:
                terms[key] = Fraction(c)
        if terms:
            return Multivector(window, grade, terms)


def _demo_gr24(check, say):
    w = Window(0, 4)
    display = WedgePolynomial(
        2,
        {
            ((1, 2), (3, 4)): Fraction(1),
            ((1, 3), (2, 4)): Fraction(-1),
            ((1, 4), (2, 3)): Fraction(1),
        },
        w,
    )
    pf = hpf_polynomial(FormSpec(2, 2, (1, 2, 3, 4))).with_window(w)
    check("pf(2,2) three-term display", _poly_text(display), _poly_text(pf))

    plane = Multivector.basis(w, (1, 2))
    split = plane + Multivector.basis(w, (3, 4))
    check("decomposable point", "member", _verdict(in_grassmannian(plane)))
    check("pf(2,2) at the split pair", "1", str(hpf_eval(FormSpec(2, 2, (1, 2, 3, 4)), split)))
    check("split pair", "non-member", _verdict(in_grassmannian(split)))

    shear = RationalMatrix.from_function(
        w,
        lambda r, c: Fraction(1) if r == c else (Fraction(1, 2) if (r, c) == (3, 1) else Fraction(0)),
    )
    check("sheared decomposable", "member", _verdict(in_grassmannian(gl_apply(shear, plane))))
    check("sheared split pair", "non-member", _verdict(in_grassmannian(gl_apply(shear, split))))


def _demo_lift42(check, say):
    say(f"seed: {DEFAULT_SEED}")
    rng = random.Random(DEFAULT_SEED)
    w = Window(4, 3)
    inside = 0
    returned = 0
    for _ in range(20):
        v = _sample(rng, w, 3)
        lifted = transition("j", v)
        if in_hpf(4, 2, lifted).member:
            inside += 1
        if transition("j_dagger", lifted) == v:
            returned += 1
    check("top-wedge lifts inside HPf(4,2)", "20/20", f"{inside}/20")
    check("contracting the lift returns the point", "20/20", f"{returned}/20")


def _demo_sec5_trivector(check, say):
    w = Window(4, 3)
    core = (
        Multivector.basis(w, (-4, -3))
        + Multivector.basis(w, (-2, -1))
        + Multivector.basis(w, (1, 2))
    )
    t = wedge(core, Multivector.basis(w, (3,)))
    u = Multivector.basis(w, (-4, -3, -2)) + Multivector.basis(w, (-1, 1, 2))

    check("t survives every contraction", "no", "yes" if pf_contraction_identically_zero(t) else "no")
    witness = pf_contraction_witness(t)
    check("refuting covector exists", "yes", "no" if witness is None else "yes")
    if witness is not None:
        say(f"witness: {witness!r}")
        blown = wedge(t, wedge_power(contract(witness, t), 2))
        check("blow-up at the witness", "6*e(-4,-3,-2,-1,1,2,3)", _mv_text(blown))
    check("u survives every contraction", "yes", "yes" if pf_contraction_identically_zero(u) else "no")

    mirror = Window(3, 4)
    wanted = (
        Multivector.basis(mirror, (-2, -1, 1, 2))
        + Multivector.basis(mirror, (-2, -1, 3, 4))
        + Multivector.basis(mirror, (1, 2, 3, 4))
    )
    check("star of t", _mv_text(wanted), _mv_text(hodge_star(t)))


def _demo_sec5_fourvector(check, say):
    w = Window(5, 4)
    omega = (
        Multivector.basis(w, (-5, -4, -3, -2))
        + Multivector.basis(w, (-1, 1, 2, 3))
        + Multivector.basis(w, (-5, -4, -3, -1))
        + Multivector.basis(w, (-2, 1, 2, 3))
        + Multivector.basis(w, (-5, -2, -1, 4))
    )
    check("omega wedge omega", "0", _mv_text(wedge(omega, omega)))
    report = in_hpf(4, 2, omega)
    check("omega against HPf(4,2)", "member", _verdict(report))
    check("defining forms checked", "9", str(report.certificate.get("forms_checked")))


def _demo_limit_element(check, say):
    previous = None
    for p in range(2, 7):
        w = Window(6, p)
        chain = Multivector(w, 0, {(): Fraction(1)})
        for k in range(1, p):
            chain = wedge(chain, Multivector.basis(w, (k,)) + Multivector.basis(w, (k + 1,)))
        chain = wedge(chain, Multivector.basis(w, (p,)))
        target = Multivector.basis(w, tuple(range(1, p + 1)))
        check(f"telescoping product at p={p}", _mv_text(target), _mv_text(chain))
        if previous is not None:
            dropped = transition("j_dagger", chain)
            check(f"truncation from p={p}", _mv_text(previous), _mv_text(dropped))
        previous = chain


_DEMOS = {
    "gr24": ("the rank-two locus in four coordinates", _demo_gr24),
    "lift42": ("top-wedge lifts land in the width-4 depth-2 locus", _demo_lift42),
    "sec5-trivector": ("a trivector refuted by contraction, one that passes, and a star value", _demo_sec5_trivector),
    "sec5-fourvector": ("a five-term four-vector with vanishing square", _demo_sec5_fourvector),
    "limit-element": ("the telescoping chain and its truncations", _demo_limit_element),
}


def cmd_demo(args) -> int:
    entry = _DEMOS.get(args.name)
    if entry is None:
        known = ", ".join(_DEMOS)
        print(f"error: unknown demo {args.name!r}; known: {known}", file=sys.stderr)
        return 2
    blurb, scenario = entry
    print(f"demo {args.name}: {blurb}")
    failures = 0

    def check(label, expected, computed):
        nonlocal failures
        ok = expected == computed
        if not ok:
            failures += 1
        print(f"  {label}: expected {expected} computed {computed} {'ok' if ok else 'FAIL'}")

    def say(text):
        print(f"  {text}")

    scenario(check, say)
    if failures:
        print(f"FAIL ({failures} checks)")
        return 1
    print("PASS")
    return 0


def cmd_list_demos(args) -> int:
    for name, (blurb, _) in _DEMOS.items():
        print(f"{name}: {blurb}")
    return 0


# ------------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperwedge",
        description="exact exterior algebra over two-sided index windows",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def form_flag(p, required=True):
        p.add_argument(
            "--form", nargs=2, type=int, metavar=("M", "L"), required=required,
            help="locus width and depth",
        )

    def out_flag(p):
        p.add_argument("--out", metavar="PATH", help="write the result to PATH instead of stdout")

    ev = sub.add_parser("eval", help="evaluate one form on a multivector file")
    form_flag(ev)
    ev.add_argument("--set", dest="members", required=True, metavar="LABELS",
                    help="comma separated member labels; spell --set=-2,-1,... "
                         "when the first one is negative")
    ev.add_argument("--tail", default="", metavar="LABELS",
                    help="comma separated tail labels")
    out_flag(ev)
    ev.add_argument("source", help="multivector file, or - for stdin")
    ev.set_defaults(handler=cmd_eval)

    ideal = sub.add_parser("ideal", help="emit the defining equations of one component")
    form_flag(ideal)
    ideal.add_argument("--window", nargs=2, type=int, metavar=("N", "P"), required=True,
                       help="negative and positive window sizes")
    ideal.add_argument("--dual", nargs=2, type=int, metavar=("R", "S"),
                       help="also pull back the mirror-side equations")
    out_flag(ideal)
    ideal.set_defaults(handler=cmd_ideal)

    mem = sub.add_parser("member", help="test a point against one locus")
    mem.add_argument("--gr", action="store_true", help="decomposable locus")
    mem.add_argument("--pf", type=int, metavar="L", help="two-forms with vanishing l-th power")
    form_flag(mem, required=False)
    mem.add_argument("--dual", nargs=2, type=int, metavar=("R", "S"),
                     help="mirror-side locus; with --form, both sides")
    mem.add_argument("--max-bound", dest="max_bound", action="store_true",
                     help="randomized contraction test against the maximal locus")
    mem.add_argument("--trials", type=int, default=DEFAULT_TRIALS, metavar="N")
    mem.add_argument("--seed", type=int, default=DEFAULT_SEED, metavar="S")
    out_flag(mem)
    mem.add_argument("source", help="multivector file, or - for stdin")
    mem.set_defaults(handler=cmd_member)

    we = sub.add_parser("wedge", help="wedge two multivector files")
    out_flag(we)
    we.add_argument("left")
    we.add_argument("right")
    we.set_defaults(handler=cmd_wedge)

    st = sub.add_parser("star", help="duality into the mirrored window")
    out_flag(st)
    st.add_argument("source")
    st.set_defaults(handler=cmd_star)

    co = sub.add_parser("contract", help="interior product by a covector")
    co.add_argument("--covector", required=True, metavar="ENTRIES",
                    help="comma separated label=value entries, values as p/q; "
                         "spell --covector=-4=1,... when the first label is negative")
    out_flag(co)
    co.add_argument("source")
    co.set_defaults(handler=cmd_contract)

    de = sub.add_parser("demo", help="run one scripted scenario")
    de.add_argument("name")
    de.set_defaults(handler=cmd_demo)

    ld = sub.add_parser("list-demos", help="list the demo scenarios")
    ld.set_defaults(handler=cmd_list_demos)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except DimensionMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (FormatError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
