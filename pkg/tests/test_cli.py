"""End-to-end checks of the command line front end.

Every test drives main(argv) directly and inspects exit codes, stdout,
and written files.  Expected values come from the library calls the
commands wrap, which have their own suites.
"""
import json
import random
from fractions import Fraction

import pytest

from hyperwedge.cli import main
from hyperwedge.forms import FormSpec, hpf_eval
from hyperwedge.indices import Window
from hyperwedge.multivector import (
    Multivector,
    contract,
    Covector,
    hodge_star,
    multivector_to_obj,
    wedge,
)
from hyperwedge.polynomials import poly_eval, poly_from_obj, poly_to_obj

from conftest import random_multivector


def basis(window, *indices, coeff=1):
    return Multivector.basis(window, indices, coeff)


def save(path, v):
    path.write_text(json.dumps(multivector_to_obj(v)))
    return str(path)


def split_pair(window=None):
    w = window or Window(0, 4)
    return basis(w, 1, 2) + basis(w, 3, 4)


def trivector_t():
    w = Window(4, 3)
    core = basis(w, -4, -3) + basis(w, -2, -1) + basis(w, 1, 2)
    return wedge(core, basis(w, 3)), w


def trivector_u():
    w = Window(4, 3)
    return basis(w, -4, -3, -2) + basis(w, -1, 1, 2), w


def four_vector_omega():
    w = Window(5, 4)
    return (
        basis(w, -5, -4, -3, -2)
        + basis(w, -1, 1, 2, 3)
        + basis(w, -5, -4, -3, -1)
        + basis(w, -2, 1, 2, 3)
        + basis(w, -5, -2, -1, 4)
    ), w


# ----------------------------------------------------------------- eval

def test_eval_prints_exact_rational(tmp_path, capsys):
    src = save(tmp_path / "v.json", split_pair())
    rc = main(["eval", "--form", "2", "2", "--set", "1,2,3,4", src])
    assert rc == 0
    assert capsys.readouterr().out.strip() == "1"


def test_eval_zero_vector(tmp_path, capsys):
    src = save(tmp_path / "z.json", Multivector.zero(Window(0, 4), 2))
    rc = main(["eval", "--form", "2", "2", "--set", "1,2,3,4", src])
    assert rc == 0
    assert capsys.readouterr().out.strip() == "0"


def test_eval_split_eight(tmp_path, capsys):
    w = Window(0, 8)
    v = basis(w, 1, 2, 3, 4) + basis(w, 5, 6, 7, 8)
    src = save(tmp_path / "v.json", v)
    rc = main(["eval", "--form", "4", "2", "--set", "1,2,3,4,5,6,7,8", src])
    assert rc == 0
    assert capsys.readouterr().out.strip() == "1"


def test_eval_relative_form_with_tail(tmp_path, capsys):
    # hpf(1,1) with member {1} and tail {2} is the coordinate x_{1,2}
    src = save(tmp_path / "v.json", basis(Window(0, 3), 1, 2, coeff=Fraction(5, 3)))
    rc = main(["eval", "--form", "1", "1", "--set", "1", "--tail", "2", src])
    assert rc == 0
    assert capsys.readouterr().out.strip() == "5/3"


def test_eval_negative_labels(tmp_path, capsys):
    # leading minus needs the --flag=value spelling
    w = Window(2, 2)
    src = save(tmp_path / "v.json", basis(w, -2, -1) + basis(w, 1, 2))
    rc = main(["eval", "--form", "2", "2", "--set=-2,-1,1,2", src])
    assert rc == 0
    out = capsys.readouterr().out.strip()
    assert Fraction(out) == hpf_eval(
        FormSpec(2, 2, (-2, -1, 1, 2)), basis(w, -2, -1) + basis(w, 1, 2)
    )


def test_eval_error_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["eval", "--form", "2", "2", "--set", "1,2,3,4", str(bad)]) == 2

    wrong_grade = save(tmp_path / "g3.json", basis(Window(0, 4), 1, 2, 3))
    assert main(["eval", "--form", "2", "2", "--set", "1,2,3,4", wrong_grade]) == 3

    ok = save(tmp_path / "v.json", split_pair())
    # member set size must be m*l
    assert main(["eval", "--form", "2", "2", "--set", "1,2", ok]) == 3
    # duplicate labels rejected at parse level
    assert main(["eval", "--form", "2", "2", "--set", "1,1,2,3", ok]) == 2
    # labels outside the window
    assert main(["eval", "--form", "2", "2", "--set", "1,2,3,9", ok]) == 3
    assert main(["eval", "--form", "2", "2", "--set", "1,2,3,4", str(tmp_path / "absent.json")]) == 2
    capsys.readouterr()


def test_eval_out_flag_writes_file(tmp_path, capsys):
    src = save(tmp_path / "v.json", split_pair())
    target = tmp_path / "value.txt"
    rc = main(["eval", "--form", "2", "2", "--set", "1,2,3,4", "--out", str(target), src])
    assert rc == 0
    assert capsys.readouterr().out == ""
    assert target.read_text().strip() == "1"


def test_eval_reads_stdin(tmp_path, capsys, monkeypatch):
    import io

    text = json.dumps(multivector_to_obj(split_pair()))
    monkeypatch.setattr("sys.stdin", io.StringIO(text))
    rc = main(["eval", "--form", "2", "2", "--set", "1,2,3,4", "-"])
    assert rc == 0
    assert capsys.readouterr().out.strip() == "1"


# ----------------------------------------------------------------- ideal

def run_ideal(capsys, *argv):
    rc = main(["ideal", *argv])
    out = capsys.readouterr().out
    return rc, json.loads(out)


def test_ideal_unique_equation_smallest_window(capsys):
    rc, doc = run_ideal(capsys, "--form", "2", "2", "--window", "2", "2")
    assert rc == 0
    assert doc["trivial"] is False
    assert doc["count"] == 1
    eq = doc["equations"][0]
    assert eq["label"] == "hpf(2,2)@-2,-1,1,2"
    assert eq["window"] == [2, 2]
    # bit-exact round trip through the polynomial text format
    assert poly_to_obj(poly_from_obj(eq)) == eq
    assert json.dumps(poly_to_obj(poly_from_obj(eq))) == json.dumps(eq)


def test_ideal_hypersurface_term_count(capsys):
    rc, doc = run_ideal(capsys, "--form", "4", "2", "--window", "4", "4")
    assert rc == 0
    assert doc["count"] == 1
    eq = doc["equations"][0]
    assert len(eq["terms"]) == 35
    assert poly_to_obj(poly_from_obj(eq)) == eq


def test_ideal_trivial_regions(capsys):
    rc, doc = run_ideal(capsys, "--form", "4", "2", "--window", "3", "4")
    assert rc == 0
    assert doc["trivial"] is True
    assert doc["count"] == 0
    assert doc["equations"] == []
    assert "n" in doc["reason"]

    rc, doc = run_ideal(capsys, "--form", "2", "2", "--window", "4", "1")
    assert rc == 0
    assert doc["trivial"] is True
    assert doc["count"] == 0
    assert "p" in doc["reason"]


def test_ideal_depth_three_boundary(capsys):
    # (m(l-1), m) = (4, 2) for the pair locus of depth 3
    rc, doc = run_ideal(capsys, "--form", "2", "3", "--window", "4", "2")
    assert rc == 0
    assert doc["count"] == 1
    assert doc["equations"][0]["label"].startswith("hpf(2,3)@")


def test_ideal_rejects_odd_width(capsys):
    rc = main(["ideal", "--form", "3", "2", "--window", "3", "3"])
    assert rc == 2
    capsys.readouterr()


def test_ideal_dual_appends_pulled_back_equations(capsys):
    rc, doc = run_ideal(
        capsys, "--form", "2", "2", "--window", "2", "2", "--dual", "2", "2"
    )
    assert rc == 0
    assert doc["dual"] == [2, 2]
    assert doc["count"] == 2
    primal, pulled = doc["equations"]
    assert primal["label"].startswith("hpf(2,2)@")
    assert pulled["label"].startswith("dual(2,2)@")
    # the pulled-back equation lives in primal coordinates
    assert pulled["window"] == [2, 2]
    assert pulled["grade"] == 2

    q = poly_from_obj(pulled)
    w = Window(2, 2)
    dual_spec = FormSpec(2, 2, (-2, -1, 1, 2))
    rng = random.Random(11)
    for _ in range(10):
        v = random_multivector(rng, w, 2)
        assert poly_eval(q, v) == hpf_eval(dual_spec, hodge_star(v))


def test_ideal_dual_trivial_side(capsys):
    rc, doc = run_ideal(
        capsys, "--form", "2", "2", "--window", "2", "2", "--dual", "4", "2"
    )
    assert rc == 0
    assert doc["dual_trivial"] is True
    assert "p" in doc["dual_reason"]
    assert doc["count"] == 1
    assert doc["equations"][0]["label"].startswith("hpf(2,2)@")


def test_ideal_out_file_matches_stdout(tmp_path, capsys):
    target = tmp_path / "ideal.json"
    rc = main(
        ["ideal", "--form", "2", "2", "--window", "2", "2", "--out", str(target)]
    )
    assert rc == 0
    assert capsys.readouterr().out == ""
    doc = json.loads(target.read_text())
    assert doc["count"] == 1
    eq = doc["equations"][0]
    assert poly_to_obj(poly_from_obj(eq)) == eq


# ----------------------------------------------------------------- member

def run_member(capsys, *argv):
    rc = main(["member", *argv])
    out = capsys.readouterr().out
    return rc, json.loads(out)


def test_member_pf_refutation(tmp_path, capsys):
    src = save(tmp_path / "v.json", split_pair())
    rc, doc = run_member(capsys, "--pf", "2", src)
    assert rc == 1
    assert doc["spec"] == "Pf(2)"
    assert doc["verdict"] == "non-member"
    cert = doc["certificate"]
    assert cert["label"] == "hpf(2,2)@1,2,3,4"
    assert Fraction(cert["value"]) == 1


def test_member_pf_acceptance(tmp_path, capsys):
    src = save(tmp_path / "v.json", split_pair())
    rc, doc = run_member(capsys, "--pf", "3", src)
    assert rc == 0
    assert doc["verdict"] == "member"


def test_member_grassmannian(tmp_path, capsys):
    good = save(tmp_path / "dec.json", basis(Window(0, 4), 1, 2))
    rc, doc = run_member(capsys, "--gr", good)
    assert rc == 0

    bad = save(tmp_path / "split.json", split_pair())
    rc, doc = run_member(capsys, "--gr", bad)
    assert rc == 1
    assert doc["certificate"]["label"].startswith("plucker@")


def test_member_form_grade_m_dispatch(tmp_path, capsys):
    omega, w = four_vector_omega()
    src = save(tmp_path / "omega.json", omega)
    rc, doc = run_member(capsys, "--form", "4", "2", src)
    assert rc == 0
    assert doc["spec"] == "HPf(4,2)"
    assert doc["certificate"]["kind"] == "zero_power"


def test_member_form_component_dispatch(tmp_path, capsys):
    # grade 2 equals the window grade, not the locus width, so the
    # component test runs and lands in a trivial region
    w = Window(2, 2)
    src = save(tmp_path / "v.json", basis(w, -2, -1) + basis(w, 1, 2))
    rc, doc = run_member(capsys, "--form", "4", "2", src)
    assert rc == 0
    assert doc["certificate"]["kind"] == "trivial_region"


def test_member_form_grade_mismatch(tmp_path, capsys):
    src = save(tmp_path / "v.json", basis(Window(0, 4), 1, 2, 3))
    rc = main(["member", "--form", "2", "2", src])
    assert rc == 3
    capsys.readouterr()


def test_member_two_sided(tmp_path, capsys):
    w = Window(2, 2)
    src = save(tmp_path / "v.json", basis(w, -2, -1) + basis(w, 1, 2))
    rc, doc = run_member(capsys, "--form", "4", "2", "--dual", "2", "2", src)
    assert rc == 1
    assert doc["spec"] == "HPf(4,2)&HPf*(2,2)"
    cert = doc["certificate"]
    assert cert["kind"] == "two_sided"
    assert cert["primal"]["kind"] == "trivial_region"
    assert Fraction(cert["dual"]["value"]) == 1


def test_member_dual_alone(tmp_path, capsys):
    w = Window(0, 4)
    src = save(tmp_path / "star.json", hodge_star(split_pair(w)))
    rc, doc = run_member(capsys, "--dual", "2", "2", src)
    assert rc == 1
    assert doc["spec"] == "HPf*(2,2)"

    zero = save(tmp_path / "zero.json", Multivector.zero(Window(4, 0), 2))
    rc, doc = run_member(capsys, "--dual", "2", "2", zero)
    assert rc == 0


def test_member_max_bound_refutes_t(tmp_path, capsys):
    t, _ = trivector_t()
    src = save(tmp_path / "t.json", t)
    rc, doc = run_member(
        capsys, "--max-bound", "--form", "2", "3", "--trials", "16", "--seed", "9", src
    )
    assert rc == 1
    assert doc["spec"] == "maxbound(2,3)"
    assert doc["certificate"]["kind"] == "violated_contraction"
    assert doc["seed"] == 9


def test_member_max_bound_passes_u(tmp_path, capsys):
    u, _ = trivector_u()
    src = save(tmp_path / "u.json", u)
    rc, doc = run_member(capsys, "--max-bound", "--form", "2", "3", src)
    assert rc == 0
    assert doc["certificate"]["kind"] == "trials_passed"
    assert doc["trials"] == 64
    assert doc["seed"] is not None


def test_member_flag_validation(tmp_path, capsys):
    src = save(tmp_path / "v.json", split_pair())
    assert main(["member", src]) == 2
    assert main(["member", "--gr", "--pf", "2", src]) == 2
    assert main(["member", "--max-bound", src]) == 2
    assert main(["member", "--gr", "--form", "2", "2", src]) == 2
    capsys.readouterr()


def test_member_rejects_odd_width(tmp_path, capsys):
    src = save(tmp_path / "v.json", split_pair())
    assert main(["member", "--form", "3", "2", src]) == 2
    capsys.readouterr()


# ------------------------------------------------- wedge, star, contract

def test_wedge_command(tmp_path, capsys):
    w = Window(0, 4)
    left = save(tmp_path / "a.json", basis(w, 1, 2))
    right = save(tmp_path / "b.json", basis(w, 3, 4))
    rc = main(["wedge", left, right])
    assert rc == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc == multivector_to_obj(wedge(basis(w, 1, 2), basis(w, 3, 4)))


def test_wedge_window_mismatch(tmp_path, capsys):
    left = save(tmp_path / "a.json", basis(Window(0, 4), 1, 2))
    right = save(tmp_path / "b.json", basis(Window(0, 5), 3, 4))
    assert main(["wedge", left, right]) == 3
    capsys.readouterr()


def test_star_command(tmp_path, capsys):
    t, w = trivector_t()
    src = save(tmp_path / "t.json", t)
    rc = main(["star", src])
    assert rc == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc == multivector_to_obj(hodge_star(t))
    mirror = Window(3, 4)
    expected = (
        basis(mirror, -2, -1, 1, 2)
        + basis(mirror, -2, -1, 3, 4)
        + basis(mirror, 1, 2, 3, 4)
    )
    assert doc == multivector_to_obj(expected)


def test_contract_command(tmp_path, capsys):
    t, w = trivector_t()
    src = save(tmp_path / "t.json", t)
    rc = main(["contract", "--covector", "3=1", src])
    assert rc == 0
    doc = json.loads(capsys.readouterr().out)
    core = basis(w, -4, -3) + basis(w, -2, -1) + basis(w, 1, 2)
    assert doc == multivector_to_obj(core)


def test_contract_fraction_weights(tmp_path, capsys):
    w = Window(4, 3)
    src = save(tmp_path / "v.json", basis(w, -4, -3))
    rc = main(["contract", "--covector=-4=1/2,-3=2", src])
    assert rc == 0
    doc = json.loads(capsys.readouterr().out)
    f = Covector(w, {-4: Fraction(1, 2), -3: Fraction(2)})
    assert doc == multivector_to_obj(contract(f, basis(w, -4, -3)))


def test_contract_error_codes(tmp_path, capsys):
    t, _ = trivector_t()
    src = save(tmp_path / "t.json", t)
    assert main(["contract", "--covector", "x=1", src]) == 2
    assert main(["contract", "--covector", "", src]) == 2
    assert main(["contract", "--covector", "9=1", src]) == 3
    scalar = save(tmp_path / "s.json", Multivector(Window(0, 2), 0, {(): Fraction(7)}))
    assert main(["contract", "--covector", "1=1", scalar]) == 3
    capsys.readouterr()


def test_star_out_flag(tmp_path, capsys):
    w = Window(0, 4)
    src = save(tmp_path / "v.json", basis(w, 1, 2))
    target = tmp_path / "starred.json"
    rc = main(["star", "--out", str(target), src])
    assert rc == 0
    assert capsys.readouterr().out == ""
    doc = json.loads(target.read_text())
    assert doc == multivector_to_obj(hodge_star(basis(w, 1, 2)))


# ----------------------------------------------------------------- demos

DEMO_NAMES = ("gr24", "lift42", "sec5-trivector", "sec5-fourvector", "limit-element")


def test_list_demos(capsys):
    rc = main(["list-demos"])
    assert rc == 0
    out = capsys.readouterr().out
    for name in DEMO_NAMES:
        assert name in out


@pytest.mark.parametrize("name", DEMO_NAMES)
def test_demo_scenarios_pass(name, capsys):
    rc = main(["demo", name])
    out = capsys.readouterr().out
    assert rc == 0, out
    assert "FAIL" not in out
    assert "expected" in out and "computed" in out
    assert out.rstrip().endswith("PASS")


def test_demo_prints_seed_when_randomized(capsys):
    rc = main(["demo", "lift42"])
    assert rc == 0
    assert "seed" in capsys.readouterr().out


def test_demo_unknown_name(capsys):
    assert main(["demo", "nope"]) == 2
    err = capsys.readouterr().err
    assert "nope" in err
