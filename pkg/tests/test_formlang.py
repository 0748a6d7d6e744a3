import json

import pytest
from hypothesis import given, settings, strategies as st

from thetajac import forms
from thetajac.formlang import (
    Atom,
    EtaPow,
    Evaluator,
    FormSyntaxError,
    Mul,
    Tensor,
    eval_form,
    parse_form,
    parse_lattice,
    print_form,
    print_lattice,
)
from thetajac.series import classify, series_equal

CORPUS = [
    "theta", "theta32", "eta", "E(4)", "E(6)", "thetaD(4)", "thetaD(8)", "thetaD3(3)", "thetaA(2)",
    "thetaA3(2)", "thetamA1(3)", "thetaD4_2", "thetaD4_3", "thetaD2_1", "sigmaA2", "quark(1,2)",
    "quark(2,3)", "thetaE6", "thetaE8", "kappa2A4", "deltain", "nabla3in", "thetaA(2)/eta^1",
    "theta*eta^9", "theta (x) theta*eta^6", "eta/eta^1", "latTheta(D(4),1) - latTheta(D(4),3)",
    "pull(thetaD(4),[4,2,0,0])", "sub(theta,[[2]])", "q2(eta)*eta^4",
    "-(theta32*theta)", "sigmaA2 (x) (thetaD(4) (x) thetaD3(4))", "latTheta(scale(A(2),3),0)",
    "latTheta(perp(D(4),[4,2,0,0]),0)", "pull(sigmaA2,[0,2,6])",
]


def test_corpus_size():
    assert len(CORPUS) >= 30


@pytest.mark.parametrize("src", CORPUS)
def test_round_trip(src):
    e = parse_form(src)
    printed = print_form(e)
    assert parse_form(printed) == e
    assert print_form(parse_form(printed)) == printed


def test_structure():
    assert parse_form("quark(1,2)") == Atom("quark", (1, 2))
    assert parse_form("thetaA(2)/eta^1") == EtaPow(Atom("thetaA", (2,)), -1)
    e = parse_form("theta (x) theta * eta^6")
    # the eta power binds to the adjacent atom
    assert e == Tensor(Atom("theta"), EtaPow(Atom("theta"), 6))
    assert parse_form("theta*theta") == Mul(Atom("theta"), Atom("theta"))


def test_spans():
    e = parse_form("  quark(1,2)")
    assert e.span == (2, 12)


@pytest.mark.parametrize(
    "src,offset,expected",
    [
        ("quark(1,", 8, ("INT",)),
        ("quark(1", 7, (",",)),
        ("thetaA(2)/et", 10, ("eta^",)),
        ("theta +", 7, ("(", "NAME")),
        ("(theta", 6, (")",)),
    ],
)
def test_errors_carry_offset_and_expected(src, offset, expected):
    with pytest.raises(FormSyntaxError) as info:
        parse_form(src)
    assert info.value.offset == offset
    assert set(expected) <= set(info.value.expected)


@pytest.mark.parametrize("src", ["foo", "thetaD(0)", "quark(1,2,3)", "E(5)", "latTheta(D(4),9)", "theta $"])
def test_rejections(src):
    with pytest.raises(FormSyntaxError):
        parse_form(src)


def test_sigma_a2_via_expression():
    assert series_equal(eval_form("thetaA(2)/eta^1", 96), forms.sigmaA2(96))[0]


def test_deltain_shape():
    phi = eval_form("theta*eta^9", 96)
    assert (phi.shape.k2, phi.t, phi.shape.D) == (10, forms.theta(24).t, 12)


def test_eta_over_eta_is_one():
    phi = eval_form("eta/eta^1", 48)
    assert phi.terms == {(0, ()): 1}


def test_thetad8_singular():
    phi = eval_form("thetaD(8)", 48)
    assert classify(phi).value == "singular" and phi.shape.D == 0


def test_deterministic_json():
    a = json.dumps(eval_form("quark(1,2)*eta^0", 72, Evaluator()).to_json(), sort_keys=True)
    b = json.dumps(eval_form("quark(1,2)*eta^0", 72, Evaluator()).to_json(), sort_keys=True)
    assert a == b


def test_negative_powers_get_extra_precision():
    phi = eval_form("(theta/eta^1)*eta^1", 48)
    assert phi.prec == 48
    assert series_equal(phi, forms.theta(48))[0]


def test_lattice_literals():
    for src in ["A(2)", "D(4)", "E(8)", "scale(A(2),3)", "sum(A(1),D(4))", "perp(D(4),[4,2,0,0])", "scale(A(1),1/2)"]:
        lat = parse_lattice(src)
        assert parse_lattice(print_lattice(lat)) == lat


names = st.sampled_from(["theta", "eta", "theta32", "sigmaA2", "thetaD(4)", "quark(1,2)"])


@st.composite
def exprs(draw, depth=2):
    if depth == 0:
        return draw(names)
    kind = draw(st.sampled_from(["leaf", "mul", "eta", "add", "neg"]))
    if kind == "leaf":
        return draw(names)
    a = draw(exprs(depth=depth - 1))
    if kind == "mul":
        return f"({a})*({draw(exprs(depth=depth - 1))})"
    if kind == "eta":
        return f"({a})*eta^{draw(st.integers(-3, 3))}"
    if kind == "add":
        return f"{a} - ({draw(exprs(depth=depth - 1))})"
    return f"-({a})"


@settings(max_examples=60, deadline=None)
@given(exprs())
def test_random_round_trip(src):
    e = parse_form(src)
    assert parse_form(print_form(e)) == e
