from fractions import Fraction

import pytest

from thetajac import forms
from thetajac.formlang import eval_form
from thetajac.series import classify, ord_, series_equal, support_congruence

N = 96


@pytest.mark.parametrize("exp", forms.expectations(), ids=lambda e: e.expr)
def test_registry_shape_table(exp):
    phi = eval_form(exp.expr, N)
    assert phi.shape.k2 == exp.k2
    assert phi.t == exp.t
    assert phi.shape.D == exp.D % 24
    assert phi.prec == N
    if exp.label is not None:
        assert classify(phi).value == exp.label
    assert support_congruence(phi)


def test_every_registry_entry_has_an_expectation_or_family():
    covered = {e.expr.split("(")[0] for e in forms.expectations()}
    assert set(forms.REGISTRY) - covered == set()


def test_d4_relation():
    assert series_equal(forms.thetaD(4, N), forms.thetaD4(2, N) + forms.thetaD4(3, N))[0]


def test_quark_symmetry_and_index():
    for a, b in [(1, 2), (1, 3), (2, 3)]:
        q = forms.quark(a, b, N)
        assert q.t == a * a + a * b + b * b
        assert series_equal(q, forms.quark(b, a, N))[0]


def test_sigma_a2_has_ord_zero():
    assert ord_(forms.sigmaA2(N)).value == 0


def test_argument_checks():
    with pytest.raises(forms.ArgumentError):
        forms.build("thetaD", (0,), 24)
    with pytest.raises(forms.ArgumentError):
        forms.build("quark", (1,), 24)
    with pytest.raises(KeyError):
        forms.build("nope", (), 24)


def test_exact_precision():
    for name in ("sigmaA2", "deltain", "nabla3in", "kappa2A4"):
        assert forms.build(name, (), 48).prec == 48


def test_thetaE6_is_difference_of_cosets():
    phi = forms.thetaE6(48)
    assert phi.shape.D == 16 and classify(phi).value == "singular"
    assert Fraction(phi.shape.k2, 2) == 3
