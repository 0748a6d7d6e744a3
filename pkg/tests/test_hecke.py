from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from thetajac import forms, oracles
from thetajac.arith import PrecisionError
from thetajac.hecke import (
    conductor,
    hecke_minus,
    lift_coefficient,
    lift_table,
    phi2_closed_form,
    sigma_sign,
)
from thetajac.series import ShapeError, series_equal


def test_conductor():
    assert conductor(12) == (12, 2)
    assert conductor(0) == (24, 1)
    assert conductor(8) == (8, 3)
    with pytest.raises(ShapeError):
        conductor(5)


def test_hecke_identity_at_m1():
    E8 = forms.thetaE8(48)
    assert series_equal(hecke_minus(E8, 1), E8)[0]


@pytest.mark.parametrize("m", [3, 5])
def test_hecke_matches_triple_sum_on_delta_input(m):
    phi = forms.deltain(24 * 10)
    mine = hecke_minus(phi, m)
    ref = oracles.hecke_triple_sum(phi, m, mine.prec)
    f = phi.den // mine.den
    got = {(n, tuple(x * f for x in w)): Fraction(c) for (n, w), c in mine.terms.items()}
    assert got == ref


def test_hecke_shape():
    phi = forms.deltain(240)
    out = hecke_minus(phi, 3)
    assert out.t == 3 * phi.t and out.shape.D == 36 % 24 and out.prec == 80


def test_hecke_rejects_bad_m():
    with pytest.raises(ShapeError):
        hecke_minus(forms.deltain(96), 2)


def test_lift_spot_values():
    phi = forms.phi2in(972)
    assert lift_coefficient(phi, 1, (1, 1, 1, 1), 1, 1) == 1
    assert lift_coefficient(phi, 3, (3, 3, 3, 3), 3, 1) == 4
    assert lift_coefficient(phi, 1, (1, 1, 1, -1), 1, 1) == -1


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([1, 3, 5, 7]), st.sampled_from([1, 3, 5, 7]), st.data())
def test_lift_closed_form_random(n, m, data):
    phi = forms.phi2in(972)
    R = 4 * n * m
    sols = [
        (a, b, c, d)
        for a in range(-11, 12, 2)
        for b in range(-11, 12, 2)
        for c in range(-11, 12, 2)
        for d in range(-11, 12, 2)
        if a * a + b * b + c * c + d * d == R
    ]
    if not sols:
        return
    l2 = data.draw(st.sampled_from(sols))
    assert lift_coefficient(phi, n, l2, m, 1) == phi2_closed_form(n, tuple(Fraction(x, 2) for x in l2), m)


def test_lift_precision_error():
    phi = forms.phi2in(48)
    with pytest.raises(PrecisionError):
        lift_coefficient(phi, 3, (3, 3, 3, 3), 3, 1)


def test_lift_table_symmetry_and_rows():
    phi = forms.deltain(24 * 30)
    table = lift_table(phi, 1, 30)
    ok, bad = table.symmetric()
    assert ok, bad
    row1 = table.row(1)
    for (n, w), c in row1.items():
        assert c == phi.terms[(n * 12, w)]


def test_boundary_row_is_eisenstein():
    table = lift_table(forms.thetaE8(48), 1, 2)
    assert table.get(1, (0,) * 8, 0) == 240
    assert table.get(2, (0,) * 8, 0) == 2160


def test_sigma_sign_trivial_for_q1():
    assert all(sigma_sign(a, 1, 24) == 1 for a in range(1, 10))


def test_table_json_is_deterministic():
    phi = forms.deltain(24 * 8)
    a, b = lift_table(phi, 1, 8).to_json(), lift_table(phi, 1, 8).to_json()
    assert a == b and a["den"] == phi.den


@pytest.mark.parametrize("m", [1, 3, 5])
def test_hecke_translate_gives_fourier_jacobi_row(m):
    phi = forms.deltain(24 * 40)
    De = 12
    table = lift_table(phi, 1, 40)
    T = hecke_minus(phi, m)
    f = T.den // phi.den if T.den % phi.den == 0 else None
    row = table.row(m)
    assert row
    for (n, w), c in row.items():
        key = (n * De, tuple(x * f for x in w)) if f else None
        assert T.terms.get(key, 0) == c


def _in_e8(v):
    halves = [2 * x for x in v]
    if any(h.denominator != 1 for h in halves):
        return False
    ints = all(x.denominator == 1 for x in v)
    half = all(x.denominator == 2 for x in v)
    return (ints or half) and sum(v) % 2 == 0


def test_e8_lift_against_divisor_sum():
    E8 = forms.thetaE8(48)
    table = lift_table(E8, 1, 2)
    k = 4
    seen = 0
    for (n, w, m), c in table.entries.items():
        if m == 0:
            continue
        l = tuple(Fraction(x, E8.den) for x in w)
        want = 0
        for a in range(1, min(n, m) + 1):
            if n % a or m % a:
                continue
            la_ = tuple(x / a for x in l)
            if _in_e8(la_) and sum(x * x for x in la_) == Fraction(2 * n * m, a * a):
                want += a ** (k - 1)
        assert c == want
        seen += 1
    assert sum(1 for (n, _, m) in table.entries if (n, m) == (1, 1)) == 240
    assert seen > 240
