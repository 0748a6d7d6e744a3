import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from thetajac import forms, oracles
from thetajac.arith import eisenstein_q
from thetajac.lattice import build_root, discriminant_group
from thetajac.series import (
    ConsistencyError,
    FourierSeries,
    ShapeError,
    check_elliptic,
    classify,
    constant,
    eta_quotient,
    fourier_to_qseries,
    gen_basic,
    heisenberg_character,
    lattice_theta,
    mul,
    ord_,
    pullback_perp,
    qseries_to_fourier,
    reconstruct,
    series_equal,
    substitute,
    support_congruence,
    tensor,
    theta_decompose,
)


def test_theta_leading_terms():
    th = gen_basic("theta", 100)
    assert th.shape.D == 3 and th.t == Fraction(1, 2) and th.shape.k2 == 1
    assert th.coefficient(3, (1,)) == 1 and th.coefficient(3, (-1,)) == -1
    assert th.coefficient(27, (3,)) == -1


@pytest.mark.parametrize("N", [24, 97, 300])
def test_generators_match_products(N):
    th, th32 = gen_basic("theta", N), gen_basic("theta32", N)
    assert {(n, (w[0],)): c for (n, w), c in th.terms.items()} == oracles.triple_product(N)
    assert {(n, (w[0],)): c for (n, w), c in th32.terms.items()} == oracles.quintuple_product(N)


def test_theta_series_of_e8_is_e4():
    E8 = forms.thetaE8(96)
    q = {}
    for (n, _), c in E8.terms.items():
        q[n] = q.get(n, 0) + c
    E4 = eisenstein_q(4, 96)
    assert q == dict(E4.terms)


def test_lattice_theta_counts_match_box_search():
    L = build_root("A", 3)
    for i, v in enumerate(discriminant_group(L).reps):
        th = lattice_theta(L, i, 48)
        box = oracles.box_vectors(L, v, 4)
        assert sum(th.terms.values()) == len(box)


def test_mul_tensor_and_shapes():
    N = 96
    th = forms.theta(N)
    t2 = tensor(th, th)
    assert t2.rank == 2 and t2.shape.k2 == 2 and t2.shape.D == 6
    assert t2.coefficient(6, (1, -1)) == -1
    e = forms.eta(N)
    p = mul(th, e)
    assert p.shape.D == 4 and p.shape.k2 == 2
    assert series_equal(p, eta_quotient(th, 1))[0]


def test_eta_quotient_identity():
    e = forms.eta(48)
    one = eta_quotient(e, -1)
    assert one.terms == {(0, ()): 1} and one.shape.k2 == 0 and one.shape.D == 0


def test_tensor_index_mismatch_rejected():
    with pytest.raises(ShapeError):
        tensor(forms.theta(24), forms.thetaD(4, 24))


def test_substitute_rejects_bad_frames():
    th = forms.theta(48)
    with pytest.raises(ShapeError):
        substitute(th, [[2]], build_root("A", 1), 1)


def test_json_round_trip_is_byte_stable():
    phi = forms.sigmaA2(48)
    a = json.dumps(phi.to_json(), sort_keys=True)
    back = FourierSeries.from_json(json.loads(a))
    assert back == phi
    assert json.dumps(back.to_json(), sort_keys=True) == a


def test_ord_and_classify():
    assert ord_(forms.thetaA(2, 96)).value == Fraction(1, 12)
    assert classify(forms.thetaD(4, 48)).value == "singular"
    assert classify(forms.thetaA(3, 48)).value == "holomorphic"
    assert classify(eta_quotient(forms.theta(48), -3)).value == "non_holomorphic"
    zero = forms.theta(24) - forms.theta(24)
    assert classify(zero).value == "cusp"
    with pytest.raises(ValueError):
        ord_(zero)


def test_support_congruence():
    assert support_congruence(forms.thetaA(3, 96))
    assert not support_congruence(forms.theta(48).with_shape(D=5))


@pytest.mark.parametrize("name", ["theta", "theta32", "sigmaA2", "thetaE6"])
def test_elliptic_invariance(name):
    phi = forms.build(name, (), 96)
    L = phi.lattice
    for j in range(L.rank):
        x = tuple(r[j] for r in L.basis)
        assert check_elliptic(phi, x).ok


def test_elliptic_check_detects_damage():
    phi = forms.thetaD(4, 96)
    key = next(k for k in sorted(phi.terms) if k[0] == 12)
    terms = dict(phi.terms)
    terms[key] += 1
    broken = FourierSeries(phi.shape, phi.prec, phi.den, terms)
    x = tuple(r[0] for r in phi.lattice.basis)
    assert not check_elliptic(broken, x).ok or not check_elliptic(broken, tuple(-c for c in x)).ok


def test_heisenberg_character_values():
    A1 = build_root("A", 1)
    assert heisenberg_character(A1, Fraction(1, 2), (1,), (0,), 0) == 1
    D4 = build_root("D", 4)
    x = tuple(r[0] for r in D4.basis)
    assert heisenberg_character(D4, 1, x, (0,) * 4, 0) == 0


def test_theta_decompose_round_trip():
    phi = forms.thetaD(8, 48)
    dec = theta_decompose(phi)
    assert dec.vector() == [0, 1, 0, -1]
    assert series_equal(reconstruct(phi.lattice, dec, 48, phi.shape), phi)[0]


def test_theta_decompose_rejects_inconsistent():
    phi = forms.thetaD(4, 48)
    terms = dict(phi.terms)
    key = max(terms)
    terms[key] = terms[key] + 5
    with pytest.raises(ConsistencyError):
        theta_decompose(FourierSeries(phi.shape, phi.prec, phi.den, terms))


def test_pullback_perp_d4():
    phi = pullback_perp(forms.thetaD(4, 120), (4, 2, 0, 0))
    assert phi.rank == 3
    assert ord_(phi).value == Fraction(1, 20)


@settings(max_examples=15, deadline=None)
@given(st.integers(1, 5), st.integers(-5, 5).filter(bool))
def test_substitution_composes(a, b):
    th = forms.theta(72)
    two = tensor(th, th)
    direct = substitute(two, [[a], [b]])
    if not direct.terms:
        return
    via = substitute(substitute(two, [[a, 0], [0, b]]), [[1], [1]])
    assert series_equal(direct, via)[0]


def test_qseries_round_trip():
    q = eisenstein_q(6, 72)
    assert fourier_to_qseries(qseries_to_fourier(q, k2=12)) == q


def test_constant():
    c = constant(3, 24)
    assert c.terms == {(0, ()): 3}
