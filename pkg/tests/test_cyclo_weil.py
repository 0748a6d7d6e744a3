from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from thetajac.cyclo import field, squarefree_part
from thetajac.forms import thetaE8
from thetajac.lattice import Lattice, build_root
from thetajac.series import relabel, lattice_theta, series_equal, theta_decompose
from thetajac.weil import (
    compare_with_catalogue,
    eigenvector_to_series,
    is_unitary,
    joint_eigenvectors,
    weil_matrices,
)


@pytest.mark.parametrize("n", [1, 2, 3, 5, 6, 12, 15, 20, 30])
def test_gauss_sum_square_roots(n):
    F = field(120)
    s = F.sqrt(n)
    assert (s * s).rational() == n


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 23), st.integers(0, 23), st.integers(-3, 3))
def test_cyclotomic_arithmetic(i, j, c):
    F = field(24)
    a = F.zeta(i) * F(c) + F.zeta(j)
    assert F.zeta(i) * F.zeta(j) == F.zeta(i + j)
    assert F.zeta(i).conj() == F.zeta(-i)
    if not a.is_zero():
        assert (a * a.inverse()).rational() == 1
        assert ((a / a) - F(1)).is_zero()


def test_root_exponent_and_field_errors():
    F = field(8)
    assert F.root(3, 8).root_exponent() == 3
    with pytest.raises(ValueError):
        F.root(1, 3)
    assert squarefree_part(72) == 2


@pytest.mark.parametrize("name", ["D4", "D8", "D9", "E6"])
def test_catalogue_entries(name):
    ok, why = compare_with_catalogue(name)
    assert ok, why


@pytest.mark.parametrize("m", [1, 4, 8, 9, 12, 16])
def test_unitary_symmetric_and_mod8_periodic(m):
    W = weil_matrices(build_root("D", m))
    US = W.US_matrix()
    assert is_unitary(US, W.F) and is_unitary(W.UT_matrix(), W.F)
    assert all(US[i][j] == US[j][i] for i in range(4) for j in range(4))
    W8 = weil_matrices(build_root("D", m + 8))
    assert W.UT == W8.UT and W.S_exponents == W8.S_exponents and W.rank % 8 == W8.rank % 8


@pytest.mark.parametrize("kind,m,lt,ls,dim", [("D", 8, 0, 0, 2), ("D", 9, 1, 5, 1), ("D", 1, 1, 5, 1), ("E", 6, 16, 0, 1)])
def test_joint_eigenspaces(kind, m, lt, ls, dim):
    spaces = joint_eigenvectors(weil_matrices(build_root(kind, m)))
    assert [(s.lambda_T, s.lambda_S, s.dim) for s in spaces] == [(lt, ls, dim)]


def test_d4_joint_space_contains_all_three_differences():
    W = weil_matrices(build_root("D", 4))
    (space,) = joint_eigenvectors(W)
    basis = space.rational_basis()
    assert basis is not None and space.dim == 2
    import sympy

    B = sympy.Matrix(basis)
    for v in ([0, 1, 0, -1], [0, 1, -1, 0], [0, 0, 1, -1]):
        assert sympy.Matrix.vstack(B, sympy.Matrix([v])).rank() == 2


def test_eigenvalue_pattern_matches_eta_character():
    # lambda_T = zeta_24^D for the matching theta-product
    for kind, m, D in [("D", 4, 12), ("D", 8, 24), ("E", 6, 16)]:
        (space,) = joint_eigenvectors(weil_matrices(build_root(kind, m)))
        assert Fraction(space.lambda_T, space.M) == Fraction(D % 24, 24)


def test_eigenvector_series_d8_is_e8():
    D8 = build_root("D", 8)
    lhs = eigenvector_to_series(D8, (1, 1, 0, 0), 48)
    h = Fraction(1, 2)
    cols = [tuple(r[j] for r in D8.basis) for j in range(8)]
    cols[0] = (h,) * 8  # D8+ = D8 + (1/2, ..., 1/2)
    plus = Lattice(D8.gram, tuple(tuple(c[i] for c in cols) for i in range(8)))
    rhs = relabel(lattice_theta(plus, 0, 48), D8, 1)
    assert series_equal(lhs, rhs)[0]
    # and as a q-series it is the theta series of E8
    assert sorted(
        {n: sum(c for (k, _), c in lhs.terms.items() if k == n) for n, _ in lhs.terms}.items()
    ) == sorted({n: sum(c for (k, _), c in thetaE8(48).terms.items() if k == n) for n, _ in thetaE8(48).terms}.items())


def test_eigenvector_series_zero_and_decompose():
    D4 = build_root("D", 4)
    assert not eigenvector_to_series(D4, (0, 0, 0, 0), 24).terms
    phi = eigenvector_to_series(D4, (0, 1, 0, -1), 48)
    assert theta_decompose(phi).vector() == [0, 1, 0, -1]


def test_odd_lattice_rejected():
    with pytest.raises(ValueError):
        weil_matrices(Lattice(((Fraction(1),),), ((Fraction(1),),)))
