from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st
from sympy import Matrix

from thetajac import oracles
from thetajac.lattice import (
    build_root,
    direct_sum,
    discriminant_group,
    enumerate_coords,
    lattice_from_gram,
    orth_complement,
    rescale,
    short_vectors,
)

ROOTS = [("A", m) for m in range(1, 7)] + [("D", m) for m in range(1, 9)] + [("E", 6), ("E", 7), ("E", 8)]


@pytest.mark.parametrize("kind,m", ROOTS)
def test_root_lattice_invariants(kind, m):
    L = build_root(kind, m)
    assert L.is_even
    det = {"A": m + 1, "D": 4, "E": 9 - m}[kind]
    assert L.det == det
    assert discriminant_group(L).order == det


@pytest.mark.parametrize("kind,m,count", [("A", 2, 6), ("A", 4, 20), ("D", 4, 24), ("D", 6, 60), ("E", 6, 72), ("E", 7, 126), ("E", 8, 240)])
def test_root_counts(kind, m, count):
    L = build_root(kind, m)
    roots = [v for v, n in short_vectors(L, None, 2) if n == 2]
    assert len(roots) == count


def test_d_labels_and_norms():
    for m in (4, 8, 9):
        dg = discriminant_group(build_root("D", m))
        assert dg.names == ("mu0", "mu1", "mu2", "mu3")
        assert [dg.norm(i) for i in range(4)] == [0, Fraction(m, 4) % 2, 1, Fraction(m, 4) % 2]


def test_e6_discriminant_is_cyclic_in_order():
    dg = discriminant_group(build_root("E", 6))
    assert dg.norm(1) == dg.norm(2) == Fraction(4, 3)
    twice = tuple(2 * c for c in dg.reps[1])
    assert dg.index_of(twice) == 2


gram_strategy = st.integers(2, 3).flatmap(
    lambda n: st.lists(st.integers(-1, 1), min_size=n * n, max_size=n * n).map(
        lambda xs, n=n: [[xs[i * n + j] for j in range(n)] for i in range(n)]
    )
)


def _make_even(rows):
    n = len(rows)
    M = Matrix(rows)
    G = 2 * (M.T * M + Matrix.eye(n))  # positive definite with even diagonal
    return lattice_from_gram([[int(G[i, j]) for j in range(n)] for i in range(n)])


@settings(max_examples=20, deadline=None)
@given(gram_strategy)
def test_short_vectors_against_box_search(rows):
    L = _make_even(rows)
    bound = 2 * min(L.gram_L[i][i] for i in range(L.rank))
    fast = sorted(short_vectors(L, None, bound))
    slow = oracles.box_vectors(L, None, bound)
    assert fast == slow


@settings(max_examples=20, deadline=None)
@given(gram_strategy)
def test_discriminant_group_matches_smith(rows):
    L = _make_even(rows)
    dg = discriminant_group(L)
    assert dg.order == abs(L.det)
    for v in dg.reps:
        # dual vectors pair integrally with L
        for j in range(L.rank):
            x = tuple(r[j] for r in L.basis)
            assert L.inner(v, x).denominator == 1


def test_shifted_short_vectors_against_box_search():
    L = build_root("A", 3)
    for v in discriminant_group(L).reps:
        assert sorted(short_vectors(L, v, 4)) == oracles.box_vectors(L, v, 4)


def test_enumerate_coords_norms_exact():
    L = build_root("A", 3)
    for ks, nrm in enumerate_coords(L, None, 6):
        y = [Fraction(k) for k in ks]
        assert nrm == sum(y[i] * L.gram_L[i][j] * y[j] for i in range(3) for j in range(3))


def test_rescale_and_direct_sum():
    A2 = build_root("A", 2)
    L = direct_sum(A2, rescale(A2, 3))
    assert L.rank == 4 and L.det == 3 * 27
    assert discriminant_group(L).order == 81


def test_orth_complement_in_d4():
    D4 = build_root("D", 4)
    M, B = orth_complement(D4, (4, 2, 0, 0))
    assert M.rank == 3
    for j in range(3):
        col = tuple(r[j] for r in B)
        assert D4.inner(col, (4, 2, 0, 0)) == 0
        assert D4.contains(col)


def test_orth_complement_ambient_a2():
    A2 = build_root("A", 2)
    M, B = orth_complement(A2, (2, -2, 0), ambient=True)
    assert M.rank == 1
    assert tuple(r[0] for r in B) in {(1, 1), (-1, -1)}
    assert M.gram[0][0] == 6


def test_invalid_gram_rejected():
    with pytest.raises(ValueError):
        lattice_from_gram([[1, 2], [2, 1]])
    with pytest.raises(ValueError):
        lattice_from_gram([[2, 1], [0, 2]])
