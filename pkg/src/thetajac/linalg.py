"""Tiny exact matrix helpers on tuples of Fractions (row-major)."""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_decomp

Mat = tuple[tuple[Fraction, ...], ...]


def mat(rows: Sequence[Sequence]) -> Mat:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def identity(n: int) -> Mat:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def zeros(r: int, c: int) -> Mat:
    return tuple(tuple(Fraction(0) for _ in range(c)) for _ in range(r))


def shape(A: Mat) -> tuple[int, int]:
    return len(A), (len(A[0]) if A else 0)


def transpose(A: Mat) -> Mat:
    return tuple(zip(*A)) if A else ()


def matmul(A: Mat, B: Mat) -> Mat:
    Bt = transpose(B)
    return tuple(tuple(sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in Bt) for row in A)


def matvec(A: Mat, v: Sequence) -> tuple[Fraction, ...]:
    return tuple(sum((a * Fraction(x) for a, x in zip(row, v)), Fraction(0)) for row in A)


def scale(A: Mat, c) -> Mat:
    c = Fraction(c)
    return tuple(tuple(c * x for x in row) for row in A)


def block_diag(A: Mat, B: Mat) -> Mat:
    ra, ca = shape(A)
    rb, cb = shape(B)
    top = tuple(tuple(row) + (Fraction(0),) * cb for row in A)
    bottom = tuple((Fraction(0),) * ca + tuple(row) for row in B)
    return top + bottom


def inverse(A: Mat) -> Mat:
    n = len(A)
    M = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if M[r][col] != 0), None)
        if pivot is None:
            raise ZeroDivisionError("singular matrix")
        M[col], M[pivot] = M[pivot], M[col]
        p = M[col][col]
        M[col] = [x / p for x in M[col]]
        for r in range(n):
            if r != col and M[r][col]:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return tuple(tuple(row[n:]) for row in M)


def det(A: Mat) -> Fraction:
    n = len(A)
    M = [list(row) for row in A]
    result = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if M[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            M[col], M[pivot] = M[pivot], M[col]
            result = -result
        p = M[col][col]
        result *= p
        for r in range(col + 1, n):
            if M[r][col]:
                f = M[r][col] / p
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return result


def is_integral(A) -> bool:
    return all(Fraction(x).denominator == 1 for row in A for x in row)


def common_denominator(values) -> int:
    d = 1
    for x in values:
        d = lcm(d, Fraction(x).denominator)
    return d


def to_sympy(A: Mat) -> Matrix:
    return Matrix([[int(x) for x in row] for row in A])


def from_sympy(M: Matrix) -> Mat:
    return tuple(tuple(Fraction(int(M[i, j])) for j in range(M.cols)) for i in range(M.rows))


def smith(A: Mat) -> tuple[list[int], Mat, Mat]:
    """Integer Smith form: returns (diagonal, U, V) with U*A*V = diag."""
    if not is_integral(A):
        raise ValueError("Smith form needs an integer matrix")
    S, U, V = smith_normal_decomp(to_sympy(A), domain=ZZ)
    diag = [int(S[i, i]) for i in range(min(S.rows, S.cols))]
    return diag, from_sympy(U), from_sympy(V)


def integer_kernel(row: Sequence[int]) -> Mat:
    """Columns form a basis of {y in Z^n : row . y = 0}."""
    n = len(row)
    if all(x == 0 for x in row):
        return identity(n)
    _, _, V = smith(mat([row]))
    # U*row*V = (g, 0, ..., 0): columns 1.. of V span the kernel
    return tuple(tuple(V[i][j] for j in range(1, n)) for i in range(n))


def column_basis(gens: Mat) -> Mat:
    """A basis (columns) of the Z-span of the columns of a rational matrix."""
    d = common_denominator(x for row in gens for x in row)
    A = scale(gens, d)
    diag, _, V = smith(A)
    AV = matmul(A, V)
    rank = sum(1 for x in diag if x)
    cols = [tuple(AV[i][j] / d for i in range(len(A))) for j in range(rank)]
    return transpose(tuple(cols)) if cols else tuple(() for _ in range(len(A)))
