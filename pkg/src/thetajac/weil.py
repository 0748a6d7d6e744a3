"""Weil representation of a discriminant form and its joint eigenvectors."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from .cyclo import Cyc, CycField, field, squarefree_part
from .lattice import Lattice, build_root, discriminant_group
from .series import FormShape, FourierSeries, add, lattice_theta


@dataclass(frozen=True)
class WeilPair:
    lattice: Lattice
    labels: tuple[str, ...]
    order: int
    M: int
    UT: tuple[int, ...]
    """U(T) diagonal as exponents j of zeta_M."""
    S_exponents: tuple[tuple[int, ...], ...]
    """U(S) = scalar * (zeta_M^S_exponents[i][j])."""
    rank: int

    @property
    def F(self) -> CycField:
        return field(self.M)

    @property
    def scalar(self) -> Cyc:
        """zeta_8^(-n0) |D|^(-1/2)."""
        F = self.F
        return F.root(-self.rank, 8) * F.sqrt(self.order) * F(Fraction(1, self.order))

    def UT_matrix(self) -> list[list[Cyc]]:
        F = self.F
        n = self.order
        return [[F.zeta(self.UT[i]) if i == j else F(0) for j in range(n)] for i in range(n)]

    def US_matrix(self) -> list[list[Cyc]]:
        F, s = self.F, self.scalar
        return [[s * F.zeta(e) for e in row] for row in self.S_exponents]

    def to_json(self) -> dict:
        return {
            "lattice": str(self.lattice),
            "labels": list(self.labels),
            "order": self.order,
            "M": self.M,
            "UT": [f"{j}/{self.M}" for j in self.UT],
            "US_scalar": f"zeta8^{-self.rank % 8} * |D|^(-1/2)",
            "US": [[f"{e}/{self.M}" for e in row] for row in self.S_exponents],
        }


def weil_matrices(L: Lattice) -> WeilPair:
    if not L.is_even:
        raise ValueError("Weil representation needs an even lattice")
    dg = discriminant_group(L)
    n = dg.order
    norms = [dg.norm(i) for i in range(n)]
    pairs = [[dg.pairing(i, j) for j in range(n)] for i in range(n)]
    M = lcm(8, 4 * squarefree_part(n))
    for x in norms:
        M = lcm(M, 2 * x.denominator)
    for row in pairs:
        for x in row:
            M = lcm(M, x.denominator)
    UT = tuple(int(x * M / 2) % M for x in norms)
    S = tuple(tuple(int(-x * M) % M for x in row) for row in pairs)
    return WeilPair(L, tuple(dg.names), n, M, UT, S, L.rank)


def _matmul(A, B, F):
    n, k, m = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = F(0)
            for t in range(k):
                if not A[i][t].is_zero() and not B[t][j].is_zero():
                    acc = acc + A[i][t] * B[t][j]
            row.append(acc)
        out.append(row)
    return out


def is_unitary(U: list[list[Cyc]], F: CycField) -> bool:
    n = len(U)
    H = [[U[j][i].conj() for j in range(n)] for i in range(n)]
    P = _matmul(U, H, F)
    return all(P[i][j] == (F(1) if i == j else F(0)) for i in range(n) for j in range(n))


def kernel(A: list[list[Cyc]], F: CycField) -> list[list[Cyc]]:
    """Basis of the right kernel in reduced echelon form (free coordinates set to 1)."""
    rows = [list(r) for r in A]
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if not rows[i][c].is_zero()), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [F(0)] * ncols
        v[fc] = F(1)
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][fc]
        basis.append(v)
    return basis


@dataclass(frozen=True)
class JointSpace:
    lambda_T: int
    lambda_S: int
    M: int
    basis: tuple[tuple[Cyc, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def rational_basis(self) -> list[list[Fraction]] | None:
        out = []
        for v in self.basis:
            q = [x.rational() for x in v]
            if any(x is None for x in q):
                return None
            out.append(q)
        return out


def joint_eigenvectors(W: WeilPair) -> list[JointSpace]:
    """All (lambda_T, lambda_S) with a common eigenvector, lambda_S ranging over M-th roots."""
    F = W.F
    US = W.US_matrix()
    n = W.order
    out = []
    for lt in sorted(set(W.UT)):
        idx = [i for i in range(n) if W.UT[i] == lt]
        for ls in range(W.M):
            lam = F.zeta(ls)
            A = [[US[i][j] - (lam if i == j else F(0)) for j in idx] for i in range(n)]
            ker = kernel(A, F)
            if not ker:
                continue
            full = []
            for v in ker:
                w = [F(0)] * n
                for pos, i in enumerate(idx):
                    w[i] = v[pos]
                full.append(tuple(w))
            out.append(JointSpace(lt, ls, W.M, tuple(full)))
    return out


def span_contains(space: JointSpace, v: Sequence, F: CycField) -> bool:
    """Whether a rational vector lies in the span of the space basis."""
    vec = [F(x) for x in v]
    A = [list(col) for col in zip(*space.basis, vec)]
    return len(kernel(A, F)) > 0 and any(not k[-1].is_zero() for k in kernel(A, F))


def eigenvector_to_series(L: Lattice, v: Sequence, N24: int) -> FourierSeries:
    """sum_mu v_mu theta_mu."""
    total = None
    for i, c in enumerate(v):
        c = Fraction(c)
        if not c:
            continue
        term = lattice_theta(L, i, N24).scale(c)
        total = term if total is None else add(total, term)
    if total is None:
        return FourierSeries(FormShape(L, Fraction(1), L.rank, 0), N24, 1, {})
    return total


# printed catalogue -----------------------------------------------------------------

_HADAMARD = ((1, 1, 1, 1), (1, 1, -1, -1), (1, -1, 1, -1), (1, -1, -1, 1))


def printed_catalogue(name: str) -> tuple[list[Cyc], list[list[Cyc]], int]:
    """U(T) diagonal and U(S) as displayed for D4, D8, D9 and E6, over Q(zeta_M)."""
    if name in ("D4", "D8"):
        M = 8
        F = field(M)
        T = [1, -1, -1, -1] if name == "D4" else [1, 1, -1, 1]
        s = Fraction(-1, 2) if name == "D4" else Fraction(1, 2)
        return [F(x) for x in T], [[F(s * x) for x in row] for row in _HADAMARD], M
    if name == "D9":
        M = 8
        F = field(M)
        i = F.root(1, 4)
        one = F(1)
        T = [one, F.root(1, 8), F(-1), F.root(1, 8)]
        rows = [[one, one, one, one], [one, -i, F(-1), i], [one, F(-1), one, F(-1)], [one, i, F(-1), -i]]
        s = F.root(-1, 8) * F(Fraction(1, 2))
        return T, [[s * x for x in row] for row in rows], M
    if name == "E6":
        M = 24
        F = field(M)
        rho = F.root(1, 3)
        rho2 = rho * rho
        one = F(1)
        T = [one, rho2, rho2]
        rows = [[one, one, one], [one, rho2, rho], [one, rho, rho2]]
        s = F.root(1, 4) / F.sqrt(3)
        return T, [[s * x for x in row] for row in rows], M
    raise KeyError(name)


CATALOGUE_LATTICES = {"D4": ("D", 4), "D8": ("D", 8), "D9": ("D", 9), "E6": ("E", 6)}


def compare_with_catalogue(name: str) -> tuple[bool, str]:
    W = weil_matrices(build_root(*CATALOGUE_LATTICES[name]))
    T, S, M0 = printed_catalogue(name)
    F = W.F
    if W.M % M0:
        return False, f"field Q(zeta_{W.M}) does not contain Q(zeta_{M0})"

    def lift(x: Cyc) -> Cyc:
        acc = F(0)
        for j, a in enumerate(x.c):
            if a:
                acc = acc + F.zeta(j * (W.M // M0)) * F(a)
        return acc

    UT, US = W.UT_matrix(), W.US_matrix()
    for i in range(W.order):
        if UT[i][i] != lift(T[i]):
            return False, f"U(T)[{i}] differs"
        for j in range(W.order):
            if US[i][j] != lift(S[i][j]):
                return False, f"U(S)[{i}][{j}] differs"
    return True, "match"
