"""Positive definite lattices embedded in rational Euclidean frames.

A lattice is a frame Gram matrix G (the bilinear form on coordinate space)
plus a square basis matrix whose columns are lattice vectors written in frame
coordinates.  Optionally it remembers an *ambient* embedding: ambient vectors
pair with frame vectors through ``v^T * Gamb * P * x``.  That is how ``A_m``
keeps the familiar coordinates of R^(m+1) while working in m frame variables.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd, lcm
from typing import Sequence

from . import linalg as la
from .linalg import Mat


def _rat_gcd(values) -> Fraction:
    num, den = 0, 1
    for x in values:
        x = Fraction(x)
        num = gcd(num, x.numerator)
        den = lcm(den, x.denominator)
    return Fraction(num, den)


def _fmt(x: Fraction) -> str:
    return str(x)


@dataclass(frozen=True)
class Lattice:
    gram: Mat
    basis: Mat
    name: str = field(default="", compare=False)
    ambient: tuple[Mat, Mat] | None = field(default=None, compare=False)
    labels: tuple[tuple[str, tuple[Fraction, ...]], ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        r = len(self.gram)
        if any(len(row) != r for row in self.gram):
            raise ValueError("frame Gram must be square")
        if len(self.basis) != r or any(len(row) != r for row in self.basis):
            raise ValueError("basis must be a square matrix in frame coordinates")
        if self.gram != la.transpose(self.gram):
            raise ValueError("frame Gram must be symmetric")
        for k in range(1, r + 1):
            if la.det(tuple(row[:k] for row in self.gram[:k])) <= 0:
                raise ValueError("frame Gram must be positive definite")
        if r and la.det(self.basis) == 0:
            raise ValueError("basis vectors are linearly dependent")

    # basic invariants -----------------------------------------------------
    @property
    def rank(self) -> int:
        return len(self.gram)

    @cached_property
    def gram_L(self) -> Mat:
        B = self.basis
        return la.matmul(la.matmul(la.transpose(B), self.gram), B)

    @cached_property
    def gram_inverse(self) -> Mat:
        return la.inverse(self.gram) if self.rank else ()

    @cached_property
    def basis_inverse(self) -> Mat:
        return la.inverse(self.basis) if self.rank else ()

    @cached_property
    def det(self) -> Fraction:
        return la.det(self.gram_L) if self.rank else Fraction(1)

    @property
    def is_integral(self) -> bool:
        return la.is_integral(self.gram_L)

    @property
    def is_even(self) -> bool:
        return self.is_integral and all(self.gram_L[i][i] % 2 == 0 for i in range(self.rank))

    @cached_property
    def scale(self) -> Fraction:
        return _rat_gcd(x for row in self.gram_L for x in row)

    @cached_property
    def norm(self) -> Fraction:
        return _rat_gcd([self.gram_L[i][i] for i in range(self.rank)] + [2 * self.scale])

    @cached_property
    def level(self) -> int:
        if not self.is_even:
            raise ValueError("level is defined for even lattices")
        if not self.rank:
            return 1
        inv = la.inverse(self.gram_L)
        q = 1
        for i, row in enumerate(inv):
            for j, x in enumerate(row):
                q = lcm(q, (x / 2 if i == j else x).denominator)
        return q

    def scale_and_norm(self) -> tuple[Fraction, Fraction]:
        return self.scale, self.norm

    def inner(self, x: Sequence, y: Sequence) -> Fraction:
        return sum(
            (Fraction(xi) * g * Fraction(yj) for xi, row in zip(x, self.gram) for g, yj in zip(row, y)),
            Fraction(0),
        )

    def contains(self, v: Sequence) -> bool:
        return all(c.denominator == 1 for c in la.matvec(self.basis_inverse, v))

    def lattice_coords(self, v: Sequence) -> tuple[Fraction, ...]:
        return la.matvec(self.basis_inverse, v)

    def same_lattice(self, other: "Lattice") -> bool:
        """Same frame and same set of vectors (bases may differ)."""
        if self.gram != other.gram:
            return False
        M = la.matmul(self.basis_inverse, other.basis)
        return la.is_integral(M) and abs(la.det(M)) == 1

    def is_sublattice_of(self, other: "Lattice") -> bool:
        return la.is_integral(la.matmul(other.basis_inverse, self.basis))

    def ambient_pairing_row(self, u: Sequence) -> tuple[Fraction, ...]:
        """Row r with (u, x)_ambient = r . x for frame vectors x."""
        if self.ambient is None:
            return la.matvec(la.transpose(self.gram), u)
        P, Gamb = self.ambient
        row = la.matvec(la.transpose(Gamb), u)
        return tuple(sum((row[i] * P[i][j] for i in range(len(P))), Fraction(0)) for j in range(self.rank))

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "gram": [[_fmt(x) for x in row] for row in self.gram],
            "basis": [[_fmt(x) for x in row] for row in self.basis],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Lattice":
        return cls(la.mat(data["gram"]), la.mat(data["basis"]), name=data.get("name", ""))

    def __str__(self) -> str:
        return self.name or f"Lattice(rank={self.rank})"


POINT = Lattice((), (), name="0")


# constructors -----------------------------------------------------------------

def _cartan_E(m: int) -> Mat:
    edges = {6: [(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)], 7: [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (2, 4)]}[m]
    C = [[2 if i == j else 0 for j in range(m)] for i in range(m)]
    for a, b in edges:
        C[a - 1][b - 1] = C[b - 1][a - 1] = -1
    return la.mat(C)


def _d_labels(m: int) -> tuple[tuple[str, tuple[Fraction, ...]], ...]:
    half = Fraction(1, 2)
    mu1 = tuple([half] * m)
    mu2 = tuple(Fraction(int(i == 0)) for i in range(m))
    mu3 = tuple([half] * (m - 1) + [-half])
    return (("mu0", tuple([Fraction(0)] * m)), ("mu1", mu1), ("mu2", mu2), ("mu3", mu3))


@lru_cache(maxsize=None)
def build_root(kind: str, m: int) -> Lattice:
    """Root lattices A_m, D_m (m >= 1) and E_6, E_7, E_8."""
    kind = kind.upper()
    if kind == "A" and m >= 1:
        gram = la.mat([[1 + (i == j) for j in range(m)] for i in range(m)])
        cols = [[Fraction(int(i == j) - int(i == j + 1)) for i in range(m)] for j in range(m)]
        P = la.mat([[int(i == j) for j in range(m)] for i in range(m)] + [[-1] * m])
        return Lattice(gram, la.transpose(la.mat(cols)), name=f"A({m})", ambient=(P, la.identity(m + 1)))
    if kind == "D" and m >= 1:
        if m == 1:
            cols = [[2]]
        else:
            cols = [[int(i == j) - int(i == j + 1) for i in range(m)] for j in range(m - 1)]
            cols.append([int(i >= m - 2) for i in range(m)])
        return Lattice(la.identity(m), la.transpose(la.mat(cols)), name=f"D({m})", labels=_d_labels(m))
    if kind == "E" and m in (6, 7):
        return Lattice(_cartan_E(m), la.identity(m), name=f"E({m})")
    if kind == "E" and m == 8:
        h = Fraction(1, 2)
        cols = [[h, -h, -h, -h, -h, -h, -h, h], [1, 1, 0, 0, 0, 0, 0, 0]]
        cols += [[int(i == j + 1) - int(i == j) for i in range(8)] for j in range(6)]
        return Lattice(la.identity(8), la.transpose(la.mat(cols)), name="E(8)")
    raise ValueError(f"unsupported root lattice {kind}{m}")


def rescale(L: Lattice, c) -> Lattice:
    c = Fraction(c)
    if c <= 0:
        raise ValueError("rescale factor must be positive")
    if c == 1:
        return L
    amb = None
    if L.ambient is not None:
        amb = (L.ambient[0], la.scale(L.ambient[1], c))
    return Lattice(la.scale(L.gram, c), L.basis, name=f"scale({L.name},{c})", ambient=amb, labels=L.labels)


def direct_sum(L1: Lattice, L2: Lattice) -> Lattice:
    if not L1.rank:
        return L2
    if not L2.rank:
        return L1
    amb = None
    if L1.ambient is not None or L2.ambient is not None:
        P1, G1 = L1.ambient or (la.identity(L1.rank), L1.gram)
        P2, G2 = L2.ambient or (la.identity(L2.rank), L2.gram)
        amb = (la.block_diag(P1, P2), la.block_diag(G1, G2))
    return Lattice(
        la.block_diag(L1.gram, L2.gram),
        la.block_diag(L1.basis, L2.basis),
        name=f"{L1.name}+{L2.name}",
        ambient=amb,
    )


def direct_power(L: Lattice, n: int) -> Lattice:
    out = L
    for _ in range(n - 1):
        out = direct_sum(out, L)
    if n > 1:
        out = Lattice(out.gram, out.basis, name=f"{n}{L.name}", ambient=out.ambient)
    return out


def cyclic(n) -> Lattice:
    """The rank one lattice <n> in the frame with Gram (n)."""
    return Lattice(la.mat([[n]]), la.identity(1), name=f"<{n}>")


def lattice_from_gram(gram: Sequence[Sequence], name: str = "") -> Lattice:
    G = la.mat(gram)
    return Lattice(G, la.identity(len(G)), name=name)


# discriminant groups -------------------------------------------------------

def _frac_part(x: Fraction) -> Fraction:
    return x - math.floor(x)


@dataclass(frozen=True)
class DiscriminantGroup:
    lattice: Lattice
    reps: tuple[tuple[Fraction, ...], ...]
    invariant_factors: tuple[int, ...]
    names: tuple[str, ...]

    @property
    def order(self) -> int:
        return len(self.reps)

    def norm(self, i: int) -> Fraction:
        v = self.reps[i]
        x = self.lattice.inner(v, v)
        return x - 2 * math.floor(x / 2)

    def pairing(self, i: int, j: int) -> Fraction:
        return _frac_part(self.lattice.inner(self.reps[i], self.reps[j]))

    @cached_property
    def _index(self) -> dict:
        return {_coset_key(self.lattice, v): i for i, v in enumerate(self.reps)}

    def index_of(self, v: Sequence) -> int:
        """Coset index of a dual vector given in frame coordinates."""
        key = _coset_key(self.lattice, v)
        if key not in self._index:
            raise ValueError(f"{tuple(map(str, v))} is not in the dual lattice")
        return self._index[key]

    def exponent(self) -> int:
        return max(self.invariant_factors, default=1)


def _coset_key(L: Lattice, v: Sequence) -> tuple[Fraction, ...]:
    return tuple(_frac_part(c) for c in L.lattice_coords(v))


@lru_cache(maxsize=None)
def discriminant_group(L: Lattice) -> DiscriminantGroup:
    if not L.is_even:
        raise ValueError("discriminant group needs an even lattice")
    n = L.rank
    diag, _, V = la.smith(L.gram_L)
    gens, factors = [], []
    for i, s in enumerate(diag):
        if abs(s) > 1:
            gens.append(tuple(V[r][i] / abs(s) for r in range(n)))
            factors.append(abs(s))
    reps = []
    for ks in itertools.product(*(range(s) for s in factors)):
        y = [Fraction(0)] * n
        for k, g in zip(ks, gens):
            for r in range(n):
                y[r] += k * g[r]
        y = [_frac_part(c) for c in y]
        reps.append(la.matvec(L.basis, y))
    names = tuple(f"g{i}" for i in range(len(reps)))
    if L.labels is not None and len(L.labels) == len(reps):
        reps = [v for _, v in L.labels]
        names = tuple(name for name, _ in L.labels)
    group = DiscriminantGroup(L, tuple(reps), tuple(factors), names)
    if len({_coset_key(L, v) for v in reps}) != len(reps) or len(reps) != abs(L.det):
        raise ArithmeticError("discriminant representatives are inconsistent")
    return group


# sublattices ------------------------------------------------------------------

def orth_complement(L: Lattice, v: Sequence, ambient: bool = False) -> tuple[Lattice, Mat]:
    """{x in L : (x, v) = 0} as a lattice in its own coordinates, with inclusion."""
    v = tuple(Fraction(x) for x in v)
    if not any(v):
        raise ValueError("orthogonal complement of the zero vector")
    if not ambient and not L.contains(v):
        raise ValueError("vector is not in the lattice")
    row = L.ambient_pairing_row(v) if ambient else la.matvec(la.transpose(L.gram), v)
    f = tuple(sum((row[i] * L.basis[i][j] for i in range(L.rank)), Fraction(0)) for j in range(L.rank))
    d = la.common_denominator(f)
    K = la.integer_kernel([int(x * d) for x in f])
    incl = la.matmul(L.basis, K)
    gram = la.matmul(la.matmul(la.transpose(incl), L.gram), incl)
    amb = None
    if L.ambient is not None:
        P, Gamb = L.ambient
        amb = (la.matmul(P, incl), Gamb)
    tag = ",".join(str(x) for x in v)
    M = Lattice(gram, la.identity(len(gram)), name=f"perp({L.name},[{tag}])", ambient=amb)
    return M, incl


# short vectors ----------------------------------------------------------------

def _ldl(G: Mat):
    """Fincke-Pohst coefficients: Q(x) = sum_i q[i][i] (x_i + sum_{j>i} q[i][j] x_j)^2."""
    n = len(G)
    q = [[Fraction(x) for x in row] for row in G]
    for i in range(n):
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= q[k][i] * q[i][l]
    return q


def enumerate_coords(L: Lattice, shift: Sequence | None, bound) -> list[tuple[tuple[int, ...], Fraction]]:
    """Integer lattice coordinates k with (y0 + k) of norm <= bound, y0 the shift."""
    bound = Fraction(bound)
    if bound < 0:
        raise ValueError("bound must be non-negative")
    n = L.rank
    if n == 0:
        return [((), Fraction(0))]
    y0 = L.lattice_coords(shift) if shift is not None else (Fraction(0),) * n
    G = L.gram_L
    qf = [[float(x) for x in row] for row in _ldl(G)]
    y0f = [float(x) for x in y0]
    eps = 1e-9 * (1 + float(bound))
    found: list[tuple[int, ...]] = []
    x = [0.0] * n
    k = [0] * n

    def rec(i: int, remaining: float):
        c = -sum(qf[i][j] * x[j] for j in range(i + 1, n))
        r = math.sqrt(max(remaining, 0.0) / qf[i][i]) + 1e-9
        for ki in range(math.ceil(c - r - y0f[i]), math.floor(c + r - y0f[i]) + 1):
            xi = ki + y0f[i]
            rest = remaining - qf[i][i] * (xi - c) ** 2
            if rest < -eps:
                continue
            x[i], k[i] = xi, ki
            if i == 0:
                found.append(tuple(k))
            else:
                rec(i - 1, rest)
        x[i] = 0.0

    rec(n - 1, float(bound) + eps)
    # exact recheck in integers: norm = (den*y)^T G (den*y) / den^2
    den = la.common_denominator(list(y0) + [g for row in G for g in row])
    dy = [int(c * den) for c in y0]
    Gd = [[int(g * den) for g in row] for row in G]  # den * G, integral
    out = []
    for ks in found:
        y = [den * ki + c for ki, c in zip(ks, dy)]
        num = sum(y[i] * Gd[i][j] * y[j] for i in range(n) for j in range(n))
        nrm = Fraction(num, den**3)
        if nrm <= bound:
            out.append((ks, nrm))
    return out


def short_vectors(L: Lattice, shift: Sequence | None = None, bound=0) -> list[tuple[tuple[Fraction, ...], Fraction]]:
    """All l in shift + L with (l, l) <= bound, as (frame vector, norm), sorted by vector."""
    n = L.rank
    y0 = L.lattice_coords(shift) if shift is not None else (Fraction(0),) * n
    den = la.common_denominator(list(y0) + [b for row in L.basis for b in row])
    Bd = [[int(b * den) for b in row] for row in L.basis]
    y0d = [int(c * den) for c in y0]
    out = []
    for ks, nrm in enumerate_coords(L, shift, bound):
        y = [den * ki + c for ki, c in zip(ks, y0d)]
        out.append((tuple(sum(b * yj for b, yj in zip(row, y)) for row in Bd), nrm))
    out.sort(key=lambda item: item[0])
    den2 = den * den
    return [(tuple(Fraction(c, den2) for c in num), nrm) for num, nrm in out]
