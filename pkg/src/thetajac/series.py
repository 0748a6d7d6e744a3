"""Sparse exact truncated Fourier expansions of lattice-index Jacobi forms.

A key ``(n24, w)`` with coefficient c stands for
``c * exp(2 pi i (n24/24) tau) * exp(2 pi i (w . z) / den)`` where z are frame
coordinates.  The dual vector behind ``w`` is ``l = G^{-1} w / den``.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd, lcm
from typing import Iterable, Mapping, NamedTuple, Sequence

import numpy as np

from . import linalg as la
from .arith import PrecisionError, QSeries, eta_power, kronecker
from .lattice import POINT, Lattice, build_root, discriminant_group, enumerate_coords, rescale


class ShapeError(ValueError):
    """Operands live on incompatible frames, indices or characters."""


class HolomorphyError(ValueError):
    """A series declared holomorphic has a term of negative hyperbolic norm."""


class ConsistencyError(ValueError):
    """Coefficients violate a structural identity (theta decomposition)."""


class Verdict(NamedTuple):
    value: object
    prec: int


@dataclass(frozen=True)
class FormShape:
    lattice: Lattice
    t: Fraction
    k2: int
    D: int
    holo: bool = True

    def __post_init__(self):
        object.__setattr__(self, "t", Fraction(self.t))
        object.__setattr__(self, "D", self.D % 24)

    @property
    def rank(self) -> int:
        return self.lattice.rank

    @property
    def weight(self) -> Fraction:
        return Fraction(self.k2, 2)

    @property
    def parity(self) -> str:
        """Heisenberg parity: trivial iff L(t) is an even lattice."""
        if not self.rank:
            return "trivial"
        G = la.scale(self.lattice.gram_L, self.t)
        even = la.is_integral(G) and all(G[i][i] % 2 == 0 for i in range(self.rank))
        return "trivial" if even else "binary"

    def to_json(self) -> dict:
        return {"lattice": self.lattice.to_json(), "t": str(self.t), "k2": self.k2, "D": self.D, "holo": self.holo}


Key = tuple[int, tuple[int, ...]]


_LIMIT = 1 << 62


def _as_int64(rows):
    try:
        W = np.array(rows, dtype=np.int64)
    except OverflowError:
        return None, 0
    return W, int(np.abs(W).max()) if W.size else 0


def _int_rows(rows: Sequence[Sequence[int]], M: Sequence[Sequence[int]]) -> list[list[int]]:
    """rows @ M^T exactly, using int64 when it cannot overflow."""
    if not rows:
        return []
    W, bx = _as_int64(rows)
    bm = max((abs(x) for r in M for x in r), default=0)
    if W is not None and bx * bm * max(len(M[0]) if M else 1, 1) < _LIMIT:
        return (W @ np.array(M, dtype=np.int64).T).tolist()
    return [[sum(a * b for a, b in zip(r, m)) for m in M] for r in rows]


def _quad_forms(rows: Sequence[Sequence[int]], M: Sequence[Sequence[int]]) -> list[int]:
    """w^T M w for each row w, exactly."""
    if not rows or not M:
        return [0] * len(rows)
    W, bx = _as_int64(rows)
    bm = max(abs(x) for r in M for x in r)
    if W is not None and bx * bx * bm * len(M) * len(M) < _LIMIT:
        return np.einsum("ij,ij->i", W @ np.array(M, dtype=np.int64), W).tolist()
    return [sum(wi * mij * wj for wi, row in zip(w, M) for mij, wj in zip(row, w)) for w in rows]


def _num(c):
    """Canonical exact coefficient: int when integral, Fraction otherwise."""
    if type(c) is int:
        return c
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else c


class FourierSeries:
    """Immutable truncated expansion; every key with n24 <= prec is exact."""

    __slots__ = ("shape", "prec", "den", "terms", "__dict__")

    def __init__(self, shape: FormShape, prec: int, den: int, terms: Mapping[Key, Fraction], normalize: bool = True):
        if normalize:
            terms = {k: (c if type(c) is int else _num(c)) for k, c in terms.items() if c and k[0] <= prec}
            g = den
            for _, w in terms:
                for x in w:
                    g = gcd(g, x)
                    if g == 1:
                        break
                if g == 1:
                    break
            if g > 1 and terms:
                terms = {(n, tuple(x // g for x in w)): c for (n, w), c in terms.items()}
                den //= g
            elif not terms:
                den = 1
        self.shape = shape
        self.prec = prec
        self.den = den
        self.terms = terms

    # basic accessors ---------------------------------------------------------
    @property
    def lattice(self) -> Lattice:
        return self.shape.lattice

    @property
    def t(self) -> Fraction:
        return self.shape.t

    @property
    def rank(self) -> int:
        return self.shape.rank

    @property
    def min_support(self) -> int:
        return min(n for n, _ in self.terms) if self.terms else self.prec + 1

    def __len__(self) -> int:
        return len(self.terms)

    def __repr__(self) -> str:
        s = self.shape
        return f"FourierSeries({s.lattice}, t={s.t}, k2={s.k2}, D={s.D}, prec={self.prec}, terms={len(self.terms)})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, FourierSeries):
            return NotImplemented
        return (
            self.shape == other.shape
            and self.prec == other.prec
            and self.den == other.den
            and self.terms == other.terms
        )

    __hash__ = None  # type: ignore[assignment]

    def coefficient(self, n24: int, w: Sequence[int], den: int | None = None) -> Fraction:
        """Coefficient of the key (n24, w/den); den defaults to the series denominator."""
        if n24 > self.prec:
            raise PrecisionError(f"n24={n24} exceeds precision {self.prec}")
        den = self.den if den is None else den
        w = tuple(w)
        if den == self.den:
            return self.terms.get((n24, w), Fraction(0))
        scaled = tuple(Fraction(x * self.den, den) for x in w)
        if any(x.denominator != 1 for x in scaled):
            return Fraction(0)
        return self.terms.get((n24, tuple(int(x) for x in scaled)), Fraction(0))

    @cached_property
    def layers(self) -> dict[int, dict[tuple[int, ...], Fraction]]:
        out: dict[int, dict] = {}
        for (n, w), c in self.terms.items():
            out.setdefault(n, {})[w] = c
        return dict(sorted(out.items()))

    @cached_property
    def _norm_data(self) -> tuple[list[list[int]], int]:
        Ginv = self.lattice.gram_inverse
        g = la.common_denominator(x for row in Ginv for x in row)
        return [[int(x * g) for x in row] for row in Ginv], g

    def dual_norm(self, w: Sequence[int]) -> Fraction:
        """(l, l) for the dual vector of the functional w / den."""
        if not w:
            return Fraction(0)
        M, g = self._norm_data
        num = sum(wi * mij * wj for wi, row in zip(w, M) for mij, wj in zip(row, w))
        return Fraction(num, g * self.den * self.den)

    def hyperbolic_norm(self, n24: int, w: Sequence[int]) -> Fraction:
        return Fraction(n24, 12) * self.t - self.dual_norm(w)

    def hyperbolic_numerators(self) -> tuple[list[tuple[Key, int]], int]:
        """Integer numerators of 2nt - (l,l) over one common denominator."""
        M, g = self._norm_data
        scale = g * self.den * self.den
        p, q = self.t.numerator, self.t.denominator
        keys = list(self.terms)
        nums = _quad_forms([w for _, w in keys], M)
        out = [(key, key[0] * p * scale - 12 * q * num) for key, num in zip(keys, nums)]
        return out, 12 * q * scale

    def hyperbolic_norms(self) -> Iterable[tuple[Key, Fraction]]:
        nums, den = self.hyperbolic_numerators()
        return ((k, Fraction(h, den)) for k, h in nums)

    def scan_holomorphic(self) -> bool:
        if any(n < 0 for n, _ in self.terms):
            return False
        return all(h >= 0 for _, h in self.hyperbolic_numerators()[0])

    def with_shape(self, **changes) -> "FourierSeries":
        return FourierSeries(replace(self.shape, **changes), self.prec, self.den, self.terms, normalize=False)

    def truncate(self, N: int) -> "FourierSeries":
        if N > self.prec:
            raise PrecisionError(f"cannot raise precision {self.prec} to {N}")
        return FourierSeries(self.shape, N, self.den, self.terms)

    def map_coefficients(self, f) -> "FourierSeries":
        return FourierSeries(self.shape, self.prec, self.den, {k: f(c) for k, c in self.terms.items()})

    def scale(self, c) -> "FourierSeries":
        c = Fraction(c)
        return self.map_coefficients(lambda x: c * x)

    def __neg__(self) -> "FourierSeries":
        return self.scale(-1)

    def __add__(self, other: "FourierSeries") -> "FourierSeries":
        return add(self, other)

    def __sub__(self, other: "FourierSeries") -> "FourierSeries":
        return add(self, -other)

    def __mul__(self, other: "FourierSeries") -> "FourierSeries":
        return mul(self, other)

    def __matmul__(self, other: "FourierSeries") -> "FourierSeries":
        return tensor(self, other)

    # serialization -----------------------------------------------------------
    def sorted_terms(self) -> list[tuple[Key, Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0])

    def to_json(self) -> dict:
        return {
            "shape": self.shape.to_json(),
            "prec": self.prec,
            "den": self.den,
            "terms": [{"n24": n, "w": list(w), "c": str(c)} for (n, w), c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, data: dict) -> "FourierSeries":
        s = data["shape"]
        shape = FormShape(Lattice.from_json(s["lattice"]), Fraction(s["t"]), s["k2"], s["D"], s["holo"])
        terms = {(t["n24"], tuple(t["w"])): Fraction(t["c"]) for t in data["terms"]}
        return cls(shape, data["prec"], data["den"], terms)


# frames -----------------------------------------------------------------------

def _rescale_keys(s: FourierSeries, den: int) -> dict[int, list[tuple[tuple[int, ...], Fraction]]]:
    f = den // s.den
    out: dict[int, list] = {}
    for (n, w), c in s.terms.items():
        out.setdefault(n, []).append((tuple(f * x for x in w) if f != 1 else w, c))
    return out


def _proportionality(G1, G2) -> Fraction | None:
    """c with G2 = c * G1, or None."""
    c = None
    for r1, r2 in zip(G1, G2):
        for a, b in zip(r1, r2):
            if a == 0:
                if b != 0:
                    return None
                continue
            q = Fraction(b) / a
            if c is None:
                c = q
            elif q != c:
                return None
    return c


def align(a: FourierSeries, b: FourierSeries) -> FourierSeries:
    """Express b on the frame of a (frames proportional, same lattice vectors)."""
    if b.lattice == a.lattice:
        return b
    if a.rank != b.rank:
        raise ShapeError("frames of different rank")
    c = _proportionality(a.lattice.gram, b.lattice.gram)
    if c is None or c <= 0:
        raise ShapeError(f"frames of {a.lattice} and {b.lattice} are not proportional")
    probe = Lattice(a.lattice.gram, b.lattice.basis)
    if not probe.same_lattice(a.lattice):
        raise ShapeError(f"{a.lattice} and {b.lattice} are different lattices")
    return b.with_shape(lattice=a.lattice, t=b.t * c)


def _scaled_terms(s: FourierSeries, den: int):
    f = den // s.den
    if f == 1:
        return s.terms.items()
    return [((n, tuple(f * x for x in w)), c) for (n, w), c in s.terms.items()]


def _layer_list(s: FourierSeries, den: int) -> list[tuple[int, list]]:
    return sorted(_rescale_keys(s, den).items())


def mul(a: FourierSeries, b: FourierSeries, cap: int | None = None) -> FourierSeries:
    """Pointwise product of two forms in the same abelian variables.

    ``cap`` lowers the output precision to save work; it never raises it.
    """
    if a.rank == 0 and b.rank:
        a, b = b, a
    if b.rank:
        b = align(a, b)
    prec = min(a.prec + b.min_support, b.prec + a.min_support)
    if cap is not None:
        prec = min(prec, cap)
    den = lcm(a.den, b.den)
    out: dict[Key, Fraction] = {}
    get = out.get
    if not b.rank:
        qs = sorted((n, c) for (n, _), c in b.terms.items())
        for (n1, w1), c1 in _scaled_terms(a, den):
            for n2, c2 in qs:
                n = n1 + n2
                if n > prec:
                    break
                k = (n, w1)
                out[k] = get(k, 0) + c1 * c2
    else:
        add_ = operator.add
        lb_ = _layer_list(b, den)
        for n1, L1 in _layer_list(a, den):
            for n2, L2 in lb_:
                n = n1 + n2
                if n > prec:
                    break
                for w1, c1 in L1:
                    for w2, c2 in L2:
                        k = (n, tuple(map(add_, w1, w2)))
                        out[k] = get(k, 0) + c1 * c2
    shape = FormShape(
        a.lattice, a.t + b.t, a.shape.k2 + b.shape.k2, a.shape.D + b.shape.D,
        a.shape.holo and b.shape.holo and min(a.min_support, 0) == 0 and min(b.min_support, 0) == 0,
    )
    return FourierSeries(shape, prec, den, out)


def tensor(a: FourierSeries, b: FourierSeries, cap: int | None = None) -> FourierSeries:
    """phi(tau, z1) * psi(tau, z2) on the orthogonal sum of the lattices."""
    if not a.rank or not b.rank:
        return mul(a, b, cap)
    if a.t != b.t:
        raise ShapeError(f"tensor product needs equal indices, got {a.t} and {b.t}")
    from .lattice import direct_sum

    prec = min(a.prec + b.min_support, b.prec + a.min_support)
    if cap is not None:
        prec = min(prec, cap)
    den = lcm(a.den, b.den)
    lb_ = _layer_list(b, den)
    out: dict[Key, Fraction] = {}
    get = out.get
    for n1, L1 in _layer_list(a, den):
        for n2, L2 in lb_:
            n = n1 + n2
            if n > prec:
                break
            for w1, c1 in L1:
                for w2, c2 in L2:
                    k = (n, w1 + w2)
                    out[k] = get(k, 0) + c1 * c2
    shape = FormShape(
        direct_sum(a.lattice, b.lattice), a.t, a.shape.k2 + b.shape.k2, a.shape.D + b.shape.D,
        a.shape.holo and b.shape.holo,
    )
    return FourierSeries(shape, prec, den, out)


def tensor_power(a: FourierSeries, n: int, cap: int | None = None) -> FourierSeries:
    out = a
    for _ in range(n - 1):
        out = tensor(out, a, cap)
    return out


def add(a: FourierSeries, b: FourierSeries) -> FourierSeries:
    if a.rank or b.rank:
        b = align(a, b)
    if a.t != b.t and a.terms and b.terms:
        raise ShapeError("cannot add forms of different index")
    if a.shape.D != b.shape.D and a.terms and b.terms:
        raise ShapeError(f"cannot add forms with characters D={a.shape.D} and D={b.shape.D}")
    den = lcm(a.den, b.den)
    out: dict[Key, Fraction] = {}
    for s in (a, b):
        f = den // s.den
        for (n, w), c in s.terms.items():
            k = (n, tuple(f * x for x in w))
            out[k] = out.get(k, 0) + c
    base = a if a.terms or not b.terms else b
    shape = replace(base.shape, holo=a.shape.holo and b.shape.holo)
    return FourierSeries(shape, min(a.prec, b.prec), den, out)


# substitutions ---------------------------------------------------------------

def substitute(
    phi: FourierSeries,
    A: Sequence[Sequence],
    lattice: Lattice | None = None,
    t=None,
    require_holomorphic: bool = False,
) -> FourierSeries:
    """phi(tau, A z') as a form in target frame coordinates z'.

    A maps target coordinates to source coordinates.  The target (lattice, t)
    must satisfy t' G' = t A^T G A and A must send the target lattice into the
    source lattice.
    """
    A = la.mat(A)
    src = phi.lattice
    r_src, r_tgt = la.shape(A)
    if r_src != src.rank:
        raise ShapeError(f"matrix has {r_src} rows, source frame has rank {src.rank}")
    metric = la.scale(la.matmul(la.matmul(la.transpose(A), src.gram), A), phi.t)
    if lattice is None:
        c = _proportionality(src.gram, metric) if r_src == r_tgt else None
        if c and la.is_integral(la.matmul(src.basis_inverse, la.matmul(A, src.basis))):
            lattice, t = src, c
        else:
            lattice = Lattice(la.scale(metric, 1 / phi.t), la.identity(r_tgt), name=f"sub({src.name})")
            t = phi.t
    if lattice.rank != r_tgt:
        raise ShapeError("target lattice rank does not match the matrix")
    if t is None:
        c = _proportionality(lattice.gram, metric)
        if c is None:
            raise ShapeError("target frame is not proportional to the pulled-back metric")
        t = c
    t = Fraction(t)
    if la.scale(lattice.gram, t) != metric:
        raise ShapeError("substitution does not match the target index and frame")
    if r_tgt and not la.is_integral(la.matmul(src.basis_inverse, la.matmul(A, lattice.basis))):
        raise ShapeError("substitution does not map the target lattice into the source lattice")
    dA = la.common_denominator(x for row in A for x in row)
    At = [[int(x * dA) for x in col] for col in la.transpose(A)]
    out: dict[Key, Fraction] = {}
    for (n, w), c in phi.terms.items():
        k = (n, tuple(sum(a * x for a, x in zip(row, w)) for row in At))
        out[k] = out.get(k, 0) + c
    result = FourierSeries(replace(phi.shape, lattice=lattice, t=t), phi.prec, phi.den * dA, out)
    if require_holomorphic and not result.scan_holomorphic():
        raise HolomorphyError("substituted series violates the declared holomorphy")
    return result


def relabel(phi: FourierSeries, lattice: Lattice, t) -> FourierSeries:
    """Same function, viewed on a sublattice with a compatible frame and index."""
    return substitute(phi, la.identity(phi.rank), lattice, t)


def pullback(phi: FourierSeries, B: Sequence[Sequence], M: Lattice | None = None) -> FourierSeries:
    """Restriction to a sublattice M embedded by B (columns in phi's frame)."""
    B = la.mat(B)
    if M is None:
        G = la.matmul(la.matmul(la.transpose(B), phi.lattice.gram), B)
        M = Lattice(G, la.identity(len(G)), name=f"pull({phi.lattice.name})")
    return substitute(phi, B, M)


def pullback_perp(phi: FourierSeries, v: Sequence, ambient: bool = False) -> FourierSeries:
    from .lattice import orth_complement

    M, B = orth_complement(phi.lattice, v, ambient=ambient)
    return pullback(phi, B, M)


def eta_quotient(phi: FourierSeries, p: int) -> FourierSeries:
    """phi * eta^p; the holomorphy flag is re-verified term by term."""
    eta = qseries_to_fourier(eta_power(p, max(phi.prec - phi.min_support, p) + max(p, 0)), k2=p, D=p)
    out = mul(phi, eta)
    return out.with_shape(holo=out.scan_holomorphic())


def qseries_to_fourier(q: QSeries, k2: int = 0, D: int = 0) -> FourierSeries:
    shape = FormShape(POINT, Fraction(0), k2, D, holo=q.min_support >= 0)
    return FourierSeries(shape, q.prec, 1, {(n, ()): c for n, c in q.terms.items()})


def fourier_to_qseries(phi: FourierSeries) -> QSeries:
    if phi.rank:
        raise ShapeError("series has abelian variables")
    return QSeries({n: c for (n, _), c in phi.terms.items()}, phi.prec)


def q_rescale(phi: FourierSeries, c: int) -> FourierSeries:
    """tau -> c tau on a pure q-series."""
    if phi.rank:
        raise ShapeError("q_rescale needs a series without abelian variables")
    q = fourier_to_qseries(phi).rescale(c)
    return FourierSeries(replace(phi.shape, D=c * phi.shape.D), q.prec, 1, {(n, ()): v for n, v in q.terms.items()})


# generators -------------------------------------------------------------------

A1 = build_root("A", 1)
LAT6 = rescale(A1, 3)


def gen_basic(kind: str, N24: int) -> FourierSeries:
    if N24 < 0:
        raise ValueError("precision must be non-negative")
    if kind == "theta":
        terms, n = {}, 1
        while 3 * n * n <= N24:
            terms[(3 * n * n, (n,))] = kronecker(-4, n)
            terms[(3 * n * n, (-n,))] = kronecker(-4, -n)
            n += 2
        return FourierSeries(FormShape(A1, Fraction(1, 2), 1, 3), N24, 2, terms)
    if kind == "theta32":
        terms, n = {}, 1
        while n * n <= N24:
            if kronecker(12, n):
                terms[(n * n, (n,))] = kronecker(12, n)
                terms[(n * n, (-n,))] = kronecker(12, -n)
            n += 1
        return FourierSeries(FormShape(LAT6, Fraction(1, 2), 1, 1), N24, 2, terms)
    if kind == "eta":
        return qseries_to_fourier(eta_power(1, N24), k2=1, D=1)
    raise ValueError(f"unknown generator {kind!r}")


def constant(value, N24: int, lattice: Lattice = POINT, t=0) -> FourierSeries:
    return FourierSeries(FormShape(lattice, Fraction(t), 0, 0), N24, 1, {(0, (0,) * lattice.rank): Fraction(value)})


@lru_cache(maxsize=64)
def _lattice_theta_cached(L: Lattice, mu: tuple[Fraction, ...], N24: int) -> FourierSeries:
    dg = discriminant_group(L)
    dg.index_of(mu)
    nmu = L.inner(mu, mu)
    D = 12 * nmu
    if D.denominator != 1:
        raise ShapeError("12 (mu, mu) is not integral; no eta character matches this theta series")
    GB = la.matmul(L.gram, L.basis)
    y0 = L.lattice_coords(mu)
    off = la.matvec(GB, y0)
    den = la.common_denominator([x for row in GB for x in row] + list(off))
    M = [[int(x * den) for x in row] for row in GB]
    c0 = [int(x * den) for x in off]
    found = enumerate_coords(L, mu, Fraction(N24, 12))
    ws = _int_rows([ks for ks, _ in found], M)
    terms = {}
    for (_, nrm), w in zip(found, ws):
        n24 = 12 * nrm
        if n24.denominator != 1:
            raise ShapeError("non-integral q-exponent in theta series")
        terms[(int(n24), tuple(a + c for a, c in zip(w, c0)))] = 1
    return FourierSeries(FormShape(L, Fraction(1), L.rank, int(D)), N24, den, terms)


def lattice_theta(L: Lattice, mu, N24: int) -> FourierSeries:
    """Theta series of the coset mu + L (mu an index or a frame vector)."""
    if not L.is_even:
        raise ShapeError("lattice theta series need an even lattice")
    if isinstance(mu, int):
        mu = discriminant_group(L).reps[mu]
    return _lattice_theta_cached(L, tuple(Fraction(x) for x in mu), N24)


# order and classification -------------------------------------------------------

def ord_(phi: FourierSeries) -> Verdict:
    """Minimal hyperbolic norm over the stored support (valid up to prec)."""
    if phi.t <= 0:
        raise ShapeError("order needs a positive index")
    if not phi.terms:
        raise ValueError("order of the zero series")
    nums, den = phi.hyperbolic_numerators()
    return Verdict(Fraction(min(h for _, h in nums), den), phi.prec)


def classify(phi: FourierSeries) -> Verdict:
    if not phi.terms:
        return Verdict("cusp", phi.prec)
    hs = [h for _, h in phi.hyperbolic_numerators()[0]]
    if phi.min_support < 0 or min(hs) < 0:
        label = "non_holomorphic"
    elif not any(hs):
        label = "singular"
    elif all(hs):
        label = "cusp"
    else:
        label = "holomorphic"
    return Verdict(label, phi.prec)


def support_congruence(phi: FourierSeries) -> bool:
    return all((n - phi.shape.D) % 24 == 0 for n, _ in phi.terms)


# elliptic invariance -------------------------------------------------------------

class EllipticResult(NamedTuple):
    ok: bool
    witness: tuple | None = None
    checked: int = 0


def check_elliptic(phi: FourierSeries, x: Sequence) -> EllipticResult:
    """f(n, l) = eps(x) f(n + (l,x) + t(x,x)/2, l + t x), eps(x) = (-1)^(t(x,x))."""
    L = phi.lattice
    x = tuple(Fraction(c) for c in x)
    if not L.contains(x):
        raise ValueError("shift vector is not in the lattice")
    xden = la.common_denominator(x)
    checked = 0
    terms = phi.terms
    for sign in (1, -1):
        xs = tuple(sign * c for c in x)
        X = [int(c * xden) for c in xs]
        txx = phi.t * L.inner(xs, xs)
        if txx.denominator != 1:
            raise ShapeError("t (x, x) is not integral; L(t) is not integral")
        eps = -1 if txx % 2 else 1
        shift_w = [phi.den * phi.t * g for g in la.matvec(L.gram, xs)]
        if any(s.denominator != 1 for s in shift_w):
            first = next(iter(terms), None)
            return EllipticResult(False, (first, "partner key is not representable"), checked)
        shift_w = [int(s) for s in shift_w]
        base = int(12 * txx)
        div = phi.den * xden
        for (n, w), c in terms.items():
            q, r = divmod(24 * sum(a * b for a, b in zip(w, X)), div)
            if r:
                return EllipticResult(False, ((n, w), "partner key is not representable"), checked)
            n2 = n + q + base
            if n2 > phi.prec:
                continue
            w2 = tuple(map(operator.add, w, shift_w))
            checked += 1
            other = terms.get((n2, w2), 0)
            if other != eps * c:
                return EllipticResult(False, ((n, w), (n2, w2), c, other), checked)
    return EllipticResult(True, None, checked)


def elliptic_sign(phi: FourierSeries, x: Sequence) -> int:
    txx = phi.t * phi.lattice.inner(x, x)
    return -1 if txx % 2 else 1


def heisenberg_character(L: Lattice, t, x: Sequence, y: Sequence, r2: int) -> Fraction:
    """Exponent e in [0, 2) with nu([x, y; r2/2]) = exp(pi i e)."""
    t = Fraction(t)
    if not (L.contains(x) and L.contains(y)):
        raise ValueError("x and y must lie in the lattice")
    r = Fraction(r2, 2)
    xy = L.inner(x, y)
    if (r + xy / 2).denominator != 1:
        raise ValueError("[x, y; r] is not in the Heisenberg group")
    e = t * (L.inner(x, x) + L.inner(y, y) - xy + 2 * r)
    return e - 2 * (e // 2)


def heisenberg_value(L: Lattice, t, x, y, r2: int) -> int:
    e = heisenberg_character(L, t, x, y, r2)
    if e == 0:
        return 1
    if e == 1:
        return -1
    raise ValueError(f"character value exp(pi i {e}) is not real")


# theta decomposition ----------------------------------------------------------

@dataclass(frozen=True)
class ThetaDecomposition:
    components: dict[int, QSeries]
    names: tuple[str, ...]
    prec: int

    def vector(self, r24: int = 0) -> list[Fraction]:
        return [self.components[i].terms.get(r24, Fraction(0)) for i in range(len(self.names))]


def theta_decompose(phi: FourierSeries, verify: bool = True) -> ThetaDecomposition:
    """Split an index-one form into coset theta series with q-series coefficients."""
    L = phi.lattice
    if phi.t != 1:
        raise ShapeError("theta decomposition needs index one")
    if not L.is_even:
        raise ShapeError("theta decomposition needs an even lattice")
    dg = discriminant_group(L)
    # lattice coordinates of l = G^{-1} w / den, i.e. (G B)^{-1} w / den
    K = la.inverse(la.matmul(L.gram, L.basis))
    kden = la.common_denominator([x for row in K for x in row] + [c for v in dg.reps for c in L.lattice_coords(v)])
    kden *= phi.den
    Kint = [[int(x * kden / phi.den) for x in row] for row in K]
    rep_key = {tuple(int(c * kden) % kden for c in L.lattice_coords(v)): i for i, v in enumerate(dg.reps)}
    comps: dict[int, dict[int, Fraction]] = {i: {} for i in range(dg.order)}
    seen: dict[tuple[int, int], tuple] = {}
    Mn, g = phi._norm_data
    nden = g * phi.den * phi.den
    keys = list(phi.terms)
    ws = [w for _, w in keys]
    ys = _int_rows(ws, Kint)
    nums = _quad_forms(ws, Mn)
    for (n, w), y, num in zip(keys, ys, nums):
        c = phi.terms[(n, w)]
        y = tuple(v % kden for v in y)
        if y not in rep_key:
            raise ConsistencyError(f"key {(n, w)} is not a dual lattice vector")
        i = rep_key[y]
        r, rem = divmod(12 * num, nden)
        if rem:
            raise ConsistencyError(f"key {(n, w)} has non-integral reduced exponent")
        r24 = n - r
        old = comps[i].get(r24)
        if old is not None and old != c:
            raise ConsistencyError(f"coset {dg.names[i]}: {seen[(i, r24)]} and {(n, w)} disagree")
        comps[i][r24] = c
        seen[(i, r24)] = (n, w)
    min_norm = []
    for v in dg.reps:
        from .lattice import short_vectors

        bound = Fraction(1)
        while True:
            vs = short_vectors(L, v, bound)
            if vs:
                min_norm.append(min(nrm for _, nrm in vs))
                break
            bound *= 2
    out = {}
    for i in range(dg.order):
        p = phi.prec - int(12 * min_norm[i]) if (12 * min_norm[i]).denominator == 1 else phi.prec
        out[i] = QSeries({r: c for r, c in comps[i].items() if r <= p}, p)
    dec = ThetaDecomposition(out, dg.names, phi.prec)
    if verify:
        back = reconstruct(L, dec, phi.prec, phi.shape)
        ok, why = series_equal(back, phi)
        if not ok:
            raise ConsistencyError(f"reconstruction differs from the input: {why}")
    return dec


def reconstruct(L: Lattice, dec: ThetaDecomposition, N24: int, shape: FormShape | None = None) -> FourierSeries:
    total: FourierSeries | None = None
    for i, comp in dec.components.items():
        if not comp.terms:
            continue
        th = lattice_theta(L, i, N24)
        need = N24 - th.min_support
        term = mul(th, qseries_to_fourier(comp.truncate(min(comp.prec, max(need, 0))) if comp.prec > need else comp))
        term = term.truncate(min(term.prec, N24)) if term.prec >= N24 else term
        term = term.with_shape(D=th.shape.D + min(comp.terms) if comp.terms else th.shape.D)
        total = term if total is None else add(total.with_shape(D=term.shape.D), term)
    if total is None:
        base = shape or FormShape(L, Fraction(1), L.rank, 0)
        return FourierSeries(base, N24, 1, {})
    if shape is not None:
        total = total.with_shape(k2=shape.k2, D=shape.D)
    return total


def series_equal(a: FourierSeries, b: FourierSeries, N24: int | None = None) -> tuple[bool, str]:
    """Equality as functions up to N24: same metric t G, same lattice, same terms."""
    if la.scale(a.lattice.gram, a.t) != la.scale(b.lattice.gram, b.t) and (a.terms or b.terms):
        return False, f"metrics differ: {a.lattice} t={a.t} vs {b.lattice} t={b.t}"
    if a.rank and not Lattice(a.lattice.gram, b.lattice.basis).same_lattice(a.lattice):
        return False, "lattices differ"
    N = min(a.prec, b.prec) if N24 is None else N24
    if N > min(a.prec, b.prec):
        return False, f"precision {min(a.prec, b.prec)} below requested {N}"
    den = lcm(a.den, b.den)

    def norm(s):
        f = den // s.den
        return {(n, tuple(f * x for x in w)): c for (n, w), c in s.terms.items() if n <= N}

    ta, tb = norm(a), norm(b)
    if ta != tb:
        diff = sorted(set(ta) ^ set(tb)) or sorted(k for k in ta if ta[k] != tb.get(k))
        k = diff[0]
        return False, f"first difference at {k}: {ta.get(k, 0)} vs {tb.get(k, 0)}"
    return True, "equal"
