"""Index-raising Hecke operator and Fourier coefficients of the additive lift."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import gcd
from typing import Sequence

from .arith import (
    PrecisionError,
    divisor_sigma,
    divisors,
    eisenstein_q,
    eta_character_sign,
    kronecker,
    sl2_lift_diag,
)
from .series import FourierSeries, ShapeError


def conductor(D: int) -> tuple[int, int]:
    """(D_eff, Q) with D = 0 read as 24."""
    De = D % 24 or 24
    if De % 2 or 24 % De:
        raise ShapeError(f"D = {D} is not an even divisor of 24")
    return De, 24 // De


def sigma_sign(a: int, Q: int, D: int) -> int:
    """v_eta^D(sigma_a) for sigma_a = diag(a^-1, a) mod Q."""
    return eta_character_sign(D, sl2_lift_diag(a, Q))


def _check_hecke(phi: FourierSeries, m: int) -> tuple[int, int, int]:
    if phi.shape.k2 % 2:
        raise ShapeError("Hecke operator needs integral weight")
    De, Q = conductor(phi.shape.D)
    if m < 1 or gcd(m, Q) != 1:
        raise ShapeError(f"m = {m} must be positive and coprime to Q = {Q}")
    if Q % 2 and phi.rank and phi.shape.parity != "trivial":
        raise ShapeError("odd conductor requires a trivial Heisenberg character")
    return phi.shape.k2 // 2, De, Q


def hecke_minus(phi: FourierSeries, m: int) -> FourierSeries:
    """m^-1 (phi | T_-(m)): sum over a d = m of a^(k-1) v(sigma_a) f at (a n/d, a l)."""
    k, De, Q = _check_hecke(phi, m)
    N = phi.prec // m
    out: dict = {}
    for a in divisors(m):
        d = m // a
        weight = Fraction(a) ** (k - 1) * sigma_sign(a, Q, De)
        for (n24, w), c in phi.terms.items():
            n = n24 * Q // 24 if (n24 * Q) % 24 == 0 else None
            if n is None or n % d:
                continue
            n_out = a * n24 // d
            if n_out > N:
                continue
            key = (n_out, tuple(a * x for x in w))
            out[key] = out.get(key, 0) + weight * c
    shape = replace(phi.shape, t=m * phi.t, D=(m * De) % 24)
    return FourierSeries(shape, N, phi.den, out)


# lifting -------------------------------------------------------------------

def lift_coefficient(phi: FourierSeries, n: int, w: Sequence[int], m: int, mu: int) -> Fraction:
    """A(n, l, m) = sum over a | (n, l, m) of a^(k-1) v(sigma_a) f(n m D / a^2, l / a)."""
    k, De, Q = _check_hecke(phi, 1)
    if m < 1 or n < 1:
        raise ValueError("n and m must be positive")
    if (n - mu) % Q or (m - mu) % Q:
        raise ValueError(f"need n = m = mu mod {Q}, got n={n}, m={m}, mu={mu}")
    if n * m * De > phi.prec:
        raise PrecisionError(f"f(nmD) with nmD = {n * m * De} exceeds precision {phi.prec}")
    w = tuple(w)
    total = Fraction(0)
    for a in divisors(gcd(n, m)):
        if any(x % a for x in w):
            continue
        n24 = n * m * De // (a * a)
        c = phi.terms.get((n24, tuple(x // a for x in w)), 0)
        if c:
            total += Fraction(a) ** (k - 1) * sigma_sign(a, Q, De) * c
    return total


@dataclass(frozen=True)
class LiftTable:
    mu: int
    Q: int
    k2: int
    den: int
    bound: int
    entries: dict = field(default_factory=dict)

    def get(self, n: int, w: Sequence[int], m: int) -> Fraction:
        return self.entries.get((n, tuple(w), m), Fraction(0))

    def row(self, m: int) -> dict:
        return {(n, w): c for (n, w, mm), c in self.entries.items() if mm == m}

    def symmetric(self) -> tuple[bool, tuple | None]:
        for (n, w, m), c in self.entries.items():
            if m == 0:
                continue
            if self.entries.get((m, w, n), 0) != c:
                return False, (n, w, m)
        return True, None

    def sorted_entries(self):
        return sorted(self.entries.items(), key=lambda kv: (kv[0][0] * kv[0][2], kv[0][0], kv[0][1], kv[0][2]))

    def to_json(self) -> dict:
        return {
            "mu": self.mu,
            "Q": self.Q,
            "k2": self.k2,
            "den": self.den,
            "bound": self.bound,
            "entries": [{"n": n, "w": list(w), "m": m, "c": str(c)} for (n, w, m), c in self.sorted_entries()],
        }


def lift_table(phi: FourierSeries, mu: int, bound: int) -> LiftTable:
    """All lift coefficients with n m <= bound, plus the f(0,0) E_k boundary row."""
    k, De, Q = _check_hecke(phi, 1)
    if gcd(mu, Q) != 1:
        raise ValueError(f"mu = {mu} must be a unit mod {Q}")
    entries: dict = {}
    for n in range(1, bound + 1):
        if (n - mu) % Q:
            continue
        for m in range(1, bound // n + 1):
            if (m - mu) % Q:
                continue
            cands = set()
            for a in divisors(gcd(n, m)):
                layer = phi.layers.get(n * m * De // (a * a), {}) if (n * m * De) % (a * a) == 0 else {}
                cands.update(tuple(a * x for x in w) for w in layer)
            for w in sorted(cands):
                c = lift_coefficient(phi, n, w, m, mu)
                if c:
                    entries[(n, w, m)] = c
    f00 = phi.terms.get((0, (0,) * phi.rank), 0)
    if f00:
        if k < 4 or k % 2:
            raise ShapeError("boundary Eisenstein row needs even weight k >= 4")
        Ek = eisenstein_q(k, 24 * bound)
        for n24, c in Ek.terms.items():
            entries[(n24 // 24, (0,) * phi.rank, 0)] = f00 * c
    return LiftTable(mu, Q, phi.shape.k2, phi.den, bound, entries)


def phi2_closed_form(n: int, l: Sequence, m: int) -> int:
    """sigma_1(gcd(n, m, 2l)) prod (-4 / 2 l_i) on n m = sum l_i^2, else 0."""
    if n < 1 or m < 1 or n % 2 == 0 or m % 2 == 0:
        raise ValueError("n and m must be odd and positive")
    l2 = [Fraction(x) * 2 for x in l]
    if len(l2) != 4 or any(x.denominator != 1 or x.numerator % 2 == 0 for x in l2):
        raise ValueError("each 2 l_i must be an odd integer")
    l2 = [int(x) for x in l2]
    if 4 * n * m != sum(x * x for x in l2):
        return 0
    g = gcd(n, m, *l2)
    sign = 1
    for x in l2:
        sign *= kronecker(-4, x)
    return divisor_sigma(1, g) * sign
