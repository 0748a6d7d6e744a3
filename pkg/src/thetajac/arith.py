"""Exact number-theoretic primitives.

Everything here works on Python integers and :class:`fractions.Fraction`,
so results are exact and the functions are safe to call from any thread.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import Iterable, Mapping, NamedTuple

from sympy import bernoulli as _sympy_bernoulli

Rational = Fraction


class PrecisionError(ValueError):
    """A requested coefficient lies beyond the guaranteed truncation."""


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n) for arbitrary integers a, n."""
    if n == 0:
        return 1 if abs(a) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -1
    twos = 0
    while n % 2 == 0:
        n //= 2
        twos += 1
    if twos:
        if a % 2 == 0:
            return 0
        if twos % 2 == 1 and a % 8 in (3, 5):
            result = -result
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def dedekind_sum(h: int, k: int) -> Fraction:
    """Dedekind sum s(h, k) for k >= 1 and gcd(h, k) = 1, via reciprocity."""
    if k < 1:
        raise ValueError("k must be positive")
    if gcd(h, k) != 1:
        raise ValueError("h and k must be coprime")
    total = Fraction(0)
    sign = 1
    h %= k
    while h:
        total += sign * ((Fraction(h, k) + Fraction(k, h) + Fraction(1, h * k)) / 12 - Fraction(1, 4))
        h, k = k % h, h
        sign = -sign
    return total


class SL2Matrix(NamedTuple):
    a: int
    b: int
    c: int
    d: int

    @classmethod
    def checked(cls, a: int, b: int, c: int, d: int) -> "SL2Matrix":
        if a * d - b * c != 1:
            raise ValueError(f"determinant of ({a},{b};{c},{d}) is not 1")
        return cls(a, b, c, d)

    def __matmul__(self, other: "SL2Matrix") -> "SL2Matrix":  # type: ignore[override]
        a, b, c, d = self
        e, f, g, h = other
        return SL2Matrix(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def inverse(self) -> "SL2Matrix":
        a, b, c, d = self
        return SL2Matrix(d, -b, -c, a)

    def congruent(self, other: Iterable[int], modulus: int) -> bool:
        return all((x - y) % modulus == 0 for x, y in zip(self, other))


IDENTITY = SL2Matrix(1, 0, 0, 1)
T = SL2Matrix(1, 1, 0, 1)
S = SL2Matrix(0, -1, 1, 0)


def eta_multiplier_exponent(A: Iterable[int]) -> int:
    """Return e with v_eta(A) = exp(2 pi i e / 24), e in [0, 24)."""
    a, b, c, d = A
    if a * d - b * c != 1:
        raise ValueError("matrix is not in SL2(Z)")
    if c == 0:
        return b % 24 if d == 1 else (-b - 6) % 24
    if c < 0:
        return (eta_multiplier_exponent((-a, -b, -c, -d)) + 6) % 24
    e = Fraction(a + d, c) - 12 * dedekind_sum(d, c) - 3
    if e.denominator != 1:
        raise ArithmeticError("non-integral eta exponent")  # cannot happen
    return int(e) % 24


def eta_character_sign(D: int, A: Iterable[int]) -> int:
    """Value of v_eta^D(A) when it is known to be +-1."""
    e = (D * eta_multiplier_exponent(A)) % 24
    if e == 0:
        return 1
    if e == 12:
        return -1
    raise ValueError(f"v_eta^{D} is not real on {tuple(A)}")


def sl2_lift_diag(a: int, Q: int) -> SL2Matrix:
    """A matrix in SL2(Z) congruent to diag(a^-1, a) modulo Q."""
    if Q < 1:
        raise ValueError("Q must be positive")
    if gcd(a, Q) != 1:
        raise ValueError(f"gcd({a}, {Q}) != 1")
    if Q == 1 or a % Q == 1:
        return IDENTITY
    delta = a % Q
    g, x, y = _egcd(delta, Q)  # x*delta + y*Q = 1
    a0, b0 = x, -y
    t = (-b0 * pow(delta, -1, Q)) % Q
    return SL2Matrix.checked(a0 + Q * t, b0 + delta * t, Q, delta)


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def divisors(n: int) -> list[int]:
    if n < 1:
        raise ValueError("n must be positive")
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
    return small + large[::-1]


def divisor_sigma(s: int, n: int) -> int:
    return sum(d**s for d in divisors(n))


@lru_cache(maxsize=None)
def bernoulli(k: int) -> Fraction:
    b = _sympy_bernoulli(k)
    return Fraction(int(b.p), int(b.q))


@dataclass(frozen=True)
class QSeries:
    """Truncated q-series; key n24 stands for q^(n24/24)."""

    terms: Mapping[int, Fraction] = field(default_factory=dict)
    prec: int = 0

    def __post_init__(self):
        clean = {n: Fraction(c) for n, c in self.terms.items() if c and n <= self.prec}
        object.__setattr__(self, "terms", clean)

    @property
    def min_support(self) -> int:
        return min(self.terms) if self.terms else self.prec + 1

    def __getitem__(self, n24: int) -> Fraction:
        if n24 > self.prec:
            raise PrecisionError(f"q^{n24}/24 beyond precision {self.prec}")
        return self.terms.get(n24, Fraction(0))

    def __mul__(self, other: "QSeries") -> "QSeries":
        prec = min(self.prec + other.min_support, other.prec + self.min_support)
        out: dict[int, Fraction] = {}
        for n1, c1 in self.terms.items():
            for n2, c2 in other.terms.items():
                n = n1 + n2
                if n <= prec:
                    out[n] = out.get(n, 0) + c1 * c2
        return QSeries(out, prec)

    def __add__(self, other: "QSeries") -> "QSeries":
        out = dict(self.terms)
        for n, c in other.terms.items():
            out[n] = out.get(n, 0) + c
        return QSeries(out, min(self.prec, other.prec))

    def __neg__(self) -> "QSeries":
        return QSeries({n: -c for n, c in self.terms.items()}, self.prec)

    def __sub__(self, other: "QSeries") -> "QSeries":
        return self + (-other)

    def scale(self, c) -> "QSeries":
        return QSeries({n: c * v for n, v in self.terms.items()}, self.prec)

    def truncate(self, prec: int) -> "QSeries":
        if prec > self.prec:
            raise PrecisionError(f"cannot raise precision {self.prec} to {prec}")
        return QSeries(self.terms, prec)

    def rescale(self, c: int) -> "QSeries":
        """Key map n24 -> c * n24 (tau -> c tau)."""
        if c < 1:
            raise ValueError("rescale factor must be positive")
        return QSeries({c * n: v for n, v in self.terms.items()}, c * self.prec + c - 1)


def eisenstein_q(k: int, N24: int) -> QSeries:
    """E_k with constant term 1, truncated at q^(N24/24)."""
    if k < 4 or k % 2:
        raise ValueError(f"unsupported weight {k}: need even k >= 4")
    factor = Fraction(-2 * k) / bernoulli(k)
    terms = {0: Fraction(1)}
    for n in range(1, N24 // 24 + 1):
        terms[24 * n] = factor * divisor_sigma(k - 1, n)
    return QSeries(terms, N24)


def euler_coefficients(degree: int) -> list[int]:
    """Coefficients of prod_{n>=1} (1 - q^n) up to q^degree (pentagonal numbers)."""
    out = [0] * (degree + 1)
    j = 0
    while True:
        hit = False
        for m in (j, -j) if j else (0,):
            g = m * (3 * m - 1) // 2
            if g <= degree:
                out[g] = -1 if m % 2 else 1
                hit = True
        if not hit:
            break
        j += 1
    return out


def power_series_power(f: list, alpha, degree: int) -> list[Fraction]:
    """f^alpha for a power series with f[0] = 1 (J.C.P. Miller recurrence)."""
    if f[0] != 1:
        raise ValueError("constant term must be 1")
    f = list(f) + [0] * max(0, degree + 1 - len(f))
    g = [Fraction(1)] + [Fraction(0)] * degree
    for n in range(1, degree + 1):
        acc = Fraction(0)
        for k in range(1, n + 1):
            if f[k]:
                acc += ((alpha + 1) * k - n) * f[k] * g[n - k]
        g[n] = acc / n
    return g


def eta_power(p: int, N24: int) -> QSeries:
    """eta(tau)^p truncated at N24; p may be negative."""
    if N24 < p:
        return QSeries({}, N24)
    degree = (N24 - p) // 24
    coeffs = power_series_power(euler_coefficients(degree), p, degree)
    return QSeries({p + 24 * j: c for j, c in enumerate(coeffs)}, N24)
