"""Independent reference computations used to cross-check the engine.

Nothing here reuses the engine's algorithms: products are expanded
factor by factor, lattice points come from a plain box search, and the
Hecke operator is summed over (a, b, d) with complex roots of unity.
"""

from __future__ import annotations

import cmath
import itertools
import math
from fractions import Fraction
from typing import Sequence

from . import linalg as la
from .lattice import Lattice

Poly = dict  # (q-degree j, r-degree i) -> int


def _times_binomial(p: Poly, sign: int, a: int, b: int, J: int) -> Poly:
    """p * (1 + sign q^a r^b), dropping q-degrees above J."""
    out = dict(p)
    for (j, i), c in p.items():
        if j + a <= J:
            k = (j + a, i + b)
            out[k] = out.get(k, 0) + sign * c
    return {k: c for k, c in out.items() if c}


def triple_product(N24: int) -> dict[tuple[int, tuple[int]], int]:
    """-q^(1/8) r^(-1/2) prod (1 - q^(n-1) r)(1 - q^n / r)(1 - q^n), keys (n24, (w,)) with den 2."""
    J = (N24 - 3) // 24
    p: Poly = {(0, 0): -1}
    for n in range(1, J + 2):
        p = _times_binomial(p, -1, n - 1, 1, J)
        p = _times_binomial(p, -1, n, -1, J)
        p = _times_binomial(p, -1, n, 0, J)
    return {(3 + 24 * j, (2 * i - 1,)): c for (j, i), c in p.items()}


def quintuple_product(N24: int) -> dict[tuple[int, tuple[int]], int]:
    """q^(1/24) r^(-1/2) prod (1+q^(n-1) r)(1+q^n/r)(1-q^(2n-1) r^2)(1-q^(2n-1)/r^2)(1-q^n)."""
    J = (N24 - 1) // 24
    p: Poly = {(0, 0): 1}
    for n in range(1, J + 2):
        p = _times_binomial(p, 1, n - 1, 1, J)
        p = _times_binomial(p, 1, n, -1, J)
        p = _times_binomial(p, -1, 2 * n - 1, 2, J)
        p = _times_binomial(p, -1, 2 * n - 1, -2, J)
        p = _times_binomial(p, -1, n, 0, J)
    return {(1 + 24 * j, (2 * i - 1,)): c for (j, i), c in p.items()}


def box_vectors(L: Lattice, shift: Sequence | None, bound) -> list[tuple[tuple[Fraction, ...], Fraction]]:
    """All l in shift + L with (l, l) <= bound by exhaustive search over a coordinate box."""
    r = L.rank
    bound = Fraction(bound)
    shift = tuple(Fraction(x) for x in (shift or (0,) * r))
    y0 = L.lattice_coords(shift)
    inv = la.inverse(L.gram_L)
    radius = [math.isqrt(int(bound * inv[i][i]) + 1) + 2 for i in range(r)]
    out = []
    for k in itertools.product(*[range(-R - 1, R + 2) for R in radius]):
        y = tuple(y0[i] + k[i] for i in range(r))
        v = la.matvec(L.basis, y)
        nrm = L.inner(v, v)
        if nrm <= bound:
            out.append((v, nrm))
    return sorted(out)


def dedekind_sum_direct(h: int, k: int) -> Fraction:
    """s(h, k) from the defining sum of sawtooth products."""

    def saw(x: Fraction) -> Fraction:
        return Fraction(0) if x.denominator == 1 else x - math.floor(x) - Fraction(1, 2)

    return sum((saw(Fraction(r, k)) * saw(Fraction(h * r, k)) for r in range(1, k)), Fraction(0))


def eta_exponent_direct(A: Sequence[int]) -> int:
    """Eta multiplier exponent from the Dedekind-sum formula, c reduced to c > 0 by -I."""
    a, b, c, d = A
    if c < 0 or (c == 0 and d < 0):
        # v(-A) relates to v(A) by the weight-1/2 sign: exp(2 pi i 6 / 24)
        return (eta_exponent_direct((-a, -b, -c, -d)) + 6) % 24
    if c == 0:
        return b % 24
    e = Fraction(a + d, c) - 12 * dedekind_sum_direct(d, c) - 3
    return int(e) % 24


def sigma_search(a: int, Q: int, box: int = 60) -> tuple[int, int, int, int]:
    """First matrix found by search with det 1 and congruent to diag(a^-1, a) mod Q."""
    ainv = pow(a, -1, Q) if Q > 1 else 0
    for c in range(0, box):
        if c % Q:
            continue
        for d in range(1, box):
            if (d - a) % Q or math.gcd(c, d) != 1:
                continue
            for aa in range(-box, box):
                if (aa - ainv) % Q:
                    continue
                if c == 0:
                    if aa * d == 1:
                        return (aa, 0, 0, d)
                    continue
                if (aa * d - 1) % c == 0:
                    b = (aa * d - 1) // c
                    if b % Q == 0:
                        return (aa, b, c, d)
    raise ValueError("no lift found in the search box")


def hecke_triple_sum(phi, m: int, N_out: int) -> dict:
    """m^-1 sum over a d = m, b mod d of a^k v(sigma_a) phi((a tau + b Q)/d, a z).

    Summed in complex floating point and rounded; a rounding distance above
    1e-6 raises instead of guessing.
    """
    k = phi.shape.k2 // 2
    De = phi.shape.D % 24 or 24
    Q = 24 // De
    den = 1
    for c in phi.terms.values():
        den = math.lcm(den, Fraction(c).denominator)
    acc: dict = {}
    for a in range(1, m + 1):
        if m % a:
            continue
        d = m // a
        e = eta_exponent_direct(sigma_search(a, Q)) * De % 24
        v = cmath.exp(2j * cmath.pi * e / 24)
        for b in range(d):
            phases: dict = {}
            for (n24, w), c in phi.terms.items():
                n_out = Fraction(a * n24, d)
                if n_out > N_out:
                    continue
                r = (n24 * b * Q) % (24 * d)
                if r not in phases:
                    phases[r] = cmath.exp(2j * cmath.pi * r / (24 * d))
                key = (n_out, tuple(a * x for x in w))
                acc[key] = acc.get(key, 0) + (a**k) * v * phases[r] * float(c * den)
    out = {}
    for (n_out, w), z in acc.items():
        near = round(z.real)
        if abs(z - near) > 1e-6:
            raise ArithmeticError(f"non-integral raw sum at {(n_out, w)}: {z}")
        if near == 0:
            continue
        if n_out.denominator != 1:
            raise ArithmeticError(f"non-integral exponent survives at {(n_out, w)}")
        out[(int(n_out), w)] = Fraction(near, m * den)
    return out
