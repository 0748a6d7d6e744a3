"""Named theta-products, theta/eta quotients and lifting inputs.

Every builder takes its integer arguments followed by the target precision
N24 and returns a series truncated exactly at N24.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .arith import eisenstein_q
from .lattice import Lattice, build_root, direct_power, discriminant_group, rescale
from .series import (
    FourierSeries,
    eta_quotient,
    gen_basic,
    lattice_theta,
    q_rescale,
    qseries_to_fourier,
    relabel,
    substitute,
    tensor,
    tensor_power,
)


def _exact(phi: FourierSeries, N24: int) -> FourierSeries:
    return phi.truncate(N24) if phi.prec > N24 else phi


def _over_eta(phi_at: Callable[[int], FourierSeries], p: int, N24: int) -> FourierSeries:
    """phi * eta^p with enough input precision to return exactly N24."""
    phi = phi_at(N24 + max(-p, 0))
    return _exact(eta_quotient(phi, p), N24)


@lru_cache(maxsize=None)
def theta(N24: int) -> FourierSeries:
    return gen_basic("theta", N24)


@lru_cache(maxsize=None)
def theta32(N24: int) -> FourierSeries:
    return gen_basic("theta32", N24)


@lru_cache(maxsize=None)
def eta(N24: int) -> FourierSeries:
    return gen_basic("eta", N24)


def _a_embedding(m: int) -> list[list[int]]:
    """z_i for i <= m and z_{m+1} = z_1 + ... + z_m (odd theta absorbs the sign)."""
    return [[int(i == j) for j in range(m)] for i in range(m)] + [[1] * m]


@lru_cache(maxsize=None)
def thetamA1(m: int, N24: int) -> FourierSeries:
    _check(m >= 1, "m >= 1")
    return tensor_power(theta(N24), m, cap=N24)


@lru_cache(maxsize=None)
def thetaD(m: int, N24: int) -> FourierSeries:
    _check(m >= 1, "m >= 1")
    return relabel(thetamA1(m, N24), build_root("D", m), 1)


@lru_cache(maxsize=None)
def thetaA(m: int, N24: int) -> FourierSeries:
    _check(m >= 1, "m >= 1")
    return substitute(thetamA1(m + 1, N24), _a_embedding(m), build_root("A", m), 1)


@lru_cache(maxsize=None)
def _theta32_power(m: int, N24: int) -> FourierSeries:
    return tensor_power(theta32(N24), m, cap=N24)


@lru_cache(maxsize=None)
def thetaA3(m: int, N24: int) -> FourierSeries:
    _check(m >= 1, "m >= 1")
    return substitute(_theta32_power(m + 1, N24), _a_embedding(m), rescale(build_root("A", m), 3), 1)


@lru_cache(maxsize=None)
def thetaD3(m: int, N24: int) -> FourierSeries:
    _check(m >= 1, "m >= 1")
    return relabel(_theta32_power(m, N24), rescale(build_root("D", m), 3), 1)


_H = Fraction(1, 2)
D4_ROWS = {
    2: [[-_H, _H, _H, _H], [_H, -_H, _H, _H], [_H, _H, -_H, _H], [_H, _H, _H, -_H]],
    3: [[_H, _H, _H, _H], [_H, _H, -_H, -_H], [_H, -_H, -_H, _H], [_H, -_H, _H, -_H]],
}


@lru_cache(maxsize=None)
def thetaD4(i: int, N24: int) -> FourierSeries:
    return substitute(thetamA1(4, N24), D4_ROWS[i], build_root("D", 4), 1)


@lru_cache(maxsize=None)
def thetaD2_1(N24: int) -> FourierSeries:
    target = direct_power(build_root("A", 1), 2)
    return substitute(thetamA1(2, N24), [[1, 1], [1, -1]], target, 1)


@lru_cache(maxsize=None)
def sigmaA2(N24: int) -> FourierSeries:
    return _over_eta(lambda n: thetaA(2, n), -1, N24)


@lru_cache(maxsize=None)
def quark(a: int, b: int, N24: int) -> FourierSeries:
    _check(a >= 1 and b >= 1, "a, b >= 1")

    def raw(n):
        return substitute(thetamA1(3, n), [[a], [b], [a + b]], build_root("A", 1), a * a + a * b + b * b)

    return _over_eta(raw, -1, N24)


@lru_cache(maxsize=None)
def latTheta(L: Lattice, i: int, N24: int) -> FourierSeries:
    dg = discriminant_group(L)
    _check(0 <= i < dg.order, f"0 <= index < {dg.order}")
    return lattice_theta(L, i, N24)


@lru_cache(maxsize=None)
def thetaE6(N24: int) -> FourierSeries:
    E6 = build_root("E", 6)
    return lattice_theta(E6, 1, N24) - lattice_theta(E6, 2, N24)


@lru_cache(maxsize=None)
def thetaE8(N24: int) -> FourierSeries:
    return lattice_theta(build_root("E", 8), 0, N24)


@lru_cache(maxsize=None)
def eisenstein(k: int, N24: int) -> FourierSeries:
    return qseries_to_fourier(eisenstein_q(k, N24), k2=2 * k, D=0)


def _kappa(m1: int, m2: int, N24: int) -> FourierSeries:
    # eta^-1 is a pure q-series, so it can ride on the smaller tensor factor
    first = _exact(eta_quotient(thetaA(m1, N24 + 1), -1), N24)
    out = tensor(first, thetaA(m2, N24), cap=N24)
    return out.with_shape(holo=out.scan_holomorphic())


@lru_cache(maxsize=None)
def kappa2A4(N24: int) -> FourierSeries:
    return _kappa(4, 4, N24)


@lru_cache(maxsize=None)
def kappaA4A6(N24: int) -> FourierSeries:
    return _kappa(4, 6, N24)


def deltain(N24: int) -> FourierSeries:
    return _over_eta(theta, 9, N24)


def k4in(N24: int) -> FourierSeries:
    return _over_eta(lambda n: thetamA1(2, n), 6, N24)


def tower3in(N24: int) -> FourierSeries:
    return _over_eta(lambda n: thetamA1(3, n), 3, N24)


def phi2in(N24: int) -> FourierSeries:
    return thetamA1(4, N24)


def delta1in(N24: int) -> FourierSeries:
    return _over_eta(theta, 1, N24)


def nabla3in(N24: int) -> FourierSeries:
    eta2 = q_rescale(eta(N24 // 2 + 1), 2)
    quartic = eta2 * eta2 * eta2 * eta2
    return _exact(eta(N24) * quartic * theta(N24), N24)


class ArgumentError(ValueError):
    pass


def _check(cond: bool, what: str) -> None:
    if not cond:
        raise ArgumentError(f"argument out of range: need {what}")


@dataclass(frozen=True)
class Entry:
    name: str
    arity: int
    build: Callable[..., FourierSeries]
    summary: str


REGISTRY: dict[str, Entry] = {
    e.name: e
    for e in [
        Entry("theta", 0, theta, "odd Jacobi theta series, index 1/2 on A1"),
        Entry("theta32", 0, theta32, "quintuple-product theta series on <6>"),
        Entry("eta", 0, eta, "Dedekind eta"),
        Entry("E", 1, eisenstein, "Eisenstein series E_k, constant term 1"),
        Entry("thetaD", 1, thetaD, "theta-product on D_m"),
        Entry("thetaD3", 1, thetaD3, "theta32-product on D_m(3)"),
        Entry("thetaA", 1, thetaA, "theta-product on A_m"),
        Entry("thetaA3", 1, thetaA3, "theta32-product on A_m(3)"),
        Entry("thetamA1", 1, thetamA1, "tensor power of theta on mA1"),
        Entry("thetaD4_2", 0, lambda N: thetaD4(2, N), "second theta-product on D4"),
        Entry("thetaD4_3", 0, lambda N: thetaD4(3, N), "third theta-product on D4"),
        Entry("thetaD2_1", 0, thetaD2_1, "theta(z1+z2) theta(z1-z2) on 2A1"),
        Entry("sigmaA2", 0, sigmaA2, "singular-weight form on A2"),
        Entry("quark", 2, quark, "theta-quark theta(az) theta(bz) theta((a+b)z) / eta"),
        Entry("thetaE6", 0, thetaE6, "singular-weight form on E6"),
        Entry("thetaE8", 0, thetaE8, "theta series of E8"),
        Entry("kappa2A4", 0, kappa2A4, "critical-weight cusp form on 2A4"),
        Entry("kappaA4A6", 0, kappaA4A6, "critical-weight cusp form on A4+A6"),
        Entry("deltain", 0, deltain, "theta * eta^9"),
        Entry("k4in", 0, k4in, "(theta (x) theta) * eta^6"),
        Entry("tower3in", 0, tower3in, "eta^3 times theta on 3A1"),
        Entry("phi2in", 0, phi2in, "theta on 4A1"),
        Entry("delta1in", 0, delta1in, "eta * theta"),
        Entry("nabla3in", 0, nabla3in, "eta(tau) eta(2tau)^4 theta"),
    ]
}


def build(name: str, args: tuple[int, ...], N24: int) -> FourierSeries:
    entry = REGISTRY.get(name)
    if entry is None:
        raise KeyError(name)
    if len(args) != entry.arity:
        raise ArgumentError(f"{name} takes {entry.arity} argument(s), got {len(args)}")
    return _exact(entry.build(*args, N24), N24)


@dataclass(frozen=True)
class Expectation:
    """Weight, index, character and class stated for a registry form."""

    expr: str
    k2: int
    t: Fraction
    D: int
    label: str | None


def expectations() -> list[Expectation]:
    out = [
        Expectation("theta", 1, Fraction(1, 2), 3, "singular"),
        Expectation("theta32", 1, Fraction(1, 2), 1, "singular"),
        Expectation("eta", 1, Fraction(0), 1, None),
        Expectation("thetaD4_2", 4, Fraction(1), 12, "singular"),
        Expectation("thetaD4_3", 4, Fraction(1), 12, "singular"),
        Expectation("thetaD2_1", 2, Fraction(1), 6, "singular"),
        Expectation("sigmaA2", 2, Fraction(1), 8, "singular"),
        Expectation("thetaE6", 6, Fraction(1), 16, "singular"),
        Expectation("thetaE8", 8, Fraction(1), 0, "singular"),
        Expectation("deltain", 10, Fraction(1, 2), 12, "cusp"),
        Expectation("k4in", 8, Fraction(1, 2), 12, "cusp"),
        Expectation("tower3in", 6, Fraction(1, 2), 12, "cusp"),
        Expectation("phi2in", 4, Fraction(1, 2), 12, "singular"),
        Expectation("delta1in", 2, Fraction(1, 2), 4, "cusp"),
        Expectation("nabla3in", 6, Fraction(1, 2), 12, "cusp"),
        Expectation("kappa2A4", 9, Fraction(1), 5, "cusp"),
        Expectation("kappaA4A6", 11, Fraction(1), 11, "cusp"),
    ]
    for m in range(1, 9):
        out.append(Expectation(f"thetaD({m})", m, Fraction(1), 3 * m, "singular"))
        out.append(Expectation(f"thetaD3({m})", m, Fraction(1), m, "singular"))
        out.append(Expectation(f"thetamA1({m})", m, Fraction(1, 2), 3 * m, "singular"))
    for m in range(1, 7):
        out.append(Expectation(f"thetaA({m})", m + 1, Fraction(1), 3 * m + 3, "cusp" if m % 2 == 0 else "holomorphic"))
        out.append(Expectation(f"thetaA3({m})", m + 1, Fraction(1), m + 1, "cusp" if m % 2 == 0 else None))
    for a, b in [(1, 1), (1, 2), (2, 1), (2, 3), (1, 3), (1, 4)]:
        label = "cusp" if (a - b) % 3 else "holomorphic"
        out.append(Expectation(f"quark({a},{b})", 2, Fraction(a * a + a * b + b * b), 8, label))
    out.append(Expectation("E(4)", 8, Fraction(0), 0, None))
    return out
