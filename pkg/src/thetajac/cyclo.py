"""Exact arithmetic in the cyclotomic field Q(zeta_M).

Elements are coordinate vectors on the power basis 1, z, ..., z^(phi(M)-1)
reduced modulo the M-th cyclotomic polynomial.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from sympy import Poly, QQ, cyclotomic_poly, factorint, invert, symbols

from .arith import kronecker

_x = symbols("x")


class CycField:
    def __init__(self, M: int):
        if M < 1:
            raise ValueError("conductor must be positive")
        self.M = M
        phi = Poly(cyclotomic_poly(M, _x), _x)
        self._phi_poly = phi
        coeffs = [int(c) for c in reversed(phi.all_coeffs())]
        self.deg = len(coeffs) - 1
        self._phi = coeffs
        self._powers = [self._reduce([0] * k + [1]) for k in range(max(M, 2 * self.deg))]

    def __repr__(self) -> str:
        return f"Q(zeta_{self.M})"

    def _reduce(self, p: list) -> tuple[Fraction, ...]:
        p = [Fraction(c) for c in p]
        d = self.deg
        for i in range(len(p) - 1, d - 1, -1):
            c = p[i]
            if c:
                for j in range(d + 1):
                    p[i - d + j] -= c * self._phi[j]
        p = p[:d] + [Fraction(0)] * (d - len(p))
        return tuple(p)

    def element(self, coeffs) -> "Cyc":
        return Cyc(self, self._reduce(list(coeffs)))

    def __call__(self, q) -> "Cyc":
        return Cyc(self, (Fraction(q),) + (Fraction(0),) * (self.deg - 1))

    def zeta(self, j: int = 1) -> "Cyc":
        return Cyc(self, self._powers[j % self.M])

    def root(self, num: int, den: int) -> "Cyc":
        """exp(2 pi i num / den); den must divide M."""
        if self.M % den:
            raise ValueError(f"zeta_{den} is not in Q(zeta_{self.M})")
        return self.zeta(num * (self.M // den))

    def sqrt(self, n: int) -> "Cyc":
        """Positive square root of a positive integer via quadratic Gauss sums."""
        if n < 1:
            raise ValueError("need a positive integer")
        out = self(1)
        for p, e in factorint(n).items():
            out = out * self(p ** (e // 2))
            if e % 2:
                out = out * self._sqrt_prime(p)
        return out

    def _sqrt_prime(self, p: int) -> "Cyc":
        if p == 2:
            return self.root(1, 8) + self.root(-1, 8)
        g = self(0)
        for a in range(1, p):
            g = g + self.root(a, p) * self(kronecker(a, p))
        return g if p % 4 == 1 else g * self.root(-1, 4)


class Cyc:
    __slots__ = ("F", "c")

    def __init__(self, F: CycField, c: tuple[Fraction, ...]):
        self.F = F
        self.c = c

    def __add__(self, o: "Cyc") -> "Cyc":
        return Cyc(self.F, tuple(a + b for a, b in zip(self.c, o.c)))

    def __sub__(self, o: "Cyc") -> "Cyc":
        return Cyc(self.F, tuple(a - b for a, b in zip(self.c, o.c)))

    def __neg__(self) -> "Cyc":
        return Cyc(self.F, tuple(-a for a in self.c))

    def __mul__(self, o: "Cyc") -> "Cyc":
        d = self.F.deg
        acc = [Fraction(0)] * d
        pw = self.F._powers
        for i, a in enumerate(self.c):
            if not a:
                continue
            for j, b in enumerate(o.c):
                if b:
                    ab = a * b
                    for t, v in enumerate(pw[i + j]):
                        if v:
                            acc[t] += ab * v
        return Cyc(self.F, tuple(acc))

    def conj(self) -> "Cyc":
        acc = self.F(0)
        for j, a in enumerate(self.c):
            if a:
                acc = acc + self.F.zeta(-j) * self.F(a)
        return acc

    def inverse(self) -> "Cyc":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        p = Poly([QQ(a.numerator, a.denominator) for a in reversed(self.c)], _x, domain=QQ)
        inv = invert(p, self.F._phi_poly.set_domain(QQ))
        coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(Poly(inv, _x).all_coeffs())]
        return self.F.element(coeffs)

    def __truediv__(self, o: "Cyc") -> "Cyc":
        return self * o.inverse()

    def is_zero(self) -> bool:
        return not any(self.c)

    def __eq__(self, o) -> bool:
        return isinstance(o, Cyc) and self.F.M == o.F.M and self.c == o.c

    def __hash__(self) -> int:
        return hash((self.F.M, self.c))

    def rational(self) -> Fraction | None:
        return self.c[0] if not any(self.c[1:]) else None

    def root_exponent(self) -> int | None:
        """j with self = zeta_M^j, or None."""
        for j in range(self.F.M):
            if self.F._powers[j] == self.c:
                return j
        return None

    def __repr__(self) -> str:
        terms = [f"{a}*z^{i}" if i else str(a) for i, a in enumerate(self.c) if a]
        return " + ".join(terms) or "0"


@lru_cache(maxsize=None)
def field(M: int) -> CycField:
    return CycField(M)


def squarefree_part(n: int) -> int:
    out = 1
    for p, e in factorint(n).items():
        if e % 2:
            out *= p
    return out
