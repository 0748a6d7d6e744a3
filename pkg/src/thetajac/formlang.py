"""A small expression language for building forms by formula.

Grammar (whitespace is insignificant)::

    expr   := ["-"] form { ("+" | "-") form }
    form   := term { ("*" | "(x)") term }
    term   := atom { "/eta^" INT | "*eta^" INT }
    atom   := NAME [ "(" args ")" ] | "(" expr ")"

Registry names take integer arguments.  The structural names take typed
arguments: ``latTheta(LAT, INT)``, ``pull(expr, VEC)``, ``sub(expr, MAT)``
and ``q2(expr)``.  Lattice literals are ``A(m)``, ``D(m)``, ``E(m)``,
``scale(LAT, RAT)``, ``sum(LAT, LAT)`` and ``perp(LAT, VEC)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from . import forms
from .lattice import Lattice, build_root, direct_sum, discriminant_group, orth_complement, rescale
from .series import (
    FourierSeries,
    add,
    eta_quotient,
    mul,
    pullback,
    pullback_perp,
    q_rescale,
    substitute,
    tensor,
)


class FormSyntaxError(ValueError):
    def __init__(self, message: str, offset: int, expected: tuple[str, ...] = ()):
        self.offset = offset
        self.expected = tuple(sorted(set(expected)))
        extra = f"; expected one of {', '.join(self.expected)}" if self.expected else ""
        super().__init__(f"{message} at offset {offset}{extra}")


# AST ---------------------------------------------------------------------------

Span = tuple[int, int]


@dataclass(frozen=True)
class Atom:
    name: str
    args: tuple[int, ...] = ()
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class LatLit:
    kind: str  # "A", "D", "E", "scale", "sum", "perp"
    args: tuple = ()
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class LatTheta:
    lattice: LatLit
    index: int
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Mul:
    left: "Expr"
    right: "Expr"
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Tensor:
    left: "Expr"
    right: "Expr"
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class EtaPow:
    expr: "Expr"
    power: int
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Sub:
    expr: "Expr"
    matrix: tuple[tuple[Fraction, ...], ...]
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Pull:
    expr: "Expr"
    vector: tuple[Fraction, ...]
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class QRescale:
    expr: "Expr"
    factor: int
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Add:
    left: "Expr"
    right: "Expr"
    sign: int = 1
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Neg:
    expr: "Expr"
    span: Span = field(default=(0, 0), compare=False)


Expr = Union[Atom, LatTheta, Mul, Tensor, EtaPow, Sub, Pull, QRescale, Add, Neg]

STRUCTURAL = ("latTheta", "pull", "sub", "q2")
LATTICE_KINDS = ("A", "D", "E", "scale", "sum", "perp")

# minimum values of integer arguments, checked at parse time
_RANGES: dict[str, tuple[int, ...]] = {
    "thetaD": (1,), "thetaD3": (1,), "thetaA": (1,), "thetaA3": (1,), "thetamA1": (1,),
    "quark": (1, 1), "E": (4,),
}


# tokens ----------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<tensor>\(x\))|(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[()\[\],*/^+\-]))")


@dataclass(frozen=True)
class Token:
    kind: str  # "INT", "NAME", an operator, or "END"
    text: str
    start: int
    end: int


def tokenize(src: str) -> list[Token]:
    out = []
    pos = 0
    while True:
        while pos < len(src) and src[pos].isspace():
            pos += 1
        if pos >= len(src):
            break
        m = _TOKEN.match(src, pos)
        if m is None or m.end() == pos:
            raise FormSyntaxError(f"unexpected character {src[pos]!r}", pos)
        start = m.start(m.lastgroup)
        text = m.group(m.lastgroup)
        kind = {"tensor": "(x)", "int": "INT", "name": "NAME"}.get(m.lastgroup, text)
        out.append(Token(kind, text, start, m.end()))
        pos = m.end()
    out.append(Token("END", "", len(src), len(src)))
    return out


# parser ------------------------------------------------------------------------

class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.toks = tokenize(src)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def fail(self, expected, what: str | None = None):
        t = self.tok
        msg = what or ("unexpected end of input" if t.kind == "END" else f"unexpected {t.text!r}")
        raise FormSyntaxError(msg, t.start, tuple(expected))

    def expect(self, kind: str) -> Token:
        if self.tok.kind != kind:
            self.fail([kind])
        t = self.tok
        self.i += 1
        return t

    def accept(self, kind: str) -> Token | None:
        if self.tok.kind == kind:
            t = self.tok
            self.i += 1
            return t
        return None

    # numbers
    def integer(self) -> int:
        neg = self.accept("-")
        if self.tok.kind != "INT":
            self.fail(["INT"])
        v = int(self.expect("INT").text)
        return -v if neg else v

    def rational(self) -> Fraction:
        num = self.integer()
        if self.accept("/"):
            den = self.integer()
            if den == 0:
                raise FormSyntaxError("zero denominator", self.toks[self.i - 1].start)
            return Fraction(num, den)
        return Fraction(num)

    def vector(self) -> tuple[Fraction, ...]:
        self.expect("[")
        out = [self.rational()]
        while self.accept(","):
            out.append(self.rational())
        self.expect("]")
        return tuple(out)

    def matrix(self) -> tuple[tuple[Fraction, ...], ...]:
        start = self.tok.start
        self.expect("[")
        rows = [self.vector()]
        while self.accept(","):
            rows.append(self.vector())
        self.expect("]")
        if len({len(r) for r in rows}) != 1:
            raise FormSyntaxError("ragged matrix", start)
        return tuple(rows)

    # grammar
    def expr(self) -> Expr:
        start = self.tok.start
        if self.accept("-"):
            node: Expr = Neg(self.form(), (start, self.toks[self.i - 1].end))
        else:
            node = self.form()
        while self.tok.kind in ("+", "-"):
            sign = 1 if self.expect(self.tok.kind).kind == "+" else -1
            right = self.form()
            node = Add(node, right, sign, (start, self.toks[self.i - 1].end))
        return node

    def form(self) -> Expr:
        start = self.tok.start
        node = self.term()
        while True:
            if self.tok.kind == "(x)":
                self.i += 1
                node = Tensor(node, self.term(), (start, self.toks[self.i - 1].end))
            elif self.tok.kind == "*":
                self.i += 1
                node = Mul(node, self.term(), (start, self.toks[self.i - 1].end))
            else:
                return node

    def _eta_suffix(self) -> bool:
        t1, t2 = self.peek(1), self.peek(2)
        return t1.kind == "NAME" and t1.text == "eta" and t2.kind == "^"

    def term(self) -> Expr:
        start = self.tok.start
        node = self.atom()
        while self.tok.kind in ("*", "/"):
            op = self.tok.kind
            if op == "*" and not self._eta_suffix():
                break
            self.i += 1
            if not (self.tok.kind == "NAME" and self.tok.text == "eta"):
                self.fail(["eta^"])
            self.i += 1
            self.expect("^")
            p = self.integer()
            node = EtaPow(node, p if op == "*" else -p, (start, self.toks[self.i - 1].end))
        return node

    def atom(self) -> Expr:
        t = self.tok
        if t.kind == "(":
            self.i += 1
            node = self.expr()
            self.expect(")")
            return node
        if t.kind != "NAME":
            self.fail(["NAME", "("])
        name = t.text
        self.i += 1
        if name == "latTheta":
            self.expect("(")
            lat = self.lattice()
            self.expect(",")
            idx = self.integer()
            self.expect(")")
            order = discriminant_group(eval_lattice(lat)).order
            if not 0 <= idx < order:
                raise FormSyntaxError(f"index {idx} outside 0..{order - 1}", t.start)
            return LatTheta(lat, idx, (t.start, self.toks[self.i - 1].end))
        if name in ("pull", "sub", "q2"):
            self.expect("(")
            inner = self.expr()
            if name == "q2":
                self.expect(")")
                return QRescale(inner, 2, (t.start, self.toks[self.i - 1].end))
            self.expect(",")
            if name == "pull":
                v = self.vector()
                self.expect(")")
                return Pull(inner, v, (t.start, self.toks[self.i - 1].end))
            M = self.matrix()
            self.expect(")")
            return Sub(inner, M, (t.start, self.toks[self.i - 1].end))
        entry = forms.REGISTRY.get(name)
        if entry is None:
            raise FormSyntaxError(f"unknown name {name!r}", t.start, tuple(sorted(forms.REGISTRY) + list(STRUCTURAL)))
        args: list[int] = []
        if entry.arity:
            self.expect("(")
            args.append(self.integer())
            while len(args) < entry.arity:
                self.expect(",")
                args.append(self.integer())
            if self.tok.kind == ",":
                raise FormSyntaxError(f"{name} takes {entry.arity} argument(s)", self.tok.start, (")",))
            self.expect(")")
        elif self.tok.kind == "(" and self.peek().kind in ("INT", "-"):
            raise FormSyntaxError(f"{name} takes no arguments", self.tok.start)
        for a, lo in zip(args, _RANGES.get(name, ())):
            if a < lo:
                raise FormSyntaxError(f"argument {a} of {name} must be >= {lo}", t.start)
        if name == "E" and args[0] % 2:
            raise FormSyntaxError("E(k) needs even k", t.start)
        return Atom(name, tuple(args), (t.start, self.toks[self.i - 1].end))

    def lattice(self) -> LatLit:
        t = self.tok
        if t.kind != "NAME" or t.text not in LATTICE_KINDS:
            self.fail(LATTICE_KINDS)
        self.i += 1
        self.expect("(")
        if t.text in ("A", "D", "E"):
            m = self.integer()
            args: tuple = (m,)
            if m < 1 or (t.text == "E" and m not in (6, 7, 8)):
                raise FormSyntaxError(f"no root lattice {t.text}{m}", t.start)
        elif t.text == "scale":
            L = self.lattice()
            self.expect(",")
            c = self.rational()
            if c <= 0:
                raise FormSyntaxError("scale factor must be positive", t.start)
            args = (L, c)
        elif t.text == "sum":
            L = self.lattice()
            self.expect(",")
            args = (L, self.lattice())
        else:
            L = self.lattice()
            self.expect(",")
            args = (L, self.vector())
        self.expect(")")
        return LatLit(t.text, args, (t.start, self.toks[self.i - 1].end))


def parse_form(src: str) -> Expr:
    p = _Parser(src)
    node = p.expr()
    if p.tok.kind != "END":
        p.fail(["END", "*", "(x)", "+", "-"])
    return node


def parse_lattice(src: str) -> LatLit:
    p = _Parser(src)
    node = p.lattice()
    if p.tok.kind != "END":
        p.fail(["END"])
    return node


# printer -----------------------------------------------------------------------

def _rat(x: Fraction) -> str:
    return str(x)


def _vec(v) -> str:
    return "[" + ",".join(_rat(x) for x in v) + "]"


def print_lattice(L: LatLit) -> str:
    if L.kind in ("A", "D", "E"):
        return f"{L.kind}({L.args[0]})"
    if L.kind == "scale":
        return f"scale({print_lattice(L.args[0])},{_rat(L.args[1])})"
    if L.kind == "sum":
        return f"sum({print_lattice(L.args[0])},{print_lattice(L.args[1])})"
    return f"perp({print_lattice(L.args[0])},{_vec(L.args[1])})"


_CALLS = (Atom, LatTheta, Sub, Pull, QRescale)


def print_form(e: Expr) -> str:
    if isinstance(e, Atom):
        return e.name + (f"({','.join(map(str, e.args))})" if e.args else "")
    if isinstance(e, LatTheta):
        return f"latTheta({print_lattice(e.lattice)},{e.index})"
    if isinstance(e, Sub):
        return f"sub({print_form(e.expr)},[{','.join(_vec(r) for r in e.matrix)}])"
    if isinstance(e, Pull):
        return f"pull({print_form(e.expr)},{_vec(e.vector)})"
    if isinstance(e, QRescale):
        return f"q2({print_form(e.expr)})"
    if isinstance(e, EtaPow):
        inner = print_form(e.expr)
        if not isinstance(e.expr, _CALLS + (EtaPow,)):
            inner = f"({inner})"
        return f"{inner}*eta^{e.power}" if e.power >= 0 else f"{inner}/eta^{-e.power}"
    if isinstance(e, (Mul, Tensor)):
        op = "*" if isinstance(e, Mul) else " (x) "
        left = print_form(e.left)
        if isinstance(e.left, (Add, Neg)):
            left = f"({left})"
        right = print_form(e.right)
        if not isinstance(e.right, _CALLS + (EtaPow,)):
            right = f"({right})"
        return f"{left}{op}{right}"
    if isinstance(e, Add):
        right = print_form(e.right)
        if isinstance(e.right, (Add, Neg)):
            right = f"({right})"
        return f"{print_form(e.left)} {'+' if e.sign > 0 else '-'} {right}"
    if isinstance(e, Neg):
        inner = print_form(e.expr)
        if isinstance(e.expr, (Add, Neg)):
            inner = f"({inner})"
        return f"-{inner}"
    raise TypeError(f"not a form expression: {e!r}")


# evaluation --------------------------------------------------------------------

def eval_lattice(L: LatLit) -> Lattice:
    if L.kind in ("A", "D", "E"):
        return build_root(L.kind, L.args[0])
    if L.kind == "scale":
        return rescale(eval_lattice(L.args[0]), L.args[1])
    if L.kind == "sum":
        return direct_sum(eval_lattice(L.args[0]), eval_lattice(L.args[1]))
    M, _ = orth_complement(eval_lattice(L.args[0]), L.args[1])
    return M


def low_bound(e: Expr) -> int:
    """A lower bound for the smallest q-exponent (times 24) of the value."""
    if isinstance(e, (Atom, LatTheta)):
        return 0
    if isinstance(e, EtaPow):
        return low_bound(e.expr) + e.power
    if isinstance(e, (Mul, Tensor)):
        return low_bound(e.left) + low_bound(e.right)
    if isinstance(e, (Sub, Pull, Neg)):
        return low_bound(e.expr)
    if isinstance(e, QRescale):
        return e.factor * low_bound(e.expr)
    if isinstance(e, Add):
        return min(low_bound(e.left), low_bound(e.right))
    raise TypeError(e)


class Evaluator:
    """Evaluates expressions exactly to a target precision, caching subexpressions."""

    def __init__(self):
        self.cache: dict[tuple[str, int], FourierSeries] = {}

    def __call__(self, e: Expr, N24: int) -> FourierSeries:
        key = (print_form(e), N24)
        hit = self.cache.get(key)
        if hit is None:
            hit = self._eval(e, N24)
            if hit.prec > N24:
                hit = hit.truncate(N24)
            self.cache[key] = hit
        return hit

    def _eval(self, e: Expr, N: int) -> FourierSeries:
        if isinstance(e, Atom):
            return forms.build(e.name, e.args, N)
        if isinstance(e, LatTheta):
            return forms.latTheta(eval_lattice(e.lattice), e.index, N)
        if isinstance(e, EtaPow):
            return eta_quotient(self(e.expr, N + max(0, -e.power)), e.power)
        if isinstance(e, (Mul, Tensor)):
            a = self(e.left, N + max(0, -low_bound(e.right)))
            b = self(e.right, N + max(0, -low_bound(e.left)))
            return (mul if isinstance(e, Mul) else tensor)(a, b, cap=N)
        if isinstance(e, Sub):
            return substitute(self(e.expr, N), e.matrix)
        if isinstance(e, Pull):
            phi = self(e.expr, N)
            L = phi.lattice
            if len(e.vector) == L.rank:
                return pullback_perp(phi, e.vector)
            if L.ambient is not None and len(e.vector) == len(L.ambient[1]):
                return pullback_perp(phi, e.vector, ambient=True)
            raise ValueError(f"vector of length {len(e.vector)} does not fit {L}")
        if isinstance(e, QRescale):
            return q_rescale(self(e.expr, -(-N // e.factor)), e.factor)
        if isinstance(e, Add):
            b = self(e.right, N)
            return add(self(e.left, N), b if e.sign > 0 else -b)
        if isinstance(e, Neg):
            return -self(e.expr, N)
        raise TypeError(e)


_DEFAULT = Evaluator()


def eval_form(e: Expr | str, N24: int, evaluator: Evaluator | None = None) -> FourierSeries:
    if isinstance(e, str):
        e = parse_form(e)
    return (evaluator or _DEFAULT)(e, N24)


__all__ = [
    "Add", "Atom", "EtaPow", "Evaluator", "FormSyntaxError", "LatLit", "LatTheta", "Mul", "Neg",
    "Pull", "QRescale", "Sub", "Tensor", "eval_form", "eval_lattice", "parse_form", "parse_lattice",
    "print_form", "print_lattice", "pullback", "tokenize",
]
