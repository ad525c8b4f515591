"""Canonical rational functions over Q and the mixed scalar helpers.

Scalars throughout the library are either ``Fraction`` (exact rationals) or
non-constant :class:`RatFun` values; constant results are always demoted to
``Fraction`` so numeric and symbolic code paths share one scalar protocol.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Sequence, Union

from ..errors import ParseError, PoleAtPoint
from .poly import Poly, poly_divexact, poly_gcd

Scalar = Union[Fraction, "RatFun"]


class RatFun:
    """Reduced fraction num/den with den monic under graded-lex order.

    Never constant: use :func:`make` to build values, which returns a
    ``Fraction`` whenever the quotient is constant.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Poly, den: Poly):
        self.num = num
        self.den = den
        self._hash = None

    @property
    def nvars(self) -> int:
        return self.num.nvars

    @staticmethod
    def variable(i: int, nvars: int) -> "RatFun":
        return RatFun(Poly.var(i, nvars), Poly.const(1, nvars))

    # arithmetic

    def __add__(self, other):
        if isinstance(other, RatFun):
            if self.den == other.den:
                return _reduce(self.num + other.num, self.den)
            if self.den.is_one():
                return _canonical_reduced(other.num + self.num * other.den, other.den)
            if other.den.is_one():
                return _canonical_reduced(self.num + other.num * self.den, self.den)
            g = poly_gcd(self.den, other.den)
            if g.is_one():
                return _canonical_reduced(
                    self.num * other.den + other.num * self.den, self.den * other.den
                )
            d1 = poly_divexact(self.den, g)
            d2 = poly_divexact(other.den, g)
            return _reduce(self.num * d2 + other.num * d1, self.den * d2)
        if isinstance(other, (int, Fraction)):
            if not other:
                return self
            return _canonical_reduced(self.num + self.den.scale(Fraction(other)), self.den)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return RatFun(-self.num, self.den)

    def __sub__(self, other):
        if isinstance(other, (RatFun, int, Fraction)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, RatFun):
            g1 = poly_gcd(self.num, other.den)
            g2 = poly_gcd(other.num, self.den)
            n1 = self.num if g1.is_one() else poly_divexact(self.num, g1)
            d2 = other.den if g1.is_one() else poly_divexact(other.den, g1)
            n2 = other.num if g2.is_one() else poly_divexact(other.num, g2)
            d1 = self.den if g2.is_one() else poly_divexact(self.den, g2)
            return _canonical_reduced(n1 * n2, d1 * d2)
        if isinstance(other, (int, Fraction)):
            if not other:
                return Fraction(0)
            if other == 1:
                return self
            return RatFun(self.num.scale(Fraction(other)), self.den)
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self) -> Scalar:
        return _canonical_reduced(self.den, self.num)

    def __truediv__(self, other):
        if isinstance(other, RatFun):
            return self * other.inverse()
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero")
            return RatFun(self.num.scale(1 / Fraction(other)), self.den)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return _canonical_reduced(self.num ** k, self.den ** k)

    def __bool__(self):
        return True

    def __eq__(self, other):
        if isinstance(other, RatFun):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return False
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    # substitution and evaluation

    def subs_affine(self, scale: Sequence, offset: Sequence) -> Scalar:
        # affine substitutions are ring automorphisms: the fraction stays reduced
        return _canonical_reduced(
            self.num.subs_affine(scale, offset), self.den.subs_affine(scale, offset)
        )

    def shift(self, offset: Sequence) -> Scalar:
        if not any(offset):
            return self
        return self.subs_affine((1,) * self.nvars, offset)

    def eval(self, point: Sequence) -> Fraction:
        d = self.den.eval(point)
        if not d:
            raise PoleAtPoint(f"pole of {self!r} at {tuple(str(p) for p in point)}")
        return self.num.eval(point) / d

    def format(self, names: Sequence[str]) -> str:
        n = self.num.format(names)
        if self.den.is_one():
            return n
        d = self.den.format(names)
        if len(self.num.terms) > 1:
            n = f"({n})"
        if len(self.den.terms) > 1 or "*" in d:
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self):
        return f"RatFun({self.format(default_names('x', self.nvars))})"


def _canonical_reduced(num: Poly, den: Poly) -> Scalar:
    if num.is_zero():
        return Fraction(0)
    if den.is_const():
        c = den.const_value()
        if num.is_const():
            return num.const_value() / c
        return RatFun(num.scale(1 / c), Poly.const(1, num.nvars))
    _, lc = den.leading()
    if lc != 1:
        inv = 1 / lc
        num, den = num.scale(inv), den.scale(inv)
    return RatFun(num, den)


def _reduce(num: Poly, den: Poly) -> Scalar:
    if num.is_zero():
        return Fraction(0)
    if den.is_zero():
        raise ZeroDivisionError("zero denominator")
    g = poly_gcd(num, den)
    if not g.is_one():
        num = poly_divexact(num, g)
        den = poly_divexact(den, g)
    return _canonical_reduced(num, den)


def make(num: Poly, den: Poly | None = None) -> Scalar:
    """Canonical scalar num/den."""
    if den is None:
        den = Poly.const(1, num.nvars)
    return _reduce(num, den)


def default_names(prefix: str, n: int) -> list[str]:
    return [f"{prefix}{i + 1}" for i in range(n)]


def symbols(n: int) -> tuple:
    return tuple(RatFun.variable(i, n) for i in range(n))


# mixed-scalar helpers


def sc_shift(s: Scalar, offset: Sequence) -> Scalar:
    """Replace x_i by x_i + offset[i]."""
    return s.shift(offset) if isinstance(s, RatFun) else s


def sc_subs(s: Scalar, scale: Sequence, offset: Sequence) -> Scalar:
    return s.subs_affine(scale, offset) if isinstance(s, RatFun) else s


def sc_eval(s: Scalar, point: Sequence) -> Fraction:
    return s.eval(point) if isinstance(s, RatFun) else Fraction(s)


def sc_format(s: Scalar, names: Sequence[str]) -> str:
    if isinstance(s, RatFun):
        return s.format(names)
    return str(Fraction(s))


def sc_nvars(s: Scalar) -> int | None:
    return s.nvars if isinstance(s, RatFun) else None


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(.))")


def parse(text: str, names: Sequence[str]) -> Scalar:
    """Parse the canonical string form produced by :func:`sc_format`."""
    tokens = []
    for m in _TOKEN.finditer(text):
        if m.group(1):
            tokens.append(("num", int(m.group(1))))
        elif m.group(2):
            tokens.append(("id", m.group(2)))
        elif m.group(3) and not m.group(3).isspace():
            tokens.append(("op", m.group(3)))
    n = len(names)
    index = {name: i for i, name in enumerate(names)}
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, None)

    def take(kind=None, val=None):
        nonlocal pos
        t = peek()
        if t[0] is None or (kind and t[0] != kind) or (val and t[1] != val):
            raise ParseError(f"unexpected token {t[1]!r} in {text!r}")
        pos += 1
        return t

    def expr():
        v = term()
        while peek() in (("op", "+"), ("op", "-")):
            op = take()[1]
            rhs = term()
            v = v + rhs if op == "+" else v - rhs
        return v

    def term():
        v = unary()
        while peek() in (("op", "*"), ("op", "/")):
            op = take()[1]
            rhs = unary()
            v = v * rhs if op == "*" else v / rhs
        return v

    def unary():
        if peek() == ("op", "-"):
            take()
            return -unary()
        return power()

    def power():
        v = atom()
        if peek() == ("op", "^"):
            take()
            k = take("num")[1]
            v = v ** k
        return v

    def atom():
        kind, val = peek()
        if kind == "num":
            take()
            return Fraction(val)
        if kind == "id":
            take()
            if val not in index:
                raise ParseError(f"unknown variable {val!r}")
            return RatFun.variable(index[val], n)
        if (kind, val) == ("op", "("):
            take()
            v = expr()
            take("op", ")")
            return v
        raise ParseError(f"unexpected token {val!r} in {text!r}")

    out = expr()
    if pos != len(tokens):
        raise ParseError(f"trailing input in {text!r}")
    return out
