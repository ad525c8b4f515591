"""Sparse multivariate polynomials over Q with exact gcd."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .. import kernels as K


def _grlex_key(e):
    return (sum(e), e)


class Poly:
    """Immutable polynomial in ``nvars`` variables.

    ``terms`` maps exponent tuples to nonzero Fractions.
    """

    __slots__ = ("terms", "nvars", "_hash")

    def __init__(self, terms: dict, nvars: int):
        self.terms = terms
        self.nvars = nvars
        self._hash = None

    @classmethod
    def const(cls, c, nvars: int) -> "Poly":
        c = Fraction(c)
        return cls({(0,) * nvars: c} if c else {}, nvars)

    @classmethod
    def var(cls, i: int, nvars: int) -> "Poly":
        e = [0] * nvars
        e[i] = 1
        return cls({tuple(e): Fraction(1)}, nvars)

    @classmethod
    def from_dense(cls, coeffs: Sequence, nvars: int = 1, var: int = 0) -> "Poly":
        terms = {}
        for k, c in enumerate(coeffs):
            if c:
                e = [0] * nvars
                e[var] = k
                terms[tuple(e)] = Fraction(c)
        return cls(terms, nvars)

    def to_dense(self, var: int = 0) -> list:
        if not self.terms:
            return []
        out = [Fraction(0)] * (max(e[var] for e in self.terms) + 1)
        for e, c in self.terms.items():
            out[e[var]] = c
        return out

    # predicates

    def is_zero(self) -> bool:
        return not self.terms

    def is_const(self) -> bool:
        t = self.terms
        return not t or (len(t) == 1 and not any(next(iter(t))))

    def const_value(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        return self.terms[(0,) * self.nvars]

    def is_one(self) -> bool:
        return len(self.terms) == 1 and self.terms.get((0,) * self.nvars) == 1

    def used_vars(self) -> set:
        out = set()
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    out.add(i)
        return out

    def degree(self, var: int | None = None) -> int:
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        return max(e[var] for e in self.terms)

    def leading(self):
        """(exponent, coefficient) of the graded-lex leading term."""
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    # arithmetic

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other, self.nvars)
        if len(other.terms) > len(self.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        out = dict(a)
        for e, c in b.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s += c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return Poly(out, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return Poly({e: -c for e, c in self.terms.items()}, self.nvars)

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other, self.nvars)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Poly":
        if not c:
            return Poly({}, self.nvars)
        if c == 1:
            return self
        return Poly({e: v * c for e, v in self.terms.items()}, self.nvars)

    def __mul__(self, other):
        if isinstance(other, Poly):
            return Poly(K.poly_mul(self.terms, other.terms), self.nvars)
        return self.scale(Fraction(other))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Poly.const(1, self.nvars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.is_const() and self.const_value() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def monic(self) -> "Poly":
        if not self.terms:
            return self
        _, lc = self.leading()
        return self.scale(1 / lc)

    def subs_affine(self, scale: Sequence, offset: Sequence) -> "Poly":
        return Poly(K.poly_subs_affine(self.terms, tuple(scale), tuple(offset)), self.nvars)

    def shift(self, offset: Sequence) -> "Poly":
        if not any(offset):
            return self
        return self.subs_affine((1,) * self.nvars, offset)

    def eval(self, point: Sequence) -> Fraction:
        return K.poly_eval(self.terms, tuple(point))

    def divexact(self, other: "Poly") -> "Poly":
        return poly_divexact(self, other)

    def format(self, names: Sequence[str]) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=_grlex_key, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
            )
            if not mono:
                s = str(c)
            elif c == 1:
                s = mono
            elif c == -1:
                s = "-" + mono
            else:
                s = f"{c}*{mono}"
            parts.append(s)
        out = parts[0]
        for s in parts[1:]:
            out += s if s.startswith("-") else "+" + s
        return out

    def __repr__(self):
        return f"Poly({self.format([f'x{i + 1}' for i in range(self.nvars)])})"


def poly_divexact(a: Poly, b: Poly) -> Poly:
    """Quotient a / b, which must be exact."""
    if b.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if b.is_const():
        return a.scale(1 / b.const_value())
    n = a.nvars
    used = a.used_vars() | b.used_vars()
    if len(used) == 1:
        (v,) = used
        q, r = K.upoly_divmod(a.to_dense(v), b.to_dense(v))
        if r:
            raise ArithmeticError("inexact polynomial division")
        return Poly.from_dense(q, n, v)
    eb = max(b.terms)
    cb = b.terms[eb]
    rem = dict(a.terms)
    q = {}
    while rem:
        er = max(rem)
        if any(x < y for x, y in zip(er, eb)):
            raise ArithmeticError("inexact polynomial division")
        t = tuple(x - y for x, y in zip(er, eb))
        c = rem[er] / cb
        q[t] = c
        for e, v in b.terms.items():
            k = tuple(x + y for x, y in zip(e, t))
            s = rem.get(k, 0) - c * v
            if s:
                rem[k] = s
            else:
                rem.pop(k, None)
    return Poly(q, n)


def _split(p: Poly, var: int) -> dict:
    """Coefficients of p as a polynomial in x_var (coefficients lack x_var)."""
    out: dict = {}
    for e, c in p.terms.items():
        k = e[var]
        e2 = e[:var] + (0,) + e[var + 1:]
        out.setdefault(k, {})[e2] = c
    return {k: Poly(t, p.nvars) for k, t in out.items()}


def _join(parts: dict, var: int, nvars: int) -> Poly:
    terms = {}
    for k, p in parts.items():
        for e, c in p.terms.items():
            terms[e[:var] + (k,) + e[var + 1:]] = c
    return Poly(terms, nvars)


def _gcd_many(polys: Iterable[Poly]) -> Poly:
    g = None
    for p in polys:
        g = p.monic() if g is None else poly_gcd(g, p)
        if g.is_const():
            break
    return g


def _prem(A: dict, B: dict) -> dict:
    db = max(B)
    lb = B[db]
    r = dict(A)
    while r:
        dr = max(r)
        if dr < db:
            break
        lr = r[dr]
        s = dr - db
        nxt = {k: lb * c for k, c in r.items()}
        for k, c in B.items():
            v = nxt.get(k + s)
            v = -(lr * c) if v is None else v - lr * c
            if v.is_zero():
                nxt.pop(k + s, None)
            else:
                nxt[k + s] = v
        r = nxt
    return r


def _primitive(parts: dict) -> dict:
    cont = _gcd_many(parts.values())
    if cont.is_const():
        return parts
    return {k: poly_divexact(c, cont) for k, c in parts.items()}


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Greatest common divisor, normalized monic in graded-lex order."""
    n = a.nvars
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    if a.is_const() or b.is_const():
        return Poly.const(1, n)
    if a == b:
        return a.monic()
    used = a.used_vars() | b.used_vars()
    if len(used) == 1:
        (v,) = used
        return Poly.from_dense(K.upoly_gcd(a.to_dense(v), b.to_dense(v)), n, v)
    var = max(used)
    pa, pb = _split(a, var), _split(b, var)
    ca, cb = _gcd_many(pa.values()), _gcd_many(pb.values())
    content = poly_gcd(ca, cb)
    A = {k: poly_divexact(c, ca) for k, c in pa.items()}
    B = {k: poly_divexact(c, cb) for k, c in pb.items()}
    if max(A) < max(B):
        A, B = B, A
    while True:
        if max(B) == 0:
            G = None
            break
        R = _prem(A, B)
        if not R:
            G = B
            break
        A, B = B, _primitive(R)
    if G is None:
        return content
    G = _join(_primitive(G), var, n)
    return (content * G).monic()


def poly_lcm(a: Poly, b: Poly) -> Poly:
    return (a * poly_divexact(b, poly_gcd(a, b))).monic()
