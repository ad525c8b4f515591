"""Truncated series in exponentials of lattice weights.

A term ``xi -> c`` stands for ``c * exp(-<lambda, xi>)``; the optional
prefactor ``s`` in {-1, 0, +1} multiplies the whole series by
``exp(s * <lambda, mu>)``. Every stored exponent has height at most ``order``;
``order=None`` marks a finite, untruncated sum.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Mapping

from ..errors import BothPrefactored
from ..lattice import height, normalize, wadd


class ExpSeries:
    __slots__ = ("rank", "order", "prefactor", "terms")

    def __init__(self, rank: int, order, terms: Mapping | Iterable = (), prefactor: int = 0):
        self.rank = rank
        self.order = None if order is None else Fraction(order)
        self.prefactor = prefactor
        out: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for xi, c in items:
            xi = normalize(xi)
            if self.order is not None and height(xi) > self.order:
                continue
            s = out.get(xi, 0) + c
            if s:
                out[xi] = s
            else:
                out.pop(xi, None)
        self.terms = out

    @classmethod
    def one(cls, rank: int, order) -> "ExpSeries":
        return cls(rank, order, {(0,) * rank: Fraction(1)})

    def truncate(self, order) -> "ExpSeries":
        return ExpSeries(self.rank, _min_order(self.order, order), self.terms, self.prefactor)

    def __eq__(self, other):
        if not isinstance(other, ExpSeries):
            return NotImplemented
        return (
            self.rank == other.rank
            and self.order == other.order
            and self.prefactor == other.prefactor
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.rank, self.order, self.prefactor, frozenset(self.terms.items())))

    def _compatible(self, other: "ExpSeries"):
        if self.prefactor != other.prefactor:
            raise ValueError("cannot add series with different prefactors")

    def __add__(self, other: "ExpSeries") -> "ExpSeries":
        self._compatible(other)
        terms = list(self.terms.items()) + list(other.terms.items())
        return ExpSeries(self.rank, _min_order(self.order, other.order), terms, self.prefactor)

    def __neg__(self):
        return ExpSeries(self.rank, self.order, {k: -v for k, v in self.terms.items()}, self.prefactor)

    def __sub__(self, other: "ExpSeries") -> "ExpSeries":
        return self + (-other)

    def scale(self, c) -> "ExpSeries":
        return ExpSeries(self.rank, self.order, {k: v * c for k, v in self.terms.items()}, self.prefactor)

    def map_coeffs(self, fn: Callable) -> "ExpSeries":
        return ExpSeries(self.rank, self.order, {k: fn(v) for k, v in self.terms.items()}, self.prefactor)

    def shift_exponents(self, nu, order=None) -> "ExpSeries":
        """Multiply by exp(-<lambda, nu>)."""
        if order is None and self.order is not None:
            order = self.order + height(nu)
        return ExpSeries(
            self.rank, order, {wadd(k, nu): v for k, v in self.terms.items()}, self.prefactor
        )

    def __mul__(self, other):
        if isinstance(other, ExpSeries):
            return series_mul(self, other)
        return self.scale(other)

    __rmul__ = scale

    def __repr__(self):
        body = ", ".join(f"{k}: {v}" for k, v in sorted(self.terms.items(), key=lambda kv: (height(kv[0]), kv[0])))
        return f"ExpSeries(order={self.order}, prefactor={self.prefactor}, {{{body}}})"


def _min_order(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(Fraction(a), Fraction(b))


def series_mul(a: ExpSeries, b: ExpSeries) -> ExpSeries:
    """Exponentwise convolution truncated to the smaller order."""
    if a.prefactor and b.prefactor:
        raise BothPrefactored("both operands carry an exp(<lambda, mu>) prefactor")
    order = _min_order(a.order, b.order)
    acc: dict = {}
    for ka, va in a.terms.items():
        for kb, vb in b.terms.items():
            k = wadd(ka, kb)
            acc[k] = acc.get(k, 0) + va * vb
    return ExpSeries(a.rank, order, acc, a.prefactor or b.prefactor)
