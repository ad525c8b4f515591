"""Root data for type A_r: roots, weights, Kostant partitions, Weyl denominator."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from .errors import UnsupportedRank
from .exact.series import ExpSeries
from .lattice import (
    cartan_matrix,
    from_root_coords,
    height,
    normalize,
    root_coords,
    wadd,
    wneg,
    wsub,
)


@dataclass(frozen=True)
class LatticeWeight:
    """A weight in coroot-value coordinates: coords[i] = <xi, alpha_i^v>."""

    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", normalize(self.coords))

    @property
    def rank(self) -> int:
        return len(self.coords)

    def root_coords(self) -> tuple:
        return root_coords(self.coords)

    def height(self) -> Fraction:
        return height(self.coords)

    def __add__(self, other: "LatticeWeight") -> "LatticeWeight":
        return LatticeWeight(wadd(self.coords, other.coords))

    def __sub__(self, other: "LatticeWeight") -> "LatticeWeight":
        return LatticeWeight(wsub(self.coords, other.coords))

    def __neg__(self) -> "LatticeWeight":
        return LatticeWeight(wneg(self.coords))

    def __mul__(self, k) -> "LatticeWeight":
        return LatticeWeight(tuple(k * c for c in self.coords))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coords)

    def in_root_cone(self) -> bool:
        return all(x.denominator == 1 and x >= 0 for x in self.root_coords())

    def __str__(self):
        return "(" + ",".join(str(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class RootSystem:
    rank: int
    cartan_matrix: tuple = field(repr=False)
    simple_roots: tuple = field(repr=False)
    positive_roots: tuple = field(repr=False)
    fundamental_weights: tuple = field(repr=False)
    rho: LatticeWeight = field(repr=False)

    @property
    def name(self) -> str:
        return f"A{self.rank}"

    def weight(self, coords: Sequence) -> LatticeWeight:
        if len(coords) != self.rank:
            raise ValueError(f"expected {self.rank} coordinates, got {len(coords)}")
        return LatticeWeight(tuple(coords))

    def zero(self) -> LatticeWeight:
        return LatticeWeight((0,) * self.rank)


@lru_cache(maxsize=None)
def root_system(r: int) -> RootSystem:
    if r <= 0:
        raise UnsupportedRank(f"rank must be positive, got {r}")
    C = cartan_matrix(r)
    simple = tuple(LatticeWeight(C[i]) for i in range(r))
    positive = []
    for i in range(r):
        for j in range(i, r):
            rc = [1 if i <= k <= j else 0 for k in range(r)]
            positive.append(LatticeWeight(from_root_coords(rc)))
    fundamental = tuple(LatticeWeight(tuple(int(i == j) for j in range(r))) for i in range(r))
    rho = LatticeWeight((1,) * r)
    return RootSystem(r, C, simple, tuple(positive), fundamental, rho)


@lru_cache(maxsize=None)
def _kostant(rc: tuple, roots: tuple) -> int:
    if not roots:
        return int(not any(rc))
    first, rest = roots[0], roots[1:]
    total = 0
    cur = rc
    while all(x >= 0 for x in cur):
        total += _kostant(cur, rest)
        cur = tuple(x - y for x, y in zip(cur, first))
    return total


def kostant_partition(beta, rs: RootSystem | None = None) -> int:
    """Number of ways to write beta as a sum of positive roots (0 off the cone)."""
    coords = getattr(beta, "coords", beta)
    rs = rs or root_system(len(coords))
    rc = root_coords(coords)
    if any(x.denominator != 1 or x < 0 for x in rc):
        return 0
    roots = tuple(tuple(int(x) for x in a.root_coords()) for a in rs.positive_roots)
    return _kostant(tuple(int(x) for x in rc), roots)


def weyl_denominator(order, rs: RootSystem) -> ExpSeries:
    """exp(<lambda,rho>) prod_{alpha>0} (1 - exp(-<lambda,alpha>)) as an ExpSeries."""
    terms = []
    pos = [a.coords for a in rs.positive_roots]
    for k in range(len(pos) + 1):
        for subset in combinations(pos, k):
            xi = wneg(rs.rho.coords)
            for a in subset:
                xi = wadd(xi, a)
            terms.append((xi, Fraction((-1) ** k)))
    return ExpSeries(rs.rank, order, terms)


def weyl_dimension(hw: Sequence, rs: RootSystem | None = None) -> int:
    """dim L(hw) = prod_{alpha>0} <hw + rho, alpha^v> / <rho, alpha^v>."""
    rs = rs or root_system(len(hw))
    num = Fraction(1)
    for a in rs.positive_roots:
        # in type A every coroot alpha^v pairs as the sum of simple coroots it contains
        rc = a.root_coords()
        num *= Fraction(sum((hw[i] + 1) * rc[i] for i in range(rs.rank)), sum(rc))
    return int(num)
