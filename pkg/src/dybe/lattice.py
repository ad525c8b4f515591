"""Type-A weight arithmetic on coroot-value coordinate tuples.

A weight xi of A_r is stored as the tuple (<xi, alpha_1^v>, ..., <xi, alpha_r^v>).
Simple-root coordinates come from the inverse Cartan matrix.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence


@lru_cache(maxsize=None)
def cartan_matrix(rank: int) -> tuple[tuple[int, ...], ...]:
    return tuple(
        tuple(2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(rank))
        for i in range(rank)
    )


@lru_cache(maxsize=None)
def inverse_cartan(rank: int) -> tuple[tuple[Fraction, ...], ...]:
    # closed form for A_r: min(i,j) * (r + 1 - max(i,j)) / (r + 1), 1-based
    n = rank + 1
    return tuple(
        tuple(Fraction(min(i, j) * (n - max(i, j)), n) for j in range(1, n))
        for i in range(1, n)
    )


def root_coords(coords: Sequence) -> tuple[Fraction, ...]:
    inv = inverse_cartan(len(coords))
    return tuple(sum((row[j] * coords[j] for j in range(len(coords))), Fraction(0)) for row in inv)


def height(coords: Sequence) -> Fraction:
    return sum(root_coords(coords), Fraction(0))


def from_root_coords(rc: Sequence) -> tuple:
    """Coroot-value coordinates of sum_j rc[j] * alpha_j."""
    c = cartan_matrix(len(rc))
    return tuple(sum(c[i][j] * rc[j] for j in range(len(rc))) for i in range(len(rc)))


def simple_root(rank: int, i: int) -> tuple[int, ...]:
    return cartan_matrix(rank)[i]


def wadd(a: Sequence, b: Sequence) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def wsub(a: Sequence, b: Sequence) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def wneg(a: Sequence) -> tuple:
    return tuple(-x for x in a)


def wsum(ws: Iterable[Sequence], rank: int) -> tuple:
    out = (0,) * rank
    for w in ws:
        out = wadd(out, w)
    return out


def is_root_cone(coords: Sequence) -> bool:
    """True when coords lie in the nonnegative integer span of simple roots."""
    rc = root_coords(coords)
    return all(x.denominator == 1 and x >= 0 for x in rc)


def normalize(coords: Sequence) -> tuple:
    """Canonical hashable form: ints where integral, Fractions otherwise."""
    out = []
    for x in coords:
        x = Fraction(x)
        out.append(int(x) if x.denominator == 1 else x)
    return tuple(out)
