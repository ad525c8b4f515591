"""Seeded generic rational points with bounded resampling."""
from __future__ import annotations

from fractions import Fraction
from typing import Callable

import numpy as np

from .errors import NonGenericWeight, PoleAtPoint

MAX_ATTEMPTS = 8
NUM_BOUND = 10**6
DEN_BOUND = 10**3


def draw_point(rank: int, seq: np.random.SeedSequence) -> tuple:
    """Integers in [-10^6, 10^6] over random denominators in [1, 10^3]."""
    rng = np.random.Generator(np.random.PCG64(seq))
    nums = rng.integers(-NUM_BOUND, NUM_BOUND, size=rank, endpoint=True)
    dens = rng.integers(1, DEN_BOUND, size=rank, endpoint=True)
    return tuple(Fraction(int(n), int(d)) for n, d in zip(nums, dens))


def run_generic(rank: int, seq: np.random.SeedSequence, fn: Callable[[tuple], object]):
    """Call fn(point) on fresh draws until it avoids every pole and rank drop.

    Returns (result, point). Only genericity failures trigger a redraw; the
    result itself (for instance a failed identity) is passed through as is.
    """
    last = None
    for child in seq.spawn(MAX_ATTEMPTS):
        point = draw_point(rank, child)
        try:
            return fn(point), point
        except (NonGenericWeight, PoleAtPoint) as exc:
            last = exc
    raise NonGenericWeight(f"no generic sample after {MAX_ATTEMPTS} attempts: {last}")
