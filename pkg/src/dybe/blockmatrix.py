"""Sparse weight-preserving matrices on tensor products of finite modules.

Flat basis indices are row-major over the legs, so a matrix on (U, V (x) W)
and one on (U (x) V, W) share indices with the matrix on (U, V, W);
:meth:`BlockMatrix.regroup` only relabels.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import prod
from typing import Callable, Iterable, Sequence

from .errors import SingularSystem
from .exact.linalg import inverse as dense_inverse
from .exact.ratfun import sc_shift, sc_subs
from .lattice import wadd


def unflatten(idx: int, dims: Sequence[int]) -> tuple:
    out = []
    for d in reversed(dims):
        idx, k = divmod(idx, d)
        out.append(k)
    return tuple(reversed(out))


def flatten(mi: Sequence[int], dims: Sequence[int]) -> int:
    idx = 0
    for k, d in zip(mi, dims):
        idx = idx * d + k
    return idx


@lru_cache(maxsize=None)
def leg_weights(legs: tuple) -> tuple:
    """Total weight of every flat basis index."""
    ws = [(0,) * legs[0].rank] if legs else [()]
    for leg in legs:
        ws = [wadd(a, b) for a in ws for b in leg.weights]
    return tuple(ws)


def _clean(entries: dict) -> dict:
    return {k: v for k, v in entries.items() if v}


class BlockMatrix:
    """Endomorphism of the tensor product of ``legs`` with sparse exact entries."""

    __slots__ = ("legs", "entries")

    def __init__(self, legs: Iterable, entries: dict):
        self.legs = tuple(legs)
        self.entries = _clean(entries)

    @property
    def dims(self) -> tuple:
        return tuple(leg.dim for leg in self.legs)

    @property
    def size(self) -> int:
        return prod(self.dims)

    @property
    def domain(self) -> tuple:
        return self.legs

    codomain = domain

    def weights(self) -> tuple:
        return leg_weights(self.legs)

    @classmethod
    def identity(cls, legs: Iterable) -> "BlockMatrix":
        legs = tuple(legs)
        n = prod(leg.dim for leg in legs)
        return cls(legs, {(i, i): Fraction(1) for i in range(n)})

    @classmethod
    def from_columns(cls, legs: Iterable, columns: dict) -> "BlockMatrix":
        entries = {}
        for c, col in columns.items():
            for r, v in col.items():
                entries[(r, c)] = v
        return cls(legs, entries)

    def _check(self, other: "BlockMatrix"):
        if self.size != other.size:
            raise ValueError(f"size mismatch {self.size} vs {other.size}")

    def __matmul__(self, other: "BlockMatrix") -> "BlockMatrix":
        self._check(other)
        rows_of: dict = {}
        for (r, c), v in other.entries.items():
            rows_of.setdefault(r, []).append((c, v))
        out: dict = {}
        for (i, k), a in self.entries.items():
            for j, b in rows_of.get(k, ()):
                out[(i, j)] = out.get((i, j), 0) + a * b
        return BlockMatrix(self.legs, out)

    def __add__(self, other: "BlockMatrix") -> "BlockMatrix":
        self._check(other)
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out.get(k, 0) + v
        return BlockMatrix(self.legs, out)

    def __neg__(self) -> "BlockMatrix":
        return BlockMatrix(self.legs, {k: -v for k, v in self.entries.items()})

    def __sub__(self, other: "BlockMatrix") -> "BlockMatrix":
        return self + (-other)

    def scale(self, c) -> "BlockMatrix":
        return BlockMatrix(self.legs, {k: v * c for k, v in self.entries.items()})

    def __eq__(self, other):
        if not isinstance(other, BlockMatrix):
            return NotImplemented
        return self.size == other.size and self.entries == other.entries

    __hash__ = None

    def __getitem__(self, rc: tuple):
        return self.entries.get(rc, Fraction(0))

    def regroup(self, legs: Iterable) -> "BlockMatrix":
        legs = tuple(legs)
        if prod(leg.dim for leg in legs) != self.size:
            raise ValueError("regrouping must preserve the total dimension")
        return BlockMatrix(legs, self.entries)

    def map_entries(self, fn: Callable) -> "BlockMatrix":
        return BlockMatrix(self.legs, {k: fn(v) for k, v in self.entries.items()})

    def shift(self, nu) -> "BlockMatrix":
        """Entries with the parameter replaced by parameter + nu."""
        nu = tuple(Fraction(x) for x in getattr(nu, "coords", nu))
        if not any(nu):
            return self
        return self.map_entries(lambda v: sc_shift(v, nu))

    def subs(self, scale: Sequence, offset: Sequence) -> "BlockMatrix":
        return self.map_entries(lambda v: sc_subs(v, scale, offset))

    def transpose(self, legs: Iterable | None = None) -> "BlockMatrix":
        return BlockMatrix(self.legs if legs is None else legs, {(c, r): v for (r, c), v in self.entries.items()})

    def permute(self, perm: Sequence[int]) -> "BlockMatrix":
        """P A P^-1 where P sends leg perm[k] of the old product to position k."""
        dims = self.dims
        new_legs = tuple(self.legs[p] for p in perm)
        new_dims = tuple(dims[p] for p in perm)

        def move(idx):
            mi = unflatten(idx, dims)
            return flatten([mi[p] for p in perm], new_dims)

        return BlockMatrix(new_legs, {(move(r), move(c)): v for (r, c), v in self.entries.items()})

    def flip(self) -> "BlockMatrix":
        if len(self.legs) != 2:
            raise ValueError("flip needs exactly two legs")
        return self.permute((1, 0))

    def kron(self, other: "BlockMatrix") -> "BlockMatrix":
        n = other.size
        out = {}
        for (r1, c1), a in self.entries.items():
            for (r2, c2), b in other.entries.items():
                out[(r1 * n + r2, c1 * n + c2)] = a * b
        return BlockMatrix(self.legs + other.legs, out)

    def column(self, c: int) -> dict:
        return {r: v for (r, cc), v in self.entries.items() if cc == c}

    def apply(self, vec: dict) -> dict:
        out: dict = {}
        for (r, c), v in self.entries.items():
            x = vec.get(c)
            if x:
                out[r] = out.get(r, 0) + v * x
        return {k: v for k, v in out.items() if v}

    def is_weight_preserving(self) -> bool:
        ws = self.weights()
        return all(ws[r] == ws[c] for r, c in self.entries)

    def blocks(self) -> dict:
        """Flat indices grouped by total weight."""
        out: dict = {}
        for i, w in enumerate(self.weights()):
            out.setdefault(w, []).append(i)
        return out

    def inverse(self) -> "BlockMatrix":
        """Blockwise inverse; raises SingularSystem if a weight block is singular."""
        if not self.is_weight_preserving():
            raise ValueError("inverse is only implemented for weight-preserving matrices")
        out = {}
        for idx in self.blocks().values():
            M = [[self.entries.get((r, c), Fraction(0)) for c in idx] for r in idx]
            try:
                Minv = dense_inverse(M)
            except SingularSystem:
                raise SingularSystem("singular weight block") from None
            for a, r in enumerate(idx):
                for b, c in enumerate(idx):
                    out[(r, c)] = Minv[a][b]
        return BlockMatrix(self.legs, out)

    def diff(self, other: "BlockMatrix") -> list:
        """Entries where the two matrices disagree: (row, col, mine, theirs)."""
        self._check(other)
        keys = set(self.entries) | set(other.entries)
        out = []
        for k in sorted(keys):
            a, b = self[k], other[k]
            if a != b:
                out.append((k[0], k[1], a, b))
        return out

    def __repr__(self):
        names = ",".join(leg.name for leg in self.legs)
        return f"BlockMatrix([{names}], nnz={len(self.entries)})"


def embed(legs: Sequence, positions: Sequence[int], factory: Callable[[tuple], "BlockMatrix"],
          shift_of: Callable[[tuple], tuple] | None = None) -> BlockMatrix:
    """Lift matrices acting on the legs at ``positions`` to the whole product.

    ``factory(s)`` returns the matrix to use on a column whose legs give the
    shift ``s = shift_of(multi_index)``; identity acts on the other legs.
    """
    legs = tuple(legs)
    dims = tuple(leg.dim for leg in legs)
    sub_dims = tuple(dims[p] for p in positions)
    cache: dict = {}
    cols_cache: dict = {}
    out = {}
    for c in range(prod(dims)):
        mi = unflatten(c, dims)
        s = shift_of(mi) if shift_of else ()
        if s not in cache:
            cache[s] = factory(s)
            cols_cache[s] = {}
        A = cache[s]
        if A.size != prod(sub_dims):
            raise ValueError("factory matrix does not match the acted legs")
        sub = flatten([mi[p] for p in positions], sub_dims)
        col = cols_cache[s].get(sub)
        if col is None:
            col = cols_cache[s][sub] = A.column(sub)
        for r_sub, v in col.items():
            rmi = list(mi)
            for p, k in zip(positions, unflatten(r_sub, sub_dims)):
                rmi[p] = k
            out[(flatten(rmi, dims), c)] = v
    return BlockMatrix(legs, out)
