"""Depth-truncated Verma modules with symbolic or sampled highest weight."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .cartan import kostant_partition
from .errors import DepthExceeded, NonGenericWeight
from .exact.ratfun import RatFun, default_names
from .hwspace import HighestWeightSpaces
from .lattice import from_root_coords, normalize, wadd, wsub


@dataclass(frozen=True)
class DynParam:
    """A dynamical parameter: symbols x_i (plus a rational offset) or a rational point.

    In symbolic mode the coordinates are ``x_i + offset[i]``; in numeric mode
    they are ``point[i] + offset[i]``.
    """

    mode: str
    rank: int
    point: tuple = ()
    offset: tuple = ()
    prefix: str = "x"

    def __post_init__(self):
        if self.mode not in ("symbolic", "numeric"):
            raise ValueError(f"unknown mode {self.mode!r}")
        off = self.offset or (0,) * self.rank
        object.__setattr__(self, "offset", normalize(off))
        if self.mode == "numeric":
            if len(self.point) != self.rank:
                raise ValueError("numeric parameter needs a point")
            object.__setattr__(self, "point", normalize(self.point))
        else:
            object.__setattr__(self, "point", ())

    @classmethod
    def symbolic(cls, rank: int, prefix: str = "x") -> "DynParam":
        return cls("symbolic", rank, prefix=prefix)

    @classmethod
    def numeric(cls, point: Sequence, prefix: str = "x") -> "DynParam":
        return cls("numeric", len(point), tuple(point), prefix=prefix)

    @property
    def is_symbolic(self) -> bool:
        return self.mode == "symbolic"

    def coords(self) -> tuple:
        if self.is_symbolic:
            return tuple(
                RatFun.variable(i, self.rank) + Fraction(self.offset[i]) for i in range(self.rank)
            )
        return tuple(Fraction(p + o) for p, o in zip(self.point, self.offset))

    def shifted(self, nu) -> "DynParam":
        """The parameter lambda + nu."""
        nu = getattr(nu, "coords", nu)
        return DynParam(self.mode, self.rank, self.point, wadd(self.offset, nu), self.prefix)

    def base(self) -> "DynParam":
        return DynParam(self.mode, self.rank, self.point, (), self.prefix)

    def names(self) -> list:
        return default_names(self.prefix, self.rank)

    def __str__(self):
        if self.is_symbolic:
            off = "".join(f"{'+' if o >= 0 else ''}{o}" if o else "" for o in self.offset)
            return f"{self.prefix}{off}" if off else self.prefix
        return "(" + ",".join(str(Fraction(p + o)) for p, o in zip(self.point, self.offset)) + ")"


class VermaModule:
    """Lazy weight spaces of M_lambda; every space is checked against Kostant counts."""

    def __init__(self, param: DynParam):
        self.param = param
        self.rank = param.rank
        self.spaces = HighestWeightSpaces(param.coords(), param.rank)
        self._checked: set = set()

    def space(self, beta: tuple):
        sp = self.spaces.space(beta)
        if beta not in self._checked:
            want = kostant_partition(from_root_coords(beta))
            if sp.dim != want:
                raise NonGenericWeight(
                    f"weight space {beta} of M at {self.param} has dim {sp.dim}, expected {want}"
                )
            self._checked.add(beta)
        return sp

    def dim(self, beta: tuple) -> int:
        return self.space(beta).dim

    def f_into(self, i: int, beta: tuple):
        """f_i matrices from the space at beta into beta + alpha_i."""
        return self.space(self.spaces.plus(beta, i)).f_into[i]

    def e_of(self, j: int, beta: tuple):
        return self.space(beta).e[j]

    def word(self, beta: tuple, t: int) -> tuple:
        self.space(beta)
        return self.spaces.word(beta, t)

    def weight(self, beta: tuple) -> tuple:
        """Coroot coordinates of -beta (the weight relative to the highest weight)."""
        return tuple(-x for x in from_root_coords(beta))


@lru_cache(maxsize=256)
def verma_module(param: DynParam) -> VermaModule:
    return VermaModule(param)


def cone_elements(rank: int, max_height: int) -> list:
    """All beta in the nonnegative root cone (simple-root coordinates) up to a height."""
    out = []

    def rec(prefix, left):
        if len(prefix) == rank:
            out.append(tuple(prefix))
            return
        for k in range(left + 1):
            rec(prefix + [k], left - k)

    rec([], max_height)
    out.sort(key=lambda b: (sum(b), b))
    return out


class VermaSlice:
    """M_lambda restricted to weights lambda - beta with height(beta) <= depth."""

    def __init__(self, module: VermaModule, depth: int):
        self.module = module
        self.depth = depth
        self.param = module.param

    @property
    def rank(self) -> int:
        return self.module.rank

    def betas(self) -> list:
        return [b for b in cone_elements(self.rank, self.depth) if self.module.dim(b)]

    def basis(self, beta: tuple) -> list:
        return [(beta, t) for t in range(self.module.dim(beta))]

    def all_basis(self) -> list:
        return [y for b in self.betas() for y in self.basis(b)]

    def top(self) -> tuple:
        return ((0,) * self.rank, 0)

    def word(self, y: tuple) -> tuple:
        return self.module.word(*y)


def build_verma(param: DynParam, depth: int) -> VermaSlice:
    """Slice of M_param of the given depth, with every weight space built and checked."""
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    mod = verma_module(param)
    for beta in cone_elements(param.rank, depth):
        mod.space(beta)
    return VermaSlice(mod, depth)


def _gen(g) -> tuple:
    if isinstance(g, str):
        return g[0], int(g[1:]) - 1
    return g


def verma_act(M: VermaModule, g, vec: dict, depth: int | None = None) -> dict:
    """Generator action on {(beta, t): c}; ``g`` is ("e"|"f"|"h", i) or a name like "f1"."""
    kind, i = _gen(g)
    out: dict = {}
    for (beta, t), c in vec.items():
        if kind == "f":
            b2 = M.spaces.plus(beta, i)
            if depth is not None and sum(b2) > depth:
                raise DepthExceeded(f"f{i + 1} leaves the depth-{depth} slice")
            for s, d in M.f_into(i, beta)[t].items():
                k = (b2, s)
                out[k] = out.get(k, 0) + c * d
        elif kind == "e":
            if beta[i] == 0:
                continue
            lower = beta[:i] + (beta[i] - 1,) + beta[i + 1:]
            for s, d in M.e_of(i, beta)[t].items():
                k = (lower, s)
                out[k] = out.get(k, 0) + c * d
        elif kind == "h":
            hv = M.spaces.h_value(beta, i)
            k = (beta, t)
            out[k] = out.get(k, 0) + c * hv
        else:
            raise ValueError(f"unknown generator {g!r}")
    return {k: v for k, v in out.items() if v}


def tensor_act(M: VermaModule, V, g, vec: dict, depth: int | None = None) -> dict:
    """Leibniz action on M (x) V vectors {(beta, t, u): c}."""
    kind, i = _gen(g)
    out: dict = {}
    for (beta, t, u), c in vec.items():
        for (b2, t2), d in verma_act(M, (kind, i), {(beta, t): c}, depth).items():
            k = (b2, t2, u)
            out[k] = out.get(k, 0) + d
        if kind == "e":
            col = V.e[i][u]
        elif kind == "f":
            col = V.f[i][u]
        else:
            w = V.weights[u][i]
            col = {u: Fraction(w)} if w else {}
        for u2, d in col.items():
            k = (beta, t, u2)
            out[k] = out.get(k, 0) + c * d
    return {k: v for k, v in out.items() if v}


def act(g, vec: dict, slice_: VermaSlice, V=None) -> dict:
    """Apply e_i, f_i or h_i to a slice vector, or to a slice (x) V vector if V is given."""
    if V is None:
        return verma_act(slice_.module, g, vec, slice_.depth)
    return tensor_act(slice_.module, V, g, vec, slice_.depth)


def expectation(vec: dict) -> dict:
    """V-component along the top vector of an M (x) V vector."""
    out: dict = {}
    for (beta, t, u), c in vec.items():
        if not any(beta):
            out[u] = out.get(u, 0) + c
    return {u: c for u, c in out.items() if c}


def weight_of(param_weight: tuple, beta: tuple) -> tuple:
    """Weight shift -beta added to a base weight, in coroot coordinates."""
    return wsub(param_weight, from_root_coords(beta))
