"""Lazy weight spaces of a highest-weight module generated by f-words.

The space at root-cone element beta (simple-root coordinates) is spanned by the
candidates f_i b with b a basis vector at beta - alpha_i. A combination of
candidates vanishes in the irreducible quotient iff every e_j kills it, and
e_j(f_i b) = f_i(e_j b) + delta_ij h_i(b) b needs nothing beyond [e_i, f_j] =
delta_ij h_i. Keeping the candidates whose e-images are independent is the
quotient by the radical of the contravariant pairing.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .exact.linalg import independent_columns
from .lattice import cartan_matrix


class WeightSpace:
    __slots__ = ("beta", "parents", "e", "f_into")

    def __init__(self, beta, parents, e, f_into):
        self.beta = beta
        # parents[t] = (i, k): basis vector t is f_i applied to vector k at beta - alpha_i
        self.parents = parents
        # e[j][t] = {s: c}: e_j of basis vector t, in the space at beta - alpha_j
        self.e = e
        # f_into[i][k] = {t: c}: f_i of vector k at beta - alpha_i, in this space
        self.f_into = f_into

    @property
    def dim(self) -> int:
        return len(self.parents)


class HighestWeightSpaces:
    """Weight spaces of the irreducible module with highest weight ``hw``.

    ``hw`` holds the scalars <Lambda, alpha_i^v>, either Fractions or RatFuns.
    """

    def __init__(self, hw: Sequence, rank: int):
        self.hw = tuple(hw)
        self.rank = rank
        self.cartan = cartan_matrix(rank)
        self._spaces: dict = {}

    def _minus(self, beta, i):
        if beta[i] == 0:
            return None
        return beta[:i] + (beta[i] - 1,) + beta[i + 1:]

    def plus(self, beta, i):
        return beta[:i] + (beta[i] + 1,) + beta[i + 1:]

    def h_value(self, beta, i):
        """Eigenvalue of h_i on the space at beta."""
        row = self.cartan[i]
        return self.hw[i] - sum(row[j] * beta[j] for j in range(self.rank))

    def space(self, beta: tuple) -> WeightSpace:
        sp = self._spaces.get(beta)
        if sp is None:
            # build the lower spaces first so recursion depth stays small
            for i in range(self.rank):
                lower = self._minus(beta, i)
                if lower is not None and lower not in self._spaces:
                    self.space(lower)
            sp = self._build(beta)
            self._spaces[beta] = sp
        return sp

    def dim(self, beta: tuple) -> int:
        return self.space(beta).dim

    def _build(self, beta: tuple) -> WeightSpace:
        r = self.rank
        if not any(beta):
            return WeightSpace(beta, [None], [[{}] for _ in range(r)], [[] for _ in range(r)])
        cands = []
        for i in range(r):
            prev = self._minus(beta, i)
            if prev is not None:
                cands.extend((i, k) for k in range(self._spaces[prev].dim))
        # row blocks: one per j, indexed by basis vectors of beta - alpha_j
        offsets = {}
        nrows = 0
        for j in range(r):
            tgt = self._minus(beta, j)
            if tgt is not None:
                offsets[j] = nrows
                nrows += self._spaces[tgt].dim
        images = []
        for i, k in cands:
            prev = self._minus(beta, i)
            P = self._spaces[prev]
            img = {}
            for j, off in offsets.items():
                vec: dict = {}
                if prev[j] > 0:
                    # f_i (e_j b_k), landing in beta - alpha_j
                    f_in = self._spaces[self._minus(beta, j)].f_into[i]
                    for s, c in P.e[j][k].items():
                        for t, d in f_in[s].items():
                            vec[t] = vec.get(t, 0) + c * d
                if i == j:
                    hv = self.h_value(prev, i)
                    vec[k] = vec.get(k, 0) + hv
                img[j] = {t: c for t, c in vec.items() if c}
            images.append(img)
        if nrows == 0 or not cands:
            return WeightSpace(beta, [], [[] for _ in range(r)], [[] for _ in range(r)])
        M = [[Fraction(0)] * len(cands) for _ in range(nrows)]
        for col, img in enumerate(images):
            for j, vec in img.items():
                off = offsets[j]
                for t, c in vec.items():
                    M[off + t][col] = c
        pivots, coords = independent_columns(M, len(cands))
        parents = [cands[p] for p in pivots]
        e = [[{} for _ in pivots] for _ in range(r)]
        for t, p in enumerate(pivots):
            for j, vec in images[p].items():
                e[j][t] = vec
        f_into: list = [[] for _ in range(r)]
        for i in range(r):
            prev = self._minus(beta, i)
            if prev is not None:
                f_into[i] = [None] * self._spaces[prev].dim
        for col, (i, k) in enumerate(cands):
            f_into[i][k] = {t: c for t, c in enumerate(coords[col]) if c}
        return WeightSpace(beta, parents, e, f_into)

    def word(self, beta: tuple, t: int) -> tuple:
        """Indices (i_1, ..., i_k) with basis vector t = f_{i_1} ... f_{i_k} x."""
        out = []
        while any(beta):
            i, k = self._spaces[beta].parents[t]
            out.append(i)
            beta, t = self._minus(beta, i), k
        return tuple(out)

    def apply_f(self, i: int, beta: tuple, vec: dict) -> dict:
        """f_i on a vector {t: c} of the space at beta (result lives at beta + alpha_i)."""
        f_in = self.space(self.plus(beta, i)).f_into[i]
        out: dict = {}
        for k, c in vec.items():
            for t, d in f_in[k].items():
                out[t] = out.get(t, 0) + c * d
        return {t: c for t, c in out.items() if c}

    def apply_e(self, j: int, beta: tuple, vec: dict) -> dict:
        sp = self.space(beta)
        out: dict = {}
        for t, c in vec.items():
            for s, d in sp.e[j][t].items():
                out[s] = out.get(s, 0) + c * d
        return {s: c for s, c in out.items() if c}
