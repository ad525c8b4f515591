"""Exchange matrices, dynamical shifts, QDYBE and the fusion-exchange identities."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .blockmatrix import BlockMatrix
from .intertwine import _CACHE, fusion_matrix, shifted
from .lattice import wadd
from .report import compare, merge
from .repmod import FinModule, tensor
from .verma import DynParam


def exchange_matrix(V: FinModule, W: FinModule, param: DynParam) -> BlockMatrix:
    """R_VW(param) = J_VW(param)^-1 J_WV^21(param) on V (x) W."""
    if param.is_symbolic and any(param.offset):
        return exchange_matrix(V, W, param.base()).shift(param.offset)
    key = ("R", V, W, param)
    hit = _CACHE.get(key)
    if hit is not None:
        return hit
    J_vw = fusion_matrix(V, W, param)
    J_wv21 = fusion_matrix(W, V, param).flip()
    R = J_vw.inverse() @ J_wv21
    _CACHE[key] = R
    return R


@dataclass(frozen=True)
class ShiftedMatrixExpr:
    """F(lambda + sign * sum_k h^(k)) acting on the legs ``acted`` of a product.

    ``base(p)`` returns F at parameter p as a matrix on the acted legs; the
    shift legs are read from the vector the expression is applied to.
    """

    base: Callable[[DynParam], BlockMatrix]
    acted: tuple
    shift_legs: tuple = ()
    sign: int = -1

    def shift_for(self, legs: Sequence[FinModule], mi: Sequence[int], rank: int) -> tuple:
        s = (0,) * rank
        for p in self.shift_legs:
            s = wadd(s, legs[p].weights[mi[p]])
        return tuple(self.sign * x for x in s)

    def matrix(self, legs: Sequence[FinModule], param: DynParam) -> BlockMatrix:
        return shifted(legs, self.acted, self.base, self.shift_legs, param, self.sign)


def dynamical_shift_apply(expr: ShiftedMatrixExpr, legs: Sequence[FinModule],
                          param: DynParam, vec: dict) -> dict:
    """Apply ``expr`` to a vector {flat index: c} of the product of ``legs``.

    Each basis vector is homogeneous on every leg, so the shift is evaluated
    per basis vector and the result extended linearly.
    """
    return expr.matrix(legs, param).apply(vec)


def _R(V, W):
    return lambda p: exchange_matrix(V, W, p)


def _J(V, W):
    return lambda p: fusion_matrix(V, W, p)


def _Jinv(V, W):
    return lambda p: fusion_matrix(V, W, p).inverse()


def verify_qdybe(V: FinModule, W: FinModule, U: FinModule, param: DynParam):
    """R_VW(l - h3) R_VU(l) R_WU(l - h1) = R_WU(l) R_VU(l - h2) R_VW(l) on V (x) W (x) U."""
    legs = (V, W, U)
    lhs = (shifted(legs, (0, 1), _R(V, W), (2,), param)
           @ shifted(legs, (0, 2), _R(V, U), (), param)
           @ shifted(legs, (1, 2), _R(W, U), (0,), param))
    rhs = (shifted(legs, (1, 2), _R(W, U), (), param)
           @ shifted(legs, (0, 2), _R(V, U), (1,), param)
           @ shifted(legs, (0, 1), _R(V, W), (), param))
    return compare("qdybe", legs, param, lhs, rhs)


def verify_fusion_exchange(V: FinModule, W: FinModule, U: FinModule, param: DynParam):
    """Both fusion-exchange identities on U (x) V (x) W.

    J_VW(l)^-1 R_{U,V(x)W}(l) J_VW(l - h^(U)) = R_UV(l - h^(W)) R_UW(l)
    J_UV(l - h^(W))^-1 R_{U(x)V,W}(l) J_UV(l) = R_VW(l) R_UW(l - h^(V))
    """
    legs = (U, V, W)
    VW, UV = tensor(V, W), tensor(U, V)
    lhs6 = (shifted(legs, (1, 2), _Jinv(V, W), (), param)
            @ exchange_matrix(U, VW, param).regroup(legs)
            @ shifted(legs, (1, 2), _J(V, W), (0,), param))
    rhs6 = (shifted(legs, (0, 1), _R(U, V), (2,), param)
            @ shifted(legs, (0, 2), _R(U, W), (), param))
    lhs7 = (shifted(legs, (0, 1), _Jinv(U, V), (2,), param)
            @ exchange_matrix(UV, W, param).regroup(legs)
            @ shifted(legs, (0, 1), _J(U, V), (), param))
    rhs7 = (shifted(legs, (1, 2), _R(V, W), (), param)
            @ shifted(legs, (0, 2), _R(U, W), (1,), param))
    r6 = compare("fusion-exchange-6", legs, param, lhs6, rhs6)
    r7 = compare("fusion-exchange-7", legs, param, lhs7, rhs7)
    return merge("fusion-exchange", legs, param, [r6, r7])


def reflect(param: DynParam) -> DynParam:
    """The numeric parameter -param - rho."""
    if param.is_symbolic:
        raise ValueError("symbolic reflection is a substitution, not a parameter")
    pt = tuple(-(Fraction(p) + o) - 1 for p, o in zip(param.point, param.offset))
    return DynParam("numeric", param.rank, pt, (), param.prefix)


def shifted_exchange(V: FinModule, U: FinModule, param: DynParam) -> BlockMatrix:
    """R_VU(-param - rho): substitute x_i -> -x_i - 1 (shifted by any offset)."""
    if param.is_symbolic:
        R = exchange_matrix(V, U, param.base())
        off = tuple(-Fraction(o) - 1 for o in param.offset)
        return R.subs((-1,) * param.rank, off)
    return exchange_matrix(V, U, reflect(param))
