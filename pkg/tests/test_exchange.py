from fractions import Fraction

import pytest
import sympy

from dybe.blockmatrix import BlockMatrix
from dybe.exact import sc_eval
from dybe.exchange import (ShiftedMatrixExpr, dynamical_shift_apply, exchange_matrix,
                           shifted_exchange, verify_fusion_exchange, verify_qdybe)
from dybe.intertwine import _apply_basis, solve_intertwiner
from dybe.repmod import irrep, tensor, trivial
from dybe.verma import DynParam

import oracle_a1
from conftest import Q, to_sympy

L1, L2 = irrep((1,)), irrep((2,))
X1 = DynParam.symbolic(1)
F = irrep((1, 0))
A2_POINTS = [Q("31/7", "-9/4"), Q("-211/13", "57/8"), Q("5/2", "1/3"),
             Q("1001/17", "-3/19"), Q("-7/9", "-44/7")]


def test_exchange_golden_values():
    R = exchange_matrix(L1, L1, X1)
    x, = X1.coords()
    assert R[(2, 1)] == 1 / (x + 1)
    assert R[(1, 2)] == -1 / (x + 1)
    assert R[(2, 2)] == 1 - 1 / (x + 1) ** 2
    assert R[(0, 0)] == R[(1, 1)] == R[(3, 3)] == 1


@pytest.mark.parametrize("V,W", [(L1, L1), (L1, L2), (L2, L1)], ids=str)
def test_exchange_matches_oracle(V, W):
    R = exchange_matrix(V, W, X1)
    ref = oracle_a1.exchange(V, W)
    n = V.dim * W.dim
    for r in range(n):
        for c in range(n):
            assert sympy.simplify(to_sympy(R[(r, c)], ["x1"]) - ref[r, c]) == 0


def _composite_image(param, first, second, a, b):
    """(Phi^a (x) 1) Phi^b (x_param) with Phi^b for ``second`` and Phi^a for ``first``."""
    phi_b = solve_intertwiner(param, second, b)
    phi_a = solve_intertwiner(phi_b.target, first, a)
    out = {}
    for y, vec in phi_b.payload.items():
        for (beta, t, u), c in _apply_basis(phi_a, y).items():
            for u2, d in vec.items():
                k = (beta, t, u, u2)
                out[k] = out.get(k, 0) + c * d
    return {k: v for k, v in out.items() if v}


def test_expansion_route_agrees_with_definition():
    # (Phi^w (x) 1) Phi^v = (1 (x) P) sum_i (Phi^{v_i} (x) 1) Phi^{w_i}, sum v_i (x) w_i = R(v (x) w)
    V = W = L1
    R = exchange_matrix(V, W, X1)
    dw = W.dim
    for v in range(V.dim):
        for w in range(W.dim):
            lhs = _composite_image(X1, W, V, w, v)
            rhs = {}
            for (row, col), r in R.entries.items():
                if col != v * dw + w:
                    continue
                vi, wi = divmod(row, dw)
                for (beta, t, a, b), c in _composite_image(X1, V, W, vi, wi).items():
                    k = (beta, t, b, a)
                    rhs[k] = rhs.get(k, 0) + r * c
            rhs = {k: c for k, c in rhs.items() if c}
            assert lhs == rhs


def test_shifted_exchange_is_reflection():
    Rs = shifted_exchange(L1, L1, X1)
    x, = X1.coords()
    assert Rs[(2, 1)] == -1 / x
    pt = Fraction(13, 5)
    num = shifted_exchange(L1, L1, DynParam.numeric((pt,)))
    assert {k: sc_eval(v, (pt,)) for k, v in Rs.entries.items()} == num.entries


@pytest.mark.parametrize("mods", [(L1, L1, L1), (L1, L2, L1), (L2, L1, L1), (trivial(1), L1, L2)],
                         ids=lambda m: ",".join(x.name for x in m))
def test_qdybe_and_fusion_exchange_a1(mods):
    assert verify_qdybe(*mods, X1).passed
    assert verify_fusion_exchange(*mods, X1).passed


@pytest.mark.parametrize("pt", A2_POINTS[:2], ids=str)
def test_qdybe_a2_numeric(pt):
    p = DynParam.numeric(pt)
    assert verify_qdybe(F, F, F, p).passed
    assert verify_fusion_exchange(F, F, F, p).passed


def test_qdybe_without_shifts_fails():
    # dropping the dynamical shifts leaves the classical YBE, which R does not satisfy
    import dybe.exchange as ex

    legs = (L1, L1, L1)
    R = lambda p: exchange_matrix(L1, L1, p)
    lhs = (ex.shifted(legs, (0, 1), R, (), X1) @ ex.shifted(legs, (0, 2), R, (), X1)
           @ ex.shifted(legs, (1, 2), R, (), X1))
    rhs = (ex.shifted(legs, (1, 2), R, (), X1) @ ex.shifted(legs, (0, 2), R, (), X1)
           @ ex.shifted(legs, (0, 1), R, (), X1))
    assert lhs != rhs


def test_dynamical_shift_reads_weight_per_vector():
    legs = (L1, L1, L1)
    expr = ShiftedMatrixExpr(lambda p: exchange_matrix(L1, L1, p), (0, 1), (2,))
    x, = X1.coords()
    # basis vector v+ (x) v- (x) v-: third leg weight -1, so R is taken at x + 1
    out = dynamical_shift_apply(expr, legs, X1, {0 * 4 + 1 * 2 + 1: Fraction(1)})
    assert out[1 * 4 + 0 * 2 + 1] == 1 / (x + 2)
    out = dynamical_shift_apply(expr, legs, X1, {0 * 4 + 1 * 2 + 0: Fraction(1)})
    assert out[1 * 4 + 0 * 2 + 0] == 1 / x


def test_exchange_unitarity_with_tensor_operand():
    # R_VW(l) R_WV^21(l) = 1 for the exchange built from fusion matrices
    V, W = L1, tensor(L1, L1)
    a = exchange_matrix(V, W, X1)
    b = exchange_matrix(W, V, X1).flip()
    assert a @ b == BlockMatrix.identity((V, W))
