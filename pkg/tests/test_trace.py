from fractions import Fraction
from itertools import product

import pytest
import sympy

from dybe.blockmatrix import BlockMatrix
from dybe.exact import sc_eval
from dybe.lattice import from_root_coords, height
from dybe.repmod import dual, irrep, tensor, trivial
from dybe.trace import (_check_17, q_matrix, trace_function, verify_eta_relation,
                        verify_mr_equation, verify_q_identities, weighted_trace)
from dybe.verma import DynParam

import oracle_a1
from conftest import Q, to_sympy
from test_cartan import A2_POS, brute_kostant

L1, L2 = irrep((1,)), irrep((2,))
X1 = DynParam.symbolic(1)
M1 = DynParam.symbolic(1, "m")


def test_q_matrix_golden():
    Q_ = q_matrix(L1, X1)
    x, = X1.coords()
    assert Q_.entries == {(0, 0): (x + 2) / (x + 1), (1, 1): 1}


@pytest.mark.parametrize("U,W", [(L1, L1), (L1, L2), (L2, L1), (trivial(1), L1)], ids=str)
def test_q_identities_a1(U, W):
    rep = verify_q_identities(U, W, X1)
    assert rep.passed, rep.failures


def test_q_identities_a2_numeric():
    F = irrep((1, 0))
    assert verify_q_identities(F, F, DynParam.numeric(Q("23/7", "-5/3"))).passed


def test_direct_reading_of_product_rule_fails():
    assert _check_17(L1, L1, X1).passed
    assert not _check_17(L1, L1, X1, variant="direct").passed


def test_q_is_weight_preserving_and_invertible():
    for W in (L1, L2, dual(L2), tensor(L1, L1)):
        Q_ = q_matrix(W, X1)
        assert Q_.is_weight_preserving()
        Q_.inverse()


@pytest.mark.parametrize("V,W", list(product([L1, L2], repeat=2)), ids=str)
def test_eta_relation_depth_4(V, W):
    rep = verify_eta_relation(V, W, M1, 4)
    assert rep.passed, rep.failures


def test_eta_relation_needs_exchange(monkeypatch):
    import dybe.trace as tr

    monkeypatch.setattr(tr, "exchange_matrix", lambda W, V, p: BlockMatrix.identity((W, V)))
    assert not tr.verify_eta_relation(L1, L1, M1, 2).passed


def test_psi_trivial_is_verma_character():
    N = 6
    psi = trace_function(trivial(1), N).value[(0, 0)]
    assert psi.prefactor == 1
    assert psi.terms == {(2 * k,): 1 for k in range(N + 1)}
    psi2 = trace_function(trivial(2), 4).value[(0, 0)]
    want = {}
    for beta in product(range(5), repeat=2):
        if sum(beta) <= 4:
            want[from_root_coords(beta)] = brute_kostant(beta, A2_POS)
    assert psi2.terms == want


def test_psi_matches_oracle():
    N = 5
    psi = trace_function(L2, N).value[(0, 0)]
    ref = oracle_a1.psi_coefficients(L2, N)
    for k in range(N + 1):
        got = to_sympy(psi.terms.get((2 * k,), Fraction(0)), ["m1"])
        assert sympy.simplify(got - ref[k]) == 0
    m, = M1.coords()
    assert psi.terms[(2,)] == (m - 2) / m


def test_weighted_trace_trivial_collapses():
    F = weighted_trace(trivial(1), 8)
    s = F.value[(0, 0)]
    assert s.prefactor == -1 and s.terms == {(0,): 1}


def test_weighted_trace_specializes():
    F = weighted_trace(L2, 4).value[(0, 0)]
    pt = (Fraction(19, 3),)
    for xi, c in F.terms.items():
        assert height(xi) <= 4
        sc_eval(c, pt)


@pytest.mark.parametrize("V,W", [(L2, L1), (L2, L2), (L2, trivial(1))], ids=str)
def test_mr_equation(V, W):
    rep = verify_mr_equation(V, W, 10)
    assert rep.passed, rep.failures


def test_mr_fails_without_reflection(monkeypatch):
    import dybe.diffop as do
    from dybe.exchange import exchange_matrix

    monkeypatch.setattr(do, "shifted_exchange", lambda V, U, p: exchange_matrix(V, U, p.base()))
    assert not verify_mr_equation(L2, L1, 6).passed


def test_mr_with_two_dimensional_zero_space():
    # the adjoint of A2 has dim V[0] = 2, so the leg the coefficients act on matters
    assert verify_mr_equation(irrep((1, 1)), irrep((1, 0)), 3).passed


def test_mr_fails_on_the_other_leg(monkeypatch):
    import dybe.trace as tr
    from dybe.exact.ratfun import sc_shift

    def other_leg(D, F):
        n = len(F.V.zero_space())
        out = {}
        for nu, A in D.coeffs.items():
            nu_f = tuple(Fraction(x) for x in nu)
            for (i, j), s in F.value.items():
                moved = s.map_coeffs(lambda c: sc_shift(c, nu_f)).shift_exponents(nu)
                for k in range(n):
                    a = A.get((k, i))
                    if a:
                        term = moved.map_coeffs(lambda c: c * a)
                        out[(k, j)] = out[(k, j)] + term if (k, j) in out else term
        return out

    monkeypatch.setattr(tr, "apply_diffop_mu", other_leg)
    assert not tr.verify_mr_equation(irrep((1, 1)), irrep((1, 0)), 3).passed
