from fractions import Fraction
from itertools import combinations_with_replacement, product

from hypothesis import given
from hypothesis import strategies as st

from dybe.cartan import kostant_partition, root_system, weyl_denominator, weyl_dimension
from dybe.exact import ExpSeries, series_mul
from dybe.lattice import cartan_matrix, from_root_coords, height, inverse_cartan


def brute_kostant(beta, positive):
    """Count multisets of positive roots (simple-root coordinates) summing to beta."""
    n = sum(beta)
    count = 0
    for k in range(n + 1):
        for combo in combinations_with_replacement(positive, k):
            s = tuple(sum(r[i] for r in combo) for i in range(len(beta)))
            count += s == tuple(beta)
    return count


A1_POS = [(1,)]
A2_POS = [(1, 0), (0, 1), (1, 1)]


def test_cartan_inverse():
    for r in (1, 2, 3):
        C, Ci = cartan_matrix(r), inverse_cartan(r)
        for i in range(r):
            for j in range(r):
                assert sum(C[i][k] * Ci[k][j] for k in range(r)) == (i == j)


def test_positive_roots():
    rs = root_system(2)
    got = sorted(tuple(int(x) for x in a.root_coords()) for a in rs.positive_roots)
    assert got == sorted(A2_POS)
    assert height(rs.rho.coords) == 2
    assert height(root_system(1).rho.coords) == Fraction(1, 2)


def test_kostant_matches_enumeration():
    for beta in product(range(5), repeat=2):
        assert kostant_partition(from_root_coords(beta)) == brute_kostant(beta, A2_POS)
    for k in range(6):
        assert kostant_partition(from_root_coords((k,))) == brute_kostant((k,), A1_POS) == 1


def test_kostant_off_cone_is_zero():
    assert kostant_partition((1, 0)) == 0  # fundamental weight, not in the root lattice
    assert kostant_partition(from_root_coords((-1, 2))) == 0


@given(st.integers(0, 6), st.integers(0, 6))
def test_weyl_dimension_closed_form(a, b):
    assert weyl_dimension((a, b)) == (a + 1) * (b + 1) * (a + b + 2) // 2
    assert weyl_dimension((a,)) == a + 1


def test_weyl_denominator_inverts_verma_character():
    # delta * sum_beta K(beta) e^-beta = e^rho, checked where the product is complete
    for r in (1, 2):
        rs = root_system(r)
        N = 6
        ch_terms = []
        for beta in product(range(N + 1), repeat=r):
            xi = from_root_coords(beta)
            if height(xi) <= N:
                ch_terms.append((xi, Fraction(brute_kostant(beta, A1_POS if r == 1 else A2_POS))))
        ch = ExpSeries(r, N, ch_terms)
        prod = series_mul(weyl_denominator(N, rs), ch).truncate(N - height(rs.rho.coords))
        assert prod.terms == {tuple(-x for x in rs.rho.coords): 1}


def test_a2_denominator_terms():
    d = weyl_denominator(None, root_system(2))
    # 8 signed subset sums; {alpha1, alpha2} and the highest root cancel
    assert len(d.terms) == 6
    assert all(abs(c) == 1 for c in d.terms.values())
