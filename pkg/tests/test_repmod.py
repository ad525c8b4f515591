from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dybe.cartan import weyl_dimension
from dybe.errors import NotDominant, ParseError
from dybe.repmod import (check_relations, character, dual, irrep, parse_module, tensor,
                         trivial)

SUITE_A1 = [irrep((1,)), irrep((2,)), trivial(1)]
SUITE_A2 = [irrep((1, 0)), irrep((0, 1))]


def _all_suite():
    mods = SUITE_A1 + SUITE_A2
    out = list(mods)
    for m in mods:
        out.append(dual(m))
    out.append(tensor(irrep((1,)), irrep((2,))))
    out.append(tensor(irrep((1,)), irrep((1,))))
    out.append(tensor(irrep((1, 0)), irrep((1, 0))))
    return out


@pytest.mark.parametrize("V", _all_suite(), ids=lambda m: m.name)
def test_chevalley_serre_relations(V):
    assert check_relations(V) == []


@given(st.integers(0, 3), st.integers(0, 3))
def test_irrep_dimension_and_highest_vector(a, b):
    V = irrep((a, b))
    assert V.dim == weyl_dimension((a, b))
    top = V.highest_index()
    assert V.weights[top] == (a, b)
    assert all(not V.apply_e(i, {top: Fraction(1)}) for i in range(2))


def test_weights_and_character_symmetry():
    V = irrep((2,))
    assert sorted(V.weights) == [(-2,), (0,), (2,)]
    assert character(V, "-").terms == character(V, "+").terms
    assert len(V.zero_space()) == 1
    assert irrep((1,)).zero_space() == []


def test_dual_and_tensor():
    V = irrep((1, 0))
    D = dual(V)
    assert sorted(D.weights) == sorted(tuple(-x for x in w) for w in V.weights)
    assert dual(D) is V
    assert D.name == "L(1,0)*"
    T = tensor(V, D)
    assert T.dim == 9 and len(T.zero_space()) == 3
    assert tensor(T, V).name == "(L(1,0)⊗L(1,0)*)⊗L(1,0)"


def test_not_dominant():
    with pytest.raises(NotDominant):
        irrep((-1,))


def test_parse_module():
    assert parse_module("A2:L(1,0)") is irrep((1, 0))
    assert parse_module("L(1)*", 1) == dual(irrep((1,)))
    assert parse_module("L(1)⊗L(2)", 1).dim == 6
    for bad in ("L(1,0)", "M(1)", "L(x)", "A3:L(1)"):
        with pytest.raises(ParseError):
            parse_module(bad, 1)
