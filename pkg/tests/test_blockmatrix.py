from hypothesis import given
from hypothesis import strategies as st

from dybe.blockmatrix import BlockMatrix, flatten, unflatten
from dybe.jsonio import matrix_from_obj, matrix_to_obj
from dybe.exchange import exchange_matrix
from dybe.repmod import irrep
from dybe.verma import DynParam

L1, L2 = irrep((1,)), irrep((2,))


@given(st.integers(0, 17))
def test_flatten_roundtrip(i):
    assert flatten(unflatten(i, (2, 3, 3)), (2, 3, 3)) == i


def _rand(draw_vals, legs):
    n = 1
    for l in legs:
        n *= l.dim
    return BlockMatrix(legs, {(r, c): v for (r, c), v in zip(
        [(r, c) for r in range(n) for c in range(n)], draw_vals) if v})


vals = st.lists(st.fractions(-4, 4, max_denominator=3), min_size=36, max_size=36)


@given(vals, vals)
def test_flip_is_involution_and_multiplicative(a, b):
    A, B = _rand(a, (L1, L2)), _rand(b, (L1, L2))
    assert A.flip().flip() == A
    assert (A @ B).flip() == A.flip() @ B.flip()


@given(vals)
def test_transpose_involution(a):
    A = _rand(a, (L1, L2))
    assert A.transpose().transpose() == A


def test_inverse_and_identity():
    R = exchange_matrix(L1, L2, DynParam.symbolic(1))
    assert R @ R.inverse() == BlockMatrix.identity((L1, L2))
    assert R.is_weight_preserving()


def test_json_roundtrip():
    R = exchange_matrix(L1, L1, DynParam.symbolic(1))
    obj = matrix_to_obj(R, ["x1"])
    assert matrix_from_obj(obj, R.dims, ["x1"]) == R.entries
    I = matrix_to_obj(BlockMatrix.identity((irrep((0,)),)), ["x1"])
    assert I["entries"] == [["0", "0", "1"]]
