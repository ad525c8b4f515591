"""Formal difference operators sum_nu A_nu(lambda) T_nu on U[0]-valued functions."""
from __future__ import annotations

from fractions import Fraction

from .errors import EmptyZeroWeightSpace
from .exact.ratfun import sc_shift
from .exchange import shifted_exchange
from .lattice import height, normalize, wadd
from .report import VerificationReport
from .repmod import FinModule, tensor
from .verma import DynParam


def _matmul(A: dict, B: dict) -> dict:
    out: dict = {}
    for (i, k), a in A.items():
        for (k2, j), b in B.items():
            if k == k2:
                out[(i, j)] = out.get((i, j), 0) + a * b
    return {k: v for k, v in out.items() if v}


class DiffOp:
    """Coefficients ``coeffs[nu]`` are sparse End(U[0]) matrices {(row, col): scalar}.

    Rows and columns index ``U.zero_space()`` in order; (T_nu f)(x) = f(x + nu).
    """

    def __init__(self, U: FinModule, coeffs: dict):
        self.U = U
        self.coeffs = {
            normalize(nu): {k: v for k, v in m.items() if v} for nu, m in coeffs.items()
        }
        self.coeffs = {nu: m for nu, m in self.coeffs.items() if m}

    @property
    def size(self) -> int:
        return len(self.U.zero_space())

    @classmethod
    def identity(cls, U: FinModule) -> "DiffOp":
        n = len(U.zero_space())
        return cls(U, {(0,) * U.rank: {(i, i): Fraction(1) for i in range(n)}})

    def keys(self) -> list:
        return sorted(self.coeffs, key=lambda nu: (-height(nu), tuple(-x for x in nu)))

    def __eq__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self.size == other.size and self.coeffs == other.coeffs

    __hash__ = None

    def __repr__(self):
        return f"DiffOp(U={self.U.name}, shifts={self.keys()})"


def difference_operator(V: FinModule, U: FinModule, param: DynParam | None = None) -> DiffOp:
    """D_V^U = sum_nu Tr_{V[nu]}(shifted exchange block on V[nu] (x) U[0]) T_nu."""
    zero = U.zero_space()
    if not zero:
        raise EmptyZeroWeightSpace(f"{U.name} has no zero weight")
    param = param or DynParam.symbolic(U.rank)
    R = shifted_exchange(V, U, param)
    du = U.dim
    coeffs = {}
    for nu in V.distinct_weights():
        m: dict = {}
        for a in V.weight_space(nu):
            for j, u in enumerate(zero):
                col = a * du + u
                for i, u2 in enumerate(zero):
                    x = R[(a * du + u2, col)]
                    if x:
                        m[(i, j)] = m.get((i, j), 0) + x
        coeffs[nu] = m
    return DiffOp(U, coeffs)


def compose(A: DiffOp, B: DiffOp) -> DiffOp:
    """(A o B)[kappa] = sum_{mu + nu = kappa} A[mu](x) B[nu](x + mu)."""
    if A.size != B.size:
        raise ValueError("operators act on different spaces")
    out: dict = {}
    for mu, a in A.coeffs.items():
        mu_f = tuple(Fraction(x) for x in mu)
        for nu, b in B.coeffs.items():
            b_shift = {k: sc_shift(v, mu_f) for k, v in b.items()}
            kappa = normalize(wadd(mu, nu))
            prod = _matmul(a, b_shift)
            acc = out.setdefault(kappa, {})
            for k, v in prod.items():
                acc[k] = acc.get(k, 0) + v
    return DiffOp(A.U, out)


def _diffop_failures(name: str, X: DiffOp, Y: DiffOp) -> list:
    out = []
    for nu in sorted(set(X.coeffs) | set(Y.coeffs), key=lambda n: (height(n), n)):
        a, b = X.coeffs.get(nu, {}), Y.coeffs.get(nu, {})
        for k in sorted(set(a) | set(b)):
            x, y = a.get(k, Fraction(0)), b.get(k, Fraction(0))
            if x != y:
                out.append({"part": name, "block": list(nu), "row": k[0], "col": k[1], "lhs": x, "rhs": y})
    return out


def verify_commutativity(V: FinModule, W: FinModule, U: FinModule) -> VerificationReport:
    """D_V D_W = D_W D_V = D_{V(x)W} = D_{W(x)V} as formal operators on U[0]."""
    Dv, Dw = difference_operator(V, U), difference_operator(W, U)
    vw = compose(Dv, Dw)
    wv = compose(Dw, Dv)
    dvw = difference_operator(tensor(V, W), U)
    dwv = difference_operator(tensor(W, V), U)
    failures = (_diffop_failures("DvDw=DwDv", vw, wv)
                + _diffop_failures("DvDw=D(v(x)w)", vw, dvw)
                + _diffop_failures("DvDw=D(w(x)v)", vw, dwv))
    return VerificationReport("diffop-commute", [V.name, W.name, U.name], "x", failures)
