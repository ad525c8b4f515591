"""Exact row reduction over Q and over Q(x_1, ..., x_r).

Both paths eliminate fraction-free first (Bareiss) and only divide during
back substitution: integers for rational matrices, polynomials for
rational-function matrices.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

from .. import kernels as K
from ..errors import SingularSystem
from .poly import Poly, poly_divexact, poly_lcm
from .ratfun import RatFun, make


def _nvars(rows) -> int | None:
    for row in rows:
        for x in row:
            if isinstance(x, RatFun):
                return x.nvars
    return None


def _back_substitute(E: list, pivots: list, to_scalar) -> list:
    R = [[to_scalar(x) for x in row] for row in E]
    for r in range(len(R) - 1, -1, -1):
        row = R[r]
        c = pivots[r]
        p = row[c]
        if p != 1:
            inv = 1 / p
            for j in range(c, len(row)):
                if row[j]:
                    row[j] = row[j] * inv
        for i in range(r):
            f = R[i][c]
            if f:
                Ri = R[i]
                for j in range(c, len(row)):
                    if row[j]:
                        Ri[j] = Ri[j] - f * row[j]
    return R


def _rref_rational(rows) -> tuple[list, list]:
    introws = []
    for row in rows:
        d = 1
        for x in row:
            if x:
                d = d // gcd(d, Fraction(x).denominator) * Fraction(x).denominator
        introws.append([int(Fraction(x) * d) for x in row])
    E, piv = K.bareiss(introws)
    # strip common content so back substitution works on small integers
    small = []
    for row in E:
        g = 0
        for x in row:
            g = gcd(g, x)
        small.append([x // g for x in row] if g > 1 else row)
    return _back_substitute(small, piv, Fraction), piv


def _bareiss_poly(M: list) -> tuple[list, list]:
    m = len(M)
    n = len(M[0]) if m else 0
    prev = None
    r = 0
    pivots = []
    for c in range(n):
        p = r
        while p < m and M[p][c].is_zero():
            p += 1
        if p == m:
            continue
        if p != r:
            M[r], M[p] = M[p], M[r]
        Mr = M[r]
        piv = Mr[c]
        for i in range(r + 1, m):
            Mi = M[i]
            mic = Mi[c]
            for j in range(c + 1, n):
                if mic.is_zero() and Mi[j].is_zero():
                    continue
                v = piv * Mi[j] - mic * Mr[j]
                Mi[j] = v if prev is None else poly_divexact(v, prev)
            Mi[c] = Poly({}, piv.nvars)
        prev = piv
        pivots.append(c)
        r += 1
        if r == m:
            break
    return M[:r], pivots


def _rref_symbolic(rows, nvars: int) -> tuple[list, list]:
    prow = []
    for row in rows:
        den = Poly.const(1, nvars)
        for x in row:
            if isinstance(x, RatFun) and not x.den.is_one():
                den = poly_lcm(den, x.den)
        out = []
        for x in row:
            if isinstance(x, RatFun):
                out.append(x.num * poly_divexact(den, x.den))
            else:
                out.append(den.scale(Fraction(x)))
        prow.append(out)
    E, piv = _bareiss_poly(prow)
    return _back_substitute(E, piv, make), piv


def rref(rows: Sequence[Sequence]) -> tuple[list, list]:
    """Reduced row echelon form: (nonzero rows, pivot column indices)."""
    rows = [list(r) for r in rows]
    if not rows or not rows[0]:
        return [], []
    nv = _nvars(rows)
    if nv is None:
        return _rref_rational(rows)
    return _rref_symbolic(rows, nv)


def independent_columns(M: Sequence[Sequence], ncols: int) -> tuple[list, list]:
    """Pivot columns of M and the coordinates of every column in them.

    ``coords[j][t]`` is the coefficient of pivot column ``pivots[t]`` in column j.
    """
    if not M:
        return [], [[] for _ in range(ncols)]
    R, piv = rref(M)
    coords = [[R[t][j] for t in range(len(piv))] for j in range(ncols)]
    return piv, coords


def solve_unique(A: Sequence[Sequence], b: Sequence) -> list:
    """Unique solution of A u = b; raise SingularSystem otherwise."""
    n = len(A[0]) if A else 0
    if n == 0:
        if any(b):
            raise SingularSystem("inconsistent system")
        return []
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, piv = rref(aug)
    if n in piv:
        raise SingularSystem("inconsistent linear system")
    if len(piv) < n:
        raise SingularSystem(f"rank {len(piv)} < {n} unknowns")
    return [R[t][n] for t in range(n)]


def inverse(M: Sequence[Sequence]) -> list:
    n = len(M)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    R, piv = rref(aug)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise SingularSystem("matrix is singular")
    return [row[n:] for row in R]


def solve_many(A: Sequence[Sequence], rhs: Sequence[Sequence]) -> list:
    """Unique solutions of A u = b for every right-hand side b in ``rhs``.

    One elimination serves all right-hand sides; raises SingularSystem when A
    lacks full column rank or some system is inconsistent.
    """
    n = len(A[0]) if A else 0
    if not rhs:
        return []
    if n == 0:
        if any(any(b) for b in rhs):
            raise SingularSystem("inconsistent system")
        return [[] for _ in rhs]
    aug = [list(row) + [b[i] for b in rhs] for i, row in enumerate(A)]
    R, piv = rref(aug)
    if len(piv) < n or piv[n - 1] != n - 1:
        raise SingularSystem(f"rank {sum(p < n for p in piv)} < {n} unknowns")
    if len(piv) > n:
        raise SingularSystem("inconsistent linear system")
    return [[R[t][n + k] for t in range(n)] for k in range(len(rhs))]
