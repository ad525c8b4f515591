"""Independent A_1 reference computations in sympy.

The Verma module is modelled directly by the basis f^k x_mu with
e f^k x = k (mu - k + 1) f^(k-1) x, and the intertwiner equations for all
levels are solved as one linear system. Only the finite module matrices are
taken from the library.
"""
from __future__ import annotations

import sympy

x = sympy.Symbol("x1")


def _col(op, u, dim):
    out = [0] * dim
    for r, c in op[u].items():
        out[r] = sympy.Rational(c.numerator, c.denominator)
    return sympy.Matrix(out)


def intertwiner(V, v: int, lam=x):
    """Coefficients c_k in V with Phi^v(x_lam) = sum_k f^k x_mu (x) c_k."""
    dim = V.dim
    nu0 = V.weights[v][0]
    mu = lam - nu0
    depth = (max(w[0] for w in V.weights) - nu0) // 2
    cs = [sympy.Matrix([sympy.Symbol(f"c{k}_{u}") for u in range(dim)]) for k in range(depth + 1)]
    eqs = []
    for k in range(depth + 1):
        for u in range(dim):
            if V.weights[u][0] != nu0 + 2 * k:
                eqs.append(cs[k][u])
    eqs += list(cs[0] - sympy.Matrix([int(u == v) for u in range(dim)]))
    E = sympy.Matrix.hstack(*[_col(V.e[0], u, dim) for u in range(dim)])
    for j in range(depth + 1):
        nxt = cs[j + 1] * (j + 1) * (mu - j) if j < depth else sympy.zeros(dim, 1)
        eqs += list(nxt + E * cs[j])
    unknowns = [s for c in cs for s in c]
    sol = sympy.solve(eqs, unknowns, dict=True)
    assert len(sol) == 1
    return [c.subs(sol[0]).applyfunc(sympy.cancel) for c in cs]


def fusion(W, V, lam=x):
    """J_WV: the top component of (Phi^w (x) 1) Phi^v (x_lam) is sum_k f^k w (x) c_k."""
    dw, dv = W.dim, V.dim
    F = sympy.Matrix.hstack(*[_col(W.f[0], u, dw) for u in range(dw)])
    J = sympy.zeros(dw * dv, dw * dv)
    for b in range(dv):
        cs = intertwiner(V, b, lam)
        for a in range(dw):
            w = sympy.Matrix([int(u == a) for u in range(dw)])
            col = sympy.zeros(dw * dv, 1)
            for k, c in enumerate(cs):
                fk = F ** k * w
                col += sympy.Matrix(sympy.kronecker_product(fk, c))
            J[:, a * dv + b] = col.applyfunc(sympy.cancel)
    return J


def flip(M, d1, d2):
    """P M P with P: V (x) W -> W (x) V, for M acting on W (x) V."""
    n = d1 * d2
    P = sympy.zeros(n, n)
    for a in range(d1):
        for b in range(d2):
            P[b * d1 + a, a * d2 + b] = 1
    return P * M * P.T


def exchange(V, W, lam=x):
    return (fusion(V, W, lam).inv() * flip(fusion(W, V, lam), W.dim, V.dim)).applyfunc(sympy.cancel)


m = sympy.Symbol("m1")


def psi_coefficients(V, order):
    """Coefficients of exp(-k alpha) in Tr(Phi^{v0} e^lambda) on M_mu, v0 spanning V[0].

    Phi(f^k x) = (f (x) 1 + 1 (x) f)^k Phi(x), whose f^k x component is
    sum_j C(k, j) f^j c_j.
    """
    zero = V.zero_space()
    assert len(zero) == 1
    z = zero[0]
    cs = intertwiner(V, z, lam=m)
    Fm = sympy.Matrix.hstack(*[_col(V.f[0], u, V.dim) for u in range(V.dim)])
    out = []
    for k in range(order + 1):
        acc = 0
        for j, c in enumerate(cs):
            if j <= k:
                acc += sympy.binomial(k, j) * (Fm ** j * c)[z]
        out.append(sympy.cancel(acc))
    return out
