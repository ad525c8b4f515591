"""Bilinear forms, Q-matrices, trace functions and the difference equation they satisfy."""
from __future__ import annotations

from fractions import Fraction
from math import floor

from .blockmatrix import BlockMatrix
from .cartan import root_system, weyl_denominator
from .diffop import difference_operator
from .errors import EmptyZeroWeightSpace, SingularQ, SingularSystem
from .exact.linalg import inverse as dense_inverse
from .exact.ratfun import sc_shift, sc_subs
from .exact.series import ExpSeries, series_mul
from .exchange import exchange_matrix
from .intertwine import _apply_basis, fusion_matrix, shifted, solve_intertwiner
from .lattice import from_root_coords, height, wadd, wneg
from .report import VerificationReport, compare, merge
from .repmod import FinModule, character, dual, tensor
from .verma import DynParam, cone_elements, verma_module


def q_matrix(W: FinModule, param: DynParam) -> BlockMatrix:
    """Q_W(param) from B(w, w*) = <,>(J_{WW*}(w (x) w*)) = <Q_W w, w*>."""
    d = W.dim
    J = fusion_matrix(W, dual(W), param)
    entries = {}
    for (r, c), x in J.entries.items():
        k, k2 = divmod(r, d)
        if k != k2:
            continue
        i, j = divmod(c, d)
        entries[(j, i)] = entries.get((j, i), 0) + x
    Q = BlockMatrix((W,), entries)
    if not Q.is_weight_preserving():
        raise AssertionError(f"Q matrix of {W.name} is not weight preserving")
    return Q


def bilinear_form(W: FinModule, param: DynParam) -> dict:
    """B(w_i, w_j*) keyed by (i, j)."""
    return {(c, r): v for (r, c), v in q_matrix(W, param).entries.items()}


def _check_17(U, W, param, variant: str = "flipped") -> VerificationReport:
    # B_U(l)[u,u*] B_W(l - wt u*)[w,w*]
    #   = sum_{a,b} J_UW(l - wt u* - wt w*)[a,(u,w)] J^21_{W*U*}(l)[b,(u*,w*)] B_{U(x)W}(l)[a,b]
    # variant="direct" uses J_{U*W*} in place of J^21_{W*U*}; it does not hold in general.
    dW = W.dim
    Us, Ws = dual(U), dual(W)
    if variant == "flipped":
        K = fusion_matrix(Ws, Us, param).flip()
    elif variant == "direct":
        K = fusion_matrix(Us, Ws, param)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    B_UW = bilinear_form(tensor(U, W), param)
    lhs = {}
    for (u, us), x in bilinear_form(U, param).items():
        for (w, ws), y in bilinear_form(W, param.shifted(wneg(Us.weights[us]))).items():
            lhs[(u * dW + w, us * dW + ws)] = x * y
    n = U.dim * dW
    Kcols = [K.column(c) for c in range(n)]
    rhs = {}
    for us in range(U.dim):
        for ws in range(dW):
            c2 = us * dW + ws
            s = wneg(wadd(Us.weights[us], Ws.weights[ws]))
            Jsh = fusion_matrix(U, W, param.shifted(s))
            for c1 in range(n):
                acc = 0
                for a, x in Jsh.column(c1).items():
                    for b, y in Kcols[c2].items():
                        z = B_UW.get((a, b))
                        if z:
                            acc = acc + x * y * z
                if acc:
                    rhs[(c1, c2)] = acc
    legs = (U, W)
    return compare("q-17", legs, param, BlockMatrix(legs, lhs), BlockMatrix(legs, rhs))


def _Q(X):
    return lambda p: q_matrix(X, p)


def verify_q_identities(U: FinModule, W: FinModule, param: DynParam) -> VerificationReport:
    """The bilinear-form product rule, the Q_{U(x)W} formula, its flip symmetry,
    and the dual exchange matrix identity, all as exact matrix equalities."""
    legs = (U, W)
    Us, Ws = dual(U), dual(W)
    reports = [_check_17(U, W, param)]

    QX = q_matrix(tensor(U, W), param).regroup(legs)
    KT = fusion_matrix(Ws, Us, param).flip().transpose(legs)
    T = shifted(legs, (0,), _Q(U), (), param) @ shifted(legs, (1,), _Q(W), (0,), param, +1)
    Jinv = shifted(legs, (0, 1), lambda p: fusion_matrix(U, W, p).inverse(), (0, 1), param, +1)
    reports.append(compare("q-18", legs, param, QX, KT.inverse() @ T @ Jinv))

    QY = q_matrix(tensor(W, U), param).regroup((W, U)).flip()
    reports.append(compare("q-flip", legs, param, QX, QY))

    # the same product rule read through the flip symmetry
    KT2 = fusion_matrix(Us, Ws, param).transpose(legs)
    T2 = shifted(legs, (0,), _Q(U), (1,), param, +1) @ shifted(legs, (1,), _Q(W), (), param)
    Jinv2 = shifted(legs, (0, 1), lambda p: fusion_matrix(W, U, p).flip().inverse(), (0, 1), param, +1)
    reports.append(compare("q-18-flipped", legs, param, QX, KT2.inverse() @ T2 @ Jinv2))

    lhs = exchange_matrix(Us, Ws, param).transpose(legs)
    A = shifted(legs, (0,), _Q(U), (), param) @ shifted(legs, (1,), _Q(W), (0,), param, +1)
    R = shifted(legs, (0, 1), lambda p: exchange_matrix(U, W, p), (0, 1), param, +1)
    B = shifted(legs, (0,), _Q(U), (1,), param, +1) @ shifted(legs, (1,), _Q(W), (), param)
    reports.append(compare("q-20", legs, param, lhs, A @ R @ B.inverse()))
    return merge("q-identities", legs, param, reports)


def _eta_key(phi_target: DynParam, comp: tuple, w1: int, v2: int, d: int) -> tuple:
    beta, t = comp
    return (phi_target.offset, beta, t, w1, v2, d)


def verify_eta_relation(V: FinModule, W: FinModule, mu: DynParam, depth: int) -> VerificationReport:
    """Both sides of the eta relation on w (x) z, z running over M_{mu+nu} to a safe depth.

    LHS: sum_b P (Phi^{v_b}_mu (x) 1) Phi^w_{mu+nu}(z) (x) v_b*.
    RHS: sum_{b,c,d} R_WV(mu+nu)[(c,b),(w,d)] eta(w_c (x) Phi^{v_b}_{mu+nu}(z)) (x) v_d*,
    where eta(w' (x) z') = Phi^{w'}(z') on the Verma module containing z'.
    Intertwiner images are exact at every depth, so every component is compared.
    """
    max_ht = max(height(w) for w in W.weights)
    zdepth = max(0, floor(depth - max_ht))
    dV = V.dim
    failures = []
    checked = 0
    for w in range(W.dim):
        nu = W.weights[w]
        src = mu.shifted(nu)
        phi_w = solve_intertwiner(src, W, w)
        R = exchange_matrix(W, V, src)
        Msrc = verma_module(src)
        for beta in cone_elements(mu.rank, zdepth):
            for t in range(Msrc.dim(beta)):
                z = (beta, t)
                lhs: dict = {}
                for (b1, t1, w1), c in _apply_basis(phi_w, z).items():
                    for b in range(dV):
                        phi_v = solve_intertwiner(phi_w.target, V, b)
                        for (b2, t2, v2), d in _apply_basis(phi_v, (b1, t1)).items():
                            k = _eta_key(phi_v.target, (b2, t2), w1, v2, b)
                            lhs[k] = lhs.get(k, 0) + c * d
                rhs: dict = {}
                for b in range(dV):
                    phi_vb = solve_intertwiner(src, V, b)
                    img = _apply_basis(phi_vb, z)
                    for d in range(dV):
                        for c_idx in range(W.dim):
                            coef = R[(c_idx * dV + b, w * dV + d)]
                            if not coef:
                                continue
                            for (b1, t1, v2), x in img.items():
                                phi_c = solve_intertwiner(phi_vb.target, W, c_idx)
                                for (b2, t2, w1), y in _apply_basis(phi_c, (b1, t1)).items():
                                    k = _eta_key(phi_c.target, (b2, t2), w1, v2, d)
                                    rhs[k] = rhs.get(k, 0) + coef * x * y
                lhs = {k: v for k, v in lhs.items() if v}
                rhs = {k: v for k, v in rhs.items() if v}
                checked += 1
                for k in sorted(set(lhs) | set(rhs)):
                    a, b_ = lhs.get(k, Fraction(0)), rhs.get(k, Fraction(0))
                    if a != b_:
                        failures.append({"block": list(nu), "row": str((w, z)), "col": str(k[1:]),
                                         "lhs": a, "rhs": b_})
    rep = VerificationReport("eta", [V.name, W.name], str(mu), failures[:20])
    rep.note = f"{checked} vectors w(x)z with z of depth <= {zdepth}"
    return rep


class TraceFunction:
    """Element of V[0] (x) V*[0] with ExpSeries coordinates.

    ``value[(i, j)]`` is the coordinate along v_i (x) v_j*, with i and j
    indexing ``V.zero_space()``.
    """

    def __init__(self, V: FinModule, order, value: dict, kind: str = "psi"):
        self.V = V
        self.order = order
        self.value = {k: s for k, s in value.items() if s.terms}
        self.kind = kind

    @property
    def prefactor(self) -> int:
        return 1 if self.kind == "psi" else -1

    def __eq__(self, other):
        return isinstance(other, TraceFunction) and self.value == other.value and self.order == other.order

    __hash__ = None

    def __repr__(self):
        return f"TraceFunction({self.kind}, {self.V.name}, order={self.order})"


def _mu_param(rank: int) -> DynParam:
    return DynParam.symbolic(rank, prefix="m")


def trace_function(V: FinModule, order: int) -> TraceFunction:
    """Psi_V(lambda, mu) = Tr_{M_mu}(Phi_mu^{V[0]} e^lambda), truncated at depth ``order``."""
    zero = V.zero_space()
    if not zero:
        raise EmptyZeroWeightSpace(f"{V.name} has no zero weight")
    mu = _mu_param(V.rank)
    M = verma_module(mu)
    pos = {u: i for i, u in enumerate(zero)}
    terms: dict = {}
    phis = [solve_intertwiner(mu, V, v) for v in zero]
    for beta in cone_elements(V.rank, order):
        xi = from_root_coords(beta)
        for t in range(M.dim(beta)):
            for j, phi in enumerate(phis):
                for (b2, t2, u), c in _apply_basis(phi, (beta, t)).items():
                    if b2 == beta and t2 == t and u in pos:
                        acc = terms.setdefault((pos[u], j), {})
                        acc[xi] = acc.get(xi, 0) + c
    value = {k: ExpSeries(V.rank, order, d, prefactor=1) for k, d in terms.items()}
    return TraceFunction(V, order, value, "psi")


def _reflect_coeff(rank: int):
    neg = (-1,) * rank
    off = (-1,) * rank
    return lambda c: sc_subs(c, neg, off)


def q_reflected_inverse(V: FinModule) -> list:
    """(Q_{V*}(-mu - rho))^-1 restricted to V*[0], as a dense matrix in mu."""
    Vs = dual(V)
    zero = Vs.zero_space()
    Q = q_matrix(Vs, _mu_param(V.rank)).subs((-1,) * V.rank, (-1,) * V.rank)
    M = [[Q[(r, c)] for c in zero] for r in zero]
    try:
        return dense_inverse(M)
    except SingularSystem:
        raise SingularQ(f"Q of {Vs.name} is singular on the zero weight space") from None


def weighted_trace(V: FinModule, order: int) -> TraceFunction:
    """F_V(lambda, mu) = Q_{V*}(-mu - rho)^-1 Psi_V(lambda, -mu - rho) delta(lambda)."""
    rs = root_system(V.rank)
    psi = trace_function(V, order)
    rho = rs.rho.coords
    refl = _reflect_coeff(V.rank)
    delta = weyl_denominator(order, rs)
    prod = {}
    for k, s in psi.value.items():
        # exp(<lambda, -mu - rho>) exp(-<lambda, beta>) = exp(-<lambda, mu>) exp(-<lambda, beta + rho>)
        moved = ExpSeries(V.rank, Fraction(order) + height(rho),
                          {wadd(xi, rho): refl(c) for xi, c in s.terms.items()}, prefactor=-1)
        prod[k] = series_mul(moved, delta)
    Qinv = q_reflected_inverse(V)
    n = len(V.zero_space())
    value = {}
    for i in range(n):
        for j in range(n):
            acc = None
            for k in range(n):
                s = prod.get((i, k))
                q = Qinv[j][k]
                if s is None or not q:
                    continue
                term = s.scale(q)
                acc = term if acc is None else acc + term
            if acc is not None:
                value[(i, j)] = acc
    return TraceFunction(V, order, value, "weighted")


def apply_diffop_mu(D, F: TraceFunction) -> dict:
    """sum_nu A_nu(mu) T_nu F with A_nu acting on the V*[0] leg."""
    n = len(F.V.zero_space())
    out: dict = {}
    for nu, A in D.coeffs.items():
        nu_f = tuple(Fraction(x) for x in nu)
        for (i, j), s in F.value.items():
            moved = s.map_coeffs(lambda c: sc_shift(c, nu_f)).shift_exponents(nu)
            for k in range(n):
                a = A.get((k, j))
                if not a:
                    continue
                term = moved.map_coeffs(lambda c: c * a)
                out[(i, k)] = term if (i, k) not in out else out[(i, k)] + term
    return out


def verify_mr_equation(V: FinModule, W: FinModule, order: int) -> VerificationReport:
    """D_W^{mu,V*} F_V = chi_W(e^-lambda) F_V, compared below the reliable height."""
    F = weighted_trace(V, order)
    D = difference_operator(W, dual(V), _mu_param(V.rank))
    lhs = apply_diffop_mu(D, F)
    chi = character(W, "-")
    rhs = {k: series_mul(chi, s) for k, s in F.value.items()}
    reliable = Fraction(order) - max(height(w) for w in W.weights)
    failures = []
    for k in sorted(set(lhs) | set(rhs)):
        a = lhs.get(k, ExpSeries(V.rank, reliable, prefactor=-1)).truncate(reliable)
        b = rhs.get(k, ExpSeries(V.rank, reliable, prefactor=-1)).truncate(reliable)
        for xi in sorted(set(a.terms) | set(b.terms), key=lambda x: (height(x), x)):
            x, y = a.terms.get(xi, Fraction(0)), b.terms.get(xi, Fraction(0))
            if x != y:
                failures.append({"block": list(xi), "row": k[0], "col": k[1], "lhs": x, "rhs": y})
    rep = VerificationReport("mr", [V.name, W.name], "m", failures[:20])
    rep.note = f"order {order}, compared through height {reliable}"
    return rep
