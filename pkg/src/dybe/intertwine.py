"""Intertwining operators M_lambda -> M_{lambda - wt v} (x) V and fusion matrices."""
from __future__ import annotations

from fractions import Fraction

from .blockmatrix import BlockMatrix, embed
from .errors import NonHomogeneousVector
from .exact.linalg import solve_many
from .lattice import from_root_coords, is_root_cone, root_coords, wadd, wsub
from .report import VerificationReport, compare
from .repmod import FinModule, tensor
from .verma import DynParam, VermaModule, tensor_act, verma_module


class Intertwiner:
    """Phi with Phi(x_lambda) = sum_y y (x) payload[y], y running over a basis of M_mu.

    ``payload`` maps (beta, t) to a vector {u: c} of V; the top entry is v.
    """

    def __init__(self, param: DynParam, V: FinModule, v: dict, payload: dict, depth: int):
        self.param = param
        self.V = V
        self.v = v
        self.payload = payload
        self.depth = depth
        self.wt = V.vector_weight(v)
        self.target = param.shifted(tuple(-x for x in self.wt))
        self._images: dict = {}

    @property
    def source_module(self) -> VermaModule:
        return verma_module(self.param)

    @property
    def target_module(self) -> VermaModule:
        return verma_module(self.target)

    def top_vector(self) -> dict:
        """Phi(x_lambda) as a tensor vector {(beta, t, u): c}."""
        return {(b, t, u): c for (b, t), vec in self.payload.items() for u, c in vec.items()}

    def check(self) -> bool:
        """e_i Phi(x_lambda) = 0 for every i."""
        M = self.target_module
        top = self.top_vector()
        return all(not tensor_act(M, self.V, ("e", i), top) for i in range(self.param.rank))


_CACHE: dict = {}


def clear_cache():
    _CACHE.clear()


def _levels(V: FinModule, nu0: tuple):
    """Cone elements beta (simple-root coordinates) with V[nu0 + beta] nonzero, by height."""
    out = []
    for w in V.distinct_weights():
        d = wsub(w, nu0)
        if is_root_cone(d):
            out.append(tuple(int(x) for x in root_coords(d)))
    out.sort(key=lambda b: (sum(b), b))
    return out


def solve_intertwiner(param: DynParam, V: FinModule, v) -> Intertwiner:
    """The unique intertwiner with top term v, solved level by level.

    ``v`` is a basis index of V or a homogeneous vector {index: coefficient}.
    At level beta the unknown components in M_mu[mu - beta] (x) V[wt v + beta]
    are fixed by e_i Phi = 0 projected to M_mu[mu - beta + alpha_i]; the
    coefficient matrix is the e-action of M_mu and is shared by every V-basis
    vector at that weight, so one elimination serves them all.
    """
    if isinstance(v, int):
        v = {v: Fraction(1)}
    v = {k: c for k, c in v.items() if c}
    nu0 = V.vector_weight(v)
    if nu0 is None:
        raise NonHomogeneousVector("intertwiner top vector must be a nonzero weight vector")
    key = (param, V, tuple(sorted(v.items())))
    hit = _CACHE.get(key)
    if hit is not None:
        return hit
    if param.is_symbolic and any(param.offset):
        # symbolic solutions at a shifted parameter are shifts of the base solution
        base = solve_intertwiner(param.base(), V, v)
        off = tuple(Fraction(x) for x in param.offset)
        from .exact.ratfun import sc_shift
        payload = {y: {u: sc_shift(c, off) for u, c in vec.items()} for y, vec in base.payload.items()}
        out = Intertwiner(param, V, v, payload, base.depth)
        _CACHE[key] = out
        return out
    mu = param.shifted(tuple(-x for x in nu0))
    M = verma_module(mu)
    r = param.rank
    zero = (0,) * r
    M.space(zero)
    payload: dict = {(zero, 0): dict(v)}
    levels = _levels(V, nu0)
    depth = max((sum(b) for b in levels), default=0)
    for beta in levels:
        if not any(beta):
            continue
        sp = M.space(beta)
        targets = V.weight_space(wadd(nu0, from_root_coords(beta)))
        # rows: (i, y') with y' a basis vector of M_mu at beta - alpha_i
        rows = []
        for i in range(r):
            if beta[i] == 0:
                continue
            lower = beta[:i] + (beta[i] - 1,) + beta[i + 1:]
            for s in range(M.dim(lower)):
                rows.append((i, lower, s))
        A = [[Fraction(0)] * sp.dim for _ in rows]
        row_of = {(i, s): n for n, (i, _, s) in enumerate(rows)}
        for t in range(sp.dim):
            for i in range(r):
                if beta[i] == 0:
                    continue
                for s, c in sp.e[i][t].items():
                    A[row_of[(i, s)]][t] = c
        rhs = []
        for u2 in targets:
            b = [Fraction(0)] * len(rows)
            for n, (i, lower, s) in enumerate(rows):
                known = payload.get((lower, s))
                if not known:
                    continue
                acc = 0
                for u, c in known.items():
                    d = V.e[i][u].get(u2)
                    if d:
                        acc = acc + c * d
                b[n] = -acc
            rhs.append(b)
        sols = solve_many(A, rhs)
        for t in range(sp.dim):
            vec = {u2: sol[t] for u2, sol in zip(targets, sols) if sol[t]}
            if vec:
                payload[(beta, t)] = vec
    out = Intertwiner(param, V, v, payload, depth)
    _CACHE[key] = out
    return out


def apply_intertwiner(phi: Intertwiner, y) -> dict:
    """Phi applied to a source Verma vector (a basis key (beta, t) or a dict of them).

    Uses Phi(f_i y') = f_i Phi(y'), so every basis image is the Leibniz action of
    its defining f-word on Phi(x_lambda); images are memoized on ``phi``.
    """
    if isinstance(y, tuple):
        return _apply_basis(phi, y)
    out: dict = {}
    for key, c in y.items():
        for k, d in _apply_basis(phi, key).items():
            out[k] = out.get(k, 0) + c * d
    return {k: v for k, v in out.items() if v}


def _apply_basis(phi: Intertwiner, y: tuple) -> dict:
    img = phi._images.get(y)
    if img is not None:
        return img
    beta, t = y
    if not any(beta):
        img = phi.top_vector()
    else:
        i, k = phi.source_module.space(beta).parents[t]
        lower = beta[:i] + (beta[i] - 1,) + beta[i + 1:]
        img = tensor_act(phi.target_module, phi.V, ("f", i), _apply_basis(phi, (lower, k)))
    phi._images[y] = img
    return img


def top_component(vec: dict) -> dict:
    """V-component of an M (x) V vector along the highest vector of M."""
    out: dict = {}
    for (beta, t, u), c in vec.items():
        if not any(beta):
            out[u] = out.get(u, 0) + c
    return {u: c for u, c in out.items() if c}


def _precedes(a: tuple, b: tuple) -> bool:
    """a < b in the root-cone order."""
    d = wsub(b, a)
    return any(d) and is_root_cone(d)


def fusion_matrix(W: FinModule, V: FinModule, param: DynParam, check: bool = True) -> BlockMatrix:
    """J_WV(param) on W (x) V: column w (x) v is the expectation of (Phi^w (x) 1) Phi^v (x_lambda)."""
    if param.is_symbolic and any(param.offset):
        return fusion_matrix(W, V, param.base(), check).shift(param.offset)
    key = ("J", W, V, param)
    hit = _CACHE.get(key)
    if hit is not None:
        return hit
    dv = V.dim
    entries = {}
    for b in range(dv):
        phi_v = solve_intertwiner(param, V, b)
        for a in range(W.dim):
            phi_w = solve_intertwiner(phi_v.target, W, a)
            col = a * dv + b
            for y, vvec in phi_v.payload.items():
                top = top_component(_apply_basis(phi_w, y))
                for a2, c in top.items():
                    for b2, d in vvec.items():
                        k = (a2 * dv + b2, col)
                        entries[k] = entries.get(k, 0) + c * d
    J = BlockMatrix((W, V), entries)
    if check:
        _assert_triangular(J, W, V)
    _CACHE[key] = J
    return J


def _assert_triangular(J: BlockMatrix, W: FinModule, V: FinModule):
    dv = V.dim
    for (r, c), x in J.entries.items():
        a2, b2 = divmod(r, dv)
        a, b = divmod(c, dv)
        if (a2, b2) == (a, b):
            if x != 1:
                raise AssertionError(f"fusion diagonal entry at {(a, b)} is {x}, not 1")
            continue
        ok = _precedes(W.weights[a2], W.weights[a]) and wadd(W.weights[a2], V.weights[b2]) == wadd(
            W.weights[a], V.weights[b]
        )
        if not ok:
            raise AssertionError(f"fusion matrix violates triangularity at {(r, c)}")


def shifted(legs, positions, base, shift_legs, param: DynParam, sign: int = -1) -> BlockMatrix:
    """F(param + sign * sum of weights on ``shift_legs``) acting on ``positions``.

    ``base(p)`` must return the matrix at parameter p on the acted legs; the
    shift is read off every input basis vector.
    """
    legs = tuple(legs)

    def shift_of(mi):
        s = (0,) * param.rank
        for p in shift_legs:
            s = wadd(s, legs[p].weights[mi[p]])
        return tuple(sign * x for x in s)

    return embed(legs, positions, lambda s: base(param.shifted(s)), shift_of)


def verify_cocycle(U: FinModule, W: FinModule, V: FinModule, param: DynParam) -> VerificationReport:
    """J_{U,W(x)V}(l) (1 (x) J_WV(l)) = (J_{U(x)W,V}(l)) J_UW(l - h^(3)) on U (x) W (x) V."""
    legs = (U, W, V)
    WV, UW = tensor(W, V), tensor(U, W)
    lhs = fusion_matrix(U, WV, param).regroup(legs) @ embed(
        legs, (1, 2), lambda s: fusion_matrix(W, V, param))
    rhs = fusion_matrix(UW, V, param).regroup(legs) @ shifted(
        legs, (0, 1), lambda p: fusion_matrix(U, W, p), (2,), param)
    return compare("cocycle", [U, W, V], param, lhs, rhs)
