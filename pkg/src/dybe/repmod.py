"""Finite-dimensional weight modules: irreducibles, tensor products, duals, characters."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Sequence

from .cartan import LatticeWeight, root_system, weyl_dimension
from .errors import NotDominant
from .exact.series import ExpSeries
from .hwspace import HighestWeightSpaces
from .lattice import cartan_matrix, from_root_coords, height, normalize, wadd, wneg, wsub

# sparse operator: ops[col] = {row: Fraction}
SparseOp = list


def _apply(op: SparseOp, vec: dict) -> dict:
    out: dict = {}
    for c, x in vec.items():
        for r, y in op[c].items():
            out[r] = out.get(r, 0) + x * y
    return {r: v for r, v in out.items() if v}


class FinModule:
    """Weight basis with sparse matrices for every e_i and f_i.

    Equality and hashing go through ``key`` so modules can index caches.
    """

    def __init__(self, name: str, rank: int, labels: Sequence, weights: Sequence,
                 e: Sequence[SparseOp], f: Sequence[SparseOp], dual_of: "FinModule | None" = None):
        self.name = name
        self.rank = rank
        self.labels = tuple(labels)
        self.weights = tuple(normalize(w) for w in weights)
        self.e = tuple(e)
        self.f = tuple(f)
        self.dual_of = dual_of
        self._by_weight: dict = {}
        for idx, w in enumerate(self.weights):
            self._by_weight.setdefault(w, []).append(idx)

    @property
    def key(self) -> tuple:
        return (self.rank, self.name)

    def __eq__(self, other):
        return isinstance(other, FinModule) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"FinModule(A{self.rank}:{self.name}, dim={self.dim})"

    @property
    def dim(self) -> int:
        return len(self.weights)

    def weight(self, idx: int) -> LatticeWeight:
        return LatticeWeight(self.weights[idx])

    def distinct_weights(self) -> list:
        return sorted(self._by_weight, key=lambda w: (-height(w), tuple(-x for x in w)))

    def weight_space(self, nu) -> list:
        nu = normalize(getattr(nu, "coords", nu))
        return list(self._by_weight.get(nu, ()))

    def zero_space(self) -> list:
        return self.weight_space((0,) * self.rank)

    def apply_e(self, i: int, vec: dict) -> dict:
        return _apply(self.e[i], vec)

    def apply_f(self, i: int, vec: dict) -> dict:
        return _apply(self.f[i], vec)

    def apply_h(self, i: int, vec: dict) -> dict:
        return {k: c * self.weights[k][i] for k, c in vec.items() if self.weights[k][i]}

    def vector_weight(self, vec: dict):
        """Common weight of the support, or None if the vector is not homogeneous."""
        ws = {self.weights[k] for k, c in vec.items() if c}
        if len(ws) != 1:
            return None
        return ws.pop()

    def highest_index(self) -> int:
        return max(range(self.dim), key=lambda k: (height(self.weights[k]), -k))


def check_relations(V: FinModule) -> list:
    """Failures of the Chevalley and Serre relations, as readable strings."""
    r = V.rank
    C = cartan_matrix(r)
    bad = []
    for k in range(V.dim):
        vec = {k: Fraction(1)}
        for i in range(r):
            for j in range(r):
                lhs = _sub(V.apply_e(i, V.apply_f(j, vec)), V.apply_f(j, V.apply_e(i, vec)))
                rhs = V.apply_h(i, vec) if i == j else {}
                if lhs != rhs:
                    bad.append(f"[e{i + 1},f{j + 1}] on basis {k}")
                for x, sign in (("e", 1), ("f", -1)):
                    op = V.apply_e if x == "e" else V.apply_f
                    hx = V.apply_h(i, op(j, vec))
                    xh = op(j, V.apply_h(i, vec))
                    want = {t: sign * C[i][j] * c for t, c in op(j, vec).items()}
                    if _sub(hx, xh) != {t: c for t, c in want.items() if c}:
                        bad.append(f"[h{i + 1},{x}{j + 1}] on basis {k}")
                if i != j:
                    for op in (V.apply_e, V.apply_f):
                        # ad(x_i)^(1 - a_ij) x_j = 0, expanded as a word sum
                        n = 1 - C[i][j]
                        acc: dict = {}
                        for m in range(n + 1):
                            v = vec
                            for _ in range(n - m):
                                v = op(i, v)
                            v = op(j, v)
                            for _ in range(m):
                                v = op(i, v)
                            coeff = (-1) ** m * comb(n, m)
                            for t, c in v.items():
                                acc[t] = acc.get(t, 0) + coeff * c
                        if any(acc.values()):
                            bad.append(f"Serre ({i + 1},{j + 1}) on basis {k}")
    return bad


def _sub(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) - v
    return {k: v for k, v in out.items() if v}


def _format_weight(hw) -> str:
    return "L(" + ",".join(str(x) for x in hw) + ")"


@lru_cache(maxsize=None)
def _irrep(hw: tuple) -> FinModule:
    rank = len(hw)
    builder = HighestWeightSpaces(tuple(Fraction(x) for x in hw), rank)
    found = []
    frontier = [(0,) * rank]
    seen = set(frontier)
    while frontier:
        nxt = []
        for beta in frontier:
            d = builder.dim(beta)
            if d == 0:
                continue
            found.append(beta)
            for i in range(rank):
                b2 = builder.plus(beta, i)
                if b2 not in seen:
                    seen.add(b2)
                    nxt.append(b2)
        frontier = nxt
    found.sort(key=lambda b: (sum(b), b))
    index = {}
    labels, weights = [], []
    for beta in found:
        wt = wsub(hw, from_root_coords(beta))
        for t in range(builder.dim(beta)):
            index[(beta, t)] = len(labels)
            labels.append(builder.word(beta, t))
            weights.append(wt)
    present = set(found)
    e = [[{} for _ in labels] for _ in range(rank)]
    f = [[{} for _ in labels] for _ in range(rank)]
    for beta in found:
        sp = builder.space(beta)
        for t in range(sp.dim):
            col = index[(beta, t)]
            for j in range(rank):
                if beta[j] > 0:
                    lower = beta[:j] + (beta[j] - 1,) + beta[j + 1:]
                    e[j][col] = {index[(lower, s)]: Fraction(c) for s, c in sp.e[j][t].items()}
                upper = builder.plus(beta, j)
                if upper in present:
                    usp = builder.space(upper)
                    f[j][col] = {index[(upper, s)]: Fraction(c) for s, c in usp.f_into[j][t].items()}
    V = FinModule(_format_weight(hw), rank, labels, weights, e, f)
    expected = weyl_dimension(hw, root_system(rank))
    if V.dim != expected:
        raise AssertionError(f"built dim {V.dim} for {V.name}, Weyl formula gives {expected}")
    return V


def irrep(hw) -> FinModule:
    """The irreducible module L(hw); ``hw`` gives the coroot values of the highest weight."""
    coords = getattr(hw, "coords", hw)
    hw = normalize(coords)
    if not hw:
        raise NotDominant("empty highest weight")
    for x in hw:
        if not isinstance(x, int) or x < 0:
            raise NotDominant(f"highest weight {hw} is not dominant integral")
    root_system(len(hw))
    return _irrep(hw)


def trivial(rank: int) -> FinModule:
    return irrep((0,) * rank)


def tensor(V: FinModule, W: FinModule) -> FinModule:
    """V (x) W with basis index a * dim W + b for the pair (a, b)."""
    if V.rank != W.rank:
        raise ValueError("modules over different root systems")
    return _tensor(V, W)


@lru_cache(maxsize=None)
def _tensor(V: FinModule, W: FinModule) -> FinModule:
    dw = W.dim
    labels = [(a, b) for a in V.labels for b in W.labels]
    weights = [wadd(va, wb) for va in V.weights for wb in W.weights]
    ops = []
    for gens_v, gens_w in ((V.e, W.e), (V.f, W.f)):
        per = []
        for i in range(V.rank):
            op = []
            for a in range(V.dim):
                for b in range(dw):
                    col = {}
                    for a2, c in gens_v[i][a].items():
                        col[a2 * dw + b] = c
                    for b2, c in gens_w[i][b].items():
                        k = a * dw + b2
                        col[k] = col.get(k, 0) + c
                    op.append({k: c for k, c in col.items() if c})
            per.append(op)
        ops.append(per)
    return FinModule(f"{_wrap(V.name)}⊗{_wrap(W.name)}", V.rank, labels, weights, ops[0], ops[1])


def _wrap(name: str) -> str:
    return f"({name})" if "⊗" in name else name


def _neg_transpose(op: SparseOp, n: int) -> SparseOp:
    out = [{} for _ in range(n)]
    for c, col in enumerate(op):
        for r, x in col.items():
            out[r][c] = -x
    return out


def dual(V: FinModule) -> FinModule:
    """Dual module: (x.phi)(v) = -phi(x.v) in the dual basis; weights negate."""
    if V.dual_of is not None:
        return V.dual_of
    return _dual(V)


@lru_cache(maxsize=None)
def _dual(V: FinModule) -> FinModule:
    n = V.dim
    D = FinModule(
        f"{_wrap(V.name)}*", V.rank, [("*", lab) for lab in V.labels],
        [wneg(w) for w in V.weights],
        [_neg_transpose(op, n) for op in V.e],
        [_neg_transpose(op, n) for op in V.f],
        dual_of=V,
    )
    return D


def character(W: FinModule, sign: str = "-") -> ExpSeries:
    """sum_nu dim W[nu] exp(sign <lambda, nu>) as a finite series."""
    if sign not in "+-" or len(sign) != 1:
        raise ValueError("sign must be '+' or '-'")
    terms = []
    for w in W.weights:
        terms.append((w if sign == "-" else wneg(w), Fraction(1)))
    return ExpSeries(W.rank, None, terms)


def parse_module(spec: str, rank: int | None = None) -> FinModule:
    """Module from text such as "L(1,0)", "A2:L(1,0)", "L(1)*", "L(1)⊗L(2)"."""
    from .errors import ParseError

    text = spec.strip()
    if ":" in text:
        alg, text = text.split(":", 1)
        alg = alg.strip()
        if not (alg.startswith("A") and alg[1:].isdigit()):
            raise ParseError(f"unknown algebra {alg!r}")
        r = int(alg[1:])
        if rank is not None and r != rank:
            raise ParseError(f"module {spec!r} is over A{r}, expected A{rank}")
        rank = r
    parts = _split_top(text, "⊗")
    if len(parts) > 1:
        mods = [parse_module(p, rank) for p in parts]
        out = mods[0]
        for m in mods[1:]:
            out = tensor(out, m)
        return out
    text = text.strip()
    if text.endswith("*"):
        return dual(parse_module(text[:-1], rank))
    if text.startswith("(") and text.endswith(")"):
        return parse_module(text[1:-1], rank)
    if not (text.startswith("L(") and text.endswith(")")):
        raise ParseError(f"cannot parse module {spec!r}")
    try:
        hw = tuple(int(x) for x in text[2:-1].split(","))
    except ValueError as exc:
        raise ParseError(f"bad highest weight in {spec!r}") from exc
    if rank is not None and len(hw) != rank:
        raise ParseError(f"{spec!r} has {len(hw)} coordinates, expected {rank}")
    try:
        return irrep(hw)
    except NotDominant as exc:
        raise ParseError(str(exc)) from exc


def _split_top(text: str, sep: str) -> list:
    out, depth, cur = [], 0, ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            out.append(cur)
            cur = ""
        else:
            cur += ch
    out.append(cur)
    return out
