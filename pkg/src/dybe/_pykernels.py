"""Pure-Python implementations of the arithmetic hot loops.

Sparse polynomials are dicts ``{exponent tuple: Fraction}`` with no zero
coefficients. Dense univariate polynomials are lists of Fractions, lowest
degree first, with no trailing zeros (the zero polynomial is ``[]``).
The compiled module ``_ckernels`` exposes exactly the same functions.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd

BACKEND = "python"


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def _integerize(p):
    d = 1
    for c in p.values():
        d = _lcm(d, c.denominator)
    return [(e, c.numerator * (d // c.denominator)) for e, c in p.items()], d


def poly_mul(a, b):
    if not a or not b:
        return {}
    ai, da = _integerize(a)
    bi, db = _integerize(b)
    acc = {}
    get = acc.get
    if len(next(iter(a))) == 1:
        for (ea,), ca in ai:
            for (eb,), cb in bi:
                k = ea + eb
                acc[k] = get(k, 0) + ca * cb
        d = da * db
        return {(k,): Fraction(c, d) for k, c in acc.items() if c}
    for ea, ca in ai:
        for eb, cb in bi:
            k = tuple([x + y for x, y in zip(ea, eb)])
            acc[k] = get(k, 0) + ca * cb
    d = da * db
    return {k: Fraction(c, d) for k, c in acc.items() if c}


def _binomial_row(n):
    row = [1]
    for k in range(n):
        row.append(row[-1] * (n - k) // (k + 1))
    return row


def _affine_powers(s, o, kmax):
    # pw[k][j] = coefficient of x^j in (s x + o)^k
    pw = [[Fraction(1)]]
    for k in range(1, kmax + 1):
        brow = _binomial_row(k)
        pw.append([brow[j] * s ** j * o ** (k - j) for j in range(k + 1)])
    return pw


def poly_subs_affine(a, scale, offset):
    """Substitute x_i -> scale[i] * x_i + offset[i]."""
    if not a:
        return {}
    n = len(scale)
    kmax = [0] * n
    for e in a:
        for i in range(n):
            if e[i] > kmax[i]:
                kmax[i] = e[i]
    pows = [_affine_powers(Fraction(scale[i]), Fraction(offset[i]), kmax[i]) for i in range(n)]
    out = {}
    for e, c in a.items():
        partial = {(): c}
        for i in range(n):
            row = pows[i][e[i]]
            nxt = {}
            for pe, pc in partial.items():
                for j, bc in enumerate(row):
                    if bc:
                        k = pe + (j,)
                        nxt[k] = nxt.get(k, 0) + pc * bc
            partial = nxt
        for k, v in partial.items():
            out[k] = out.get(k, 0) + v
    return {k: v for k, v in out.items() if v}


def poly_eval(a, point):
    n = len(point)
    cache = [dict() for _ in range(n)]
    total = Fraction(0)
    for e, c in a.items():
        t = c
        for i in range(n):
            k = e[i]
            if k:
                pk = cache[i].get(k)
                if pk is None:
                    pk = Fraction(point[i]) ** k
                    cache[i][k] = pk
                t = t * pk
        total += t
    return total


def _trim(p):
    while p and not p[-1]:
        p.pop()
    return p


def upoly_divmod(a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], _trim(r)
    lb = b[-1]
    q = [Fraction(0)] * (len(r) - db)
    for k in range(len(r) - 1 - db, -1, -1):
        c = r[k + db]
        if c:
            c = c / lb
            q[k] = c
            for i in range(db + 1):
                r[k + i] -= c * b[i]
    return _trim(q), _trim(r[:db])


def _int_primitive(p):
    d = 1
    for c in p:
        d = _lcm(d, c.denominator)
    ints = [c.numerator * (d // c.denominator) for c in p]
    return _prim(ints)


def _prim(ints):
    g = 0
    for c in ints:
        g = gcd(g, c)
        if g == 1:
            break
    if g > 1:
        ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def _prem(a, b):
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    while r and len(r) - 1 >= db:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [lb * c for c in r]
        for i, c in enumerate(b):
            r[i + shift] -= lr * c
        _trim(r)
    return r


def upoly_gcd(a, b):
    """Monic gcd of two dense univariate polynomials over Q."""
    if not a and not b:
        return []
    if not a or not b:
        p = a or b
        lc = p[-1]
        return [c / lc for c in p]
    A = _int_primitive(a)
    B = _int_primitive(b)
    if len(A) < len(B):
        A, B = B, A
    while B:
        if len(B) == 1:
            return [Fraction(1)]
        R = _prem(A, B)
        A, B = B, (_prim(R) if R else [])
    lc = A[-1]
    return [Fraction(c, lc) for c in A]


def bareiss(rows):
    """Fraction-free row echelon form of an integer matrix.

    Returns ``(echelon_rows, pivot_columns)``; only the nonzero rows are kept.
    """
    M = [list(r) for r in rows]
    m = len(M)
    if not m:
        return [], []
    n = len(M[0])
    prev = 1
    r = 0
    pivots = []
    for c in range(n):
        p = r
        while p < m and not M[p][c]:
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
            if mic:
                for j in range(c + 1, n):
                    Mi[j] = (piv * Mi[j] - mic * Mr[j]) // prev
            elif piv != prev:
                for j in range(c + 1, n):
                    if Mi[j]:
                        Mi[j] = (piv * Mi[j]) // prev
            Mi[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
        if r == m:
            break
    return M[:r], pivots
