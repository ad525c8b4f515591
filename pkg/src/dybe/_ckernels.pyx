# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twins of the functions in ``_pykernels``.

Coefficients stay Python ints and Fractions (they grow without bound), so the
gain comes from typed loop indices and fewer attribute lookups.
"""
from fractions import Fraction
from math import gcd

BACKEND = "cython"


cdef object _lcm(object a, object b):
    return a // gcd(a, b) * b


cdef tuple _integerize(dict p):
    cdef object d = 1
    for c in p.values():
        d = _lcm(d, c.denominator)
    return [(e, c.numerator * (d // c.denominator)) for e, c in p.items()], d


def poly_mul(dict a, dict b):
    cdef dict acc = {}
    cdef Py_ssize_t n, i
    cdef list ai, bi
    cdef tuple ea, eb
    if not a or not b:
        return {}
    ai, da = _integerize(a)
    bi, db = _integerize(b)
    n = len(next(iter(a)))
    if n == 1:
        for ea, ca in ai:
            xa = ea[0]
            for eb, cb in bi:
                k = xa + eb[0]
                acc[k] = acc.get(k, 0) + ca * cb
        d = da * db
        return {(k,): Fraction(c, d) for k, c in acc.items() if c}
    for ea, ca in ai:
        for eb, cb in bi:
            k = tuple([ea[i] + eb[i] for i in range(n)])
            acc[k] = acc.get(k, 0) + ca * cb
    d = da * db
    return {k: Fraction(c, d) for k, c in acc.items() if c}


cdef list _affine_powers(object s, object o, Py_ssize_t kmax):
    cdef list pw = [[Fraction(1)]]
    cdef list brow
    cdef Py_ssize_t k, j
    for k in range(1, kmax + 1):
        brow = [1]
        for j in range(k):
            brow.append(brow[j] * (k - j) // (j + 1))
        pw.append([brow[j] * s ** j * o ** (k - j) for j in range(k + 1)])
    return pw


def poly_subs_affine(dict a, scale, offset):
    """Substitute x_i -> scale[i] * x_i + offset[i]."""
    cdef Py_ssize_t n, i, j, ei
    cdef list kmax, pows, row
    cdef dict out = {}
    cdef dict partial, nxt
    if not a:
        return {}
    n = len(scale)
    kmax = [0] * n
    for e in a:
        for i in range(n):
            if e[i] > kmax[i]:
                kmax[i] = e[i]
    pows = [_affine_powers(Fraction(scale[i]), Fraction(offset[i]), kmax[i]) for i in range(n)]
    for e, c in a.items():
        partial = {(): c}
        for i in range(n):
            ei = e[i]
            row = pows[i][ei]
            nxt = {}
            for pe, pc in partial.items():
                for j in range(len(row)):
                    bc = row[j]
                    if bc:
                        k = pe + (j,)
                        nxt[k] = nxt.get(k, 0) + pc * bc
            partial = nxt
        for k, v in partial.items():
            out[k] = out.get(k, 0) + v
    return {k: v for k, v in out.items() if v}


def poly_eval(dict a, point):
    cdef Py_ssize_t n = len(point)
    cdef Py_ssize_t i, k
    cdef list cache = [dict() for _ in range(n)]
    total = Fraction(0)
    for e, c in a.items():
        t = c
        for i in range(n):
            k = e[i]
            if k:
                pk = (<dict>cache[i]).get(k)
                if pk is None:
                    pk = Fraction(point[i]) ** k
                    cache[i][k] = pk
                t = t * pk
        total += t
    return total


cdef list _trim(list p):
    while p and not p[len(p) - 1]:
        p.pop()
    return p


def upoly_divmod(list a, list b):
    cdef list r, q
    cdef Py_ssize_t db, k, i
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], _trim(r)
    lb = b[db]
    q = [Fraction(0)] * (len(r) - db)
    for k in range(len(r) - 1 - db, -1, -1):
        c = r[k + db]
        if c:
            c = c / lb
            q[k] = c
            for i in range(db + 1):
                r[k + i] -= c * b[i]
    return _trim(q), _trim(r[:db])


cdef list _prim(list ints):
    g = 0
    for c in ints:
        g = gcd(g, c)
        if g == 1:
            break
    if g > 1:
        ints = [c // g for c in ints]
    if ints[len(ints) - 1] < 0:
        ints = [-c for c in ints]
    return ints


cdef list _int_primitive(list p):
    d = 1
    for c in p:
        d = _lcm(d, c.denominator)
    return _prim([c.numerator * (d // c.denominator) for c in p])


cdef list _prem(list a, list b):
    cdef list r = list(a)
    cdef Py_ssize_t db = len(b) - 1
    cdef Py_ssize_t shift, i
    lb = b[db]
    while r and len(r) - 1 >= db:
        lr = r[len(r) - 1]
        shift = len(r) - 1 - db
        r = [lb * c for c in r]
        for i in range(db + 1):
            r[i + shift] -= lr * b[i]
        _trim(r)
    return r


def upoly_gcd(list a, list b):
    """Monic gcd of two dense univariate polynomials over Q."""
    cdef list A, B, R
    if not a and not b:
        return []
    if not a or not b:
        p = a or b
        lc = p[len(p) - 1]
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
    lc = A[len(A) - 1]
    return [Fraction(c, lc) for c in A]


def bareiss(rows):
    """Fraction-free row echelon form of an integer matrix."""
    cdef list M = [list(row) for row in rows]
    cdef Py_ssize_t m = len(M)
    cdef Py_ssize_t n, r, c, p, i, j
    cdef list Mr, Mi, pivots = []
    if not m:
        return [], []
    n = len(M[0])
    prev = 1
    r = 0
    for c in range(n):
        p = r
        while p < m and not (<list>M[p])[c]:
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
