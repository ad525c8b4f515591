"""Time the compiled and pure-Python kernel backends on the same workloads.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""
from __future__ import annotations

import argparse
import random
import timeit
from fractions import Fraction

from dybe import kernels
from dybe.intertwine import clear_cache
from dybe.repmod import irrep
from dybe.exchange import verify_qdybe
from dybe.verma import DynParam


def _rand_poly(rng, nvars, terms, deg):
    out = {}
    for _ in range(terms):
        e = tuple(rng.randrange(deg + 1) for _ in range(nvars))
        out[e] = Fraction(rng.randrange(-50, 51), rng.randrange(1, 20))
    return {k: v for k, v in out.items() if v}


def workloads():
    rng = random.Random(1)
    p2 = [_rand_poly(rng, 2, 12, 5) for _ in range(20)]
    u1 = [[Fraction(rng.randrange(-9, 10), rng.randrange(1, 5)) for _ in range(12)] + [Fraction(1)]
          for _ in range(20)]
    mat = [[rng.randrange(-10**6, 10**6) for _ in range(14)] for _ in range(12)]
    W = irrep((1,))

    def poly_mul():
        for a, b in zip(p2, p2[1:]):
            kernels.poly_mul(a, b)

    def subs():
        for a in p2:
            kernels.poly_subs_affine(a, (1, -1), (Fraction(1, 2), 3))

    def gcd():
        for a, b in zip(u1, u1[1:]):
            kernels.upoly_gcd(a, b)

    def bareiss():
        kernels.bareiss(mat)

    def qdybe_a1():
        clear_cache()
        verify_qdybe(W, irrep((2,)), W, DynParam.symbolic(1))

    return {"poly_mul": poly_mul, "poly_subs_affine": subs, "upoly_gcd": gcd,
            "bareiss": bareiss, "qdybe A1 (end to end)": qdybe_a1}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = kernels.available_backends()
    if "cython" not in backends:
        print("compiled kernels not built; only the Python backend is timed")
    print(f"{'workload':24s}" + "".join(f"{b:>12s}" for b in backends) + "     speedup")
    for name, fn in workloads().items():
        times = []
        for b in backends:
            kernels.use_backend(b)
            times.append(min(timeit.repeat(fn, number=1, repeat=args.repeat)))
        cells = "".join(f"{t * 1e3:10.2f}ms" for t in times)
        ratio = f"{times[0] / times[1]:10.2f}x" if len(times) == 2 else ""
        print(f"{name:24s}{cells}{ratio}")
    kernels.use_backend(backends[-1])


if __name__ == "__main__":
    main()
