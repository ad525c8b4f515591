"""Exact scalars: rationals, rational functions, truncated exponential series."""
from fractions import Fraction as Rat

from .poly import Poly, poly_gcd, poly_divexact, poly_lcm
from .ratfun import RatFun, Scalar, make, parse, symbols, default_names, sc_eval, sc_format, sc_shift, sc_subs
from .series import ExpSeries, series_mul


def ratfun_shift(f, nu):
    """f with x_i replaced by x_i + <nu, alpha_i^v>."""
    coords = getattr(nu, "coords", nu)
    return sc_shift(f, tuple(Rat(c) for c in coords))


def ratfun_eval(f, point):
    """Exact value at ``point``; raises PoleAtPoint on a vanishing denominator."""
    return sc_eval(f, tuple(Rat(p) for p in point))


__all__ = [
    "Rat", "Poly", "RatFun", "Scalar", "ExpSeries", "make", "parse", "symbols",
    "default_names", "poly_gcd", "poly_divexact", "poly_lcm", "ratfun_shift",
    "ratfun_eval", "series_mul", "sc_eval", "sc_format", "sc_shift", "sc_subs",
]
