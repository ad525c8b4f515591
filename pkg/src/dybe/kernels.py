"""Backend selection for the arithmetic hot loops.

The compiled ``_ckernels`` extension is used when it imports; otherwise the
pure-Python ``_pykernels`` module. Callers must go through attribute access
(``kernels.poly_mul``) so that :func:`use_backend` takes effect everywhere.
"""
from __future__ import annotations

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

_NAMES = ("poly_mul", "poly_subs_affine", "poly_eval", "upoly_divmod", "upoly_gcd", "bareiss")

BACKEND = ""


def available_backends() -> list[str]:
    return ["python"] + (["cython"] if _ckernels is not None else [])


def use_backend(name: str) -> None:
    global BACKEND
    if name == "cython":
        if _ckernels is None:
            raise ImportError("compiled kernels are not built")
        mod = _ckernels
    elif name == "python":
        mod = _pykernels
    else:
        raise ValueError(f"unknown backend {name!r}")
    g = globals()
    for n in _NAMES:
        g[n] = getattr(mod, n)
    BACKEND = name


use_backend("cython" if _ckernels is not None else "python")
