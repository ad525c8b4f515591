"""Deterministic JSON for matrices, difference operators, series and reports."""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Sequence

from .blockmatrix import BlockMatrix, unflatten
from .diffop import DiffOp
from .exact.ratfun import parse, sc_format
from .exact.series import ExpSeries
from .lattice import height
from .report import VerificationReport
from .trace import TraceFunction


def _label(idx: int, dims: Sequence[int]) -> str:
    return ",".join(str(k) for k in unflatten(idx, dims))


def _weight(xi) -> list:
    return [str(Fraction(x)) for x in xi]


def matrix_to_obj(M: BlockMatrix, names: Sequence[str]) -> dict:
    dims = M.dims
    entries = [
        [_label(r, dims), _label(c, dims), sc_format(v, names)]
        for (r, c), v in sorted(M.entries.items())
    ]
    legs = [leg.name for leg in M.legs]
    return {"domain": legs, "codomain": legs, "entries": entries}


def diffop_to_obj(D: DiffOp, names: Sequence[str]) -> dict:
    shifts = []
    for nu in D.keys():
        m = D.coeffs[nu]
        shifts.append({
            "nu": _weight(nu),
            "matrix": [[str(r), str(c), sc_format(v, names)] for (r, c), v in sorted(m.items())],
        })
    return {"module": D.U.name, "shifts": shifts}


def series_to_obj(s: ExpSeries, names: Sequence[str]) -> dict:
    terms = [
        {"exponent": _weight(xi), "coeff": sc_format(c, names)}
        for xi, c in sorted(s.terms.items(), key=lambda kv: (height(kv[0]), kv[0]))
    ]
    return {
        "prefactor": s.prefactor,
        "order": None if s.order is None else str(s.order),
        "terms": terms,
    }


def trace_to_obj(F: TraceFunction, names: Sequence[str]) -> dict:
    comps = [
        {"index": [i, j], "series": series_to_obj(s, names)}
        for (i, j), s in sorted(F.value.items())
    ]
    return {"module": F.V.name, "kind": F.kind, "order": F.order, "components": comps}


def report_to_obj(rep: VerificationReport, names: Sequence[str]) -> dict:
    failures = []
    for f in rep.failures:
        g = {}
        for k, v in f.items():
            g[k] = sc_format(v, names) if k in ("lhs", "rhs") else v
        if "block" in g:
            g["block"] = [str(x) for x in g["block"]]
        failures.append(g)
    out = {
        "identity": rep.identity,
        "operands": list(rep.operands),
        "param": rep.param,
        "status": rep.status,
        "failures": failures,
    }
    if rep.sample is not None:
        out["sample"] = [str(x) for x in rep.sample]
    if rep.seed is not None:
        out["seed"] = rep.seed
    if rep.note:
        out["note"] = rep.note
    return out


def to_obj(obj, names: Sequence[str]) -> dict:
    if isinstance(obj, BlockMatrix):
        return matrix_to_obj(obj, names)
    if isinstance(obj, DiffOp):
        return diffop_to_obj(obj, names)
    if isinstance(obj, TraceFunction):
        return trace_to_obj(obj, names)
    if isinstance(obj, ExpSeries):
        return series_to_obj(obj, names)
    if isinstance(obj, VerificationReport):
        return report_to_obj(obj, names)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def emit_json(obj, names: Sequence[str] = ("x1",)) -> str:
    """Canonical JSON text; identical inputs give byte-identical output."""
    return dumps(to_obj(obj, names))


def matrix_from_obj(data: dict, dims: Sequence[int], names: Sequence[str]) -> dict:
    """Entries {(row, col): scalar} of a serialized matrix, for round-trip checks."""
    out = {}
    for r, c, s in data["entries"]:
        ri = _unlabel(r, dims)
        ci = _unlabel(c, dims)
        out[(ri, ci)] = parse(s, names)
    return out


def _unlabel(label: str, dims: Sequence[int]) -> int:
    idx = 0
    for k, d in zip(label.split(","), dims):
        idx = idx * d + int(k)
    return idx
