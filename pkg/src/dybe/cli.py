"""Command-line front end: ``dybe compute ...`` and ``dybe verify ...``."""
from __future__ import annotations

import argparse
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import jsonio
from .diffop import difference_operator, verify_commutativity
from .errors import DybeError, NonGenericWeight, ParseError
from .exchange import exchange_matrix, verify_fusion_exchange, verify_qdybe
from .intertwine import fusion_matrix, verify_cocycle
from .repmod import FinModule, _split_top, parse_module
from .sampling import run_generic
from .trace import (q_matrix, trace_function, verify_eta_relation, verify_mr_equation,
                    verify_q_identities, weighted_trace)
from .verma import DynParam

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_GENERICITY = 0, 1, 2, 3

VERIFY_NAMES = ("cocycle", "qdybe", "fusion-exchange", "diffop-commute",
                "q-identities", "eta", "mr", "all")
COMPUTE_NAMES = ("fusion", "exchange", "qmatrix", "diffop", "trace")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    rank: int
    modules: list
    mode: str = "symbolic"
    seed: int | None = None
    depth: int = 4
    order: int = 10
    weighted: bool = False
    explicit_modules: bool = True


@dataclass
class Check:
    """One verification: ``fn(param)`` for lambda-checks, ``fn(None)`` for mu-checks."""

    name: str
    operands: list
    fn: Callable
    symbolic_only: bool = False
    skip_reason: str = ""
    extra: dict = field(default_factory=dict)


def parse_algebra(text: str) -> int:
    if not (text.startswith("A") and text[1:].isdigit() and int(text[1:]) > 0):
        raise UsageError(f"unsupported algebra {text!r}; expected A1, A2, ...")
    return int(text[1:])


def parse_modules(text: str, rank: int) -> list:
    mods = []
    for part in _split_top(text, ","):
        part = part.strip()
        if not part:
            continue
        try:
            mods.append(parse_module(part, rank))
        except ParseError as exc:
            raise UsageError(str(exc)) from None
    if not mods:
        raise UsageError("no modules given")
    return mods


def _pick(mods: list, k: int) -> list:
    return [mods[i % len(mods)] for i in range(k)]


def _first_with_zero(mods: list) -> FinModule | None:
    for m in mods:
        if m.zero_space():
            return m
    return None


def default_suite(rank: int) -> list:
    """Operands of the built-in acceptance suite."""
    from .repmod import irrep

    if rank == 1:
        w, w2 = irrep((1,)), irrep((2,))
        return [
            ("cocycle", [w, w, w]), ("cocycle", [w, w2, w]),
            ("qdybe", [w, w, w]), ("qdybe", [w, w2, w]),
            ("fusion-exchange", [w, w, w]), ("fusion-exchange", [w, w2, w]),
            ("diffop-commute", [w, w2, w2]), ("diffop-commute", [w, w, w2]),
            ("q-identities", [w, w]), ("q-identities", [w, w2]),
            ("eta", [w, w]), ("eta", [w, w2]), ("eta", [w2, w]), ("eta", [w2, w2]),
            ("mr", [w2, w]), ("mr", [w2, w2]),
        ]
    fund = irrep(tuple(int(i == 0) for i in range(rank)))
    return [
        ("cocycle", [fund] * 3), ("qdybe", [fund] * 3), ("fusion-exchange", [fund] * 3),
        ("q-identities", [fund] * 2), ("eta", [fund] * 2),
    ]


def _operands_for(name: str, mods: list) -> list | None:
    """Operands for a check from a module list, cycling when it is short."""
    if name in ("cocycle", "qdybe", "fusion-exchange"):
        return _pick(mods, 3)
    if name in ("q-identities", "eta"):
        return _pick(mods, 2)
    if name == "diffop-commute":
        if len(mods) >= 3:
            return mods[:3]
        u = _first_with_zero(mods)
        return None if u is None else _pick(mods, 2) + [u]
    if name == "mr":
        if len(mods) >= 2 and mods[0].zero_space():
            return mods[:2]
        v = _first_with_zero(mods)
        return None if v is None else [v, mods[0]]
    raise UsageError(f"unknown check {name!r}")


def make_check(name: str, ops: list | None, cfg: RunConfig) -> Check:
    if ops is None:
        return Check(name, [], None, skip_reason="no module with a zero weight space")
    names = [m.name for m in ops]
    if name == "cocycle":
        return Check(name, names, lambda p: verify_cocycle(*ops, p))
    if name == "qdybe":
        return Check(name, names, lambda p: verify_qdybe(*ops, p))
    if name == "fusion-exchange":
        return Check(name, names, lambda p: verify_fusion_exchange(*ops, p))
    if name == "q-identities":
        return Check(name, names, lambda p: verify_q_identities(*ops, p))
    if name == "eta":
        return Check(name, names, lambda p: verify_eta_relation(*ops, p, cfg.depth))
    if name == "diffop-commute":
        if not ops[2].zero_space():
            return Check(name, names, None, skip_reason=f"{ops[2].name} has no zero weight")
        return Check(name, names, lambda p: verify_commutativity(*ops), symbolic_only=True)
    if name == "mr":
        if not ops[0].zero_space():
            return Check(name, names, None, skip_reason=f"{ops[0].name} has no zero weight")
        return Check(name, names, lambda p: verify_mr_equation(ops[0], ops[1], cfg.order),
                     symbolic_only=True)
    raise UsageError(f"unknown check {name!r}")


def build_checks(target: str, cfg: RunConfig) -> list:
    if target != "all":
        return [make_check(target, _operands_for(target, cfg.modules), cfg)]
    if not cfg.explicit_modules:
        return [make_check(n, ops, cfg) for n, ops in default_suite(cfg.rank)]
    return [make_check(n, _operands_for(n, cfg.modules), cfg) for n in VERIFY_NAMES[:-1]]


def _param_prefix(check: Check) -> str:
    return "m" if check.name in ("eta", "mr") else "x"


def run_check(check: Check, cfg: RunConfig, seq) -> tuple:
    """(report or None, seconds); report is None for skipped checks."""
    start = time.perf_counter()
    if check.fn is None:
        return None, 0.0
    if check.symbolic_only and cfg.mode == "numeric":
        check.skip_reason = "symbolic-only identity"
        return None, 0.0
    prefix = _param_prefix(check)
    if cfg.mode == "symbolic":
        rep = check.fn(DynParam.symbolic(cfg.rank, prefix))
    else:
        rep, point = run_generic(
            cfg.rank, seq, lambda pt: check.fn(DynParam.numeric(pt, prefix)))
        rep.sample = list(point)
        rep.seed = cfg.seed
    return rep, time.perf_counter() - start


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("DYBE_THREADS", "1")))
    except ValueError:
        return 1


def cmd_verify(target: str, cfg: RunConfig, out, err) -> int:
    checks = build_checks(target, cfg)
    seqs = np.random.SeedSequence(cfg.seed if cfg.seed is not None else 0).spawn(len(checks))
    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        results = list(pool.map(lambda cs: run_check(cs[0], cfg, cs[1]), zip(checks, seqs)))
    reports, skipped = [], []
    for check, (rep, secs) in zip(checks, results):
        if rep is None:
            skipped.append({"identity": check.name, "operands": check.operands,
                            "reason": check.skip_reason})
            print(f"SKIP {check.name}[{', '.join(check.operands)}]: {check.skip_reason}", file=err)
            continue
        names = DynParam.symbolic(cfg.rank, _param_prefix(check)).names()
        reports.append(jsonio.report_to_obj(rep, names))
        print(f"{rep.status.upper()} {rep.summary()} ({secs:.2f}s)", file=err)
    status = "pass" if all(r["status"] == "pass" for r in reports) else "fail"
    doc = {
        "algebra": f"A{cfg.rank}",
        "mode": cfg.mode,
        "seed": cfg.seed,
        "status": status,
        "reports": reports,
        "skipped": skipped,
    }
    out(jsonio.dumps(doc))
    return EXIT_PASS if status == "pass" else EXIT_FAIL


def cmd_compute(target: str, cfg: RunConfig, out, err) -> int:
    mods = cfg.modules
    if target in ("diffop", "trace") and cfg.mode == "numeric":
        raise UsageError(f"compute {target} needs symbolic mode")

    def at(point=None, prefix="x"):
        if point is None:
            return DynParam.symbolic(cfg.rank, prefix)
        return DynParam.numeric(point, prefix)

    def build(point=None):
        if target == "fusion":
            W, V = _pick(mods, 2)
            return fusion_matrix(W, V, at(point))
        if target == "exchange":
            V, W = _pick(mods, 2)
            return exchange_matrix(V, W, at(point))
        if target == "qmatrix":
            return q_matrix(mods[0], at(point))
        if target == "diffop":
            V, U = _pick(mods, 2)
            return difference_operator(V, U)
        if target == "trace":
            fn = weighted_trace if cfg.weighted else trace_function
            return fn(mods[0], cfg.order)
        raise UsageError(f"unknown object {target!r}")

    prefix = "m" if target == "trace" else "x"
    names = DynParam.symbolic(cfg.rank, prefix).names()
    if cfg.mode == "numeric":
        seq = np.random.SeedSequence(cfg.seed)
        obj, point = run_generic(cfg.rank, seq, build)
        data = jsonio.to_obj(obj, names)
        data = {"sample": [str(x) for x in point], "seed": cfg.seed, "value": data}
    else:
        data = jsonio.to_obj(build(), names)
    out(jsonio.dumps(data))
    return EXIT_PASS


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--algebra", default="A1", help="root system, e.g. A1 or A2")
    common.add_argument("--modules", help='comma-separated modules, e.g. "L(1),L(2)" or "L(1,0)"')
    common.add_argument("--mode", choices=("symbolic", "numeric"), default="symbolic")
    common.add_argument("--seed", type=int, help="64-bit seed, required in numeric mode")
    common.add_argument("--depth", type=int, default=4, help="Verma depth for the eta check")
    common.add_argument("--order", type=int, default=10, help="series order for trace functions")
    common.add_argument("--out", help="write JSON here instead of stdout")

    parser = argparse.ArgumentParser(prog="dybe", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    comp = sub.add_parser("compute", parents=[common], help="print an object as JSON")
    comp.add_argument("what", choices=COMPUTE_NAMES)
    comp.add_argument("--weighted", action="store_true", help="trace: weighted trace function F")
    ver = sub.add_parser("verify", parents=[common], help="run identity checks")
    ver.add_argument("what", choices=VERIFY_NAMES)
    return parser


def config_from_args(args) -> RunConfig:
    rank = parse_algebra(args.algebra)
    if args.mode == "numeric" and args.seed is None:
        raise UsageError("numeric mode requires --seed")
    if args.seed is not None and not 0 <= args.seed < 2**64:
        raise UsageError("seed must be an unsigned 64-bit integer")
    if args.depth < 0 or args.order < 0:
        raise UsageError("depth and order must be nonnegative")
    explicit = args.modules is not None
    if explicit:
        mods = parse_modules(args.modules, rank)
    elif args.command == "verify" and args.what == "all":
        mods = []
    else:
        raise UsageError("--modules is required")
    return RunConfig(rank, mods, args.mode, args.seed, args.depth, args.order,
                     getattr(args, "weighted", False), explicit)


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_PASS
    try:
        cfg = config_from_args(args)
        if cfg.rank >= 2 and cfg.mode == "symbolic":
            print(f"warning: symbolic A{cfg.rank} runs can be slow", file=stderr)
        chunks = []
        code = (cmd_verify if args.command == "verify" else cmd_compute)(
            args.what, cfg, chunks.append, stderr)
    except UsageError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    except NonGenericWeight as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_GENERICITY
    except DybeError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    text = "".join(chunks)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())
