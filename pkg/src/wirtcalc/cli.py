"""Command-line front end.

Commands::

    wirtcalc diff     EXPR --at C [--order {1,2}]
    wirtcalc hessian  EXPR --at C                   (diff --order 2)
    wirtcalc check    EXPR --at C [--step S] [--tol T]
    wirtcalc classify EXPR --at C [--step S] [--tol T]
    wirtcalc minimize EXPR --from C [--mu ...] | --data FILE [--widely-linear]

Complex literals use the expression grammar itself (``1+2i``, ``-3i``).
Output is a JSON record on stdout (schema version 1); numbers are emitted
as [re, im] pairs.  Exit codes: 0 success, 1 residual above tolerance or
iteration budget exhausted, 2 malformed expression, 3 domain/pole error,
4 diverged or non-real cost.  Set WIRT_LOG=debug for diagnostics.
"""

from __future__ import annotations

import argparse
import cmath
import json
import logging
import os
import sys

from . import __version__
from .errors import (DomainError, ExprSyntaxError, NonRealCost, PoleError,
                     UnsupportedPrimitive, WirtcalcError)
from .expr import eval_jet, format_expr, parse, parse_complex
from .fdcheck import DEFAULT_STEP, DEFAULT_TOL, classify, fd_wirtinger
from .optimize import (DescentConfig, Termination, build_least_squares,
                       steepest_descent_hilbert, steepest_descent_scalar)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_SYNTAX = 2
EXIT_DOMAIN = 3
EXIT_DIVERGED = 4

CHECK_DEFAULT_TOL = 1e-6


def _pair(w: complex) -> list[float]:
    if not cmath.isfinite(w):
        raise DomainError(f"refusing to emit non-finite value {w!r}")
    return [w.real, w.imag]


def _emit(report: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(report, indent=2))
        return
    for key, val in report.items():
        print(f"{key}: {val}")


def _jet_report(expr_text: str, at: complex, order: int) -> dict:
    e = parse(expr_text)
    report = {
        "schema": 1,
        "command": "diff",
        "expr": format_expr(e),
        "at": _pair(at),
        "order": order,
    }
    j = eval_jet(e, at, order=order)
    report["value"] = _pair(j.value)
    report["dz"] = _pair(j.dz)
    report["dzc"] = _pair(j.dzc)
    if order == 2:
        report["hessian"] = {
            "dzz": _pair(j.dzz),
            "dzzc": _pair(j.dzzc),
            "dzcz": _pair(j.dzcz),
            "dzczc": _pair(j.dzczc),
        }
    return report


def cmd_diff(args) -> int:
    report = _jet_report(args.expr, parse_complex(args.at), args.order)
    _emit(report, args.json)
    return EXIT_OK


def cmd_check(args) -> int:
    at = parse_complex(args.at)
    e = parse(args.expr)
    j = eval_jet(e, at, order=1)
    w, cw = fd_wirtinger(e, at, step=args.step)
    res_dz = abs(j.dz - w) / (1.0 + abs(j.dz))
    res_dzc = abs(j.dzc - cw) / (1.0 + abs(j.dzc))
    verdict = classify(e, at, step=args.step)
    ok = res_dz < args.tol and res_dzc < args.tol
    report = {
        "schema": 1,
        "command": "check",
        "expr": format_expr(e),
        "at": _pair(at),
        "step": args.step,
        "tol": args.tol,
        "dz": _pair(j.dz),
        "dzc": _pair(j.dzc),
        "fd_w": _pair(w),
        "fd_cw": _pair(cw),
        "residual_dz": res_dz,
        "residual_dzc": res_dzc,
        "classification": verdict.verdict.value,
        "ok": ok,
    }
    _emit(report, args.json)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_classify(args) -> int:
    at = parse_complex(args.at)
    e = parse(args.expr)
    rep = classify(e, at, step=args.step, tol=args.tol)
    report = {
        "schema": 1,
        "command": "classify",
        "expr": format_expr(e),
        "at": _pair(at),
        "step": args.step,
        "tol": args.tol,
        "classification": rep.verdict.value,
        "fd_w": _pair(rep.w),
        "fd_cw": _pair(rep.cw),
        "cr_residual": rep.cr_residual,
        "conj_cr_residual": rep.conj_cr_residual,
    }
    _emit(report, args.json)
    return EXIT_OK


def _load_data_file(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        payload = json.load(fh)
    X = [[complex(re, im) for re, im in row] for row in payload["X"]]
    d = [complex(re, im) for re, im in payload["d"]]
    return X, d


def _termination_exit(term: Termination) -> int:
    if term is Termination.CONVERGED:
        return EXIT_OK
    if term is Termination.MAX_ITER:
        return EXIT_FAIL
    return EXIT_DIVERGED


def cmd_minimize(args) -> int:
    cfg = DescentConfig(
        mu=args.mu,
        tol=args.tol,
        max_iter=args.max_iter,
        step_mode="backtracking" if args.backtrack else "fixed",
    )
    report = {"schema": 1, "command": "minimize", "mu": args.mu,
              "tol": args.tol, "max_iter": args.max_iter,
              "backtracking": bool(args.backtrack)}
    if args.data:
        X, d = _load_data_file(args.data)
        program = build_least_squares(X, d, widely_linear=args.widely_linear)
        import numpy as np
        f0 = np.zeros(program.n_params, dtype=complex)
        trace = steepest_descent_hilbert(program, f0, cfg)
        report["data"] = args.data
        report["widely_linear"] = bool(args.widely_linear)
        report["final"] = [_pair(complex(w)) for w in trace.final]
    else:
        if args.expr is None:
            raise ExprSyntaxError("minimize needs an expression or --data", 0)
        z0 = parse_complex(getattr(args, "from"))
        trace = steepest_descent_scalar(args.expr, z0, cfg)
        report["expr"] = format_expr(parse(args.expr))
        report["from"] = _pair(z0)
        report["final"] = _pair(trace.final)
    report["termination"] = trace.termination.value
    report["iterations"] = trace.iterations
    report["final_cost"] = trace.costs[-1]
    report["final_grad_norm"] = trace.grad_norms[-1]
    _emit(report, args.json)
    return _termination_exit(trace.termination)


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="wirtcalc",
        description="Derivatives with respect to z and z*, holomorphy "
                    "checks, and steepest descent for complex arguments.")
    top.add_argument("--version", action="version", version=__version__)
    sub = top.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--json", action=argparse.BooleanOptionalAction,
                       default=True, help="emit a JSON record (default)")
        p.add_argument("--seed", type=int, default=None,
                       help="seed for sampling paths (reserved)")

    p_diff = sub.add_parser("diff", help="first or second derivatives")
    p_diff.add_argument("expr")
    p_diff.add_argument("--at", required=True, help="evaluation point, e.g. 1+2i")
    p_diff.add_argument("--order", type=int, choices=(1, 2), default=1)
    common(p_diff)
    p_diff.set_defaults(func=cmd_diff)

    p_hess = sub.add_parser("hessian", help="alias of diff --order 2")
    p_hess.add_argument("expr")
    p_hess.add_argument("--at", required=True)
    common(p_hess)
    p_hess.set_defaults(func=cmd_diff, order=2)

    p_check = sub.add_parser(
        "check", help="compare the rule derivatives against finite differences")
    p_check.add_argument("expr")
    p_check.add_argument("--at", required=True)
    p_check.add_argument("--step", type=float, default=DEFAULT_STEP)
    p_check.add_argument("--tol", type=float, default=CHECK_DEFAULT_TOL)
    common(p_check)
    p_check.set_defaults(func=cmd_check)

    p_cls = sub.add_parser("classify", help="holomorphy classification")
    p_cls.add_argument("expr")
    p_cls.add_argument("--at", required=True)
    p_cls.add_argument("--step", type=float, default=DEFAULT_STEP)
    p_cls.add_argument("--tol", type=float, default=DEFAULT_TOL)
    common(p_cls)
    p_cls.set_defaults(func=cmd_classify)

    p_min = sub.add_parser("minimize", help="steepest descent")
    p_min.add_argument("expr", nargs="?", default=None)
    p_min.add_argument("--from", default="0", help="starting point")
    p_min.add_argument("--mu", type=float, default=0.1)
    p_min.add_argument("--tol", type=float, default=1e-8)
    p_min.add_argument("--max-iter", type=int, default=1000)
    p_min.add_argument("--backtrack", action="store_true")
    p_min.add_argument("--data", default=None,
                       help="least-squares JSON data file")
    p_min.add_argument("--widely-linear", action="store_true")
    common(p_min)
    p_min.set_defaults(func=cmd_minimize)

    return top


def main(argv=None) -> int:
    level = os.environ.get("WIRT_LOG", "").upper()
    if level:
        logging.basicConfig(level=getattr(logging, level, logging.INFO))
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ExprSyntaxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SYNTAX
    except (DomainError, PoleError, UnsupportedPrimitive) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except NonRealCost as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DIVERGED
    except (WirtcalcError, OSError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
