"""``projprod`` command line.

Exit codes: 0 success, 1 negative verdict or failed suite, 2 bad input,
3 truncation order too small, 4 internal consistency failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .alternating import DEFAULT_MAX_ITER, DEFAULT_TOL_CONV, trace_to_csv, von_neumann_limit
from .blaschke import DEFAULT_MAX_ZERO_MODULUS, DEFAULT_TOL_ZERO, BlaschkeProduct, blaschke_eval
from .blaschke import blaschke_gcd, blaschke_lcm, divides
from .errors import ConsistencyError, InputError, ProjprodError, TruncationError
from .hardy import (
    HardyTruncation,
    InnerPair,
    inner_projection_matrix,
    model_product_classify,
    product_inner_check,
    product_model_check,
)
from .hilbert import Tolerances, matrix_from_json, matrix_to_json, opnorm, subspace_to_json
from .products import ProjectionPair, canonical_decomposition, classify, kernel_decomposition
from .suites import SUITES, RunConfig, run_suite

EXIT_OK, EXIT_NO, EXIT_INPUT, EXIT_TRUNC, EXIT_CONSISTENCY = 0, 1, 2, 3, 4

TOL_ENV = "PROJPROD_TOL_EQ"


class _Fail(Exception):
    def __init__(self, code, msg):
        super().__init__(msg)
        self.code = code


def _default_tol_eq() -> float:
    raw = os.environ.get(TOL_ENV)
    if raw is None or raw == "":
        return Tolerances().tol_eq
    try:
        return float(raw)
    except ValueError:
        raise _Fail(EXIT_INPUT, f"{TOL_ENV}={raw!r} is not a number") from None


def _read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise _Fail(EXIT_INPUT, f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise _Fail(EXIT_INPUT, f"{path}: malformed JSON ({exc.msg} at line {exc.lineno})") from None


def _load_matrix(path):
    try:
        return matrix_from_json(_read_json(path))
    except InputError as exc:
        raise _Fail(EXIT_INPUT, f"{path}: {exc}") from None


def _load_blaschke(path, args):
    try:
        return BlaschkeProduct.from_json(_read_json(path), args.max_zero_modulus)
    except InputError as exc:
        raise _Fail(EXIT_INPUT, f"{path}: {exc}") from None


def _load_projection(path, tol):
    p = _load_matrix(path)
    if p.shape[0] != p.shape[1]:
        raise _Fail(EXIT_INPUT, f"{path}: matrix is {p.shape[0]}x{p.shape[1]}, not square")
    herm, idem = opnorm(p - p.conj().T), opnorm(p @ p - p)
    if max(herm, idem) > tol.tol_eq:
        raise _Fail(
            EXIT_INPUT,
            f"{path}: not an orthogonal projection (||P - P*|| = {herm:.3e}, ||P^2 - P|| = {idem:.3e})",
        )
    return p


def _pair(args, tol):
    p1 = _load_projection(args.p1, tol)
    p2 = _load_projection(args.p2, tol)
    if p1.shape != p2.shape:
        raise _Fail(EXIT_INPUT, f"{args.p1} is {p1.shape[0]}x{p1.shape[0]} but {args.p2} is {p2.shape[0]}x{p2.shape[0]}")
    return ProjectionPair(p1, p2, tol)


def _tolerances(args) -> Tolerances:
    tol_eq = args.tol_eq if args.tol_eq is not None else _default_tol_eq()
    try:
        return Tolerances(tol_rank=args.tol_rank, tol_eq=tol_eq)
    except InputError as exc:
        raise _Fail(EXIT_INPUT, str(exc)) from None


def _truncation(args) -> HardyTruncation:
    try:
        return HardyTruncation(args.truncation, tol_zero=args.tol_zero)
    except ProjprodError as exc:
        raise _Fail(EXIT_INPUT, str(exc)) from None


def _emit(args, text: str):
    if not text.endswith("\n"):
        text += "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


# --- commands --------------------------------------------------------------


def cmd_check(args) -> int:
    tol = _tolerances(args)
    t = _load_matrix(args.matrix)
    if t.shape[0] != t.shape[1]:
        raise _Fail(EXIT_INPUT, f"{args.matrix}: matrix is {t.shape[0]}x{t.shape[1]}, not square")
    report = classify(t, tol)
    _emit(args, _dump(report.to_json()))
    return EXIT_OK if report.is_product else EXIT_NO


def cmd_decompose(args) -> int:
    tol = _tolerances(args)
    pair = _pair(args, tol)
    dec = canonical_decomposition(pair, tol)
    first, second = kernel_decomposition(pair, tol)
    out = {
        "unitary_space": subspace_to_json(dec.unitary_space),
        "cnu_space": subspace_to_json(dec.cnu_space),
        "unitary_block": matrix_to_json(dec.unitary_block),
        "cnu_block": matrix_to_json(dec.cnu_block),
        "unitary_dim": dec.unitary_space.dim,
        "cnu_dim": dec.cnu_space.dim,
        "off_diagonal_norm": dec.off_diagonal_norm,
        "unitarity_defect": dec.unitarity_defect,
        "kernel_summands": [subspace_to_json(first), subspace_to_json(second)],
    }
    _emit(args, _dump(out))
    return EXIT_OK


def cmd_alternate(args) -> int:
    tol = _tolerances(args)
    pair = _pair(args, tol)
    if not args.tol_conv > 0:
        raise _Fail(EXIT_INPUT, "--tol-conv must be positive")
    if args.max_iter < 1:
        raise _Fail(EXIT_INPUT, "--max-iter must be at least 1")
    trace = von_neumann_limit(pair, args.tol_conv, args.max_iter, tol)
    _emit(args, trace_to_csv(trace))
    summary = f"final_residual={trace.final_residual:.17g} converged={str(trace.converged).lower()} steps={len(trace.iterates)}\n"
    # keep stdout pure CSV when the trace itself goes there
    (sys.stdout if args.out else sys.stderr).write(summary)
    return EXIT_OK if trace.converged else EXIT_NO


def cmd_blaschke(args) -> int:
    b1 = _load_blaschke(args.b1, args)
    if args.op == "eval":
        try:
            z = complex(float(args.re), float(args.im))
        except ValueError:
            raise _Fail(EXIT_INPUT, "the evaluation point needs numeric RE and IM") from None
        v = blaschke_eval(b1, z)
        _emit(args, _dump({"value": [v.real, v.imag]}))
        return EXIT_OK
    if args.b2 is None:
        raise _Fail(EXIT_INPUT, f"'{args.op}' needs two Blaschke files")
    b2 = _load_blaschke(args.b2, args)
    if args.op == "divides":
        _emit(args, _dump({"divides": divides(b1, b2, args.tol_zero)}))
        return EXIT_OK
    combine = blaschke_lcm if args.op == "lcm" else blaschke_gcd
    _emit(args, _dump(combine(b1, b2, args.tol_zero).to_json()))
    return EXIT_OK


def _inner_pair(args):
    phi1 = _load_blaschke(args.phi1, args)
    phi2 = _load_blaschke(args.phi2, args)
    return InnerPair(phi1, phi2, _truncation(args))


def cmd_inner_demo(args) -> int:
    tol = _tolerances(args)
    report = product_inner_check(_inner_pair(args), tol)
    _emit(args, _dump(report.to_json()))
    return EXIT_OK if report.ok else EXIT_NO


def cmd_model_demo(args) -> int:
    tol = _tolerances(args)
    if args.matrix:
        if args.phi1 or args.phi2:
            raise _Fail(EXIT_INPUT, "give either --matrix or two Blaschke files, not both")
        t = _load_matrix(args.matrix)
        report = model_product_classify(t, _truncation(args), tol)
    else:
        if not (args.phi1 and args.phi2):
            raise _Fail(EXIT_INPUT, "model-demo needs two Blaschke files or --matrix")
        pair = _inner_pair(args)
        if args.inner:
            t = inner_projection_matrix(pair.phi1, pair.trunc, tol) @ inner_projection_matrix(
                pair.phi2, pair.trunc, tol
            )
            report = model_product_classify(t, pair.trunc, tol)
        else:
            report = product_model_check(pair, tol)
    _emit(args, _dump(report.to_json()))
    if not report.is_model_product:
        sys.stderr.write(report.classification + "\n")
    return EXIT_OK if report.is_model_product else EXIT_NO


def cmd_propcheck(args) -> int:
    if args.suite not in SUITES:
        raise _Fail(EXIT_INPUT, f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    tol = _tolerances(args)
    try:
        cfg = RunConfig(args.seed, args.trials, args.dim, args.truncation, tol)
    except InputError as exc:
        raise _Fail(EXIT_INPUT, str(exc)) from None
    report = run_suite(args.suite, cfg)
    _emit(args, report.dumps())
    sys.stderr.write(f"{report.suite}: {report.passed} passed, {report.failed} failed\n")
    return EXIT_OK if report.ok else EXIT_NO


# --- parser ----------------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("shared options")
    g.add_argument("--tol-eq", type=float, default=None,
                   help=f"operator-norm equality tolerance (default 1e-8, or ${TOL_ENV})")
    g.add_argument("--tol-rank", type=float, default=1e-10, help="relative singular-value cutoff")
    g.add_argument("--truncation", type=int, default=256, metavar="N", help="Hardy truncation order")
    g.add_argument("--seed", type=int, default=0, help="root seed for randomized suites")
    g.add_argument("--trials", type=int, default=None, help="number of random trials")
    g.add_argument("--dim", type=int, default=None, help="matrix dimension for random suites")
    g.add_argument("--out", default=None, metavar="PATH", help="write the result here instead of stdout")
    g.add_argument("--tol-zero", type=float, default=DEFAULT_TOL_ZERO,
                   help="distance below which Blaschke zeros merge")
    g.add_argument("--max-zero-modulus", type=float, default=DEFAULT_MAX_ZERO_MODULUS,
                   help="largest admissible zero modulus")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog="projprod", description="Products of two orthogonal projections: checks and demos."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="is a matrix a product of two projections?")
    p.add_argument("matrix")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("decompose", parents=[common], help="unitary / cnu splitting of P1 P2")
    p.add_argument("p1")
    p.add_argument("p2")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("alternate", parents=[common], help="CSV trace of (P1 P2)^m")
    p.add_argument("p1")
    p.add_argument("p2")
    p.add_argument("--tol-conv", type=float, default=DEFAULT_TOL_CONV)
    p.add_argument("--max-iter", type=int, default=DEFAULT_MAX_ITER)
    p.set_defaults(func=cmd_alternate)

    p = sub.add_parser("blaschke", parents=[common], help="lcm, gcd, divides, eval")
    p.add_argument("op", choices=["lcm", "gcd", "divides", "eval"])
    p.add_argument("b1")
    p.add_argument("b2", nargs="?", default=None, help="second product (lcm, gcd, divides)")
    p.add_argument("re", nargs="?", default=None, help=argparse.SUPPRESS)
    p.add_argument("im", nargs="?", default=None, help=argparse.SUPPRESS)
    p.set_defaults(func=_blaschke_dispatch)

    p = sub.add_parser("inner-demo", parents=[common], help="recover phi_T for P_{phi1 H2} P_{phi2 H2}")
    p.add_argument("phi1")
    p.add_argument("phi2")
    p.set_defaults(func=cmd_inner_demo)

    p = sub.add_parser("model-demo", parents=[common], help="recover psi_T for a product of model projections")
    p.add_argument("phi1", nargs="?")
    p.add_argument("phi2", nargs="?")
    p.add_argument("--matrix", default=None, help="classify this N x N matrix instead")
    p.add_argument("--inner", action="store_true",
                   help="use the inner projections of phi1, phi2 as T (a case with empty families)")
    p.set_defaults(func=cmd_model_demo)

    p = sub.add_parser("propcheck", parents=[common], help="run a seeded property suite")
    p.add_argument("suite", help=f"one of: {', '.join(SUITES)}")
    p.set_defaults(func=cmd_propcheck)
    return parser


def _blaschke_dispatch(args) -> int:
    # eval takes FILE RE IM; argparse fills b2/re positionally
    if args.op == "eval":
        if args.b2 is None or args.re is None or args.im is not None:
            raise _Fail(EXIT_INPUT, "usage: projprod blaschke eval FILE RE IM")
        args.re, args.im = args.b2, args.re
        args.b2 = None
    elif args.re is not None:
        raise _Fail(EXIT_INPUT, f"'{args.op}' takes exactly two Blaschke files")
    return cmd_blaschke(args)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _Fail as exc:
        sys.stderr.write(f"error: {exc}\n")
        return exc.code
    except TruncationError as exc:
        sys.stderr.write(f"error: {exc}; suggested truncation N = {exc.suggested_order}\n")
        return EXIT_TRUNC
    except ConsistencyError as exc:
        sys.stderr.write(f"consistency failure: {exc}\n")
        return EXIT_CONSISTENCY
    except InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except ProjprodError as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_NO


if __name__ == "__main__":
    raise SystemExit(main())
