"""Command-line front end.

Subcommands: ``bounds``, ``means``, ``kwong``, ``verify``, ``catalog``.
Exit codes: 0 pass, 1 mathematical failure found, 2 usage or parse error.
All JSON is printed with Python's shortest round-trip float repr.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys

from . import __version__
from .bounds import BoundParams, corollary_lambda, specht
from .functions import UnknownFunctionError, catalog_listing, get_function
from .kwong import check_audenaert_equivalence, classify_kwong, classify_operator_monotone
from .linalg import (
    LinalgError,
    PositivityError,
    ToleranceConfig,
    as_hermitian,
    matrix_from_json,
    matrix_to_json,
)
from .means import (
    SandwichInterval,
    arithmetic_mean,
    geometric_mean,
    harmonic_mean,
    sandwich_interval,
)
from .verify import DEFAULT_DIMS, TrialConfig, UnknownTheoremError, loewner_slack, run_suite


class UsageError(Exception):
    pass


def _finite(obj):
    """Replace non-finite floats with None so the output is strict JSON."""
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else None
    if isinstance(obj, dict):
        return {k: _finite(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_finite(v) for v in obj]
    return obj


def dumps(obj):
    return json.dumps(_finite(obj), indent=2, allow_nan=False)


def _default_seed():
    raw = os.environ.get("OPMEANS_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"OPMEANS_SEED must be an integer, got {raw!r}") from None


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_bounds(args, out):
    have_st = args.s is not None or args.t is not None
    have_mM = args.m is not None or args.M is not None
    if have_st == have_mM:
        raise UsageError("give exactly one of (--s, --t) or (--m, --M)")
    try:
        if have_st:
            if args.s is None or args.t is None:
                raise UsageError("--s and --t must be given together")
            iv = SandwichInterval(args.s, args.t)
        else:
            if args.m is None or args.M is None:
                raise UsageError("--m and --M must be given together")
            iv = SandwichInterval.from_spectrum(args.m, args.M)
        params = BoundParams(iv, args.alpha, args.beta)
        payload = params.as_dict()
        if have_mM:
            payload["m"], payload["M"] = args.m, args.M
            payload["corollary_lambda"] = corollary_lambda(args.m, args.M, args.alpha, args.beta)
            payload["specht_h"] = specht(args.M / args.m)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    print(dumps(payload), file=out)
    return 0


def _load_matrix(path):
    try:
        with open(path) as fh:
            obj = json.load(fh)
        if isinstance(obj, list):
            obj = {"dim": len(obj), "re": obj}
        return as_hermitian(matrix_from_json(obj))
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read matrix from {path}: {exc}") from None


def cmd_means(args, out):
    A, B = _load_matrix(args.A), _load_matrix(args.B)
    if A.shape != B.shape:
        raise UsageError(f"dimension mismatch: {A.shape[0]} vs {B.shape[0]}")
    alpha, beta = args.alpha, args.alpha if args.beta is None else args.beta
    for w in (alpha, beta):
        if not 0 <= w <= 1:
            raise UsageError(f"weights must lie in [0, 1], got {w}")
    try:
        iv = sandwich_interval(A, B)
        ar = arithmetic_mean(A, B, alpha)
        ge = geometric_mean(A, B, beta)
        ha = harmonic_mean(A, B, alpha)
    except (PositivityError, LinalgError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    ge_alpha = geometric_mean(A, B, alpha)
    chosen = {"arith": ar, "geom": ge, "harm": ha}
    which = ("arith", "geom", "harm") if args.which == "all" else (args.which,)
    payload = {
        "alpha": alpha,
        "beta": beta,
        "means": {k: matrix_to_json(chosen[k]) for k in which},
        "sandwich": {"s": iv.s, "t": iv.t},
        "chain_slacks": {
            "geom<=arith": loewner_slack(ge_alpha, ar),
            "harm<=geom": loewner_slack(ha, ge_alpha),
        },
    }
    print(dumps(payload), file=out)
    return 0


def cmd_kwong(args, out):
    try:
        f = get_function(args.fn)
    except UnknownFunctionError as exc:
        raise UsageError(str(exc.args[0])) from None
    kw = dict(n_max=args.n, trials=args.trials, seed=args.seed, tol=args.tol)
    if args.test == "kwong":
        verdict = classify_kwong(f, **kw)
    else:
        verdict = classify_operator_monotone(f, decreasing=args.test == "monotone-decreasing", **kw)
    payload = verdict.as_dict()
    code = 0
    if args.audenaert:
        aud = check_audenaert_equivalence(f, **kw)
        payload = {"verdict": payload, "audenaert": aud.as_dict()}
        code = 0 if aud.coherent else 1
    print(dumps(payload), file=out)
    return code


def cmd_verify(args, out):
    tol = ToleranceConfig(eps_psd=args.tol)
    try:
        cfg = TrialConfig(
            dim=args.dim[0] if args.dim else 1,
            trials=args.trials,
            seed=args.seed,
            m=args.m,
            M=args.M,
            alpha=args.alpha,
            beta=args.beta,
            tol=tol,
            function=args.function,
            p=args.p,
        )
        dims = tuple(args.dim) if args.dim else DEFAULT_DIMS
        for d in dims:
            if not 1 <= d <= 32:
                raise ValueError(f"dim must be in 1..32, got {d}")
        theorems = args.theorem or ["all"]
        report = run_suite(cfg, theorems, dims=dims, jobs=args.jobs, timing=args.timing)
    except (ValueError, UnknownTheoremError, UnknownFunctionError) as exc:
        msg = exc.args[0] if exc.args else str(exc)
        raise UsageError(str(msg)) from None
    text = report.to_json()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        for r in report.results:
            status = "ok  " if r.passed else "FAIL"
            print(f"{status} {r.label} dim={r.dim} min_slack={r.min_slack!r} failures={r.n_failures}", file=out)
        print(f"pass={str(report.passed).lower()}", file=out)
    else:
        out.write(text)
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(report.to_csv())
    return 0 if report.passed else 1


def cmd_catalog(args, out):
    rows = catalog_listing()
    if args.json:
        print(dumps(rows), file=out)
        return 0
    for row in rows:
        claims = ",".join(row["claims"]) or "-"
        print(f"{row['id']:<30} {claims:<75} {row['note']}", file=out)
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="opmeans", description="Operator means, bounds and verification.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bounds", help="bound constants for a sandwich interval or spectrum")
    b.add_argument("--s", type=float)
    b.add_argument("--t", type=float)
    b.add_argument("--m", type=float)
    b.add_argument("--M", type=float)
    b.add_argument("--alpha", type=float, default=0.5)
    b.add_argument("--beta", type=float, default=0.5)
    b.set_defaults(handler=cmd_bounds)

    m = sub.add_parser("means", help="weighted means of two matrices given as JSON files")
    m.add_argument("--A", required=True, help="JSON matrix file")
    m.add_argument("--B", required=True, help="JSON matrix file")
    m.add_argument("--alpha", type=float, default=0.5)
    m.add_argument("--beta", type=float, default=None, help="weight of the geometric mean (default alpha)")
    m.add_argument("--which", choices=("arith", "geom", "harm", "all"), default="all")
    m.set_defaults(handler=cmd_means)

    k = sub.add_parser("kwong", help="classify a catalog function")
    k.add_argument("--fn", required=True)
    k.add_argument("--n", type=int, default=12, help="maximum sample size (capped at 12)")
    k.add_argument("--trials", type=int, default=200)
    k.add_argument("--seed", type=int, default=None)
    k.add_argument("--tol", type=float, default=1e-9)
    k.add_argument("--test", choices=("kwong", "monotone", "monotone-decreasing"), default="kwong")
    k.add_argument("--audenaert", action="store_true", help="cross-check against the sqrt transform")
    k.set_defaults(handler=cmd_kwong)

    v = sub.add_parser("verify", help="run randomized inequality checks")
    v.add_argument("--theorem", action="append", help="theorem id or 'all' (repeatable)")
    v.add_argument("--dim", type=int, action="append", help="dimension (repeatable; default 1 2 4 8)")
    v.add_argument("--trials", type=int, default=1000)
    v.add_argument("--seed", type=int, default=None)
    v.add_argument("--tol", type=float, default=1e-9)
    v.add_argument("--m", type=float, default=1.0)
    v.add_argument("--M", type=float, default=10.0)
    v.add_argument("--alpha", type=float, default=None)
    v.add_argument("--beta", type=float, default=None)
    v.add_argument("--function", default=None, help="pin the function of function-valued checks")
    v.add_argument("--p", type=float, default=None, help="pin the exponent of power-valued checks")
    v.add_argument("--out", help="write the JSON report here instead of stdout")
    v.add_argument("--csv", help="also write a CSV summary")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--timing", action="store_true", help="record elapsed_ms (breaks byte-identity)")
    v.set_defaults(handler=cmd_verify)

    c = sub.add_parser("catalog", help="list catalog functions and their claims")
    c.add_argument("--json", action="store_true")
    c.set_defaults(handler=cmd_catalog)
    return p


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "seed", 0) is None:
            args.seed = _default_seed()
        if getattr(args, "jobs", 1) < 1:
            raise UsageError("--jobs must be >= 1")
        return args.handler(args, out)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"opmeans: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
