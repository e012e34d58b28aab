"""``hilbert-et`` command line entry point.

Reports are JSON with a top-level ``"schema": "hilbert-et/1"`` key; sampled
transforms can also be written as two-column CSV (``x,value``) for plotting.
``--out`` takes a file path, or one of the words ``json`` / ``csv`` to pick
the format and write to stdout.
"""

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import asdict, is_dataclass

import numpy as np

from . import __version__
from .constants import table
from .discrepancy import bounds_report, discrepancy_exact
from .errors import InvalidArgument, NumericFailure, SingularPoint
from .extremal import c_functional, certify, delta_sweep
from .families import KINDS, generate_family
from .heights import height_report
from .hilbert import PeriodizedFunction, circle_grid, line_grid, parse_function
from .polynomial import find_roots, load_polynomial
from .verification import RunConfig, run_verify_paper

SCHEMA = "hilbert-et/1"
_FORMAT_WORDS = ("json", "csv")


def _plain(obj):
    """Recursively turn dataclasses / numpy values into JSON-native types."""
    if is_dataclass(obj) and not isinstance(obj, type):
        return _plain(asdict(obj))
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        return v if math.isfinite(v) else str(v)
    return obj


def _json(payload):
    return json.dumps({"schema": SCHEMA, **_plain(payload)}, indent=2) + "\n"


def _resolve_output(args):
    """(format, path or None) from --format and --out."""
    fmt, path = args.format, args.out
    if path in _FORMAT_WORDS:
        fmt, path = path, None
    return fmt or "json", path


def _emit(args, text):
    _, path = _resolve_output(args)
    if path:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _require_json(args, what):
    if _resolve_output(args)[0] != "json":
        raise InvalidArgument(f"{what} is a report; only JSON output is supported (CSV is for sampled transforms)")


def _polynomial(args):
    if args.input:
        return load_polynomial(args.input)
    if getattr(args, "family", None):
        return generate_family(args.family, args.N, args.seed)
    raise InvalidArgument("give --input FILE or --family KIND")


def cmd_constants(args):
    _require_json(args, "constants")
    t = table(min(args.tol, 1e-10))
    rounded = {k: float(f"{v:.15g}") for k, v in t.as_dict().items()}
    _emit(args, _json({"constants": rounded}))
    return 0


def cmd_heights(args):
    _require_json(args, "heights")
    rep = height_report(_polynomial(args), tolerance=args.tol, grid=args.grid)
    _emit(args, _json({"heights": rep.as_dict()}))
    return 0


def cmd_discrepancy(args):
    _require_json(args, "discrepancy")
    p = _polynomial(args)
    if args.report == "bounds":
        body = {"bounds": bounds_report(p, tolerance=args.tol, grid=args.grid).as_dict()}
    else:
        body = {"discrepancy": discrepancy_exact(find_roots(p).theta).as_dict()}
    _emit(args, _json(body))
    return 0


def cmd_hilbert(args):
    F = parse_function(args.function, base_dir=os.getcwd())
    if args.domain == "line":
        g = line_grid(F, args.grid)
    else:
        g = circle_grid(PeriodizedFunction(F, args.delta), grid=args.grid, K=args.K)
    fmt, _ = _resolve_output(args)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["x", "value"])
        for x, v in zip(g.x, g.values):
            w.writerow([repr(float(x)), repr(float(v))])
        _emit(args, buf.getvalue())
        return 0
    body = {
        "function": F.name,
        "domain": g.domain,
        "delta": args.delta if args.domain == "circle" else None,
        "sup_norm": g.sup_norm,
        "argmax": g.argmax,
        "truncation_K": g.truncation_K,
        "tail_estimate": g.tail_estimate,
        "samples": [[float(x), float(v)] for x, v in zip(g.x, g.values)],
    }
    _emit(args, _json(body))
    return 0


def cmd_extremal(args):
    _require_json(args, "extremal")
    if args.action == "certify":
        ok, details = certify(grid=args.grid, K=args.K)
        _emit(args, _json({"certify": {"ok": ok, "details": details}}))
        return 0 if ok else 1
    if not args.function:
        raise InvalidArgument("extremal needs --function (or the 'certify' action)")
    F = parse_function(args.function, base_dir=os.getcwd())
    rep = c_functional(F, grid=args.grid, K=args.K)
    body = {"extremal": rep.as_dict()}
    if args.sweep == "delta":
        body["sweep"] = delta_sweep(F, grid=args.grid, K=args.K, report=rep).as_dict()
    _emit(args, _json(body))
    return 0


def cmd_verify(args):
    _require_json(args, "verify-paper")
    cfg = RunConfig(tolerance=args.tol, grid=args.grid, series_K=args.K, seed=args.seed)
    res = run_verify_paper(cfg, only=args.only, log=lambda s: print(s, file=sys.stderr))
    print(res.table(), file=sys.stderr)
    _emit(args, _json(res.as_dict()))
    return 0 if res.overall else 1


def cmd_generate(args):
    _require_json(args, "generate")
    p = generate_family(args.family, args.N, args.seed)
    body = {k: v for k, v in p.to_json().items() if k != "schema"}
    body["coefficients"] = [[float(c.real), float(c.imag)] for c in p.coefficients]
    body["family"] = args.family
    _emit(args, _json(body))
    return 0


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="polynomial JSON file (or inline JSON)")
    common.add_argument("--out", help="output file, or 'json' / 'csv' to choose the format on stdout")
    common.add_argument("--tol", type=float, default=1e-8, help="numerical tolerance (default 1e-8)")
    common.add_argument("--grid", type=int, default=2048, help="sampling grid size (default 2048)")
    common.add_argument("--K", type=int, default=4096, help="Fourier series cutoff (default 4096)")
    common.add_argument("--seed", type=int, default=0, help="seed for generated families")
    common.add_argument("--format", choices=_FORMAT_WORDS, default=None)

    parser = argparse.ArgumentParser(prog="hilbert-et", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("constants", parents=[common], help="print the constant table")
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("heights", parents=[common], help="h, log H, log M and Jensen check of a polynomial")
    p.add_argument("--family", choices=KINDS)
    p.add_argument("--N", type=int, default=10)
    p.set_defaults(func=cmd_heights)

    p = sub.add_parser("discrepancy", parents=[common], help="angular discrepancy of the roots")
    p.add_argument("--report", choices=("discrepancy", "bounds"), default="discrepancy")
    p.add_argument("--family", choices=KINDS)
    p.add_argument("--N", type=int, default=10)
    p.set_defaults(func=cmd_discrepancy)

    p = sub.add_parser("hilbert", parents=[common], help="sample H(F) on the line or H(f_delta) on the circle")
    p.add_argument("--function", required=True,
                   help="triangle | outlier | magicF | magicG | chebyshev | mollified:EPS | polyline:FILE")
    p.add_argument("--domain", choices=("line", "circle"), default="line")
    p.add_argument("--delta", type=float, default=1.0)
    p.set_defaults(func=cmd_hilbert)

    p = sub.add_parser("extremal", parents=[common], help="C(F), dichotomy and delta sweep; or 'certify'")
    p.add_argument("action", nargs="?", choices=("report", "certify"), default="report")
    p.add_argument("--function")
    p.add_argument("--sweep", choices=("none", "delta"), default="none")
    p.set_defaults(func=cmd_extremal)

    p = sub.add_parser("verify-paper", parents=[common], help="run the full verification suite")
    p.add_argument("--only", nargs="*", help="restrict to the named criteria")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("generate", parents=[common], help="emit a polynomial from a built-in family")
    p.add_argument("--family", choices=KINDS, required=True)
    p.add_argument("--N", type=int, required=True)
    p.set_defaults(func=cmd_generate)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InvalidArgument, SingularPoint) as exc:
        print(f"hilbert-et: error: {exc}", file=sys.stderr)
        return 2
    except NumericFailure as exc:
        print(f"hilbert-et: numeric failure: {exc} {exc.details}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
