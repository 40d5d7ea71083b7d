"""Command-line interface: ``prmweights <subcommand> [options]``.

Exit codes: 0 success, 1 a verify criterion failed, 2 domain violation,
3 enumeration budget exceeded, 64 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import analysis, bounds, codes, extremal
from .enumeration import BUDGET_ENV
from .errors import BudgetExceeded, PRMError
from .gf import field_of_order, make_field
from .poly import Form, monomial_basis

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_DOMAIN = 2
EXIT_BUDGET = 3
EXIT_USAGE = 64
DEFAULT_SEED = 0xC0DE


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _positive(text):
    v = int(text, 0)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be > 0")
    return v


def _add_field_args(p):
    p.add_argument("--q", type=int, help="field order (prime power)")
    p.add_argument("--p", type=int, help="characteristic (with --e)")
    p.add_argument("--e", type=int, default=1, help="extension degree (with --p)")


def _add_run_args(p, modes, default_mode):
    p.add_argument("--mode", choices=modes, default=default_mode)
    p.add_argument("--budget", type=_positive, default=None,
                   help=f"max enumerated forms (default 1e9, env {BUDGET_ENV})")
    p.add_argument("--seed", type=lambda t: int(t, 0), default=DEFAULT_SEED)
    p.add_argument("--n-samples", type=_positive, default=10**5)
    p.add_argument("--workers", type=_positive, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="prmweights", description="Reed-Muller weights and rational points of hypersurfaces.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    fmt = dict(choices=["json", "csv", "text"], default="json")

    p = sub.add_parser("field", help="describe GF(q)")
    _add_field_args(p)
    p.add_argument("--format", **fmt)

    p = sub.add_parser("code", help="parameters of GRM(d, m) or PRM(d, m)")
    _add_field_args(p)
    p.add_argument("--kind", choices=["GRM", "PRM"], default="PRM", type=str.upper)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--allow-large-degree", action="store_true")
    p.add_argument("--format", **fmt)

    p = sub.add_parser("spectrum", help="weight distribution of a code")
    _add_field_args(p)
    p.add_argument("--kind", choices=["GRM", "PRM"], default="PRM", type=str.upper)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--m", type=int, default=2)
    _add_run_args(p, [codes.EXHAUSTIVE_UP_TO_SCALAR, codes.EXHAUSTIVE_FULL, codes.SAMPLED],
                  codes.EXHAUSTIVE_UP_TO_SCALAR)
    p.add_argument("--top", type=_positive, default=None, help="only the k smallest nonzero weights")
    p.add_argument("--format", **fmt)

    p = sub.add_parser("bounds", help="every bound over a grid of (d, m)")
    _add_field_args(p)
    p.add_argument("--d", type=int, nargs="+", required=True)
    p.add_argument("--m", type=int, nargs="+", default=[2])
    p.add_argument("--format", **fmt)

    p = sub.add_parser("extremal", help="build an extremal configuration")
    _add_field_args(p)
    p.add_argument("--config", choices=sorted(extremal.CONFIGS), required=True)
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--m", type=int, default=None, help="ambient dimension (default 2, or 3 for surfaces)")
    p.add_argument("--format", **fmt)

    p = sub.add_parser("census", help="point-count census of degree-d forms")
    _add_field_args(p)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--top", type=_positive, default=3)
    _add_run_args(p, [analysis.EXHAUSTIVE, analysis.SAMPLED], analysis.EXHAUSTIVE)
    p.add_argument("--format", **fmt)

    p = sub.add_parser("classify", help="classify a form given by its dense coefficients")
    _add_field_args(p)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--coeffs", required=True,
                   help="comma-separated coefficients in graded reverse-lex monomial order, x0^d first")
    p.add_argument("--format", **fmt)

    p = sub.add_parser("verify", help="run the acceptance suites")
    p.add_argument("--level", choices=["quick", "full", "long"], default="quick")
    p.add_argument("--workers", type=_positive, default=1)
    p.add_argument("--format", **fmt)
    return parser


def _field(args):
    if args.q is not None and args.p is not None:
        raise UsageError("give either --q or --p/--e, not both")
    if args.q is not None:
        return field_of_order(args.q)
    if args.p is not None:
        return make_field(args.p, args.e)
    raise UsageError("a field is required: --q or --p/--e")


def _emit(obj, fmt, text=None, csv_text=None):
    if fmt == "csv":
        if csv_text is None:
            raise UsageError("csv output is only available for histograms and spectra")
        sys.stdout.write(csv_text)
    elif fmt == "text" and text is not None:
        print(text)
    else:
        print(json.dumps(obj, indent=2))


def cmd_field(args):
    F = _field(args)
    obj = {"p": F.p, "e": F.e, "q": F.q, "modulus": list(F.modulus), "generator": F.generator}
    _emit(obj, args.format, text=f"GF({F.q}) = GF({F.p})[t]/({_poly_text(F.modulus)}), generator {F.generator}")


def _poly_text(coeffs):
    parts = [f"{c}*t^{i}" if i else str(c) for i, c in enumerate(coeffs) if c]
    return " + ".join(reversed(parts))


def cmd_code(args):
    F = _field(args)
    code = codes.build_code(args.kind, F, args.d, args.m, args.allow_large_degree)
    obj = code.to_json()
    if code.kind == codes.PRM and args.d <= F.q:
        obj["minimum_weight"] = codes.minimum_weight_prm(F.q, args.d, args.m)
    _emit(obj, args.format, text=f"{code.kind}({args.d}, {args.m}) over GF({F.q}): n={code.n} k={code.k}")


def cmd_spectrum(args):
    F = _field(args)
    code = codes.build_code(args.kind, F, args.d, args.m)
    spec = codes.weight_spectrum(code, args.mode, args.n_samples, args.seed, args.budget, args.workers)
    obj = spec.to_json(code)
    if args.top:
        obj["weights"] = [[w, c] for w, c in codes.distinct_weights(spec, args.top)]
    text = "\n".join(f"{w}\t{c}" for w, c in spec.to_rows())
    _emit(obj, args.format, text=text, csv_text=spec.to_csv())


def cmd_bounds(args):
    F = _field(args)
    table = []
    for m in args.m:
        for d in args.d:
            table.append({"q": F.q, "d": d, "m": m, **bounds.all_bounds(F.q, d, m)})
    obj = table[0] if len(table) == 1 else table
    _emit(obj, args.format)


def cmd_extremal(args):
    F = _field(args)
    m = args.m if args.m is not None else (3 if args.config in ("hermitian_surface", "hyperbolic_quadric") else 2)
    c = extremal.CONFIGS[args.config](F, args.d, m)
    obj = c.to_json()
    _emit(obj, args.format, text=f"{obj['tag']}: {obj['polynomial']}  predicted {obj['predicted']} measured {obj['measured']}")


def cmd_census(args):
    F = _field(args)
    r = analysis.census(F, args.d, args.m, args.mode, args.top, args.n_samples, args.seed,
                        args.budget, args.workers)
    lines = [f"{t.count}\t{t.tally}\t{t.witness}" for t in r.top]
    lines += [f"{c.bound}\t{c.value}\t{'ok' if c.ok else 'VIOLATED'}" for c in r.checks]
    _emit(r.to_json(), args.format, text="\n".join(lines), csv_text=r.histogram_csv())


def cmd_classify(args):
    F = _field(args)
    try:
        coeffs = tuple(int(c, 0) for c in args.coeffs.split(","))
    except ValueError:
        raise UsageError("--coeffs must be comma-separated integers")
    basis = monomial_basis(args.m + 1, args.d)
    if len(coeffs) != len(basis):
        raise UsageError(f"expected {len(basis)} coefficients for degree {args.d} in {args.m + 1} variables")
    f = Form(F, args.m + 1, args.d, coeffs)
    cl = analysis.classify(f)
    obj = {"form": str(f), **cl.to_json(), "zanella": analysis.zanella_check_form(f).__dict__}
    _emit(obj, args.format, text=f"{f}: {cl.label()}, {cl.points} points")


def cmd_verify(args):
    from . import verify

    results = verify.run(args.level, workers=args.workers,
                         report=None if args.format == "json" else lambda r: print(r.line(), flush=True))
    if args.format == "json":
        print(json.dumps({"level": args.level, "results": [r.to_json() for r in results]}, indent=2))
    return EXIT_OK if all(r.ok for r in results) else EXIT_FAILED


COMMANDS = {
    "field": cmd_field,
    "code": cmd_code,
    "spectrum": cmd_spectrum,
    "bounds": cmd_bounds,
    "extremal": cmd_extremal,
    "census": cmd_census,
    "classify": cmd_classify,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"prmweights: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"prmweights: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except PRMError as exc:
        print(f"prmweights: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    return EXIT_OK if code is None else code


if __name__ == "__main__":
    sys.exit(main())
