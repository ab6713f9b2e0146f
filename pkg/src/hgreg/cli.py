"""Command line front end: ``hgreg <command> [options]``.

Exit status is 0 when every check passes, 2 when a verification fails and 1
on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

import mpmath
from mpmath import mp

from . import verify
from .errors import HGRegError
from .numerics import DEFAULT_DPS, parse_number, to_mp

SCHEMA = "hgreg-report/1"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _num(text):
    try:
        return parse_number(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _num_list(text):
    return [_num(x) for x in text.split(",")]


def _int_list(text):
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _str(v, digits):
    if isinstance(v, mpmath.mpc):
        return {"re": mpmath.nstr(v.real, digits), "im": mpmath.nstr(v.imag, digits)}
    if isinstance(v, mpmath.mpf):
        return mpmath.nstr(v, digits)
    return v


# --- output ------------------------------------------------------------------------------

def _rows(reports):
    out = []
    for r in reports:
        j = r.to_json(digits=6)
        out.append({"name": j["name"], "passed": j["passed"], "residual": j["residual"],
                    "tolerance": j["tolerance"], "ratio": j["ratio"], "lhs": j["lhs"],
                    "rhs": j["rhs"], "runtime_s": round(j["runtime"], 3), "dps": j["dps"]})
    return out


def render(reports, fmt, extra=None):
    if fmt == "json":
        doc = {"schema": SCHEMA, "reports": [r.to_json() for r in reports]}
        if extra:
            doc.update(extra)
        return json.dumps(doc, indent=2, default=str)
    rows = _rows(reports)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(rows[0]) if rows else ["name"])
        w.writeheader()
        w.writerows(rows)
        return buf.getvalue()
    keys = ["name", "passed", "residual", "tolerance", "ratio", "runtime_s"]
    lines = ["| " + " | ".join(keys) + " |", "|" + "---|" * len(keys)]
    for row in rows:
        lines.append("| " + " | ".join(str(row[k]) for k in keys) + " |")
    return "\n".join(lines)


def emit(text, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


# --- commands ------------------------------------------------------------------------------

def cmd_eval_F(args, cfg):
    from .hypergeom import HGParams, calF, calF_connection
    from .hypergeom.calf import _compare_branches

    params = HGParams(tuple(args.a))
    t = args.t
    res = calF(params, t, dps=args.dps, method=args.method)
    doc = {"schema": SCHEMA, "a": [str(x) for x in args.a], "t": str(t),
           "value": _str(mpmath.mpc(res.value), args.dps), "error_estimate": _str(res.error_estimate, 5),
           "method": res.method, "branch_note": res.branch_note}
    status = 0
    if args.method == "auto" and res.method == "ode" and abs(to_mp(t)) > 1:
        try:
            conn = calF_connection(params, t, dps=args.dps)
            checked = _compare_branches(conn, res, args.dps)
            doc["cross_check"] = checked.branch_note
        except HGRegError as exc:
            doc["cross_check"] = f"failed: {exc}"
            status = 2
    emit(json.dumps(doc, indent=2), args.out)
    return status


def cmd_table_ec(args, cfg):
    reports = verify.table_ec(args.dps, jobs=args.jobs)
    emit(render(reports, args.format), args.out)
    return 0 if all(r.passed for r in reports) else 2


def cmd_verify_k3(args, cfg):
    reports = []
    for alpha in args.alpha:
        reports += verify.verify_k3(alpha, args.dps)
    emit(render(reports, args.format), args.out)
    return 0 if all(r.passed for r in reports) else 2


def cmd_periods(args, cfg):
    reports = verify.periods_check(args.dps, count=args.count, seed=args.seed)
    reports += verify.contour_check(args.dps, seed=args.seed)
    emit(render(reports, args.format), args.out)
    return 0 if all(r.passed for r in reports) else 2


def cmd_monodromy(args, cfg):
    reports = verify.monodromy_check(args.a, args.alpha, args.dps)
    emit(render(reports, args.format), args.out)
    return 0 if all(r.passed for r in reports) else 2


def cmd_resolve(args, cfg):
    from .resolver import resolve

    res = resolve(args.n, order=args.order)
    if args.trace:
        with open(args.trace, "w") as fh:
            res.write_trace(fh)
    reports = verify.resolver_check([args.n])
    emit(render(reports, args.format), args.out)
    return 0 if all(r.passed for r in reports) else 2


def cmd_lvalue(args, cfg):
    from .lfunctions.eta import EtaProductSpec
    from .lfunctions.lseries import eta_lseries, lambda_completed, lprime_at_0, quartic_lprime

    if (args.eta is None) == (args.alpha is None):
        raise UsageError("give exactly one of --eta or --alpha")
    with mp.workdps(args.dps):
        if args.eta is not None:
            spec = EtaProductSpec.parse(args.eta, args.level)
            if args.weight is not None and args.weight != spec.weight:
                raise UsageError(f"eta product has weight {spec.weight}, not {args.weight}")
            L = eta_lseries(spec, args.dps + 10, sign=args.sign)
            info = {"level": spec.level, "sign": args.sign}
        else:
            _, found, L = quartic_lprime(args.alpha, args.dps)
            info = {"level": found["level"], "sign": found["sign"]}
        at = args.at
        if args.order == 1:
            if at != 0:
                raise UsageError("--order 1 is only available at s = 0")
            val = lprime_at_0(L, args.dps)
        else:
            val = lambda_completed(L, at, dps=args.dps)
            val = val / ((mpmath.sqrt(L.level) / (2 * mpmath.pi)) ** at * mpmath.gamma(at))
    doc = {"schema": SCHEMA, "order": args.order, "at": str(at), "value": _str(val, args.dps), **info}
    emit(json.dumps(doc, indent=2), args.out)
    return 0


def cmd_dlog_check(args, cfg):
    reports = verify.dlog_check(args.dps, samples=args.samples, seed=args.seed)
    reports += verify.covering_check(args.dps, seed=args.seed)
    emit(render(reports, args.format), args.out)
    return 0 if all(r.passed for r in reports) else 2


def cmd_verify_all(args, cfg):
    dps, seed = args.dps, args.seed
    half2, half3 = [Fraction(1, 2)] * 2, [Fraction(1, 2)] * 3
    reports = verify.table_ec(dps, jobs=args.jobs)
    for alpha in (4, 64, 1):
        reports += verify.verify_k3(alpha, dps)
    reports += verify.periods_check(dps, seed=seed)
    reports += verify.contour_check(dps, seed=seed)
    reports += verify.connection_vs_ode(dps)
    reports += verify.monodromy_check(half2, Fraction(1, 4), dps)
    reports += verify.monodromy_check(half3, Fraction(1, 4), dps)
    reports += verify.dlog_check(dps, seed=seed)
    reports += verify.covering_check(dps, seed=seed)
    reports += verify.lfunction_internals()
    reports += verify.resolver_check()
    emit(render(reports, args.format), args.out)
    return 0 if all(r.passed for r in reports) else 2


# --- parser --------------------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--dps", type=int, default=None, help=f"decimal digits (default {DEFAULT_DPS})")
    common.add_argument("--format", choices=("md", "csv", "json"), default="md")
    common.add_argument("--out", default=None, help="write the report to this file")
    common.add_argument("--config", default=None, help="JSON file with defaults (dps, seed, jobs)")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--jobs", type=int, default=None, help="worker processes for table rows")

    p = _Parser(prog="hgreg", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("eval-F", parents=[common], help="evaluate F_a(t)")
    s.add_argument("--a", type=_num_list, required=True)
    s.add_argument("--t", type=_num, required=True)
    s.add_argument("--method", choices=("auto", "series", "connection", "ode"), default="auto")
    s.set_defaults(func=cmd_eval_F)

    s = sub.add_parser("table-ec", parents=[common], help="twelve elliptic-curve rows")
    s.set_defaults(func=cmd_table_ec)

    s = sub.add_parser("verify-k3", parents=[common], help="K3 identities")
    s.add_argument("--alpha", type=int, nargs="+", choices=(4, 64, 1), default=[4, 64, 1])
    s.set_defaults(func=cmd_verify_k3)

    s = sub.add_parser("periods", parents=[common], help="torus periods and the contour residue")
    s.add_argument("--count", type=int, default=20)
    s.set_defaults(func=cmd_periods)

    s = sub.add_parser("monodromy", parents=[common], help="local monodromy diagnostics")
    s.add_argument("--a", type=_num_list, required=True)
    s.add_argument("--alpha", type=_num, required=True)
    s.set_defaults(func=cmd_monodromy)

    s = sub.add_parser("resolve", parents=[common], help="run the blow-up rewriting system")
    s.add_argument("--n", type=_int_list, required=True)
    s.add_argument("--order", choices=("fifo", "lifo"), default="fifo")
    s.add_argument("--trace", default=None, help="write JSON-lines trace here")
    s.set_defaults(func=cmd_resolve)

    s = sub.add_parser("lvalue", parents=[common], help="L-values of eta products or X_alpha")
    s.add_argument("--eta", default=None, help="factors m:e,... e.g. 4:3,4:3")
    s.add_argument("--alpha", type=_num, default=None)
    s.add_argument("--weight", type=int, default=None)
    s.add_argument("--level", type=int, default=None)
    s.add_argument("--sign", type=int, choices=(1, -1), default=1)
    s.add_argument("--order", type=int, choices=(0, 1), default=1)
    s.add_argument("--at", type=_num, default=0)
    s.set_defaults(func=cmd_lvalue)

    s = sub.add_parser("dlog-check", parents=[common], help="dlog and covering identities")
    s.add_argument("--samples", type=int, default=100)
    s.set_defaults(func=cmd_dlog_check)

    s = sub.add_parser("verify-all", parents=[common], help="every check")
    s.set_defaults(func=cmd_verify_all)
    return p


def _apply_config(args):
    cfg = {}
    if args.config:
        with open(args.config) as fh:
            cfg = json.load(fh)
    defaults = {"dps": DEFAULT_DPS, "seed": 0, "jobs": 1}
    for key, value in defaults.items():
        if getattr(args, key, None) is None:
            setattr(args, key, cfg.get(key, value))
    return cfg


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _apply_config(args)
    except (OSError, ValueError) as exc:
        print(f"hgreg: bad config: {exc}", file=sys.stderr)
        return 1
    try:
        with mp.workdps(args.dps):
            return args.func(args, cfg)
    except UsageError as exc:
        print(f"hgreg: {exc}", file=sys.stderr)
        return 1
    except HGRegError as exc:
        print(f"hgreg: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
