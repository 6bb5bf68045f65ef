"""Command line interface: ``thetaseq {dn,verify,congruence,constants,ode}``.

Exit codes: 0 when every check passes, 1 when a mathematical check fails,
2 on a usage error. Big integers are written as decimal strings in JSON.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from . import congruence as cg
from .numerics import MIN_PRECISION, constants
from .ode import relative_residual, sigma_hat_ode_residual, sigma_ode_sides, theta_ode_sides
from .oracles import (
    deriv_oracle,
    genfun_oracle,
    hermite_odd_verdict,
    hermite_oracle_d,
    power_sum_oracle,
    sigma_taylor_oracle,
)
from .sequences import compute_d

PRECISION_ENV = "THETASEQ_PRECISION"
DEFAULT_PRECISION = 256
DEFAULT_COUNT = 20

METHODS = ("hermite", "hermite-odd", "derivs", "power", "genfun", "sigma", "ode-exact", "ode-point")
GENFUN_POINTS = (Fraction(1, 100), Fraction(1, 10))
SIGMA_POINTS = ("0.25", "-0.25")
THETA_ODE_POINTS = (1, 2)
SIGMA_ODE_POINTS = ("0.1", "-0.1")


@dataclass
class Check:
    suite: str
    label: str
    passed: bool
    info: dict


def _default_precision() -> int:
    raw = os.environ.get(PRECISION_ENV)
    if not raw:
        return DEFAULT_PRECISION
    try:
        return int(raw)
    except ValueError:
        return DEFAULT_PRECISION


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv(rows: list[list], header: list[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# -- dn ----------------------------------------------------------------------


def cmd_dn(args) -> int:
    table = compute_d(args.count)
    rows = []
    for n in range(args.count + 1):
        row = {"n": n, "d": str(table.d[n])}
        if args.aux:
            row["u"] = str(table.u[n])
            row["v"] = str(table.v[n])
        rows.append(row)
    keys = list(rows[0])
    if args.format == "json":
        text = json.dumps(rows, indent=1) + "\n"
    elif args.format == "csv":
        text = _csv([[r[k] for k in keys] for r in rows], keys)
    else:
        text = "".join("  ".join(f"{r[k]:>4}" if k == "n" else r[k] for k in keys) + "\n" for r in rows)
    _emit(text, args.output)
    return 0


# -- verify ------------------------------------------------------------------


def _from_verdict(suite: str, v) -> Check:
    return Check(suite, v.quantity, v.passed, v.as_dict())


def _run_method(method: str, n: int, precision: int, table) -> list[Check]:
    if method == "hermite":
        return [_from_verdict(method, hermite_oracle_d(j, precision, table)) for j in range(n + 1)]
    if method == "hermite-odd":
        return [_from_verdict(method, hermite_odd_verdict(k, precision)) for k in range(1, 2 * n + 2, 2)]
    if method == "derivs":
        return [_from_verdict(method, deriv_oracle(k, table, precision)) for k in range(n + 1)]
    if method == "power":
        return [_from_verdict(method, power_sum_oracle(k, table, precision)) for k in range(n + 1)]
    if method == "genfun":
        return [_from_verdict(method, genfun_oracle(t, n, table, precision)) for t in GENFUN_POINTS]
    if method == "sigma":
        return [_from_verdict(method, sigma_taylor_oracle(z, n, table, precision)) for z in SIGMA_POINTS]
    if method == "ode-exact":
        M = max(2 * n, 6)
        res = sigma_hat_ode_residual(table, M)
        bad = res.first_nonzero()
        info = {"truncation_order": M, "valid_order": res.valid_order,
                "first_nonzero": bad, "pass": bad is None}
        return [Check(method, f"rescaled ODE M={M}", bad is None, info)]
    if method == "ode-point":
        tol = mpmath.mpf(2) ** (-(precision - 96))
        out = []
        for x in THETA_ODE_POINTS:
            rel = relative_residual(*theta_ode_sides(x, precision), precision)
            out.append(Check(method, f"theta ODE x={x}", rel <= tol,
                             {"rel_residual": mpmath.nstr(rel, 6), "tolerance": mpmath.nstr(tol, 6)}))
        for z in SIGMA_ODE_POINTS:
            rel = relative_residual(*sigma_ode_sides(z, precision, table), precision)
            out.append(Check(method, f"sigma ODE z={z}", rel <= tol,
                             {"rel_residual": mpmath.nstr(rel, 6), "tolerance": mpmath.nstr(tol, 6)}))
        return out
    raise ValueError(method)


def run_checks(methods, n: int, precision: int, corrupt: int | None = None) -> list[Check]:
    # enough terms for the pointwise sigma ODE at |z| = 0.1 and 2^-(precision) accuracy
    size = max(n + 4, 2 * n, precision // 4)
    table = compute_d(size)
    if corrupt is not None:
        table = table.with_entry(corrupt, table.d[corrupt] + 1)
    checks = []
    for m in methods:
        checks.extend(_run_method(m, n, precision, table))
    return checks


def cmd_verify(args) -> int:
    methods = METHODS if args.method == "all" else (args.method,)
    if args.corrupt is not None and args.corrupt < 0:
        raise _Usage("--corrupt must be a nonnegative index")
    if args.corrupt is not None and args.corrupt > args.n:
        raise _Usage("--corrupt index must not exceed --n")
    checks = run_checks(methods, args.n, args.precision, args.corrupt)
    if args.format == "json":
        text = json.dumps([{"suite": c.suite, "label": c.label, **c.info, "pass": c.passed}
                           for c in checks], indent=1) + "\n"
    elif args.format == "csv":
        text = _csv([[c.suite, c.label, "PASS" if c.passed else "FAIL",
                      c.info.get("abs_error", c.info.get("rel_residual", "")),
                      c.info.get("tolerance", "")] for c in checks],
                    ["suite", "label", "result", "error", "tolerance"])
    else:
        lines = []
        for c in checks:
            err = c.info.get("abs_error", c.info.get("rel_residual", ""))
            tol = c.info.get("tolerance", "")
            extra = f"  err={err} tol={tol}" if err != "" else f"  {c.info}"
            lines.append(f"{'PASS' if c.passed else 'FAIL'}  {c.suite:<11} {c.label}{extra}")
        passed = sum(c.passed for c in checks)
        lines.append(f"{passed}/{len(checks)} checks passed")
        text = "\n".join(lines) + "\n"
    _emit(text, args.output)
    failed = [c for c in checks if not c.passed]
    if failed:
        print(f"first failing check: {failed[0].suite} {failed[0].label}", file=sys.stderr)
        return 1
    return 0


# -- congruence --------------------------------------------------------------


def _report(table, m: int) -> cg.CongruenceReport:
    res = cg.residue_stream(table, m)
    if len(res) < cg.MIN_WINDOW:
        return cg.CongruenceReport(m, tuple(res), cg.INCONCLUSIVE, window=len(res) - 1,
                                   notes=(f"window shorter than {cg.MIN_WINDOW} residues",))
    return cg.detect_pattern(res, m)


def cmd_congruence(args) -> int:
    moduli = list(args.modulus or [])
    if args.published:
        moduli = list(cg.PUBLISHED_MODULI) + [m for m in moduli if m not in cg.PUBLISHED_MODULI]
    if not moduli:
        raise _Usage("give --modulus M (repeatable) or --published")
    if any(m < 2 for m in moduli):
        raise _Usage("moduli must be at least 2")
    table = compute_d(args.count)
    reports = [_report(table, m) for m in moduli]
    verdicts = {}
    if args.published:
        for r in reports:
            if r.modulus in cg.PUBLISHED_MODULI:
                verdicts[r.modulus] = cg.matches_published(r)

    if args.format == "json":
        payload = []
        for r in reports:
            d = r.as_dict()
            if r.modulus in verdicts:
                d["matches_published"] = verdicts[r.modulus]
            payload.append(d)
        text = json.dumps(payload, indent=1) + "\n"
    elif args.format == "csv":
        text = _csv([[r.modulus, r.classification, r.period or "", r.last_nonzero if r.last_nonzero is not None else "",
                      r.window, " ".join(map(str, r.pattern)), " ".join(map(str, r.residues))] for r in reports],
                    ["modulus", "classification", "period", "last_nonzero", "window", "pattern", "residues"])
    else:
        lines = []
        for r in reports:
            head = f"mod {r.modulus}: {r.classification} (window n<={r.window})"
            if r.period:
                head += f", period {r.period} from n={r.period_start}"
            if r.classification == cg.FINITE:
                head += f", last nonzero at n={r.last_nonzero}"
            if r.modulus in verdicts:
                head += ", matches published pattern" if verdicts[r.modulus] else ", MISMATCH with published pattern"
            lines.append(head)
            if r.pattern:
                lines.append("  pattern:  " + ",".join(map(str, r.pattern)))
            lines.append("  residues: " + ",".join(map(str, r.residues)))
            lines.extend("  note: " + n for n in r.notes)
        text = "\n".join(lines) + "\n"
    _emit(text, args.output)
    return 0 if all(verdicts.values()) else 1


# -- constants ---------------------------------------------------------------


def cmd_constants(args) -> int:
    c = constants(args.precision)
    # decimal digits backed by the precision, less a few for rounding
    digits = max(10, int(args.precision * 0.30103) - 2)
    values = {
        "theta3(1)": c.theta3_1,
        "Gamma(1/4)": c.gamma_quarter,
        "Omega": c.omega,
        "Phi": c.phi,
    }
    bound = f"2^-{args.precision - 8}"
    with mpmath.workprec(args.precision + 32):
        strs = {k: mpmath.nstr(v, digits, strip_zeros=False) for k, v in values.items()}
    if args.format == "json":
        text = json.dumps({"precision_bits": args.precision, "digits": digits,
                           "relative_error_bound": bound, "values": strs}, indent=1) + "\n"
    elif args.format == "csv":
        text = _csv([[k, v] for k, v in strs.items()], ["name", "value"])
    else:
        text = "".join(f"{k:<11} = {v}\n" for k, v in strs.items())
        text += f"relative error < {bound} ({digits} significant digits shown)\n"
    _emit(text, args.output)
    return 0


# -- ode ---------------------------------------------------------------------


def cmd_ode(args) -> int:
    M = args.order if args.order is not None else 2 * args.count
    if M > 2 * args.count:
        raise _Usage(f"--order {M} needs --count >= {(M + 1) // 2}")
    if M < 6:
        raise _Usage("--order must be at least 6")
    res = sigma_hat_ode_residual(compute_d(args.count), M)
    bad = res.first_nonzero()
    if args.format == "json":
        text = json.dumps({"truncation_order": M, "valid_order": res.valid_order,
                           "residual_coeffs": [str(c) for c in res.residual_coeffs],
                           "zero": bad is None}, indent=1) + "\n"
    else:
        text = (f"rescaled ODE residual, truncation order {M}, checked through z^{res.valid_order}: "
                + ("identically zero" if bad is None else f"first nonzero coefficient at z^{bad}") + "\n")
    _emit(text, args.output)
    return 0 if bad is None else 1


# -- parser ------------------------------------------------------------------


class _Usage(Exception):
    pass


def _nonneg(s: str) -> int:
    v = int(s)
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def _precision(s: str) -> int:
    v = int(s)
    if v < MIN_PRECISION:
        raise argparse.ArgumentTypeError(f"must be at least {MIN_PRECISION}")
    return v


def build_parser() -> argparse.ArgumentParser:
    prec = _default_precision()
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text",
                        help="output format (default: text)")
    common.add_argument("--output", "-o", help="write to this file instead of stdout")
    common.add_argument("--precision", type=_precision, default=prec,
                        help=f"working precision in bits (default: {prec}; env {PRECISION_ENV})")

    p = argparse.ArgumentParser(prog="thetaseq", description="Taylor coefficients d(n) of the centered theta constant.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("dn", parents=[common], help="table of d(n)")
    s.add_argument("--count", type=_nonneg, default=DEFAULT_COUNT, help="largest n (default: 20)")
    s.add_argument("--aux", action="store_true", help="also print u(n) and v(n)")
    s.set_defaults(func=cmd_dn)

    s = sub.add_parser("verify", parents=[common], help="run numerical and exact cross-checks")
    s.add_argument("--method", choices=METHODS + ("all",), default="all")
    s.add_argument("--n", type=_nonneg, default=DEFAULT_COUNT, help="largest index checked (default: 20)")
    s.add_argument("--corrupt", type=int, default=None, help=argparse.SUPPRESS)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("congruence", parents=[common], help="residues of d(n) modulo m")
    s.add_argument("--modulus", type=int, action="append", help="modulus (repeatable)")
    s.add_argument("--published", "--paper", action="store_true", help="check the six published moduli 3,5,7,11,13,17")
    s.add_argument("--count", type=_nonneg, default=cg.DEFAULT_WINDOW,
                   help=f"largest n in the window (default: {cg.DEFAULT_WINDOW})")
    s.set_defaults(func=cmd_congruence)

    s = sub.add_parser("constants", parents=[common], help="theta_3(1), Gamma(1/4), Omega, Phi")
    s.set_defaults(func=cmd_constants)

    s = sub.add_parser("ode", parents=[common], help="exact residual of the rescaled sigma ODE")
    s.add_argument("--count", type=_nonneg, default=DEFAULT_COUNT, help="use d(0..count) (default: 20)")
    s.add_argument("--order", type=int, default=None, help="truncation order M (default: 2*count)")
    s.set_defaults(func=cmd_ode)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _Usage as e:
        parser.error(str(e))  # exits with status 2


if __name__ == "__main__":
    sys.exit(main())
