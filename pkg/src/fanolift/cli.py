"""Command-line entry point: ``fanolift {lift,correspond,verify,smalldeg,noether}``.

Exit codes: 0 success, 1 operational error (bad input, degenerate data),
2 mathematically negative outcome (no certified pencil, a failing check).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from .corr7 import SeptupleConfig, quartet, verify_correspondence
from .errors import FanoliftError
from .exact.poly import UniPoly, fraction_to_str, parse_fraction
from .fano import FANO_PLANE, all_fano_structures
from .pencil import lift, noether_decompose, parse_poly
from .smalldeg import d4_pencil, d5_pencil, d6_condition, d6_involution_determinant, v4_factor, v4_q
from .suites import FAULTS, run_suites

EXIT_OK, EXIT_ERROR, EXIT_NEGATIVE = 0, 1, 2
ENV_PREFIX = "FANOLIFT_"
DEFAULT_STRUCTURE = [s.key() for s in all_fano_structures()].index(FANO_PLANE.key())


def _env(name: str, default, cast=str):
    raw = os.environ.get(ENV_PREFIX + name)
    return default if raw is None else cast(raw)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"usage error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--digits", type=int, default=_env("DIGITS", None, int),
                        help="working precision in decimal digits (env FANOLIFT_DIGITS)")
    common.add_argument("--seed", type=int, default=_env("SEED", 0, int),
                        help="seed for randomized suites (env FANOLIFT_SEED)")
    common.add_argument("--denom-bound", type=int, default=_env("DENOM_BOUND", None, int),
                        help="denominator bound for rational reconstruction (env FANOLIFT_DENOM_BOUND)")
    common.add_argument("--format", choices=("json", "text"), default=_env("FORMAT", "json"),
                        help="output format (env FANOLIFT_FORMAT)")
    common.add_argument("--input", help="JSON file, '-' for stdin, or an inline JSON document")

    p = _Parser(prog="fanolift", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("lift", parents=[common], help="find and certify Q for a septic P")
    s.add_argument("coeffs", nargs="*", help="ascending coefficients of P")

    s = sub.add_parser("correspond", parents=[common], help="correspondence quartet of 7 values")
    s.add_argument("values", nargs="*", help="seven distinct rationals")
    s.add_argument("--structure", type=int, default=None, help=f"Fano structure index 0..29 (default {DEFAULT_STRUCTURE})")

    s = sub.add_parser("verify", parents=[common], help="run the seeded exact identity suites")
    s.add_argument("--trials", type=int, default=_env("TRIALS", 20, int))
    s.add_argument("--inject-fault", choices=FAULTS, default=None, help="corrupt an object to test failure reporting")

    s = sub.add_parser("smalldeg", parents=[common], help="V4, D4, D5 pencils and the hexagon condition")
    s.add_argument("kind", choices=("v4", "d4", "d5", "d6"))
    s.add_argument("values", nargs="*", help="roots x_0..x_{n-1}")

    s = sub.add_parser("noether", parents=[common], help="decompose P = R - t Q1")
    s.add_argument("--P", dest="P", help="comma-separated ascending coefficients of P")
    s.add_argument("--Q", dest="Q", help="comma-separated ascending coefficients of Q (lifted if omitted)")
    return p


def _read_input(source: str | None) -> dict | None:
    if source is None:
        return None
    if source == "-":
        return json.load(sys.stdin)
    if source.lstrip().startswith(("{", "[")):
        return json.loads(source)
    with open(source) as fh:
        return json.load(fh)


def _emit(doc: dict, fmt: str, text: str) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


def _coeff_list(cli_values: Sequence[str], doc: dict | None, key: str) -> list:
    if cli_values:
        return list(cli_values)
    if doc is None:
        raise FanoliftError(f"no {key} given (positional arguments or --input)")
    data = doc.get(key) if isinstance(doc, dict) else doc
    if data is None:
        raise FanoliftError(f"input has no {key!r} field")
    return [str(v) for v in data]


def cmd_lift(args) -> int:
    doc = _read_input(args.input)
    P = parse_poly(_coeff_list(args.coeffs, doc, "P"))
    digits = args.digits or (doc.get("digits") if isinstance(doc, dict) else None) or 200
    rep = lift(P, digits=int(digits), denominator_bound=args.denom_bound)
    out = rep.to_json()
    lines = [f"status: {rep.status}"]
    lines += [f"Q = {c['Q']} from structures {c['structures']}" for c in out["certified_classes"]]
    _emit(out, args.format, "\n".join(lines))
    return EXIT_OK if rep.certified else EXIT_NEGATIVE


def cmd_correspond(args) -> int:
    doc = _read_input(args.input)
    values = _coeff_list(args.values, doc, "x")
    index = args.structure
    if index is None:
        index = int((doc or {}).get("structure", DEFAULT_STRUCTURE)) if isinstance(doc, dict) else DEFAULT_STRUCTURE
    if not 0 <= index < 30:
        raise _UsageError(f"structure index {index} outside 0..29")
    if len(values) != 7:
        raise _UsageError(f"expected 7 values, got {len(values)}")
    cfg = SeptupleConfig.from_index([parse_fraction(v) for v in values], index)
    q = quartet(cfg)
    rep = verify_correspondence(cfg, q)
    out = q.to_json(rep.to_json())
    out["structure_index"] = index
    out["closed_form_ratio"] = fraction_to_str(q.closed_form_ratio) if q.closed_form_ratio is not None else None
    out["all_required_pass"] = rep.all_pass
    text = "\n".join(f"{'PASS' if c.passed else 'FAIL'} {c.name}{'' if c.required else ' (informational)'}"
                     for c in rep.checks)
    _emit(out, args.format, f"Q = {q.Q.to_json()}\n{text}")
    return EXIT_OK if rep.all_pass else EXIT_NEGATIVE


def cmd_verify(args) -> int:
    if args.trials < 0:
        raise _UsageError("--trials must be non-negative")
    res = run_suites(args.seed, args.trials, args.inject_fault)
    ok = all(r.ok for r in res.values())
    out = {"seed": args.seed, "trials": args.trials, "fault": args.inject_fault, "all_pass": ok,
           "suites": {k: v.to_json() for k, v in res.items()}}
    lines = []
    for k, v in res.items():
        failed = sorted({c for f in v.failures for c in f["checks"]})
        lines.append(f"{'PASS' if v.ok else 'FAIL'} {k}: {v.passed}/{args.trials}"
                     + (f" failing {', '.join(failed)}" if failed else ""))
    _emit(out, args.format, "\n".join(lines))
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_smalldeg(args) -> int:
    doc = _read_input(args.input)
    values = [parse_fraction(v) for v in _coeff_list(args.values, doc, "x")]
    kind = args.kind
    if kind == "v4":
        P = UniPoly.from_roots(values, "X") if len(values) == 4 else None
        if P is None:
            raise _UsageError("v4 needs 4 roots")
        r = v4_q(P)
        f = v4_factor(P, r.Q, roots=values)
        out = {"kind": kind, "P": P.to_json(), "Q": r.Q.to_json(),
               "derivative_square_remainder": r.derivative_square_remainder.to_json(),
               "ratio_mod_P": fraction_to_str(r.ratio),
               "involutions": [h.to_json() for h in f.involutions],
               "factors": [F.to_json() for F in f.factors], "scale": fraction_to_str(f.scale)}
        text = f"Q = {out['Q']}\n" + "\n".join(f"F{i + 1} = {F}" for i, F in enumerate(out["factors"]))
    elif kind == "d4":
        r = d4_pencil(values)
        out = {"kind": kind, "P": UniPoly.from_roots(values, "X").to_json(), "u": fraction_to_str(r.u),
               "q": r.q.to_json(), "Q1": r.Q1.to_json(), "Q2": r.Q2.to_json(), "involution": r.involution.to_json()}
        text = f"Q1 = {out['Q1']}\nQ2 = {out['Q2']}"
    elif kind == "d5":
        r = d5_pencil(values)
        out = {"kind": kind, "P": UniPoly.from_roots(values, "X").to_json(), "Q": r.Q.to_json(),
               "F": r.F.to_json(), "G": r.G.to_json(), "scale": fraction_to_str(r.scale)}
        text = f"Q = {out['Q']}\nF = {out['F']}\nG = {out['G']}"
    else:
        cond, det = d6_condition(values), d6_involution_determinant(values)
        out = {"kind": kind, "condition": fraction_to_str(cond), "involution_determinant": fraction_to_str(det),
               "involution_exists": det == 0}
        text = f"condition = {out['condition']}"
    _emit(out, args.format, text)
    return EXIT_OK


def cmd_noether(args) -> int:
    doc = _read_input(args.input) or {}
    P_raw = args.P.split(",") if args.P else doc.get("P")
    if P_raw is None:
        raise _UsageError("noether needs --P or an input document with 'P'")
    P = parse_poly([str(c) for c in P_raw]).monic()
    Q_raw = args.Q.split(",") if args.Q else doc.get("Q")
    if Q_raw is not None:
        Q = parse_poly([str(c) for c in Q_raw])
    else:
        rep = lift(P, digits=args.digits or 200, denominator_bound=args.denom_bound)
        if not rep.certified:
            _emit({"status": rep.status}, args.format, f"status: {rep.status}")
            return EXIT_NEGATIVE
        Q = rep.certified[0].Q
    d = noether_decompose(P, Q)
    out = {"P": P.to_json(), "Q": Q.to_json(), **d.to_json()}
    _emit(out, args.format, f"R = {out['R']}\nQ1 = {out['Q1']}\nt = {out['t']}")
    return EXIT_OK


class _UsageError(Exception):
    pass


COMMANDS = {"lift": cmd_lift, "correspond": cmd_correspond, "verify": cmd_verify,
            "smalldeg": cmd_smalldeg, "noether": cmd_noether}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (FanoliftError, ValueError, ZeroDivisionError, OSError, json.JSONDecodeError) as exc:
        guard = getattr(exc, "guard", None)
        print(f"error: {type(exc).__name__}: {exc}" + (f" [guard={guard}]" if guard else ""), file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
