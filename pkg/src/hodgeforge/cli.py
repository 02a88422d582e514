"""Command-line front end.

    hodgeforge verify --n 2,3 [--format json|text] [--jobs K]
    hodgeforge verify --check slope_polynomial --params n=2 [--format ...]
    hodgeforge eval --space D --n 2 "push_p(h^5)"
    hodgeforge decompose --n 2 --ext 2
    hodgeforge report --format text [--input report.json]

Exit status: 0 when everything passes, 1 when some check fails, 2 on any
error (bad parameters, parse errors, unsupported operations).  Reports go to
stdout, diagnostics to stderr.  HODGE_FORGE_JOBS caps the verification
worker count when --jobs is not given.
"""

import argparse
import json
import sys

from . import characters, dsl, verify
from .errors import EngineError


def emit_report(reports, fmt):
    """Render reports as JSON (exact schema) or aligned-column text."""
    if fmt == "json":
        return json.dumps([r.to_dict() for r in reports], indent=2)
    rows = [("check", "params", "status", "ms")]
    for r in reports:
        params = ",".join(f"{k}={v}" for k, v in r.params.items())
        rows.append((r.check, params, r.status, str(r.elapsed_ms)))
    widths = [max(len(row[i]) for row in rows) for i in range(4)]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip()
             for row in rows]
    for r in reports:
        if r.status != "pass":
            lines.append(f"{r.status.upper()} {r.check}:")
            lines.append(f"  lhs: {r.lhs}")
            lines.append(f"  rhs: {r.rhs}")
    return "\n".join(lines)


def exit_code(reports):
    if any(r.status == "error" for r in reports):
        return 2
    if any(r.status != "pass" for r in reports):
        return 1
    return 0


def _parse_params(text):
    params = {}
    if not text:
        return params
    for piece in text.split(","):
        piece = piece.strip()
        if not piece:
            continue
        if "=" not in piece:
            raise ValueError(f"bad parameter {piece!r}; expected key=value")
        key, value = piece.split("=", 1)
        params[key.strip()] = int(value)
    return params


def _cmd_verify(args):
    jobs = args.jobs if args.jobs else verify.default_jobs()
    if args.check:
        params = _parse_params(args.params)
        reports = [verify.run_check(args.check, params)]
    else:
        if args.n is None:
            raise ValueError("verify needs --n or --check")
        n_list = [int(x) for x in args.n.split(",") if x.strip()]
        reports = verify.run_all(n_list, jobs=jobs)
    print(emit_report(reports, args.format))
    return exit_code(reports)


def _cmd_eval(args):
    print(dsl.evaluate_to_string(args.expr, args.space, args.n))
    return 0


def _cmd_decompose(args):
    if (args.ext is None) == (args.sym is None):
        raise ValueError("decompose needs exactly one of --ext or --sym")
    if args.ext is not None:
        chi = characters.ext_character(args.n, args.ext)
    else:
        chi = characters.sym_character(args.n, args.sym)
    decomp = characters.decompose(args.n, chi)
    print(json.dumps(characters.decomposition_json(decomp), indent=2))
    return 0


def _cmd_report(args):
    if args.input and args.input != "-":
        with open(args.input, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    else:
        data = json.load(sys.stdin)
    reports = [verify.CheckReport(d["check"], d["params"], d["status"],
                                  d["lhs"], d["rhs"], d.get("elapsed_ms", 0))
               for d in data]
    print(emit_report(reports, args.format))
    return exit_code(reports)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="hodgeforge",
        description="exact verification of characteristic-class identities "
                    "on projectivized tangent bundles and diagonal blow-ups")
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run named checks")
    p_verify.add_argument("--n", help="comma-separated list of n values")
    p_verify.add_argument("--check", help="run a single check by name")
    p_verify.add_argument("--params", help="key=value[,key=value] for --check")
    p_verify.add_argument("--format", choices=("json", "text"),
                          default="text")
    p_verify.add_argument("--jobs", type=int, default=0,
                          help="worker count (default: HODGE_FORGE_JOBS or 1)")

    p_eval = sub.add_parser("eval", help="evaluate an expression")
    p_eval.add_argument("--space", choices=("X", "XX", "D", "Y"),
                        required=True)
    p_eval.add_argument("--n", type=int, required=True)
    p_eval.add_argument("expr")

    p_dec = sub.add_parser("decompose",
                           help="decompose a power of the standard "
                                "symplectic representation")
    p_dec.add_argument("--n", type=int, required=True)
    p_dec.add_argument("--ext", type=int, help="exterior power")
    p_dec.add_argument("--sym", type=int, help="symmetric power")

    p_rep = sub.add_parser("report", help="re-render a saved JSON report")
    p_rep.add_argument("--format", choices=("json", "text"), default="text")
    p_rep.add_argument("--input", help="JSON file ('-' for stdin)")

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {"verify": _cmd_verify, "eval": _cmd_eval,
                "decompose": _cmd_decompose, "report": _cmd_report}
    try:
        return handlers[args.command](args)
    except (EngineError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"hodgeforge: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
