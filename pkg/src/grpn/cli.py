"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import sys
from fractions import Fraction

from . import formulas
from .group_core import BudgetExceeded, GroupError, check_params, format_element, is_member, parse_element
from .involutions import _enumerate_involutions, count_involutions, enumerate_involutions
from .oracle import CLAIMS, DEFAULT_FILTER_LIMIT, brute_distribution, verify_all
from .polyalg import TriPoly, to_json_obj, to_text
from .stats import stat_profile

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


class UsageError(Exception):
    pass


def _dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _dump_csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _num(x) -> str:
    return str(x) if isinstance(x, (int, Fraction)) else repr(x)


def _check_rpn(args) -> None:
    try:
        check_params(args.r, args.p, args.n)
    except GroupError as exc:
        raise UsageError(str(exc)) from None


def cmd_stats(args) -> str:
    try:
        g = parse_element(args.element, args.r, args.n)
    except GroupError as exc:
        raise UsageError(str(exc)) from None
    prof = stat_profile(g)
    record = {"element": format_element(g), "r": args.r, "n": args.n, **prof.as_dict()}
    if args.p is not None:
        try:
            record["member"] = is_member(g, args.p)
        except GroupError as exc:
            raise UsageError(str(exc)) from None
    if args.format == "json":
        return _dump_json(record)
    if args.format == "csv":
        header = ["element", "r", "n", "fix", "exc_a", "csum", "exc_clr", "member"]
        member = record.get("member")
        row = [record[k] for k in header[:-1]] + ["" if member is None else str(member).lower()]
        return _dump_csv(header, [row])
    lines = [f"{k}={record[k]}" for k in ("fix", "exc_a", "csum", "exc_clr")]
    if "member" in record:
        lines.append(f"member={str(record['member']).lower()}")
    return "\n".join(lines) + "\n"


POLY_METHODS = {
    "recurrence": formulas.f_poly,
    "explicit": formulas.f_explicit,
    "brute": lambda r, p, n: brute_distribution(r, p, n, "generator"),
    "classic-recurrence": formulas.f_classic_recurrence,
    "classic-explicit": formulas.f_classic_explicit,
}


def _render_poly(poly: TriPoly, fmt: str, meta: dict) -> str:
    if fmt == "json":
        return _dump_json({**meta, **to_json_obj(poly)})
    if fmt == "csv":
        rows = [[a, b, c, x] for (a, b, c), x in poly.terms()]
        return _dump_csv(["u", "v", "w", "coeff"], rows)
    return to_text(poly) + "\n"


def cmd_poly(args) -> str:
    _check_rpn(args)
    poly = POLY_METHODS[args.method](args.r, args.p, args.n)
    meta = {"r": args.r, "p": args.p, "n": args.n, "method": args.method}
    return _render_poly(poly, args.format, meta)


def cmd_dist(args) -> str:
    _check_rpn(args)
    meta = {"r": args.r, "p": args.p, "n": args.n, "stat": args.stat}
    if args.stat == "excclr":
        dist = formulas.excclr_distribution(args.r, args.p, args.n)
        rows = [[m, dist[m]] for m in sorted(dist)]
        header = ["m", "count"]
    else:
        table = formulas.fix_exca_table(args.r, args.p, args.n)
        rows = [[f, l, table[f, l]] for f, l in sorted(table)]
        header = ["fix", "exc_a", "count"]
    if args.format == "json":
        records = [dict(zip(header[:-1], row[:-1]), count=str(row[-1])) for row in rows]
        return _dump_json({**meta, "rows": records})
    if args.format == "csv":
        return _dump_csv(header, rows)
    return "".join(" ".join(str(x) for x in row) + "\n" for row in rows)


def cmd_count(args) -> str:
    _check_rpn(args)
    r, p, n = args.r, args.p, args.n
    record: dict = {"r": r, "p": p, "n": n, "case": formulas.classify(r, p).value}
    if args.m is not None and (args.fix is not None or args.exca is not None):
        raise UsageError("--m cannot be combined with --fix/--exca")
    if (args.fix is None) != (args.exca is None):
        raise UsageError("--fix and --exca must be given together")
    if args.m is not None:
        extraction = formulas.excclr_distribution(r, p, n).get(args.m, 0)
        closed = None
        if args.m % r == 0:
            closed = formulas.count_excclr_closed(r, p, n, args.m, args.variant)
        record.update(query={"m": args.m}, variant=args.variant)
    elif args.fix is not None:
        table = formulas.fix_exca_table(r, p, n)
        extraction = table.get((args.fix, args.exca), 0)
        closed = formulas.count_fix_exca_closed(r, p, n, args.fix, args.exca, args.variant)
        record.update(query={"fix": args.fix, "exc_a": args.exca}, variant=args.variant)
    else:
        extraction = count_involutions(r, p, n)
        closed = None
        record.update(query={})
    record["extraction"] = str(extraction)
    record["closed_form"] = None if closed is None else _num(closed)
    record["agree"] = None if closed is None else closed == extraction
    if args.format == "json":
        return _dump_json(record)
    if args.format == "csv":
        agree = "" if record["agree"] is None else str(record["agree"]).lower()
        row = [r, p, n, args.m if args.m is not None else "", "" if args.fix is None else args.fix,
               "" if args.exca is None else args.exca, extraction, record["closed_form"] or "", agree]
        return _dump_csv(["r", "p", "n", "m", "fix", "exc_a", "extraction", "closed_form", "agree"], [row])
    if closed is None:
        if args.m is not None:
            return f"extraction={extraction}\nclosed_form=n/a (m is not a multiple of r)\n"
        return f"{extraction}\n"
    return f"extraction={extraction}\nclosed_form={_num(closed)}\nagree={str(record['agree']).lower()}\n"


def cmd_enumerate(args) -> str:
    _check_rpn(args)
    if args.limit is not None:
        if args.limit < 0:
            raise UsageError("--limit must be nonnegative")
        stream = itertools.islice(_enumerate_involutions(args.r, args.p, args.n), args.limit)
    else:
        stream = enumerate_involutions(args.r, args.p, args.n)
    elements = [format_element(g) for g in stream]
    if args.format == "json":
        return _dump_json({"r": args.r, "p": args.p, "n": args.n, "elements": elements})
    if args.format == "csv":
        return _dump_csv(["element"], [[e] for e in elements])
    return "".join(e + "\n" for e in elements)


def cmd_verify(args) -> tuple[str, int]:
    claims = None
    if args.claims:
        claims = [c.strip() for c in args.claims.split(",") if c.strip()]
        unknown = sorted(set(claims) - set(CLAIMS))
        if unknown:
            raise UsageError(f"unknown claims: {', '.join(unknown)}")
    if args.r_max < 0 or args.n_max < 0:
        raise UsageError("--r-max and --n-max must be nonnegative")
    report = verify_all(
        args.r_max, args.n_max, claims=claims, filter_limit=args.filter_limit, jobs=args.jobs
    )
    code = EXIT_OK if report.ok else EXIT_VERIFY_FAILED
    data = report.as_dict(timings=args.timings)
    if args.format == "json":
        return _dump_json(data), code
    if args.format == "csv":
        rows = [
            [c["claim"], c["params"]["r"], c["params"]["p"], c["params"]["n"], c["status"],
             "" if c["witness"] is None else json.dumps(c["witness"], sort_keys=True)]
            for c in data["checks"]
        ]
        return _dump_csv(["claim", "r", "p", "n", "status", "witness"], rows), code
    lines = []
    for c in report.checks:
        prm = ",".join(f"{k}={v}" for k, v in c.params.items())
        line = f"{c.status.upper():8} {c.claim} [{prm}]"
        if c.witness is not None:
            line += " witness=" + json.dumps(c.witness, sort_keys=True)
        if c.note:
            line += f" ({c.note})"
        lines.append(line)
    s = data["summary"]
    lines.append(
        f"cells={len(report.grid)} pass={s['pass']} fail={s['fail']} "
        f"finding={s['finding']} skipped={s['skipped']} ok={str(report.ok).lower()}"
    )
    return "\n".join(lines) + "\n", code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="grpn",
        description="Involution statistics in the complex reflection groups G(r,p,n).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def fmt(sp):
        sp.add_argument("--format", choices=("plain", "json", "csv"), default="plain")

    def rpn(sp, with_p=True):
        sp.add_argument("--r", type=int, required=True, help="number of colors")
        if with_p:
            sp.add_argument("--p", type=int, default=1, help="divisor of r (default 1)")
        sp.add_argument("--n", type=int, required=True, help="number of digits")

    sp = sub.add_parser("stats", help="statistics of one element")
    sp.add_argument("element", help='window notation, e.g. "2^1 1 4^3 3^2"')
    rpn(sp, with_p=False)
    sp.add_argument("--p", type=int, default=None, help="also report membership in G(r,p,n)")
    fmt(sp)

    sp = sub.add_parser("poly", help="distribution polynomial f_{r,p,n}(u,v,w)")
    rpn(sp)
    sp.add_argument("--method", choices=tuple(POLY_METHODS), default="recurrence")
    fmt(sp)

    sp = sub.add_parser("dist", help="distribution table")
    rpn(sp)
    sp.add_argument("--stat", choices=("excclr", "fix-exca"), default="excclr")
    fmt(sp)

    sp = sub.add_parser("count", help="involution counts, closed forms vs extraction")
    rpn(sp)
    sp.add_argument("--m", type=int, default=None, help="exc^Clr value")
    sp.add_argument("--fix", type=int, default=None, help="number of absolute fixed points")
    sp.add_argument("--exca", type=int, default=None, help="exc_A value")
    sp.add_argument("--variant", choices=formulas.VARIANTS, default="classic")
    fmt(sp)

    sp = sub.add_parser("enumerate", help="list involutions of G(r,p,n)")
    rpn(sp)
    sp.add_argument("--limit", type=int, default=None)
    fmt(sp)

    sp = sub.add_parser("verify", help="run the brute-force verification grid")
    sp.add_argument("--r-max", type=int, required=True)
    sp.add_argument("--n-max", type=int, default=4)
    sp.add_argument("--claims", default=None, help="comma-separated claim ids")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--filter-limit", type=int, default=DEFAULT_FILTER_LIMIT,
                    help="largest |G(r,n)| walked element by element")
    sp.add_argument("--timings", action="store_true", help="include durations (output no longer byte-stable)")
    fmt(sp)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            out, code = cmd_verify(args)
        else:
            handler = {
                "stats": cmd_stats,
                "poly": cmd_poly,
                "dist": cmd_dist,
                "count": cmd_count,
                "enumerate": cmd_enumerate,
            }[args.command]
            out, code = handler(args), EXIT_OK
    except UsageError as exc:
        print(f"grpn {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"grpn {args.command}: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except GroupError as exc:
        print(f"grpn {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
