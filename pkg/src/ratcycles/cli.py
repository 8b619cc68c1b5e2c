"""Command-line front end.

Exit codes: 0 success, 1 internal invariant violation, 2 domain validation
failure, 3 spec-file parse failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .composition import Composition, parse_spec
from .cycles import solve_cycle
from .enumeration import CSV_HEADER, enumerate_words
from .errors import BadArgument, CycleError
from .exact import rat_to_text
from .integrality import canonical_witness, certify, decompose_m, remark_edge, search_witnesses, theorem_combination
from .padic import expand, pattern_check, render_csv, render_table, digit_char


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _csv(rows) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def load_composition(args) -> Composition:
    if args.spec_inline is not None:
        return parse_spec(args.spec_inline.replace("\\n", "\n"))
    path = args.spec if args.spec is not None else args.spec_json
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    if args.spec_json is not None:
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise BadArgument(f"invalid composition JSON: {exc}") from exc
        return Composition.from_json(obj)
    return parse_spec(text)


def cmd_solve(args) -> str:
    c = load_composition(args)
    sol = solve_cycle(c)
    if args.format == "json":
        return _dump_json(sol.to_json(c))
    if args.format == "csv":
        rows = [["kind", "index", "value"]]
        rows += [["U", t, rat_to_text(u)] for t, u in enumerate(sol.U)]
        rows += [["x", i, rat_to_text(x)] for i, x in enumerate(sol.x)]
        return _csv(rows)
    lines = [f"q = {c.q}", f"n = {c.n}", f"prod p = {c.prod_p}", f"D = {sol.D}"]
    lines += [f"U_{t} = {rat_to_text(u)}" for t, u in enumerate(sol.U)]
    lines += [f"x_{i} = {rat_to_text(x)}" for i, x in enumerate(sol.x)]
    lines.append(f"common denominator = {sol.common_den}")
    return "\n".join(lines) + "\n"


def cmd_witness(args) -> str:
    c = load_composition(args)
    if args.canonical is not None:
        found = [canonical_witness(c, args.canonical)]
    else:
        found = search_witnesses(c, args.alpha_bound, args.beta_bound)
    if args.format == "json":
        return _dump_json([w.to_json(c) for w in found])
    if args.format == "csv":
        rows = [["alpha", "beta", "b", "D", "value"]]
        for w in found:
            cert = w.to_json(c)["certificate"]
            rows.append([w.alpha, w.beta, w.b, cert["D"], cert["value"]])
        return _csv(rows)
    if not found:
        return "no witnesses in window\n"
    return "".join(f"({w.alpha}, {w.beta}, {w.b})\n" for w in found)


def cmd_check(args) -> str:
    c = load_composition(args)
    alpha, beta, b = args.alpha, args.beta, args.b
    rows = []
    if b in (0, c.n):
        for i, v in enumerate(remark_edge(c, alpha, beta, b)):
            rows.append({"i": i, "combination": str(v)})
    else:
        w = certify(c, alpha, beta, b)
        sol = solve_cycle(c)
        for i in range(c.n):
            row = {"i": i, "combination": str(theorem_combination(c, w, i, sol))}
            if args.decompose and i + b < c.n:
                row["M"] = [str(m) for m in decompose_m(c, w, i, sol).M]
            rows.append(row)
    if args.format == "json":
        return _dump_json(rows)
    if args.format == "csv":
        return _csv([["i", "combination", "M"]] +
                    [[r["i"], r["combination"], " ".join(r.get("M", []))] for r in rows])
    lines = [f"alpha = {alpha}, beta = {beta}, b = {b}"]
    for r in rows:
        line = f"i={r['i']}: {r['combination']}"
        if "M" in r:
            line += f"   M = [{', '.join(r['M'])}]"
        lines.append(line)
    return "\n".join(lines) + "\n"


def _parse_pattern(text: str) -> tuple[int, int, int]:
    try:
        l, i, b = (int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected l,i,b, got {text!r}") from None
    return l, i, b


def cmd_padic(args) -> str:
    c = load_composition(args)
    if args.pattern is not None:
        rep = pattern_check(c, *args.pattern)
        if args.format == "json":
            return _dump_json(rep.to_json())
        return (f"l = {rep.l}, i = {rep.i}, b = {rep.b}, sigma = {rep.sigma_value}\n"
                f"difference = {rep.difference}, {rep.agreement_mode}\n")
    if args.format == "csv":
        return render_csv(c, args.base, args.digits)
    if args.format == "json":
        base = args.base if args.base is not None else c.two_type_base()
        sol = solve_cycle(c)
        out = []
        for i, x in enumerate(sol.x):
            e = expand(x, base)
            out.append({
                "index": i,
                "value": rat_to_text(x),
                "base": base,
                "preperiod": [digit_char(d, base) for d in e.preperiod],
                "period": [digit_char(d, base) for d in e.period],
            })
        return _dump_json(out)
    return render_table(c, args.base, args.digits)


def cmd_enumerate(args) -> str:
    records = enumerate_words(args.q, args.p, args.k_s, args.k_t, args.max_len)
    if args.integers_only:
        records = (r for r in records if r.is_integer)
    if args.dedup_rotations:
        records = (r for r in records if r.word == r.rotation_class)
    records = list(records)
    if args.format == "json":
        return _dump_json([r.to_json() for r in records])
    if args.format == "csv":
        return _csv([CSV_HEADER] + [r.to_row() for r in records])
    table = [CSV_HEADER[:4] + ["x0", "integer", "rotation_class"]]
    table += [[r.word, r.n, r.m, r.D, rat_to_text(r.x0), "yes" if r.is_integer else "no",
               r.rotation_class] for r in records]
    widths = [max(len(str(row[j])) for row in table) for j in range(len(table[0]))]
    return "".join(
        "  ".join(str(v).rjust(w) for v, w in zip(row, widths)).rstrip() + "\n" for row in table
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ratcycles", description="Rational cycles of generalized 3x+1 compositions."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json", "csv"), default="text")

    spec = argparse.ArgumentParser(add_help=False)
    src = spec.add_mutually_exclusive_group(required=True)
    src.add_argument("--spec", metavar="PATH", help="spec file ('-' for stdin)")
    src.add_argument("--spec-inline", metavar="TEXT", help="spec text; '\\n' separates lines")
    src.add_argument("--spec-json", metavar="PATH", help="composition JSON, e.g. solve output")

    p = sub.add_parser("solve", parents=[spec, fmt], help="discriminant, U_i and cycle terms")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("witness", parents=[spec, fmt], help="search divisibility witnesses")
    p.add_argument("--alpha-bound", type=int, default=5)
    p.add_argument("--beta-bound", type=int, default=5)
    p.add_argument("--canonical", type=int, metavar="K", help="print the totient witness for K")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("check", parents=[spec, fmt], help="evaluate integer combinations")
    p.add_argument("--alpha", type=int, required=True)
    p.add_argument("--beta", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--decompose", action="store_true", help="also print the M_j terms")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("padic", parents=[spec, fmt], help="base-p digit table of the cycle")
    p.add_argument("--base", type=int, default=None)
    p.add_argument("--digits", type=int, default=10)
    p.add_argument("--pattern", type=_parse_pattern, metavar="L,I,B")
    p.set_defaults(func=cmd_padic)

    p = sub.add_parser("enumerate", parents=[fmt], help="solve every S/T word up to a length")
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--p", type=int, default=3)
    p.add_argument("--k-s", type=int, default=1)
    p.add_argument("--k-t", type=int, default=0)
    p.add_argument("--max-len", type=int, default=11)
    p.add_argument("--integers-only", action="store_true")
    p.add_argument("--dedup-rotations", action="store_true")
    p.set_defaults(func=cmd_enumerate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out = args.func(args)
    except CycleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # pragma: no cover - last-resort guard
        print(f"internal error: {exc!r}", file=sys.stderr)
        return 1
    sys.stdout.write(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
