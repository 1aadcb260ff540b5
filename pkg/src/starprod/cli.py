"""``starprod`` command line.

Exit codes: 0 ok, 1 semantic failure (violation or mismatch), 2 bad input,
3 budget exhausted.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import random
import sys
import time
from pathlib import Path

from .coloring import Coloring, coloring_from_json, verify
from .constructions import (Factor, ProductSpec, chi_formula, construct, construct_pattern, parse_spec,
                            table_rows)
from .derived import derived_dir, dumps, regenerate
from .errors import BudgetExceeded, LengthMismatch, ParseError, StarprodError, UnsupportedSpec
from .graph import Graph, read_graph
from .patterns import pattern_from_csv, pattern_to_csv
from .solver import NO, UNKNOWN, YES, SolverBudget, chi_star, decide_k

EXIT_OK, EXIT_VIOLATION, EXIT_PARSE, EXIT_BUDGET = 0, 1, 2, 3

MODES = ("exact", "formula", "construct")
TABLE_MINIMA = {"pp": (1, 1), "cc": (3, 3), "cp": (3, 1)}


def _emit(doc, out=None):
    text = json.dumps(doc, sort_keys=True) + "\n"
    sys.stdout.write(text)
    if out:
        Path(out).write_text(text, encoding="utf-8")


def _count(text: str) -> int:
    # accepts 1000000 as well as 1e6
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if v != int(v) or v <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return int(v)


def load_target(text: str) -> tuple[Graph, ProductSpec | Factor | None]:
    """A product spec such as ``C3xC4``, a single factor such as ``P7``, or a
    graph file (DIMACS or JSON)."""
    try:
        spec = parse_spec(text)
    except ParseError:
        spec = None
    if spec is not None:
        return spec.graph(), spec
    if not Path(text).exists():
        raise ParseError(f"{text!r} is neither a spec like C3xC4 nor an existing graph file")
    return read_graph(text), None


def load_coloring(path: str) -> Coloring:
    text = Path(path).read_text(encoding="utf-8")
    if text.lstrip().startswith("{"):
        return coloring_from_json(text)
    p, _ = pattern_from_csv(text)
    return Coloring(tuple(x for row in p.entries for x in row))


# -- commands ---------------------------------------------------------------------

def cmd_verify(args) -> int:
    g, _ = load_target(args.graph)
    c = load_coloring(args.coloring)
    try:
        report = verify(g, c)
    except LengthMismatch as exc:
        raise ParseError(str(exc)) from None
    doc = report.to_dict()
    doc["colors_used"] = c.k
    _emit(doc, args.out)
    return EXIT_OK if report.is_star else EXIT_VIOLATION


def _budget(args) -> SolverBudget:
    return SolverBudget(max_nodes=args.max_nodes, max_seconds=args.max_seconds)


def cmd_chi(args) -> int:
    words = list(args.words)
    mode = words.pop(0) if words and words[0] in MODES else None
    if mode and args.mode_flag and mode != args.mode_flag:
        raise ParseError(f"conflicting modes {mode!r} and --{args.mode_flag}")
    mode = mode or args.mode_flag or "exact"
    if len(words) > 1:
        raise ParseError(f"unexpected arguments {words[1:]}")
    target = args.graph or (words[0] if words else None)
    if not target:
        raise ParseError("chi needs a spec or --graph FILE")
    if mode == "exact":
        g, _ = load_target(target)
        if args.k is not None:
            dec = decide_k(g, args.k, _budget(args))
            doc = {"k": args.k, "result": dec.status, "nodes": dec.nodes}
            if dec.witness is not None:
                doc["witness"] = list(dec.witness.colors)
            _emit(doc, args.out)
            return EXIT_BUDGET if dec.status == UNKNOWN else EXIT_OK
        res = chi_star(g, _budget(args))
        _emit(res.to_dict(with_witness=args.witness), args.out)
        return EXIT_OK if res.is_exact else EXIT_BUDGET
    spec = parse_spec(target)
    if mode == "formula":
        _emit(chi_formula(spec).to_dict(), args.out)
        return EXIT_OK
    # construct
    if isinstance(spec, Factor):
        raise UnsupportedSpec("constructions are for products such as C3xC4")
    res = construct(spec)
    p = construct_pattern(spec)
    dest = Path(args.pattern_out or f"{spec}.csv")
    dest.write_text(pattern_to_csv(p), encoding="utf-8")
    doc = res.to_dict()
    doc["pattern_file"] = str(dest)
    _emit(doc, args.out)
    return EXIT_OK


def _render_table(rows, fmt: str) -> str:
    cols = ["m", "n", "formula", "constructed_k", "verified", "solver_checked"]
    if fmt == "json":
        return json.dumps(rows, indent=1) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        return buf.getvalue()
    lines = ["| " + " | ".join(cols) + " |", "|" + "---|" * len(cols)]
    lines += ["| " + " | ".join(str(r[c]) for c in cols) + " |" for r in rows]
    return "\n".join(lines) + "\n"


def cmd_table(args) -> int:
    m0, n0 = TABLE_MINIMA[args.which]
    m_min = args.m_min if args.m_min is not None else m0
    n_min = args.n_min if args.n_min is not None else n0
    if m_min < m0 or n_min < n0:
        raise ParseError(f"{args.which} table starts at m={m0}, n={n0}")
    rows = table_rows(args.which, range(m_min, args.m_max + 1), range(n_min, args.n_max + 1),
                      args.solver_check_upto, _budget(args))
    text = _render_table(rows, args.format)
    sys.stdout.write(text)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    bad = [r for r in rows if not r["verified"] or r["solver_checked"].startswith("DISAGREE")]
    return EXIT_VIOLATION if bad else EXIT_OK


def cmd_regen_derived(args) -> int:
    out = Path(args.out_dir) if args.out_dir else derived_dir()
    manifest = regenerate(out, _budget(args), certificates=not args.no_certificates)
    manifest["command"] = ["starprod"] + list(args.argv)
    inputs = json.dumps([args.max_nodes, not args.no_certificates]).encode()
    manifest["input_digest"] = hashlib.sha256(inputs).hexdigest()
    text = dumps(manifest)
    sys.stdout.write(text)
    if args.manifest:
        Path(args.manifest).write_text(text, encoding="utf-8")
    return EXIT_BUDGET if manifest["incomplete"] else EXIT_OK


# -- parser -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="starprod", description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0, help="seed for anything randomized (default 0)")
    sub = ap.add_subparsers(dest="command", required=True)

    def budget_flags(p, default_nodes=10**9):
        p.add_argument("--max-nodes", type=_count, default=default_nodes)
        p.add_argument("--max-seconds", type=float, default=None)

    p = sub.add_parser("verify", help="check a coloring (JSON or pattern CSV) on a graph")
    p.add_argument("graph", help="spec like C3xC4, or a DIMACS/JSON graph file")
    p.add_argument("coloring")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("chi", help="star chromatic number: exact search, formula or construction")
    p.add_argument("words", nargs="*", metavar="[MODE] TARGET",
                   help="optional mode word (exact, formula, construct) and a spec or graph file")
    g = p.add_mutually_exclusive_group()
    for m in MODES:
        g.add_argument(f"--{m}", dest="mode_flag", action="store_const", const=m)
    p.add_argument("--graph", help="spec or graph file (alternative to the positional target)")
    p.add_argument("--k", type=int, help="only decide whether K colors suffice")
    p.add_argument("--witness", action="store_true", help="include the witness coloring")
    p.add_argument("--pattern-out", help="where --construct writes the pattern CSV")
    p.add_argument("--out", help="also write the JSON result here")
    budget_flags(p)
    p.set_defaults(func=cmd_chi)

    p = sub.add_parser("table", help="closed-form table with constructions and optional solver check")
    p.add_argument("which", choices=("pp", "cc", "cp"))
    p.add_argument("--m-max", type=int, default=7)
    p.add_argument("--n-max", type=int, default=7)
    p.add_argument("--m-min", type=int)
    p.add_argument("--n-min", type=int)
    p.add_argument("--solver-check-upto", type=int, default=0, metavar="V",
                   help="also solve products with at most V vertices")
    p.add_argument("--format", choices=("csv", "json", "md"), default="csv")
    p.add_argument("--out")
    budget_flags(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("regen-derived", help="recompute the solver-derived witness cache")
    p.add_argument("--out-dir", help="default: the package data directory")
    p.add_argument("--manifest", help="write the run manifest here")
    p.add_argument("--no-certificates", action="store_true")
    budget_flags(p)
    p.set_defaults(func=cmd_regen_derived)
    return ap


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args, extra = parser.parse_known_args(argv)
    # words after an option (chi exact --max-nodes 5 C3xC3) land in extra
    if extra and args.command == "chi" and not any(x.startswith("-") for x in extra):
        args.words = list(args.words) + extra
    elif extra:
        parser.error(f"unrecognized arguments: {' '.join(extra)}")
    args.argv = argv
    random.seed(args.seed)
    try:
        return args.func(args)
    except (ParseError, LengthMismatch, UnsupportedSpec, OSError) as exc:
        print(f"starprod: error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetExceeded as exc:
        print(f"starprod: budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except StarprodError as exc:
        print(f"starprod: {exc}", file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
