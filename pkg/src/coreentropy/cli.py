"""Command-line front end.

Subcommands: validate, entropy, matrix, classes, oracle, sweep.
Exit codes: 0 success, 1 runtime failure/disagreement, 2 invalid portrait,
3 parse error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import graphmodel, pairspace, spectral
from .portrait import (
    CriticalPortrait,
    PortraitError,
    PortraitParseError,
    crit_set,
    post_set,
    unlinked_classes,
)
from .sweep import format_number, rows_to_csv, sweep_rows

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_INVALID = 2
EXIT_PARSE = 3


def _load_portrait(path: str) -> CriticalPortrait:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"error: cannot read {path}: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_RUNTIME)
    try:
        if text.lstrip().startswith("{"):
            from .portrait import parse_portrait_json

            return parse_portrait_json(json.loads(text))
        from .portrait import parse_portrait_text

        return parse_portrait_text(text)
    except PortraitError as exc:
        print(f"invalid portrait: {exc.code}: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_INVALID)
    except (PortraitParseError, json.JSONDecodeError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_PARSE)


def cmd_validate(args) -> int:
    P = _load_portrait(args.file)
    sizes = ", ".join(str(len(e)) for e in P.elements)
    if args.json:
        print(json.dumps({
            "degree": P.degree,
            "elements": len(P.elements),
            "element_sizes": [len(e) for e in P.elements],
            "criticality": sum(len(e) - 1 for e in P.elements),
        }))
    else:
        print(f"degree {P.degree}, {len(P.elements)} elements")
        print(f"element sizes: {sizes}")
        print(f"criticality: {sum(len(e) - 1 for e in P.elements)}")
    return EXIT_OK


def cmd_entropy(args) -> int:
    P = _load_portrait(args.file)
    res = pairspace.core_entropy(P, tol=args.tol, max_iter=args.max_iter)
    if args.json:
        print(json.dumps({
            "rho": res.rho,
            "log_rho": res.log_rho,
            "lower": res.lower,
            "upper": res.upper,
            "dim": res.dim,
            "iterations": res.spectral.iterations,
            "method": res.spectral.method,
            "converged": res.spectral.converged,
        }))
    else:
        print(f"rho = {format_number(res.rho)}")
        print(f"log_rho = {format_number(res.log_rho)}")
        print(f"bounds = [{format_number(res.lower)}, {format_number(res.upper)}]")
        print(f"dim = {res.dim}, iterations = {res.spectral.iterations}, method = {res.spectral.method}")
    if not res.spectral.converged:
        print("error: iteration budget exhausted before reaching tolerance", file=sys.stderr)
        return EXIT_RUNTIME
    return EXIT_OK


def cmd_matrix(args) -> int:
    P = _load_portrait(args.file)
    tm = pairspace.build_matrix(P)
    for line in tm.dump_lines():
        print(line)
    return EXIT_OK


def cmd_classes(args) -> int:
    P = _load_portrait(args.file)
    classes = unlinked_classes(P)
    print(f"crit = {{{', '.join(str(a) for a in crit_set(P))}}}")
    print(f"post = {{{', '.join(str(a) for a in post_set(P))}}}")
    for i, cls in enumerate(classes, start=1):
        arcs = " ".join(f"({a},{b})" for a, b in cls.arcs)
        print(f"class {i}: {arcs} length {cls.total_length}")
    return EXIT_OK


def cmd_oracle(args) -> int:
    P = _load_portrait(args.file)
    tm = pairspace.build_matrix(P)
    A = tm.to_sparse()
    G, L = graphmodel.build_graph_model(P)
    B = graphmodel.incidence_matrix(G, L)
    matrices_equal = A == B
    print(f"matrix dim = {A.dim}")
    print(f"graph-model matrix equal: {matrices_equal}")
    res = pairspace.core_entropy(P, tol=args.tol, max_iter=args.max_iter)
    ok = matrices_equal
    if A.dim <= spectral.MAX_CHARPOLY_DIM:
        enc = spectral.char_poly_radius(A)
        delta = abs(res.rho - enc.midpoint)
        print(f"power rho = {format_number(res.rho)}")
        print(f"charpoly rho = {format_number(enc.midpoint)}")
        print(f"|delta| = {format_number(delta)}")
        ok = ok and delta <= 1e-9
    else:
        print(f"charpoly leg skipped: dim {A.dim} > {spectral.MAX_CHARPOLY_DIM}")
    print("agreement:", "OK" if ok else "FAILED")
    return EXIT_OK if ok else EXIT_RUNTIME


def cmd_sweep(args) -> int:
    if args.degree != 2:
        print("error: sweep supports degree 2 only; use portrait files for higher degrees",
              file=sys.stderr)
        return EXIT_RUNTIME
    rows = sweep_rows(args.max_den, tol=args.tol, max_iter=args.max_iter, jobs=args.jobs)
    csv_text = rows_to_csv(rows)
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8", newline="") as fh:
                fh.write(csv_text)
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_RUNTIME
        print(f"wrote {len(rows)} rows to {args.out}")
    else:
        sys.stdout.write(csv_text)
    if args.plot:
        from .plotting import render_sweep

        try:
            render_sweep(rows, args.plot)
        except OSError as exc:
            print(f"error: cannot write {args.plot}: {exc}", file=sys.stderr)
            return EXIT_RUNTIME
        print(f"wrote figure to {args.plot}")
    return EXIT_OK


def _add_common(p):
    p.add_argument("--tol", type=float, default=1e-12, help="enclosure tolerance")
    p.add_argument("--max-iter", type=int, default=10 ** 6, help="iteration budget")
    p.add_argument("--json", action="store_true", help="structured output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coreentropy",
        description="Core entropy of rational critical portraits",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a portrait file")
    p.add_argument("file")
    _add_common(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("entropy", help="rho and log rho of a portrait")
    p.add_argument("file")
    _add_common(p)
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("matrix", help="dump basis and transition matrix")
    p.add_argument("file")
    _add_common(p)
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("classes", help="unlinked-class arcs of a portrait")
    p.add_argument("file")
    _add_common(p)
    p.set_defaults(func=cmd_classes)

    p = sub.add_parser("oracle", help="cross-check matrix and rho against independent oracles")
    p.add_argument("file")
    _add_common(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("sweep", help="quadratic entropy sweep to CSV (and optional figure)")
    p.add_argument("--max-den", type=int, required=True, help="largest denominator")
    p.add_argument("--out", default=None, help="CSV output path (default: stdout)")
    p.add_argument("--plot", default=None, help="also render a figure to this path")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--degree", type=int, default=2)
    _add_common(p)
    p.set_defaults(func=cmd_sweep)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SystemExit as exc:
        return exc.code if exc.code is not None else EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
