"""Command-line front end."""

from __future__ import annotations

import argparse
import csv
import json
import sys

from . import graph as G
from .algebra import Element
from .differential import (
    DifferentialTable,
    codim1_term_count,
    d0_table,
    extend_derivation,
    generators_up_to,
    recorded_full_differential,
    verify_square_zero,
)
from .gradings import report
from .linalg import homology_ranks
from .serialize import element_from_json_obj, element_to_json
from .special import dimension_series, enumerate_special
from .term import TermArityError, TermSyntaxError, parse_element, print_element

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
DESK_SCALE = 7


class UsageError(Exception):
    pass


def _element(text: str) -> Element:
    try:
        return parse_element(text)
    except (TermSyntaxError, TermArityError) as exc:
        raise UsageError(str(exc)) from None


def _emit_element(e: Element, fmt: str, out):
    if fmt == "json":
        out.write(element_to_json(e) + "\n")
    else:
        out.write(print_element(e) + "\n")


def _load_table(path: str | None) -> DifferentialTable:
    if path is None:
        return recorded_full_differential()
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    table = DifferentialTable()
    for entry in doc["entries"]:
        table.set(tuple(entry["generator"]), element_from_json_obj(entry["differential"]), entry["provenance"])
    return table


def cmd_basis(args, out):
    table = enumerate_special(args.m, args.n)
    rows = []
    for (d, g), monos in table.strata.items():
        if args.degree is not None and d != args.degree:
            continue
        if args.genus is not None and g != args.genus:
            continue
        rows.extend((d, g, x) for x in monos)
    if args.format == "json":
        from .serialize import element_to_json_obj

        out.write(json.dumps([{"degree": d, "genus": g, "element": element_to_json_obj(Element.of(x))} for d, g, x in rows], sort_keys=True) + "\n")
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["degree", "genus", "element"])
        for d, g, x in rows:
            w.writerow([d, g, print_element(Element.of(x))])
    else:
        for _, _, x in rows:
            out.write(print_element(Element.of(x)) + "\n")
    return EXIT_OK


def cmd_dims(args, out):
    series = dimension_series(args.max_m, args.max_n)
    if args.format == "json":
        doc = [
            {"m": m, "n": n, "dim": v["total"], "strata": [{"degree": d, "genus": g, "dim": k} for (d, g), k in v["strata"].items()]}
            for (m, n), v in series.items()
        ]
        out.write(json.dumps(doc, sort_keys=True) + "\n")
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        if args.strata:
            w.writerow(["m", "n", "degree", "genus", "dim"])
            for (m, n), v in series.items():
                for (d, g), k in v["strata"].items():
                    w.writerow([m, n, d, g, k])
        else:
            w.writerow(["m", "n", "dim"])
            for (m, n), v in series.items():
                w.writerow([m, n, v["total"]])
    else:
        for (m, n), v in series.items():
            out.write(f"S({m},{n}) {v['total']}\n")
            if args.strata:
                for (d, g), k in v["strata"].items():
                    out.write(f"  degree {d} genus {g}: {k}\n")
    return EXIT_OK


def cmd_grade(args, out):
    e = _element(args.expr)
    items = e.items()
    if len(items) == 1:
        out.write(str(report(items[0][0])) + "\n")
    else:
        for mono, _ in items:
            out.write(f"{print_element(Element.of(mono))}: {report(mono)}\n")
    return EXIT_OK


def cmd_d0(args, out):
    _emit_element(extend_derivation(d0_table(), _element(args.expr)), args.format, out)
    return EXIT_OK


def cmd_dfull(args, out):
    table = _load_table(args.table)
    _emit_element(extend_derivation(table, _element(args.expr)), args.format, out)
    return EXIT_OK


def cmd_verify(args, out):
    if not args.square_zero:
        raise UsageError("nothing to verify; pass --square-zero")
    ok = True
    rep = verify_square_zero(d0_table(), generators_up_to(args.max_arity))
    out.write(f"d0^2 = 0 on {len(rep.checked)} generators with m+n <= {args.max_arity}: {'ok' if rep.ok else 'FAIL'}\n")
    for mn, resid in rep.failures.items():
        out.write(f"  xi{mn}: {len(resid)} residual terms\n")
    ok &= rep.ok
    table = _load_table(args.table)
    gens = sorted((mn for mn in table.entries if sum(mn) <= args.max_arity), key=lambda k: (sum(k), k))
    rep = verify_square_zero(table, gens)
    for mn in rep.checked:
        status = "FAIL" if mn in rep.failures else "ok"
        out.write(f"d^2(xi({mn[0]},{mn[1]})) = 0: {status}\n")
    ok &= rep.ok
    return EXIT_OK if ok else EXIT_FAIL


def cmd_solve_pert(args, out):
    from .perturbation import emit_table, size_estimate, solve_through, validate_differential

    if args.max_arity > DESK_SCALE and not args.force:
        est = size_estimate(args.max_arity)
        out.write(f"m+n = {args.max_arity} is beyond desk scale ({DESK_SCALE}); lower bounds on dim S(m,n):\n")
        for (m, n), k in est.items():
            out.write(f"  S({m},{n}) >= {k}\n")
        out.write("rerun with --force to attempt it anyway\n")
        return EXIT_USAGE
    state = solve_through(args.max_arity)
    for mn in sorted(state.components, key=lambda k: (sum(k), k)):
        comps = state.components[mn]
        parts = ", ".join(f"g{g}: {len(e)}" for g, e in comps.items()) or "none"
        out.write(f"xi({mn[0]},{mn[1]}) [{state.provenance[mn]}] perturbation terms by genus: {parts}\n")
    problems = validate_differential(state, args.max_arity)
    for p in problems:
        out.write(f"violation: {p}\n")
    out.write("validation: " + ("ok" if not problems else "FAIL") + "\n")
    if args.emit:
        with open(args.emit, "w", encoding="utf-8") as fh:
            fh.write(emit_table(state))
    return EXIT_OK if not problems else EXIT_FAIL


def cmd_fvector(args, out):
    table = _load_table(args.table)
    rows = [(mn, codim1_term_count(table, mn)) for mn in sorted(table.entries, key=lambda k: (sum(k), k))]
    if args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["m", "n", "terms"])
        for (m, n), k in rows:
            w.writerow([m, n, k])
    elif args.format == "json":
        out.write(json.dumps([{"m": m, "n": n, "terms": k} for (m, n), k in rows]) + "\n")
    else:
        for (m, n), k in rows:
            out.write(f"xi({m},{n}) {k}\n")
    return EXIT_OK


def cmd_export_dot(args, out):
    e = _element(args.expr)
    items = e.items()
    if len(items) == 1 and items[0][1] == 1:
        out.write(G.to_dot(items[0][0]))
    else:
        from .serialize import element_to_text

        out.write(element_to_text(e))
    return EXIT_OK


def cmd_homology(args, out):
    table = enumerate_special(args.m, args.n)
    ranks = homology_ranks(table)
    positive = 0
    for (d, g), h in ranks.items():
        out.write(f"degree {d} genus {g}: dim C = {len(table.stratum(d, g))}, dim H = {h}\n")
        if d > 0:
            positive += h
    out.write("acyclic in positive degrees\n" if positive == 0 else "NOT acyclic in positive degrees\n")
    return EXIT_OK if positive == 0 else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bialgprop", description="Exact computations in the free PROP on xi(m,n).")
    sub = p.add_subparsers(dest="command", required=True)
    fmt = dict(choices=["text", "csv", "json"], default="text")

    s = sub.add_parser("basis", help="list the special monomials of S(m,n)")
    s.add_argument("m", type=int)
    s.add_argument("n", type=int)
    s.add_argument("--degree", type=int)
    s.add_argument("--genus", type=int)
    s.add_argument("--format", **fmt)
    s.set_defaults(func=cmd_basis)

    s = sub.add_parser("dims", help="dimension table of S(m,n)")
    s.add_argument("--max-m", type=int, default=3)
    s.add_argument("--max-n", type=int, default=3)
    s.add_argument("--strata", action="store_true", help="refine by (degree, genus)")
    s.add_argument("--format", **fmt)
    s.set_defaults(func=cmd_dims)

    s = sub.add_parser("grade", help="degree, genus, path grading and vertex count")
    s.add_argument("expr")
    s.set_defaults(func=cmd_grade)

    for name, func, hlp in (("d0", cmd_d0, "apply d0"), ("dfull", cmd_dfull, "apply the full differential")):
        s = sub.add_parser(name, help=hlp)
        s.add_argument("expr")
        s.add_argument("--format", choices=["text", "json"], default="text")
        if name == "dfull":
            s.add_argument("--table", help="JSON table written by solve-pert (default: recorded formulas)")
        s.set_defaults(func=func)

    s = sub.add_parser("verify", help="square-zero checks")
    s.add_argument("--square-zero", action="store_true")
    s.add_argument("--max-arity", type=int, default=6)
    s.add_argument("--table")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("solve-pert", help="solve for the perturbation through m+n = N")
    s.add_argument("--max-arity", type=int, default=6)
    s.add_argument("--emit", metavar="FILE")
    s.add_argument("--force", action="store_true", help=f"allow m+n > {DESK_SCALE}")
    s.set_defaults(func=cmd_solve_pert)

    s = sub.add_parser("fvector", help="number of terms of the differential on each generator")
    s.add_argument("--table")
    s.add_argument("--format", **fmt)
    s.set_defaults(func=cmd_fvector)

    s = sub.add_parser("export-dot", help="graph description of a monomial")
    s.add_argument("expr")
    s.set_defaults(func=cmd_export_dot)

    s = sub.add_parser("homology", help="d0-homology of S(m,n) by degree and genus")
    s.add_argument("m", type=int)
    s.add_argument("n", type=int)
    s.set_defaults(func=cmd_homology)
    return p


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except UsageError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (ValueError, KeyError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
