"""Command-line interface.

Exit status: 0 success, 1 domain error (invalid kei, malformed diagram,
unverified hypothesis used as input), 2 search budget exhausted, 3 usage error.
Reports go to stdout, diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import codec
from .coloring import DEFAULT_BUDGET, BudgetExceeded, count_colorings, count_triplane_colorings
from .diagrams import (
    DiagramError,
    LinkDiagram,
    TangleDiagram,
    TriPlaneDiagram,
    connected_sum,
    cut_to_1tangle,
    stabilized_sphere_triplane,
    torus_2q,
    torus_sum,
    trefoil_formal_triplane,
    trivial_link,
    unknotted_sphere_triplane,
)
from .kei import KeiValidationError, dihedral, dihedral_modulus, is_faithful, trivial_kei
from .simplify import DEFAULT_DEPTH, validate_triplane
from .trisection import (
    EULER_CHAR,
    HypothesisNotVerified,
    bridge_lower_bound,
    check_congruence,
    check_hypothesis,
    parity_shortcut_count,
    twist_spun_bridge_numbers,
    twist_spun_coloring_count,
)

EXIT_OK, EXIT_DOMAIN, EXIT_BUDGET, EXIT_USAGE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


# --- inputs ----------------------------------------------------------------------

TRIPLANE_GENERATORS = {
    "sphere": unknotted_sphere_triplane,
    "stabilized-sphere": stabilized_sphere_triplane,
    "bigon-sphere": lambda: stabilized_sphere_triplane(with_bigon=True),
    "trefoil-formal": trefoil_formal_triplane,
}


def _int(tok, what):
    try:
        return int(tok)
    except ValueError:
        raise UsageError(f"{what} must be an integer, got {tok!r}") from None


def _gen_link(expr: str) -> LinkDiagram:
    parts = expr.split(":")
    kind, args = parts[0], parts[1:]
    try:
        if kind == "torus2q" and len(args) == 1:
            return torus_2q(_int(args[0], "q"))
        if kind == "torussum" and len(args) == 2:
            return torus_sum(_int(args[0], "q"), _int(args[1], "k"))
        if kind == "trivial" and len(args) == 1:
            return trivial_link(_int(args[0], "c"))
        if kind == "unknot" and not args:
            return trivial_link(1)
        if kind == "sum" and len(args) >= 1:
            summands = [_gen_link(s) for s in ":".join(args).split(",")]
            D = summands[0]
            for S in summands[1:]:
                D = connected_sum(D, D.arcs[0], S, S.arcs[0]).relabel()
            return D
    except (ValueError, DiagramError) as exc:
        raise UsageError(f"bad generator gen:{expr}: {exc}") from None
    raise UsageError(f"unknown diagram generator gen:{expr}")


def load_input(arg: str):
    """A LinkDiagram, TangleDiagram or TriPlaneDiagram from a path or generator."""
    if os.path.exists(arg):
        with open(arg) as fh:
            text = fh.read()
        if text.lstrip().startswith("{"):
            return codec.parse_triplane(text)
        return codec.parse_diagram(text)
    if not arg.startswith("gen:"):
        raise UsageError(f"no such file: {arg}")
    expr = arg[4:]
    if expr in TRIPLANE_GENERATORS:
        return TRIPLANE_GENERATORS[expr]()
    if expr.startswith("tangle:"):
        D = _gen_link(expr[len("tangle:"):])
        return cut_to_1tangle(D, D.arcs[0])
    return _gen_link(expr)


def load_kei(arg: str):
    if os.path.exists(arg):
        with open(arg) as fh:
            return codec.parse_kei(fh.read())
    parts = arg.split(":")
    if len(parts) == 3 and parts[0] == "gen":
        n = _int(parts[2], "kei order")
        if n < 1:
            raise UsageError(f"kei order must be positive in {arg}")
        if parts[1] == "dihedral":
            return dihedral(n)
        if parts[1] == "trivial":
            return trivial_kei(n)
    raise UsageError(f"cannot load kei {arg!r} (expected a file or gen:dihedral:p / gen:trivial:n)")


def _as_tangle(value) -> TangleDiagram:
    if isinstance(value, TangleDiagram):
        if value.terminal is None:
            if value.strands != 1:
                raise DiagramError("twist spinning needs a 1-tangle")
            value = TangleDiagram(value.arcs, value.crossings, value.boundary, value.ends,
                                  value.boundary[0])
        return value
    if isinstance(value, LinkDiagram):
        return cut_to_1tangle(value, value.arcs[0])
    raise DiagramError("expected a knot diagram or 1-tangle")


def _count_any(value, X, budget):
    if isinstance(value, TriPlaneDiagram):
        return count_triplane_colorings(value, X, budget)
    return count_colorings(value, X, budget)


# --- commands -----------------------------------------------------------------------


def cmd_kei_check(args):
    try:
        X = load_kei(args.kei_file)
    except KeiValidationError as exc:
        details = {"valid": False, "problems": exc.problems,
                   "violations": [[v.axiom, list(v.witness)] for v in exc.violations]}
        return codec.Report(args.kei_file, None, None, details=details), EXIT_DOMAIN
    details = {"valid": True, "order": X.order, "faithful": is_faithful(X),
               "dihedral_modulus": dihedral_modulus(X)}
    return codec.Report(args.kei_file, X.display_name(), None, details=details), EXIT_OK


def _bound_fields(report, count, order, chi, b=None):
    if chi is None or order < 2:
        return
    br = bridge_lower_bound(count, order, chi)
    report.bound_raw, report.bound_refined = br.raw_bound, br.refined_bound
    if b is not None:
        report.congruence_ok = check_congruence(b, chi)


def cmd_color_count(args):
    D = load_input(args.input)
    if isinstance(D, TriPlaneDiagram):
        raise UsageError("use triplane-count for tri-plane diagrams")
    X = load_kei(args.kei)
    n = count_colorings(D, X, args.budget, method=args.method)
    details = {"arcs": len(D.arcs), "crossings": D.n_crossings, "method": args.method,
               "components": len(D.components)}
    r = codec.Report(args.input, X.display_name(), n, details=details)
    _bound_fields(r, n, X.order, args.chi, args.b)
    return r, EXIT_OK


def cmd_triplane_count(args):
    TP = load_input(args.input)
    if not isinstance(TP, TriPlaneDiagram):
        raise UsageError("triplane-count needs a tri-plane file or generator")
    X = load_kei(args.kei)
    validation = validate_triplane(TP, args.depth)
    if not validation.well_formed:
        raise DiagramError("; ".join(validation.structural))
    n = count_triplane_colorings(TP, X, args.budget)
    details = {"b": TP.strands, "validation": validation.to_dict(),
               "formal_count": not validation.certified}
    r = codec.Report(args.input, X.display_name(), n, details=details)
    if TP.patch_counts is not None:
        chi = sum(TP.patch_counts) - TP.strands
        details["patch_counts"] = list(TP.patch_counts)
        details["chi"] = chi
        _bound_fields(r, n, X.order, chi, TP.strands)
    return r, EXIT_OK


def cmd_bound(args):
    br = bridge_lower_bound(args.count, args.kei_order, args.chi)
    r = codec.Report(None, f"order {args.kei_order}", args.count, br.raw_bound, br.refined_bound,
                     details={"chi": args.chi})
    if args.b is not None:
        r.congruence_ok = check_congruence(args.b, args.chi)
    return r, EXIT_OK


def cmd_twistspun(args):
    T = _as_tangle(load_input(args.input))
    X = load_kei(args.kei)
    n = twist_spun_coloring_count(T, X, args.m, args.budget)
    shortcut = parity_shortcut_count(T, X, args.m, args.budget)
    details = {"m": args.m, "parity_shortcut": shortcut, "parity_agrees": n == shortcut,
               "tangle_count": count_colorings(T, X, args.budget)}
    r = codec.Report(args.input, X.display_name(), n, details=details)
    if args.m % 2 == 0 and X.order >= 2:
        bounds = {k: bridge_lower_bound(n, X.order, chi).refined_bound for k, chi in EULER_CHAR.items()}
        details["refined_bounds"] = bounds
        r.bound_raw = bridge_lower_bound(n, X.order, EULER_CHAR["S2"]).raw_bound
        r.bound_refined = bounds["S2"]
    if args.b is not None:
        ok = check_hypothesis(T, X, args.b, args.budget)
        details["hypothesis_ok"] = ok
        try:
            nums = twist_spun_bridge_numbers(args.b, ok)
        except HypothesisNotVerified as exc:
            details["bridge_numbers"] = str(exc)
        else:
            details["bridge_numbers"] = nums if args.m % 2 == 0 else "odd m: not covered"
            if args.m % 2 == 0:
                r.congruence_ok = check_congruence(nums["sphere"], EULER_CHAR["S2"])
    return r, EXIT_OK


def cmd_census(args):
    inputs = [load_input(a) for a in args.inputs]
    keis = [load_kei(k) for k in args.kei]
    counts = []
    for D in inputs:
        row = []
        for X in keis:
            try:
                row.append(_count_any(D, X, args.budget))
            except BudgetExceeded:
                row.append({"error": "budget exhausted"})
        counts.append(row)
    distinguished, same = [], []
    for i in range(len(inputs)):
        for j in range(i + 1, len(inputs)):
            by = [keis[k].display_name() for k in range(len(keis))
                  if isinstance(counts[i][k], int) and isinstance(counts[j][k], int)
                  and counts[i][k] != counts[j][k]]
            (distinguished if by else same).append({"pair": [args.inputs[i], args.inputs[j]], "by": by})
    table = {"inputs": args.inputs, "keis": [X.display_name() for X in keis], "counts": counts,
             "distinguished": distinguished, "undistinguished": [s["pair"] for s in same]}
    return table, EXIT_OK


def render_census(table) -> str:
    names = table["keis"]
    width = max([len(s) for s in table["inputs"]] + [5])
    lines = [" " * width + "  " + "  ".join(f"{n:>8}" for n in names)]
    for name, row in zip(table["inputs"], table["counts"]):
        cells = [f"{c:>8}" if isinstance(c, int) else f"{'budget!':>8}" for c in row]
        lines.append(f"{name:<{width}}  " + "  ".join(cells))
    for d in table["distinguished"]:
        lines.append(f"distinguished: {d['pair'][0]} | {d['pair'][1]} by {', '.join(d['by'])}")
    for p in table["undistinguished"]:
        lines.append(f"not distinguished: {p[0]} | {p[1]}")
    return "\n".join(lines) + "\n"


COMMANDS = {
    "kei-check": cmd_kei_check,
    "color-count": cmd_color_count,
    "triplane-count": cmd_triplane_count,
    "bound": cmd_bound,
    "twistspun": cmd_twistspun,
    "census": cmd_census,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help="maximum search nodes per count")
    common.add_argument("--depth", type=int, default=DEFAULT_DEPTH,
                        help="node expansions for the Reidemeister simplifier")

    p = _Parser(prog="keibridge", description="Kei colorings and bridge-number bounds.")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    s = sub.add_parser("kei-check", parents=[common], help="validate a kei table")
    s.add_argument("kei_file")

    s = sub.add_parser("color-count", parents=[common], help="count colorings of a link or tangle")
    s.add_argument("input")
    s.add_argument("--kei", required=True)
    s.add_argument("--method", choices=("auto", "backtrack", "dihedral", "brute"), default="auto")
    s.add_argument("--chi", type=int)
    s.add_argument("--b", type=int)

    s = sub.add_parser("triplane-count", parents=[common], help="count colorings of a tri-plane diagram")
    s.add_argument("input")
    s.add_argument("--kei", required=True)

    s = sub.add_parser("bound", parents=[common], help="bridge-number lower bound from a count")
    s.add_argument("--count", type=int, required=True)
    s.add_argument("--kei-order", type=int, required=True)
    s.add_argument("--chi", type=int, required=True)
    s.add_argument("--b", type=int)

    s = sub.add_parser("twistspun", parents=[common], help="colorings of the m-twist spun knot")
    s.add_argument("input")
    s.add_argument("--kei", required=True)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--b", type=int, help="classical bridge number, to test the equality hypothesis")

    s = sub.add_parser("census", parents=[common], help="count matrix over inputs and keis")
    s.add_argument("inputs", nargs="+")
    s.add_argument("--kei", action="append", required=True)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        result, status = COMMANDS[args.verb](args)
    except UsageError as exc:
        print(f"keibridge: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"keibridge: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (codec.ParseFailure, DiagramError, KeiValidationError, ValueError) as exc:
        print(f"keibridge: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    if args.verb == "census":
        out = render_census(result) if args.format == "text" else json.dumps(result, indent=2, sort_keys=True) + "\n"
    else:
        out = codec.render_text(result) if args.format == "text" else codec.serialize(result)
    sys.stdout.write(out)
    return status


if __name__ == "__main__":
    sys.exit(main())
