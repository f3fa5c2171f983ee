"""Command-line interface.

JSON goes to stdout and diagnostics to stderr.  Exit codes: 0 success,
2 unparseable input, 3 structural invariant violated, 4 mathematical
precondition violated.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import grouping as gp
from . import growth as gr
from . import indexed_graph as ig
from . import realize as rz
from . import star_tree as st

EXIT_PARSE, EXIT_INVARIANT, EXIT_PRECONDITION = 2, 3, 4


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def q(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def emit(obj) -> None:
    if isinstance(obj, str):
        print(obj)
    else:
        print(json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False))


def load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(EXIT_PARSE, f"cannot read {path}: {exc}")


def load_graph(path: str) -> ig.EdgeIndexedGraph:
    data = load_json(path)
    try:
        return ig.EdgeIndexedGraph.from_json(data)
    except ig.GraphError as exc:
        for d in exc.diagnostics:
            print(f"{d.code}: {d.message}", file=sys.stderr)
        raise CliError(EXIT_INVARIANT, "graph violates structural invariants")
    except (KeyError, TypeError, ValueError) as exc:
        raise CliError(EXIT_PARSE, f"malformed graph JSON: {exc}")


def load_cover(args) -> gp.CoverMap:
    data = load_json(args.cover)
    src = load_graph(args.source) if args.source else None
    tgt = load_graph(args.target) if args.target else None
    try:
        return gp.CoverMap.from_json(data, src, tgt)
    except ig.GraphError as exc:
        raise CliError(EXIT_INVARIANT, str(exc))
    except (KeyError, TypeError, ValueError) as exc:
        raise CliError(EXIT_PARSE, f"malformed cover JSON: {exc}")


def parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}")


def load_spec(args) -> st.StarTreeSpec:
    name = args.startree
    try:
        if name == "ray":
            return st.build_star_ray(args.m)
        if name == "star":
            return st.build_star(args.m)
        data = load_json(name)
        if "m" not in data:
            data["m"] = args.m
        return st.StarTreeSpec.from_json(data)
    except st.StarTreeError as exc:
        raise CliError(EXIT_PRECONDITION, str(exc))
    except (KeyError, TypeError) as exc:
        raise CliError(EXIT_PARSE, f"malformed star-tree JSON: {exc}")


def load_sequence(args) -> st.AdmissibleSequence:
    try:
        if getattr(args, "s", None):
            return st.AdmissibleSequence.of(args.n, args.s)
        return st.AdmissibleSequence.canonical(args.n)
    except (st.StarTreeError, ValueError) as exc:
        raise CliError(EXIT_PRECONDITION, str(exc))


def parse_growth_arg(text: str) -> gr.GrowthFunction:
    try:
        return gr.parse_growth(text)
    except ValueError as exc:
        raise CliError(EXIT_PARSE, str(exc))


def diag_json(diags) -> list[dict]:
    return [{"code": d.code, "message": d.message, "where": d.where} for d in diags]


# subcommands ------------------------------------------------------------------

def cmd_validate(args) -> int:
    data = load_json(args.graph)
    try:
        g = ig.EdgeIndexedGraph.from_json(data)
        diags = ig.validate(g)
    except ig.GraphError as exc:
        diags = exc.diagnostics
    except (KeyError, TypeError) as exc:
        raise CliError(EXIT_PARSE, f"malformed graph JSON: {exc}")
    emit({"valid": not diags, "diagnostics": diag_json(diags)})
    return EXIT_INVARIANT if diags else 0


def cmd_order(args) -> int:
    g = load_graph(args.graph)
    if args.base not in g.vertices:
        raise CliError(EXIT_PARSE, f"unknown vertex {args.base!r}")
    try:
        N = ig.compute_ordering(g, args.base, args.value)
    except ig.NonUnimodular as exc:
        raise CliError(EXIT_PRECONDITION, str(exc))
    if args.integral:
        N = ig.minimal_integral_ordering(N)
    emit({"vertices": {v: q(x) for v, x in sorted(N.vertex_values().items())},
          "edges": {e: q(x) for e, x in sorted(N.edge_values().items())}})
    return 0


def cmd_cover_check(args) -> int:
    cover = load_cover(args)
    diags = gp.verify_cover(cover)
    emit({"valid": not diags, "diagnostics": diag_json(diags)})
    return EXIT_INVARIANT if diags else 0


def cmd_cover_degree(args) -> int:
    cover = load_cover(args)
    diags = gp.verify_cover(cover)
    if diags:
        for d in diags:
            print(f"{d.code}: {d.message}", file=sys.stderr)
        return EXIT_INVARIANT
    try:
        emit(str(gp.cover_degree(cover)))
    except gp.DegreeMismatch as exc:
        raise CliError(EXIT_INVARIANT, str(exc))
    return 0


def cmd_startree(args) -> int:
    spec = load_spec(args)
    seq = load_sequence(args)
    depth = args.depth if args.depth is not None else spec.max_level
    if depth is None:
        raise CliError(EXIT_PRECONDITION, "infinite spec: pass --depth")
    try:
        graph = spec.truncate(depth).graph(seq)
    except st.StarTreeError as exc:
        raise CliError(EXIT_PRECONDITION, str(exc))
    if args.format == "dot":
        N = ig.compute_ordering(graph, "v0", 1) if args.ordering else None
        print(ig.to_dot(graph, N), end="")
    elif args.format == "spec":
        emit(spec.to_json())
    else:
        emit(graph.to_json())
    return 0


def cmd_covolume(args) -> int:
    if args.graph:
        g = load_graph(args.graph)
        try:
            N = ig.compute_ordering(g, args.base or min(g.vertices), 1)
            emit(q(gp.covolume(N, args.selector)))
        except (ig.NonUnimodular, gp.EmptySelector) as exc:
            raise CliError(EXIT_PRECONDITION, str(exc))
        return 0
    spec = load_spec(args)
    seq = load_sequence(args)
    try:
        if args.depth is not None:
            iv = st.covolume_bracket(spec, seq, args.depth, args.selector)
            emit({"interval": str(iv), "provenance": iv.provenance})
            return 0
        val = st.covolume_exact(spec, seq, args.selector)
    except (st.StarTreeError, st.DivergentCovolume) as exc:
        raise CliError(EXIT_PRECONDITION, str(exc))
    if isinstance(val, st.CovolumeInterval):
        emit({"interval": str(val), "provenance": val.provenance})
    else:
        emit(q(val))
    return 0


def cmd_realize(args) -> int:
    seq = load_sequence(args)
    try:
        if args.samples:
            seqs = rz.sample_digit_sequences(args.kappa, args.n, args.samples, args.seed)
            emit({"kappa": q(args.kappa), "n": args.n, "seed": args.seed,
                  "sequences": [s.notation() for s in seqs],
                  "all_exact": all(s.total() == s.target for s in seqs)})
            return 0
        f = parse_growth_arg(args.f) if args.f else gr.Polynomial((1,))
        real = rz.realize_full(args.kappa, f, seq, args.m, args.digit_bound)
        emit(real.report(growth_depth=args.growth_depth))
    except (rz.RealizationError, st.StarTreeError) as exc:
        raise CliError(EXIT_PRECONDITION, str(exc))
    return 0


def cmd_shrink(args) -> int:
    spec = load_spec(args)
    seq = load_sequence(args)
    try:
        shrunk = rz.shrink_covolume(spec, seq, args.k)
    except rz.RealizationError as exc:
        raise CliError(EXIT_PRECONDITION, str(exc))
    out = shrunk.to_json()
    out["checks"] = shrunk.tower.verify()
    out["faithfulness"] = [list(w) for w in shrunk.tower.faithfulness_witnesses()]
    if args.depth is not None:
        problems = shrunk.grouping(args.depth).check(exhaustive=False)
        out["grouping_problems"] = problems
    emit(out)
    ok = all(out["checks"][key] for key in ("injective", "equivariant", "automorphisms", "faithful"))
    return 0 if ok and not out.get("grouping_problems") else EXIT_INVARIANT


def cmd_growth(args) -> int:
    if args.f and args.g:
        f, g = parse_growth_arg(args.f), parse_growth_arg(args.g)
        emit(gr.growth_report(f, g, k_max=args.k_max))
        return 0
    if args.f and not args.startree:
        f = parse_growth_arg(args.f)
        acc = gr.is_acceptable(f)
        emit({"f": f.describe(), "table": f.table(args.k_max),
              "acceptable": acc.ok, "reasons": acc.reasons})
        return 0
    if not args.startree:
        raise CliError(EXIT_PARSE, "growth needs --f/--g or --startree")
    spec = load_spec(args)
    seq = load_sequence(args)
    graph = spec.truncate(args.k_max).graph(seq)
    if args.kind == "ball":
        table = gr.ball_growth(graph, "v0", args.k_max)
    else:
        N = ig.compute_ordering(graph, "v0", 1)
        if args.kind == "stabilizer":
            table = gr.stabilizer_growth(N, "v0", args.k_max, v0_only=args.v0_only)
        else:
            try:
                table = gr.p_stabilizer_growth(N, "v0", args.p, args.k_max, v0_only=args.v0_only)
            except ValueError as exc:
                raise CliError(EXIT_PRECONDITION, str(exc))
    out = {"kind": args.kind, "table": list(table.values)}
    if args.f:
        out["comparison"] = gr.equivalent(table, parse_growth_arg(args.f),
                                          k_max=args.k_max).to_json()
    emit(out)
    return 0


def cmd_export(args) -> int:
    if args.graph:
        g = load_graph(args.graph)
    else:
        spec = load_spec(args)
        depth = args.depth if args.depth is not None else spec.max_level
        if depth is None:
            raise CliError(EXIT_PRECONDITION, "infinite spec: pass --depth")
        g = spec.truncate(depth).graph(load_sequence(args))
    if args.format == "dot":
        N = None
        if args.ordering:
            try:
                N = ig.compute_ordering(g, args.base or min(g.vertices), 1)
            except ig.NonUnimodular as exc:
                raise CliError(EXIT_PRECONDITION, str(exc))
        print(ig.to_dot(g, N), end="")
    else:
        emit(g.to_json())
    return 0


# parser ------------------------------------------------------------------------

def _startree_flags(p: argparse.ArgumentParser, required: bool = False) -> None:
    p.add_argument("--startree", required=required,
                   help="'ray', 'star', or a star-tree spec JSON file")
    p.add_argument("--m", type=int, default=4, help="center degree (default 4)")
    p.add_argument("--n", type=int, default=3, help="V1 degree in the cover (default 3)")
    p.add_argument("--s", help="admissible sequence, e.g. '(3,6)'; default canonical")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="treelattice",
                                     description="Edge-indexed star trees and their lattices.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check structural invariants of a graph")
    p.add_argument("--graph", required=True)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("order", help="compute an ordering from a base vertex")
    p.add_argument("--graph", required=True)
    p.add_argument("--base", required=True)
    p.add_argument("--value", type=parse_fraction, default=Fraction(1))
    p.add_argument("--integral", action="store_true", help="rescale to the minimal integral ordering")
    p.set_defaults(func=cmd_order)

    for name, func in (("cover-check", cmd_cover_check), ("cover-degree", cmd_cover_degree)):
        p = sub.add_parser(name, help="verify a cover" if name == "cover-check" else "degree of a cover")
        p.add_argument("--cover", required=True)
        p.add_argument("--source", help="source graph JSON if not embedded")
        p.add_argument("--target", help="target graph JSON if not embedded")
        p.set_defaults(func=func)

    p = sub.add_parser("startree", help="truncate and index a star tree")
    _startree_flags(p, required=True)
    p.add_argument("--depth", type=int)
    p.add_argument("--format", choices=("json", "dot", "spec"), default="json")
    p.add_argument("--ordering", action="store_true", help="label DOT vertices with N")
    p.set_defaults(func=cmd_startree)

    p = sub.add_parser("covolume", help="exact covolume of a star tree or finite graph")
    _startree_flags(p)
    p.add_argument("--graph", help="finite edge-indexed graph JSON instead of a star tree")
    p.add_argument("--base", help="base vertex for --graph")
    p.add_argument("--selector", choices=("v0", "v1", "all"), default="v0")
    p.add_argument("--depth", type=int, help="report partial sum + tail bound at this depth")
    p.set_defaults(func=cmd_covolume)

    p = sub.add_parser("realize", help="realize a covolume (and growth types)")
    p.add_argument("--kappa", type=parse_fraction, required=True)
    p.add_argument("--m", type=int, default=4)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--s", help="admissible sequence; default canonical")
    p.add_argument("--f", help="growth function, e.g. 'exp:3/2'; default constant 1")
    p.add_argument("--digit-bound", type=int)
    p.add_argument("--growth-depth", type=int, default=12)
    p.add_argument("--samples", type=int, default=0,
                   help="instead, sample this many digit sequences with the same covolume")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("shrink", help="divide covolume by |H| with the semidirect tower")
    _startree_flags(p, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--depth", type=int, help="also check the grouping truncated at this depth")
    p.set_defaults(func=cmd_shrink)

    p = sub.add_parser("growth", help="tabulate or compare growth functions")
    _startree_flags(p)
    p.add_argument("--f")
    p.add_argument("--g")
    p.add_argument("--kind", choices=("ball", "stabilizer", "p-stabilizer"), default="ball")
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--v0-only", action="store_true")
    p.add_argument("--k-max", type=int, default=12)
    p.set_defaults(func=cmd_growth)

    p = sub.add_parser("export", help="export a graph as JSON or DOT")
    _startree_flags(p)
    p.add_argument("--graph")
    p.add_argument("--base")
    p.add_argument("--depth", type=int)
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.add_argument("--ordering", action="store_true")
    p.set_defaults(func=cmd_export)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # argparse exits with 2 on bad flags
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
