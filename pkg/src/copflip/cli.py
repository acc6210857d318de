"""Command-line entry point: ``copflip <command> ...``.

Exit codes: 0 success, 1 a checked inequality or strategy failed, 2 usage
or input error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Optional, Sequence

from . import bounds
from .colouring import SizeGuardError, degeneracy, scol_bruteforce, scol_exact, scol_greedy, wcol_exact
from .copgame import copwidth_decide, copwidth_exact
from .flipgame import FlipError, flipwidth_decide, flipwidth_exact, lift_cop_strategy, pi_k
from .graph import FAMILIES, FamilySpec, Graph, GraphError, generate, parse_graph, serialize_graph
from .ordering import VertexOrder, parse_order
from .strategy import verify_all_robbers

log = logging.getLogger("copflip")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read_graph(args) -> Graph:
    src = args.input
    if src in (None, "-"):
        text = sys.stdin.read()
    else:
        with open(src, encoding="utf-8") as fh:
            text = fh.read()
    return parse_graph(text)


def _read_order(path: Optional[str], g: Graph, r: int) -> VertexOrder:
    if path is None:
        return scol_exact(g, 4 * r)[1]
    with open(path, encoding="utf-8") as fh:
        order = parse_order(fh.read())
    if len(order) != g.n:
        raise UsageError(f"order has {len(order)} vertices, graph has {g.n}")
    return order


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True))


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_gen(args) -> int:
    spec = FamilySpec(args.family, n=args.n, a=args.a, b=args.b, p=args.p, seed=args.seed)
    g = generate(spec)
    if args.json:
        _emit({"family": spec.label(), "n": g.n, "edges": [list(e) for e in g.edges()]})
    else:
        sys.stdout.write(serialize_graph(g))
    return EXIT_OK


def cmd_scol(args) -> int:
    g = _read_graph(args)
    if args.greedy:
        value, order = scol_greedy(g, args.r)
        _emit({"value": value, "order": list(order.seq), "method": "greedy"})
    elif args.bruteforce:
        _emit({"value": scol_bruteforce(g, args.r), "method": "bruteforce"})
    else:
        value, order = scol_exact(g, args.r)
        _emit({"value": value, "order": list(order.seq), "method": "exact"})
    return EXIT_OK


def cmd_wcol(args) -> int:
    g = _read_graph(args)
    value, order = wcol_exact(g, args.r)
    _emit({"value": value, "order": list(order.seq)})
    return EXIT_OK


def cmd_degeneracy(args) -> int:
    g = _read_graph(args)
    value, order = degeneracy(g)
    _emit({"value": value, "order": list(order.seq)})
    return EXIT_OK


def cmd_copwidth(args) -> int:
    g = _read_graph(args)
    if args.k is not None:
        dec = copwidth_decide(g, args.r, args.k)
        _emit({"cops_win": dec.cops_win, "states_explored": dec.states_explored})
    else:
        explored = 0
        value = copwidth_exact(g, args.r)
        for k in range(1, value + 1):
            explored += copwidth_decide(g, args.r, k).states_explored
        _emit({"copwidth": value, "states_explored": explored})
    return EXIT_OK


def cmd_flipwidth(args) -> int:
    g = _read_graph(args)
    if args.k is not None:
        dec = flipwidth_decide(g, args.r, args.k)
        _emit({"flipper_wins": dec.flipper_wins, "states_explored": dec.states_explored})
    else:
        value = flipwidth_exact(g, args.r)
        _emit({"flipwidth": value if value is not None else "> 2"})
    return EXIT_OK


def cmd_strategy(args) -> int:
    g = _read_graph(args)
    order = _read_order(args.order, g, args.r)
    rep = verify_all_robbers(g, order, args.r, literal=args.literal)
    _emit({
        "ok": rep.ok, "max_cops": rep.max_cops, "rounds_worst_case": rep.max_rounds,
        "order_cost_4r": rep.bound, "order": list(order.seq), "invariants": rep.invariants,
        "problems": rep.problems,
    })
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_lift(args) -> int:
    g = _read_graph(args)
    order = _read_order(args.order, g, args.r)
    rep = lift_cop_strategy(g, order, args.r)
    k = rep.max_cops
    _emit({
        "ok": rep.ok, "max_width": rep.max_width, "max_cops": k, "pi_k_plus_k": pi_k(g, k) + k,
        "rounds_worst_case": rep.max_rounds, "order": list(order.seq), "problems": rep.problems,
    })
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_bounds(args) -> int:
    fn, names = bounds.FORMULAS[args.formula]
    values = []
    for name in names:
        val = getattr(args, name)
        if val is None:
            raise UsageError(f"--formula {args.formula} needs --{name}")
        values.append(val)
    params = dict(zip(names, values))
    _emit({"formula": args.formula, "params": params, "value": fn(*values)})
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            cfg = bounds.VerifyConfig.from_dict(json.load(fh))
    else:
        fams = []
        for tok in args.family or []:
            fams.append(_family_from_token(tok, args.seed))
        cfg = bounds.VerifyConfig(radii=tuple(args.radii), labeled_max_n=args.labeled_max_n,
                                  families=tuple(fams), jobs=args.jobs)
    reports = bounds.run_verification(cfg)
    out = sys.stdout if args.output in (None, "-") else open(args.output, "w", encoding="utf-8")
    try:
        for rep in reports:
            out.write(rep.to_json() + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            fh.write(bounds.reports_to_csv(reports))
    failures = [(rep.graph, rep.r, c.name) for rep in reports for c in rep.failed]
    summary = bounds.summarize(reports)
    print(json.dumps({"instances": len(reports), "failures": len(failures), "checks": summary},
                     sort_keys=True), file=sys.stderr)
    for graph, r, name in failures[:20]:
        print(f"FAIL {graph} r={r}: {name}", file=sys.stderr)
    return EXIT_FAIL if failures else EXIT_OK


def _family_from_token(tok: str, seed: int) -> FamilySpec:
    """``name:key=val,key=val`` e.g. ``grid:a=3,b=3`` or ``apollonian:n=9``."""
    name, _, rest = tok.partition(":")
    kwargs: dict = {"seed": seed}
    for part in filter(None, rest.split(",")):
        key, _, val = part.partition("=")
        if key not in ("n", "a", "b", "p", "seed"):
            raise UsageError(f"unknown family parameter {key!r} in {tok!r}")
        kwargs[key] = float(val) if key == "p" else int(val)
    return FamilySpec(name, **kwargs)


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    # accepted before or after the subcommand; the subcommand copy only
    # overrides when actually given
    def dflt(value):
        return argparse.SUPPRESS if suppress else value

    parser.add_argument("--input", "-i", default=dflt("-"), help="edge-list file, '-' for stdin")
    parser.add_argument("--json", action="store_true", default=dflt(False),
                        help="JSON output where text is the default")
    parser.add_argument("--seed", type=int, default=dflt(0), help="seed for random families")
    parser.add_argument("-v", "--verbose", action="store_true", default=dflt(False))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)

    p = argparse.ArgumentParser(prog="copflip", description=__doc__.splitlines()[0])
    _global_flags(p, suppress=False)
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", parents=[common], help="generate a graph family")
    g.add_argument("--family", required=True, choices=FAMILIES)
    g.add_argument("--n", type=int, default=0)
    g.add_argument("--a", type=int, default=0)
    g.add_argument("--b", type=int, default=0)
    g.add_argument("--p", type=float, default=0.5)
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("scol", parents=[common], help="strong colouring number")
    mode = s.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", help="subset DP (default)")
    mode.add_argument("--greedy", action="store_true")
    mode.add_argument("--bruteforce", action="store_true")
    s.add_argument("-r", type=int, required=True)
    s.set_defaults(func=cmd_scol)

    w = sub.add_parser("wcol", parents=[common], help="weak colouring number (n <= 8)")
    w.add_argument("--exact", action="store_true", help="accepted for symmetry; always exact")
    w.add_argument("-r", type=int, required=True)
    w.set_defaults(func=cmd_wcol)

    d = sub.add_parser("degeneracy", parents=[common], help="degeneracy and its order")
    d.set_defaults(func=cmd_degeneracy)

    c = sub.add_parser("copwidth", parents=[common], help="exact radius-r cop-width")
    c.add_argument("--exact", action="store_true", help="accepted for symmetry; always exact")
    c.add_argument("-r", type=int, required=True)
    c.add_argument("--k", type=int, help="decide a single width instead of minimising")
    c.set_defaults(func=cmd_copwidth)

    f = sub.add_parser("flipwidth", parents=[common], help="exact radius-r flip-width (n <= 5, k <= 2)")
    f.add_argument("--exact", action="store_true", help="accepted for symmetry; always exact")
    f.add_argument("-r", type=int, required=True)
    f.add_argument("--k", type=int)
    f.set_defaults(func=cmd_flipwidth)

    st = sub.add_parser("strategy", parents=[common], help="verify the order-guided cop strategy")
    st.add_argument("-r", type=int, required=True)
    st.add_argument("--order", help="order file; defaults to the exact scol_4r witness")
    st.add_argument("--literal", action="store_true", help="strict back-reach sets (known to fail)")
    st.set_defaults(func=cmd_strategy)

    li = sub.add_parser("lift", parents=[common], help="verify the flipper lift of the cop strategy")
    li.add_argument("-r", type=int, required=True)
    li.add_argument("--order")
    li.set_defaults(func=cmd_lift)

    b = sub.add_parser("bounds", parents=[common], help="evaluate a closed-form bound")
    b.add_argument("--formula", required=True, choices=sorted(bounds.FORMULAS))
    for name in ("t", "r", "g", "k", "wcol", "cw", "pi"):
        b.add_argument(f"--{name}", type=int)
    b.set_defaults(func=cmd_bounds)

    v = sub.add_parser("verify", parents=[common], help="run the corpus verification")
    v.add_argument("--config", help="JSON config; overrides the flags below")
    v.add_argument("--labeled-max-n", type=int, default=0)
    v.add_argument("--family", action="append", help="e.g. apollonian:n=9 or grid:a=3,b=3")
    v.add_argument("--radii", type=int, nargs="+", default=[1, 2])
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--output", "-o", help="JSON-lines destination, default stdout")
    v.add_argument("--csv", help="also write a CSV export")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, GraphError, SizeGuardError, FlipError, ValueError, OverflowError, OSError) as exc:
        print(f"copflip: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
