"""Command line front end.

Subcommands:

- ``solve``: winner of one graph (edge-list file, graph6 string, or family)
- ``census``: solve every connected n-vertex graph, reproduce the table
- ``tree``: the tree algorithm, optionally explaining the screens
- ``verify``: exhaustively verify a named strategy on its domain
- ``gadget``: emit a reduction construction as an edge list + anchor map
- ``play``: interactive text game against the exact solver

Exit codes: 0 answer computed, 1 input error, 2 node budget exceeded.
JSON output (``--json``) always carries one payload key (``winner``,
``counts``, or ``report``) plus ``meta`` {nodes, millis, budget}.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Optional

from . import census as census_mod
from . import graphs, hardness, strategies, trees
from .engine import Move, P1, P2, new_game
from .graphs import BudgetExceededError, Graph, GraphError
from .solver import DEFAULT_TT_BITS, involution_verdict, solve, solve_partial


class InputError(ValueError):
    pass


def _load_graph(args: argparse.Namespace) -> Graph:
    sources = [s for s in (args.edges, args.graph6, args.family) if s]
    if len(sources) != 1:
        raise InputError("exactly one of --edges/--graph6/--family is required")
    if args.edges:
        try:
            with open(args.edges, "r", encoding="ascii") as fh:
                return graphs.parse_edge_list(fh.read())
        except OSError as exc:
            raise InputError(f"cannot read {args.edges}: {exc}") from None
    if args.graph6:
        return graphs.graph6_decode(args.graph6)
    return _family(args.family)


def _family(spec: str) -> Graph:
    """Parse family specs like k_n:7, k_pq:3,5, grid:2,7, prism:5, path:9."""
    try:
        name, _, params = spec.partition(":")
        nums = [int(x) for x in params.split(",")] if params else []
        if name == "k_n":
            (n,) = nums
            return graphs.complete(n)
        if name == "k_pq":
            p, q = nums
            return graphs.complete_bipartite(p, q)
        if name == "grid":
            m, n = nums
            return graphs.grid(m, n)
        if name == "prism":
            (n,) = nums
            return graphs.prism(n)
        if name == "path":
            (n,) = nums
            return graphs.path(n)
        if name == "cycle":
            (n,) = nums
            return graphs.cycle(n)
    except (ValueError, GraphError) as exc:
        raise InputError(f"bad family spec {spec!r}: {exc}") from None
    raise InputError(f"unknown family {name!r}")


def _emit(args, payload_key: str, payload, nodes: int, millis: float) -> None:
    if args.json:
        doc = {
            payload_key: payload,
            "meta": {
                "nodes": nodes,
                "millis": round(millis, 3),
                "budget": args.budget,
            },
        }
        print(json.dumps(doc, indent=2, sort_keys=True))


def cmd_solve(args) -> int:
    g = _load_graph(args)
    t0 = time.perf_counter()
    outcome = solve(
        g,
        budget=args.budget,
        tt_bits=args.tt_bits,
        symmetry=args.symmetry,
        cut_edge_prune=args.cut_edge_prune,
    )
    millis = (time.perf_counter() - t0) * 1000
    if not args.json:
        witness = (
            f"  winning first move: {outcome.witness_first_move}"
            if outcome.witness_first_move
            else ""
        )
        print(f"P{outcome.winner} wins{witness}")
        print(f"nodes={outcome.nodes} millis={millis:.1f}")
    _emit(args, "winner", outcome.as_dict(), outcome.nodes, millis)
    return 0


def cmd_census(args) -> int:
    t0 = time.perf_counter()
    report = census_mod.run_census(
        args.n,
        graph6_file=args.graph6_file,
        long_running=args.long_running,
        jobs=args.jobs,
        budget=args.budget,
        tt_bits=args.tt_bits,
    )
    millis = (time.perf_counter() - t0) * 1000
    if not args.json:
        print(census_mod.format_report(report))
        print(f"millis={millis:.1f}")
    nodes = sum(e.nodes for e in report.entries)
    _emit(args, "counts", report.as_dict(args.emit_p1_list), nodes, millis)
    return 0


def cmd_tree(args) -> int:
    g = _load_graph(args)
    t0 = time.perf_counter()
    analysis = trees.analyze_tree(g)
    outcome = trees.solve_tree(g, budget=args.budget, tt_bits=args.tt_bits)
    millis = (time.perf_counter() - t0) * 1000
    if not args.json:
        print(f"P{outcome.winner} wins")
        if args.explain:
            print(f"centers: {list(analysis.centers)}")
            print(f"radius={analysis.radius} diameter={analysis.diameter}")
            if not analysis.conditions_met:
                print(f"screened out: {analysis.failed_clause}")
            elif outcome.winner == P1:
                print(f"winning opening: {outcome.witness_first_move}")
                refuted = [
                    str(m)
                    for m in analysis.viable_first_moves
                    if m != outcome.witness_first_move
                ]
                if refuted:
                    print(f"other screened openings: {refuted}")
            else:
                print(
                    "screens passed but every opening loses: "
                    + ", ".join(str(m) for m in analysis.viable_first_moves)
                )
    payload = outcome.as_dict()
    payload["analysis"] = {
        "centers": list(analysis.centers),
        "radius": analysis.radius,
        "diameter": analysis.diameter,
        "conditions_met": analysis.conditions_met,
        "failed_clause": analysis.failed_clause,
        "candidate_first_moves": [
            m.as_record() for m in analysis.candidate_first_moves
        ],
    }
    _emit(args, "winner", payload, outcome.nodes, millis)
    return 0


def cmd_verify(args) -> int:
    t0 = time.perf_counter()
    if args.strategy == "copycat":
        g = _load_graph(args)
        phi = involution_verdict(g)
        if phi is None:
            raise InputError("graph has no fixed-edge-free involution")
        strategy = strategies.copycat_strategy(g, phi)
    elif args.strategy == "grid":
        (n,) = _params(args, 1)
        g = graphs.grid(2, n)
        strategy = strategies.grid_p1_strategy(n)
    elif args.strategy == "prism":
        (n,) = _params(args, 1)
        g = graphs.prism(n)
        strategy = strategies.prism_p2_strategy(n)
    elif args.strategy == "k3q":
        (q,) = _params(args, 1)
        g = graphs.complete_bipartite(3, q)
        strategy = strategies.k3q_p1_strategy(q)
        stats = strategies.random_adversary_playouts(
            g, strategy, args.playouts, seed=args.seed
        )
        millis = (time.perf_counter() - t0) * 1000
        ok = stats.illegal == 0 and stats.wins == stats.playouts
        if not args.json:
            print(
                f"{'verified' if ok else 'FAILED'} (randomized): "
                f"{stats.wins}/{stats.playouts} wins, {stats.illegal} illegal"
            )
        _emit(
            args,
            "report",
            {
                "strategy": strategy.name,
                "mode": "randomized",
                "verified": ok,
                "wins": stats.wins,
                "playouts": stats.playouts,
                "illegal": stats.illegal,
            },
            0,
            millis,
        )
        return 0 if ok else 1
    else:
        raise InputError(f"unknown strategy {args.strategy!r}")
    result = strategies.verify_strategy(g, strategy)
    millis = (time.perf_counter() - t0) * 1000
    if not args.json:
        if result.verified:
            print(f"verified: {strategy.name} ({result.playouts} playouts)")
        else:
            print(f"COUNTEREXAMPLE against {strategy.name}: {result.reason}")
            print(result.transcript())
    _emit(
        args,
        "report",
        {
            "strategy": strategy.name,
            "mode": "exhaustive",
            "verified": result.verified,
            "playouts": result.playouts,
            "reason": result.reason,
            "counterexample": (
                json.loads(result.transcript()) if result.counterexample else None
            ),
        },
        0,
        millis,
    )
    return 0 if result.verified else 1


def _params(args, count: int) -> list[int]:
    if not args.params:
        raise InputError("--params required for this strategy")
    nums = [int(x) for x in args.params.split(",")]
    if len(nums) != count:
        raise InputError(f"expected {count} parameter(s)")
    return nums


def cmd_gadget(args) -> int:
    t0 = time.perf_counter()
    if args.type == "fig11":
        host = _load_graph(args)
        if not args.edge:
            raise InputError("--edge u,v required for the edge gadget")
        u, v = (int(x) for x in args.edge.split(","))
        rep = hardness.build_fig11_gadget(host, (u, v))
        result, anchors = rep.result, rep.anchors
    elif args.type == "pendant":
        host = _load_graph(args)
        if args.vertex is None:
            raise InputError("--vertex w required for the pendant graph")
        result = hardness.build_pendant_graph(host, args.vertex)
        anchors = {"w": args.vertex, "u": result.n - 1}
    elif args.type == "thm55":
        host = _load_graph(args)
        if args.vertex is None:
            raise InputError("--vertex w required")
        join = hardness.build_thm55_graph(host, args.vertex)
        result = join.result
        anchors = {
            "w": join.w,
            "u": join.u,
            "c": join.c,
            "path_first": join.path_first,
            "path_last": join.path_last,
        }
    else:
        raise InputError(f"unknown gadget type {args.type!r}")
    millis = (time.perf_counter() - t0) * 1000
    text = graphs.format_edge_list(result)
    if args.out:
        with open(args.out, "w", encoding="ascii") as fh:
            fh.write(text)
        with open(args.out + ".anchors.json", "w", encoding="ascii") as fh:
            json.dump(anchors, fh, indent=2, sort_keys=True)
        if not args.json:
            print(f"wrote {args.out} and {args.out}.anchors.json")
    elif not args.json:
        sys.stdout.write(text)
        print(json.dumps(anchors, sort_keys=True))
    _emit(
        args,
        "report",
        {"n": result.n, "m": result.m, "anchors": anchors},
        0,
        millis,
    )
    return 0


def cmd_play(args) -> int:
    g = _load_graph(args)
    human = args.human
    game = new_game(g)
    print(graphs.format_edge_list(g).rstrip())
    print(f"you are P{human}; enter moves as 'tail head'")
    while True:
        moves = game.legal_moves()
        if not moves:
            loser = game.turn
            print(f"P{loser} cannot move: P{2 if loser == 1 else 1} wins")
            return 0
        if game.turn == human:
            try:
                line = input(f"P{human} move> ").strip()
            except EOFError:
                print("input closed; resigning")
                return 0
            parts = line.split()
            if len(parts) != 2:
                print("enter two vertex numbers")
                continue
            try:
                mv = Move(g.edge_index(int(parts[0]), int(parts[1])), int(parts[0]), int(parts[1]))
            except (ValueError, GraphError):
                print("no such edge; try again")
                continue
            if not game.is_legal(mv):
                print("illegal move (used edge or wrong origin); try again")
                continue
            game.apply(mv)
        else:
            best = None
            for mv in moves:
                game.apply(mv)
                try:
                    opponent_wins = solve_partial(
                        game, budget=args.budget, tt_bits=args.tt_bits
                    )
                finally:
                    game.undo()
                if not opponent_wins:
                    best = mv
                    break
            chosen = best if best is not None else moves[0]
            tag = "" if best is not None else " (lost position)"
            print(f"engine plays {chosen}{tag}")
            game.apply(chosen)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trailtrap",
        description="Exact solving and strategy verification for Trail Trap",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_input=True):
        p.add_argument("--json", action="store_true", help="emit JSON")
        p.add_argument("--budget", type=int, default=None, help="node budget")
        p.add_argument("--tt-bits", type=int, default=DEFAULT_TT_BITS)
        if with_input:
            p.add_argument("--edges", help="edge-list file (first line 'n m')")
            p.add_argument("--graph6", help="graph6 string")
            p.add_argument(
                "--family",
                help="k_n:7 | k_pq:3,5 | grid:2,7 | prism:5 | path:9 | cycle:6",
            )

    p = sub.add_parser("solve", help="winner of one graph")
    add_common(p)
    p.add_argument("--symmetry", action="store_true", help="orbit-reduce openings")
    p.add_argument(
        "--cut-edge-prune",
        action="store_true",
        help="discard openings refuted by the two-edge-deletion criterion",
    )
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("census", help="solve all connected n-vertex graphs")
    add_common(p, with_input=False)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--graph6-file", help="file with one graph6 per line")
    p.add_argument(
        "--long-running",
        action="store_true",
        help="use the built-in subset enumerator even for n=7",
    )
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--emit-p1-list", action="store_true")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("tree", help="tree algorithm")
    add_common(p)
    p.add_argument("--explain", action="store_true")
    p.set_defaults(func=cmd_tree)

    p = sub.add_parser("verify", help="verify a strategy")
    add_common(p)
    p.add_argument(
        "--strategy",
        required=True,
        choices=["copycat", "grid", "prism", "k3q"],
    )
    p.add_argument("--params", help="strategy parameters, e.g. 7 or 3,5")
    p.add_argument("--playouts", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gadget", help="emit a reduction construction")
    add_common(p)
    p.add_argument("--type", required=True, choices=["fig11", "pendant", "thm55"])
    p.add_argument("--edge", help="u,v (fig11)")
    p.add_argument("--vertex", type=int, help="w (pendant/thm55)")
    p.add_argument("--out", help="output edge-list path")
    p.set_defaults(func=cmd_gadget)

    p = sub.add_parser("play", help="interactive game against the solver")
    add_common(p)
    p.add_argument("--human", type=int, default=1, choices=[1, 2])
    p.set_defaults(func=cmd_play)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceededError as exc:
        print(f"budget exceeded after {exc.nodes} nodes", file=sys.stderr)
        return 2
    except (InputError, GraphError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
