"""Command line entry point: ``python -m reachsafe {solve,generate,bench,verify}``."""
from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

from .arena import GameSpec, Objective, parse_arena, serialize_arena
from .bench import emit_table, run_experiment_battery
from .errors import GameError
from .generator import ExperimentParams, GenConfig, generate_arena
from .oracle import MAX_TREE_NODES, Verdict, oracle_attractor, oracle_game_tree
from .solvers import ENGINES, MpConfig, solve
from .strategy import format_strategies, synthesize


def _configure_logging():
    level = os.environ.get("GAMES_LOG", "warning").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)


def _write(text: str, out) -> None:
    if out is None or str(out) == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _fmt(nodes, labels=None) -> str:
    ids = sorted(nodes)
    if labels:
        ids = [labels[v] for v in ids]
    return " ".join(map(str, ids))


def cmd_solve(args) -> int:
    spec = parse_arena(Path(args.arena).read_bytes())
    res = solve(spec, args.engine, MpConfig(args.threshold))
    print(f"win_reach: {_fmt(res.win_reach, spec.labels)}")
    print(f"win_safe: {_fmt(res.win_safe, spec.labels)}")
    if args.strategy:
        _, strategies = synthesize(spec)
        print(format_strategies(strategies, spec.labels))
    return 0


def cmd_generate(args) -> int:
    cfg = GenConfig(args.nodes, args.edges, args.self_loops, args.allow_isolated, args.seed)
    arena = generate_arena(cfg)
    spec = GameSpec(arena, frozenset(), Objective.SAFE)
    _write(f"# seed {args.seed} k 0\n" + serialize_arena(spec), args.output)
    return 0


def cmd_bench(args) -> int:
    params = ExperimentParams(args.nodes_min, args.nodes_max,
                              args.edges_per_node_min, args.edges_per_node_max,
                              args.ratio_min, args.ratio_max, args.experiments, args.seed)
    records = run_experiment_battery(params, repeats=args.repeats,
                                     include_improved=args.include_improved,
                                     dump_dir=Path.cwd())
    _write(emit_table(records, args.format), args.output)
    return 0


def cmd_verify(args) -> int:
    spec = parse_arena(Path(args.arena).read_bytes())
    reach_target = spec.target if spec.objective is Objective.REACH else spec.arena.nodes - spec.target
    expected = oracle_attractor(spec.arena, reach_target)
    ok = True
    for engine in ENGINES:
        res = solve(spec, engine)
        agree = res.win_reach == expected
        ok &= agree
        print(f"{engine:12s} {'agree' if agree else 'MISMATCH'} |win_reach|={len(res.win_reach)}")
    if spec.arena.num_nodes <= MAX_TREE_NODES:
        tree = frozenset(v for v in range(spec.arena.num_nodes)
                         if oracle_game_tree(spec.arena, reach_target, v) is Verdict.REACH_WINS)
        agree = tree == expected
        ok &= agree
        print(f"{'game-tree':12s} {'agree' if agree else 'MISMATCH'} |win_reach|={len(tree)}")
    else:
        print(f"{'game-tree':12s} skipped (more than {MAX_TREE_NODES} nodes)")
    print("all solvers agree" if ok else "solvers disagree")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="reachsafe", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve an arena file")
    p.add_argument("arena")
    p.add_argument("--engine", choices=sorted(ENGINES), default="mp")
    p.add_argument("--threshold", type=int, default=None)
    p.add_argument("--strategy", action="store_true", help="print memoryless strategies")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("generate", help="write a random arena (empty target)")
    p.add_argument("--nodes", type=int, required=True)
    p.add_argument("--edges", type=int, required=True)
    p.add_argument("--self-loops", action="store_true")
    p.add_argument("--allow-isolated", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("bench", help="run a timed experiment battery")
    p.add_argument("--nodes-min", type=int, required=True)
    p.add_argument("--nodes-max", type=int, required=True)
    p.add_argument("--edges-per-node-min", type=float, required=True)
    p.add_argument("--edges-per-node-max", type=float, required=True)
    p.add_argument("--ratio-min", type=float, required=True)
    p.add_argument("--ratio-max", type=float, required=True)
    p.add_argument("--experiments", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--repeats", type=int, default=1, help="report the median of k runs")
    p.add_argument("--include-improved", action="store_true",
                   help="also time the improved backward solver (not in the table)")
    p.add_argument("--format", choices=("csv", "markdown"), default="csv")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("verify", help="cross-check all solvers against the oracles")
    p.add_argument("arena")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    _configure_logging()
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GameError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
