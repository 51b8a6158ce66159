"""Command-line front end.

One invocation parses two systems, builds the requested game, solves
it, and prints a report.  Exit status: 0 success, 1 unreadable or
invalid input, 2 distance-kind or label incompatibility, 3 oracle
disagreement under --oracle-check.
"""

import argparse
import json
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

from .gamegraph import build_bisim_game, build_sim_game, to_dot
from .lts import ParseError, parse_label_distance, parse_lts
from .oracle import GuardError, bounded_minimax, enumerate_positional_value
from .solvers import solve
from .tracedist import DistanceKind, Kind, KindError
from .values import fmt_value, is_inf, parse_rational

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_KIND = 2
EXIT_ORACLE = 3


@dataclass
class RunConfig:
    lts_a: str
    lts_b: str
    mode: str = "sim"
    distance: str = "discrete"
    lam: Fraction | None = None
    epsilon: Fraction = Fraction(1, 10**6)
    label_dist: str | None = None
    emit_game: str | None = None
    oracle_check: int | None = None
    output: str = "json"


def _read(path):
    with open(path, encoding="utf-8") as handle:
        return handle.read()


def _make_kind(cfg: RunConfig, alphabet) -> DistanceKind:
    table = None
    if cfg.label_dist is not None:
        table = parse_label_distance(_read(cfg.label_dist), alphabet)
    sel = Kind(cfg.distance)
    if sel is Kind.DISCOUNTED:
        if cfg.lam is None:
            raise KindError("--distance discounted requires --lambda")
        return DistanceKind.discounted(cfg.lam, table)
    if cfg.lam is not None:
        raise KindError("--lambda only applies to --distance discounted")
    if sel is Kind.POINTWISE:
        return DistanceKind.pointwise(table)
    if sel is Kind.LIMAVG:
        return DistanceKind.limit_average(table)
    if table is not None:
        raise KindError("--label-dist only applies to pointwise, discounted, limavg")
    return DistanceKind(sel)


def _oracle_verdict(game, kind, value, horizon, epsilon):
    tol = epsilon if kind.selector is Kind.DISCOUNTED else Fraction(0)
    lo, hi = bounded_minimax(game, kind, horizon)
    in_bounds = lo - tol <= value <= hi + tol
    positional = None
    pos_ok = True
    if kind.selector is not Kind.MAXLEAD:
        try:
            positional = enumerate_positional_value(game, kind)
        except GuardError:
            positional = None
        else:
            if is_inf(positional) or is_inf(value):
                pos_ok = positional == value
            else:
                pos_ok = abs(positional - value) <= tol
    verdict = {
        "positional": None if positional is None else fmt_value(positional),
        "bounds": [fmt_value(lo), fmt_value(hi)],
        "agree": bool(in_bounds and pos_ok),
    }
    return verdict


def run(cfg: RunConfig):
    """Execute one configuration; returns (exit_code, report_or_None).

    Diagnostics go to stderr; the report covers value, exactness, game
    size, solver iterations, wall time, and the oracle verdict when
    requested."""
    try:
        lts_a = parse_lts(_read(cfg.lts_a))
        lts_b = parse_lts(_read(cfg.lts_b))
    except (OSError, ParseError) as err:
        print("error: %s" % err, file=sys.stderr)
        return EXIT_INPUT, None
    try:
        kind = _make_kind(cfg, lts_a.labels | lts_b.labels)
        build = build_sim_game if cfg.mode == "sim" else build_bisim_game
        game = build(lts_a, lts_b, kind)
    except (OSError, ParseError) as err:
        print("error: %s" % err, file=sys.stderr)
        return EXIT_INPUT, None
    except (KindError, ValueError) as err:
        print("error: %s" % err, file=sys.stderr)
        return EXIT_KIND, None
    if cfg.emit_game is not None:
        with open(cfg.emit_game, "w", encoding="utf-8") as handle:
            handle.write(to_dot(game))
    started = time.perf_counter()
    try:
        result = solve(game, kind, cfg.epsilon)
    except KindError as err:
        print("error: %s" % err, file=sys.stderr)
        return EXIT_KIND, None
    elapsed_ms = int((time.perf_counter() - started) * 1000)
    report = {
        "value": fmt_value(result.value),
        "exact": result.exact,
    }
    if not result.exact:
        report["epsilon"] = str(result.epsilon)
    report.update({
        "mode": cfg.mode,
        "distance": cfg.distance,
        "game_nodes": len(game.edges),
        "game_edges": game.num_edges,
        "iterations": result.iterations,
        "elapsed_ms": elapsed_ms,
    })
    code = EXIT_OK
    if cfg.oracle_check is not None:
        verdict = _oracle_verdict(game, kind, result.value, cfg.oracle_check, cfg.epsilon)
        report["oracle"] = verdict
        if not verdict["agree"]:
            print("error: solver value %s disagrees with the oracle" % report["value"],
                  file=sys.stderr)
            code = EXIT_ORACLE
    return code, report


def _print_report(report, output):
    if output == "json":
        print(json.dumps(report, indent=2))
    else:
        for key, val in report.items():
            if key == "oracle":
                val = "%s (positional=%s, bounds=[%s, %s])" % (
                    "agree" if val["agree"] else "DISAGREE",
                    val["positional"], val["bounds"][0], val["bounds"][1])
            print("%s: %s" % (key, val))


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ltsdist",
        description="Compute a simulation or bisimulation distance between two "
                    "labeled transition systems.")
    parser.add_argument("lts_a", help="first system (the simulated one for --mode sim)")
    parser.add_argument("lts_b", help="second system")
    parser.add_argument("--mode", choices=["sim", "bisim"], default="sim")
    parser.add_argument("--distance", required=True,
                        choices=[k.value for k in Kind])
    parser.add_argument("--lambda", dest="lam", type=parse_rational, default=None,
                        metavar="Q", help="discount factor in [0, 1), discounted only")
    parser.add_argument("--epsilon", type=parse_rational, default=Fraction(1, 10**6),
                        metavar="Q", help="tolerance for the discounted solver")
    parser.add_argument("--label-dist", default=None, metavar="FILE",
                        help="label distance table (pointwise, discounted, limavg)")
    parser.add_argument("--emit-game", default=None, metavar="FILE",
                        help="write the built game as DOT before solving")
    parser.add_argument("--oracle-check", type=int, default=None, metavar="H",
                        help="cross-check against the oracles with minimax horizon H")
    parser.add_argument("--output", choices=["json", "plain"], default="json")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.epsilon <= 0:
        build_parser().error("--epsilon must be positive")
    cfg = RunConfig(
        lts_a=args.lts_a,
        lts_b=args.lts_b,
        mode=args.mode,
        distance=args.distance,
        lam=args.lam,
        epsilon=args.epsilon,
        label_dist=args.label_dist,
        emit_game=args.emit_game,
        oracle_check=args.oracle_check,
        output=args.output,
    )
    code, report = run(cfg)
    if report is not None:
        _print_report(report, cfg.output)
    return code


if __name__ == "__main__":
    sys.exit(main())
