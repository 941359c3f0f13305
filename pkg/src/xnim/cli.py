"""Command-line interface: solve, query, verify, analyze, play.

Tables are cached under a directory keyed by (family, n, k, bound) and
re-solved on demand unless --no-solve is given.  Exit codes: 0 success
or all checks pass, 1 a check failed, 2 usage, 3 resource or cache
problems, 4 a queried position exceeds the table bound, 5 the bound is
too small for the requested verification.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from .analysis import (
    check_balanced_np_criterion,
    check_bouton_criterion,
    check_exceptional_graph,
    check_moore_criterion,
    check_no_permutation_moves,
    check_no_star_to_star_moves,
    check_nonmonotonicity,
    check_zero_pile_closed_form,
    class_counts,
    detect_periodicity,
    remoteness_comparison,
    verify_relation_catalog,
)
from .classify import Classification, classify, exceptional_graph
from .errors import (
    CorruptTableError,
    InsufficientBoundError,
    OutOfBoundError,
    ResourceLimitError,
    XnimError,
)
from .persist import (
    export_csv_series,
    export_dot,
    export_jsonl,
    read_table,
    write_table,
)
from .positions import bouton_matrix, canonicalize, moore_vector, reduce_position, xi
from .rules import GameRule, exact, is_terminal, moore, nim, successors
from .solver import SolveTable, best_move, solve_outcomes

CATALOG_BOUND = 74  # smallest bound that admits every relation-catalog entry


@dataclass
class RunConfig:
    """Resolved common options shared by all subcommands."""

    bound: int
    threads: int | None
    cache: Path
    no_solve: bool


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _nonneg_int(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def _position(text: str) -> tuple[int, ...]:
    try:
        vals = tuple(int(p) for p in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated position: {text!r}")
    if any(v < 0 for v in vals):
        raise argparse.ArgumentTypeError("piles must be non-negative")
    return vals


def _config(args) -> RunConfig:
    cache = Path(
        args.cache or os.environ.get("XNIM_CACHE")
        or Path.home() / ".cache" / "xnim"
    )
    cache.mkdir(parents=True, exist_ok=True)
    if args.threads is not None:
        import numba

        numba.set_num_threads(min(args.threads, numba.config.NUMBA_NUM_THREADS))
    return RunConfig(
        bound=args.bound,
        threads=args.threads,
        cache=cache,
        no_solve=getattr(args, "no_solve", False),
    )


def _table_path(cfg: RunConfig, rule: GameRule, bound: int) -> Path:
    return cfg.cache / f"{rule.family}-{rule.n}-{rule.k}-b{bound}.xnim"


def _get_table(cfg: RunConfig, rule: GameRule, bound: int,
               remoteness: bool = True) -> SolveTable:
    path = _table_path(cfg, rule, bound)
    if path.exists():
        table = read_table(path)
        if (table.rule == rule and table.bound == bound
                and (table.has_remoteness() or not remoteness)):
            return table
    if cfg.no_solve:
        raise ResourceLimitError(f"no cached table at {path} and --no-solve given")
    t0 = time.perf_counter()
    table = solve_outcomes(rule, bound, remoteness=remoteness)
    write_table(table, path)
    print(f"solved {rule.label()} bound {bound}: {table.count} positions "
          f"in {time.perf_counter() - t0:.1f}s -> {path}", file=sys.stderr)
    return table


def _get_pair(cfg: RunConfig, bound: int) -> tuple[SolveTable, SolveTable]:
    et = _get_table(cfg, exact(5, 2), bound)
    mt = _get_table(cfg, moore(4, 2), bound)
    return et, mt


def _get_classification(cfg: RunConfig, bound: int) -> Classification:
    et, mt = _get_pair(cfg, bound)
    return classify(et, mt)


def _fmt(x) -> str:
    return ",".join(str(v) for v in x)


# --- solve -----------------------------------------------------------------


def cmd_solve(args) -> int:
    cfg = _config(args)
    if args.game is None:
        rules = [exact(args.n, args.k), moore(args.n - 1, args.k)]
    else:
        rules = [{"nim": lambda: nim(args.n), "moore": lambda: moore(args.n, args.k),
                  "exact": lambda: exact(args.n, args.k)}[args.game]()]
    for rule in rules:
        t0 = time.perf_counter()
        table = solve_outcomes(rule, cfg.bound, remoteness=not args.no_remoteness)
        dt = time.perf_counter() - t0
        out = Path(args.out) if args.out and len(rules) == 1 else _table_path(
            cfg, rule, cfg.bound
        )
        write_table(table, out)
        p = int(table.outcomes.sum())
        print(f"{rule.label()} bound {cfg.bound}: {table.count} positions, "
              f"{p} previous-player wins, {dt:.1f}s -> {out}")
    return 0


# --- query -----------------------------------------------------------------


def cmd_query(args) -> int:
    x = canonicalize(args.position)
    if len(x) != 5:
        print(f"error: expected 5 piles, got {len(x)}", file=sys.stderr)
        return 2
    if tuple(args.position) != x:
        print(f"note: canonicalized to {_fmt(x)}")
    bound = args.bound if args.bound is not None else x[-1]
    cfg = _config(args)
    cfg = RunConfig(bound=bound, threads=cfg.threads, cache=cfg.cache,
                    no_solve=cfg.no_solve)
    cls = _get_classification(cfg, bound)
    et, mt = cls.exact_table, cls.moore_table

    rank = et._rank_checked(x)
    red = reduce_position(x)
    mv = moore_vector(bouton_matrix(red))
    balanced = all(s % 3 == 0 for s in mv.sums)
    x3 = xi(mv, 3)

    print(f"position {_fmt(x)}")
    print(f"  {et.rule.label()} outcome: {et.outcome_of(x)}, "
          f"remoteness {et.remoteness_of(x)}")
    print(f"  reduction {_fmt(red)} {mt.rule.label()} outcome: {mt.outcome_of(red)}, "
          f"remoteness {mt.remoteness_of(red)}")
    reg = cls.regularity_of(x)
    print(f"  class {cls.class_of(x)}, quality {cls.quality_of(x)}"
          + (f", {reg}" if reg != "none" else ""))
    print(f"  reduced matrix balanced: {'yes' if balanced else 'no'}, xi3 = {x3}")
    if et.outcomes[rank]:
        print("  best move: none (previous player wins)")
    else:
        y = best_move(et.rule, et, x)
        print(f"  best move: {_fmt(y)} (remoteness {et.remoteness_of(y)})")
    return 0


# --- verify ----------------------------------------------------------------

VERIFY_TOKENS = ("bouton", "moore", "thm10", "lemma11", "obs5", "obs67", "obs8",
                 "props")


def _run_verify(cfg: RunConfig, token: str, args):
    if token == "bouton":
        return check_bouton_criterion(_get_table(cfg, nim(args.n), cfg.bound))
    if token == "moore":
        return check_moore_criterion(_get_table(cfg, moore(4, 2), cfg.bound))
    if token == "thm10":
        return check_zero_pile_closed_form(_get_table(cfg, exact(5, 2), cfg.bound))
    if token == "lemma11":
        return check_no_star_to_star_moves(_get_classification(cfg, cfg.bound))
    if token == "obs5":
        return check_no_permutation_moves(_get_classification(cfg, cfg.bound))
    if token == "obs8":
        return check_balanced_np_criterion(_get_classification(cfg, cfg.bound))
    if token == "obs67":
        graph = exceptional_graph(_get_classification(cfg, cfg.bound))
        return check_exceptional_graph(graph)
    if token == "props":
        return verify_relation_catalog(_get_classification(cfg, cfg.bound))
    raise ValueError(f"unknown check {token!r}")


def cmd_verify(args) -> int:
    cfg = _config(args)
    tokens = list(VERIFY_TOKENS) if args.which == "all" else [args.which]
    if args.which == "all" and cfg.bound < CATALOG_BOUND:
        tokens.remove("props")
        print(f"note: skipping props (needs bound >= {CATALOG_BOUND}, "
              f"have {cfg.bound})", file=sys.stderr)
    reports = [_run_verify(cfg, t, args) for t in tokens]
    if args.json:
        print(json.dumps([r.to_dict() for r in reports], indent=2))
    else:
        for r in reports:
            print(r.summary_line())
    return 0 if all(r.passed for r in reports) else 1


# --- analyze ---------------------------------------------------------------

ANALYZE_TOKENS = ("obs1", "obs2", "obs3", "obs4", "remoteness", "exceptional")


def cmd_analyze(args) -> int:
    cfg = _config(args)
    token = args.which
    out = {}

    if token in ("obs1", "obs2", "obs4"):
        cls = _get_classification(cfg, cfg.bound)
        series = class_counts(cls)
        if args.csv:
            export_csv_series(series, args.csv)
            print(f"wrote {args.csv}", file=sys.stderr)
        if token == "obs1":
            out = {
                "counts": series.global_counts(),
                "pn_share_of_p": series.pn_share_of_p(),
                "pn_share_of_all": series.pn_share_of_all(),
            }
        else:
            ratio = series.ratio_pp_pn() if token == "obs2" else series.ratio_unbalanced()
            name = "pp-pn" if token == "obs2" else "mixed"
            rep = check_nonmonotonicity(ratio, name=name, bound=cfg.bound)
            out = rep.to_dict()
    elif token == "obs3":
        cls = _get_classification(cfg, cfg.bound)
        rep = detect_periodicity(cls, args.x1, fixed_x2=args.x2)
        out = rep.to_dict()
    elif token == "remoteness":
        cls = _get_classification(cfg, cfg.bound)
        rep = remoteness_comparison(cls.exact_table, cls.moore_table, cls)
        out = rep.to_dict()
    elif token == "exceptional":
        cls = _get_classification(cfg, cfg.bound)
        graph = exceptional_graph(cls)
        if args.jsonl:
            n = export_jsonl(cls, args.jsonl, which="exceptional", lex=args.lex)
            print(f"wrote {n} records to {args.jsonl}", file=sys.stderr)
        if args.dot:
            export_dot(graph, args.dot, include_isolated=args.include_isolated)
            print(f"wrote {args.dot}", file=sys.stderr)
        out = {
            "nodes": len(graph.nodes),
            "edges": len(graph.edges),
            "isolated": int(graph.isolated().sum()),
        }

    if args.json:
        print(json.dumps(out, indent=2))
    else:
        for key, value in out.items():
            print(f"{key}: {value}")
    return 0


# --- play ------------------------------------------------------------------


def _engine_move(table: SolveTable, x) -> tuple[int, ...]:
    if table.outcomes[table._rank_checked(x)] == 0:
        return best_move(table.rule, table, x)
    # losing side: resist as long as possible
    best, best_rem = None, -1
    for y in successors(table.rule, x):
        r = table.remoteness_of(y)
        if r > best_rem:
            best, best_rem = y, r
    return best


def _parse_move(line: str, x) -> tuple[int, ...] | str:
    parts = line.split()
    if len(parts) != 4:
        return "expected: i j a b (take a from pile i and b from pile j)"
    try:
        i, j, a, b = (int(p) for p in parts)
    except ValueError:
        return "all four entries must be integers"
    if not (1 <= i <= len(x) and 1 <= j <= len(x)):
        return f"pile numbers run 1..{len(x)}"
    if i == j:
        return "choose two distinct piles: exactly two piles must shrink"
    if a < 1 or b < 1:
        return "amounts must be >= 1: exactly two piles must shrink"
    if a > x[i - 1] or b > x[j - 1]:
        return "cannot take more than a pile holds"
    y = list(x)
    y[i - 1] -= a
    y[j - 1] -= b
    return canonicalize(y)


def cmd_play(args) -> int:
    cfg = _config(args)
    x = canonicalize(args.start)
    if len(x) != 5:
        print("error: start position needs 5 piles", file=sys.stderr)
        return 2
    bound = max(cfg.bound, x[-1])
    table = _get_table(cfg, exact(5, 2), bound)
    human = args.first == "human"
    print(f"piles: {_fmt(x)}  (exact(5,=2): every move shrinks exactly two piles;"
          " the player who cannot move loses)")
    while True:
        if is_terminal(table.rule, x):
            loser = "you" if human else "engine"
            winner = "engine" if human else "you"
            print(f"{loser} cannot move: {winner} win{'s' if winner == 'engine' else ''}")
            return 0
        if human:
            try:
                line = input("your move (i j a b): ")
            except EOFError:
                print("\nbye")
                return 0
            res = _parse_move(line, x)
            if isinstance(res, str):
                print(res)
                continue
            x = res
        else:
            x = _engine_move(table, x)
            print(f"engine plays -> {_fmt(x)}")
        if human:
            print(f"piles: {_fmt(x)}")
        human = not human


# --- parser ----------------------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="xnim",
        description="Solve and analyze nim, Moore's nim, and exact nim.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, bound_default=30):
        p.add_argument("--bound", type=_nonneg_int, default=bound_default,
                       help="largest pile size in the table")
        p.add_argument("--threads", type=_positive_int, default=None,
                       help="solver thread count (clamped to the runtime limit)")
        p.add_argument("--cache", default=None,
                       help="table cache directory (or $XNIM_CACHE)")
        p.add_argument("--no-solve", action="store_true",
                       help="fail instead of solving missing tables")

    p = sub.add_parser("solve", help="solve a game and write its table")
    common(p)
    p.add_argument("--game", choices=("nim", "moore", "exact"), default=None,
                   help="game family; default solves the exact pair")
    p.add_argument("--n", type=_positive_int, default=5)
    p.add_argument("--k", type=_positive_int, default=2)
    p.add_argument("--out", default=None, help="output path (single game only)")
    p.add_argument("--no-remoteness", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("query", help="report everything about one position")
    p.add_argument("position", type=_position, help="comma-separated piles")
    p.add_argument("--bound", type=_nonneg_int, default=None,
                   help="table bound (default: the position's largest pile)")
    p.add_argument("--threads", type=_positive_int, default=None)
    p.add_argument("--cache", default=None)
    p.add_argument("--no-solve", action="store_true")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("verify", help="run solved-data checks")
    p.add_argument("which", choices=("all",) + VERIFY_TOKENS)
    common(p)
    p.add_argument("--n", type=_positive_int, default=3,
                   help="pile count for the bouton check")
    p.add_argument("--json", action="store_true", help="machine-readable reports")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("analyze", help="emit series, reports, and exports")
    p.add_argument("which", choices=ANALYZE_TOKENS)
    common(p)
    p.add_argument("--json", action="store_true")
    p.add_argument("--csv", default=None, help="class-count series output")
    p.add_argument("--jsonl", default=None, help="position records output")
    p.add_argument("--dot", default=None, help="exceptional graph output")
    p.add_argument("--lex", action="store_true",
                   help="order JSONL records by piles, not rank")
    p.add_argument("--include-isolated", action="store_true")
    p.add_argument("--x1", type=_nonneg_int, default=0,
                   help="first pile for periodicity slices")
    p.add_argument("--x2", type=_nonneg_int, default=None,
                   help="additionally fix the second pile")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("play", help="play exact(5,=2) against the tables")
    common(p, bound_default=20)
    p.add_argument("--start", type=_position, default=(3, 5, 6, 7, 7),
                   help="starting piles, comma separated")
    p.add_argument("--first", choices=("human", "engine"), default="human",
                   help="who moves first")
    p.set_defaults(func=cmd_play)

    return top


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.func(args)
    except OutOfBoundError as e:
        print(f"error: {e}", file=sys.stderr)
        return 4
    except InsufficientBoundError as e:
        print(f"error: {e}; unverifiable: {', '.join(e.missing)}", file=sys.stderr)
        return 5
    except (ResourceLimitError, CorruptTableError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except XnimError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
