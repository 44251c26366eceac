"""Command-line front door.

Subcommands: ``jer`` (error rate of one jury file), ``solve`` (pick a jury
from a pool file), ``rank`` (corpus to per-user score/error-rate table),
``experiment`` (run a declarative experiment spec), ``gen-pool`` (sample a
synthetic pool to CSV).

Exit codes: 0 ok, 2 unparseable input, 3 even jury size, 4 enumeration
size cap, 5 no affordable juror, 6 degenerate scores.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import (
    DegenerateScores,
    EmptyGraph,
    EmptyPool,
    InputFormatError,
    InvalidJury,
    NoAffordableJuror,
    SizeLimitExceeded,
)
from .estimate import RankConfig
from .experiments import ExperimentSpec, rank_candidates, run_experiment
from .io import read_jurors_csv, read_pool_csv, write_pool_csv, write_scores_csv
from .jer import Jury, jer_cba, jer_dp, jer_naive
from .solver import solve_altrm, solve_paym_greedy
from .synth import SynthConfig, gen_pool

EXIT_PARSE = 2
EXIT_EVEN_SIZE = 3
EXIT_SIZE_CAP = 4
EXIT_INFEASIBLE = 5
EXIT_DEGENERATE = 6

_JER_ALGORITHMS = {"naive": jer_naive, "dp": jer_dp, "cba": jer_cba}


def _fail(code: int, message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _cmd_jer(args) -> int:
    try:
        jurors = read_jurors_csv(args.input)
    except InputFormatError as exc:
        return _fail(EXIT_PARSE, str(exc))
    if len(jurors) % 2 == 0:
        return _fail(EXIT_EVEN_SIZE, f"jury size must be odd, got {len(jurors)}")
    try:
        jury = Jury(tuple(jurors))
    except InvalidJury as exc:  # odd size already checked; duplicate ids land here
        return _fail(EXIT_PARSE, str(exc))
    try:
        value = _JER_ALGORITHMS[args.algorithm](jury)
    except SizeLimitExceeded as exc:
        return _fail(EXIT_SIZE_CAP, str(exc))
    print(f"{value:.12f}")
    return 0


def _cmd_solve(args) -> int:
    if args.model == "paym" and args.budget is None:
        return _fail(EXIT_PARSE, "--budget is required with --model paym")
    if args.model == "altrm" and args.budget is not None:
        return _fail(EXIT_PARSE, "--budget only applies to --model paym")
    try:
        pool = read_pool_csv(args.input)
    except InputFormatError as exc:
        return _fail(EXIT_PARSE, str(exc))
    try:
        if args.model == "altrm":
            result = solve_altrm(pool, use_pruning=not args.no_pruning)
        else:
            result = solve_paym_greedy(pool, args.budget)
    except NoAffordableJuror as exc:
        return _fail(EXIT_INFEASIBLE, str(exc))
    except EmptyPool as exc:
        return _fail(EXIT_PARSE, str(exc))
    print(
        json.dumps(
            {
                "jury_ids": [j.id for j in result.jury.members],
                "jer": result.jer,
                "total_cost": result.total_cost,
                "juries_evaluated": result.juries_evaluated,
                "juries_pruned": result.juries_pruned,
            }
        )
    )
    return 0


def _cmd_rank(args) -> int:
    config = RankConfig(
        damping=args.damping,
        max_iterations=args.max_iterations,
        tolerance=args.tolerance,
        alpha=args.alpha,
        beta=args.beta,
    )
    try:
        rows = rank_candidates(args.corpus, args.method, config)
    except InputFormatError as exc:
        return _fail(EXIT_PARSE, str(exc))
    except (DegenerateScores, EmptyGraph) as exc:
        return _fail(EXIT_DEGENERATE, str(exc))
    if args.top_k is not None:
        rows = rows[: args.top_k]
    if args.out:
        write_scores_csv(args.out, rows)
    else:
        write_scores_csv(sys.stdout, rows)
    return 0


def _cmd_experiment(args) -> int:
    try:
        spec = ExperimentSpec.from_file(args.spec)
        if args.seed is not None:
            spec = ExperimentSpec(spec.kind, spec.params, (args.seed,), spec.out)
        path = run_experiment(spec, out=args.out)
    except InputFormatError as exc:
        return _fail(EXIT_PARSE, str(exc))
    except NoAffordableJuror as exc:
        return _fail(EXIT_INFEASIBLE, str(exc))
    except (DegenerateScores, EmptyGraph) as exc:
        return _fail(EXIT_DEGENERATE, str(exc))
    print(path)
    return 0


def _cmd_gen_pool(args) -> int:
    config = SynthConfig(
        pool_size=args.pool_size,
        epsilon_mean=args.epsilon_mean,
        epsilon_stddev=args.epsilon_stddev,
        requirement_mean=args.requirement_mean,
        requirement_stddev=args.requirement_stddev,
        seed=args.seed,
    )
    pool = gen_pool(config)
    write_pool_csv(args.out, pool)
    print(args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="juryselect",
        description="Jury selection for majority-voted decision tasks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_jer = sub.add_parser("jer", help="error rate of the jury in a CSV file")
    p_jer.add_argument("input", help="juror CSV (id,epsilon,requirement)")
    p_jer.add_argument("--algorithm", choices=sorted(_JER_ALGORITHMS), default="dp")
    p_jer.set_defaults(handler=_cmd_jer)

    p_solve = sub.add_parser("solve", help="select a jury from a pool CSV")
    p_solve.add_argument("input", help="pool CSV (id,epsilon,requirement)")
    p_solve.add_argument("--model", choices=["altrm", "paym"], required=True)
    p_solve.add_argument("--budget", type=float, default=None)
    p_solve.add_argument("--no-pruning", action="store_true")
    p_solve.set_defaults(handler=_cmd_solve)

    p_rank = sub.add_parser("rank", help="rank a tweet corpus into a user table")
    p_rank.add_argument("corpus", help="NDJSON corpus path")
    p_rank.add_argument("--method", choices=["hits", "pagerank"], default="hits")
    p_rank.add_argument("--damping", type=float, default=0.85)
    p_rank.add_argument("--max-iterations", type=int, default=100)
    p_rank.add_argument("--tolerance", type=float, default=1e-8)
    p_rank.add_argument("--alpha", type=float, default=10.0)
    p_rank.add_argument("--beta", type=float, default=10.0)
    p_rank.add_argument("--top-k", type=int, default=None)
    p_rank.add_argument("--out", default=None)
    p_rank.set_defaults(handler=_cmd_rank)

    p_exp = sub.add_parser("experiment", help="run a declarative experiment spec")
    p_exp.add_argument("spec", help="experiment spec JSON path")
    p_exp.add_argument("--seed", type=int, default=None, help="replace the spec's seeds")
    p_exp.add_argument("--out", default=None, help="override the spec's output path")
    p_exp.set_defaults(handler=_cmd_experiment)

    p_gen = sub.add_parser("gen-pool", help="sample a synthetic candidate pool")
    p_gen.add_argument("--pool-size", type=int, required=True)
    p_gen.add_argument("--epsilon-mean", type=float, required=True)
    p_gen.add_argument("--epsilon-stddev", type=float, required=True)
    p_gen.add_argument("--requirement-mean", type=float, default=0.0)
    p_gen.add_argument("--requirement-stddev", type=float, default=0.0)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--out", required=True)
    p_gen.set_defaults(handler=_cmd_gen_pool)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (ValueError, OSError) as exc:
        # Bad numeric arguments (negative budget, damping outside (0,1),
        # zero pool size) and unreadable/unwritable paths.
        return _fail(EXIT_PARSE, str(exc))


def entry() -> None:  # console-script hook
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
