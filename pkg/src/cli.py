"""
Command-line entry point.

Subcommands: generate, solve, oracle, experiment, render.
Exit codes: 0 success, 1 usage error, 2 invalid input data, 3 internal failure.
"""

import argparse
import asyncio
import logging
import sys
from pathlib import Path
from typing import Callable, List, NoReturn, Optional, Sequence

import pandas as pd

from src.data.ga_config import (
    DEFAULT_BOUNDING_BOX,
    DEFAULT_GENERATION_CAP,
    DEFAULT_POINTS,
    DEFAULT_POLYGONS_PER_CONFIG,
    DEFAULT_POPULATION_MULTIPLIER,
    DEFAULT_RESTARTS,
    DEFAULT_RUNS_PER_INSTANCE,
    DEFAULT_SIDES,
    get_ga_config,
)
from src.errors import ConfigError, EmbeddingError
from src.experiment import ExperimentRunner, ExperimentSpec, aggregate, format_aggregates, write_csv
from src.genetic_algorithm import run_ga
from src.instance import generate_instance, load_instance, save_instance
from src.models import AlgorithmVersion, GaConfig, GenSpec
from src.oracle import solve_exhaustive
from src.render import write_svg
from src.solution import Solution, load_solution, save_solution

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_INTERNAL = 3


class CliArgumentParser(argparse.ArgumentParser):
    """ArgumentParser that exits with the usage code instead of argparse's 2."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# ============================================================================
# ARGUMENT TYPES
# ============================================================================

def _bounded_int(minimum: int) -> Callable[[str], int]:
    def parse(text: str) -> int:
        try:
            value = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"invalid integer {text!r}")
        if value < minimum:
            raise argparse.ArgumentTypeError(f"must be >= {minimum} (got {value})")
        return value
    return parse


def _int_list(minimum: int) -> Callable[[str], List[int]]:
    item = _bounded_int(minimum)

    def parse(text: str) -> List[int]:
        values = [item(token) for token in text.split(",") if token.strip()]
        if not values:
            raise argparse.ArgumentTypeError("empty list")
        return values
    return parse


def _version(text: str) -> AlgorithmVersion:
    try:
        return AlgorithmVersion(int(text))
    except ValueError:
        raise argparse.ArgumentTypeError(f"version must be 1 or 2 (got {text!r})")


def _version_list(text: str) -> List[AlgorithmVersion]:
    versions = [_version(token) for token in text.split(",") if token.strip()]
    if not versions:
        raise argparse.ArgumentTypeError("empty list")
    return versions


def _rates(text: str) -> List[float]:
    try:
        values = [float(token) for token in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid rates {text!r}")
    if len(values) != 3:
        raise argparse.ArgumentTypeError("rates need three values: CX,SWAP,UNCROSS")
    return values


# ============================================================================
# SUBCOMMANDS
# ============================================================================

def cmd_generate(args: argparse.Namespace) -> int:
    try:
        spec = GenSpec(
            sides=args.sides, points=args.points, seed=args.seed,
            bounding_box=args.box, convex=args.convex,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    instance = generate_instance(spec, name=Path(args.out).stem)
    save_instance(instance, args.out)
    print(args.out)
    return EXIT_OK


def _solve_config(args: argparse.Namespace) -> GaConfig:
    overrides = dict(
        seed=args.seed,
        generation_cap=args.generations,
        restarts=args.restarts,
        population_multiplier=args.pop_mult,
        fitness_workers=args.workers,
    )
    if args.rates is not None:
        crossover_rate, swap_rate, uncross_rate = args.rates
        overrides.update(
            crossover_rate=crossover_rate,
            swap_mutation_rate=swap_rate,
            uncross_mutation_rate=uncross_rate,
        )
    return get_ga_config(args.version, **overrides)


def cmd_solve(args: argparse.Namespace) -> int:
    config = _solve_config(args)
    validation = config.validate()
    if not validation.is_valid:
        raise ConfigError(validation.error_message)

    instance = load_instance(args.instance)
    result = run_ga(instance, config)
    save_solution(Solution.from_run(result), args.out)
    if args.svg:
        write_svg(instance, result.best, args.svg)
    if args.log:
        frame = pd.DataFrame(
            [(s.generation, s.best_f, s.mean_f) for s in result.generation_log],
            columns=["generation", "best_f", "mean_f"],
        )
        Path(args.log).parent.mkdir(parents=True, exist_ok=True)
        frame.to_csv(args.log, index=False, lineterminator="\n")

    score = result.best_fitness
    print(f"best_f={score.f} (c1={score.c1}, c2={score.c2}), generations={result.generations_used}")
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace) -> int:
    instance = load_instance(args.instance)
    result = solve_exhaustive(instance, workers=args.workers)
    print(f"min_f={result.min_f}, examined={result.orders_examined}")
    print(f"c1={result.min_c1}, c2={result.min_c2}")
    print("witness=" + " ".join(str(i) for i in result.witness.order))
    return EXIT_OK


def cmd_experiment(args: argparse.Namespace) -> int:
    spec = ExperimentSpec(
        sides_list=args.sides,
        points_list=args.points,
        polygons_per_config=args.polygons,
        runs_per_instance=args.runs,
        versions=args.versions,
        base_seed=args.seed,
        bounding_box=args.box,
        generation_cap=args.generations,
    )
    validation = spec.validate()
    if not validation.is_valid:
        raise ConfigError(validation.error_message)

    records = asyncio.run(ExperimentRunner(workers=args.workers).run(spec))
    write_csv(records, args.csv)
    failed = sum(1 for record in records if record.error is not None)
    if failed:
        logger.warning("%d of %d cells failed; see error rows in %s", failed, len(records), args.csv)
    print(format_aggregates(aggregate(records)))
    return EXIT_OK


def cmd_render(args: argparse.Namespace) -> int:
    instance = load_instance(args.instance)
    solution = load_solution(args.solution)
    if len(solution.chromosome) != instance.n:
        raise EmbeddingError(
            f"solution orders {len(solution.chromosome)} points, instance has {instance.n}"
        )
    write_svg(instance, solution.chromosome, args.svg)
    print(args.svg)
    return EXIT_OK


# ============================================================================
# PARSER
# ============================================================================

def build_parser() -> argparse.ArgumentParser:
    parser = CliArgumentParser(
        prog="cycle-embed",
        description="Embed a cycle on points inside a simple polygon with few crossings.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    commands = parser.add_subparsers(dest="command", required=True)

    generate = commands.add_parser("generate", help="write a random instance")
    generate.add_argument("--sides", type=_bounded_int(3), required=True)
    generate.add_argument("--points", type=_bounded_int(3), required=True)
    generate.add_argument("--seed", type=_bounded_int(0), required=True)
    generate.add_argument("--box", type=_bounded_int(10), default=DEFAULT_BOUNDING_BOX,
                          help="half-width of the coordinate box")
    generate.add_argument("--convex", action="store_true", help="convex polygon")
    generate.add_argument("--out", required=True)
    generate.set_defaults(handler=cmd_generate)

    solve = commands.add_parser("solve", help="run the genetic algorithm on an instance")
    solve.add_argument("--instance", required=True)
    solve.add_argument("--version", type=_version, required=True)
    solve.add_argument("--seed", type=_bounded_int(0), required=True)
    solve.add_argument("--generations", type=_bounded_int(0), default=DEFAULT_GENERATION_CAP)
    solve.add_argument("--restarts", type=_bounded_int(1), default=DEFAULT_RESTARTS)
    solve.add_argument("--pop-mult", type=_bounded_int(1), default=DEFAULT_POPULATION_MULTIPLIER)
    solve.add_argument("--rates", type=_rates, metavar="CX,SWAP,UNCROSS")
    solve.add_argument("--workers", type=_bounded_int(1), default=1,
                       help="threads for fitness evaluation")
    solve.add_argument("--out", required=True)
    solve.add_argument("--svg")
    solve.add_argument("--log", help="CSV of per-generation best and mean F")
    solve.set_defaults(handler=cmd_solve)

    oracle = commands.add_parser("oracle", help="exhaustive optimum for small instances")
    oracle.add_argument("--instance", required=True)
    oracle.add_argument("--workers", type=_bounded_int(1), default=1)
    oracle.set_defaults(handler=cmd_oracle)

    experiment = commands.add_parser("experiment", help="run the experiment grid")
    experiment.add_argument("--sides", type=_int_list(3), default=list(DEFAULT_SIDES))
    experiment.add_argument("--points", type=_int_list(3), default=list(DEFAULT_POINTS))
    experiment.add_argument("--polygons", type=_bounded_int(1), default=DEFAULT_POLYGONS_PER_CONFIG)
    experiment.add_argument("--runs", type=_bounded_int(1), default=DEFAULT_RUNS_PER_INSTANCE)
    experiment.add_argument("--versions", type=_version_list,
                            default=[AlgorithmVersion.V1, AlgorithmVersion.V2])
    experiment.add_argument("--generations", type=_bounded_int(0), default=DEFAULT_GENERATION_CAP)
    experiment.add_argument("--box", type=_bounded_int(10), default=DEFAULT_BOUNDING_BOX)
    experiment.add_argument("--seed", type=_bounded_int(0), required=True)
    experiment.add_argument("--workers", type=_bounded_int(1), default=1)
    experiment.add_argument("--csv", required=True)
    experiment.set_defaults(handler=cmd_experiment)

    render = commands.add_parser("render", help="draw a solution as SVG")
    render.add_argument("--instance", required=True)
    render.add_argument("--solution", required=True)
    render.add_argument("--svg", required=True)
    render.set_defaults(handler=cmd_render)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )

    try:
        return args.handler(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (EmbeddingError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except Exception:
        logger.exception("Internal failure in %s", args.command)
        return EXIT_INTERNAL
