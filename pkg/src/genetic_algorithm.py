"""Genetic algorithm run loop: population, reproduction, roulette selection, archive."""

import logging
import math
import time
from collections import Counter
from concurrent.futures import Executor, ThreadPoolExecutor
from typing import List, Optional, Sequence, Tuple

import numpy as np

from src.data.ga_config import get_operators
from src.errors import ConfigError, InvalidChromosomeError
from src.fitness import fitness
from src.models import (
    Chromosome,
    FitnessBreakdown,
    GaConfig,
    GenerationStats,
    Instance,
    RunResult,
)
from src.operators import ReproductionContext, ReproductionOperator
from src.seeding import make_rng

logger = logging.getLogger(__name__)

Scored = Tuple[Chromosome, FitnessBreakdown]


def init_population(instance: Instance, size: int, rng: np.random.Generator) -> List[Chromosome]:
    """`size` independent uniform random cycle orders over the instance's points."""
    if size < 2:
        raise ValueError(f"Population size must be >= 2 (got {size})")
    return [Chromosome(tuple(rng.permutation(instance.n))) for _ in range(size)]


def evaluate_all(instance: Instance, chromosomes: Sequence[Chromosome],
                 executor: Optional[Executor] = None) -> List[Scored]:
    """Fitness of each chromosome, in input order."""
    if executor is None:
        scores = [fitness(instance, chrom) for chrom in chromosomes]
    else:
        scores = list(executor.map(lambda chrom: fitness(instance, chrom), chromosomes))
    return list(zip(chromosomes, scores))


def produce_children(
    instance: Instance,
    population: Sequence[Chromosome],
    config: GaConfig,
    rng: np.random.Generator,
    operators: Optional[Sequence[ReproductionOperator]] = None,
    executor: Optional[Executor] = None,
) -> List[Scored]:
    """
    Breed floor(children_fraction x |population|) children.

    Each child comes from exactly one operator, drawn with the configured
    crossover / swap / uncross rates. All children are bred first (the only
    consumer of the generator), then evaluated, so evaluating them on an
    executor cannot change the result.
    """
    if not population:
        raise ValueError("Population is empty")
    operators = list(operators) if operators is not None else get_operators()
    rates = np.asarray(config.operator_rates, dtype=float)
    count = math.floor(config.children_fraction * len(population))

    context = ReproductionContext(instance=instance, population=population, rng=rng)
    children = []
    applied = Counter()
    for _ in range(count):
        operator = operators[int(rng.choice(len(operators), p=rates))]
        children.append(operator.reproduce(context))
        applied[operator.get_name()] += 1
    logger.debug("Bred %d children: %s", count, dict(applied))
    return evaluate_all(instance, children, executor)


def roulette_weights(scored: Sequence[Scored]) -> np.ndarray:
    """Minimization weights w = (f_max - f) + 1, all >= 1."""
    values = np.array([score.f for _, score in scored], dtype=np.int64)
    return (values.max() - values + 1).astype(float)


def select_next_generation(
    parents_with_fitness: Sequence[Scored],
    children_with_fitness: Sequence[Scored],
    target_size: int,
    rng: np.random.Generator,
) -> List[Scored]:
    """Roulette-wheel sample, with replacement, of target_size from parents + children."""
    pool = list(parents_with_fitness) + list(children_with_fitness)
    if not pool:
        raise ValueError("Selection pool is empty")
    if target_size < 1:
        raise ValueError(f"Target size must be >= 1 (got {target_size})")
    weights = roulette_weights(pool)
    picks = rng.choice(len(pool), size=target_size, replace=True, p=weights / weights.sum())
    return [pool[int(i)] for i in picks]


def _best_of(scored: Sequence[Scored]) -> Scored:
    """First individual with the minimum F."""
    return min(scored, key=lambda item: item[1].f)


class GeneticAlgorithm:
    """
    Cycle-embedding genetic algorithm.

    Each restart runs:
    1. random initial population of population_multiplier x n
    2. up to generation_cap generations of reproduction and roulette selection
    3. archive of the best individual ever seen, outside the population
    4. early stop once the archive holds an F = 0 embedding
    """

    def __init__(self, config: GaConfig, operators: Optional[Sequence[ReproductionOperator]] = None):
        """
        Initialize the algorithm.

        Args:
            config: validated on construction
            operators: crossover, swap and uncross operators in rate order

        Raises:
            ConfigError: config fails validation
        """
        validation = config.validate()
        if not validation.is_valid:
            raise ConfigError(validation.error_message)
        self.config = config
        self.operators = list(operators) if operators is not None else get_operators()
        if len(self.operators) != len(config.operator_rates):
            raise ConfigError(
                f"{len(self.operators)} operators given for {len(config.operator_rates)} rates"
            )

    def run(self, instance: Instance,
            initial_population: Optional[Sequence[Chromosome]] = None) -> RunResult:
        """
        Run every restart and return the best archived embedding.

        Args:
            instance: a valid instance
            initial_population: optional chromosomes planted at the front of
                each restart's first population

        Returns:
            RunResult with best_fitness recomputed from scratch
        """
        start = time.perf_counter()
        if initial_population is not None:
            for chrom in initial_population:
                if len(chrom) != instance.n:
                    raise InvalidChromosomeError(
                        f"Planted chromosome has {len(chrom)} genes, instance has {instance.n} points"
                    )

        executor = None
        if self.config.fitness_workers > 1:
            executor = ThreadPoolExecutor(max_workers=self.config.fitness_workers)
        try:
            best: Optional[Scored] = None
            best_generations = 0
            best_log: List[GenerationStats] = []
            restarts_used = 0
            for restart in range(self.config.restarts):
                restarts_used += 1
                archived, generations, log = self._run_restart(
                    instance, restart, initial_population, executor
                )
                logger.info(
                    "Restart %d/%d: best F=%d (C1=%d, C2=%d) after %d generation(s)",
                    restart + 1, self.config.restarts, archived[1].f,
                    archived[1].c1, archived[1].c2, generations,
                )
                if best is None or archived[1].f < best[1].f:
                    best, best_generations, best_log = archived, generations, log
                if best[1].f == 0:
                    break
        finally:
            if executor is not None:
                executor.shutdown()

        chromosome = best[0]
        return RunResult(
            best=chromosome,
            best_fitness=fitness(instance, chromosome),
            generations_used=best_generations,
            restarts_used=restarts_used,
            wall_time=time.perf_counter() - start,
            generation_log=best_log,
        )

    def _run_restart(
        self,
        instance: Instance,
        restart: int,
        initial_population: Optional[Sequence[Chromosome]],
        executor: Optional[Executor],
    ) -> Tuple[Scored, int, List[GenerationStats]]:
        config = self.config
        rng = make_rng(config.seed, restart)
        size = max(2, config.population_multiplier * instance.n)

        planted = list(initial_population or [])[:size]
        population = planted + init_population(instance, size, rng)[: size - len(planted)]
        scored = evaluate_all(instance, population, executor)

        archive = _best_of(scored)
        log = [self._stats(0, scored)]
        if archive[1].f == 0:
            return archive, 0, log

        for generation in range(1, config.generation_cap + 1):
            parents = [chrom for chrom, _ in scored]
            children = produce_children(instance, parents, config, rng, self.operators, executor)
            candidate = _best_of(scored + children)
            if candidate[1].f < archive[1].f:
                archive = candidate
            scored = select_next_generation(scored, children, size, rng)
            log.append(self._stats(generation, scored))
            logger.debug(
                "Generation %d: archive F=%d, population best F=%d",
                generation, archive[1].f, log[-1].best_f,
            )
            if archive[1].f == 0:
                return archive, generation, log
        return archive, config.generation_cap, log

    @staticmethod
    def _stats(generation: int, scored: Sequence[Scored]) -> GenerationStats:
        values = [score.f for _, score in scored]
        return GenerationStats(generation=generation, best_f=min(values), mean_f=float(np.mean(values)))


def run_ga(instance: Instance, config: GaConfig,
           initial_population: Optional[Sequence[Chromosome]] = None) -> RunResult:
    """Run the genetic algorithm with the default operators."""
    return GeneticAlgorithm(config).run(instance, initial_population)
