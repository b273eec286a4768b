"""Genetic algorithm and experiment-grid configuration."""

from fractions import Fraction
from typing import Dict, List, Tuple

from src.models import AlgorithmVersion, GaConfig
from src.operators import (
    CrossoverOperator,
    ReproductionOperator,
    SwapMutationOperator,
    UncrossMutationOperator,
)


# Population is three times the number of points
DEFAULT_POPULATION_MULTIPLIER = 3
# One third of the population is born each generation
DEFAULT_CHILDREN_FRACTION = Fraction(1, 3)
DEFAULT_GENERATION_CAP = 1000
DEFAULT_RESTARTS = 1

# Operator rates per version: (crossover, swap mutation, uncross mutation)
VERSION_RATES: Dict[AlgorithmVersion, Tuple[float, float, float]] = {
    AlgorithmVersion.V1: (0.8, 0.2, 0.0),
    AlgorithmVersion.V2: (0.8, 0.1, 0.1),
}

# Experiment grid
DEFAULT_SIDES: List[int] = [10, 15, 20, 25]
DEFAULT_POINTS: List[int] = [5, 10, 15, 20, 25, 30]
DEFAULT_POLYGONS_PER_CONFIG = 5
DEFAULT_RUNS_PER_INSTANCE = 5
DEFAULT_VERSIONS: List[AlgorithmVersion] = [AlgorithmVersion.V1, AlgorithmVersion.V2]
DEFAULT_BOUNDING_BOX = 500

ORACLE_MAX_N = 9


def get_ga_config(version: AlgorithmVersion = AlgorithmVersion.V2, **overrides) -> GaConfig:
    """
    Get the default configuration of a version.

    Args:
        version: algorithm version selecting the operator rates
        **overrides: any GaConfig field to replace

    Returns:
        GaConfig (not yet validated)
    """
    crossover_rate, swap_rate, uncross_rate = VERSION_RATES[AlgorithmVersion(version)]
    settings = dict(
        version=AlgorithmVersion(version),
        population_multiplier=DEFAULT_POPULATION_MULTIPLIER,
        children_fraction=DEFAULT_CHILDREN_FRACTION,
        crossover_rate=crossover_rate,
        swap_mutation_rate=swap_rate,
        uncross_mutation_rate=uncross_rate,
        generation_cap=DEFAULT_GENERATION_CAP,
        restarts=DEFAULT_RESTARTS,
    )
    settings.update(overrides)
    return GaConfig(**settings)


def get_operators() -> List[ReproductionOperator]:
    """Operators in rate order: crossover, swap mutation, uncross mutation."""
    return [CrossoverOperator(), SwapMutationOperator(), UncrossMutationOperator()]
