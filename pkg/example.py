"""
Example usage of the cycle embedding solver.

Scenarios:
- The four-point bowtie and its uncrossed hull order
- A random 15-gon with 20 points solved by both algorithm versions
- A small instance checked against the exhaustive oracle
- A tiny experiment grid with its aggregate tables
"""

import asyncio
import logging

from src.data.fixtures import get_square_instance
from src.data.ga_config import get_ga_config
from src.experiment import ExperimentRunner, ExperimentSpec, aggregate, format_aggregates
from src.fitness import fitness
from src.genetic_algorithm import run_ga
from src.instance import generate_instance
from src.models import AlgorithmVersion, Chromosome, GenSpec
from src.oracle import verify_ga_against_oracle


async def main():
    """Run the example scenarios."""
    logging.basicConfig(level=logging.WARNING)

    print("=" * 70)
    print("CYCLE EMBEDDING DEMONSTRATION")
    print("=" * 70)
    print()

    # Scenario 1: crossings of a hand-built instance
    print("SCENARIO 1: Bowtie vs hull order on four square corners")
    print("-" * 70)
    square = get_square_instance()
    for order in ((0, 2, 1, 3), (0, 1, 2, 3)):
        score = fitness(square, Chromosome(order))
        print(f"Order {order}: C1={score.c1}, C2={score.c2}, F={score.f}")
    print()

    # Scenario 2: both versions on a random instance
    print("SCENARIO 2: 20 points inside a random 15-gon")
    print("-" * 70)
    instance = generate_instance(GenSpec(sides=15, points=20, seed=11))
    for version in AlgorithmVersion:
        result = run_ga(instance, get_ga_config(version, seed=1))
        score = result.best_fitness
        print(
            f"{version.name}: F={score.f} (C1={score.c1}, C2={score.c2}) "
            f"after {result.generations_used} generation(s), {result.wall_time:.2f}s"
        )
    print()

    # Scenario 3: oracle comparison
    print("SCENARIO 3: GA vs exhaustive oracle (7 points, 10-gon)")
    print("-" * 70)
    small = generate_instance(GenSpec(sides=10, points=7, seed=3))
    comparison = verify_ga_against_oracle(small, get_ga_config(seed=0, restarts=5))
    print(f"Oracle F={comparison.oracle_min_f}, GA F={comparison.ga_best_f}, gap={comparison.gap}")
    print()

    # Scenario 4: a tiny experiment grid
    print("SCENARIO 4: Experiment grid (2 x 2 x 2 x 2 x 2 cells)")
    print("-" * 70)
    spec = ExperimentSpec(
        sides_list=[10, 15],
        points_list=[10, 15],
        polygons_per_config=2,
        runs_per_instance=2,
        base_seed=5,
        generation_cap=200,
    )
    records = await ExperimentRunner().run(spec)
    print(format_aggregates(aggregate(records)))


if __name__ == "__main__":
    asyncio.run(main())
