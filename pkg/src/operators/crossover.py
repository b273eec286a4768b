"""Single-point order-preserving crossover."""

import numpy as np

from src.errors import InvalidChromosomeError
from src.models import Chromosome
from src.operators.base import ReproductionContext, ReproductionOperator


def crossover_at(parent1: Chromosome, parent2: Chromosome, r: int) -> Chromosome:
    """
    Child from a cut at 1-based position r.

    Genes 1..r-1 come from parent1; the remaining genes are those missing
    from that prefix, in the order they appear in parent2.
    """
    if len(parent1) != len(parent2):
        raise InvalidChromosomeError(
            f"Parents differ in length ({len(parent1)} vs {len(parent2)})"
        )
    n = len(parent1)
    if not 1 <= r <= n:
        raise ValueError(f"Cut position must be in 1..{n} (got {r})")
    prefix = parent1.order[:r - 1]
    taken = set(prefix)
    suffix = tuple(gene for gene in parent2.order if gene not in taken)
    return Chromosome(prefix + suffix)


def crossover(parent1: Chromosome, parent2: Chromosome, rng: np.random.Generator) -> Chromosome:
    """Crossover at a cut r drawn uniformly from 1..n."""
    if len(parent1) != len(parent2):
        raise InvalidChromosomeError(
            f"Parents differ in length ({len(parent1)} vs {len(parent2)})"
        )
    r = int(rng.integers(1, len(parent1) + 1))
    return crossover_at(parent1, parent2, r)


class CrossoverOperator(ReproductionOperator):
    """Combines two distinct random parents with a single-point crossover."""

    def reproduce(self, context: ReproductionContext) -> Chromosome:
        parent1, parent2 = context.pick_parent_pair()
        return crossover(parent1, parent2, context.rng)

    def get_name(self) -> str:
        return "Crossover"
