"""Two-point swap mutation."""

import numpy as np

from src.models import Chromosome
from src.operators.base import ReproductionContext, ReproductionOperator


def swap_positions(parent: Chromosome, i: int, j: int) -> Chromosome:
    """Parent with the genes at 0-based positions i and j exchanged."""
    order = list(parent.order)
    order[i], order[j] = order[j], order[i]
    return Chromosome(tuple(order))


def mutate_swap(parent: Chromosome, rng: np.random.Generator) -> Chromosome:
    """Exchange the genes at two distinct uniformly drawn positions."""
    if len(parent) < 2:
        raise ValueError("Swap mutation needs at least 2 genes")
    i, j = rng.choice(len(parent), size=2, replace=False)
    return swap_positions(parent, int(i), int(j))


class SwapMutationOperator(ReproductionOperator):
    """First mutation: swaps two random genes of one random parent."""

    def reproduce(self, context: ReproductionContext) -> Chromosome:
        return mutate_swap(context.pick_parent(), context.rng)

    def get_name(self) -> str:
        return "Swap Mutation"
