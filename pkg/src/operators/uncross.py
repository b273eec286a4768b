"""Uncrossing (2-opt) mutation."""

import numpy as np

from src.fitness import find_crossing_edge_pairs
from src.geometry import two_opt_reverse
from src.models import Chromosome, Instance
from src.operators.base import ReproductionContext, ReproductionOperator
from src.operators.swap import mutate_swap


def uncross_pair(parent: Chromosome, i: int, j: int) -> Chromosome:
    """
    Remove crossing edges i and j by reversing positions i+1..j.

    Edges (x_i, x_i+1) and (x_j, x_j+1) are replaced by (x_i, x_j) and
    (x_i+1, x_j+1).
    """
    return Chromosome(tuple(two_opt_reverse(parent.order, i, j)))


def mutate_uncross(instance: Instance, parent: Chromosome, rng: np.random.Generator) -> Chromosome:
    """
    Uncross one uniformly chosen intersecting edge pair.

    Falls back to the swap mutation when the cycle has no crossing pair.
    """
    pairs = find_crossing_edge_pairs(instance, parent)
    if not pairs:
        return mutate_swap(parent, rng)
    i, j = pairs[int(rng.integers(len(pairs)))]
    return uncross_pair(parent, i, j)


class UncrossMutationOperator(ReproductionOperator):
    """Second mutation: removes a self-crossing of one random parent."""

    def reproduce(self, context: ReproductionContext) -> Chromosome:
        return mutate_uncross(context.instance, context.pick_parent(), context.rng)

    def get_name(self) -> str:
        return "Uncross Mutation"
