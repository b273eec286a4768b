"""Reproduction operators."""

from src.operators.base import ReproductionContext, ReproductionOperator
from src.operators.crossover import CrossoverOperator, crossover, crossover_at
from src.operators.swap import SwapMutationOperator, mutate_swap, swap_positions
from src.operators.uncross import UncrossMutationOperator, mutate_uncross, uncross_pair

__all__ = [
    "ReproductionContext",
    "ReproductionOperator",
    "CrossoverOperator",
    "SwapMutationOperator",
    "UncrossMutationOperator",
    "crossover",
    "crossover_at",
    "mutate_swap",
    "swap_positions",
    "mutate_uncross",
    "uncross_pair",
]
