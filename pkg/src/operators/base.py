"""Base interface for reproduction operators."""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from src.models import Chromosome, Instance


@dataclass
class ReproductionContext:
    """Everything an operator needs to produce one child."""
    instance: Instance
    population: Sequence[Chromosome]
    rng: np.random.Generator

    def pick_parent(self) -> Chromosome:
        """One parent drawn uniformly from the population."""
        return self.population[int(self.rng.integers(len(self.population)))]

    def pick_parent_pair(self):
        """Two distinct parents drawn uniformly (the same one if only one exists)."""
        if len(self.population) < 2:
            return self.population[0], self.population[0]
        first, second = self.rng.choice(len(self.population), size=2, replace=False)
        return self.population[int(first)], self.population[int(second)]


class ReproductionOperator(ABC):
    """Abstract base class for crossover and mutation operators."""

    @abstractmethod
    def reproduce(self, context: ReproductionContext) -> Chromosome:
        """
        Select parent(s) from the context population and produce one child.

        Args:
            context: ReproductionContext with instance, population and generator

        Returns:
            Chromosome: a valid permutation of the instance's point indices
        """
        pass

    @abstractmethod
    def get_name(self) -> str:
        """Get the display name of this operator."""
        pass
