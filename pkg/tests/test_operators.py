"""Unit tests for the reproduction operators."""

import numpy as np
import pytest

from src.data.fixtures import (
    CROSSOVER_CHILD,
    CROSSOVER_CUT,
    CROSSOVER_PARENT1,
    CROSSOVER_PARENT2,
    FIGURE_POINTS,
    SWAP_CHILD,
    SWAP_PARENT,
    SWAP_POSITIONS,
    UNCROSS_CHILD,
    UNCROSS_PARENT,
    get_octagon_instance,
    get_square_instance,
)
from src.errors import InvalidChromosomeError
from src.fitness import find_crossing_edge_pairs, fitness
from src.geometry import cycle_length, segments_cross_properly, segments_intersect
from src.models import Chromosome, Instance, Point, Polygon, Segment
from src.operators import (
    CrossoverOperator,
    ReproductionContext,
    SwapMutationOperator,
    UncrossMutationOperator,
    crossover,
    crossover_at,
    mutate_swap,
    mutate_uncross,
    swap_positions,
    uncross_pair,
)


@pytest.fixture
def rng():
    return np.random.default_rng(2024)


def _random_instance(rng: np.random.Generator, n: int) -> Instance:
    """n distinct random points inside a large square (validity of the container is not needed)."""
    coords = set()
    while len(coords) < n:
        x, y = rng.integers(-100, 101, size=2)
        coords.add((int(x), int(y)))
    container = Polygon((Point(-200, -200), Point(200, -200), Point(200, 200), Point(-200, 200)))
    return Instance(container, tuple(Point(x, y) for x, y in sorted(coords)))


def _is_permutation(chrom: Chromosome, n: int) -> bool:
    return sorted(chrom.order) == list(range(n))


class TestCrossover:
    """Test single-point order-preserving crossover."""

    def test_worked_example(self):
        """Cut 4 keeps the parent1 prefix and fills in parent2 order."""
        child = crossover_at(CROSSOVER_PARENT1, CROSSOVER_PARENT2, CROSSOVER_CUT)
        assert child == CROSSOVER_CHILD
        coordinates = [(p.x, p.y) for p in child.genes(tuple(FIGURE_POINTS))]
        assert coordinates == [(98, 319), (255, 188), (168, 418), (288, 72), (337, 210), (262, 148)]

    def test_cut_one_copies_parent2(self):
        assert crossover_at(CROSSOVER_PARENT1, CROSSOVER_PARENT2, 1) == CROSSOVER_PARENT2

    def test_cut_n_keeps_parent1_prefix(self):
        child = crossover_at(CROSSOVER_PARENT1, CROSSOVER_PARENT2, 6)
        assert child.order[:5] == CROSSOVER_PARENT1.order[:5]

    def test_bad_cut(self):
        with pytest.raises(ValueError):
            crossover_at(CROSSOVER_PARENT1, CROSSOVER_PARENT2, 0)

    def test_mismatched_lengths(self, rng):
        with pytest.raises(InvalidChromosomeError):
            crossover(CROSSOVER_PARENT1, Chromosome((0, 1, 2)), rng)

    def test_permutation_property(self, rng):
        """10^4 random crossovers all produce permutations."""
        for _ in range(10_000):
            n = int(rng.integers(3, 16))
            p1 = Chromosome(tuple(rng.permutation(n)))
            p2 = Chromosome(tuple(rng.permutation(n)))
            assert _is_permutation(crossover(p1, p2, rng), n)


class TestSwapMutation:
    """Test the two-point swap mutation."""

    def test_worked_example(self):
        """Swapping positions 2 and 4 (1-based)."""
        assert swap_positions(SWAP_PARENT, *SWAP_POSITIONS) == SWAP_CHILD

    def test_involution(self):
        once = swap_positions(SWAP_PARENT, 0, 5)
        assert swap_positions(once, 0, 5) == SWAP_PARENT

    def test_changes_exactly_two_positions(self, rng):
        parent = Chromosome(tuple(range(10)))
        child = mutate_swap(parent, rng)
        assert sum(a != b for a, b in zip(parent.order, child.order)) == 2

    def test_permutation_property(self, rng):
        for _ in range(10_000):
            n = int(rng.integers(2, 16))
            parent = Chromosome(tuple(rng.permutation(n)))
            assert _is_permutation(mutate_swap(parent, rng), n)


class TestUncrossMutation:
    """Test the uncrossing 2-opt mutation."""

    def test_worked_example(self):
        """Crossing edges (x2,x3) and (x6,x7) reverse positions 3..6."""
        instance = get_octagon_instance()
        assert find_crossing_edge_pairs(instance, UNCROSS_PARENT) == [(1, 5)]
        assert uncross_pair(UNCROSS_PARENT, 1, 5) == UNCROSS_CHILD
        assert mutate_uncross(instance, UNCROSS_PARENT, np.random.default_rng(0)) == UNCROSS_CHILD
        assert fitness(instance, UNCROSS_CHILD).f == 0

    def test_falls_back_to_swap(self):
        """A crossing-free parent is handled exactly like the swap mutation."""
        instance = get_square_instance()
        parent = Chromosome((0, 1, 2, 3))
        expected = mutate_swap(parent, np.random.default_rng(8))
        assert mutate_uncross(instance, parent, np.random.default_rng(8)) == expected

    def test_permutation_property(self, rng):
        for _ in range(10_000):
            n = int(rng.integers(4, 12))
            instance = _random_instance(rng, n)
            parent = Chromosome(tuple(rng.permutation(n)))
            assert _is_permutation(mutate_uncross(instance, parent, rng), n)

    def test_uncrossing_shortens_cycle(self, rng):
        """Reversing a properly crossing pair strictly shortens the cycle and removes that crossing."""
        checked = 0
        while checked < 1_000:
            n = int(rng.integers(4, 16))
            instance = _random_instance(rng, n)
            parent = Chromosome(tuple(rng.permutation(n)))
            genes = parent.genes(instance.points)
            proper = [
                (i, j) for i, j in find_crossing_edge_pairs(instance, parent)
                if segments_cross_properly(
                    Segment(genes[i], genes[(i + 1) % n]), Segment(genes[j], genes[(j + 1) % n])
                )
            ]
            if not proper:
                continue
            i, j = proper[int(rng.integers(len(proper)))]
            child = uncross_pair(parent, i, j)
            assert cycle_length(instance.points, child.order) < cycle_length(instance.points, parent.order)
            child_genes = child.genes(instance.points)
            new_i = Segment(child_genes[i], child_genes[i + 1])
            new_j = Segment(child_genes[j], child_genes[(j + 1) % n])
            assert not segments_intersect(new_i, new_j)
            checked += 1


class TestOperatorStrategies:
    """Test the operator classes used by the run loop."""

    @pytest.fixture
    def context(self, rng):
        instance = get_octagon_instance()
        population = [Chromosome(tuple(rng.permutation(8))) for _ in range(6)]
        return ReproductionContext(instance=instance, population=population, rng=rng)

    @pytest.mark.parametrize(
        "operator, name",
        [
            (CrossoverOperator(), "Crossover"),
            (SwapMutationOperator(), "Swap Mutation"),
            (UncrossMutationOperator(), "Uncross Mutation"),
        ],
    )
    def test_reproduce(self, context, operator, name):
        assert operator.get_name() == name
        for _ in range(100):
            assert _is_permutation(operator.reproduce(context), 8)

    def test_parent_pair_distinct(self, context):
        for _ in range(100):
            first, second = context.pick_parent_pair()
            assert first is not second
