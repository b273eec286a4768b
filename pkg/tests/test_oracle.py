"""Tests for the exhaustive oracle."""

from itertools import permutations

import numpy as np
import pytest

from src.data.fixtures import get_split_u_instance, get_square_instance
from src.data.ga_config import get_ga_config
from src.errors import OracleRangeError
from src.fitness import fitness
from src.genetic_algorithm import run_ga
from src.instance import generate_instance
from src.models import Chromosome, GenSpec, Instance
from src.oracle import solve_exhaustive, verify_ga_against_oracle


class TestSolveExhaustive:
    """Test exact enumeration."""

    def test_square(self):
        """(4-1)!/2 = 3 orders; the hull order is crossing-free."""
        result = solve_exhaustive(get_square_instance())
        assert result.min_f == 0
        assert result.orders_examined == 3
        assert result.witness == Chromosome((0, 1, 2, 3))

    @pytest.mark.parametrize("n, expected", [(3, 1), (5, 12), (6, 60), (7, 360)])
    def test_order_count(self, n, expected):
        instance = generate_instance(GenSpec(sides=10, points=n, seed=n))
        assert solve_exhaustive(instance).orders_examined == expected

    def test_split_u_optimum(self):
        result = solve_exhaustive(get_split_u_instance())
        assert (result.min_f, result.min_c1, result.min_c2) == (4, 0, 4)

    def test_witness_rescored(self):
        instance = generate_instance(GenSpec(sides=10, points=6, seed=3))
        result = solve_exhaustive(instance)
        assert fitness(instance, result.witness).f == result.min_f

    def test_minimum_over_all_orders(self):
        """min_f is at most the fitness of every order, and attained by the lexicographically least one."""
        for seed in range(10):
            instance = generate_instance(GenSpec(sides=10, points=6, seed=100 + seed))
            result = solve_exhaustive(instance)
            scores = {
                (0,) + tail: fitness(instance, Chromosome((0,) + tail)).f
                for tail in permutations(range(1, 6))
            }
            assert result.min_f == min(scores.values())
            best_orders = sorted(order for order, f in scores.items() if f == result.min_f)
            canonical = [order for order in best_orders if order[1] < order[-1]]
            assert result.witness.order == canonical[0]

    def test_min_f_invariant_under_relabelling(self):
        """Shuffling the point list changes the witness labels, not the optimum."""
        rng = np.random.default_rng(5)
        for seed in range(5):
            instance = generate_instance(GenSpec(sides=10, points=6, seed=200 + seed))
            shuffled = Instance(
                instance.polygon, tuple(instance.points[int(i)] for i in rng.permutation(instance.n))
            )
            assert solve_exhaustive(shuffled).min_f == solve_exhaustive(instance).min_f

    def test_parallel_matches_sequential(self):
        instance = generate_instance(GenSpec(sides=12, points=7, seed=8))
        assert solve_exhaustive(instance, workers=3) == solve_exhaustive(instance)

    def test_refuses_large_n(self):
        instance = generate_instance(GenSpec(sides=10, points=10, seed=0))
        with pytest.raises(OracleRangeError, match="n <= 9"):
            solve_exhaustive(instance)


class TestVerifyAgainstOracle:
    """Test GA-versus-oracle comparison."""

    def test_gap_non_negative(self):
        instance = generate_instance(GenSpec(sides=10, points=6, seed=21))
        comparison = verify_ga_against_oracle(instance, get_ga_config(seed=1, generation_cap=50))
        assert comparison.gap >= 0

    def test_triangle(self):
        """Only one cyclic order exists for three points."""
        instance = generate_instance(GenSpec(sides=8, points=3, seed=2))
        comparison = verify_ga_against_oracle(instance, get_ga_config(seed=0))
        assert comparison.gap == 0

    @pytest.mark.slow
    def test_ga_matches_oracle_on_corpus(self):
        """GA-V2 with 5 restarts hits the optimum on at least 48 of 50 small instances and never beats it."""
        matches = 0
        cases = [(n, sides) for n in (5, 6, 7) for sides in (8, 10, 12)]
        for index in range(50):
            n, sides = cases[index % len(cases)]
            instance = generate_instance(GenSpec(sides=sides, points=n, seed=1000 + index))
            oracle = solve_exhaustive(instance)
            result = run_ga(instance, get_ga_config(seed=index, restarts=5))
            assert result.best_fitness.f >= oracle.min_f
            matches += result.best_fitness.f == oracle.min_f
        assert matches >= 48
