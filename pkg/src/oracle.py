"""Exhaustive solver over all distinct cyclic orders, for small n."""

import logging
from concurrent.futures import ProcessPoolExecutor
from itertools import permutations
from typing import List, Optional, Tuple

from src.data.ga_config import ORACLE_MAX_N
from src.errors import OracleRangeError
from src.fitness import crossing_counts
from src.genetic_algorithm import run_ga
from src.models import Chromosome, GaConfig, Instance, OracleComparison, OracleResult

logger = logging.getLogger(__name__)

# (f, order, c1, c2) of the best order in a block, and the block's order count
BlockResult = Tuple[Optional[Tuple[int, Tuple[int, ...], int, int]], int]


def _enumerate_block(instance: Instance, second: int) -> BlockResult:
    """
    Scan every order starting (0, second, ...) in lexicographic order.

    Reversal duplicates are skipped by requiring order[1] < order[n-1].
    """
    n = instance.n
    rest = [k for k in range(1, n) if k != second]
    best = None
    examined = 0
    for tail in permutations(rest):
        if second > tail[-1]:
            continue
        order = (0, second) + tail
        examined += 1
        c1, c2 = crossing_counts(instance, order)
        if best is None or c1 + c2 < best[0]:
            best = (c1 + c2, order, c1, c2)
    return best, examined


def _enumerate_block_star(args: Tuple[Instance, int]) -> BlockResult:
    return _enumerate_block(*args)


def solve_exhaustive(instance: Instance, max_n: int = ORACLE_MAX_N, workers: int = 1) -> OracleResult:
    """
    Exact minimum F over all (n-1)!/2 distinct cyclic orders.

    Point 0 is fixed first. Ties go to the lexicographically least order,
    so splitting the scan over worker processes (by order[1]) returns the
    same witness as the sequential scan.

    Raises:
        OracleRangeError: n > max_n
    """
    n = instance.n
    if n > max_n:
        raise OracleRangeError(f"Oracle refuses n={n}: exhaustive search is limited to n <= {max_n}")
    if n < 3:
        raise ValueError(f"Oracle needs at least 3 points (got {n})")

    # Built once here so worker processes receive it with the instance
    instance.crossing_table
    jobs = [(instance, second) for second in range(1, n)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            blocks: List[BlockResult] = list(pool.map(_enumerate_block_star, jobs))
    else:
        blocks = [_enumerate_block_star(job) for job in jobs]

    best = None
    examined = 0
    for block_best, block_examined in blocks:
        examined += block_examined
        if block_best is not None and (best is None or block_best[:2] < best[:2]):
            best = block_best

    min_f, order, c1, c2 = best
    logger.info("Oracle n=%d: min F=%d over %d orders", n, min_f, examined)
    return OracleResult(
        min_f=min_f,
        min_c1=c1,
        min_c2=c2,
        witness=Chromosome(order),
        orders_examined=examined,
    )


def verify_ga_against_oracle(instance: Instance, config: GaConfig) -> OracleComparison:
    """Run both solvers on one instance and report the GA's gap to the optimum."""
    oracle = solve_exhaustive(instance)
    result = run_ga(instance, config)
    comparison = OracleComparison(oracle_min_f=oracle.min_f, ga_best_f=result.best_fitness.f)
    logger.info(
        "Oracle F=%d, GA F=%d, gap=%d",
        comparison.oracle_min_f, comparison.ga_best_f, comparison.gap,
    )
    return comparison
