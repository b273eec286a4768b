"""Crossing-count fitness F = C1 + C2 and crossing-pair lookup."""

from typing import List, Sequence, Tuple

from src.errors import InvalidChromosomeError
from src.geometry import count_self_crossings, count_side_crossings, crossing_pairs
from src.models import Chromosome, FitnessBreakdown, Instance


def _check_fits(instance: Instance, chrom: Chromosome) -> None:
    if len(chrom) != instance.n:
        raise InvalidChromosomeError(
            f"Chromosome has {len(chrom)} genes but the instance has {instance.n} points"
        )


def crossing_counts(instance: Instance, order: Sequence[int]) -> Tuple[int, int]:
    """(C1, C2) of an order already known to fit the instance."""
    table = instance.crossing_table
    if table is not None:
        return table.self_crossings(order), table.side_crossings(order)
    return (
        count_self_crossings(instance.coords, order),
        count_side_crossings(instance.coords, order, instance.side_array),
    )


def fitness(instance: Instance, chrom: Chromosome) -> FitnessBreakdown:
    """
    Evaluate an embedded cycle.

    Returns:
        FitnessBreakdown with c1 (self-crossings) and c2 (polygon-side crossings)

    Raises:
        InvalidChromosomeError: chromosome length differs from the point count
    """
    _check_fits(instance, chrom)
    c1, c2 = crossing_counts(instance, chrom.order)
    return FitnessBreakdown(c1=c1, c2=c2)


def find_crossing_edge_pairs(instance: Instance, chrom: Chromosome) -> List[Tuple[int, int]]:
    """
    Non-adjacent cycle edge pairs (i, j), i < j, that intersect.

    Edge k runs from order position k to k+1 mod n. Adjacent folds are not
    listed since no reversal can remove them.
    """
    _check_fits(instance, chrom)
    table = instance.crossing_table
    if table is not None:
        return table.crossing_pairs(chrom.order)
    return crossing_pairs(instance.coords, chrom.order)
