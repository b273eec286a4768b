"""Hand-built instances and chromosomes for examples and tests."""

from typing import List

from src.models import Chromosome, Instance, Point, Polygon


# ============================================================================
# POLYGONS
# ============================================================================

SQUARE_POLYGON = Polygon((Point(0, 0), Point(10, 0), Point(10, 10), Point(0, 10)))

# Square with a notch cut down from the top edge between x=8 and x=12
U_POLYGON = Polygon((
    Point(0, 0), Point(20, 0), Point(20, 20), Point(12, 20),
    Point(12, 8), Point(8, 8), Point(8, 20), Point(0, 20),
))

BOWTIE_POLYGON = Polygon((Point(0, 0), Point(10, 10), Point(10, 0), Point(0, 10)))

FRAME_POLYGON = Polygon((Point(-20, -20), Point(20, -20), Point(20, 20), Point(-20, 20)))


# ============================================================================
# INSTANCES
# ============================================================================

def get_square_instance() -> Instance:
    """
    Four corners (2,2),(8,2),(8,8),(2,8) inside the 0..10 square.

    Hull order [0, 1, 2, 3] has F = 0; bowtie order [0, 2, 1, 3] has one
    self-crossing at (5, 5).
    """
    return Instance(
        polygon=SQUARE_POLYGON,
        points=(Point(2, 2), Point(8, 2), Point(8, 8), Point(2, 8)),
        name="square",
    )


def get_u_instance() -> Instance:
    """
    Four points spread over both arms of the U polygon.

    In listed order the top edge (18,15)-(2,15) crosses both notch sides: C2 = 2.
    """
    return Instance(
        polygon=U_POLYGON,
        points=(Point(2, 5), Point(18, 5), Point(18, 15), Point(2, 15)),
        name="u-shape",
    )


def get_octagon_instance() -> Instance:
    """
    Eight points x1..x8 on an octagon where order x1..x8 crosses exactly once.

    The only crossing pair is (x2, x3) with (x6, x7); uncrossing it gives the
    hull order x1, x2, x6, x5, x4, x3, x7, x8.
    """
    return Instance(
        polygon=FRAME_POLYGON,
        points=(
            Point(10, 0), Point(7, 7), Point(-7, -7), Point(-10, 0),
            Point(-7, 7), Point(0, 10), Point(0, -10), Point(7, -7),
        ),
        name="octagon",
    )


def get_split_u_instance() -> Instance:
    """
    Two points high in each arm of the U polygon.

    Every cycle needs two edges across the notch, each hitting both notch
    sides, so the optimum is F = 4 with C1 = 0.
    """
    return Instance(
        polygon=U_POLYGON,
        points=(Point(2, 15), Point(4, 18), Point(16, 18), Point(18, 15)),
        name="split-u",
    )


# ============================================================================
# WORKED OPERATOR EXAMPLES
# ============================================================================

# Gene coordinates of the six-vertex crossover and swap examples
FIGURE_POINTS: List[Point] = [
    Point(98, 319), Point(255, 188), Point(168, 418),
    Point(262, 148), Point(288, 72), Point(337, 210),
]

CROSSOVER_PARENT1 = Chromosome((0, 1, 2, 3, 4, 5))
CROSSOVER_PARENT2 = Chromosome((1, 0, 4, 5, 2, 3))
CROSSOVER_CUT = 4
CROSSOVER_CHILD = Chromosome((0, 1, 2, 4, 5, 3))

SWAP_PARENT = Chromosome((0, 1, 2, 5, 4, 3))
SWAP_POSITIONS = (1, 3)
SWAP_CHILD = Chromosome((0, 5, 2, 1, 4, 3))

UNCROSS_PARENT = Chromosome((0, 1, 2, 3, 4, 5, 6, 7))
UNCROSS_CHILD = Chromosome((0, 1, 5, 4, 3, 2, 6, 7))
