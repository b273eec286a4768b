"""Core data models for the cycle embedding solver."""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import TYPE_CHECKING, List, Optional, Tuple

import numpy as np

from src.errors import InvalidChromosomeError

if TYPE_CHECKING:
    from src.geometry import CrossingTable

# Keeps every cross product of coordinate differences inside 64-bit integers.
COORDINATE_LIMIT = 10**6


class AlgorithmVersion(Enum):
    """Genetic algorithm variant: V1 uses swap mutation only, V2 adds uncrossing."""
    V1 = 1
    V2 = 2


class PointLocation(Enum):
    """Classification of a point against a polygon."""
    INSIDE = "inside"
    BOUNDARY = "boundary"
    OUTSIDE = "outside"


@dataclass(frozen=True)
class Point:
    """Integer grid point."""
    x: int
    y: int

    def __post_init__(self):
        """Ensure coordinates are bounded integers."""
        for name in ("x", "y"):
            value = getattr(self, name)
            if isinstance(value, int):
                continue
            if value != int(value):
                raise ValueError(f"Point coordinate {name}={value!r} is not an integer")
            object.__setattr__(self, name, int(value))
        if abs(self.x) > COORDINATE_LIMIT or abs(self.y) > COORDINATE_LIMIT:
            raise ValueError(
                f"Point ({self.x}, {self.y}) outside coordinate limit ±{COORDINATE_LIMIT}"
            )


@dataclass(frozen=True)
class Segment:
    """Closed straight segment between two distinct points."""
    a: Point
    b: Point

    def __post_init__(self):
        if self.a == self.b:
            raise ValueError(f"Zero-length segment at ({self.a.x}, {self.a.y})")


@dataclass(frozen=True)
class Polygon:
    """
    Polygon given by its vertex cycle (closure implicit).

    Simplicity and orientation are not enforced here; use
    ``geometry.polygon_is_simple`` and ``instance.validate``.
    """
    vertices: Tuple[Point, ...]

    def __post_init__(self):
        """Ensure vertices are stored as a tuple."""
        if not isinstance(self.vertices, tuple):
            object.__setattr__(self, "vertices", tuple(self.vertices))

    def __len__(self) -> int:
        return len(self.vertices)

    def sides(self) -> List[Segment]:
        """Polygon sides in vertex order; side i runs from vertex i to vertex i+1."""
        m = len(self.vertices)
        return [Segment(self.vertices[i], self.vertices[(i + 1) % m]) for i in range(m)]

    def signed_area2(self) -> int:
        """Twice the signed area (positive for counter-clockwise)."""
        m = len(self.vertices)
        total = 0
        for i in range(m):
            p = self.vertices[i]
            q = self.vertices[(i + 1) % m]
            total += p.x * q.y - q.x * p.y
        return total

    def counter_clockwise(self) -> "Polygon":
        """Return the same polygon in counter-clockwise orientation."""
        if self.signed_area2() < 0:
            return Polygon(tuple(reversed(self.vertices)))
        return self


@dataclass(frozen=True)
class Instance:
    """Problem input: simple polygon Q and the n points X to embed the cycle on."""
    polygon: Polygon
    points: Tuple[Point, ...]
    name: Optional[str] = None

    def __post_init__(self):
        """Ensure points are stored as a tuple."""
        if not isinstance(self.points, tuple):
            object.__setattr__(self, "points", tuple(self.points))

    @property
    def n(self) -> int:
        return len(self.points)

    @cached_property
    def coords(self) -> np.ndarray:
        """Read-only (n, 2) int64 array of the points."""
        array = np.array([(p.x, p.y) for p in self.points], dtype=np.int64).reshape(-1, 2)
        array.setflags(write=False)
        return array

    @cached_property
    def side_array(self) -> np.ndarray:
        """Read-only (m, 2, 2) array of polygon sides."""
        vertices = np.array([(v.x, v.y) for v in self.polygon.vertices], dtype=np.int64).reshape(-1, 2)
        sides = np.stack([vertices, np.roll(vertices, -1, axis=0)], axis=1)
        sides.setflags(write=False)
        return sides

    @cached_property
    def crossing_table(self) -> Optional["CrossingTable"]:
        """Segment lookup table for fitness evaluation, or None for large n."""
        from src.geometry import TABLE_MAX_POINTS, CrossingTable

        if self.n > TABLE_MAX_POINTS:
            return None
        return CrossingTable.build(self.coords, self.side_array)


@dataclass(frozen=True)
class GenSpec:
    """Parameters for random instance generation."""
    sides: int
    points: int
    seed: int
    bounding_box: int = 500
    convex: bool = False

    def __post_init__(self):
        if self.sides < 3:
            raise ValueError(f"sides must be >= 3 (got {self.sides})")
        if self.points < 3:
            raise ValueError(f"points must be >= 3 (got {self.points})")
        if self.bounding_box < 10:
            raise ValueError(f"bounding box half-width must be >= 10 (got {self.bounding_box})")
        if self.bounding_box > COORDINATE_LIMIT:
            raise ValueError(f"bounding box half-width must be <= {COORDINATE_LIMIT}")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")


@dataclass(frozen=True)
class Chromosome:
    """One embedded cycle P: a permutation of point indices in cycle order."""
    order: Tuple[int, ...]

    def __post_init__(self):
        """Ensure order is a tuple holding a permutation of 0..n-1."""
        order = tuple(int(i) for i in self.order)
        object.__setattr__(self, "order", order)
        if sorted(order) != list(range(len(order))):
            raise InvalidChromosomeError(f"Order {list(order)} is not a permutation of 0..{len(order) - 1}")

    def __len__(self) -> int:
        return len(self.order)

    def __getitem__(self, position: int) -> int:
        return self.order[position]

    def genes(self, points: Tuple[Point, ...]) -> List[Point]:
        """Coordinate view: the point each cycle vertex is embedded on."""
        return [points[i] for i in self.order]


@dataclass(frozen=True)
class FitnessBreakdown:
    """Crossing counts: c1 self-crossings, c2 polygon-side crossings, f = c1 + c2."""
    c1: int
    c2: int

    @property
    def f(self) -> int:
        return self.c1 + self.c2


@dataclass
class GaConfig:
    """Genetic algorithm settings. Defaults come from ``src.data.ga_config``."""
    version: AlgorithmVersion = AlgorithmVersion.V2
    population_multiplier: int = 3
    children_fraction: Fraction = Fraction(1, 3)
    crossover_rate: float = 0.8
    swap_mutation_rate: float = 0.1
    uncross_mutation_rate: float = 0.1
    generation_cap: int = 1000
    restarts: int = 1
    seed: int = 0
    fitness_workers: int = 1

    def __post_init__(self):
        """Ensure version is an AlgorithmVersion and the fraction is exact."""
        if not isinstance(self.version, AlgorithmVersion):
            self.version = AlgorithmVersion(int(self.version))
        if not isinstance(self.children_fraction, Fraction):
            self.children_fraction = Fraction(self.children_fraction).limit_denominator(1000)

    @property
    def operator_rates(self) -> Tuple[float, float, float]:
        return (self.crossover_rate, self.swap_mutation_rate, self.uncross_mutation_rate)

    def validate(self) -> "ValidationResult":
        """Collect every configuration problem."""
        result = ValidationResult(is_valid=True)
        for name, rate in zip(("crossover", "swap", "uncross"), self.operator_rates):
            if not 0.0 <= rate <= 1.0:
                result.add_error(f"{name} rate {rate} is not a probability")
        if abs(sum(self.operator_rates) - 1.0) > 1e-9:
            result.add_error(f"operator rates must sum to 1 (got {sum(self.operator_rates)})")
        if self.version is AlgorithmVersion.V1 and self.uncross_mutation_rate != 0:
            result.add_error("version 1 does not use the uncross mutation (rate must be 0)")
        if self.population_multiplier < 1:
            result.add_error("population multiplier must be >= 1")
        if not 0 < self.children_fraction <= 1:
            result.add_error("children fraction must be in (0, 1]")
        if self.generation_cap < 0:
            result.add_error("generation cap must be >= 0")
        if self.restarts < 1:
            result.add_error("restarts must be >= 1")
        if self.seed < 0:
            result.add_error("seed must be non-negative")
        if self.fitness_workers < 1:
            result.add_error("fitness workers must be >= 1")
        return result


@dataclass
class GenerationStats:
    """One generation-log entry."""
    generation: int
    best_f: int
    mean_f: float


@dataclass
class RunResult:
    """Best embedding found by a GA run."""
    best: Chromosome
    best_fitness: FitnessBreakdown
    generations_used: int
    restarts_used: int
    wall_time: float  # seconds
    generation_log: List[GenerationStats] = field(default_factory=list)


@dataclass
class OracleResult:
    """Exact optimum over all distinct cyclic orders."""
    min_f: int
    min_c1: int
    min_c2: int
    witness: Chromosome
    orders_examined: int


@dataclass
class OracleComparison:
    """GA result measured against the exhaustive optimum."""
    oracle_min_f: int
    ga_best_f: int

    @property
    def gap(self) -> int:
        return self.ga_best_f - self.oracle_min_f


@dataclass
class ValidationResult:
    """Result of a validation with detailed error messages."""
    is_valid: bool
    errors: List[str] = field(default_factory=list)

    def add_error(self, error: str) -> None:
        """Add a validation error."""
        self.is_valid = False
        self.errors.append(error)

    @property
    def error_message(self) -> str:
        """Get formatted error message."""
        if not self.errors:
            return ""
        return "; ".join(self.errors)
