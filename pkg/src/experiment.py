"""
Experiment grid over polygon sides x point counts x polygons x runs x versions.

Every cell is reproducible on its own: the instance seed is a stable hash of
(base_seed, sides, points, polygon_id) and the run seed additionally of
(run_id, version). Rows come back in grid order whatever order cells finish in.
"""

import asyncio
import logging
from concurrent.futures import Executor, ProcessPoolExecutor, ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Dict, List, Optional, Union

import pandas as pd

from src.data.ga_config import (
    DEFAULT_BOUNDING_BOX,
    DEFAULT_GENERATION_CAP,
    DEFAULT_POINTS,
    DEFAULT_POLYGONS_PER_CONFIG,
    DEFAULT_RUNS_PER_INSTANCE,
    DEFAULT_SIDES,
    DEFAULT_VERSIONS,
    get_ga_config,
)
from src.genetic_algorithm import run_ga
from src.instance import generate_instance
from src.models import AlgorithmVersion, GenSpec, Instance, ValidationResult
from src.seeding import derive_seed

logger = logging.getLogger(__name__)

CSV_COLUMNS = [
    "sides", "points", "polygon_id", "run_id", "version",
    "best_f", "best_c1", "best_c2", "generations_used", "wall_ms", "seed",
]
ERROR_MARKER = "error"


def instance_seed(base_seed: int, sides: int, points: int, polygon_id: int) -> int:
    return derive_seed(base_seed, sides, points, polygon_id)


def run_seed(base_seed: int, sides: int, points: int, polygon_id: int,
             run_id: int, version: AlgorithmVersion) -> int:
    return derive_seed(base_seed, sides, points, polygon_id, run_id, version.value)


@dataclass
class ExperimentSpec:
    """Grid definition; defaults are 4 x 6 x 5 x 5 x 2 cells."""
    sides_list: List[int] = field(default_factory=lambda: list(DEFAULT_SIDES))
    points_list: List[int] = field(default_factory=lambda: list(DEFAULT_POINTS))
    polygons_per_config: int = DEFAULT_POLYGONS_PER_CONFIG
    runs_per_instance: int = DEFAULT_RUNS_PER_INSTANCE
    versions: List[AlgorithmVersion] = field(default_factory=lambda: list(DEFAULT_VERSIONS))
    base_seed: int = 0
    bounding_box: int = DEFAULT_BOUNDING_BOX
    generation_cap: int = DEFAULT_GENERATION_CAP

    def validate(self) -> ValidationResult:
        result = ValidationResult(is_valid=True)
        for name, values in (("sides", self.sides_list), ("points", self.points_list)):
            if not values:
                result.add_error(f"{name} list is empty")
            elif min(values) < 3:
                result.add_error(f"{name} values must be >= 3")
        if not self.versions:
            result.add_error("versions list is empty")
        if self.polygons_per_config < 1:
            result.add_error("polygons per configuration must be >= 1")
        if self.runs_per_instance < 1:
            result.add_error("runs per instance must be >= 1")
        if self.base_seed < 0:
            result.add_error("base seed must be non-negative")
        return result

    def cells(self) -> List["ExperimentCell"]:
        """All cells in grid order: sides, points, polygon, run, version."""
        return [
            ExperimentCell(sides, points, polygon_id, run_id, AlgorithmVersion(version),
                           self.base_seed, self.bounding_box, self.generation_cap)
            for sides in self.sides_list
            for points in self.points_list
            for polygon_id in range(self.polygons_per_config)
            for run_id in range(self.runs_per_instance)
            for version in self.versions
        ]


@dataclass(frozen=True)
class ExperimentCell:
    sides: int
    points: int
    polygon_id: int
    run_id: int
    version: AlgorithmVersion
    base_seed: int
    bounding_box: int
    generation_cap: int

    @property
    def instance_seed(self) -> int:
        return instance_seed(self.base_seed, self.sides, self.points, self.polygon_id)

    @property
    def run_seed(self) -> int:
        return run_seed(self.base_seed, self.sides, self.points, self.polygon_id,
                        self.run_id, self.version)


@dataclass
class ExperimentRecord:
    """One CSV row. Failed cells keep their coordinates and carry `error`."""
    sides: int
    points: int
    polygon_id: int
    run_id: int
    version: AlgorithmVersion
    seed: int
    best_f: Optional[int] = None
    best_c1: Optional[int] = None
    best_c2: Optional[int] = None
    generations_used: Optional[int] = None
    wall_ms: Optional[int] = None
    error: Optional[str] = None

    def as_row(self) -> Dict[str, object]:
        row = {
            "sides": self.sides,
            "points": self.points,
            "polygon_id": self.polygon_id,
            "run_id": self.run_id,
            "version": self.version.value,
            "best_f": self.best_f,
            "best_c1": self.best_c1,
            "best_c2": self.best_c2,
            "generations_used": self.generations_used,
            "wall_ms": self.wall_ms,
            "seed": self.seed,
        }
        if self.error is not None:
            row["best_f"] = ERROR_MARKER
        return row


@lru_cache(maxsize=32)
def _cell_instance(sides: int, points: int, seed: int, bounding_box: int) -> Instance:
    return generate_instance(GenSpec(sides=sides, points=points, seed=seed, bounding_box=bounding_box))


def run_cell(cell: ExperimentCell) -> ExperimentRecord:
    """Generate the cell's instance, solve it, and record the outcome."""
    record = ExperimentRecord(
        sides=cell.sides, points=cell.points, polygon_id=cell.polygon_id,
        run_id=cell.run_id, version=cell.version, seed=cell.run_seed,
    )
    try:
        instance = _cell_instance(cell.sides, cell.points, cell.instance_seed, cell.bounding_box)
        config = get_ga_config(cell.version, seed=cell.run_seed, generation_cap=cell.generation_cap)
        result = run_ga(instance, config)
    except Exception as exc:
        logger.exception("Cell %s failed", cell)
        record.error = f"{type(exc).__name__}: {exc}"
        return record
    record.best_f = result.best_fitness.f
    record.best_c1 = result.best_fitness.c1
    record.best_c2 = result.best_fitness.c2
    record.generations_used = result.generations_used
    record.wall_ms = int(round(result.wall_time * 1000))
    return record


class ExperimentRunner:
    """
    Runs an experiment grid on an executor.

    One worker uses a single background thread; more workers use a process
    pool. Either way records are returned in grid order.
    """

    def __init__(self, workers: int = 1):
        if workers < 1:
            raise ValueError("workers must be >= 1")
        self.workers = workers

    def _executor(self) -> Executor:
        if self.workers > 1:
            return ProcessPoolExecutor(max_workers=self.workers)
        return ThreadPoolExecutor(max_workers=1)

    async def run(self, spec: ExperimentSpec) -> List[ExperimentRecord]:
        """
        Run every cell of the grid.

        Args:
            spec: ExperimentSpec (validated here)

        Returns:
            One record per cell, in grid order
        """
        validation = spec.validate()
        if not validation.is_valid:
            raise ValueError(validation.error_message)

        cells = spec.cells()
        logger.info("Running %d experiment cells on %d worker(s)", len(cells), self.workers)
        loop = asyncio.get_running_loop()
        done = 0

        async def run_one(executor: Executor, cell: ExperimentCell) -> ExperimentRecord:
            nonlocal done
            record = await loop.run_in_executor(executor, run_cell, cell)
            done += 1
            logger.debug("Cell %d/%d done: %s", done, len(cells), record)
            return record

        with self._executor() as executor:
            records = await asyncio.gather(*(run_one(executor, cell) for cell in cells))
        return list(records)


# ============================================================================
# CSV AND AGGREGATES
# ============================================================================

def records_frame(records: List[ExperimentRecord]) -> pd.DataFrame:
    """Records as a DataFrame with the CSV columns (object dtype keeps integers exact)."""
    return pd.DataFrame([record.as_row() for record in records], columns=CSV_COLUMNS, dtype=object)


def write_csv(records: List[ExperimentRecord], path: Union[str, Path]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    records_frame(records).to_csv(path, index=False, lineterminator="\n")


AGGREGATE_VIEWS = {
    "by_sides_at_points": ["points", "sides"],
    "by_points_at_sides": ["sides", "points"],
    "by_sides": ["sides"],
    "by_points": ["points"],
}


def aggregate(records: List[ExperimentRecord]) -> Dict[str, pd.DataFrame]:
    """
    Mean best F per version under the four grouping views.

    Each view has the grouping keys, ``version``, ``total`` (sum of best F),
    ``runs``, ``mean`` = total / runs and the same ratio as a Fraction in
    ``exact_mean``. Failed cells are left out.
    """
    rows = [
        {"sides": r.sides, "points": r.points, "version": r.version.value, "best_f": r.best_f}
        for r in records if r.error is None
    ]
    frame = pd.DataFrame(rows, columns=["sides", "points", "version", "best_f"])
    views = {}
    for name, keys in AGGREGATE_VIEWS.items():
        grouped = (
            frame.groupby(keys + ["version"])["best_f"]
            .agg(total="sum", runs="count")
            .reset_index()
        )
        grouped["mean"] = grouped["total"] / grouped["runs"]
        grouped["exact_mean"] = [
            Fraction(int(total), int(runs)) for total, runs in zip(grouped["total"], grouped["runs"])
        ]
        views[name] = grouped
    return views


def format_aggregates(views: Dict[str, pd.DataFrame]) -> str:
    """Text tables of mean best F, one column per version, as exact total/runs fractions."""
    titles = {
        "by_sides_at_points": "Mean best F by sides, per point count",
        "by_points_at_sides": "Mean best F by points, per side count",
        "by_sides": "Mean best F by sides (averaged over points)",
        "by_points": "Mean best F by points (averaged over sides)",
    }
    blocks = []
    for name, keys in AGGREGATE_VIEWS.items():
        view = views[name]
        blocks.append(titles[name])
        blocks.append("-" * 70)
        if view.empty:
            blocks.append("(no successful runs)")
        else:
            table = view.assign(mean_text=view["exact_mean"].map(str)).pivot(
                index=keys, columns="version", values="mean_text"
            )
            table.columns = [f"V{version}" for version in table.columns]
            blocks.append(table.fillna("-").to_string())
        blocks.append("")
    return "\n".join(blocks)
