"""Problem instances: random generation, validation and text I/O."""

import logging
import math
from collections import defaultdict
from pathlib import Path
from typing import Dict, List, Optional, TextIO, Tuple, Union

import numpy as np

from src.errors import GenerationError, InstanceFormatError, InvalidInstanceError
from src.geometry import (
    as_coords,
    crossing_pairs,
    fold_flags,
    orient,
    point_in_polygon,
    polygon_is_simple,
    segments_cross_properly,
    two_opt_reverse,
)
from src.models import GenSpec, Instance, Point, PointLocation, Polygon, Segment, ValidationResult
from src.seeding import derive_seed, make_rng

logger = logging.getLogger(__name__)

MAX_POLYGON_ATTEMPTS = 10_000
MIN_POINT_DRAWS = 10_000
POINT_DRAWS_PER_POINT = 1_000


# ============================================================================
# GENERATION
# ============================================================================

def _sample_distinct(rng: np.random.Generator, count: int, half_width: int) -> np.ndarray:
    """Draw `count` distinct grid points in [-half_width, half_width]^2."""
    coords = rng.integers(-half_width, half_width + 1, size=(count, 2), dtype=np.int64)
    while len(np.unique(coords, axis=0)) != count:
        coords = rng.integers(-half_width, half_width + 1, size=(count, 2), dtype=np.int64)
    return coords


def _untangle(coords: np.ndarray, rng: np.random.Generator) -> Optional[List[int]]:
    """
    Apply 2-opt reversals to crossing side pairs until the vertex cycle is simple.

    Only proper crossings are reversed; each reversal strictly shortens the
    perimeter. Returns None when a degenerate contact (touching or collinear
    sides, or a fold) blocks untangling.
    """
    m = len(coords)
    order = list(range(m))
    points = [Point(int(x), int(y)) for x, y in coords]
    for _ in range(20 * m * m):
        if fold_flags(coords, order).any():
            return None
        pairs = crossing_pairs(coords, order)
        if not pairs:
            return order
        i, j = pairs[int(rng.integers(len(pairs)))]
        side_i = _side(points, order, i)
        side_j = _side(points, order, j)
        if not segments_cross_properly(side_i, side_j):
            return None
        order = two_opt_reverse(order, i, j)
    return None


def _side(points: List[Point], order: List[int], k: int) -> Segment:
    return Segment(points[order[k]], points[order[(k + 1) % len(order)]])


def _convex_candidate(rng: np.random.Generator, sides: int, half_width: int) -> np.ndarray:
    """Vertices at sorted random angles on a circle, rounded to the grid."""
    angles = np.sort(rng.uniform(0.0, 2.0 * math.pi, size=sides))
    radius = 0.95 * half_width
    xs = np.rint(radius * np.cos(angles)).astype(np.int64)
    ys = np.rint(radius * np.sin(angles)).astype(np.int64)
    return np.stack([xs, ys], axis=1)


def _has_straight_corner(poly: Polygon) -> bool:
    vertices = poly.vertices
    m = len(vertices)
    return any(orient(vertices[i - 1], vertices[i], vertices[(i + 1) % m]) == 0 for i in range(m))


def _is_strictly_convex(poly: Polygon) -> bool:
    vertices = poly.vertices
    m = len(vertices)
    turns = {orient(vertices[i - 1], vertices[i], vertices[(i + 1) % m]) for i in range(m)}
    return turns == {1} and polygon_is_simple(poly)


def generate_polygon(spec: GenSpec) -> Polygon:
    """
    Generate a random simple polygon with exactly ``spec.sides`` vertices.

    Random distinct grid points in the box are put in a random cyclic order
    and untangled by 2-opt reversals of crossing sides. With ``spec.convex``
    the vertices instead sit at random angles on a circle. Candidates with
    degenerate contacts or straight (180 degree) corners are resampled.

    Returns:
        Counter-clockwise simple polygon, deterministic for a fixed seed

    Raises:
        GenerationError: no valid polygon within the attempt budget
    """
    rng = make_rng(spec.seed, 0)
    for attempt in range(1, MAX_POLYGON_ATTEMPTS + 1):
        if spec.convex:
            coords = _convex_candidate(rng, spec.sides, spec.bounding_box)
            if len(np.unique(coords, axis=0)) != spec.sides:
                continue
            poly = Polygon(tuple(Point(int(x), int(y)) for x, y in coords))
            if not _is_strictly_convex(poly):
                continue
        else:
            coords = _sample_distinct(rng, spec.sides, spec.bounding_box)
            order = _untangle(coords, rng)
            if order is None:
                continue
            poly = Polygon(tuple(Point(int(coords[i, 0]), int(coords[i, 1])) for i in order))
            if _has_straight_corner(poly) or not polygon_is_simple(poly):
                continue
        logger.debug("Generated %d-gon (seed=%d) after %d attempt(s)", spec.sides, spec.seed, attempt)
        return poly.counter_clockwise()
    raise GenerationError(
        f"No simple {spec.sides}-gon found in {MAX_POLYGON_ATTEMPTS} attempts (seed={spec.seed})"
    )


def generate_points(poly: Polygon, n: int, seed: int) -> List[Point]:
    """
    Rejection-sample n distinct grid points strictly inside a simple polygon.

    Candidates are drawn uniformly from the polygon's bounding box; boundary,
    outside and duplicate draws are rejected.

    Raises:
        GenerationError: draw budget exhausted before n points were accepted
    """
    if n < 3:
        raise ValueError(f"n must be >= 3 (got {n})")
    rng = make_rng(seed, 1)
    vertices = as_coords(poly.vertices)
    (min_x, min_y), (max_x, max_y) = vertices.min(axis=0), vertices.max(axis=0)
    budget = max(MIN_POINT_DRAWS, POINT_DRAWS_PER_POINT * n)

    accepted: List[Point] = []
    seen = set()
    for _ in range(budget):
        x = int(rng.integers(min_x, max_x + 1))
        y = int(rng.integers(min_y, max_y + 1))
        if (x, y) in seen:
            continue
        candidate = Point(x, y)
        if point_in_polygon(candidate, poly) is not PointLocation.INSIDE:
            continue
        seen.add((x, y))
        accepted.append(candidate)
        if len(accepted) == n:
            return accepted
    raise GenerationError(
        f"Only {len(accepted)} of {n} interior points found in {budget} draws"
    )


def generate_instance(spec: GenSpec, name: Optional[str] = None) -> Instance:
    """Generate a polygon and its interior point set from one GenSpec."""
    polygon = generate_polygon(spec)
    points = generate_points(polygon, spec.points, derive_seed(spec.seed, "points"))
    instance = Instance(polygon=polygon, points=tuple(points), name=name)
    logger.info(
        "Generated instance m=%d n=%d seed=%d%s",
        spec.sides, spec.points, spec.seed, " (convex)" if spec.convex else "",
    )
    return instance


# ============================================================================
# VALIDATION
# ============================================================================

def validate(instance: Instance) -> ValidationResult:
    """
    Check every Instance invariant.

    Collects all violations:
    - polygon has at least 3 vertices, consecutive vertices distinct
    - polygon is simple and counter-clockwise
    - at least 3 points, pairwise distinct
    - no point on a polygon vertex; every point strictly inside

    Returns:
        ValidationResult with one message per violation
    """
    result = ValidationResult(is_valid=True)
    vertices = instance.polygon.vertices
    m = len(vertices)

    polygon_usable = True
    if m < 3:
        result.add_error(f"polygon needs at least 3 vertices (got {m})")
        polygon_usable = False
    else:
        for i in range(m):
            if vertices[i] == vertices[(i + 1) % m]:
                result.add_error(f"polygon vertices {i} and {(i + 1) % m} coincide")
                polygon_usable = False
        if polygon_usable:
            if not polygon_is_simple(instance.polygon):
                result.add_error("polygon not simple")
                polygon_usable = False
            elif instance.polygon.signed_area2() <= 0:
                result.add_error("polygon not counter-clockwise")

    n = len(instance.points)
    if n < 3:
        result.add_error(f"need at least 3 points (got {n})")

    positions: Dict[Tuple[int, int], List[int]] = defaultdict(list)
    for index, point in enumerate(instance.points):
        positions[(point.x, point.y)].append(index)
    for indices in positions.values():
        for later in indices[1:]:
            result.add_error(f"points {indices[0]} and {later} are duplicates")

    vertex_index = {(v.x, v.y): i for i, v in enumerate(vertices)}
    if polygon_usable:
        for index, point in enumerate(instance.points):
            key = (point.x, point.y)
            if key in vertex_index:
                result.add_error(f"point {index} coincides with polygon vertex {vertex_index[key]}")
                continue
            location = point_in_polygon(point, instance.polygon)
            if location is PointLocation.BOUNDARY:
                result.add_error(f"point {index} ({point.x}, {point.y}) lies on the polygon boundary")
            elif location is PointLocation.OUTSIDE:
                result.add_error(f"point {index} ({point.x}, {point.y}) lies outside the polygon")

    return result


# ============================================================================
# TEXT FORMAT
# ============================================================================

def _parse_int_pair(tokens: List[str], line: int) -> Point:
    if len(tokens) != 2:
        raise InstanceFormatError(f"expected 2 integers, found {len(tokens)} token(s)", line)
    try:
        x, y = int(tokens[0]), int(tokens[1])
    except ValueError as exc:
        raise InstanceFormatError(f"invalid integer in {' '.join(tokens)!r}", line) from exc
    try:
        return Point(x, y)
    except ValueError as exc:
        raise InstanceFormatError(str(exc), line) from exc


def _parse_header(entry: Optional[Tuple[int, List[str]]], keyword: str, last_line: int) -> Tuple[int, int]:
    if entry is None:
        raise InstanceFormatError(f"missing {keyword} header", last_line + 1)
    line, tokens = entry
    if len(tokens) != 2 or tokens[0] != keyword:
        raise InstanceFormatError(f"expected '{keyword} <count>', found {' '.join(tokens)!r}", line)
    try:
        count = int(tokens[1])
    except ValueError as exc:
        raise InstanceFormatError(f"invalid {keyword} count {tokens[1]!r}", line) from exc
    if count < 0:
        raise InstanceFormatError(f"negative {keyword} count", line)
    return line, count


def _read_rows(entries: List[Tuple[int, List[str]]], start: int, count: int,
               keyword: str, header_line: int) -> List[Point]:
    rows: List[Point] = []
    for offset in range(count):
        position = start + offset
        if position >= len(entries) or entries[position][1][0] in ("POLYGON", "POINTS"):
            raise InstanceFormatError(
                f"{keyword} declares {count} rows but only {offset} follow", header_line
            )
        line, tokens = entries[position]
        rows.append(_parse_int_pair(tokens, line))
    return rows


def parse_instance(text: str, name: Optional[str] = None) -> Instance:
    """
    Parse and validate the canonical instance text.

    Raises:
        InstanceFormatError: malformed syntax (message names the line)
        InvalidInstanceError: the parsed instance fails ``validate``
    """
    entries = [
        (number, raw.split())
        for number, raw in enumerate(text.splitlines(), start=1)
        if raw.strip() and not raw.lstrip().startswith("#")
    ]
    last_line = len(text.splitlines())

    polygon_line, m = _parse_header(entries[0] if entries else None, "POLYGON", last_line)
    vertices = _read_rows(entries, 1, m, "POLYGON", polygon_line)

    points_index = 1 + m
    points_line, n = _parse_header(
        entries[points_index] if points_index < len(entries) else None, "POINTS", last_line
    )
    points = _read_rows(entries, points_index + 1, n, "POINTS", points_line)

    trailing = points_index + 1 + n
    if trailing < len(entries):
        line, tokens = entries[trailing]
        raise InstanceFormatError(
            f"unexpected content after {n} declared points: {' '.join(tokens)!r}", line
        )

    polygon = Polygon(tuple(vertices))
    if len(vertices) >= 3:
        polygon = polygon.counter_clockwise()
    instance = Instance(polygon=polygon, points=tuple(points), name=name)
    validation = validate(instance)
    if not validation.is_valid:
        raise InvalidInstanceError(validation.errors)
    return instance


def format_instance(instance: Instance) -> str:
    """Canonical text form (no comments, no blank lines)."""
    lines = [f"POLYGON {len(instance.polygon)}"]
    lines += [f"{v.x} {v.y}" for v in instance.polygon.vertices]
    lines.append(f"POINTS {len(instance.points)}")
    lines += [f"{p.x} {p.y}" for p in instance.points]
    return "\n".join(lines) + "\n"


def read_instance(stream: TextIO, name: Optional[str] = None) -> Instance:
    """Read an instance from a text stream."""
    return parse_instance(stream.read(), name=name)


def write_instance(instance: Instance, stream: TextIO) -> None:
    """Write an instance to a text stream in canonical form."""
    stream.write(format_instance(instance))


def load_instance(path: Union[str, Path]) -> Instance:
    path = Path(path)
    with path.open("r", encoding="utf-8") as handle:
        return read_instance(handle, name=path.stem)


def save_instance(instance: Instance, path: Union[str, Path]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="\n") as handle:
        write_instance(instance, handle)
