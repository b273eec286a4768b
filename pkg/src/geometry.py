"""
Exact integer geometry kernel.

Scalar predicates (``orient``, ``segments_intersect``, ``point_in_polygon``)
work on ``Point``/``Segment`` values with Python integers. The crossing
counters evaluate all segment pairs at once on int64 numpy arrays; with
coordinates capped at 10^6 every cross product stays below 2^63, so both
paths are exact and agree.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from src.errors import InvalidChromosomeError
from src.models import Point, PointLocation, Polygon, Segment

PointsLike = Union[Sequence[Point], np.ndarray]


# ---------------------------------------------------------------------------
# Scalar predicates
# ---------------------------------------------------------------------------

def orient(p: Point, q: Point, r: Point) -> int:
    """
    Orientation of the triple (p, q, r).

    Returns:
        +1 for a counter-clockwise turn, -1 for clockwise, 0 when collinear.
    """
    cross = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)
    return (cross > 0) - (cross < 0)


def _within_box(p: Point, q: Point, r: Point) -> bool:
    """True if q lies in the bounding box of segment pr."""
    return min(p.x, r.x) <= q.x <= max(p.x, r.x) and min(p.y, r.y) <= q.y <= max(p.y, r.y)


def segments_intersect(s1: Segment, s2: Segment) -> bool:
    """
    True iff the closed segments share at least one point.

    Proper crossings, endpoint touching and collinear overlap all count.
    """
    p1, q1, p2, q2 = s1.a, s1.b, s2.a, s2.b
    o1 = orient(p1, q1, p2)
    o2 = orient(p1, q1, q2)
    o3 = orient(p2, q2, p1)
    o4 = orient(p2, q2, q1)

    if o1 != o2 and o3 != o4:
        return True

    # Collinear cases: an endpoint lies on the other segment
    if o1 == 0 and _within_box(p1, p2, q1):
        return True
    if o2 == 0 and _within_box(p1, q2, q1):
        return True
    if o3 == 0 and _within_box(p2, p1, q2):
        return True
    if o4 == 0 and _within_box(p2, q1, q2):
        return True
    return False


def segments_cross_properly(s1: Segment, s2: Segment) -> bool:
    """True iff the segments cross at a single point interior to both."""
    return (
        orient(s1.a, s1.b, s2.a) * orient(s1.a, s1.b, s2.b) < 0
        and orient(s2.a, s2.b, s1.a) * orient(s2.a, s2.b, s1.b) < 0
    )


def point_in_polygon(p: Point, poly: Polygon) -> PointLocation:
    """
    Classify a point against a simple polygon by ray casting.

    A point on any side (vertices included) is BOUNDARY. Otherwise a ray
    towards +x is cast and crossings are counted with the half-open rule on
    y, compared exactly through a cross-product sign.
    """
    inside = False
    vertices = poly.vertices
    m = len(vertices)
    for i in range(m):
        a = vertices[i]
        b = vertices[(i + 1) % m]
        if orient(a, b, p) == 0 and _within_box(a, p, b):
            return PointLocation.BOUNDARY
        if (a.y > p.y) != (b.y > p.y):
            cross = (b.x - a.x) * (p.y - a.y) - (p.x - a.x) * (b.y - a.y)
            if (cross > 0) == (b.y > a.y):
                inside = not inside
    return PointLocation.INSIDE if inside else PointLocation.OUTSIDE


def intersection_point(s1: Segment, s2: Segment) -> Optional[Tuple[float, float]]:
    """
    A representative shared point of two segments, or None if disjoint.

    Non-parallel segments give their exact crossing point. Collinear
    overlaps give the midpoint of the overlap.
    """
    if not segments_intersect(s1, s2):
        return None
    dx1, dy1 = s1.b.x - s1.a.x, s1.b.y - s1.a.y
    dx2, dy2 = s2.b.x - s2.a.x, s2.b.y - s2.a.y
    denom = dx1 * dy2 - dy1 * dx2
    if denom != 0:
        t = Fraction((s2.a.x - s1.a.x) * dy2 - (s2.a.y - s1.a.y) * dx2, denom)
        return (float(s1.a.x + t * dx1), float(s1.a.y + t * dy1))

    shared = [p for p in (s1.a, s1.b) if _within_box(s2.a, p, s2.b)]
    shared += [p for p in (s2.a, s2.b) if _within_box(s1.a, p, s1.b)]
    shared.sort(key=lambda p: (p.x, p.y))
    lo, hi = shared[0], shared[-1]
    return ((lo.x + hi.x) / 2.0, (lo.y + hi.y) / 2.0)


# ---------------------------------------------------------------------------
# Vectorized segment-pair evaluation
# ---------------------------------------------------------------------------

def as_coords(points: PointsLike) -> np.ndarray:
    """Points as an (n, 2) int64 array."""
    if isinstance(points, np.ndarray):
        return points.astype(np.int64, copy=False)
    return np.array([(p.x, p.y) for p in points], dtype=np.int64).reshape(-1, 2)


def polygon_side_array(poly: Polygon) -> np.ndarray:
    """Polygon sides as an (m, 2, 2) array of endpoint pairs."""
    vertices = as_coords(poly.vertices)
    return np.stack([vertices, np.roll(vertices, -1, axis=0)], axis=1)


def cycle_edge_array(coords: np.ndarray, order: Sequence[int]) -> np.ndarray:
    """Cycle edges as an (n, 2, 2) array; edge i joins positions i and i+1 mod n."""
    path = coords[np.asarray(order, dtype=np.intp)]
    return np.stack([path, np.roll(path, -1, axis=0)], axis=1)


def _orient_many(p: np.ndarray, q: np.ndarray, r: np.ndarray) -> np.ndarray:
    cross = (q[..., 0] - p[..., 0]) * (r[..., 1] - p[..., 1]) - (q[..., 1] - p[..., 1]) * (r[..., 0] - p[..., 0])
    return np.sign(cross)


def _within_box_many(p: np.ndarray, q: np.ndarray, r: np.ndarray) -> np.ndarray:
    return (
        (np.minimum(p[..., 0], r[..., 0]) <= q[..., 0])
        & (q[..., 0] <= np.maximum(p[..., 0], r[..., 0]))
        & (np.minimum(p[..., 1], r[..., 1]) <= q[..., 1])
        & (q[..., 1] <= np.maximum(p[..., 1], r[..., 1]))
    )


def intersection_matrix(first: np.ndarray, second: np.ndarray) -> np.ndarray:
    """
    Pairwise ``segments_intersect`` for two segment arrays.

    Args:
        first: (k, 2, 2) array of segments
        second: (l, 2, 2) array of segments

    Returns:
        (k, l) boolean matrix
    """
    p1 = first[:, None, 0]
    q1 = first[:, None, 1]
    p2 = second[None, :, 0]
    q2 = second[None, :, 1]

    o1 = _orient_many(p1, q1, p2)
    o2 = _orient_many(p1, q1, q2)
    o3 = _orient_many(p2, q2, p1)
    o4 = _orient_many(p2, q2, q1)

    hits = (o1 != o2) & (o3 != o4)
    hits |= (o1 == 0) & _within_box_many(p1, p2, q1)
    hits |= (o2 == 0) & _within_box_many(p1, q2, q1)
    hits |= (o3 == 0) & _within_box_many(p2, p1, q2)
    hits |= (o4 == 0) & _within_box_many(p2, q1, q2)
    return hits


@lru_cache(maxsize=128)
def non_adjacent_mask(k: int) -> np.ndarray:
    """Upper-triangular mask of edge pairs (i < j) of a k-cycle sharing no vertex."""
    i, j = np.triu_indices(k, 1)
    keep = (j - i >= 2) & ~((i == 0) & (j == k - 1))
    mask = np.zeros((k, k), dtype=bool)
    mask[i[keep], j[keep]] = True
    mask.setflags(write=False)
    return mask


def fold_flags(coords: np.ndarray, order: Sequence[int]) -> np.ndarray:
    """
    Per cycle position, whether the two edges meeting there overlap beyond it.

    That happens when the neighbours are collinear with the vertex and on the
    same side of it (a 180 degree fold back along the incoming edge).
    """
    path = coords[np.asarray(order, dtype=np.intp)]
    to_prev = np.roll(path, 1, axis=0) - path
    to_next = np.roll(path, -1, axis=0) - path
    cross = to_prev[:, 0] * to_next[:, 1] - to_prev[:, 1] * to_next[:, 0]
    dot = to_prev[:, 0] * to_next[:, 0] + to_prev[:, 1] * to_next[:, 1]
    return (cross == 0) & (dot > 0)


def crossing_pairs(coords: np.ndarray, order: Sequence[int]) -> List[Tuple[int, int]]:
    """Sorted non-adjacent edge pairs (i, j), i < j, whose segments intersect."""
    edges = cycle_edge_array(coords, order)
    hits = intersection_matrix(edges, edges) & non_adjacent_mask(len(order))
    return [(int(i), int(j)) for i, j in np.argwhere(hits)]


def count_self_crossings(coords: np.ndarray, order: Sequence[int]) -> int:
    """C1 without input checks."""
    edges = cycle_edge_array(coords, order)
    pairs = int((intersection_matrix(edges, edges) & non_adjacent_mask(len(order))).sum())
    return pairs + int(fold_flags(coords, order).sum())


def count_side_crossings(coords: np.ndarray, order: Sequence[int], sides: np.ndarray) -> int:
    """C2 without input checks."""
    return int(intersection_matrix(cycle_edge_array(coords, order), sides).sum())


# ---------------------------------------------------------------------------
# Precomputed lookups for a fixed point set
# ---------------------------------------------------------------------------

# Above this many points the segment table outgrows memory; callers fall
# back to the direct counters.
TABLE_MAX_POINTS = 48


@dataclass(frozen=True, eq=False)
class CrossingTable:
    """
    Intersections among every segment joining two input points.

    Any cycle edge is one of these n(n-1)/2 segments, so C1, C2 and the
    crossing pairs of any order reduce to lookups. ``segment_id[a, b]`` is
    the row of the segment joining points a and b (-1 when a == b).
    """
    segment_id: np.ndarray
    hits: np.ndarray
    side_hits: np.ndarray
    folds: np.ndarray

    @classmethod
    def build(cls, coords: np.ndarray, sides: np.ndarray) -> "CrossingTable":
        """
        Args:
            coords: (n, 2) int64 point array
            sides: (m, 2, 2) polygon side array
        """
        n = len(coords)
        a, b = np.triu_indices(n, 1)
        segment_id = np.full((n, n), -1, dtype=np.intp)
        segment_id[a, b] = np.arange(len(a))
        segment_id[b, a] = np.arange(len(a))
        segments = np.stack([coords[a], coords[b]], axis=1)

        # folds[i, j, k]: vertex j folds back when entered from i and left to k
        delta = coords[None, :, :] - coords[:, None, :]
        to_prev = delta.transpose(1, 0, 2)[:, :, None, :]
        to_next = delta[None, :, :, :]
        cross = to_prev[..., 0] * to_next[..., 1] - to_prev[..., 1] * to_next[..., 0]
        dot = to_prev[..., 0] * to_next[..., 0] + to_prev[..., 1] * to_next[..., 1]

        table = cls(
            segment_id=segment_id,
            hits=intersection_matrix(segments, segments),
            side_hits=intersection_matrix(segments, sides).sum(axis=1),
            folds=(cross == 0) & (dot > 0),
        )
        for array in (table.segment_id, table.hits, table.side_hits, table.folds):
            array.setflags(write=False)
        return table

    def edge_ids(self, order: Sequence[int]) -> np.ndarray:
        """Segment row of each cycle edge; edge i joins positions i and i+1 mod n."""
        path = np.asarray(order, dtype=np.intp)
        return self.segment_id[path, np.roll(path, -1)]

    def _pair_hits(self, order: Sequence[int]) -> np.ndarray:
        ids = self.edge_ids(order)
        return self.hits[ids[:, None], ids[None, :]] & non_adjacent_mask(len(ids))

    def self_crossings(self, order: Sequence[int]) -> int:
        path = np.asarray(order, dtype=np.intp)
        folds = self.folds[np.roll(path, 1), path, np.roll(path, -1)]
        return int(self._pair_hits(order).sum()) + int(folds.sum())

    def side_crossings(self, order: Sequence[int]) -> int:
        return int(self.side_hits[self.edge_ids(order)].sum())

    def crossing_pairs(self, order: Sequence[int]) -> List[Tuple[int, int]]:
        return [(int(i), int(j)) for i, j in np.argwhere(self._pair_hits(order))]


def two_opt_reverse(order: Sequence[int], i: int, j: int) -> List[int]:
    """
    Replace edges i and j of a cycle by reversing positions i+1..j.

    Edge i (positions i, i+1) and edge j (positions j, j+1 mod n) become
    (i, j) and (i+1, j+1). Position 0 is never inside the reversed block,
    so a wrapping edge j = n-1 needs no rotation.
    """
    if not 0 <= i < j < len(order):
        raise ValueError(f"Need 0 <= i < j < {len(order)} (got i={i}, j={j})")
    result = list(order)
    result[i + 1:j + 1] = reversed(result[i + 1:j + 1])
    return result


# ---------------------------------------------------------------------------
# Checked public counters
# ---------------------------------------------------------------------------

def check_cycle(points: PointsLike, order: Sequence[int]) -> np.ndarray:
    """
    Validate a (points, order) cycle and return the coordinate array.

    Raises:
        InvalidChromosomeError: order is not a permutation of 0..n-1 or n < 3
        ValueError: points are not pairwise distinct
    """
    coords = as_coords(points)
    n = len(coords)
    if n < 3:
        raise InvalidChromosomeError(f"A cycle needs at least 3 points (got {n})")
    if sorted(int(i) for i in order) != list(range(n)):
        raise InvalidChromosomeError(f"Order is not a permutation of 0..{n - 1}")
    if len(np.unique(coords, axis=0)) != n:
        raise ValueError("Points are not pairwise distinct")
    return coords


def cycle_self_crossings(points: PointsLike, order: Sequence[int]) -> int:
    """
    C1: intersecting non-adjacent edge pairs plus adjacent collinear folds.

    Args:
        points: the point set
        order: permutation giving the cycle order

    Returns:
        Self-crossing count of the cycle
    """
    coords = check_cycle(points, order)
    return count_self_crossings(coords, order)


def cycle_polygon_crossings(points: PointsLike, order: Sequence[int], poly: Polygon) -> int:
    """
    C2: number of (cycle edge, polygon side) pairs that intersect.

    Each pair counts once however much the two segments overlap.
    """
    coords = check_cycle(points, order)
    return count_side_crossings(coords, order, polygon_side_array(poly))


def cycle_length(points: PointsLike, order: Sequence[int]) -> float:
    """Euclidean length of the closed cycle."""
    coords = check_cycle(points, order)
    edges = cycle_edge_array(coords, order).astype(np.float64)
    delta = edges[:, 1] - edges[:, 0]
    return float(np.hypot(delta[:, 0], delta[:, 1]).sum())


def polygon_is_simple(poly: Polygon) -> bool:
    """
    True iff no two non-adjacent sides intersect and no adjacent pair folds.

    Expects at least 3 vertices with consecutive vertices distinct.
    """
    m = len(poly)
    if m < 3:
        return False
    coords = as_coords(poly.vertices)
    order = list(range(m))
    sides = cycle_edge_array(coords, order)
    if (intersection_matrix(sides, sides) & non_adjacent_mask(m)).any():
        return False
    return not fold_flags(coords, order).any()
