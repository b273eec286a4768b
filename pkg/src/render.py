"""SVG drawings of an embedded cycle inside its polygon."""

import xml.etree.ElementTree as ET
from pathlib import Path
from typing import List, Tuple, Union

import numpy as np

from src.fitness import find_crossing_edge_pairs
from src.geometry import cycle_edge_array, fold_flags, intersection_matrix, intersection_point
from src.models import Chromosome, Instance, Point, Segment

CANVAS_SIZE = 800
MARGIN = 40

POLYGON_STYLE = {"fill": "#f4f1e8", "stroke": "#333333", "stroke-width": "2"}
EDGE_STYLE = {"stroke": "#1f5fa8", "stroke-width": "1.5"}
POINT_STYLE = {"fill": "#111111"}
CROSSING_STYLE = {"fill": "none", "stroke": "#d62728", "stroke-width": "2"}


class CanvasMapping:
    """Maps grid coordinates into the fixed canvas, y axis pointing up."""

    def __init__(self, instance: Instance):
        coords = np.vstack([instance.coords, instance.side_array[:, 0]])
        self.min_x, self.min_y = (int(v) for v in coords.min(axis=0))
        max_x, max_y = (int(v) for v in coords.max(axis=0))
        span = max(max_x - self.min_x, max_y - self.min_y, 1)
        self.scale = (CANVAS_SIZE - 2 * MARGIN) / span
        self.max_y = max_y

    def __call__(self, x: float, y: float) -> Tuple[str, str]:
        return (
            f"{MARGIN + (x - self.min_x) * self.scale:.2f}",
            f"{MARGIN + (self.max_y - y) * self.scale:.2f}",
        )


def crossing_markers(instance: Instance, chrom: Chromosome) -> List[Tuple[float, float]]:
    """
    One marker position per counted crossing.

    Covers self-crossing edge pairs, adjacent folds (marked at the fold
    vertex) and edge/side pairs, in that order.
    """
    genes = chrom.genes(instance.points)
    n = len(genes)

    def edge(k: int) -> Segment:
        return Segment(genes[k], genes[(k + 1) % n])

    markers = []
    for i, j in find_crossing_edge_pairs(instance, chrom):
        markers.append(intersection_point(edge(i), edge(j)))
    for position in np.flatnonzero(fold_flags(instance.coords, chrom.order)):
        vertex = genes[int(position)]
        markers.append((float(vertex.x), float(vertex.y)))

    sides = instance.polygon.sides()
    hits = intersection_matrix(cycle_edge_array(instance.coords, chrom.order), instance.side_array)
    for k, s in np.argwhere(hits):
        markers.append(intersection_point(edge(int(k)), sides[int(s)]))
    return markers


def _points_attr(mapping: CanvasMapping, points: List[Point]) -> str:
    return " ".join(",".join(mapping(p.x, p.y)) for p in points)


def render_svg(instance: Instance, chrom: Chromosome) -> str:
    """Standalone SVG of the polygon, labelled points, cycle edges and crossings."""
    mapping = CanvasMapping(instance)
    root = ET.Element(
        "svg",
        xmlns="http://www.w3.org/2000/svg",
        width=str(CANVAS_SIZE),
        height=str(CANVAS_SIZE),
        viewBox=f"0 0 {CANVAS_SIZE} {CANVAS_SIZE}",
    )
    ET.SubElement(root, "rect", width="100%", height="100%", fill="white")
    ET.SubElement(
        root, "polygon",
        {"class": "boundary", "points": _points_attr(mapping, list(instance.polygon.vertices)), **POLYGON_STYLE},
    )

    genes = chrom.genes(instance.points)
    edges = ET.SubElement(root, "g", {"class": "cycle", **EDGE_STYLE})
    for k in range(len(genes)):
        x1, y1 = mapping(genes[k].x, genes[k].y)
        x2, y2 = mapping(genes[(k + 1) % len(genes)].x, genes[(k + 1) % len(genes)].y)
        ET.SubElement(edges, "line", x1=x1, y1=y1, x2=x2, y2=y2)

    dots = ET.SubElement(root, "g", {"class": "points", **POINT_STYLE})
    for index, point in enumerate(instance.points):
        cx, cy = mapping(point.x, point.y)
        ET.SubElement(dots, "circle", cx=cx, cy=cy, r="4")
        label = ET.SubElement(dots, "text", {"x": cx, "y": cy, "dx": "6", "dy": "-6", "font-size": "12"})
        label.text = str(index)

    crossings = ET.SubElement(root, "g", {"class": "crossings", **CROSSING_STYLE})
    for x, y in crossing_markers(instance, chrom):
        cx, cy = mapping(x, y)
        ET.SubElement(crossings, "circle", {"class": "crossing", "cx": cx, "cy": cy, "r": "7"})

    return ET.tostring(root, encoding="unicode") + "\n"


def write_svg(instance: Instance, chrom: Chromosome, path: Union[str, Path]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(render_svg(instance, chrom), encoding="utf-8")
