"""Convex decomposition of a polygon by a line arrangement."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import LineBudgetExceeded
from .kernel import (
    ConvexCell,
    Line,
    Point,
    canonical_ring,
    intersect_lines,
    on_segment,
    point_in_convex,
    polygon_area,
    split_convex,
    vertex_centroid,
)
from .polygon import INTERIOR, SimplePolygon, classify_point

DEFAULT_LINE_CAP = 512

LEVELS = ("full", "vertex", "edges")


def _line_key(l: Line):
    return (l.a, l.b, l.c)


def _edge_lines(P: SimplePolygon) -> list[Line]:
    return sorted(set(P.edge_lines), key=_line_key)


def generate_lines(P: SimplePolygon, cap: int = DEFAULT_LINE_CAP, level: str = "full") -> list[Line]:
    """Generating lines of the decomposition.

    ``full``: every line through two vertices, plus every line joining an
    intersection point of two such lines (inside P or not) with a reflex
    vertex.  ``vertex`` stops after the first family and ``edges`` keeps only
    the supporting lines of the polygon edges.
    """
    if level not in LEVELS:
        raise ValueError(f"unknown level {level!r}")
    lines: set = set()

    def add(l):
        if l not in lines:
            lines.add(l)
            if len(lines) > cap:
                raise LineBudgetExceeded(cap)

    if level == "edges":
        for l in _edge_lines(P):
            add(l)
        return sorted(lines, key=_line_key)
    v = P.vertices
    n = len(v)
    for i in range(n):
        for j in range(i + 1, n):
            add(Line.through(v[i], v[j]))
    step1 = sorted(lines, key=_line_key)
    if level == "vertex" or not P.reflex:
        return step1
    reflex = P.reflex_points
    pts = set()
    for i in range(len(step1)):
        for j in range(i + 1, len(step1)):
            x = intersect_lines(step1[i], step1[j])
            if isinstance(x, Point):
                pts.add(x)
    for x in sorted(pts):
        for r in reflex:
            if x != r:
                add(Line.through(x, r))
    return sorted(lines, key=_line_key)


@dataclass(frozen=True)
class ScrSet:
    cells: tuple
    generating_lines: tuple
    level: str = "full"
    polygon: Optional[SimplePolygon] = field(default=None, compare=False, repr=False)

    def __len__(self):
        return len(self.cells)

    def __iter__(self):
        return iter(self.cells)

    def __getitem__(self, i) -> ConvexCell:
        return self.cells[i]

    @property
    def total_area(self):
        return sum((c.area for c in self.cells), 0)

    def locate(self, p) -> list[int]:
        """Ids of every cell whose closure contains p."""
        return [c.id for c in self.cells if point_in_convex(c.boundary, p)]


def _bbox_square(P: SimplePolygon):
    x0, y0, x1, y1 = P.bbox
    x0, y0, x1, y1 = x0 - 1, y0 - 1, x1 + 1, y1 + 1
    return [Point(x0, y0), Point(x1, y0), Point(x1, y1), Point(x0, y1)]


def _split_all(faces: list, lines) -> list:
    for ln in lines:
        nxt = []
        for f in faces:
            pos, neg = split_convex(f, ln)
            if pos is not None:
                nxt.append(pos)
            if neg is not None:
                nxt.append(neg)
        faces = nxt
    return faces


def build_scr(P: SimplePolygon, cap: int = DEFAULT_LINE_CAP, level: str = "full") -> ScrSet:
    lines = generate_lines(P, cap, level)
    edge_lines = _edge_lines(P)
    faces = _split_all([_bbox_square(P)], edge_lines)
    faces = [f for f in faces if classify_point(P, vertex_centroid(f)) is INTERIOR]
    edge_set = set(edge_lines)
    faces = _split_all(faces, [l for l in lines if l not in edge_set])
    rings = sorted(canonical_ring(f) for f in faces)
    index = {l: i for i, l in enumerate(lines)}
    cells = []
    for cid, ring in enumerate(rings):
        cells.append(ConvexCell(cid, ring, _provenance(P, ring, index)))
    return ScrSet(tuple(cells), tuple(lines), level, P)


def _provenance(P: SimplePolygon, ring, index) -> tuple:
    out = []
    n = len(ring)
    for i in range(n):
        a, b = ring[i], ring[(i + 1) % n]
        tag = None
        for k, (p, q) in enumerate(P.edges):
            if on_segment(a, p, q) and on_segment(b, p, q):
                tag = ("P", k)
                break
        if tag is None:
            tag = ("L", index.get(Line.through(a, b), -1))
        out.append(tag)
    return tuple(out)


def partition_defect(P: SimplePolygon, scrs: ScrSet):
    """Area(P) minus the summed cell areas; zero for an exact partition."""
    return P.area - sum(polygon_area(c.boundary) for c in scrs.cells)
