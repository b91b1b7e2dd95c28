"""Split a cell into guarding-regions: faces with a constant visible-list."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .errors import PointOutsideCell, TsrOutsideCell
from .kernel import (
    ConvexCell,
    Line,
    Point,
    canonical_ring,
    clip_halfline_to_convex,
    intersect_lines,
    line_crosses_interior,
    point_in_convex,
    split_convex,
    vertex_centroid,
)


@dataclass(frozen=True)
class GuardingRegion:
    id: int
    region: ConvexCell
    vl: frozenset
    source: int = -1


class EventKind(enum.IntEnum):
    # order used to break ties between coincident events
    END = 0
    INTERSECTION = 1
    START = 2


@dataclass(frozen=True)
class SweepEvent:
    kind: EventKind
    geometry: object
    payload: tuple


def _check_inside(scr: ConvexCell, tsrs):
    for t in tsrs:
        if not all(point_in_convex(scr.boundary, v) for v in t.region.boundary):
            raise TsrOutsideCell(f"temp-sub-region for target {t.target} leaves cell {scr.id}")


def chord_lines(scr: ConvexCell, tsrs) -> list[Line]:
    """Supporting lines of tsr edges that cut through the cell's interior."""
    lines = set()
    for t in tsrs:
        b = t.region.boundary
        n = len(b)
        for i in range(n):
            ln = Line.through(b[i], b[(i + 1) % n])
            if ln not in lines and line_crosses_interior(scr.boundary, ln):
                lines.add(ln)
    return sorted(lines, key=lambda l: (l.a, l.b, l.c))


def vl_of_point(scr: ConvexCell, tsrs, p) -> frozenset:
    if not point_in_convex(scr.boundary, p):
        raise PointOutsideCell(f"{p} is not in cell {scr.id}")
    vl = {scr.id}
    for t in tsrs:
        if point_in_convex(t.region.boundary, p):
            vl.add(t.target)
    return frozenset(vl)


def _sweep_order(scr: ConvexCell, lines: list[Line], direction) -> list[Line]:
    dx, dy = direction

    def first(ln):
        pts = []
        b = scr.boundary
        for i in range(len(b)):
            p, q = b[i], b[(i + 1) % len(b)]
            vp, vq = ln.value(p), ln.value(q)
            if vp == 0:
                pts.append(p)
            elif vp * vq < 0:
                t = vp / (vp - vq)
                pts.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
        return min((dx * x + dy * y, -dy * x + dx * y) for x, y in pts)

    return sorted(lines, key=first)


def decompose(scr: ConvexCell, tsrs: Sequence, first_id: int = 0, direction=(1, 0)) -> list[GuardingRegion]:
    """Overlay the cell with every tsr boundary; one guarding-region per face.

    Chords are inserted in the order a sweep in ``direction`` first meets
    them.  Faces come out in canonical order (by their lexicographically
    smallest vertex ring) so the result depends on neither the input order
    nor the sweep direction.
    """
    _check_inside(scr, tsrs)
    faces = [list(scr.boundary)]
    for ln in _sweep_order(scr, chord_lines(scr, tsrs), direction):
        nxt = []
        for f in faces:
            a, b = split_convex(f, ln)
            if a is not None:
                nxt.append(a)
            if b is not None:
                nxt.append(b)
        faces = nxt
    rings = sorted(canonical_ring(f) for f in faces)
    out = []
    for k, ring in enumerate(rings):
        vl = vl_of_point(scr, tsrs, vertex_centroid(ring))
        out.append(GuardingRegion(first_id + k, ConvexCell(first_id + k, ring), vl, scr.id))
    return out


def sweep_events(scr: ConvexCell, tsrs: Sequence, direction=(1, 0)) -> list[SweepEvent]:
    """Event queue of a sweep across the cell in ``direction``.

    Each tsr contributes a start and an end event at its bounding
    half-lines; crossings of boundary chords inside the cell are
    intersection events.  Ties fall back to the secondary coordinate and
    then to the event kind (end, intersection, start).
    """
    dx, dy = direction

    def key(p):
        return (dx * p[0] + dy * p[1], -dy * p[0] + dx * p[1])

    evs = []
    for idx, t in enumerate(tsrs):
        ends = []
        for h in (t.shl, t.ehl):
            seg = clip_halfline_to_convex(h, scr)
            pts = [seg] if isinstance(seg, Point) else (list(seg) if seg is not None else [h.origin])
            ends.append(min(pts, key=key))
        a, b = sorted(ends, key=key)
        payload = ((idx, t.target),)
        evs.append((key(a), EventKind.START, SweepEvent(EventKind.START, t.shl, payload)))
        evs.append((key(b), EventKind.END, SweepEvent(EventKind.END, t.ehl, payload)))
    lines = chord_lines(scr, tsrs)
    for i in range(len(lines)):
        for j in range(i + 1, len(lines)):
            x = intersect_lines(lines[i], lines[j])
            if isinstance(x, Point) and point_in_convex(scr.boundary, x, strict=True):
                evs.append((key(x), EventKind.INTERSECTION,
                            SweepEvent(EventKind.INTERSECTION, x, (i, j))))
    evs.sort(key=lambda e: (e[0], e[1]))
    return [e[2] for e in evs]


def face_vls_incremental(scr: ConvexCell, tsrs: Sequence, regions: Sequence[GuardingRegion]) -> list[frozenset]:
    """Recompute each face's list by adding a target when the face lies on the
    inner side of every edge of one of its temp-sub-regions."""
    out = []
    for gr in regions:
        c = vertex_centroid(gr.region.boundary)
        vl = {scr.id}
        for t in tsrs:
            b = t.region.boundary
            n = len(b)
            if all(Line.through(b[i], b[(i + 1) % n]).value(c) * _inner_sign(b, i) >= 0 for i in range(n)):
                vl.add(t.target)
        out.append(frozenset(vl))
    return out


def _inner_sign(b, i) -> int:
    n = len(b)
    ln = Line.through(b[i], b[(i + 1) % n])
    for k in range(n):
        v = ln.value(b[k])
        if v != 0:
            return 1 if v > 0 else -1
    return 1
