"""Simple polygons and direct (unreflected) visibility.

Visibility is *closed*: a sight segment may graze a reflex vertex or run
along an edge.
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from .errors import InvalidPolygon, QueryOutsidePolygon
from .kernel import (
    Line,
    Point,
    Segment,
    convex_hull,
    div,
    line_segment_param,
    on_segment,
    orient,
    polygon_area,
    signed_area2,
    split_convex,
    vertex_centroid,
    _norm,
)


class Location(enum.Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    EXTERIOR = "exterior"


INTERIOR = Location.INTERIOR
BOUNDARY = Location.BOUNDARY
EXTERIOR = Location.EXTERIOR


@dataclass(frozen=True)
class SimplePolygon:
    """A CCW simple polygon with integer vertices.

    ``mirror_edges`` holds the indices of reflecting edges; edge ``i`` runs
    from vertex ``i`` to vertex ``i + 1``.  By default every edge reflects.
    """

    vertices: tuple
    mirror_edges: frozenset = None
    require_general_position: bool = field(default=False, compare=False)

    def __post_init__(self):
        verts = tuple(Point(*v) for v in self.vertices)
        object.__setattr__(self, "vertices", verts)
        n = len(verts)
        if self.mirror_edges is None:
            object.__setattr__(self, "mirror_edges", frozenset(range(n)))
        else:
            object.__setattr__(self, "mirror_edges", frozenset(self.mirror_edges))
        self._validate()

    def _validate(self):
        v = self.vertices
        n = len(v)
        if n < 3:
            raise InvalidPolygon("a polygon needs at least 3 vertices")
        for p in v:
            if type(p.x) is not int or type(p.y) is not int:
                raise InvalidPolygon(f"vertex {p} does not have integer coordinates")
        if len(set(v)) != n:
            raise InvalidPolygon("repeated vertex")
        bad = [i for i in self.mirror_edges if not 0 <= i < n]
        if bad:
            raise InvalidPolygon(f"mirror edge indices out of range: {sorted(bad)}")
        for i in range(n):
            if orient(v[i - 1], v[i], v[(i + 1) % n]) == 0:
                raise InvalidPolygon(f"vertex {i} is collinear with its neighbours")
        if signed_area2(v) <= 0:
            raise InvalidPolygon("vertices must be in counter-clockwise order")
        for i in range(n):
            a, b = v[i], v[(i + 1) % n]
            for j in range(i + 1, n):
                if j == i or (j + 1) % n == i or j == (i + 1) % n:
                    continue
                c, d = v[j], v[(j + 1) % n]
                if _segments_touch(a, b, c, d):
                    raise InvalidPolygon(f"edges {i} and {j} intersect")
        if self.require_general_position:
            for i in range(n):
                for j in range(i + 1, n):
                    for k in range(j + 1, n):
                        if orient(v[i], v[j], v[k]) == 0:
                            raise InvalidPolygon(f"vertices {i}, {j}, {k} are collinear")

    # ------------------------------------------------------------------
    @property
    def n(self) -> int:
        return len(self.vertices)

    def edge(self, i: int) -> Segment:
        v = self.vertices
        return Segment(v[i], v[(i + 1) % len(v)])

    @functools.cached_property
    def edges(self) -> tuple:
        return tuple(self.edge(i) for i in range(self.n))

    @functools.cached_property
    def edge_lines(self) -> tuple:
        return tuple(Line.through(e.a, e.b) for e in self.edges)

    @functools.cached_property
    def reflex(self) -> tuple:
        return tuple(reflex_vertices(self))

    @functools.cached_property
    def reflex_points(self) -> tuple:
        return tuple(self.vertices[i] for i in self.reflex)

    @functools.cached_property
    def vertex_index(self) -> dict:
        return {p: i for i, p in enumerate(self.vertices)}

    @functools.cached_property
    def area(self):
        return polygon_area(self.vertices)

    @functools.cached_property
    def bbox(self) -> tuple:
        xs = [p.x for p in self.vertices]
        ys = [p.y for p in self.vertices]
        return min(xs), min(ys), max(xs), max(ys)

    def is_convex(self) -> bool:
        return not self.reflex


def _segments_touch(a, b, c, d) -> bool:
    o1, o2 = orient(a, b, c), orient(a, b, d)
    o3, o4 = orient(c, d, a), orient(c, d, b)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    return (on_segment(c, a, b) or on_segment(d, a, b)
            or on_segment(a, c, d) or on_segment(b, c, d))


# ----------------------------------------------------------------------
# point location
# ----------------------------------------------------------------------

def classify_point(P: SimplePolygon, p) -> Location:
    v = P.vertices
    n = len(v)
    px, py = p
    inside = False
    for i in range(n):
        a = v[i]
        b = v[(i + 1) % n]
        if on_segment(p, a, b):
            return BOUNDARY
        if a.y <= py < b.y:
            if orient(a, b, p) > 0:
                inside = not inside
        elif b.y <= py < a.y:
            if orient(a, b, p) < 0:
                inside = not inside
    return INTERIOR if inside else EXTERIOR


def _require_inside(P: SimplePolygon, *pts):
    for p in pts:
        if classify_point(P, p) is EXTERIOR:
            raise QueryOutsidePolygon(f"{p} lies outside the polygon")


def reflex_vertices(P: SimplePolygon) -> list[int]:
    v = P.vertices
    n = len(v)
    return [i for i in range(n) if orient(v[i - 1], v[i], v[(i + 1) % n]) < 0]


# ----------------------------------------------------------------------
# segment visibility
# ----------------------------------------------------------------------

def _param(a, b, p):
    dx = b[0] - a[0]
    if dx != 0:
        return div(p[0] - a[0], dx)
    return div(p[1] - a[1], b[1] - a[1])


def seg_in_polygon(P: SimplePolygon, a, b) -> bool:
    """True iff the closed segment ab lies in the closed polygon.

    No precondition checks; callers guarantee a and b are in P.
    """
    if not P.reflex:
        return True
    if a == b:
        return classify_point(P, a) is not EXTERIOR
    ts = None
    v = P.vertices
    n = len(v)
    ax, ay = a
    bx, by = b
    minx, maxx = (ax, bx) if ax <= bx else (bx, ax)
    miny, maxy = (ay, by) if ay <= by else (by, ay)
    for i in range(n):
        p = v[i]
        q = v[(i + 1) % n]
        if (p.x < minx and q.x < minx) or (p.x > maxx and q.x > maxx) \
                or (p.y < miny and q.y < miny) or (p.y > maxy and q.y > maxy):
            continue
        o1 = orient(a, b, p)
        o2 = orient(a, b, q)
        if o1 * o2 > 0:
            continue
        o3 = orient(p, q, a)
        o4 = orient(p, q, b)
        if o3 * o4 > 0:
            continue
        if o1 * o2 < 0 and o3 * o4 < 0:
            return False
        if o1 == 0 and minx <= p.x <= maxx and miny <= p.y <= maxy:
            if ts is None:
                ts = set()
            ts.add(_param(a, b, p))
        if o2 == 0 and minx <= q.x <= maxx and miny <= q.y <= maxy:
            if ts is None:
                ts = set()
            ts.add(_param(a, b, q))
    pts = sorted({Fraction(0), Fraction(1)} | (ts or set()))
    for t0, t1 in zip(pts, pts[1:]):
        tm = (t0 + t1) / 2
        m = (ax + tm * (bx - ax), ay + tm * (by - ay))
        if classify_point(P, m) is EXTERIOR:
            return False
    return True


def segment_visible(P: SimplePolygon, a, b) -> bool:
    _require_inside(P, a, b)
    return seg_in_polygon(P, a, b)


# ----------------------------------------------------------------------
# visibility polygon of a point
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class VisibilityRegion:
    boundary: tuple
    viewer: Optional[Point] = None

    @property
    def area(self):
        return polygon_area(self.boundary) if len(self.boundary) >= 3 else Fraction(0)


def _half(d) -> int:
    return 0 if (d[1] > 0 or (d[1] == 0 and d[0] > 0)) else 1


def _angle_cmp(d1, d2) -> int:
    h1, h2 = _half(d1), _half(d2)
    if h1 != h2:
        return -1 if h1 < h2 else 1
    c = d1[0] * d2[1] - d1[1] * d2[0]
    return -1 if c > 0 else (1 if c < 0 else 0)


def _first_hit(P: SimplePolygon, q, d):
    """Nearest edge crossing of the ray q + t*d (t > 0), as (t, edge index)."""
    best_t, best_i = None, None
    for i, (p1, p2) in enumerate(P.edges):
        ex, ey = p2[0] - p1[0], p2[1] - p1[1]
        den = d[0] * ey - d[1] * ex
        if den == 0:
            continue
        wx, wy = p1[0] - q[0], p1[1] - q[1]
        t = div(wx * ey - wy * ex, den)
        s = div(wx * d[1] - wy * d[0], den)
        if t <= 0 or s < 0 or s > 1:
            continue
        if best_t is None or t < best_t:
            best_t, best_i = t, i
    return best_t, best_i


def _ray_line_point(q, d, e: Segment):
    p1, p2 = e
    ex, ey = p2[0] - p1[0], p2[1] - p1[1]
    den = d[0] * ey - d[1] * ex
    wx, wy = p1[0] - q[0], p1[1] - q[1]
    t = div(wx * ey - wy * ex, den)
    return Point(_norm(q[0] + t * d[0]), _norm(q[1] + t * d[1]))


def point_visibility(P: SimplePolygon, q) -> VisibilityRegion:
    """Visibility polygon of q by an exact angular sweep over the vertices."""
    _require_inside(P, q)
    dirs = []
    for v in P.vertices:
        if v != q:
            dirs.append((v[0] - q[0], v[1] - q[1]))
    dirs.sort(key=functools.cmp_to_key(_angle_cmp))
    uniq = []
    for d in dirs:
        if not uniq or _angle_cmp(uniq[-1], d) != 0:
            uniq.append(d)
    if len(uniq) > 1 and _angle_cmp(uniq[0], uniq[-1]) == 0:
        uniq.pop()
    out = []
    m = len(uniq)
    for i in range(m):
        d1, d2 = uniq[i], uniq[(i + 1) % m]
        c = d1[0] * d2[1] - d1[1] * d2[0]
        if m == 1:
            mid = (-d1[1], d1[0])
        elif c > 0:
            mid = (d1[0] + d2[0], d1[1] + d2[1])
        else:
            mid = (-d1[1], d1[0])
        t, ei = _first_hit(P, q, mid)
        if t is None:
            out.append(Point(*q))
            continue
        probe = (q[0] + t * mid[0] / 2, q[1] + t * mid[1] / 2)
        if classify_point(P, probe) is EXTERIOR:
            out.append(Point(*q))
            continue
        e = P.edge(ei)
        out.append(_ray_line_point(q, d1, e))
        out.append(_ray_line_point(q, d2, e))
    pts = []
    for p in out:
        if not pts or pts[-1] != p:
            pts.append(p)
    while len(pts) > 1 and pts[0] == pts[-1]:
        pts.pop()
    return VisibilityRegion(tuple(pts), Point(*q))


# ----------------------------------------------------------------------
# cutting machinery shared with the reflection module
# ----------------------------------------------------------------------

def cut_segment(seg: Segment, lines: Iterable[Line], predicate: Callable,
                points: bool = False) -> list[tuple]:
    """Closed parameter intervals of ``seg`` where ``predicate`` holds.

    ``lines`` must contain every line across which the predicate can change
    along the segment; the predicate is sampled once per open piece.  With
    ``points`` isolated breakpoints where it holds come back as (t, t).
    """
    a, b = seg
    ts = {Fraction(0), Fraction(1)}
    for ln in lines:
        t = line_segment_param(ln, a, b)
        if t is not None and 0 < t < 1:
            ts.add(t)
    ts = sorted(ts)
    out: list[list] = []
    for t0, t1 in zip(ts, ts[1:]):
        if predicate(seg.at((t0 + t1) / 2)):
            if out and out[-1][1] == t0:
                out[-1][1] = t1
            else:
                out.append([t0, t1])
    if points:
        covered = {t for iv in out for t in iv}
        out.extend([t, t] for t in ts if t not in covered and predicate(seg.at(t)))
        out.sort()
    return [tuple(iv) for iv in out]


class NonConvexVisibleSet(RuntimeError):
    pass


def cut_cell(poly: Sequence, lines: Iterable[Line], predicate: Callable):
    """Closed subset of a convex polygon where ``predicate`` holds.

    The polygon is split by ``lines``; every piece is tested at one interior
    point.  The accepted pieces must form a convex set, which is checked
    exactly by comparing areas.
    """
    pieces = [list(poly)]
    for ln in lines:
        nxt = []
        for pc in pieces:
            pos, neg = split_convex(pc, ln)
            if pos is not None:
                nxt.append(pos)
            if neg is not None:
                nxt.append(neg)
        pieces = nxt
    good = [pc for pc in pieces if predicate(vertex_centroid(pc))]
    if not good:
        return None
    if len(good) == len(pieces):
        return list(poly)
    if len(good) == 1:
        return good[0]
    hull = convex_hull(p for pc in good for p in pc)
    total = sum(polygon_area(pc) for pc in good)
    if polygon_area(hull) != total:
        raise NonConvexVisibleSet("visible pieces do not form a convex set")
    return hull


def direct_event_lines(P: SimplePolygon, q) -> list[Line]:
    """Lines across which direct visibility from q can change."""
    lines = set()
    for r in P.reflex_points:
        if r != q:
            lines.add(Line.through(q, r))
    idx = P.vertex_index.get(q) if all(type(c) in (int, Fraction) for c in q) else None
    if idx is not None:
        n = P.n
        lines.add(Line.through(q, P.vertices[idx - 1]))
        lines.add(Line.through(q, P.vertices[(idx + 1) % n]))
    return _sorted_lines(lines)


def _sorted_lines(lines) -> list[Line]:
    try:
        return sorted(lines, key=lambda l: (l.a, l.b, l.c))
    except TypeError:
        return list(lines)


def visible_part_of_segment_direct(P: SimplePolygon, q, seg: Segment, points: bool = False) -> list[tuple]:
    return cut_segment(seg, direct_event_lines(P, q), lambda g: seg_in_polygon(P, q, g), points)


def visible_portions_of_edge(P: SimplePolygon, q, e: int) -> list[Segment]:
    """Maximal pieces of edge ``e`` visible from q, in edge order.  A point
    seen only by grazing comes back as a zero-length segment."""
    _require_inside(P, q)
    seg = P.edge(e)
    return [Segment(seg.at(t0), seg.at(t1))
            for t0, t1 in visible_part_of_segment_direct(P, q, seg, points=True)]
