"""Single specular reflection: point predicates, reflected regions and the
segment-to-segment interval machinery used by the region finder.

A viewer ``x`` sees ``y`` via mirror edge ``e`` when the segment from the
virtual source ``x'`` (``x`` reflected across line(e)) to ``y`` meets the
closed edge at a point ``m`` with ``x -> m`` and ``m -> y`` both inside P.
"""

from __future__ import annotations

import functools

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import NotAMirror
from .kernel import (
    AlgebraicScalar,
    ConvexCell,
    Line,
    Point,
    Segment,
    directed_line,
    div,
    line_segment_param,
    on_segment,
    orient,
    reflect_point,
    signed_area2,
    _norm,
)
from .polygon import (
    SimplePolygon,
    VisibilityRegion,
    _angle_cmp,
    _first_hit,
    _ray_line_point,
    _require_inside,
    _sorted_lines,
    cut_cell,
    cut_segment,
    direct_event_lines,
    point_visibility,
    seg_in_polygon,
    visible_portions_of_edge,
)

DIRECT = "direct"


@dataclass(frozen=True)
class MirrorWindow:
    edge: int
    window: Segment
    virtual_source: Point


@dataclass(frozen=True)
class IntervalOnSegment:
    """Closed parameter range ``[t_lo, t_hi]`` on ``carrier``."""

    carrier: Segment
    t_lo: object
    t_hi: object

    def __post_init__(self):
        if not (0 <= self.t_lo <= self.t_hi <= 1):
            raise ValueError(f"bad interval [{self.t_lo}, {self.t_hi}]")

    @property
    def lo(self) -> Point:
        return self.carrier.at(self.t_lo)

    @property
    def hi(self) -> Point:
        return self.carrier.at(self.t_hi)

    @property
    def is_point(self) -> bool:
        return self.t_lo == self.t_hi

    def contains(self, t) -> bool:
        return self.t_lo <= t <= self.t_hi

    def as_segment(self) -> Segment:
        return Segment(self.lo, self.hi)


@dataclass(frozen=True)
class DmvmPoint:
    position: Point
    mirror: int
    reflex: int
    projection: Point
    t: object = None
    partner: Optional[Point] = None


def _check_mirror(P: SimplePolygon, e: int):
    if not isinstance(e, int) or not 0 <= e < P.n:
        raise NotAMirror(f"{e!r} is not an edge index")
    if e not in P.mirror_edges:
        raise NotAMirror(f"edge {e} is not a mirror")


def mirror_line(P: SimplePolygon, e: int) -> Line:
    """Line of edge e, positive on the polygon's side."""
    a, b = P.edge(e)
    return directed_line(a, b)


# ----------------------------------------------------------------------
# point predicate
# ----------------------------------------------------------------------

def _refl_vis(P: SimplePolygon, x, y, e: int, dl: Line = None) -> bool:
    if dl is None:
        dl = mirror_line(P, e)
    vx = dl.value(x)
    vy = dl.value(y)
    if vx < 0 or vy < 0:
        return False
    a, b = P.edge(e)
    tot = vx + vy
    if tot == 0:
        # both on the mirror line: the ray slides along the mirror
        m = y
    elif vy == 0:
        m = y
    elif vx == 0:
        m = x
    else:
        xr = reflect_point(x, dl)
        t = div(vx, tot)
        m = Point(xr[0] + t * (y[0] - xr[0]), xr[1] + t * (y[1] - xr[1]))
    if not on_segment(m, a, b):
        return False
    return seg_in_polygon(P, x, m) and seg_in_polygon(P, m, y)


def mirror_point(P: SimplePolygon, x, y, e: int):
    """The reflection point m on line(e) for the pair (x, y), or None."""
    dl = mirror_line(P, e)
    vx, vy = dl.value(x), dl.value(y)
    if vx < 0 or vy < 0 or vx + vy == 0:
        return None
    xr = reflect_point(x, dl)
    t = div(vx, vx + vy)
    return Point(_norm(xr[0] + t * (y[0] - xr[0])), _norm(xr[1] + t * (y[1] - xr[1])))


def reflected_visible(P: SimplePolygon, x, y, e: int) -> bool:
    """Whether x sees y through one bounce on mirror edge e."""
    _check_mirror(P, e)
    _require_inside(P, x, y)
    return _refl_vis(P, x, y, e)


def visible_by(P: SimplePolygon, x, y, mode) -> bool:
    if mode == DIRECT:
        return seg_in_polygon(P, x, y)
    return _refl_vis(P, x, y, mode)


# ----------------------------------------------------------------------
# reflected region
# ----------------------------------------------------------------------

def _clip_halfplane(poly, line: Line):
    out = []
    n = len(poly)
    for i in range(n):
        p, q = poly[i], poly[(i + 1) % n]
        vp, vq = line.value(p), line.value(q)
        if vp >= 0:
            out.append(p)
        if (vp > 0 and vq < 0) or (vp < 0 and vq > 0):
            t = div(vp, vp - vq)
            out.append(Point(_norm(p[0] + t * (q[0] - p[0])), _norm(p[1] + t * (q[1] - p[1]))))
    return out


def mirror_windows(P: SimplePolygon, x, e: int) -> list[MirrorWindow]:
    _check_mirror(P, e)
    dl = mirror_line(P, e)
    if dl.value(x) < 0:
        return []
    xr = reflect_point(x, dl)
    return [MirrorWindow(e, w, xr) for w in visible_portions_of_edge(P, x, e)]


def reflected_region(P: SimplePolygon, x, e: int) -> list[VisibilityRegion]:
    """Regions seen from x via e, one per maximal visible window."""
    _check_mirror(P, e)
    _require_inside(P, x)
    dl = mirror_line(P, e)
    vx = dl.value(x)
    if vx < 0:
        return []
    a, b = P.edge(e)
    if vx == 0:
        if not on_segment(x, a, b):
            return []
        vp = _clip_halfplane(point_visibility(P, x).boundary, dl)
        return [VisibilityRegion(tuple(vp), Point(*x))] if len(vp) >= 3 else []
    xr = reflect_point(x, dl)
    regions = []
    for w in visible_portions_of_edge(P, x, e):
        w0, w1 = w
        d0 = (w0[0] - xr[0], w0[1] - xr[1])
        d1 = (w1[0] - xr[0], w1[1] - xr[1])
        # xr is on the outer side, so the cone from d0 to d1 turns clockwise
        inside = []
        for v in P.vertices:
            if dl.value(v) <= 0:
                continue
            dv = (v[0] - xr[0], v[1] - xr[1])
            c0 = d0[0] * dv[1] - d0[1] * dv[0]
            c1 = dv[0] * d1[1] - dv[1] * d1[0]
            if c0 < 0 and c1 < 0:
                inside.append(dv)
        inside.sort(key=_cone_key(d0))
        dirs = [d0]
        for d in inside + [d1]:
            if _angle_cmp(dirs[-1], d) != 0:
                dirs.append(d)
        out = [Point(*w0)]
        for da, db in zip(dirs, dirs[1:]):
            mid = (da[0] + db[0], da[1] + db[1])
            m = _ray_line_point(xr, mid, Segment(a, b))
            t, ei = _first_hit(P, m, mid)
            edge = P.edge(ei)
            out.append(_ray_line_point(xr, da, edge))
            out.append(_ray_line_point(xr, db, edge))
        out.append(Point(*w1))
        pts = []
        for p in out:
            if not pts or pts[-1] != p:
                pts.append(p)
        while len(pts) > 1 and pts[0] == pts[-1]:
            pts.pop()
        if signed_area2(pts) < 0:
            pts.reverse()
        if len(pts) >= 3:
            regions.append(VisibilityRegion(tuple(pts), Point(*x)))
    return regions


def _cone_key(d0):
    def cmp(u, v):
        # clockwise order starting from d0
        c = u[0] * v[1] - u[1] * v[0]
        return 1 if c > 0 else (-1 if c < 0 else 0)

    return functools.cmp_to_key(cmp)


# ----------------------------------------------------------------------
# event lines and exact cutting
# ----------------------------------------------------------------------

def mirror_event_lines(P: SimplePolygon, q, e: int) -> list[Line]:
    """Lines across which "sees q via e" can change for a moving point."""
    dl = mirror_line(P, e)
    a, b = P.edge(e)
    qr = reflect_point(q, dl)
    lines = {Line.canonical(dl.a, dl.b, dl.c)}
    feats = [a, b]
    for r in P.reflex_points:
        feats.append(r)
        feats.append(reflect_point(r, dl))
    if all(type(c) in (int, Fraction) for c in q):
        idx = P.vertex_index.get(Point(*q))
        if idx is not None:
            for nb in (P.vertices[idx - 1], P.vertices[(idx + 1) % P.n]):
                feats.append(reflect_point(nb, dl))
                feats.append(nb)
    for f in feats:
        if f != qr:
            lines.add(Line.through(qr, f))
    if dl.value(q) == 0:
        lines.update(direct_event_lines(P, q))
    return _sorted_lines(lines)


def event_lines(P: SimplePolygon, q, mode) -> list[Line]:
    if mode == DIRECT:
        return direct_event_lines(P, q)
    return mirror_event_lines(P, q, mode)


def visible_part_of_segment(P: SimplePolygon, q, seg: Segment, mode, points: bool = False) -> list[tuple]:
    """Parameter intervals of ``seg`` whose points see q (directly or via ``mode``).

    Only pieces with positive length are reported unless ``points`` is set.
    """
    seg = Segment(Point(*seg[0]), Point(*seg[1]))
    if mode == DIRECT:
        pred = lambda g: seg_in_polygon(P, q, g)
    else:
        dl = mirror_line(P, mode)
        pred = lambda g: _refl_vis(P, q, g, mode, dl)
    return cut_segment(seg, event_lines(P, q, mode), pred, points)


def visible_part_of_cell(P: SimplePolygon, q, poly: Sequence, mode):
    """Closed convex part of the convex polygon ``poly`` seeing q, or None."""
    if mode == DIRECT:
        pred = lambda g: seg_in_polygon(P, q, g)
    else:
        dl = mirror_line(P, mode)
        pred = lambda g: _refl_vis(P, q, g, mode, dl)
    return cut_cell(poly, event_lines(P, q, mode), pred)


def intersect_interval_lists(xs: list, ys: list, points: bool = False) -> list:
    out = []
    i = j = 0
    while i < len(xs) and j < len(ys):
        lo = max(xs[i][0], ys[j][0])
        hi = min(xs[i][1], ys[j][1])
        if lo < hi or (points and lo == hi and (not out or out[-1][1] != lo)):
            out.append((lo, hi))
        if xs[i][1] < ys[j][1]:
            i += 1
        else:
            j += 1
    return out


def _target_points(target) -> list:
    if isinstance(target, ConvexCell):
        return list(target.boundary)
    if len(target) == 2 and not isinstance(target[0], (tuple, list)):
        return [Point(*target)]
    return [Point(*p) for p in target]


def strong_intervals(P: SimplePolygon, ed: Segment, target, mode) -> list[tuple]:
    """All parameter intervals of ed from which the whole target is seen,
    isolated points included."""
    ivs = [(Fraction(0), Fraction(1))]
    for t in _target_points(target):
        ivs = intersect_interval_lists(ivs, visible_part_of_segment(P, t, ed, mode, True), True)
        if not ivs:
            break
    return ivs


def strong_reflected_interval(P: SimplePolygon, ed: Segment, target, e: int) -> Optional[IntervalOnSegment]:
    """Longest interval of ed that sees all of ``target`` via e; None if empty."""
    _check_mirror(P, e)
    ed = Segment(Point(*ed[0]), Point(*ed[1]))
    ivs = strong_intervals(P, ed, target, e)
    if not ivs:
        return None
    lo, hi = max(ivs, key=lambda iv: iv[1] - iv[0])
    return IntervalOnSegment(ed, lo, hi)


def direct_strong_interval(P: SimplePolygon, ed: Segment, target) -> Optional[IntervalOnSegment]:
    ed = Segment(Point(*ed[0]), Point(*ed[1]))
    ivs = strong_intervals(P, ed, target, DIRECT)
    if not ivs:
        return None
    lo, hi = max(ivs, key=lambda iv: iv[1] - iv[0])
    return IntervalOnSegment(ed, lo, hi)


# ----------------------------------------------------------------------
# moving viewer: boundaries on a target segment
# ----------------------------------------------------------------------

def _bilinear(X0, dX, F, u, dU):
    """Coefficients of A + B s + C lam + E s lam = 0 for the collinearity of
    X0 + s dX, F and u + lam dU."""
    ax, ay = F[0] - X0[0], F[1] - X0[1]
    bx, by = u[0] - X0[0], u[1] - X0[1]
    A = ax * by - ay * bx
    B = -(ax * dX[1] - ay * dX[0]) - (dX[0] * by - dX[1] * bx)
    C = ax * dU[1] - ay * dU[0]
    E = -(dX[0] * dU[1] - dX[1] * dU[0])
    return A, B, C, E


def _lam(coef, s):
    A, B, C, E = coef
    den = C + E * s
    if den == 0:
        return None
    return div(-(A + B * s), den)


def _mirror_features(P: SimplePolygon, e: int) -> list:
    dl = mirror_line(P, e)
    a, b = P.edge(e)
    feats = [("end", a), ("end", b)]
    for i in P.reflex:
        r = P.vertices[i]
        feats.append(("reflex", r))
        feats.append(("image", reflect_point(r, dl)))
    return feats


def _source_frame(ed: Segment, dl: Line, mirrored: bool):
    a, b = ed
    if mirrored:
        a, b = reflect_point(a, dl), reflect_point(b, dl)
    return a, (b[0] - a[0], b[1] - a[1])


def _event_params(ed: Segment, uw: Segment, dl: Line, feats: list) -> list:
    """Parameters on ed where the structure of the e-visible part of uw can change."""
    X0, dX = _source_frame(ed, dl, True)
    Xend = (X0[0] + dX[0], X0[1] + dX[1])
    pts = [f for _, f in feats] + [uw.a, uw.b]
    t = line_segment_param(dl, uw.a, uw.b)
    if t is not None and 0 <= t <= 1:
        pts.append(uw.at(t))
    pts = list(dict.fromkeys(Point(_norm(p[0]), _norm(p[1])) for p in pts))
    ss = {Fraction(0), Fraction(1)}
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            ln = Line.through(pts[i], pts[j])
            s = line_segment_param(ln, X0, Xend)
            if s is not None and 0 < s < 1:
                ss.add(s)
    s = line_segment_param(dl, ed.a, ed.b)
    if s is not None and 0 < s < 1:
        ss.add(s)
    return sorted(ss)


def _label_endpoint(lam, uw, X, feats, dl):
    """Feature whose line through X produces the boundary at lam, if any."""
    if lam in (0, 1):
        return None
    y = uw.at(lam)
    if dl.value(y) == 0:
        return None
    for f in feats:
        if f[1] != X and orient(X, f[1], y) == 0:
            return f
    return None


def weak_reflected_intervals(P: SimplePolygon, ed: Segment, uw: Segment, e: int) -> list[tuple]:
    """Pairs (interval on ed, interval on uw): points of the ed interval see
    (part of) the uw interval via e, and the uw interval is the union of what
    they see."""
    _check_mirror(P, e)
    ed = Segment(Point(*ed[0]), Point(*ed[1]))
    uw = Segment(Point(*uw[0]), Point(*uw[1]))
    dl = mirror_line(P, e)
    feats = _mirror_features(P, e)
    X0, dX = _source_frame(ed, dl, True)
    dU = (uw.b[0] - uw.a[0], uw.b[1] - uw.a[1])
    ss = _event_params(ed, uw, dl, feats)
    runs = []
    for s0, s1 in zip(ss, ss[1:]):
        sm = (s0 + s1) / 2
        p = ed.at(sm)
        portions = visible_part_of_segment(P, p, uw, e)
        if not portions:
            continue
        X = reflect_point(p, dl)
        lo = min(iv[0] for iv in portions)
        hi = max(iv[1] for iv in portions)
        for which, lam in ((0, lo), (1, hi)):
            f = _label_endpoint(lam, uw, X, feats, dl)
            if f is None:
                continue
            coef = _bilinear(X0, dX, f[1], uw.a, dU)
            for s in (s0, s1):
                v = _lam(coef, s)
                if v is None:
                    continue
                v = min(max(v, Fraction(0)), Fraction(1))
                if which == 0:
                    lo = min(lo, v)
                else:
                    hi = max(hi, v)
        runs.append([s0, s1, lo, hi])
    merged = []
    for r in runs:
        if merged and merged[-1][1] == r[0]:
            merged[-1][1] = r[1]
            merged[-1][2] = min(merged[-1][2], r[2])
            merged[-1][3] = max(merged[-1][3], r[3])
        else:
            merged.append(list(r))
    return [(IntervalOnSegment(ed, s0, s1), IntervalOnSegment(uw, lo, hi)) for s0, s1, lo, hi in merged]


# ----------------------------------------------------------------------
# merge points of direct and mirror visibility
# ----------------------------------------------------------------------

def _roots_in_unit(a2, a1, a0) -> list:
    """Real roots of a2 s^2 + a1 s + a0 lying in [0, 1], decided with rationals."""
    if a2 == 0:
        if a1 == 0:
            return []
        r = div(-a0, a1)
        return [r] if 0 <= r <= 1 else []
    disc = a1 * a1 - 4 * a2 * a0
    if disc < 0:
        return []
    v = div(-a1, 2 * a2)
    if disc == 0:
        return [v] if 0 <= v <= 1 else []
    h2 = div(disc, 4 * a2 * a2)  # squared half-distance between the roots
    out = []
    # smaller root v - h
    if v >= 0 and h2 <= v * v and (v <= 1 or h2 >= (v - 1) * (v - 1)):
        out.append(AlgebraicScalar.from_quadratic(a2, a1, a0, 0))
    # larger root v + h
    if (v >= 0 or h2 >= v * v) and v <= 1 and h2 <= (1 - v) * (1 - v):
        out.append(AlgebraicScalar.from_quadratic(a2, a1, a0, 1))
    return out


def _shares_single_endpoint(D: list, M: list, lam) -> bool:
    d_lo = any(iv[0] == lam for iv in D)
    d_hi = any(iv[1] == lam for iv in D)
    m_lo = any(iv[0] == lam for iv in M)
    m_hi = any(iv[1] == lam for iv in M)
    if not ((d_hi and m_lo) or (d_lo and m_hi)):
        return False
    # no positive-length overlap at lam
    for a in D:
        for b in M:
            if max(a[0], b[0]) < min(a[1], b[1]) and a[0] <= lam <= a[1] and b[0] <= lam <= b[1]:
                return False
    return True


def dmvm_points(P: SimplePolygon, ed: Segment, uw: Segment, e: int) -> list[DmvmPoint]:
    """Points of ed where the direct and the e-mirror visible parts of uw meet
    in a single common endpoint."""
    _check_mirror(P, e)
    ed = Segment(Point(*ed[0]), Point(*ed[1]))
    uw = Segment(Point(*uw[0]), Point(*uw[1]))
    dl = mirror_line(P, e)
    D0, dD = _source_frame(ed, dl, False)
    M0, dM = _source_frame(ed, dl, True)
    dU = (uw.b[0] - uw.a[0], uw.b[1] - uw.a[1])
    feats = _mirror_features(P, e)
    out = []
    seen = set()
    mcoefs = [(g, _bilinear(M0, dM, g, uw.a, dU)) for _, g in feats]
    for ri in P.reflex:
        rf = P.vertices[ri]
        c1 = _bilinear(D0, dD, rf, uw.a, dU)
        for g, c2 in mcoefs:
            A1, B1, C1, E1 = c1
            A2, B2, C2, E2 = c2
            a2 = B1 * E2 - B2 * E1
            a1 = A1 * E2 + B1 * C2 - A2 * E1 - B2 * C1
            a0 = A1 * C2 - A2 * C1
            for s in _roots_in_unit(a2, a1, a0):
                lam = _lam(c1, s)
                if lam is None or not (0 <= lam <= 1):
                    continue
                key = (s, ri)
                if key in seen:
                    continue
                p = ed.at(s)
                q = uw.at(lam)
                if p == q or not seg_in_polygon(P, p, q) or not _refl_vis(P, p, q, e, dl):
                    continue
                if orient(p, rf, q) != 0:
                    continue
                D = visible_part_of_segment(P, p, uw, DIRECT)
                M = visible_part_of_segment(P, p, uw, e)
                if not _shares_single_endpoint(D, M, lam):
                    continue
                seen.add(key)
                out.append(DmvmPoint(p, e, ri, q, s, Point(*g)))
    out.sort(key=lambda d: (d.t, d.reflex))
    return out
