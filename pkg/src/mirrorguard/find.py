"""Temp-sub-regions: the parts of a source cell from which a target cell is
completely visible, directly, via one mirror, or by a mix of both.

Each region is built as an intersection of exact per-vertex visibility
regions, so it is sound by construction: a convex piece is seen through a
fixed mode from g as soon as all its vertices are.
"""

from __future__ import annotations

import logging
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from .arrangement import ScrSet
from .kernel import (
    ConvexCell,
    HalfLine,
    Line,
    Point,
    Segment,
    convex_intersection,
    is_rational,
    on_segment,
    point_in_convex,
    polygon_area,
    split_convex,
    vertex_centroid,
    _norm,
)
from .mirror import (
    DIRECT,
    IntervalOnSegment,
    dmvm_points,
    mirror_line,
    strong_intervals,
    visible_by,
    visible_part_of_cell,
    visible_part_of_segment,
)
from .polygon import SimplePolygon

log = logging.getLogger(__name__)

SHRINK_BITS = 40


@dataclass(frozen=True)
class TempSubRegion:
    region: ConvexCell
    source_scr: int
    shl: HalfLine
    ehl: HalfLine
    sees: frozenset
    target: int
    mode: str = "direct"
    interval: Optional[IntervalOnSegment] = field(default=None, compare=False)


def _mode_name(mode) -> str:
    return "direct" if mode == DIRECT else f"mirror:{mode}"


class FindContext:
    """Caches shared by all find calls on one decomposition."""

    def __init__(self, P: SimplePolygon, scrs: ScrSet, mirrors: Optional[Iterable[int]] = None,
                 mixed: bool = True, validate_samples: int = 3, seed: int = 0):
        self.P = P
        self.scrs = scrs
        self.mirrors = tuple(sorted(P.mirror_edges if mirrors is None else mirrors))
        self.mixed = mixed
        self.validate_samples = validate_samples
        self.seed = seed
        self._piece: dict = {}
        self._regions: dict = {}
        self._mixed: dict = {}
        self._dmvm: dict = {}
        self._valid: dict = {}
        self.discarded = 0

    @property
    def modes(self) -> tuple:
        return (DIRECT,) + self.mirrors

    # per-vertex pieces -----------------------------------------------------
    def piece(self, t, mode, poly_key, poly):
        """poly ∩ {g : g sees t via mode}, cached."""
        key = (t, mode, poly_key)
        hit = self._piece.get(key, False)
        if hit is not False:
            return hit
        P = self.P
        if all(visible_by(P, v, t, mode) for v in poly):
            res = list(poly)
        else:
            res = visible_part_of_cell(P, t, poly, mode)
        self._piece[key] = res
        return res

    def mode_region(self, source: int, target: int, mode):
        """source ∩ (points seeing every target vertex via mode), or None."""
        key = (source, target, mode)
        if key in self._regions:
            return self._regions[key]
        S = self.scrs[source]
        T = self.scrs[target]
        if mode != DIRECT and not self._mirror_feasible(S, T, mode):
            self._regions[key] = None
            return None
        region = list(S.boundary)
        for t in T.boundary:
            pc = self.piece(t, mode, source, S.boundary)
            if pc is None:
                region = None
                break
            if len(pc) != len(S.boundary) or pc != list(S.boundary):
                region = convex_intersection(region, pc)
                if region is None:
                    break
        self._regions[key] = region
        return region

    def _mirror_feasible(self, S, T, e) -> bool:
        dl = mirror_line(self.P, e)
        if any(dl.value(t) < 0 for t in T.boundary):
            return False
        return any(dl.value(v) > 0 for v in S.boundary)

    # mixed -------------------------------------------------------------
    def anchored_region(self, source: int, target: int, p):
        """Sound convex region around anchor p seeing the target by mixing modes."""
        S = self.scrs[source]
        T = self.scrs[target]
        chosen = mixed_cover_pieces(self.P, p, T.boundary, self.modes)
        if chosen is None:
            return None
        region = list(S.boundary)
        for poly, mode in chosen:
            for v in poly:
                pc = visible_part_of_cell(self.P, v, region, mode)
                if pc is None:
                    return None
                region = pc
        if polygon_area(region) == 0:
            return None
        return region

    def validate(self, region, target: int, mode) -> bool:
        k = self.validate_samples
        if k <= 0:
            return True
        key = (tuple(region), target, mode)
        if key not in self._valid:
            self._valid[key] = self._validate(region, target, mode, k)
        return self._valid[key]

    def _validate(self, region, target, mode, k) -> bool:
        rng = random.Random(hash((self.seed, tuple(region), target)) & 0xFFFFFFFF)
        T = self.scrs[target].boundary
        modes = self.modes if mode == "mixed" else (mode,)
        for _ in range(k):
            g = random_point_in_convex(region, rng)
            for _ in range(k):
                z = random_point_in_convex(T, rng)
                if not any(visible_by(self.P, g, z, m) for m in modes):
                    log.warning("discarding tsr: %s does not see %s", g, z)
                    return False
        return True


def random_point_in_convex(poly, rng: random.Random, denom: int = 1 << 12) -> Point:
    """Seeded random convex combination of the vertices (interior for area > 0)."""
    ws = [rng.randint(1, denom) for _ in poly]
    tot = sum(ws)
    d = math.lcm(*(Fraction(c).denominator for p in poly for c in p))
    x = sum(w * int(p[0] * d) for w, p in zip(ws, poly))
    y = sum(w * int(p[1] * d) for w, p in zip(ws, poly))
    return Point(_norm(Fraction(x, tot * d)), _norm(Fraction(y, tot * d)))


# ----------------------------------------------------------------------
# exact coverage of a convex target by pieces seen in different modes
# ----------------------------------------------------------------------

def _pieces(P, p, T, modes) -> list:
    out = []
    for m in modes:
        pc = visible_part_of_cell(P, p, T, m)
        if pc is not None:
            out.append((pc, m))
    return out


def mixed_cover_pieces(P: SimplePolygon, p, T, modes):
    """Pieces (polygon, mode) of T seen from p that together cover T, or None.

    A small set is picked greedily over the faces of the overlay of the
    pieces.  Only genuinely mixed covers are returned.
    """
    pieces = _pieces(P, p, T, modes)
    if not pieces:
        return None
    area_t = polygon_area(T)
    if any(polygon_area(pc) == area_t for pc, _ in pieces):
        return None
    lines = set()
    for pc, _ in pieces:
        n = len(pc)
        for i in range(n):
            lines.add(Line.through(pc[i], pc[(i + 1) % n]))
    faces = [list(T)]
    for ln in sorted(lines, key=lambda l: (l.a, l.b, l.c)):
        nxt = []
        for f in faces:
            a, b = split_convex(f, ln)
            if a is not None:
                nxt.append(a)
            if b is not None:
                nxt.append(b)
        faces = nxt
    owners = []
    for f in faces:
        c = vertex_centroid(f)
        own = {i for i, (pc, _) in enumerate(pieces) if point_in_convex(pc, c)}
        if not own:
            return None
        owners.append(own)
    todo = set(range(len(faces)))
    chosen = []
    while todo:
        best = max(range(len(pieces)), key=lambda i: (sum(1 for f in todo if i in owners[f]), -i))
        chosen.append(best)
        todo = {f for f in todo if best not in owners[f]}
    return [pieces[i] for i in sorted(chosen)]


def covered_by_modes(P: SimplePolygon, p, T, modes) -> bool:
    """Whether the convex polygon T is fully seen from p, mixing modes freely."""
    if any(all(visible_by(P, p, v, m) for v in T) for m in modes):
        return True
    return mixed_cover_pieces(P, p, T, modes) is not None


# ----------------------------------------------------------------------
# intervals on a source edge
# ----------------------------------------------------------------------

def direct_interval(P: SimplePolygon, ed: Segment, target) -> Optional[IntervalOnSegment]:
    """Longest interval of ed from which every target vertex is directly visible."""
    ed = Segment(Point(*ed[0]), Point(*ed[1]))
    ivs = strong_intervals(P, ed, target, DIRECT)
    if not ivs:
        return None
    lo, hi = max(ivs, key=lambda iv: iv[1] - iv[0])
    return IntervalOnSegment(ed, lo, hi)


def _rational_inside(v, toward_hi: bool):
    if is_rational(v):
        return v
    lo, hi = v.isolating_interval(SHRINK_BITS + 8)
    return hi if toward_hi else lo


def mixed_intervals(P: SimplePolygon, ed: Segment, target, mirrors=None, dmvm_cache=None) -> list[IntervalOnSegment]:
    """Maximal intervals of ed seeing the whole target when direct sight and
    single-mirror sight may be combined.

    Events are the endpoints of every per-vertex, per-mode visible interval
    and the merge points of direct and mirror visibility on target edges;
    coverage is decided exactly at one rational point between events.
    Irrational endpoints are pulled inside by at most 2**-40.
    """
    ed = Segment(Point(*ed[0]), Point(*ed[1]))
    T = target.boundary if isinstance(target, ConvexCell) else tuple(Point(*p) for p in target)
    mirrors = tuple(sorted(P.mirror_edges if mirrors is None else mirrors))
    modes = (DIRECT,) + mirrors
    ev = {Fraction(0), Fraction(1)}
    per = {}  # (vertex index, mode) -> intervals on ed
    for i, t in enumerate(T):
        for m in modes:
            ivs = visible_part_of_segment(P, t, ed, m)
            per[i, m] = ivs
            for a, b in ivs:
                ev.add(a)
                ev.add(b)

    def status(s):
        """(every vertex seen by some mode, modes seeing every vertex, modes used)"""
        used = set()
        pure = []
        for m in modes:
            hits = [any(lo <= s <= hi for lo, hi in per[i, m]) for i in range(len(T))]
            if all(hits):
                pure.append(m)
            if any(hits):
                used.add(m)
        ok = all(any(any(lo <= s <= hi for lo, hi in per[i, m]) for m in modes) for i in range(len(T)))
        return ok, pure, used

    def elementary(events):
        return [(a, b, (a + b) / 2) for a, b in zip(events, events[1:])]

    evs = sorted(ev)
    need = set()
    for a, b, s in elementary(evs):
        ok, pure, used = status(s)
        if ok and not pure:
            need |= used - {DIRECT}
    if need:
        n = len(T)
        for e in sorted(need):
            for i in range(n):
                uw = Segment(T[i], T[(i + 1) % n])
                for t in _dmvm_params(P, ed, uw, e, dmvm_cache):
                    if is_rational(t):
                        ev.add(t)
                    else:
                        lo, hi = t.isolating_interval(SHRINK_BITS + 8)
                        ev.update(x for x in (lo, hi) if 0 <= x <= 1)
        evs = sorted(ev)
    runs: list[list] = []
    for a, b, s in elementary(evs):
        ok, pure, _ = status(s)
        if not ok:
            continue
        if pure or mixed_cover_pieces(P, ed.at(s), T, modes) is not None:
            if runs and runs[-1][1] == a:
                runs[-1][1] = b
            else:
                runs.append([a, b])
    return [IntervalOnSegment(ed, a, b) for a, b in runs]


def _dmvm_params(P, ed: Segment, uw: Segment, e, cache) -> list:
    """Parameters on ed of the dmvm points, cached independently of orientation."""
    flip = ed.b < ed.a
    key_ed = (ed.b, ed.a) if flip else (ed.a, ed.b)
    key = (key_ed, tuple(sorted(uw)), e)
    if cache is not None and key in cache:
        ts = cache[key]
    else:
        u, w = key[1]
        ts = [d.t for d in dmvm_points(P, Segment(*key_ed), Segment(u, w), e)]
        if cache is not None:
            cache[key] = ts
    return [1 - t for t in ts] if flip else ts


# ----------------------------------------------------------------------
# Find
# ----------------------------------------------------------------------

def _cell_edges(S: ConvexCell) -> list[Segment]:
    return S.edges()


def _edge_index(S: ConvexCell, ed) -> int:
    a, b = Point(*ed[0]), Point(*ed[1])
    for i, (p, q) in enumerate(S.edges()):
        if (p, q) == (a, b) or (p, q) == (b, a):
            return i
    raise ValueError(f"{ed} is not an edge of cell {S.id}")


def _touch(region, ed: Segment):
    """Sub-interval of ed shared with the convex region's boundary, or None."""
    pts = [v for v in region if on_segment(v, ed.a, ed.b)]
    if len(pts) < 2:
        return None
    ts = sorted(ed.param_of(v) for v in pts)
    if ts[0] == ts[-1]:
        return None
    return ts[0], ts[-1]


def _half_lines(region, start: Point, end: Point):
    n = len(region)
    i = region.index(start)
    j = region.index(end)
    # neighbours of start/end that are not the other endpoint
    a = region[(i - 1) % n] if region[(i + 1) % n] == end else region[(i + 1) % n]
    b = region[(j + 1) % n] if region[(j - 1) % n] == start else region[(j - 1) % n]
    return (HalfLine(start, (a[0] - start[0], a[1] - start[1])),
            HalfLine(end, (b[0] - end[0], b[1] - end[1])))


def _orphan(region, S: ConvexCell) -> bool:
    return all(_touch(region, e) is None for e in S.edges())


def _make_tsr(region, S: ConvexCell, ed: Segment, target: int, mode_name: str) -> Optional[TempSubRegion]:
    region = list(region)
    tt = _touch(region, ed)
    if tt is None:
        if not (_orphan(region, S) and _edge_index(S, ed) == 0):
            return None
        v0, v1 = region[0], region[1]
        shl = HalfLine(v0, (v1[0] - v0[0], v1[1] - v0[1]))
        ehl = HalfLine(v1, (v0[0] - v1[0], v0[1] - v1[1]))
        iv = None
    else:
        lo, hi = tt
        start, end = ed.at(lo), ed.at(hi)
        start = Point(_norm(start[0]), _norm(start[1]))
        end = Point(_norm(end[0]), _norm(end[1]))
        shl, ehl = _half_lines(region, start, end)
        iv = IntervalOnSegment(ed, lo, hi)
    cell = ConvexCell(S.id, tuple(region))
    return TempSubRegion(cell, S.id, shl, ehl, frozenset({S.id, target}), target, mode_name, iv)


def find(P: SimplePolygon, scrs: ScrSet, source: int, ed, target: int,
         context: Optional[FindContext] = None, mirrors=None) -> list[TempSubRegion]:
    """Temp-sub-regions of ``source`` attached to its edge ``ed`` that see ``target``.

    ``mirrors=()`` restricts to direct visibility.
    """
    ctx = context or FindContext(P, scrs, mirrors)
    S = scrs[source]
    ed = Segment(Point(*ed[0]), Point(*ed[1]))
    _edge_index(S, ed)
    if source == target:
        full = list(S.boundary)
        t = _make_tsr(full, S, ed, target, "self")
        return [t] if t else []
    out = []
    regions = []
    direct = ctx.mode_region(source, target, DIRECT)
    if direct is not None:
        regions.append((direct, DIRECT))
    whole = direct is not None and polygon_area(direct) == S.area
    if not whole:
        for e in ctx.mirrors:
            r = ctx.mode_region(source, target, e)
            if r is not None:
                regions.append((r, e))
                if polygon_area(r) == S.area:
                    whole = True
                    break
    if not whole and ctx.mixed and ctx.mirrors:
        for r in ctx_mixed_regions(ctx, source, target):
            regions.append((r, "mixed"))
    seen = set()
    for region, mode in regions:
        key = tuple(sorted(region))
        if key in seen:
            continue
        seen.add(key)
        name = mode if mode == "mixed" else _mode_name(mode)
        tsr = _make_tsr(region, S, ed, target, name)
        if tsr is None:
            continue
        if not ctx.validate(region, target, mode):
            ctx.discarded += 1
            continue
        out.append(tsr)
    return out


def ctx_mixed_regions(ctx: FindContext, source: int, target: int) -> list:
    """Mixed-mode regions of source for target, anchored on each edge's mixed intervals."""
    key = (source, target)
    if key in ctx._mixed:
        return ctx._mixed[key]
    S = ctx.scrs[source]
    T = ctx.scrs[target]
    P = ctx.P
    out = []
    if _vertexwise_feasible(ctx, S, T):
        existing = [r for r in (ctx.mode_region(source, target, m) for m in ctx.modes) if r is not None]
        for ed in S.edges():
            for iv in mixed_intervals(P, ed, T, ctx.mirrors, ctx._dmvm):
                lo = _rational_inside(iv.t_lo, True)
                hi = _rational_inside(iv.t_hi, False)
                if lo >= hi:
                    continue
                anchor = ed.at((lo + hi) / 2)
                anchor = Point(_norm(anchor[0]), _norm(anchor[1]))
                if any(point_in_convex(r, anchor) for r in existing + out):
                    continue
                r = ctx.anchored_region(source, target, anchor)
                if r is not None:
                    out.append(r)
    ctx._mixed[key] = out
    return out


def _vertexwise_feasible(ctx: FindContext, S: ConvexCell, T: ConvexCell) -> bool:
    """Cheap necessary test: some vertex-mode pair must reach every target vertex."""
    for t in T.boundary:
        ok = False
        for m in ctx.modes:
            if ctx.piece(t, m, S.id, S.boundary) is not None:
                ok = True
                break
        if not ok:
            return False
    return True
