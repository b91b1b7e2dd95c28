"""End-to-end guard placement: decomposition, temp-sub-regions,
guarding-regions, set cover, and a sampling verifier."""

from __future__ import annotations

import json
import logging
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .arrangement import DEFAULT_LINE_CAP, ScrSet, build_scr
from .decompose import GuardingRegion, decompose
from .errors import CapExceeded, InvalidPolygon, LineBudgetExceeded
from .find import FindContext, find
from .kernel import Point
from .mirror import _refl_vis, mirror_line
from .polygon import EXTERIOR, SimplePolygon, classify_point, seg_in_polygon
from .setcover import (
    DEFAULT_SIZE_CAP,
    CoverInstance,
    Mode,
    Solution,
    exact_cover,
    greedy_cover,
    pick_guard,
)

log = logging.getLogger(__name__)

DEFAULT_OPTIONS = {
    "mode": "reflection",
    "line_cap": DEFAULT_LINE_CAP,
    "level": "auto",
    "samples": 0,
    "seed": 0,
    "exact": False,
    "exact_cap": DEFAULT_SIZE_CAP,
    "mixed": "auto",
    "validate": 3,
}

# mixed-mode search is only attempted below this many cell pairs times mirrors
MIXED_AUTO_BUDGET = 2000


@dataclass(frozen=True)
class Instance:
    polygon: SimplePolygon
    options: dict = field(default_factory=dict)
    name: str = ""

    @property
    def mirror_edges(self) -> frozenset:
        return self.polygon.mirror_edges

    def option(self, key):
        return self.options.get(key, DEFAULT_OPTIONS[key])

    @property
    def mode(self) -> Mode:
        return Mode(self.option("mode"))

    def with_options(self, **kw) -> "Instance":
        opts = dict(self.options)
        opts.update({k: v for k, v in kw.items() if v is not None})
        return Instance(self.polygon, opts, self.name)


def instance_from_dict(data: dict, name: str = "") -> Instance:
    verts = data.get("vertices")
    if not isinstance(verts, list):
        raise InvalidPolygon("instance needs a 'vertices' list")
    pts = []
    for v in verts:
        if len(v) != 2 or not all(type(c) is int for c in v):
            raise InvalidPolygon(f"vertex {v!r} is not a pair of integers")
        pts.append(tuple(v))
    mirrors = data.get("mirrors")
    poly = SimplePolygon(tuple(pts), None if mirrors is None else frozenset(mirrors))
    opts = dict(data.get("options") or {})
    unknown = set(opts) - set(DEFAULT_OPTIONS)
    if unknown:
        raise ValueError(f"unknown options: {sorted(unknown)}")
    return Instance(poly, opts, data.get("name", name))


def load_instance(path) -> Instance:
    path = Path(path)
    return instance_from_dict(json.loads(path.read_text()), path.stem)


def instance_to_dict(inst: Instance) -> dict:
    d = {"name": inst.name, "vertices": [list(v) for v in inst.polygon.vertices]}
    if inst.polygon.mirror_edges != frozenset(range(inst.polygon.n)):
        d["mirrors"] = sorted(inst.polygon.mirror_edges)
    if inst.options:
        d["options"] = dict(inst.options)
    return d


def fmt(v) -> str:
    return str(v)


def fmt_point(p) -> list:
    return [fmt(p[0]), fmt(p[1])]


@dataclass
class VerifyResult:
    passed: bool
    samples: int
    seed: int
    failures: list

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "samples": self.samples,
            "seed": self.seed,
            "failures": [fmt_point(p) for p in self.failures],
        }


@dataclass
class RunReport:
    name: str
    mode: str
    level: str
    line_count: int
    scr_count: int
    tsr_count: int
    gr_count: int
    greedy_size: int
    exact_size: Optional[int]
    chosen: list
    guards: list
    verify: Optional[VerifyResult] = None
    notes: list = field(default_factory=list)
    timings: dict = field(default_factory=dict)

    def to_dict(self, timings: bool = True) -> dict:
        d = {
            "name": self.name,
            "mode": self.mode,
            "level": self.level,
            "line_count": self.line_count,
            "scr_count": self.scr_count,
            "tsr_count": self.tsr_count,
            "gr_count": self.gr_count,
            "greedy_size": self.greedy_size,
            "exact_size": self.exact_size,
            "chosen": list(self.chosen),
            "guards": [fmt_point(g) for g in self.guards],
            "verify": self.verify.to_dict() if self.verify else None,
            "notes": list(self.notes),
        }
        if timings:
            d["timings"] = {k: round(v, 4) for k, v in self.timings.items()}
        return d

    def to_json(self, timings: bool = True) -> str:
        return json.dumps(self.to_dict(timings), indent=2) + "\n"


@dataclass
class Artifacts:
    """Intermediate products of a run, kept for rendering and tests."""

    scrs: ScrSet
    tsrs: dict
    regions: list
    context: FindContext


def _build(P: SimplePolygon, cap: int, level: str):
    if level != "auto":
        return build_scr(P, cap, level), level
    try:
        return build_scr(P, cap, "full"), "full"
    except LineBudgetExceeded:
        return build_scr(P, cap, "edges"), "edges"


def _mixed_enabled(inst: Instance, scrs: ScrSet, mirrors) -> bool:
    m = inst.option("mixed")
    if m == "auto":
        return bool(mirrors) and len(scrs) ** 2 * len(mirrors) <= MIXED_AUTO_BUDGET
    return bool(m)


def run(inst: Instance) -> tuple[Solution, RunReport, Artifacts]:
    P = inst.polygon
    mode = inst.mode
    timings = {}
    notes = []
    t0 = time.perf_counter()
    scrs, level = _build(P, int(inst.option("line_cap")), inst.option("level"))
    timings["scr"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    mirrors = () if mode is Mode.DIRECT_ONLY else tuple(sorted(P.mirror_edges))
    mixed = _mixed_enabled(inst, scrs, mirrors)
    if not mixed and mirrors and inst.option("mixed") == "auto":
        notes.append("mixed direct+mirror regions skipped (instance above auto budget)")
    ctx = FindContext(P, scrs, mirrors, mixed=mixed,
                      validate_samples=int(inst.option("validate")), seed=int(inst.option("seed")))
    tsrs = {}
    for S in scrs:
        found = {}
        for ed in S.edges():
            for T in scrs:
                for t in find(P, scrs, S.id, ed, T.id, ctx):
                    found.setdefault((t.target, tuple(sorted(t.region.boundary))), t)
        tsrs[S.id] = [found[k] for k in sorted(found, key=lambda k: (k[0], k[1]))]
    timings["find"] = time.perf_counter() - t0
    if ctx.discarded:
        notes.append(f"{ctx.discarded} temp-sub-regions failed sample validation")

    t0 = time.perf_counter()
    regions: list[GuardingRegion] = []
    for S in scrs:
        regions.extend(decompose(S, tsrs[S.id], first_id=len(regions)))
    timings["decompose"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    cover = CoverInstance.from_regions(range(len(scrs)), regions)
    greedy = greedy_cover(cover)
    chosen = greedy
    exact_size = None
    is_exact = False
    if inst.option("exact"):
        try:
            ex = exact_cover(cover, int(inst.option("exact_cap")))
            exact_size = len(ex)
            chosen = ex
            is_exact = True
        except CapExceeded as exc:
            notes.append(f"exact cover skipped: {exc}")
    timings["cover"] = time.perf_counter() - t0
    guards = tuple(pick_guard(regions[i]) for i in chosen)
    sol = Solution(tuple(chosen), guards, mode, is_exact)

    vres = None
    n = int(inst.option("samples"))
    if n > 0:
        t0 = time.perf_counter()
        vres = verify(inst, guards, n, int(inst.option("seed")))
        timings["verify"] = time.perf_counter() - t0
    report = RunReport(
        name=inst.name,
        mode=mode.value,
        level=level,
        line_count=len(scrs.generating_lines),
        scr_count=len(scrs),
        tsr_count=sum(len(v) for v in tsrs.values()),
        gr_count=len(regions),
        greedy_size=len(greedy),
        exact_size=exact_size,
        chosen=list(chosen),
        guards=list(guards),
        verify=vres,
        notes=notes,
        timings=timings,
    )
    return sol, report, Artifacts(scrs, tsrs, regions, ctx)


def solve(inst: Instance) -> tuple[Solution, RunReport]:
    sol, report, _ = run(inst)
    return sol, report


# ----------------------------------------------------------------------
# verifier
# ----------------------------------------------------------------------

def sample_points(P: SimplePolygon, n: int, seed: int, bits: int = 16) -> list[Point]:
    """``n`` seeded uniform interior points with dyadic coordinates."""
    rng = random.Random(seed)
    x0, y0, x1, y1 = P.bbox
    scale = 1 << bits
    out = []
    while len(out) < n:
        x = Fraction(x0 * scale + rng.randrange((x1 - x0) * scale + 1), scale)
        y = Fraction(y0 * scale + rng.randrange((y1 - y0) * scale + 1), scale)
        p = Point(x.numerator if x.denominator == 1 else x, y.numerator if y.denominator == 1 else y)
        if classify_point(P, p) is not EXTERIOR:
            out.append(p)
    return out


def covered(P: SimplePolygon, guards, z, mirrors, lines=None) -> bool:
    for g in guards:
        if seg_in_polygon(P, g, z):
            return True
    for g in guards:
        for e in mirrors:
            if _refl_vis(P, g, z, e, lines[e] if lines else None):
                return True
    return False


def verify(inst, guards, samples: int, seed: int = 0, mode: Optional[Mode] = None) -> VerifyResult:
    """Check that every sample point sees some guard directly or via one mirror."""
    if isinstance(inst, SimplePolygon):
        P, m = inst, mode or Mode.REFLECTION
    else:
        P, m = inst.polygon, mode or inst.mode
    mirrors = [] if m is Mode.DIRECT_ONLY else sorted(P.mirror_edges)
    lines = {e: mirror_line(P, e) for e in mirrors}
    guards = list(guards)
    order = list(range(len(guards)))
    pairs = [(g, e) for g in range(len(guards)) for e in mirrors]
    failures = []
    for z in sample_points(P, samples, seed):
        ok = False
        for k, gi in enumerate(order):
            if seg_in_polygon(P, guards[gi], z):
                order.insert(0, order.pop(k))
                ok = True
                break
        if not ok:
            for k, (gi, e) in enumerate(pairs):
                if _refl_vis(P, guards[gi], z, e, lines[e]):
                    pairs.insert(0, pairs.pop(k))
                    ok = True
                    break
        if not ok:
            failures.append(z)
    return VerifyResult(not failures, samples, seed, failures)
