"""Set cover over guarding-regions."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import CapExceeded, DegenerateRegion, Uncoverable
from .kernel import Point, area_centroid, point_in_convex, polygon_area, vertex_centroid

DEFAULT_SIZE_CAP = 25


class Mode(str, enum.Enum):
    REFLECTION = "reflection"
    DIRECT_ONLY = "direct-only"


@dataclass(frozen=True)
class CoverInstance:
    universe: frozenset
    subsets: tuple  # (gr id, frozenset of cell ids)

    @staticmethod
    def from_regions(universe, regions) -> "CoverInstance":
        return CoverInstance(frozenset(universe), tuple((g.id, frozenset(g.vl)) for g in regions))


@dataclass(frozen=True)
class Solution:
    chosen: tuple
    guards: tuple
    mode: Mode = Mode.REFLECTION
    exact: bool = field(default=False, compare=False)


def greedy_cover(inst: CoverInstance) -> list:
    """Repeatedly take the subset covering most uncovered elements (smallest id on ties)."""
    left = set(inst.universe)
    subsets = sorted(inst.subsets, key=lambda s: s[0])
    chosen = []
    while left:
        best_id, best_gain = None, 0
        for gid, vl in subsets:
            gain = len(left & vl)
            if gain > best_gain:
                best_id, best_gain, best_vl = gid, gain, vl
        if best_id is None:
            raise Uncoverable(f"elements {sorted(left)} are in no subset")
        chosen.append(best_id)
        left -= best_vl
    return chosen


def reduce_subsets(inst: CoverInstance) -> list:
    """Drop repeated and dominated subsets, keeping the smallest id of each."""
    by_vl = {}
    for gid, vl in sorted(inst.subsets, key=lambda s: s[0]):
        vl = vl & inst.universe
        if vl and vl not in by_vl:
            by_vl[vl] = gid
    items = sorted(((gid, vl) for vl, gid in by_vl.items()), key=lambda s: (-len(s[1]), s[0]))
    kept = []
    for gid, vl in items:
        if not any(vl < other for _, other in kept):
            kept.append((gid, vl))
    return sorted(kept, key=lambda s: s[0])


def exact_cover(inst: CoverInstance, size_cap: int = DEFAULT_SIZE_CAP) -> list:
    """Minimum cover; among minimum covers the lexicographically smallest id list
    of the reduced family."""
    subsets = reduce_subsets(inst)
    if len(subsets) > size_cap:
        raise CapExceeded(f"{len(subsets)} subsets after reduction exceed the cap of {size_cap}")
    elems = sorted(inst.universe)
    bit = {e: 1 << i for i, e in enumerate(elems)}
    full = (1 << len(elems)) - 1
    masks = []
    for gid, vl in subsets:
        m = 0
        for e in vl:
            m |= bit[e]
        masks.append(m)
    have = 0
    for m in masks:
        have |= m
    if have != full:
        raise Uncoverable("the subsets do not cover the universe")
    n = len(masks)
    suffix = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix[i] = suffix[i + 1] | masks[i]
    biggest = max(bin(m).count("1") for m in masks)

    def search(i, covered, k, picked):
        if covered == full:
            return list(picked)
        if k == 0 or i == n:
            return None
        missing = full & ~covered
        if suffix[i] & missing != missing:
            return None
        if -(-bin(missing).count("1") // biggest) > k:
            return None
        if masks[i] & missing:
            picked.append(i)
            r = search(i + 1, covered | masks[i], k - 1, picked)
            picked.pop()
            if r is not None:
                return r
        return search(i + 1, covered, k, picked)

    lower = -(-len(elems) // biggest)
    for k in range(max(lower, 1 if elems else 0), n + 1):
        r = search(0, 0, k, [])
        if r is not None:
            return [subsets[i][0] for i in r]
    return []


def pick_guard(gr) -> Point:
    """Rational interior point of a guarding-region (or a cell, or a vertex ring)."""
    ring = getattr(gr, "region", gr)
    ring = getattr(ring, "boundary", ring)
    if len(ring) < 3 or polygon_area(ring) == 0:
        raise DegenerateRegion("guarding-region has no area")
    c = vertex_centroid(ring)
    if point_in_convex(ring, c, strict=True):
        return c
    return area_centroid(ring)


def harmonic(n: int) -> Fraction:
    return sum((Fraction(1, i) for i in range(1, n + 1)), Fraction(0))
