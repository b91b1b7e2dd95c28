"""Named test polygons used by the examples, tests and experiments."""

from __future__ import annotations

from .polygon import SimplePolygon

TRIANGLE = ((0, 0), (4, 0), (0, 3))
SQUARE = ((0, 0), (1, 0), (1, 1), (0, 1))
HEXAGON = ((0, 0), (4, 0), (6, 3), (4, 6), (0, 6), (-2, 3))
OCTAGON = ((1, 0), (3, 0), (4, 1), (4, 3), (3, 4), (1, 4), (0, 3), (0, 1))
L_HEXAGON = ((0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2))
# a corridor winding three times around a central wall, 10 vertices
SPIRAL = ((0, 0), (7, 0), (7, 5), (2, 5), (2, 2), (3, 2), (3, 4), (6, 4), (6, 1), (0, 1))
COMB_HEIGHT = 12
COMB_DEPTH = 9


def comb_vertices(k: int) -> tuple:
    """Corridor with ``k`` slanted teeth on top.

    The floor (edge 0) is the mirror of interest.  Every tooth axis passes
    through the image (cx, -9) of the point (cx, 9), so that point sees each
    tooth through its opening via the floor, while no point of the polygon
    sees two teeth completely without reflection.
    """
    if k < 1:
        raise ValueError("need at least one tooth")
    h = COMB_HEIGHT
    cx = 5 * (k - 1) + 2
    w = 2 * cx
    top = []
    for i in reversed(range(k)):
        s2 = 10 * (2 * i - (k - 1))  # twice the tooth offset
        # base corners (cx + s - 1, h) and (cx + s + 1, h), axis direction (s, h + 9)
        if s2 % 2:
            raise AssertionError("offsets are integral by construction")
        s = s2 // 2
        dx, dy = 2 * s, 2 * (h + COMB_DEPTH)
        top += [
            (cx + s + 1, h),
            (cx + s + 1 + dx, h + dy),
            (cx + s - 1 + dx, h + dy),
            (cx + s - 1, h),
        ]
    return ((0, 0), (w, 0), (w, h)) + tuple(top) + ((0, h),)


def comb_guard(k: int) -> tuple:
    return (5 * (k - 1) + 2, COMB_DEPTH)


def comb(k: int, mirrors=None) -> SimplePolygon:
    """Comb polygon; by default only the floor reflects."""
    return SimplePolygon(comb_vertices(k), frozenset({0}) if mirrors is None else mirrors)


NAMED = {
    "triangle": TRIANGLE,
    "square": SQUARE,
    "hexagon": HEXAGON,
    "octagon": OCTAGON,
    "L": L_HEXAGON,
    "spiral": SPIRAL,
}


def named_polygon(name: str) -> SimplePolygon:
    if name.startswith("comb"):
        return comb(int(name[4:] or 3))
    return SimplePolygon(NAMED[name])


def corpus_names() -> list[str]:
    return ["triangle", "square", "hexagon", "octagon", "L", "comb3", "comb4", "comb5", "spiral"]
