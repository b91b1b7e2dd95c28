from fractions import Fraction

import pytest

from mirrorguard import LineBudgetExceeded, SimplePolygon, build_scr, generate_lines
from mirrorguard.corpus import L_HEXAGON, SQUARE, TRIANGLE, named_polygon
from mirrorguard.kernel import Line, Orientation, P, Point, intersect_lines, orientation
from mirrorguard.polygon import INTERIOR, classify_point
from oracles import brute_force_line_count, centroid, euler_face_count, in_closed, shoelace

CASES = [
    ("triangle", "full"), ("square", "full"), ("hexagon", "full"), ("octagon", "full"),
    ("L", "full"), ("L", "vertex"), ("spiral", "vertex"), ("spiral", "edges"),
    ("comb3", "edges"), ("comb5", "edges"),
]


def test_generate_lines_examples():
    tri = SimplePolygon(TRIANGLE)
    assert len(generate_lines(tri)) == 3
    sq = SimplePolygon(SQUARE)
    lines = generate_lines(sq)
    assert len(lines) == 6
    assert Line.through(P(0, 0), P(1, 1)) in lines and Line.through(P(1, 0), P(0, 1)) in lines
    lh = SimplePolygon(L_HEXAGON)
    assert len(generate_lines(lh)) == brute_force_line_count(L_HEXAGON)


@pytest.mark.parametrize("name", ["triangle", "square", "hexagon", "octagon", "L", "comb3", "spiral"])
@pytest.mark.parametrize("level", ["vertex", "edges"])
def test_line_count_matches_brute_force(name, level):
    Pn = named_polygon(name)
    assert len(generate_lines(Pn, level=level)) == brute_force_line_count(Pn.vertices, level)


def test_step_two_includes_outside_points():
    lh = SimplePolygon(L_HEXAGON)
    full = set(generate_lines(lh))
    step1 = set(generate_lines(lh, level="vertex"))
    extra = full - step1
    assert extra
    # every extra line passes through the reflex vertex (1,1)
    assert all(l.value(P(1, 1)) == 0 for l in extra)


def test_line_budget():
    with pytest.raises(LineBudgetExceeded) as exc:
        generate_lines(named_polygon("comb3"))
    assert exc.value.cap == 512
    with pytest.raises(LineBudgetExceeded):
        build_scr(SimplePolygon(L_HEXAGON), cap=10)
    assert len(generate_lines(SimplePolygon(L_HEXAGON), cap=19)) == 19


def test_build_examples():
    tri = build_scr(SimplePolygon(TRIANGLE))
    assert len(tri.cells) == 1
    assert sorted(tri.cells[0].boundary) == sorted(P(*v) for v in TRIANGLE)
    sq = build_scr(SimplePolygon(SQUARE))
    assert len(sq.cells) == 4
    assert all(len(c.boundary) == 3 for c in sq.cells)
    half = Fraction(1, 2)
    assert all(P(half, half) in c.boundary for c in sq.cells)


@pytest.mark.parametrize("name,level", CASES)
def test_cell_count_matches_euler(name, level):
    Pn = named_polygon(name)
    scr = build_scr(Pn, level=level)
    assert len(scr.cells) == euler_face_count(Pn.vertices, scr.generating_lines)


@pytest.mark.parametrize("name,level", CASES)
def test_partition_invariants(name, level):
    Pn = named_polygon(name)
    scr = build_scr(Pn, level=level)
    assert sum(shoelace(c.boundary) for c in scr.cells) == shoelace(Pn.vertices)
    lines = set(scr.generating_lines) | set(Pn.edge_lines)
    corners = set()
    for c in scr.cells:
        b = c.boundary
        n = len(b)
        assert shoelace(b) > 0
        for i in range(n):
            # strictly convex turns after canonicalisation
            assert orientation(b[i - 1], b[i], b[(i + 1) % n]) is Orientation.LEFT
            assert Line.through(b[i], b[(i + 1) % n]) in lines
            assert in_closed(Pn.vertices, b[i])
        assert classify_point(Pn, centroid(b)) is INTERIOR
        corners |= set(b)
    assert {P(*v) for v in Pn.vertices} <= corners


def test_in_polygon_intersections_are_corners():
    lh = SimplePolygon(L_HEXAGON)
    scr = build_scr(lh)
    corners = {v for c in scr.cells for v in c.boundary}
    ls = scr.generating_lines
    for i in range(len(ls)):
        for j in range(i + 1, len(ls)):
            x = intersect_lines(ls[i], ls[j])
            if isinstance(x, Point) and in_closed(lh.vertices, x):
                assert x in corners


def test_determinism_and_locate():
    Pn = named_polygon("L")
    a, b = build_scr(Pn), build_scr(Pn)
    assert [c.boundary for c in a.cells] == [c.boundary for c in b.cells]
    assert [c.edge_ids for c in a.cells] == [c.edge_ids for c in b.cells]
    keys = [min(c.boundary) for c in a.cells]
    assert keys == sorted(keys)
    for c in a.cells:
        assert a.locate(centroid(c.boundary)) == [c.id]
