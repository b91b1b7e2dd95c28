"""Exact guard placement in simple polygons whose edges reflect sight rays once."""

from .arrangement import ScrSet, build_scr, generate_lines
from .decompose import GuardingRegion, SweepEvent, decompose, vl_of_point
from .errors import (
    CapExceeded,
    DegenerateRegion,
    GeometryError,
    InvalidPolygon,
    LineBudgetExceeded,
    NotAMirror,
    PointOutsideCell,
    QueryOutsidePolygon,
    TsrOutsideCell,
    Uncoverable,
)
from .find import FindContext, TempSubRegion, direct_interval, find, mixed_intervals
from .kernel import (
    AlgebraicScalar,
    ConvexCell,
    HalfLine,
    Line,
    Orientation,
    P,
    Point,
    Segment,
    clip_halfline_to_convex,
    convex_intersection,
    intersect_lines,
    orientation,
    reflect_point,
)
from .mirror import (
    DmvmPoint,
    IntervalOnSegment,
    MirrorWindow,
    dmvm_points,
    reflected_region,
    reflected_visible,
    strong_reflected_interval,
    weak_reflected_intervals,
)
from .pipeline import Instance, RunReport, load_instance, solve, verify
from .polygon import (
    Location,
    SimplePolygon,
    VisibilityRegion,
    classify_point,
    point_visibility,
    reflex_vertices,
    segment_visible,
    visible_portions_of_edge,
)
from .setcover import CoverInstance, Mode, Solution, exact_cover, greedy_cover, pick_guard
from .svg import render_svg

__version__ = "0.1.0"
