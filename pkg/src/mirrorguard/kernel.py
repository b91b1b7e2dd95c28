"""Exact scalar arithmetic and planar predicates.

Every coordinate handled by the package is an ``int``, a
:class:`fractions.Fraction`, or (only where two visibility boundaries have to
be solved against each other) an :class:`AlgebraicScalar` of the form
``a + b*sqrt(d)``.  No predicate ever looks at a float.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence, Union

Rational = Union[int, Fraction]


# --------------------------------------------------------------------------
# scalars
# --------------------------------------------------------------------------

def is_rational(v) -> bool:
    t = type(v)
    return t is int or t is Fraction


def div(a, b):
    """Exact division that never produces a float."""
    if type(a) is int and type(b) is int:
        return Fraction(a, b)
    return a / b


def sign(v) -> int:
    if is_rational(v):
        return (v > 0) - (v < 0)
    return v.sign()


def _squarefree_split(n: int) -> tuple[int, int]:
    """Return (s, r) with n == s*s*r, removing small square factors of n."""
    s = 1
    for p in (2, 3, 5, 7, 11, 13):
        while n % (p * p) == 0:
            n //= p * p
            s *= p
    p = 17
    while p <= 1000 and p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
            s *= p
        p += 2
    r = math.isqrt(n)
    if r * r == n:
        return s * r, 1
    return s, n


class AlgebraicScalar:
    """A real number ``a + b*sqrt(d)`` with rational ``a, b`` and integer ``d > 1``.

    Arithmetic is closed inside one field Q(sqrt(d)); results whose irrational
    part cancels come back as plain Fractions.  Comparisons work across
    fields.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a: Rational, b: Rational, d: int):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.d = int(d)

    @staticmethod
    def make(a: Rational, b: Rational, d: int):
        """Build ``a + b*sqrt(d)``, collapsing to a Fraction when possible."""
        if b == 0 or d == 0:
            return Fraction(a)
        if d < 0:
            raise ValueError("negative radicand")
        s, r = _squarefree_split(d)
        if r == 1:
            return Fraction(a) + Fraction(b) * s
        return AlgebraicScalar(a, Fraction(b) * s, r)

    @staticmethod
    def sqrt(q: Rational):
        """Exact square root of a non-negative rational."""
        q = Fraction(q)
        if q < 0:
            raise ValueError("square root of a negative number")
        # sqrt(p/r) = sqrt(p*r)/r
        return AlgebraicScalar.make(0, Fraction(1, q.denominator), q.numerator * q.denominator)

    @classmethod
    def from_quadratic(cls, A: Rational, B: Rational, C: Rational, index: int):
        """Root number ``index`` (0 = smaller) of ``A x^2 + B x + C``."""
        A, B, C = Fraction(A), Fraction(B), Fraction(C)
        if A == 0:
            if B == 0:
                raise ValueError("degenerate polynomial")
            return -C / B
        disc = B * B - 4 * A * C
        if disc < 0:
            raise ValueError("no real roots")
        root = cls.sqrt(disc)
        r1 = (-B - root) / (2 * A)
        r2 = (-B + root) / (2 * A)
        lo, hi = (r1, r2) if r1 <= r2 else (r2, r1)
        if index not in (0, 1):
            raise ValueError("index must be 0 or 1")
        return lo if index == 0 else hi

    # field plumbing -------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, AlgebraicScalar):
            if other.d != self.d:
                raise ValueError("operands live in different quadratic fields")
            return other.a, other.b
        if is_rational(other):
            return Fraction(other), Fraction(0)
        return NotImplemented

    def __add__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return c
        return AlgebraicScalar.make(self.a + c[0], self.b + c[1], self.d)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraicScalar(-self.a, -self.b, self.d)

    def __sub__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return c
        return AlgebraicScalar.make(self.a - c[0], self.b - c[1], self.d)

    def __rsub__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return c
        return AlgebraicScalar.make(c[0] - self.a, c[1] - self.b, self.d)

    def __mul__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return c
        a, b = c
        return AlgebraicScalar.make(self.a * a + self.b * b * self.d, self.a * b + self.b * a, self.d)

    __rmul__ = __mul__

    def _inverse(self):
        n = self.a * self.a - self.b * self.b * self.d
        return AlgebraicScalar.make(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        if is_rational(other):
            if other == 0:
                raise ZeroDivisionError
            return AlgebraicScalar.make(self.a / other, self.b / other, self.d)
        if isinstance(other, AlgebraicScalar):
            return self * other._inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        if is_rational(other):
            return self._inverse() * other
        return NotImplemented

    # ordering ---------------------------------------------------------------
    def sign(self) -> int:
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sa == 0 or sa == sb:
            return sb if sa == 0 else sa
        if sb == 0:
            return sa
        return sa if self.a * self.a > self.b * self.b * self.d else sb

    def _cmp(self, other) -> int:
        if is_rational(other) or (isinstance(other, AlgebraicScalar) and other.d == self.d):
            return sign(self - other)
        if not isinstance(other, AlgebraicScalar):
            return NotImplemented
        # self - other = u - v with u in Q(sqrt d1) and v = b2 sqrt d2
        u = AlgebraicScalar.make(self.a - other.a, self.b, self.d)
        su = sign(u)
        sv = (other.b > 0) - (other.b < 0)
        if su != sv:
            return 1 if su > sv else -1
        if su == 0:
            return 0
        sq = sign(u * u - other.b * other.b * other.d)
        return sq if su > 0 else -sq

    def __eq__(self, other):
        if is_rational(other):
            return False
        if isinstance(other, AlgebraicScalar):
            return self._cmp(other) == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def __lt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c >= 0

    # views ----------------------------------------------------------------
    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __repr__(self):
        return f"AlgebraicScalar({self.a} + {self.b}*sqrt({self.d}))"

    @property
    def poly(self) -> tuple[Fraction, Fraction, Fraction]:
        """Monic minimal polynomial (A, B, C) with A = 1."""
        return Fraction(1), -2 * self.a, self.a * self.a - self.b * self.b * self.d

    @property
    def root_index(self) -> int:
        return 0 if self.b < 0 else 1

    def isolating_interval(self, bits: int = 64) -> tuple[Fraction, Fraction]:
        """A rational bracket [lo, hi] of width about ``|b| * 2**-bits``.

        The bracket excludes the conjugate root, so it isolates this root of
        :attr:`poly`.
        """
        scale = 1 << bits
        r = math.isqrt(self.d * scale * scale)
        lo_s, hi_s = Fraction(r, scale), Fraction(r + 1, scale)
        if self.b > 0:
            return self.a + self.b * lo_s, self.a + self.b * hi_s
        return self.a + self.b * hi_s, self.a + self.b * lo_s


def to_float(v) -> float:
    return float(v)


# --------------------------------------------------------------------------
# points, lines, segments
# --------------------------------------------------------------------------

class Point(NamedTuple):
    x: object
    y: object

    def __repr__(self):
        return f"Point({self.x}, {self.y})"


def P(x, y) -> Point:
    """Point from ints / Fractions / strings such as ``"1/2"``."""
    return Point(_q(x), _q(y))


def _q(v):
    if type(v) is int or isinstance(v, (Fraction, AlgebraicScalar)):
        return v
    if isinstance(v, str):
        f = Fraction(v)
        return f.numerator if f.denominator == 1 else f
    if isinstance(v, float):
        raise TypeError("floats are not accepted as coordinates")
    return Fraction(v)


class Orientation(enum.IntEnum):
    RIGHT = -1
    COLLINEAR = 0
    LEFT = 1


def orient(p, q, r) -> int:
    """Sign of cross(q - p, r - p): +1 left turn, -1 right turn, 0 collinear."""
    ax, ay = p
    bx, by = q
    cx, cy = r
    if (type(ax) in _QT and type(ay) in _QT and type(bx) in _QT and type(by) in _QT
            and type(cx) in _QT and type(cy) in _QT):
        axn, axd = ax.numerator, ax.denominator
        ayn, ayd = ay.numerator, ay.denominator
        bxn, bxd = bx.numerator, bx.denominator
        byn, byd = by.numerator, by.denominator
        cxn, cxd = cx.numerator, cx.denominator
        cyn, cyd = cy.numerator, cy.denominator
        x1 = bxn * axd - axn * bxd
        y1 = cyn * ayd - ayn * cyd
        y2 = byn * ayd - ayn * byd
        x2 = cxn * axd - axn * cxd
        det = x1 * y1 * byd * cxd - y2 * x2 * bxd * cyd
        return (det > 0) - (det < 0)
    return sign((bx - ax) * (cy - ay) - (by - ay) * (cx - ax))


_QT = (int, Fraction)


def orientation(p, q, r) -> Orientation:
    return Orientation(orient(p, q, r))


def cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


class LineRelation(enum.Enum):
    PARALLEL = "parallel"
    IDENTICAL = "identical"


PARALLEL = LineRelation.PARALLEL
IDENTICAL = LineRelation.IDENTICAL


@dataclass(frozen=True)
class Line:
    """``a*x + b*y + c = 0``.

    Rational lines built by :meth:`through` are canonical: integer
    coefficients with gcd 1 and the leading nonzero coefficient positive, so
    equal lines compare and hash equal.
    """

    a: object
    b: object
    c: object

    @staticmethod
    def through(p, q) -> "Line":
        if p == q:
            raise ValueError("a line needs two distinct points")
        a = q[1] - p[1]
        b = p[0] - q[0]
        c = -(a * p[0] + b * p[1])
        return Line.canonical(a, b, c)

    @staticmethod
    def canonical(a, b, c) -> "Line":
        if not (is_rational(a) and is_rational(b) and is_rational(c)):
            return Line(a, b, c)
        if a == 0 and b == 0:
            raise ValueError("degenerate line")
        da, db, dc = Fraction(a).denominator, Fraction(b).denominator, Fraction(c).denominator
        m = math.lcm(da, db, dc)
        ia, ib, ic = int(a * m), int(b * m), int(c * m)
        g = math.gcd(ia, ib, ic)
        ia, ib, ic = ia // g, ib // g, ic // g
        if ia < 0 or (ia == 0 and ib < 0):
            ia, ib, ic = -ia, -ib, -ic
        return Line(ia, ib, ic)

    def value(self, p):
        return self.a * p[0] + self.b * p[1] + self.c

    def side(self, p) -> int:
        return sign(self.a * p[0] + self.b * p[1] + self.c)

    def contains(self, p) -> bool:
        return self.side(p) == 0


def directed_line(p, q) -> Line:
    """Line through p, q whose :meth:`Line.value` is positive left of p->q."""
    a = p[1] - q[1]
    b = q[0] - p[0]
    c = -(a * p[0] + b * p[1])
    if is_rational(a) and is_rational(b) and is_rational(c):
        m = math.lcm(Fraction(a).denominator, Fraction(b).denominator, Fraction(c).denominator)
        ia, ib, ic = int(a * m), int(b * m), int(c * m)
        g = math.gcd(ia, ib, ic) or 1
        return Line(ia // g, ib // g, ic // g)
    return Line(a, b, c)


class Segment(NamedTuple):
    a: Point
    b: Point

    def at(self, t) -> Point:
        return Point(self.a.x + t * (self.b.x - self.a.x), self.a.y + t * (self.b.y - self.a.y))

    def param_of(self, p):
        """Parameter t of a point p known to lie on the segment's line."""
        dx = self.b.x - self.a.x
        if dx != 0:
            return div(p[0] - self.a.x, dx)
        return div(p[1] - self.a.y, self.b.y - self.a.y)

    @property
    def line(self) -> Line:
        return Line.through(self.a, self.b)


class HalfLine(NamedTuple):
    origin: Point
    direction: tuple


def on_segment(p, a, b) -> bool:
    """Closed-segment membership for a point."""
    if orient(a, b, p) != 0:
        return False
    return (min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


def reflect_point(p, line: Line) -> Point:
    """Mirror image of p across ``line``."""
    k = div(2 * line.value(p), line.a * line.a + line.b * line.b)
    return Point(p[0] - k * line.a, p[1] - k * line.b)


def intersect_lines(l1: Line, l2: Line):
    det = l1.a * l2.b - l2.a * l1.b
    if det == 0:
        if l1.a * l2.c - l2.a * l1.c == 0 and l1.b * l2.c - l2.b * l1.c == 0:
            return IDENTICAL
        return PARALLEL
    x = div(l1.b * l2.c - l2.b * l1.c, det)
    y = div(l2.a * l1.c - l1.a * l2.c, det)
    return Point(_norm(x), _norm(y))


def _norm(v):
    if type(v) is Fraction and v.denominator == 1:
        return v.numerator
    return v


def line_segment_param(line: Line, a, b):
    """Parameter t where the line meets segment ab's supporting line, or None."""
    va = line.value(a)
    vb = line.value(b)
    if va == vb:
        return None
    return div(va, va - vb)


# --------------------------------------------------------------------------
# convex polygons
# --------------------------------------------------------------------------

def signed_area2(poly: Sequence) -> object:
    s = 0
    n = len(poly)
    for i in range(n):
        x1, y1 = poly[i]
        x2, y2 = poly[(i + 1) % n]
        s += x1 * y2 - x2 * y1
    return s


def polygon_area(poly: Sequence):
    """Exact unsigned shoelace area."""
    s = signed_area2(poly)
    return abs(div(s, 2))


def simplify(poly: Sequence) -> list:
    """Drop repeated points and points in the middle of straight runs."""
    pts = []
    for p in poly:
        if not pts or pts[-1] != p:
            pts.append(p)
    while len(pts) > 1 and pts[0] == pts[-1]:
        pts.pop()
    changed = True
    while changed and len(pts) >= 3:
        changed = False
        n = len(pts)
        for i in range(n):
            if orient(pts[i - 1], pts[i], pts[(i + 1) % n]) == 0:
                del pts[i]
                changed = True
                break
    return pts


def split_convex(poly: Sequence, line: Line):
    """Cut a convex polygon by a line.

    Returns (positive part, negative part); a part is None when it has no area.
    """
    vals = [line.value(p) for p in poly]
    sgn = [sign(v) for v in vals]
    if all(s >= 0 for s in sgn):
        return list(poly), None
    if all(s <= 0 for s in sgn):
        return None, list(poly)
    pos, neg = [], []
    n = len(poly)
    for i in range(n):
        p, s, v = poly[i], sgn[i], vals[i]
        j = (i + 1) % n
        if s >= 0:
            pos.append(p)
        if s <= 0:
            neg.append(p)
        if s * sgn[j] < 0:
            q = poly[j]
            t = div(v, v - vals[j])
            x = Point(_norm(p[0] + t * (q[0] - p[0])), _norm(p[1] + t * (q[1] - p[1])))
            pos.append(x)
            neg.append(x)
    pos, neg = simplify(pos), simplify(neg)
    return (pos if len(pos) >= 3 else None), (neg if len(neg) >= 3 else None)


def clip_convex(poly: Sequence, line: Line, keep: int = 1):
    """Part of a convex polygon where sign(line.value) is ``keep`` or zero."""
    if poly is None:
        return None
    pos, neg = split_convex(poly, line)
    return pos if keep > 0 else neg


def clip_left(poly, p, q):
    """Part of a convex polygon on the closed left side of p->q."""
    return clip_convex(poly, directed_line(p, q), 1)


def line_crosses_interior(poly: Sequence, line: Line) -> bool:
    pos = neg = False
    for p in poly:
        s = line.side(p)
        if s > 0:
            pos = True
        elif s < 0:
            neg = True
        if pos and neg:
            return True
    return False


def convex_intersection(a: Sequence, b: Sequence):
    """Intersection of two CCW convex polygons; None when it has no area."""
    out = list(a)
    n = len(b)
    for i in range(n):
        out = clip_left(out, b[i], b[(i + 1) % n])
        if out is None:
            return None
    return out


def point_in_convex(poly: Sequence, p, strict: bool = False) -> bool:
    n = len(poly)
    for i in range(n):
        o = orient(poly[i], poly[(i + 1) % n], p)
        if o < 0 or (strict and o == 0):
            return False
    return True


def convex_hull(points: Iterable) -> list:
    """CCW hull without collinear points (Andrew's monotone chain)."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower: list = []
    for p in pts:
        while len(lower) >= 2 and orient(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and orient(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def vertex_centroid(poly: Sequence) -> Point:
    n = len(poly)
    return Point(_norm(div(sum(p[0] for p in poly), n)), _norm(div(sum(p[1] for p in poly), n)))


def area_centroid(poly: Sequence) -> Point:
    a2 = signed_area2(poly)
    cx = cy = 0
    n = len(poly)
    for i in range(n):
        x1, y1 = poly[i]
        x2, y2 = poly[(i + 1) % n]
        w = x1 * y2 - x2 * y1
        cx += (x1 + x2) * w
        cy += (y1 + y2) * w
    return Point(_norm(div(cx, 3 * a2)), _norm(div(cy, 3 * a2)))


def is_convex_ccw(poly: Sequence) -> bool:
    n = len(poly)
    if n < 3:
        return False
    for i in range(n):
        if orient(poly[i], poly[(i + 1) % n], poly[(i + 2) % n]) < 0:
            return False
    return signed_area2(poly) > 0


def canonical_ring(poly: Sequence) -> tuple:
    """Rotate a CCW ring to start at its lexicographically smallest vertex."""
    pts = list(poly)
    k = min(range(len(pts)), key=lambda i: pts[i])
    return tuple(pts[k:] + pts[:k])


@dataclass(frozen=True)
class ConvexCell:
    """A convex polygon with positive area, CCW, plus per-edge provenance."""

    id: int
    boundary: tuple
    edge_ids: tuple = field(default=(), compare=False)

    @property
    def area(self):
        return polygon_area(self.boundary)

    def contains(self, p, strict: bool = False) -> bool:
        return point_in_convex(self.boundary, p, strict)

    def edges(self) -> list[Segment]:
        b = self.boundary
        return [Segment(b[i], b[(i + 1) % len(b)]) for i in range(len(b))]

    def interior_point(self) -> Point:
        return vertex_centroid(self.boundary)


def clip_halfline_to_convex(h: HalfLine, cell):
    """Portion of a half-line inside a closed convex polygon.

    Returns a :class:`Segment`, a single :class:`Point` when the half-line only
    touches the polygon, or None.
    """
    poly = cell.boundary if isinstance(cell, ConvexCell) else cell
    o = h.origin
    d = h.direction
    t_lo = Fraction(0)
    t_hi = None
    n = len(poly)
    for i in range(n):
        p, q = poly[i], poly[(i + 1) % n]
        ex, ey = q[0] - p[0], q[1] - p[1]
        num = ex * (o[1] - p[1]) - ey * (o[0] - p[0])
        den = ex * d[1] - ey * d[0]
        if den == 0:
            if num < 0:
                return None
            continue
        t = div(-num, den)
        if den > 0:
            if t > t_lo:
                t_lo = t
        else:
            if t_hi is None or t < t_hi:
                t_hi = t
    if t_hi is None:
        raise ValueError("cell is unbounded")
    if t_lo > t_hi:
        return None
    a = Point(_norm(o[0] + t_lo * d[0]), _norm(o[1] + t_lo * d[1]))
    if t_lo == t_hi:
        return a
    b = Point(_norm(o[0] + t_hi * d[0]), _norm(o[1] + t_hi * d[1]))
    return Segment(a, b)
