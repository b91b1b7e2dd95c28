"""Independent test oracles.

Everything here is written from scratch against Fractions or numpy floats and
only borrows the kernel's convex splitting, which has its own tests.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction as F

import numpy as np

from mirrorguard.kernel import Line, Point, split_convex


def cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def sgn(v):
    return (v > 0) - (v < 0)


def edges_of(V):
    return [(V[i], V[(i + 1) % len(V)]) for i in range(len(V))]


def on_closed_segment(p, a, b):
    return (cross(a, b, p) == 0 and min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


def winding(V, p):
    w = 0
    for a, b in edges_of(V):
        if a[1] <= p[1]:
            if b[1] > p[1] and cross(a, b, p) > 0:
                w += 1
        elif b[1] <= p[1] and cross(a, b, p) < 0:
            w -= 1
    return w


def in_closed(V, p):
    return any(on_closed_segment(p, a, b) for a, b in edges_of(V)) or winding(V, p) != 0


def on_boundary(V, p):
    return any(on_closed_segment(p, a, b) for a, b in edges_of(V))


def _param(a, b, p):
    dx, dy = b[0] - a[0], b[1] - a[1]
    return F(p[0] - a[0], 1) / dx if dx else F(p[1] - a[1], 1) / dy


def naive_seg_inside(V, a, b):
    """Closed segment ab inside closed polygon V, by brute force."""
    if a == b:
        return in_closed(V, a)
    ts = {F(0), F(1)}
    for p, q in edges_of(V):
        d1, d2 = cross(a, b, p), cross(a, b, q)
        d3, d4 = cross(p, q, a), cross(p, q, b)
        if sgn(d1) * sgn(d2) < 0 and sgn(d3) * sgn(d4) < 0:
            return False
        for v in (p, q):
            if on_closed_segment(v, a, b):
                ts.add(_param(a, b, v))
    ts = sorted(ts)
    pts = [Point(a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])) for t in ts]
    if not all(in_closed(V, p) for p in pts):
        return False
    for p, q in zip(pts, pts[1:]):
        if not in_closed(V, Point((p[0] + q[0]) / 2, (p[1] + q[1]) / 2)):
            return False
    return True


def shoelace(V):
    return abs(sum(F(a[0]) * b[1] - F(b[0]) * a[1] for a, b in edges_of(V))) / 2


def _bbox_square(V):
    xs = [v[0] for v in V]
    ys = [v[1] for v in V]
    pad = max(max(xs) - min(xs), max(ys) - min(ys)) + 1
    x0, y0, x1, y1 = min(xs) - pad, min(ys) - pad, max(xs) + pad, max(ys) + pad
    return [Point(x0, y0), Point(x1, y0), Point(x1, y1), Point(x0, y1)]


def _faces(V, lines):
    faces = [_bbox_square(V)]
    for l in lines:
        nxt = []
        for f in faces:
            pos, neg = split_convex(f, l)
            nxt.extend(x for x in (pos, neg) if x is not None)
        faces = nxt
    return faces


def centroid(poly):
    n = len(poly)
    return Point(sum(F(p[0]) for p in poly) / n, sum(F(p[1]) for p in poly) / n)


def naive_visible_area(V, q):
    """Area of the closed visibility polygon of q.

    The lines through q and every vertex, plus the edge lines, cut the plane
    into faces on which visibility from q is constant.
    """
    lines = {Line.through(a, b) for a, b in edges_of(V)}
    lines |= {Line.through(q, v) for v in V if v != q}
    total = F(0)
    for f in _faces(V, sorted(lines, key=lambda l: (l.a, l.b, l.c))):
        c = centroid(f)
        if winding(V, c) != 0 and naive_seg_inside(V, q, c):
            total += shoelace(f)
    return total


def is_reflex(V, i):
    n = len(V)
    return cross(V[i - 1], V[i], V[(i + 1) % n]) < 0


def _norm_line(p, q):
    a, b = q[1] - p[1], p[0] - q[0]
    c = -(a * p[0] + b * p[1])
    k = a if a != 0 else b
    return (F(a) / k, F(b) / k, F(c) / k)


def _meet(l1, l2):
    a1, b1, c1 = l1
    a2, b2, c2 = l2
    det = a1 * b2 - a2 * b1
    if det == 0:
        return None
    return ((b1 * c2 - b2 * c1) / det, (a2 * c1 - a1 * c2) / det)


def brute_force_line_count(V, level="full"):
    n = len(V)
    if level == "edges":
        return len({_norm_line(a, b) for a, b in edges_of(V)})
    step1 = {_norm_line(V[i], V[j]) for i in range(n) for j in range(n) if i != j}
    if level == "vertex":
        return len(step1)
    reflex = [V[i] for i in range(n) if is_reflex(V, i)]
    pts = set()
    s1 = list(step1)
    for i in range(len(s1)):
        for j in range(len(s1)):
            if i != j:
                x = _meet(s1[i], s1[j])
                if x is not None:
                    pts.add(x)
    lines = set(step1)
    for x in pts:
        for r in reflex:
            if x != (F(r[0]), F(r[1])):
                lines.add(_norm_line(x, r))
    return len(lines)


def _line_pieces_in(V, l):
    """Maximal pieces of line l inside closed V that are not on the boundary."""
    a, b, c = l
    # parametrize the line
    if b != 0:
        o, d = (F(0), -F(c) / b), (F(1), -F(a) / b)
    else:
        o, d = (-F(c) / a, F(0)), (F(0), F(1))
    ts = set()
    for p, q in edges_of(V):
        vp = a * p[0] + b * p[1] + c
        vq = a * q[0] + b * q[1] + c
        if vp == 0:
            ts.add(_param(o, (o[0] + d[0], o[1] + d[1]), p))
        if vq == 0:
            ts.add(_param(o, (o[0] + d[0], o[1] + d[1]), q))
        if sgn(vp) * sgn(vq) < 0:
            s = F(vp) / (vp - vq)
            x = (p[0] + s * (q[0] - p[0]), p[1] + s * (q[1] - p[1]))
            ts.add(_param(o, (o[0] + d[0], o[1] + d[1]), x))
    ts = sorted(ts)
    pts = [(o[0] + t * d[0], o[1] + t * d[1]) for t in ts]
    out = []
    for p, q in zip(pts, pts[1:]):
        m = ((p[0] + q[0]) / 2, (p[1] + q[1]) / 2)
        if winding(V, m) != 0 and not on_boundary(V, m):
            out.append((p, q))
    return out


def euler_face_count(V, lines):
    """Faces of the arrangement of ``lines`` clipped to V, via F = E - V + 1."""
    segs = [((F(a[0]), F(a[1])), (F(b[0]), F(b[1]))) for a, b in edges_of(V)]
    for l in lines:
        segs.extend(_line_pieces_in(V, (l.a, l.b, l.c)))
    verts = set()
    on_seg = [set() for _ in segs]
    for i, (p, q) in enumerate(segs):
        on_seg[i] |= {p, q}
    for i in range(len(segs)):
        for j in range(i + 1, len(segs)):
            (p, q), (r, s) = segs[i], segs[j]
            x = _meet(_norm_line(p, q), _norm_line(r, s))
            if x is None:
                for v in (r, s):
                    if on_closed_segment(v, p, q):
                        on_seg[i].add(v)
                for v in (p, q):
                    if on_closed_segment(v, r, s):
                        on_seg[j].add(v)
                continue
            if on_closed_segment(x, p, q) and on_closed_segment(x, r, s):
                on_seg[i].add(x)
                on_seg[j].add(x)
    E = set()
    for i, (p, q) in enumerate(segs):
        pts = sorted(on_seg[i], key=lambda v: _param(p, q, v))
        verts |= set(pts)
        for u, v in zip(pts, pts[1:]):
            E.add(frozenset((u, v)))
    return len(E) - len(verts) + 1


# ----------------------------------------------------------------------
# sampling
# ----------------------------------------------------------------------

def sample_in_polygon(V, rng: random.Random, n: int, bits: int = 12):
    xs = [v[0] for v in V]
    ys = [v[1] for v in V]
    scale = 1 << bits
    out = []
    while len(out) < n:
        p = Point(F(min(xs) * scale + rng.randrange((max(xs) - min(xs)) * scale + 1), scale),
                  F(min(ys) * scale + rng.randrange((max(ys) - min(ys)) * scale + 1), scale))
        if winding(V, p) != 0 and not on_boundary(V, p):
            out.append(p)
    return out


def sample_in_convex(poly, rng: random.Random, n: int, denom: int = 1 << 10):
    """Random rational points of a convex polygon, by area-weighted fan triangles."""
    tris = [(poly[0], poly[i], poly[i + 1]) for i in range(1, len(poly) - 1)]
    w = [float(abs(cross(*t))) for t in tris]
    out = []
    for _ in range(n):
        a, b, c = rng.choices(tris, weights=w)[0]
        u, v = F(rng.randrange(denom + 1), denom), F(rng.randrange(denom + 1), denom)
        if u + v > 1:
            u, v = 1 - u, 1 - v
        out.append(Point(a[0] + u * (b[0] - a[0]) + v * (c[0] - a[0]),
                         a[1] + u * (b[1] - a[1]) + v * (c[1] - a[1])))
    return out


def sample_on_segment(a, b, rng, n, denom=1 << 12):
    out = []
    for _ in range(n):
        t = F(rng.randrange(denom + 1), denom)
        out.append(Point(a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])))
    return out


# ----------------------------------------------------------------------
# floating-point oracles
# ----------------------------------------------------------------------

def _fl(p):
    return np.array([float(p[0]), float(p[1])])


def _pt_seg_dist(P, A, B):
    """Distances from points P (k,2) to segments A,B (m,2) -> (k,m)."""
    AB = B - A
    L2 = np.maximum((AB ** 2).sum(1), 1e-300)
    AP = P[:, None, :] - A[None, :, :]
    t = np.clip((AP * AB[None]).sum(2) / L2[None], 0, 1)
    D = AP - t[..., None] * AB[None]
    return np.sqrt((D ** 2).sum(2))


def _orient(a, b, c):
    return (b[..., 0] - a[..., 0]) * (c[..., 1] - a[..., 1]) - (b[..., 1] - a[..., 1]) * (c[..., 0] - a[..., 0])


def seg_boundary_clearance(S0, S1, E0, E1):
    """Distance between each segment S (k) and each boundary edge E (m) -> (k,m).
    Zero when they cross."""
    k, m = len(S0), len(E0)
    a, b = S0[:, None, :], S1[:, None, :]
    c, d = E0[None, :, :], E1[None, :, :]
    o1, o2 = _orient(a, b, c), _orient(a, b, d)
    o3, o4 = _orient(c, d, a), _orient(c, d, b)
    crossing = (o1 * o2 < 0) & (o3 * o4 < 0)
    dist = np.minimum.reduce([
        _pt_seg_dist(S0, E0, E1), _pt_seg_dist(S1, E0, E1),
        _pt_seg_dist(E0, S0, S1).T, _pt_seg_dist(E1, S0, S1).T,
    ])
    return np.where(crossing, 0.0, dist).reshape(k, m)


def crossing_depth(S0, S1, E0, E1):
    """How robustly each segment properly crosses each edge: the smallest
    normalised distance of the four endpoints to the other line (0 if not crossing)."""
    a, b = S0[:, None, :], S1[:, None, :]
    c, d = E0[None, :, :], E1[None, :, :]
    ls = np.maximum(np.linalg.norm(S1 - S0, axis=1), 1e-300)[:, None]
    le = np.maximum(np.linalg.norm(E1 - E0, axis=1), 1e-300)[None, :]
    o1, o2 = _orient(a, b, c) / ls, _orient(a, b, d) / ls
    o3, o4 = _orient(c, d, a) / le, _orient(c, d, b) / le
    crossing = (o1 * o2 < 0) & (o3 * o4 < 0)
    depth = np.minimum.reduce([abs(o1), abs(o2), abs(o3), abs(o4)])
    return np.where(crossing, depth, 0.0)


class FloatPolygon:
    def __init__(self, V):
        self.V = np.array([[float(x), float(y)] for x, y in V])
        self.E0 = self.V
        self.E1 = np.roll(self.V, -1, axis=0)


def leg_status(fp: FloatPolygon, a, b, skip=(), tol=1e-6):
    """(decision, margin) for closed segment ab inside P, given a strictly inside.
    decision None means the floating-point evidence is too weak."""
    keep = [i for i in range(len(fp.E0)) if i not in skip]
    E0, E1 = fp.E0[keep], fp.E1[keep]
    A, B = np.array([a]), np.array([b])
    depth = crossing_depth(A, B, E0, E1)[0]
    if depth.max(initial=0) > tol:
        return False, float(depth.max())
    clear = seg_boundary_clearance(A, B, E0, E1)[0]
    m = float(clear.min(initial=math.inf))
    return (True, m) if m > tol else (None, m)


def angle_oracle(V, x, y, e, samples=10_000, angle_tol=1e-9, tol=1e-6):
    """Dense-sampling reflection oracle for (x, y) via edge e.

    Samples the edge, finds where the incidence and reflection angles agree
    (bisection on the sign change), and checks that both legs stay inside V.
    Returns (decision, margin); decision is None when margin <= tol.
    """
    fp = FloatPolygon(V)
    p, q = fp.E0[e], fp.E1[e]
    d = q - p
    L = float(np.linalg.norm(d))
    u = d / L
    nrm = np.array([-u[1], u[0]])  # interior side for a CCW polygon
    X, Y = _fl(x), _fl(y)
    hx, hy = float((X - p) @ nrm), float((Y - p) @ nrm)
    if min(hx, hy) < -tol:
        return False, -min(hx, hy)
    if min(hx, hy) <= tol:
        return None, min(hx, hy)

    def g(t):
        m = p[None, :] + np.asarray(t)[:, None] * d[None, :]
        ax = np.arctan2((X - m) @ nrm, (X - m) @ u)
        ay = np.arctan2((Y - m) @ nrm, (Y - m) @ u)
        return ax + ay - np.pi

    ts = np.linspace(0.0, 1.0, samples + 1)
    gs = g(ts)
    if gs[0] * gs[-1] > 0:
        # no bounce point on the closed edge; margin is how far outside it is
        tr = (hx * float((Y - p) @ u) + hy * float((X - p) @ u)) / (hx + hy) / L
        off = max(-tr, tr - 1) * L
        return (False, off) if off > tol else (None, off)
    k = int(np.nonzero(np.sign(gs[:-1]) != np.sign(gs[1:]))[0][0]) if gs[0] != 0 else 0
    lo, hi = ts[k], ts[min(k + 1, samples)]
    glo = g([lo])[0]
    for _ in range(80):
        mid = (lo + hi) / 2
        gm = g([mid])[0]
        if (gm > 0) == (glo > 0):
            lo, glo = mid, gm
        else:
            hi = mid
    t = (lo + hi) / 2
    assert abs(g([t])[0]) <= angle_tol
    edge_margin = min(t, 1 - t) * L
    if edge_margin <= tol:
        return None, edge_margin
    m = p + t * d
    s1, m1 = leg_status(fp, X, m, skip=(e,), tol=tol)
    s2, m2 = leg_status(fp, Y, m, skip=(e,), tol=tol)
    if s1 is False or s2 is False:
        return False, max(m1 if s1 is False else 0, m2 if s2 is False else 0)
    if s1 is None or s2 is None:
        return None, min(m1, m2)
    return True, min(edge_margin, m1, m2)


def exact_reflection_recheck(V, x, y, e):
    """Exact reflection test built from y's image rather than x's."""
    a, b = V[e], V[(e + 1) % len(V)]
    hx, hy = cross(a, b, x), cross(a, b, y)
    if hx < 0 or hy < 0:
        return False
    if hx == 0 and hy == 0:
        m = y
    elif hx == 0:
        m = x
    elif hy == 0:
        m = y
    else:
        # image of y across line ab
        dx, dy = b[0] - a[0], b[1] - a[1]
        t = F((y[0] - a[0]) * dx + (y[1] - a[1]) * dy, 1) / (dx * dx + dy * dy)
        foot = (a[0] + t * dx, a[1] + t * dy)
        yi = (2 * foot[0] - y[0], 2 * foot[1] - y[1])
        s = F(hx) / (hx - cross(a, b, yi))
        m = Point(x[0] + s * (yi[0] - x[0]), x[1] + s * (yi[1] - x[1]))
    if not on_closed_segment(m, a, b):
        return False
    return naive_seg_inside(V, x, m) and naive_seg_inside(V, m, y)


def float_direct_visible(fp: FloatPolygon, G, Z, tol=1e-7):
    """Boolean (k,) array: True where segment G[i]Z[i] is certainly inside P
    (both endpoints given inside P)."""
    return seg_boundary_clearance(G, Z, fp.E0, fp.E1).min(axis=1) > tol


def float_reflected_visible(fp: FloatPolygon, G, Z, e, tol=1e-7):
    """Boolean (k,) array: True where G[i] certainly sees Z[i] via edge e of a
    CCW polygon.  Both legs must clear every other edge by more than tol."""
    p, q = fp.E0[e], fp.E1[e]
    d = q - p
    L = float(np.linalg.norm(d))
    u = d / L
    nrm = np.array([-u[1], u[0]])
    hg, hz = (G - p) @ nrm, (Z - p) @ nrm
    # bounce point splits the edge in the ratio of the two heights
    sg, sz = (G - p) @ u, (Z - p) @ u
    front = (hg > tol) & (hz > tol)
    t = np.where(front, (hz * sg + hg * sz) / np.where(front, hg + hz, 1.0), -1.0)
    M = p[None, :] + t[:, None] * u[None, :]
    keep = [i for i in range(len(fp.E0)) if i != e]
    E0, E1 = fp.E0[keep], fp.E1[keep]
    ok = front & (t > tol) & (t < L - tol)
    ok &= seg_boundary_clearance(G, M, E0, E1).min(axis=1) > tol
    ok &= seg_boundary_clearance(Z, M, E0, E1).min(axis=1) > tol
    return ok


# ----------------------------------------------------------------------
# merge points of direct and mirrored views (mpmath bisection)
# ----------------------------------------------------------------------

def _hit_param(a, b, u, w):
    """Parameter on u->w where line(a, b) meets it, or None."""
    dx, dy = b[0] - a[0], b[1] - a[1]
    ex, ey = w[0] - u[0], w[1] - u[1]
    den = dx * ey - dy * ex
    if den == 0:
        return None
    return ((u[0] - a[0]) * dy - (u[1] - a[1]) * dx) / den


def _reflect_mp(p, a, b):
    import mpmath
    dx, dy = mpmath.mpf(b[0] - a[0]), mpmath.mpf(b[1] - a[1])
    t = ((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / (dx * dx + dy * dy)
    fx, fy = a[0] + t * dx, a[1] + t * dy
    return (2 * fx - p[0], 2 * fy - p[1])


def merge_roots(ed, uw, mirror, rf, v, grid=2000, iters=120):
    """Positions s in [0,1] along ed where the shadow line through reflex rf and
    the mirrored boundary ray through mirror endpoint v meet uw at the same
    point inside uw.  Bisection on the difference of the two hit parameters."""
    import mpmath
    mpmath.mp.dps = 40
    (x0, y0), (x1, y1) = ed
    a, b = mirror

    def parts(s):
        p = (x0 + s * (x1 - x0), y0 + s * (y1 - y0))
        h = _hit_param(p, rf, *uw)
        f = _hit_param(_reflect_mp(p, a, b), v, *uw)
        return h, f

    def g(s):
        h, f = parts(s)
        return h - f

    roots = []
    prev = g(mpmath.mpf(0))
    for k in range(1, grid + 1):
        cur = g(mpmath.mpf(k) / grid)
        if prev * cur < 0 or cur == 0:
            lo, hi = mpmath.mpf(k - 1) / grid, mpmath.mpf(k) / grid
            glo = g(lo)
            for _ in range(iters):
                mid = (lo + hi) / 2
                gm = g(mid)
                if (gm > 0) == (glo > 0):
                    lo, glo = mid, gm
                else:
                    hi = mid
            lam = parts(lo)[0]
            if 0 <= lam <= 1:
                roots.append(lo)
        prev = cur
    return roots
