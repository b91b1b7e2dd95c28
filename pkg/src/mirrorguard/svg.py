"""Deterministic SVG rendering of instances and pipeline artifacts."""

from __future__ import annotations

from typing import Iterable, Optional

PALETTE = ("#e6194b", "#3cb44b", "#4363d8", "#f58231", "#911eb4", "#46f0f0",
           "#f032e6", "#bcf60c", "#fabebe", "#008080", "#e6beff", "#9a6324")


def _num(v) -> str:
    s = f"{float(v):.6f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _pts(poly, tf) -> str:
    return " ".join(f"{_num(x)},{_num(y)}" for x, y in (tf(p) for p in poly))


def render_svg(polygon, scrs=None, regions: Optional[Iterable] = None, guards: Iterable = (),
               select_scr: Optional[int] = None, reflected: Iterable = (), tsrs: Iterable = (),
               width: int = 600) -> str:
    """SVG document with layers: polygon, mirrors, cells, guarding-regions of
    ``select_scr``, tsr outlines, reflected regions and guards."""
    x0, y0, x1, y1 = polygon.bbox
    span = max(x1 - x0, y1 - y0) or 1
    margin = span / 20
    scale = width / (span + 2 * margin)
    height = int(round(float((y1 - y0 + 2 * margin) * scale)))
    w = int(round(float((x1 - x0 + 2 * margin) * scale)))

    def tf(p):
        return ((p[0] - x0 + margin) * scale, (y1 - p[1] + margin) * scale)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{height}" '
        f'viewBox="0 0 {w} {height}">',
        '<g id="polygon">',
        f'<polygon points="{_pts(polygon.vertices, tf)}" fill="#f8f8f8" stroke="#000" stroke-width="1.5"/>',
        "</g>",
        '<g id="mirrors">',
    ]
    for i in sorted(polygon.mirror_edges):
        a, b = polygon.edge(i)
        (ax, ay), (bx, by) = tf(a), tf(b)
        out.append(f'<line x1="{_num(ax)}" y1="{_num(ay)}" x2="{_num(bx)}" y2="{_num(by)}" '
                   f'stroke="#1f77b4" stroke-width="4" data-edge="{i}"/>')
    out.append("</g>")
    if scrs is not None:
        out.append('<g id="cells">')
        for c in scrs.cells:
            out.append(f'<polygon points="{_pts(c.boundary, tf)}" fill="none" stroke="#999" '
                       f'stroke-width="0.5" data-id="{c.id}"/>')
        out.append("</g>")
    if regions is not None:
        out.append('<g id="guarding-regions">')
        for g in regions:
            if select_scr is not None and g.source != select_scr:
                continue
            col = PALETTE[g.id % len(PALETTE)]
            vl = " ".join(str(v) for v in sorted(g.vl))
            out.append(f'<polygon points="{_pts(g.region.boundary, tf)}" fill="{col}" fill-opacity="0.35" '
                       f'stroke="{col}" stroke-width="0.5" data-id="{g.id}" data-vl="{vl}"/>')
        out.append("</g>")
    tsrs = list(tsrs)
    if tsrs:
        out.append('<g id="tsrs">')
        for t in tsrs:
            out.append(f'<polygon points="{_pts(t.region.boundary, tf)}" fill="none" stroke="#d62728" '
                       f'stroke-dasharray="4 2" data-target="{t.target}"/>')
            if t.interval is not None:
                (ax, ay), (bx, by) = tf(t.interval.lo), tf(t.interval.hi)
                out.append(f'<line x1="{_num(ax)}" y1="{_num(ay)}" x2="{_num(bx)}" y2="{_num(by)}" '
                           f'stroke="#d62728" stroke-width="3"/>')
        out.append("</g>")
    reflected = list(reflected)
    if reflected:
        out.append('<g id="reflected">')
        for r in reflected:
            out.append(f'<polygon points="{_pts(r.boundary, tf)}" fill="#ffdd57" fill-opacity="0.4" stroke="none"/>')
        out.append("</g>")
    out.append('<g id="guards">')
    for g in guards:
        x, y = tf(g)
        out.append(f'<circle cx="{_num(x)}" cy="{_num(y)}" r="5" fill="#000"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
