"""Static SVG and Graphviz DOT drawings of networks."""

from __future__ import annotations

from typing import Iterable, Mapping, Optional
from xml.sax.saxutils import escape

from .network import PlanarNetwork
from .tropical import format_weight

UNIT = 60
MARGIN = 30


def _highlight_set(highlight) -> set[int]:
    if highlight is None:
        return set()
    if hasattr(highlight, "edges"):
        return set(highlight.edges)
    return set(highlight)


def render_svg(net: PlanarNetwork, w: Optional[Mapping] = None,
               highlight: Optional[Iterable[int]] = None) -> str:
    marked = _highlight_set(highlight)
    ys = [v.y for v in net.vertices] or [0]
    y_lo, y_hi = min(ys), max(ys)
    width = float(net.b - net.a) * UNIT + 2 * MARGIN
    height = float(y_hi - y_lo) * UNIT + 2 * MARGIN

    def px(p):
        return (round(float(p[0] - net.a) * UNIT + MARGIN, 3),
                round(float(y_hi - p[1]) * UNIT + MARGIN, 3))

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:g}" height="{height:g}" '
        f'viewBox="0 0 {width:g} {height:g}">',
        '<g stroke="#999" stroke-dasharray="4 4">',
    ]
    xs = [net.a, net.b] + ([net.middle] if net.middle is not None else [])
    for x in xs:
        x0 = px((x, y_hi))[0]
        out.append(f'<line x1="{x0}" y1="0" x2="{x0}" y2="{height:g}"/>')
    out.append("</g>")
    for e in net.edges:
        pts = " ".join(f"{x},{y}" for x, y in map(px, net.edge_points(e.id)))
        style = 'stroke="#d00" stroke-width="4"' if e.id in marked else 'stroke="#000" stroke-width="1.5"'
        out.append(f'<polyline id="e{e.id}" points="{pts}" fill="none" {style}/>')
        if w is not None and e.id in w:
            p, q = net.edge_points(e.id)[:2]
            (x0, y0), (x1, y1) = px(p), px(q)
            label = escape(format_weight(w[e.id]))
            out.append(f'<text x="{(x0 + x1) / 2:g}" y="{(y0 + y1) / 2 - 4:g}" '
                       f'font-size="12" text-anchor="middle">{label}</text>')
    for v in net.vertices:
        x, y = px(v.point)
        out.append(f'<circle id="v{v.id}" cx="{x}" cy="{y}" r="3" fill="#000"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_dot(net: PlanarNetwork, w: Optional[Mapping] = None,
               highlight: Optional[Iterable[int]] = None) -> str:
    marked = _highlight_set(highlight)
    out = ["digraph network {", "  rankdir=LR;"]
    for v in net.vertices:
        kind = "source" if v.x == net.a else "sink" if v.x == net.b else "internal"
        out.append(f'  v{v.id} [label="{v.id}", kind="{kind}"];')
    for e in net.edges:
        attrs = [f'id="e{e.id}"']
        if w is not None and e.id in w:
            attrs.append(f'label="{format_weight(w[e.id])}"')
        if e.id in marked:
            attrs.append('color="red", penwidth=3')
        out.append(f"  v{e.tail} -> v{e.head} [{', '.join(attrs)}];")
    out.append("}")
    return "\n".join(out) + "\n"
