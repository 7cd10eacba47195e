"""SVG 1.1 rendering of straight-line drawings."""
from __future__ import annotations

from dataclasses import dataclass
from xml.sax.saxutils import escape

from .errors import ElrError
from .graphs import Drawing, norm_edge
from .metrics import verify_proper


@dataclass(frozen=True)
class SvgOptions:
    scale: float = 100.0
    labels: bool = False
    skeleton: frozenset = frozenset()  # edges drawn with the "skeleton" class
    radius: float | None = None  # in viewBox units; default scales with the drawing


def _fmt(v: float) -> str:
    return f"{v:.6f}".rstrip("0").rstrip(".") or "0"


def render_svg(g, drawing: Drawing, options: SvgOptions | None = None) -> str:
    """One ``<line>`` per edge and one ``<circle>`` per vertex; the y axis points up."""
    opt = options or SvgOptions()
    if not verify_proper(g, drawing).ok:
        raise ElrError("improper-input", "drawing is not proper")
    pts = [(float(x) * opt.scale, -float(y) * opt.scale) for x, y in drawing.coords]
    if pts:
        xs, ys = [p[0] for p in pts], [p[1] for p in pts]
        x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    else:
        x0 = x1 = y0 = y1 = 0.0
    w, h = x1 - x0, y1 - y0
    span = max(w, h) or opt.scale
    mx = 0.05 * (w or span)
    my = 0.05 * (h or span)
    box = (x0 - mx, y0 - my, w + 2 * mx, h + 2 * my)
    skeleton = {norm_edge(*e) for e in opt.skeleton}
    stroke = _fmt(span / 400)
    r = opt.radius if opt.radius is not None else span / 150
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{" ".join(_fmt(v) for v in box)}">',
        "<style>"
        f"line{{stroke:#333;stroke-width:{stroke}}}"
        f"line.skeleton{{stroke:#c0392b;stroke-width:{_fmt(3 * float(stroke))}}}"
        "circle{fill:#1f4e79}"
        f"text{{font-size:{_fmt(4 * r)}px;fill:#555}}"
        "</style>",
    ]
    for u, v in g.edges:
        cls = ' class="skeleton"' if (u, v) in skeleton else ""
        (ax, ay), (bx, by) = pts[u], pts[v]
        out.append(f'<line{cls} x1="{_fmt(ax)}" y1="{_fmt(ay)}" x2="{_fmt(bx)}" y2="{_fmt(by)}"/>')
    for v, (x, y) in enumerate(pts):
        out.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(r)}"/>')
        if opt.labels:
            out.append(f'<text x="{_fmt(x + r)}" y="{_fmt(y - r)}">{escape(str(v))}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
