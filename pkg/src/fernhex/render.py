"""Text and SVG drawings of regions and tilings.

Cell (h, k) has its centre at lattice abscissa k; the three corners come
from ``lattice.vertices``.  In the SVG a lattice unit of X is half an edge.
"""

from __future__ import annotations

import math

from .lattice import Region, is_up, vertices

EDGE_PX = 20
_ROW_PX = EDGE_PX * math.sqrt(3) / 2
_MARGIN = 10

# fill colours for the three lozenge directions
LOZENGE_FILLS = {"vertical": "#e8b04a", "left": "#6b9bd1", "right": "#9fd18b"}


def render_ascii(r: Region, tiling=None) -> str:
    """One text row per strip: '^' up, 'v' down, '#' removed.

    With a tiling, each lozenge is labelled by direction instead:
    '|' for the vertical pair, '/' and '\\' for the two slanted ones.
    """
    label = {}
    if tiling is not None:
        for loz in tiling:
            kind = lozenge_kind(loz)
            ch = {"vertical": "|", "left": "/", "right": "\\"}[kind]
            label[loz.first] = label[loz.second] = ch
    allc = set(r.cells) | set(r.removed)
    if not allc:
        return ""
    hs = sorted({h for h, _ in allc}, reverse=True)
    k0 = min(k for _, k in allc)
    k1 = max(k for _, k in allc)
    lines = []
    for h in hs:
        row = []
        for k in range(k0, k1 + 1):
            c = (h, k)
            if c in label:
                row.append(label[c])
            elif c in r.cells:
                row.append("^" if is_up(c) else "v")
            elif c in r.removed:
                row.append("#")
            else:
                row.append(" ")
        lines.append("".join(row).rstrip())
    return "\n".join(lines) + "\n"


def lozenge_kind(loz) -> str:
    """Direction of a lozenge given as (up cell, down cell)."""
    (hu, ku), (hd, kd) = loz.first, loz.second
    if kd == ku:
        return "vertical"
    return "left" if kd < ku else "right"


def lozenge_corners(loz):
    """The four lattice points of a lozenge, in cyclic order."""
    a, b = vertices(loz.first), vertices(loz.second)
    p, q = [v for v in a if v in b]
    (ta,) = [v for v in a if v not in b]
    (tb,) = [v for v in b if v not in a]
    return [ta, p, tb, q]


def _px(X, h, X0, h1):
    return (_MARGIN + (X - X0) * EDGE_PX / 2, _MARGIN + (h1 - h) * _ROW_PX)


def _poly(pts, fill, stroke="#999999", width=0.5):
    s = " ".join(f"{x:.2f},{y:.2f}" for x, y in pts)
    return f'<polygon points="{s}" fill="{fill}" stroke="{stroke}" stroke-width="{width}"/>'


def render_svg(r: Region, tiling=None) -> str:
    """Standalone SVG: region cells on a light grid, removed cells black.

    The base-hexagon outline is drawn when the region carries one.
    """
    allc = set(r.cells) | set(r.removed)
    pts = [p for c in allc for p in vertices(c)] + list(r.outline)
    if not pts:
        return '<svg xmlns="http://www.w3.org/2000/svg" width="0" height="0"></svg>\n'
    X0 = min(p[0] for p in pts)
    X1 = max(p[0] for p in pts)
    h0 = min(p[1] for p in pts)
    h1 = max(p[1] for p in pts)
    w = 2 * _MARGIN + (X1 - X0) * EDGE_PX / 2
    ht = 2 * _MARGIN + (h1 - h0) * _ROW_PX
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0f}" height="{ht:.0f}" '
           f'viewBox="0 0 {w:.2f} {ht:.2f}">',
           f'<rect width="{w:.2f}" height="{ht:.2f}" fill="white"/>']

    def corners(c):
        return [_px(X, h, X0, h1) for X, h in vertices(c)]

    for c in sorted(r.cells):
        out.append(_poly(corners(c), "white", "#cccccc"))
    for c in sorted(r.removed):
        out.append(_poly(corners(c), "black", "black"))
    if tiling is not None:
        for loz in sorted(tiling):
            out.append(_poly([_px(X, h, X0, h1) for X, h in lozenge_corners(loz)],
                             LOZENGE_FILLS[lozenge_kind(loz)], "black", 1))
    if r.outline:
        s = " ".join("%.2f,%.2f" % _px(X, h, X0, h1) for X, h in r.outline)
        out.append(f'<polygon points="{s}" fill="none" stroke="black" stroke-width="1.5"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
