"""SVG drawing of an instance, optionally with the edges of a witness.

Vertices are placed by barycentric (Tutte) layout with the outer face on
a regular polygon. Clusters get a shaded convex hull, added edges are
dashed, and chords of the outer face bend outward.
"""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

import numpy as np
from scipy.sparse import lil_matrix
from scipy.sparse.linalg import spsolve
from scipy.spatial import ConvexHull, QhullError

from ..cgraph import CGraph
from ..decision import Witness
from ..embed import EmbeddedGraph

SIZE = 600
MARGIN = 40
PALETTE = [
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
    "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac",
]


def tutte_layout(g: EmbeddedGraph) -> dict[int, tuple[float, float]]:
    """Outer face on the unit circle, every other vertex at the mean of its neighbours.

    Convex faces are guaranteed only for 3-connected graphs; elsewhere the
    same system still gives a usable picture. Repeated vertices on the
    outer walk keep their first corner.
    """
    walk = [d[0] for d in g.faces[g.outer_face]] if g.outer else [d[0] for d in g.faces[0]]
    ring = list(dict.fromkeys(walk))
    pos: dict[int, tuple[float, float]] = {}
    k = len(ring)
    for i, v in enumerate(ring):
        t = 2 * math.pi * i / k
        pos[v] = (math.cos(t), -math.sin(t))
    inner = [v for v in g.vertices if v not in pos]
    if inner:
        idx = {v: i for i, v in enumerate(inner)}
        a = lil_matrix((len(inner), len(inner)))
        b = np.zeros((len(inner), 2))
        for v in inner:
            i = idx[v]
            nbrs = g.rotation(v)
            a[i, i] = len(nbrs)
            for u in nbrs:
                if u in idx:
                    a[i, idx[u]] -= 1
                else:
                    b[i] += pos[u]
        xy = spsolve(a.tocsr(), b)
        xy = np.asarray(xy).reshape(len(inner), 2)
        for v, (x, y) in zip(inner, xy):
            pos[v] = (float(x), float(y))
    return pos


def _screen(p: tuple[float, float]) -> tuple[float, float]:
    half = (SIZE - 2 * MARGIN) / 2
    return (MARGIN + half * (1 + p[0]), MARGIN + half * (1 + p[1]))


def _f(x: float) -> str:
    return f"{x:.2f}"


def _hull(points: list[tuple[float, float]], pad: float = 12.0) -> str:
    """Path data for a padded hull; small or flat clusters become padded segments."""
    arr = np.array(points)
    c = arr.mean(axis=0)
    if len(points) >= 3:
        try:
            h = ConvexHull(arr)
            ring = arr[h.vertices]
        except QhullError:
            ring = arr
    else:
        ring = arr
    out = []
    for p in ring:
        d = p - c
        n = float(np.hypot(*d))
        q = p + (d / n * pad if n > 1e-9 else np.array([pad, 0.0]))
        out.append(q)
    if len(out) < 3:
        # a blob around one or two points
        r = pad
        if len(points) == 1:
            x, y = arr[0]
            return f"M {_f(x - r)} {_f(y)} a {_f(r)} {_f(r)} 0 1 0 {_f(2 * r)} 0 a {_f(r)} {_f(r)} 0 1 0 {_f(-2 * r)} 0 Z"
        (x1, y1), (x2, y2) = arr[0], arr[1]
        dx, dy = x2 - x1, y2 - y1
        n = math.hypot(dx, dy) or 1.0
        nx_, ny_ = -dy / n * r, dx / n * r
        return (
            f"M {_f(x1 + nx_)} {_f(y1 + ny_)} L {_f(x2 + nx_)} {_f(y2 + ny_)} "
            f"A {_f(r)} {_f(r)} 0 0 0 {_f(x2 - nx_)} {_f(y2 - ny_)} "
            f"L {_f(x1 - nx_)} {_f(y1 - ny_)} A {_f(r)} {_f(r)} 0 0 0 {_f(x1 + nx_)} {_f(y1 + ny_)} Z"
        )
    return "M " + " L ".join(f"{_f(x)} {_f(y)}" for x, y in out) + " Z"


def render_svg(cg: CGraph, witness: Witness | None = None) -> str:
    g = cg.graph
    pos = {v: _screen(p) for v, p in tutte_layout(g).items()}
    outer = g.outer_face if g.outer else None
    center = (SIZE / 2, SIZE / 2)
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">',
        '<g class="clusters">',
    ]
    for mu, members in cg.clusters.items():
        color = PALETTE[mu % len(PALETTE)]
        d = _hull([pos[v] for v in members])
        lines.append(f'<path class="hull" data-cluster="{mu}" d="{d}" fill="{color}" fill-opacity="0.18" stroke="{color}"/>')
    lines.append("</g>")
    lines.append('<g class="edges" stroke="#333" stroke-width="1.5">')
    for u, v in g.edges:
        (x1, y1), (x2, y2) = pos[u], pos[v]
        lines.append(f'<line x1="{_f(x1)}" y1="{_f(y1)}" x2="{_f(x2)}" y2="{_f(y2)}"/>')
    lines.append("</g>")
    if witness is not None:
        lines.append('<g class="added" stroke="#c00" stroke-width="1.5" stroke-dasharray="6 4" fill="none">')
        for f, u, v in witness.added:
            (x1, y1), (x2, y2) = pos[u], pos[v]
            if f == outer:
                mx, my = (x1 + x2) / 2, (y1 + y2) / 2
                dx, dy = mx - center[0], my - center[1]
                n = math.hypot(dx, dy) or 1.0
                reach = SIZE / 2 - MARGIN / 2
                cx, cy = center[0] + dx / n * reach * 1.3, center[1] + dy / n * reach * 1.3
                lines.append(
                    f'<path data-face="{f}" d="M {_f(x1)} {_f(y1)} Q {_f(cx)} {_f(cy)} {_f(x2)} {_f(y2)}"/>'
                )
            else:
                lines.append(
                    f'<path data-face="{f}" d="M {_f(x1)} {_f(y1)} L {_f(x2)} {_f(y2)}"/>'
                )
        lines.append("</g>")
    lines.append('<g class="vertices" font-family="sans-serif" font-size="10" text-anchor="middle">')
    for v in g.vertices:
        x, y = pos[v]
        color = PALETTE[cg.cluster_of[v] % len(PALETTE)]
        lines.append(f'<circle cx="{_f(x)}" cy="{_f(y)}" r="6" fill="{color}" stroke="#000"/>')
        lines.append(f'<text x="{_f(x)}" y="{_f(y - 9)}">{escape(str(v))}</text>')
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
