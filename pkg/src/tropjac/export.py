"""CSV and SVG output for cell decompositions."""

from __future__ import annotations

import csv
import io
from fractions import Fraction
from typing import Sequence

from .linalg import Vec
from .picard import Cell
from .polytope import ordered_polygon
from .serialize import encode_rational
from .tropcurve import TropicalCurve, intersection_matrix


def _fmt(x: Fraction) -> str:
    return str(encode_rational(x))


def cells_csv(cells: Sequence[Cell], curve: TropicalCurve) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["model", "divisor", "slopes", "dim", "vertices"])
    names = curve.names
    for c in cells:
        w.writerow(
            [
                " ".join(f"e{k}" for k in c.model),
                " ".join(f"{names[v]}:{m}" for v, m in enumerate(c.divisor)),
                " ".join("/".join(str(s) for s in sl) for sl in c.slopes),
                c.dim,
                " ".join("(" + ",".join(_fmt(x) for x in v) + ")" for v in c.polytope.vertices),
            ]
        )
    return buf.getvalue()


_FILL = {0: "#333333", 1: "#1f77b4", 2: "#cfe3f5"}


def cells_svg(cells: Sequence[Cell], curve: TropicalCurve, scale: int = 20, margin: int = 20) -> str:
    """Genus-two picture: basis cycle 1 horizontal, cycle 2 vertical (up)."""
    A = [[row[j][0] for j in range(len(row))] for row in intersection_matrix(curve)]
    if len(A) != 2:
        raise ValueError("SVG export needs genus 2")
    dom = [Vec([0, 0]), Vec(A[0]), Vec(A[0]) + Vec(A[1]), Vec(A[1])]
    pts = [v for c in cells for v in c.polytope.vertices] + dom
    xmin = min(p[0] for p in pts)
    xmax = max(p[0] for p in pts)
    ymin = min(p[1] for p in pts)
    ymax = max(p[1] for p in pts)
    width = float((xmax - xmin) * scale) + 2 * margin
    height = float((ymax - ymin) * scale) + 2 * margin

    def xy(p) -> str:
        x = float((p[0] - xmin) * scale) + margin
        y = float((ymax - p[1]) * scale) + margin
        return f"{x:.3f},{y:.3f}"

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" height="{height:.0f}" '
        f'viewBox="0 0 {width:.3f} {height:.3f}">',
        f'<polygon points="{" ".join(xy(p) for p in dom)}" fill="#f7c6c6" stroke="#cc0000" stroke-width="2"/>',
    ]
    for dim in (2, 1, 0):
        for c in cells:
            if c.dim != dim:
                continue
            label = f"model={list(c.model)} D={list(c.divisor)} slopes={[list(s) for s in c.slopes]}"
            if dim == 0:
                cx, cy = xy(c.polytope.vertices[0]).split(",")
                out.append(f'<circle cx="{cx}" cy="{cy}" r="3" fill="{_FILL[0]}"><title>{label}</title></circle>')
            elif dim == 1:
                a, b = c.polytope.vertices
                out.append(f'<polyline points="{xy(a)} {xy(b)}" stroke="{_FILL[1]}" stroke-width="2" fill="none">'
                           f"<title>{label}</title></polyline>")
            else:
                poly = ordered_polygon(c.polytope.vertices)
                out.append(f'<polygon points="{" ".join(xy(p) for p in poly)}" fill="{_FILL[2]}" '
                           f'fill-opacity="0.6" stroke="#555555" stroke-width="1"><title>{label}</title></polygon>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
