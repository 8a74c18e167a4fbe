"""Exact zonotopes and small-dimensional convex geometry over Q.

Cells of the Picard decomposition are affine images of boxes, i.e. zonotopes
``base + sum_i [0, 1] v_i``.  They carry both a vertex list and an
H-representation.  Planar helpers (area, clipping, relative-interior overlap)
cover the genus-two tiling checks; intervals cover genus one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

from .linalg import Vec, nullspace, primitive, rank


@dataclass(frozen=True)
class Polytope:
    dim_ambient: int
    vertices: tuple[Vec, ...]
    equalities: tuple[tuple[Vec, Fraction], ...]  # (h, b): h.x = b
    inequalities: tuple[tuple[Vec, Fraction], ...]  # (n, b): n.x <= b
    dim: int

    def contains(self, p: Sequence) -> bool:
        p = Vec(p)
        return all(h.dot(p) == b for h, b in self.equalities) and all(n.dot(p) <= b for n, b in self.inequalities)

    def centroid(self) -> Vec:
        # vertex average: enough for a canonical interior point
        k = len(self.vertices)
        acc = Vec.zero(self.dim_ambient)
        for v in self.vertices:
            acc = acc + v
        return acc * Fraction(1, k)

    def translate(self, t: Sequence) -> "Polytope":
        t = Vec(t)
        return Polytope(
            self.dim_ambient,
            tuple(v + t for v in self.vertices),
            tuple((h, b + h.dot(t)) for h, b in self.equalities),
            tuple((n, b + n.dot(t)) for n, b in self.inequalities),
            self.dim,
        )

    def measure(self) -> Fraction:
        """Full-dimensional volume for dim_ambient in {1, 2}; zero if lower-dimensional."""
        if self.dim < self.dim_ambient:
            return Fraction(0)
        if self.dim_ambient == 1:
            xs = [v[0] for v in self.vertices]
            return max(xs) - min(xs)
        if self.dim_ambient == 2:
            return polygon_area(ordered_polygon(self.vertices))
        raise NotImplementedError("measure is implemented in dimensions 1 and 2")


def zonotope(base: Sequence, generators: Sequence[Sequence]) -> Polytope:
    base = Vec(base)
    n = len(base)
    gens = [Vec(v) for v in generators if not Vec(v).is_zero()]
    k = rank(gens, n) if gens else 0
    eqs = tuple((primitive(h), primitive(h).dot(base)) for h in nullspace(gens, n)) if gens else tuple(
        (Vec.unit(n, i), base[i]) for i in range(n)
    )
    eq_normals = [h for h, _ in eqs]
    ineqs: dict[Vec, Fraction] = {}
    if k > 0:
        for sub in combinations(gens, k - 1):
            rows = list(sub) + eq_normals
            if rank(rows, n) != n - 1:
                continue
            (f,) = nullspace(rows, n)
            f = primitive(f)
            for m in (f, -f):
                ineqs[m] = m.dot(base) + sum((max(Fraction(0), m.dot(v)) for v in gens), Fraction(0))
    ineq_t = tuple(sorted(ineqs.items()))
    corners = {base}
    for signs in product((0, 1), repeat=len(gens)):
        p = base
        for s, v in zip(signs, gens):
            if s:
                p = p + v
        corners.add(p)
    verts = []
    for p in corners:
        tight = [m for m, b in ineq_t if m.dot(p) == b]
        if k == 0 or rank(tight, n) >= k:
            verts.append(p)
    return Polytope(n, tuple(sorted(verts)), eqs, ineq_t, k)


# -- planar helpers --------------------------------------------------------------------


def _cross(o: Vec, a: Vec, b: Vec) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def ordered_polygon(points: Sequence[Vec]) -> list[Vec]:
    """Convex hull in counter-clockwise order (monotone chain)."""
    pts = sorted(set(Vec(p) for p in points))
    if len(pts) <= 2:
        return pts
    lower: list[Vec] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Vec] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def polygon_area(poly: Sequence[Vec]) -> Fraction:
    if len(poly) < 3:
        return Fraction(0)
    s = Fraction(0)
    for i in range(len(poly)):
        a, b = poly[i], poly[(i + 1) % len(poly)]
        s += a[0] * b[1] - a[1] * b[0]
    return abs(s) / 2


def clip(poly: Sequence[Vec], halfplanes: Sequence[tuple[Vec, Fraction]]) -> list[Vec]:
    """Sutherland-Hodgman clip of a convex polygon against n.x <= b constraints."""
    out = list(poly)
    for n, b in halfplanes:
        if not out:
            break
        inp, out = out, []
        for i in range(len(inp)):
            p, q = inp[i], inp[(i + 1) % len(inp)]
            fp, fq = n.dot(p) - b, n.dot(q) - b
            if fp <= 0:
                out.append(p)
            if (fp < 0 < fq) or (fq < 0 < fp):
                t = fp / (fp - fq)
                out.append(p + (q - p) * t)
        # drop consecutive duplicates introduced by touching vertices
        dedup = []
        for p in out:
            if not dedup or dedup[-1] != p:
                dedup.append(p)
        if len(dedup) > 1 and dedup[0] == dedup[-1]:
            dedup.pop()
        out = dedup
    return out


def polygon_halfplanes(poly: Sequence[Vec]) -> list[tuple[Vec, Fraction]]:
    """n.x <= b constraints of a counter-clockwise convex polygon."""
    hs = []
    for i in range(len(poly)):
        a, b = poly[i], poly[(i + 1) % len(poly)]
        n = Vec([b[1] - a[1], a[0] - b[0]])
        hs.append((n, n.dot(a)))
    return hs


def relint_meet(P: Polytope, Q: Polytope) -> bool:
    """Do the relative interiors of two polytopes in R^1 or R^2 intersect?"""
    if P.dim > Q.dim:
        P, Q = Q, P
    if P.dim_ambient == 1:
        return _relint_meet_1d(P, Q)
    if P.dim_ambient != 2:
        raise NotImplementedError("relint_meet handles dimensions 1 and 2")
    if P.dim == 0:
        p = P.vertices[0]
        return _in_relint(Q, p)
    if P.dim == 1:
        a, b = P.vertices
        if Q.dim == 1:
            return _segments_meet(a, b, *Q.vertices)
        # clip the segment to Q, then test the midpoint strictly inside
        seg = _clip_segment(a, b, Q.inequalities)
        if seg is None or seg[0] == seg[1]:
            return False
        mid = (seg[0] + seg[1]) * Fraction(1, 2)
        return all(n.dot(mid) < c for n, c in Q.inequalities)
    inter = clip(ordered_polygon(P.vertices), Q.inequalities)
    return polygon_area(inter) > 0


def _in_relint(Q: Polytope, p: Vec) -> bool:
    if Q.dim == 0:
        return Q.vertices[0] == p
    if not all(h.dot(p) == b for h, b in Q.equalities):
        return False
    if Q.dim == 1:
        a, b = Q.vertices
        return _strictly_between(a, b, p)
    return all(n.dot(p) < c for n, c in Q.inequalities)


def _strictly_between(a: Vec, b: Vec, p: Vec) -> bool:
    if _cross(a, b, p) != 0:
        return False
    d = b - a
    t = (p - a).dot(d) / d.dot(d)
    return 0 < t < 1


def _segments_meet(a: Vec, b: Vec, c: Vec, d: Vec) -> bool:
    r, s = b - a, d - c
    denom = r[0] * s[1] - r[1] * s[0]
    if denom == 0:
        if _cross(a, b, c) != 0:
            return False
        # collinear: compare open parameter intervals along r
        rr = r.dot(r)
        t0, t1 = sorted(((c - a).dot(r) / rr, (d - a).dot(r) / rr))
        return max(t0, Fraction(0)) < min(t1, Fraction(1))
    w = c - a
    t = (w[0] * s[1] - w[1] * s[0]) / denom
    u = (w[0] * r[1] - w[1] * r[0]) / denom
    return 0 < t < 1 and 0 < u < 1


def _clip_segment(a: Vec, b: Vec, halfplanes) -> tuple[Vec, Vec] | None:
    lo, hi = Fraction(0), Fraction(1)
    d = b - a
    for n, c in halfplanes:
        na, nd = n.dot(a), n.dot(d)
        if nd == 0:
            if na > c:
                return None
            continue
        t = (c - na) / nd
        if nd > 0:
            hi = min(hi, t)
        else:
            lo = max(lo, t)
        if lo > hi:
            return None
    return a + d * lo, a + d * hi


def _relint_meet_1d(P: Polytope, Q: Polytope) -> bool:
    def span(X):
        xs = [v[0] for v in X.vertices]
        return min(xs), max(xs)

    (a0, a1), (b0, b1) = span(P), span(Q)
    if P.dim == 0 and Q.dim == 0:
        return a0 == b0
    if P.dim == 0:
        return b0 < a0 < b1
    return max(a0, b0) < min(a1, b1)
