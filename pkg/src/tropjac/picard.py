"""Tropical Jacobian and Picard group: equality, classes, cells, and tau.

A :class:`TroPicClass` is a pair (E, mu) of a divisor on the curve's vertices
and a bounded monodromy homomorphism; it stands for the sum of the torsor of
E and the torsor induced by mu.  Two pairs describe the same class exactly
when they differ by (div s, d s) for an integer edge cochain s and by the
coboundary of a cycle:

    (E, mu) ~ (E - div s, mu + d s) ~ (E, mu + d gamma).

Cells describe the quasistable decomposition of the genus-g real Picard torus
for curves with real (rank one) edge lengths.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

from .errors import DimensionError, PreconditionError, UnboundedError
from .linalg import Vec, det, floor_frac, inverse, rank, solve
from .monodromy import (
    MonodromyHom,
    _subgraph_cycles,
    coboundary,
    is_bounded,
)
from .plfun import slope_divisor
from .polytope import Polytope, clip, polygon_area, polygon_halfplanes, ordered_polygon, relint_meet, zonotope
from .tropcurve import (
    Divisor,
    TropicalCurve,
    components,
    cycle_basis,
    cycle_coordinates,
    intersection_matrix,
    spanning_forest,
)


# -- Jacobian ------------------------------------------------------------------------


def jac_solve(curve: TropicalCurve, target: MonodromyHom, check_bounded: bool = True) -> tuple[int, ...] | None:
    """The unique gamma in Z^g with gamma . A = target, or None."""
    curve.require_compact()
    if len(components(curve)) != 1:
        raise PreconditionError("curve is not connected")
    if check_bounded:
        rep = is_bounded(curve, target)
        if not rep:
            raise UnboundedError("target is not bounded", rep.certificate)
    A = intersection_matrix(curve)
    g, n = len(A), curve.rank
    if g == 0:
        return ()
    rows, rhs = [], []
    for j in range(g):
        for c in range(n):
            rows.append([A[i][j][c] for i in range(g)])
            rhs.append(target[j][c])
    if rank(rows, g) != g:
        raise AssertionError("intersection pairing is degenerate")
    x = solve(rows, rhs, g)
    if x is None or not x.is_integral():
        return None
    return tuple(int(v) for v in x)


def jac_equal(curve: TropicalCurve, mu1: MonodromyHom, mu2: MonodromyHom) -> tuple[bool, tuple[int, ...] | None]:
    for mu in (mu1, mu2):
        rep = is_bounded(curve, mu)
        if not rep:
            raise UnboundedError("input is not bounded", rep.certificate)
    gamma = jac_solve(curve, mu1 - mu2, check_bounded=False)
    return gamma is not None, gamma


# -- Picard classes ------------------------------------------------------------------


@dataclass(frozen=True)
class TroPicClass:
    curve: TropicalCurve
    divisor: Divisor
    mu: MonodromyHom

    def __post_init__(self):
        if not isinstance(self.divisor, Divisor):
            object.__setattr__(self, "divisor", Divisor(self.divisor))
        if not isinstance(self.mu, MonodromyHom):
            object.__setattr__(self, "mu", MonodromyHom(self.mu))
        if len(self.divisor) != self.curve.n_vertices:
            raise DimensionError("divisor must have one entry per vertex")
        rep = is_bounded(self.curve, self.mu)
        if not rep:
            raise UnboundedError("class monodromy is not bounded", rep.certificate)

    @property
    def degree(self) -> int:
        return self.divisor.degree

    def __add__(self, other: "TroPicClass") -> "TroPicClass":
        _same(self, other)
        return TroPicClass(self.curve, self.divisor + other.divisor, self.mu + other.mu)

    def __neg__(self) -> "TroPicClass":
        return TroPicClass(self.curve, Divisor(-x for x in self.divisor.values), -self.mu)

    def __sub__(self, other: "TroPicClass") -> "TroPicClass":
        return self + (-other)


def _same(a: TroPicClass, b: TroPicClass) -> None:
    if a.curve is not b.curve and a.curve != b.curve:
        raise ValueError("classes live on different curves")


def degree(cls: TroPicClass) -> int:
    return cls.degree


def point_divisor(curve: TropicalCurve, d: int, base: int) -> Divisor:
    out = [0] * curve.n_vertices
    out[base] = d
    return Divisor(out)


def default_base(curve: TropicalCurve) -> int:
    return curve.n_vertices - 1


def class_from_divisor(
    curve: TropicalCurve,
    model: TropicalCurve,
    D: Sequence[int],
    slopes: Sequence[int],
    d: int = 0,
    base: int | None = None,
) -> TroPicClass:
    """Class on ``curve`` of a divisor D on ``model`` trivialized by ``slopes``.

    ``model`` is the curve itself or a subdivision of it carrying the mapped
    cycle basis.  The slopes must have outgoing sum D(v) at every model
    vertex; D then has degree zero and its torsor is the one induced by the
    coboundary of the slopes.  The returned class is shifted by d[base].
    """
    D = Divisor(D)
    got = slope_divisor(model, slopes)
    if got != D:
        raise PreconditionError(f"slopes have outgoing sums {got.values}, expected {D.values}")
    if model.genus != curve.genus:
        raise ValueError("model is not a subdivision of the curve")
    base = default_base(curve) if base is None else base
    return TroPicClass(curve, point_divisor(curve, d, base), coboundary(model, slopes))


def tree_cochain(curve: TropicalCurve, E: Sequence[int]) -> tuple[int, ...]:
    """Spanning-tree cochain c with div c = E, for E of degree zero per component."""
    if sum(E) != 0:
        raise ValueError("divisor must have degree zero")
    _, paths = spanning_forest(curve)
    c = [0] * curve.n_edges
    # div(path to v) = root - v
    for v, mult in enumerate(E):
        if mult:
            for k, x in enumerate(paths[v]):
                c[k] -= mult * x
    return tuple(c)


def canonicalize(cls: TroPicClass, base: int | None = None) -> TroPicClass:
    curve = cls.curve
    curve.require_compact()
    if len(components(curve)) != 1:
        raise PreconditionError("canonical forms need a connected curve")
    base = default_base(curve) if base is None else base
    target = point_divisor(curve, cls.degree, base)
    c = tree_cochain(curve, (cls.divisor - target).values)
    return TroPicClass(curve, target, cls.mu + coboundary(curve, c))


def class_equal(c1: TroPicClass, c2: TroPicClass) -> tuple[bool, tuple[int, ...] | None]:
    _same(c1, c2)
    if c1.degree != c2.degree:
        return False, None
    a, b = canonicalize(c1), canonicalize(c2)
    return jac_equal(c1.curve, a.mu, b.mu)


def pl_shift(cls: TroPicClass, slopes: Sequence[int]) -> TroPicClass:
    """The same class written with the divisor moved by the slopes' divisor."""
    curve = cls.curve
    return TroPicClass(curve, cls.divisor - slope_divisor(curve, slopes), cls.mu + coboundary(curve, slopes))


# -- tau ---------------------------------------------------------------------------------


def tau_contains(curve: TropicalCurve, u: Sequence, v: Sequence) -> bool:
    """Is (u, v) in the cone prorepresenting the Jacobian?

    u is a functional on the lattice of lengths, v one on H1 given by its
    values on the basis.  Cycles with u(l(gamma)) = 0 are exactly the cycles
    of the subgraph whose edge lengths u kills, so v is tested on that
    subgraph's cycle generators.
    """
    curve.require_compact()
    u, v = Vec(u), Vec(v)
    if len(u) != curve.rank or len(v) != curve.genus:
        raise DimensionError("u must act on lengths and v on the cycle basis")
    if any(u.dot(g) < 0 for g in curve.monoid.generators):
        return False
    if any(u.dot(e.length) < 0 for e in curve.edges):
        return False
    basis = cycle_basis(curve)
    keep = [k for k, e in enumerate(curve.edges) if u.dot(e.length) == 0]
    for gam in _subgraph_cycles(curve, keep):
        coords = cycle_coordinates(curve, basis, gam)
        if v.dot(coords) != 0:
            return False
    return True


# -- quasistable cells ------------------------------------------------------------------


@dataclass(frozen=True)
class Cell:
    """One combinatorial type of balanced divisor on a quasistable model.

    ``model`` lists the subdivided edges.  ``divisor`` holds D on the original
    vertices (each subdivision point carries 1).  ``slopes[e]`` is (a,) for an
    unsubdivided edge and (a, b) with b = a + 1 for a subdivided one, both read
    along the edge's orientation.  ``polytope`` is the closure of the set of
    monodromies as the subdivision points move.
    """

    model: tuple[int, ...]
    divisor: tuple[int, ...]
    slopes: tuple[tuple[int, ...], ...]
    polytope: Polytope
    degree: int = 0
    base: int = 0

    @property
    def dim(self) -> int:
        return self.polytope.dim

    def model_divisor(self) -> tuple[int, ...]:
        return self.divisor + (1,) * len(self.model)

    def first_slopes(self) -> tuple[int, ...]:
        return tuple(s[0] for s in self.slopes)

    def sort_key(self):
        return (len(self.model), self.model, self.divisor, self.slopes)


def _edge_columns(curve: TropicalCurve) -> list[Vec]:
    basis = cycle_basis(curve)
    return [Vec(e.length[0] * g[k] for g in basis.cycles) for k, e in enumerate(curve.edges)]


def quasistable_cells(
    curve: TropicalCurve,
    d: int,
    slope_bound: int,
    divisor_box: Sequence[Sequence[int]],
    base: int | None = None,
    max_subdivided: int | None = None,
) -> list[Cell]:
    """Enumerate cells of balanced divisors on quasistable models.

    Each edge is subdivided at most once and every subdivision point carries
    D = 1.  D on the original vertices ranges over ``divisor_box`` (one
    inclusive (lo, hi) range per vertex) with total degree zero on the model,
    and all slopes lie in [-slope_bound, slope_bound].  Cells record the
    degree-zero divisor; as points of the degree-d Picard group they stand
    for D + d[base].
    """
    curve.require_compact()
    if curve.rank != 1:
        raise PreconditionError("quasistable cells need real (rank one) edge lengths")
    if len(components(curve)) != 1:
        raise PreconditionError("curve is not connected")
    if len(divisor_box) != curve.n_vertices:
        raise DimensionError("divisor_box needs one range per vertex")
    base = default_base(curve) if base is None else base
    ne, nv = curve.n_edges, curve.n_vertices
    cols = _edge_columns(curve)
    g = curve.genus
    tree, paths = spanning_forest(curve)
    free = [k for k in range(ne) if k not in tree]
    max_sub = ne if max_subdivided is None else max_subdivided
    ranges = [range(lo, hi + 1) for lo, hi in divisor_box]
    cells = []
    for size in range(0, max_sub + 1):
        for S in combinations(range(ne), size):
            # D(v) = out(a) - in(a) - #{e in S with head v}
            heads = [0] * nv
            for k in S:
                heads[curve.edges[k].head] += 1
            for D in product(*ranges):
                if sum(D) + size != 0:
                    continue
                target = [D[v] + heads[v] for v in range(nv)]
                a0 = tree_cochain(curve, target)
                for extra in product(range(-slope_bound, slope_bound + 1), repeat=len(free)):
                    a = _add_cycles(paths, curve, free, extra, a0)
                    slopes = tuple((a[k], a[k] + 1) if k in S else (a[k],) for k in range(ne))
                    if any(abs(x) > slope_bound for s in slopes for x in s):
                        continue
                    base_pt = Vec.zero(g)
                    gens = []
                    for k in range(ne):
                        base_pt = base_pt + cols[k] * slopes[k][-1]
                        if k in S:
                            gens.append(-cols[k])
                    poly = zonotope(base_pt, gens)
                    cells.append(Cell(S, tuple(D), slopes, poly, d, base))
    cells.sort(key=Cell.sort_key)
    return cells


def _add_cycles(paths, curve, free, extra, a0) -> list[int]:
    """a0 plus extra[i] times the fundamental cycle of each free edge."""
    a = list(a0)
    for k, x in zip(free, extra):
        if not x:
            continue
        e = curve.edges[k]
        # fundamental cycle of k: e, then the tree path from head back to tail
        for j, (p, q) in enumerate(zip(paths[e.tail], paths[e.head])):
            a[j] += x * (p - q)
        a[k] += x
    return a


def cell_class(curve: TropicalCurve, cell: Cell) -> tuple[Divisor, Polytope]:
    """The class data of a cell: divisor d[base] and the monodromy polytope."""
    return point_divisor(curve, cell.degree, cell.base), cell.polytope


# -- tiling verification ------------------------------------------------------------


@dataclass
class TilingReport:
    genus: int
    det: Fraction
    area: Fraction
    classes: int
    overlaps: list[tuple[int, int, tuple[int, ...]]] = field(default_factory=list)
    uncovered: list[tuple[Fraction, ...]] = field(default_factory=list)
    samples: int = 0
    representatives: list[Cell] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.area == self.det and not self.overlaps and not self.uncovered

    def summary(self) -> str:
        return (
            f"genus {self.genus}: area {self.area} vs |det A| {self.det}, "
            f"{self.classes} translation classes, {len(self.overlaps)} overlaps, "
            f"{len(self.uncovered)}/{self.samples} samples uncovered"
        )


def _to_coords(Ainv, p: Vec) -> Vec:
    g = len(p)
    return Vec(sum((p[i] * Ainv[i][j] for i in range(g)), Fraction(0)) for j in range(g))


def translation_classes(curve: TropicalCurve, cells: Sequence[Cell]) -> list[Cell]:
    """One representative per translation class, centroid moved into [0,1)^g.

    Adding a cycle lambda to the slopes translates a cell by lambda . A, so
    the representative is found by flooring the centroid's A-coordinates.
    """
    A = [[x[0] for x in row] for row in intersection_matrix(curve)]
    g = len(A)
    Ainv = inverse(A)
    basis = cycle_basis(curve)
    reps: dict = {}
    for cell in cells:
        x = _to_coords(Ainv, cell.polytope.centroid())
        lam = [floor_frac(c) for c in x]
        shift = Vec(-sum((lam[i] * A[i][j] for i in range(g)), 0) for j in range(g))
        dl = [sum(lam[i] * basis.cycles[i][k] for i in range(g)) for k in range(curve.n_edges)]
        slopes = tuple(tuple(s - dl[k] for s in sl) for k, sl in enumerate(cell.slopes))
        key = (cell.model, cell.divisor, slopes)
        if key not in reps:
            reps[key] = Cell(cell.model, cell.divisor, slopes, cell.polytope.translate(shift), cell.degree, cell.base)
    return sorted(reps.values(), key=Cell.sort_key)


def _coord_box(Ainv, P: Polytope) -> tuple[list[Fraction], list[Fraction]]:
    xs = [_to_coords(Ainv, v) for v in P.vertices]
    g = len(xs[0])
    return [min(x[i] for x in xs) for i in range(g)], [max(x[i] for x in xs) for i in range(g)]


def _lattice_shifts(lo, hi, lo2, hi2):
    """Integer lambda with box1 and box2 + lambda overlapping (closed)."""
    ranges = [range(floor_frac(a - d) - 1, floor_frac(b - c) + 2) for a, b, c, d in zip(lo, hi, lo2, hi2)]
    for lam in product(*ranges):
        if all(c + l <= b and a <= d + l for l, a, b, c, d in zip(lam, lo, hi, lo2, hi2)):
            yield lam


def verify_tiling(cells: Sequence[Cell], curve: TropicalCurve, grid: int = 100) -> TilingReport:
    """Check that the cells tile the real Picard torus R^g / A Z^g (g = 1, 2).

    Reports the total area of all translates inside the fundamental domain
    {x A : x in [0,1]^g}, every pair of translates whose relative interiors
    meet, and sample points ((i+1/2)/grid in A-coordinates) that no closed
    translate covers.
    """
    A = [[x[0] for x in row] for row in intersection_matrix(curve)]
    g = len(A)
    if g not in (1, 2):
        raise NotImplementedError("tiling checks are implemented for genus 1 and 2")

    reps = translation_classes(curve, cells)
    Ainv = inverse(A)
    rowsA = [Vec(r) for r in A]
    D = abs(det(A))

    def shift(lam):
        return sum((rowsA[i] * lam[i] for i in range(g)), Vec.zero(g))

    boxes = [_coord_box(Ainv, c.polytope) for c in reps]
    unit_lo, unit_hi = [Fraction(0)] * g, [Fraction(1)] * g

    # (a) area inside the fundamental domain
    area = Fraction(0)
    if g == 2:
        dom = ordered_polygon([Vec([0, 0]), rowsA[0], rowsA[1], rowsA[0] + rowsA[1]])
        dom_h = polygon_halfplanes(dom)
    for c, (lo, hi) in zip(reps, boxes):
        if c.dim < g:
            continue
        for lam in _lattice_shifts(unit_lo, unit_hi, lo, hi):
            P = c.polytope.translate(shift(lam))
            if g == 1:
                xs = [v[0] for v in P.vertices]
                a, b = max(min(xs), 0), min(max(xs), D)
                area += max(Fraction(0), b - a)
            else:
                area += polygon_area(clip(ordered_polygon(P.vertices), dom_h))

    # (b) pairwise overlaps among translates
    overlaps = []
    for i, j in combinations(range(len(reps)), 2):
        for lam in _lattice_shifts(boxes[i][0], boxes[i][1], boxes[j][0], boxes[j][1]):
            if relint_meet(reps[i].polytope, reps[j].polytope.translate(shift(lam))):
                overlaps.append((i, j, lam))
    for i, c in enumerate(reps):
        for lam in _lattice_shifts(boxes[i][0], boxes[i][1], boxes[i][0], boxes[i][1]):
            if any(lam) and relint_meet(c.polytope, c.polytope.translate(shift(lam))):
                overlaps.append((i, i, lam))

    # (c) coverage of sample points, tested in A-coordinates
    coord_polys = []
    for c, (lo, hi) in zip(reps, boxes):
        verts = [_to_coords(Ainv, v) for v in c.polytope.vertices]
        coord_polys.append((c.dim, verts, lo, hi, _coord_hull(verts, g)))
    uncovered = []
    pts = [Fraction(2 * i + 1, 2 * grid) for i in range(grid)]
    for x in product(pts, repeat=g):
        if not _covered(x, coord_polys, g):
            uncovered.append(x)
    return TilingReport(g, D, area, len(reps), overlaps, uncovered, grid**g, reps)


def _coord_hull(verts, g):
    if g == 1:
        xs = [v[0] for v in verts]
        return (min(xs), max(xs))
    poly = ordered_polygon(verts)
    return polygon_halfplanes(poly) if len(poly) >= 3 else None


def _covered(x, coord_polys, g) -> bool:
    for dim, verts, lo, hi, hull in coord_polys:
        if dim < g:
            continue  # lower-dimensional cells cannot cover a generic sample
        for lam in product(*[range(floor_frac(x[i] - hi[i]), floor_frac(x[i] - lo[i]) + 1) for i in range(g)]):
            p = [x[i] - lam[i] for i in range(g)]
            if g == 1:
                if hull[0] <= p[0] <= hull[1]:
                    return True
            elif all(n[0] * p[0] + n[1] * p[1] <= b for n, b in hull):
                return True
    return False


def remove_class(cells: Sequence[Cell], curve: TropicalCurve, index: int) -> list[Cell]:
    """Negative control: the representatives with one translation class dropped."""
    reps = translation_classes(curve, cells)
    return [c for i, c in enumerate(reps) if i != index]
