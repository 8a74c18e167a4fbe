"""Tropical curves as flag structures with monoid-valued lengths.

A curve is a finite set of flags ``0..N-1`` with an involution ``inv``, a
partial retraction ``ret`` and a length per flag.  Flags of length zero are
vertices; the remaining flags pair up under ``inv`` into edges.  Each edge is
oriented from its lower flag (tail) to its higher flag (head), and every sign
below (boundaries, pairings, slopes) is relative to that orientation.

Cycles and other edge chains are plain integer tuples indexed by edge number.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

from .errors import DimensionError, PreconditionError
from .linalg import Vec, det, mat_vec, vsum
from .ordmonoid import SharpMonoid, ValuationOrder

Chain = tuple  # tuple[int, ...] indexed by edges


class Edge(NamedTuple):
    tail_flag: int
    head_flag: int
    tail: int | None  # vertex index, None for an open end
    head: int | None
    length: Vec


@dataclass(frozen=True)
class Divisor:
    values: tuple[int, ...]

    def __init__(self, values: Iterable[int]):
        object.__setattr__(self, "values", tuple(int(v) for v in values))

    @property
    def degree(self) -> int:
        return sum(self.values)

    def __add__(self, other: "Divisor") -> "Divisor":
        return Divisor(a + b for a, b in zip(self.values, other.values, strict=True))

    def __sub__(self, other: "Divisor") -> "Divisor":
        return Divisor(a - b for a, b in zip(self.values, other.values, strict=True))

    def __getitem__(self, i: int) -> int:
        return self.values[i]

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class CycleBasis:
    spanning_tree: frozenset[int]
    cycles: tuple[Chain, ...]

    @property
    def genus(self) -> int:
        return len(self.cycles)


@dataclass(frozen=True, eq=False)
class TropicalCurve:
    """Flag-level tropical curve.

    ``order`` optionally refines the monoid to a valuative order; lengths are
    then only required to be positive in that order.  ``basis`` optionally
    fixes the cycle basis returned by :func:`cycle_basis` (it must be a
    Z-basis of H1).
    """

    monoid: SharpMonoid
    inv: tuple[int, ...]
    ret: tuple[int | None, ...]
    length: tuple[Vec, ...]
    names: tuple[str, ...] = ()
    basis: tuple[Chain, ...] | None = None
    order: ValuationOrder | None = None

    def __post_init__(self):
        n = len(self.inv)
        if len(self.ret) != n or len(self.length) != n:
            raise DimensionError("inv, ret and length must have one entry per flag")
        object.__setattr__(self, "inv", tuple(int(x) for x in self.inv))
        object.__setattr__(self, "length", tuple(Vec(v) for v in self.length))
        for v in self.length:
            if len(v) != self.monoid.ambient_rank:
                raise DimensionError(f"length {v} does not live in Z^{self.monoid.ambient_rank}")
        if self.order is not None and self.order.base != self.monoid:
            raise ValueError("order must refine the curve's monoid")
        if not self.names:
            object.__setattr__(self, "names", tuple(f"v{i}" for i in range(len(self.vertices))))
        if len(self.names) != len(self.vertices):
            raise DimensionError("one name per vertex required")
        if self.basis is not None:
            object.__setattr__(self, "basis", tuple(tuple(int(c) for c in g) for g in self.basis))

    # -- construction ---------------------------------------------------------

    @classmethod
    def from_graph(
        cls,
        monoid: SharpMonoid,
        vertices: int | Sequence[str],
        edges: Sequence[tuple[int | None, int | None, Sequence]],
        basis: Sequence[Sequence[int]] | None = None,
        order: ValuationOrder | None = None,
    ) -> "TropicalCurve":
        """Build a curve from a vertex list and (tail, head, length) triples.

        Vertex k becomes flag k; edge k gets flags |V|+2k (tail) and |V|+2k+1
        (head), so edge numbering and orientation follow the input.
        """
        names = tuple(f"v{i}" for i in range(vertices)) if isinstance(vertices, int) else tuple(vertices)
        nv = len(names)
        inv: list[int] = list(range(nv))
        ret: list[int | None] = list(range(nv))
        length: list[Vec] = [Vec.zero(monoid.ambient_rank)] * nv
        for k, (a, b, ell) in enumerate(edges):
            t, h = nv + 2 * k, nv + 2 * k + 1
            for end in (a, b):
                if end is not None and not 0 <= end < nv:
                    raise ValueError(f"edge {k} references unknown vertex {end}")
            inv += [h, t]
            ret += [a, b]
            length += [Vec(ell), Vec(ell)]
        curve = cls(monoid, tuple(inv), tuple(ret), tuple(length), names, None, order)
        problems = validate(curve)
        if problems:
            raise ValueError("invalid curve: " + "; ".join(problems))
        if basis is not None:
            curve = curve.with_basis(basis)
        return curve

    def with_basis(self, basis: Sequence[Sequence[int]] | None) -> "TropicalCurve":
        c = TropicalCurve(self.monoid, self.inv, self.ret, self.length, self.names, basis, self.order)
        if basis is not None:
            check_basis(c, c.basis)
        return c

    def with_order(self, order: ValuationOrder | None) -> "TropicalCurve":
        return TropicalCurve(self.monoid, self.inv, self.ret, self.length, self.names, self.basis, order)

    # -- derived structure ------------------------------------------------------

    @property
    def ordering(self) -> SharpMonoid | ValuationOrder:
        return self.order if self.order is not None else self.monoid

    @property
    def n_flags(self) -> int:
        return len(self.inv)

    @cached_property
    def vertices(self) -> tuple[int, ...]:
        return tuple(x for x in range(self.n_flags) if self.length[x].is_zero())

    @cached_property
    def vertex_index(self) -> dict[int, int]:
        return {x: k for k, x in enumerate(self.vertices)}

    @cached_property
    def edges(self) -> tuple[Edge, ...]:
        out = []
        for x in range(self.n_flags):
            y = self.inv[x]
            if self.length[x].is_zero() or y <= x:
                continue
            tv = self.vertex_index.get(self.ret[x]) if self.ret[x] is not None else None
            hv = self.vertex_index.get(self.ret[y]) if self.ret[y] is not None else None
            out.append(Edge(x, y, tv, hv, self.length[x]))
        return tuple(out)

    @cached_property
    def edge_of_flag(self) -> dict[int, int]:
        out = {}
        for k, e in enumerate(self.edges):
            out[e.tail_flag] = k
            out[e.head_flag] = k
        return out

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def rank(self) -> int:
        return self.monoid.ambient_rank

    @cached_property
    def _compact(self) -> bool:
        return all(r is not None for r in self.ret)

    def is_compact(self) -> bool:
        return self._compact

    def require_compact(self) -> None:
        if not self.is_compact():
            open_flags = [x for x, r in enumerate(self.ret) if r is None]
            raise PreconditionError(f"curve is not compact: retraction undefined on flags {open_flags}")

    @cached_property
    def genus(self) -> int:
        return betti(self)[1]

    def incident(self, v: int) -> list[tuple[int, int]]:
        """(edge, sign) pairs at vertex index v; sign +1 where the edge leaves v.

        A loop contributes both of its ends.
        """
        out = []
        for k, e in enumerate(self.edges):
            if e.tail == v:
                out.append((k, 1))
            if e.head == v:
                out.append((k, -1))
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, TropicalCurve):
            return NotImplemented
        return (
            self.monoid == other.monoid
            and self.inv == other.inv
            and self.ret == other.ret
            and self.length == other.length
            and self.names == other.names
            and self.basis == other.basis
            and self.order == other.order
        )

    def __hash__(self) -> int:
        return hash((self.inv, self.ret, self.length, self.names, self.basis))


def _memo(curve: TropicalCurve, key: str, fn):
    """Cache derived data on the (immutable) curve instance."""
    d = curve.__dict__
    if key not in d:
        d[key] = fn()
    return d[key]


# -- validation -------------------------------------------------------------------


def validate(curve: TropicalCurve) -> list[str]:
    """Human-readable list of violated curve axioms (empty when valid)."""
    out: list[str] = []
    n = curve.n_flags
    order = curve.ordering
    for x in range(n):
        y = curve.inv[x]
        if not 0 <= y < n:
            out.append(f"flag {x}: involution value {y} out of range")
            continue
        if curve.inv[y] != x:
            out.append(f"flag {x}: i(i(x)) = {curve.inv[y]} != x (involution)")
        if curve.length[y] != curve.length[x]:
            out.append(f"flag {x}: length differs from its partner {y}")
        r = curve.ret[x]
        if r is not None:
            if not 0 <= r < n:
                out.append(f"flag {x}: retraction value {r} out of range")
                continue
            if curve.ret[r] != r:
                out.append(f"flag {x}: retraction is not idempotent at {r}")
            if not curve.length[r].is_zero():
                out.append(f"flag {x}: retracts to {r}, which is not a vertex")
        fixed_r = r == x
        fixed_i = y == x
        zero = curve.length[x].is_zero()
        if not (fixed_r == fixed_i == zero):
            out.append(
                f"flag {x}: r(x)=x is {fixed_r}, i(x)=x is {fixed_i}, length zero is {zero}; vertex flags must satisfy all three"
            )
        if not zero:
            # lengths may be rational points of the cone (real lengths in rank one)
            ell = curve.length[x]
            if not order.is_positive(ell):
                out.append(f"flag {x}: length {ell} is not a nonzero element of the monoid")
    if curve.basis is not None and not out:
        try:
            check_basis(curve, curve.basis)
        except (PreconditionError, ValueError) as exc:
            out.append(f"declared basis: {exc}")
    return out


# -- homology -----------------------------------------------------------------------


def boundary(curve: TropicalCurve, chain: Sequence[int]) -> tuple[int, ...]:
    """Vertex boundary of an edge chain: each edge contributes head - tail."""
    if len(chain) != curve.n_edges:
        raise DimensionError(f"chain has {len(chain)} entries, curve has {curve.n_edges} edges")
    out = [0] * curve.n_vertices
    for c, e in zip(chain, curve.edges):
        if c == 0:
            continue
        if e.tail is None or e.head is None:
            raise PreconditionError("boundary of a chain through an open-ended edge")
        out[e.head] += c
        out[e.tail] -= c
    return tuple(out)


def components(curve: TropicalCurve) -> list[list[int]]:
    """Vertex indices of each connected component, ordered by least vertex."""
    return _memo(curve, "_components", lambda: _components(curve))


def _components(curve: TropicalCurve) -> list[list[int]]:
    parent = list(range(curve.n_vertices))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for e in curve.edges:
        if e.tail is not None and e.head is not None:
            a, b = find(e.tail), find(e.head)
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for v in range(curve.n_vertices):
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values())


def betti(curve: TropicalCurve) -> tuple[int, int]:
    curve.require_compact()
    b0 = len(components(curve))
    return b0, curve.n_edges - curve.n_vertices + b0


def spanning_forest(curve: TropicalCurve) -> tuple[frozenset[int], list[Chain]]:
    """BFS spanning forest from the lowest vertex of each component.

    Returns the tree edges and, per vertex, the tree path from its root as a
    chain (so ``boundary(path[v]) = v - root``).
    """
    curve.require_compact()
    return _memo(curve, "_forest", lambda: _spanning_forest(curve))


def _spanning_forest(curve: TropicalCurve) -> tuple[frozenset[int], list[Chain]]:
    ne = curve.n_edges
    adj: list[list[tuple[int, int, int]]] = [[] for _ in range(curve.n_vertices)]
    for k, e in enumerate(curve.edges):
        adj[e.tail].append((k, e.head, 1))
        adj[e.head].append((k, e.tail, -1))
    for lst in adj:
        lst.sort()
    paths: list[list[int] | None] = [None] * curve.n_vertices
    tree = set()
    for root in range(curve.n_vertices):
        if paths[root] is not None:
            continue
        paths[root] = [0] * ne
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for k, w, sgn in adj[v]:
                if paths[w] is None:
                    p = list(paths[v])
                    p[k] += sgn
                    paths[w] = p
                    tree.add(k)
                    queue.append(w)
    return frozenset(tree), [tuple(p) for p in paths]


def fundamental_cycles(curve: TropicalCurve) -> CycleBasis:
    return _memo(curve, "_fundamental", lambda: _fundamental_cycles(curve))


def _fundamental_cycles(curve: TropicalCurve) -> CycleBasis:
    tree, paths = spanning_forest(curve)
    cycles = []
    for k, e in enumerate(curve.edges):
        if k in tree:
            continue
        g = [a - b for a, b in zip(paths[e.tail], paths[e.head])]
        g[k] += 1
        cycles.append(tuple(g))
    return CycleBasis(tree, tuple(cycles))


def cycle_basis(curve: TropicalCurve) -> CycleBasis:
    """The declared basis if the curve carries one, else fundamental cycles."""
    fund = fundamental_cycles(curve)
    if curve.basis is None:
        return fund
    return CycleBasis(fund.spanning_tree, curve.basis)


def check_basis(curve: TropicalCurve, cycles: Sequence[Chain]) -> None:
    """Raise unless ``cycles`` is a Z-basis of H1(curve)."""
    fund = fundamental_cycles(curve)
    if len(cycles) != fund.genus:
        raise ValueError(f"expected {fund.genus} cycles, got {len(cycles)}")
    for g in cycles:
        if any(boundary(curve, g)):
            raise ValueError(f"chain {g} is not a cycle")
    # a cycle is determined by its non-tree entries, which are its
    # coordinates in the fundamental basis
    cotree = [k for k in range(curve.n_edges) if k not in fund.spanning_tree]
    m = [[g[k] for k in cotree] for g in cycles]
    if m and abs(det(m)) != 1:
        raise ValueError("cycles do not form a Z-basis of H1")


def cycle_coordinates(curve: TropicalCurve, basis: CycleBasis, gamma: Sequence[int]) -> tuple[int, ...]:
    """Integer coordinates of a cycle in ``basis``."""
    from .linalg import solve

    if any(boundary(curve, gamma)):
        raise ValueError(f"chain {tuple(gamma)} is not a cycle")
    g = basis.genus
    if g == 0:
        if any(gamma):
            raise ValueError("nonzero cycle on a curve of genus zero")
        return ()
    cols = list(zip(*basis.cycles))  # one row per edge
    x = solve(cols, list(gamma), g)
    if x is None or not x.is_integral():
        raise ValueError(f"{tuple(gamma)} is not an integral combination of the basis")
    return tuple(int(c) for c in x)


def cycle_length(curve: TropicalCurve, gamma: Sequence[int]) -> Vec:
    if len(gamma) != curve.n_edges:
        raise DimensionError(f"chain has {len(gamma)} entries, curve has {curve.n_edges} edges")
    return vsum((e.length * abs(c) for c, e in zip(gamma, curve.edges) if c), curve.rank)


def pairing(curve: TropicalCurve, a: Sequence[int], b: Sequence[int]) -> Vec:
    """Intersection pairing of two edge chains."""
    return vsum((e.length * (x * y) for x, y, e in zip(a, b, curve.edges) if x and y), curve.rank)


def edge_pairing(curve: TropicalCurve, k: int, gamma: Sequence[int]) -> Vec:
    """e_k . gamma, i.e. gamma's coefficient on e_k times the length of e_k."""
    return curve.edges[k].length * gamma[k]


def intersection_matrix(curve: TropicalCurve, basis: CycleBasis | None = None) -> tuple[tuple[Vec, ...], ...]:
    curve.require_compact()
    if basis is None:
        return _memo(curve, "_pairing", lambda: intersection_matrix(curve, cycle_basis(curve)))
    cs = basis.cycles
    return tuple(tuple(pairing(curve, a, b) for b in cs) for a in cs)


# -- subdivision ---------------------------------------------------------------------


@dataclass(frozen=True)
class CycleMap:
    """Carries edge chains of a curve to edge chains of a subdivision.

    ``edge_map[k]`` lists the (new edge, sign) pairs that old edge k became.
    """

    edge_map: tuple[tuple[tuple[int, int], ...], ...]
    n_target: int

    def __call__(self, chain: Sequence[int]) -> Chain:
        out = [0] * self.n_target
        for c, parts in zip(chain, self.edge_map, strict=True):
            for k, s in parts:
                out[k] += s * c
        return tuple(out)

    def then(self, other: "CycleMap") -> "CycleMap":
        em = []
        for parts in self.edge_map:
            acc: dict[int, int] = {}
            for k, s in parts:
                for k2, s2 in other.edge_map[k]:
                    acc[k2] = acc.get(k2, 0) + s * s2
            em.append(tuple(sorted((k, s) for k, s in acc.items() if s)))
        return CycleMap(tuple(em), other.n_target)

    @classmethod
    def identity(cls, n: int) -> "CycleMap":
        return cls(tuple(((k, 1),) for k in range(n)), n)


def subdivide(
    curve: TropicalCurve, edge: int, t, order: SharpMonoid | ValuationOrder | None = None
) -> tuple[TropicalCurve, dict[int, int], CycleMap]:
    """Basic subdivision of ``edge`` at distance ``t`` from its tail.

    The old flags keep their numbers; three flags are appended: the new vertex
    p and the two flags y1, y2 at p.  The tail flag x pairs with y1 (length
    t) and the head flag i(x) pairs with y2 (length l - t).  The second
    segment is therefore oriented head -> p, against the original edge.
    """
    order = order or curve.ordering
    e = curve.edges[edge]
    t = Vec(t)
    if len(t) != curve.rank:
        raise DimensionError(f"t must live in Z^{curve.rank}")
    rest = e.length - t
    if not (order.is_positive(t) and order.is_positive(rest)):
        raise PreconditionError(f"t = {t} is not strictly between 0 and {e.length}")
    n = curve.n_flags
    p, y1, y2 = n, n + 1, n + 2
    x, ix = e.tail_flag, e.head_flag
    inv = list(curve.inv) + [p, x, ix]
    inv[x], inv[ix] = y1, y2
    ret = list(curve.ret) + [p, p, p]
    length = list(curve.length) + [Vec.zero(curve.rank), t, rest]
    length[x], length[ix] = t, rest
    names = list(curve.names) + [_fresh_name(curve.names, f"p{edge}")]
    # a valuative order passed in metrizes the result, since the pieces may
    # leave the monoid itself
    new_order = order if isinstance(order, ValuationOrder) else curve.order
    new = TropicalCurve(curve.monoid, tuple(inv), tuple(ret), tuple(length), tuple(names), None, new_order)
    lookup = {f.tail_flag: k for k, f in enumerate(new.edges)}
    em = []
    for k, old in enumerate(curve.edges):
        if k == edge:
            em.append(((lookup[x], 1), (lookup[ix], -1)))
        else:
            em.append(((lookup[old.tail_flag], 1),))
    cmap = CycleMap(tuple(em), new.n_edges)
    if curve.is_compact():
        basis = cycle_basis(curve)
        new = TropicalCurve(
            new.monoid, new.inv, new.ret, new.length, new.names, tuple(cmap(g) for g in basis.cycles), new.order
        )
    flag_map = {f: f for f in range(n)}
    return new, flag_map, cmap


def _fresh_name(names: Sequence[str], base: str) -> str:
    if base not in names:
        return base
    i = 1
    while f"{base}_{i}" in names:
        i += 1
    return f"{base}_{i}"


# -- contraction ---------------------------------------------------------------------


@dataclass(frozen=True)
class Pushforward:
    """Restriction of edge chains to the edges surviving a contraction.

    Also records where each old vertex went and the lattice map used.
    """

    survivors: tuple[int, ...]  # old edge index for each new edge
    vertex_map: tuple[int, ...]  # new vertex index for each old vertex
    hom: tuple[tuple[Fraction, ...], ...]

    def __call__(self, chain: Sequence[int]) -> Chain:
        return tuple(chain[k] for k in self.survivors)

    def divisor(self, D: Sequence[int], n_target: int) -> tuple[int, ...]:
        out = [0] * n_target
        for v, d in enumerate(D):
            out[self.vertex_map[v]] += d
        return tuple(out)


def apply_hom(hom: Sequence[Sequence], v: Sequence) -> Vec:
    return mat_vec(hom, v)


def contract(
    curve: TropicalCurve,
    hom: Sequence[Sequence],
    target: SharpMonoid,
    order: ValuationOrder | None = None,
) -> tuple[TropicalCurve, Pushforward]:
    """Push lengths forward along ``hom`` and contract edges sent to zero.

    ``hom`` is an m x n integer matrix (m = target rank) acting on columns.
    """
    n, m = curve.rank, target.ambient_rank
    if len(hom) != m or any(len(row) != n for row in hom):
        raise DimensionError(f"hom must be a {m}x{n} matrix")
    for g in curve.monoid.generators:
        if not target.in_cone(apply_hom(hom, g)):
            raise PreconditionError(f"hom does not send generator {g} into the target monoid")
    parent = list(range(curve.n_vertices))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    survivors, new_lengths = [], []
    for k, e in enumerate(curve.edges):
        img = apply_hom(hom, e.length)
        if img.is_zero():
            if e.tail is None or e.head is None:
                raise PreconditionError(f"edge {k} has an open end and cannot be contracted")
            a, b = find(e.tail), find(e.head)
            if a != b:
                parent[max(a, b)] = min(a, b)
        else:
            survivors.append(k)
            new_lengths.append(img)
    reps = sorted({find(v) for v in range(curve.n_vertices)})
    idx = {r: i for i, r in enumerate(reps)}
    edges = []
    for k, ell in zip(survivors, new_lengths):
        e = curve.edges[k]
        a = idx[find(e.tail)] if e.tail is not None else None
        b = idx[find(e.head)] if e.head is not None else None
        edges.append((a, b, ell))
    names = [curve.names[r] for r in reps]
    new = TropicalCurve.from_graph(target, names, edges, order=order)
    vmap = tuple(idx[find(v)] for v in range(curve.n_vertices))
    push = Pushforward(tuple(survivors), vmap, tuple(tuple(Fraction(x) for x in row) for row in hom))
    if curve.basis is not None and curve.is_compact():
        image = tuple(push(g) for g in curve.basis)
        try:
            check_basis(new, image)
            new = new.with_basis(image)
        except ValueError:
            pass
    return new, push


def map_matrix(hom: Sequence[Sequence], A: Sequence[Sequence[Vec]]) -> tuple[tuple[Vec, ...], ...]:
    return tuple(tuple(apply_hom(hom, x) for x in row) for row in A)


def gram(curve: TropicalCurve, cycles: Sequence[Chain]) -> tuple[tuple[Vec, ...], ...]:
    return tuple(tuple(pairing(curve, a, b) for b in cycles) for a in cycles)


def contraction_compatible(curve: TropicalCurve, hom, target: SharpMonoid) -> bool:
    """hom(A_X) equals the pairing on the contracted curve of the pushed basis."""
    new, push = contract(curve, hom, target)
    cycles = cycle_basis(curve).cycles
    return map_matrix(hom, intersection_matrix(curve)) == gram(new, [push(g) for g in cycles])


def specialize(curve: TropicalCurve, weights: Sequence) -> tuple[tuple[Fraction, ...], ...]:
    """Real (rational) specialization of the intersection matrix along a functional."""
    w = Vec(weights)
    return tuple(tuple(w.dot(x) for x in row) for row in intersection_matrix(curve))
