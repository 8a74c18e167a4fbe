"""Monodromy homomorphisms H1 -> M^gp and bounded monodromy.

A homomorphism is stored by its values on the curve's cycle basis.  The
coboundary of an integer edge cochain c is the homomorphism
gamma -> sum_e c_e (e . gamma); the coboundary of a cycle gamma is its row of
the intersection pairing.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .errors import DimensionError, UnboundedError
from .linalg import Vec, floor_frac, solve, vsum
from .ordmonoid import SharpMonoid, ValuationOrder
from .tropcurve import (
    CycleMap,
    TropicalCurve,
    components,
    cycle_basis,
    cycle_coordinates,
    cycle_length,
    fundamental_cycles,
    intersection_matrix,
    subdivide,
    _memo,
)

Order = SharpMonoid | ValuationOrder


@dataclass(frozen=True)
class MonodromyHom:
    values: tuple[Vec, ...]

    def __init__(self, values: Sequence[Sequence]):
        object.__setattr__(self, "values", tuple(Vec(v) for v in values))

    @classmethod
    def zero(cls, curve: TropicalCurve) -> "MonodromyHom":
        return cls([Vec.zero(curve.rank)] * curve.genus)

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, j: int) -> Vec:
        return self.values[j]

    def __add__(self, other: "MonodromyHom") -> "MonodromyHom":
        _check_len(self, other)
        return MonodromyHom([a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other: "MonodromyHom") -> "MonodromyHom":
        _check_len(self, other)
        return MonodromyHom([a - b for a, b in zip(self.values, other.values)])

    def __neg__(self) -> "MonodromyHom":
        return MonodromyHom([-a for a in self.values])

    def evaluate(self, coords: Sequence[int]) -> Vec:
        """Value on the cycle with the given basis coordinates."""
        if len(coords) != len(self.values):
            raise DimensionError("coordinate vector does not match the basis")
        n = len(self.values[0]) if self.values else 0
        return vsum((v * c for v, c in zip(self.values, coords) if c), n)


def _check_len(a: MonodromyHom, b: MonodromyHom) -> None:
    if len(a) != len(b):
        raise DimensionError(f"homomorphisms on bases of different sizes ({len(a)} vs {len(b)})")


def _check_hom(curve: TropicalCurve, mu: MonodromyHom) -> None:
    if len(mu) != curve.genus:
        raise DimensionError(f"expected {curve.genus} values, got {len(mu)}")
    for v in mu:
        if len(v) != curve.rank:
            raise DimensionError(f"value {v} does not live in Z^{curve.rank}")


def coboundary(curve: TropicalCurve, c: Sequence[int]) -> MonodromyHom:
    curve.require_compact()
    if len(c) != curve.n_edges:
        raise DimensionError(f"cochain has {len(c)} entries, curve has {curve.n_edges} edges")
    out = []
    for g in cycle_basis(curve).cycles:
        out.append(vsum((e.length * (ce * ge) for ce, ge, e in zip(c, g, curve.edges) if ce and ge), curve.rank))
    return MonodromyHom(out)


def cycle_coboundary(curve: TropicalCurve, gamma: Sequence[int]) -> MonodromyHom:
    """Coboundary of the cycle with basis coordinates gamma: gamma . A."""
    A = intersection_matrix(curve)
    g = len(A)
    if len(gamma) != g:
        raise DimensionError(f"expected {g} coordinates, got {len(gamma)}")
    return MonodromyHom([vsum((A[i][j] * gamma[i] for i in range(g) if gamma[i]), curve.rank) for j in range(g)])


def pullback(curve: TropicalCurve, mu: MonodromyHom, chain: Sequence[int]) -> Vec:
    """mu evaluated on an arbitrary cycle given as an edge chain."""
    return mu.evaluate(cycle_coordinates(curve, cycle_basis(curve), chain))


# -- boundedness ---------------------------------------------------------------------


@dataclass
class BoundednessReport:
    bounded: bool
    witnesses: list[tuple[int, int] | None]
    certificate: dict | None = None

    def __bool__(self) -> bool:
        return self.bounded


def _subgraph_cycles(curve: TropicalCurve, keep: Sequence[int]) -> list[tuple[int, ...]]:
    """Fundamental cycles (as chains on the whole curve) of the subgraph on ``keep``."""
    keep = sorted(keep)
    if not keep:
        return []
    sub = TropicalCurve.from_graph(
        curve.monoid,
        curve.names,
        [(curve.edges[k].tail, curve.edges[k].head, curve.edges[k].length) for k in keep],
        order=curve.order,
    )
    out = []
    for g in fundamental_cycles(sub).cycles:
        full = [0] * curve.n_edges
        for k, c in zip(keep, g):
            full[k] = c
        out.append(tuple(full))
    return out


def _filtered_cycles(curve: TropicalCurve, filt) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Cycles (with basis coordinates) on the edges killed by every functional in filt."""
    cache = _memo(curve, "_filtered", dict)
    key = tuple(filt)
    if key not in cache:
        keep = [k for k, e in enumerate(curve.edges) if all(f.dot(e.length) == 0 for f in filt)]
        basis = cycle_basis(curve)
        cache[key] = [(gam, cycle_coordinates(curve, basis, gam)) for gam in _subgraph_cycles(curve, keep)]
    return cache[key]


def is_bounded(
    curve: TropicalCurve, mu: MonodromyHom, order: Order | None = None, basis_only: bool = False
) -> BoundednessReport:
    """Decide whether mu(gamma) is bounded by the length of gamma for all gamma.

    The witnesses are the (m, n) pairs for each basis cycle.  By default the
    decision covers all of H1: for each support test (filter, phi) of the
    order, phi must vanish on mu of every cycle living on the edges whose
    lengths the filter functionals annihilate.  ``basis_only`` checks the
    basis cycles alone, which is weaker for partial and lexicographic orders.
    """
    curve.require_compact()
    _check_hom(curve, mu)
    order = order or curve.ordering
    basis = cycle_basis(curve)
    lengths = _memo(curve, "_basis_lengths", lambda: [cycle_length(curve, gam) for gam in basis.cycles])
    witnesses = []
    cert = None
    for j, gam in enumerate(basis.cycles):
        w = order.bounds(mu[j], lengths[j])
        witnesses.append(w)
        if w is None and cert is None:
            cert = {"cycle": gam, "coords": tuple(int(i == j) for i in range(basis.genus)),
                    "value": mu[j], "length": lengths[j]}
    if cert is not None or basis_only:
        return BoundednessReport(cert is None, witnesses, cert)
    for filt, phi in order.support_tests():
        for gam, coords in _filtered_cycles(curve, filt):
            val = mu.evaluate(coords)
            if phi.dot(val) != 0:
                cert = {"cycle": gam, "coords": coords, "value": val,
                        "length": cycle_length(curve, gam), "functional": phi}
                return BoundednessReport(False, witnesses, cert)
    return BoundednessReport(True, witnesses, None)


def sampled_unbounded(
    curve: TropicalCurve, mu: MonodromyHom, order: Order | None = None, trials: int = 200,
    box: int = 3, rng: random.Random | None = None,
) -> tuple[int, ...] | None:
    """Random search for a cycle (basis coordinates) whose value is unbounded."""
    order = order or curve.ordering
    rng = rng or random.Random(0)
    basis = cycle_basis(curve)
    g = basis.genus
    for _ in range(trials):
        coords = tuple(rng.randint(-box, box) for _ in range(g))
        if not any(coords):
            continue
        chain = tuple(sum(c * cyc[k] for c, cyc in zip(coords, basis.cycles)) for k in range(curve.n_edges))
        if order.bounds(mu.evaluate(coords), cycle_length(curve, chain)) is None:
            return coords
    return None


def require_bounded(curve: TropicalCurve, mu: MonodromyHom, order: Order | None = None) -> BoundednessReport:
    rep = is_bounded(curve, mu, order)
    if not rep:
        raise UnboundedError("monodromy is not bounded", rep.certificate)
    return rep


# -- trivialization -----------------------------------------------------------------


@dataclass
class Trivialization:
    curve: TropicalCurve
    cochain: tuple[int, ...]
    cycle_map: CycleMap
    tree: frozenset[int] = field(default_factory=frozenset)
    points: list[tuple[int, Vec]] = field(default_factory=list)  # (original edge, position)

    def __iter__(self) -> Iterator:
        return iter((self.curve, self.cochain))


def level_tree(curve: TropicalCurve, V: ValuationOrder) -> frozenset[int]:
    """Spanning forest grown from the least significant edges upwards.

    Every non-tree edge is then at least as significant as each edge of its
    fundamental cycle.
    """
    parent = list(range(curve.n_vertices))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    order = sorted(range(curve.n_edges), key=lambda k: (-V.arch_level(curve.edges[k].length), k))
    tree = set()
    for k in order:
        e = curve.edges[k]
        a, b = find(e.tail), find(e.head)
        if a != b:
            parent[max(a, b)] = min(a, b)
            tree.add(k)
    return frozenset(tree)


def _tree_cycle(curve: TropicalCurve, tree: frozenset[int], k: int) -> tuple[int, ...]:
    adj: dict[int, list[tuple[int, int, int]]] = {}
    for t in tree:
        e = curve.edges[t]
        adj.setdefault(e.tail, []).append((e.head, t, 1))
        adj.setdefault(e.head, []).append((e.tail, t, -1))
    e = curve.edges[k]
    # walk the tree from head back to tail
    prev: dict[int, tuple[int, int, int] | None] = {e.head: None}
    stack = [e.head]
    while stack:
        v = stack.pop()
        for w, t, s in adj.get(v, []):
            if w not in prev:
                prev[w] = (v, t, s)
                stack.append(w)
    chain = [0] * curve.n_edges
    chain[k] = 1
    v = e.tail
    while prev[v] is not None:
        u, t, s = prev[v]
        # tree edge t goes u -> v when s = 1, and the cycle also runs u -> v
        chain[t] += s
        v = u
    return tuple(chain)


def trivialize(curve: TropicalCurve, V: ValuationOrder, mu: MonodromyHom) -> Trivialization:
    """Subdivide until mu is a coboundary; return the subdivision and the cochain.

    One subdivision point at most is placed on each edge: with a spanning tree
    grown from the least significant edges, every non-tree edge e dominates
    its fundamental cycle, so the value rho on that cycle is bounded by l(e).
    Writing rho = k l(e) + t with 0 <= t < l(e), the edge is split at t and
    carries k + 1 on the first piece and k on the second.
    """
    curve.require_compact()
    _check_hom(curve, mu)
    if curve.order != V:
        curve = curve.with_order(V)
    require_bounded(curve, mu, V)
    basis = cycle_basis(curve)
    tree = level_tree(curve, V)
    plan: list[tuple[int, int, Vec]] = []  # edge, k, t
    for k, e in enumerate(curve.edges):
        if k in tree:
            continue
        gam = _tree_cycle(curve, tree, k)
        rho = mu.evaluate(cycle_coordinates(curve, basis, gam))
        q = V.floor_div(rho, e.length)
        if q is None:
            raise UnboundedError("monodromy is not bounded on a fundamental cycle",
                                 {"cycle": gam, "value": rho, "length": cycle_length(curve, gam)})
        plan.append((k, q, rho - e.length * q))
    Y, cmap = curve, CycleMap.identity(curve.n_edges)
    values: dict[int, int] = {}  # keyed by original edge for unsplit edges
    points = []
    for k, q, t in plan:
        if t.is_zero():
            values[k] = q
            continue
        cur = cmap.edge_map[k][0][0]
        Y, _, step = subdivide(Y, cur, t, V)
        cmap = cmap.then(step)
        points.append((k, t))
        values[k] = q
    c = [0] * Y.n_edges
    split = {k for k, _ in points}
    for k, q in values.items():
        parts = cmap.edge_map[k]
        if k in split:
            (a, sa), (b, sb) = parts
            # first piece points away from the tail, second is reversed
            c[a] = (q + 1) * sa
            c[b] = q * sb
        else:
            (a, sa), = parts
            c[a] = q * sa
    if coboundary(Y, c) != mu:
        raise AssertionError("trivialization failed to reproduce the monodromy")
    return Trivialization(Y, tuple(c), cmap, tree, points)


# -- normalization ------------------------------------------------------------------


def normalize(curve: TropicalCurve, V: ValuationOrder, mu: MonodromyHom) -> tuple[MonodromyHom, tuple[int, ...]]:
    """A representative zeta = mu - d(gamma) with |zeta_j| <= r(g+1) l(gamma_j).

    Levels are processed from the most significant down.  At level j only the
    basis cycles whose length sits at level j are moved; their level-j
    pairing block is solved rationally against mu and the solution's integer
    part is subtracted, leaving a fractional combination of pairing rows.
    Moving these cycles never changes levels above j, so earlier levels stay
    put.
    """
    curve.require_compact()
    _check_hom(curve, mu)
    if curve.order != V:
        curve = curve.with_order(V)
    require_bounded(curve, mu, V)
    basis = cycle_basis(curve)
    g = basis.genus
    A = intersection_matrix(curve, basis)
    lengths = [cycle_length(curve, gam) for gam in basis.cycles]
    levels = [V.arch_level(ell) for ell in lengths]
    gamma = [0] * g
    zeta = mu
    for j in range(1, V.levels + 1):
        idx = [i for i in range(g) if levels[i] == j]
        if not idx:
            continue
        w = V.weights[j - 1]
        block = [[w.dot(A[i][m]) for i in idx] for m in idx]  # rows: equations per m
        rhs = [w.dot(zeta[m]) for m in idx]
        a = solve(block, rhs, len(idx))
        if a is None:
            raise UnboundedError("level block is inconsistent with the monodromy", {"level": j})
        step = [0] * g
        for i, ai in zip(idx, a):
            step[i] = floor_frac(ai)
        if any(step):
            zeta = zeta - cycle_coboundary(curve, step)
            gamma = [x + y for x, y in zip(gamma, step)]
    R = curve.rank * (g + 1)
    for j in range(g):
        if not (V.leq(lengths[j] * -R, zeta[j]) and V.leq(zeta[j], lengths[j] * R)):
            raise AssertionError(f"normalized value {zeta[j]} exceeds {R} times the cycle length {lengths[j]}")
    return zeta, tuple(gamma)


def bound_factor(curve: TropicalCurve) -> int:
    """r(g+1), the multiple of each cycle length that normalize stays within."""
    return curve.rank * (curve.genus + 1)


def is_connected(curve: TropicalCurve) -> bool:
    return len(components(curve)) == 1
