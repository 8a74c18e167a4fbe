"""Standard curves and random instances used by tests, scripts and the CLI."""

from __future__ import annotations

import random
from typing import Sequence

from .linalg import Vec
from .ordmonoid import SharpMonoid, ValuationOrder
from .tropcurve import TropicalCurve

THETA_BASIS = ((1, -1, 0), (0, 1, -1))


def theta(lengths: Sequence[int] | None = None) -> TropicalCurve:
    """Two vertices joined by three parallel edges v0 -> v1.

    With no lengths the curve is metrized by N^3 with symbolic lengths
    e1, e2, e3; otherwise by N with the given integer lengths.  The basis is
    (e1 - e2, e2 - e3).
    """
    if lengths is None:
        M = SharpMonoid.free(3)
        ells = [Vec.unit(3, i) for i in range(3)]
    else:
        M = SharpMonoid.free(1)
        ells = [Vec([a]) for a in lengths]
    return TropicalCurve.from_graph(M, 2, [(0, 1, ell) for ell in ells], basis=THETA_BASIS)


def ncycle(lengths: Sequence[int] | int, symbolic: bool = False) -> TropicalCurve:
    """Circle of n vertices v_i -> v_{i+1}.

    ``lengths`` is a list of positive integers (metrized by N), or an integer
    n together with ``symbolic=True`` for lengths e_1..e_n in N^n.
    """
    if symbolic:
        n = int(lengths)
        M = SharpMonoid.free(n)
        ells = [Vec.unit(n, i) for i in range(n)]
    else:
        n = len(lengths)
        M = SharpMonoid.free(1)
        ells = [Vec([a]) for a in lengths]
    return TropicalCurve.from_graph(M, n, [(i, (i + 1) % n, ells[i]) for i in range(n)])


def single_vertex(rank: int = 1) -> TropicalCurve:
    return TropicalCurve.from_graph(SharpMonoid.free(rank), 1, [])


def connected_multigraphs(max_edges: int, max_vertices: int | None = None):
    """All connected loop-and-multi-edge graphs with 1..max_edges edges.

    Yields (n_vertices, edge list).  Graphs are enumerated as sorted edge
    multisets over a fixed vertex labelling, so isomorphic copies repeat;
    that is harmless for exhaustive checks.
    """
    from itertools import combinations_with_replacement

    for ne in range(0, max_edges + 1):
        top = ne + 1 if max_vertices is None else min(ne + 1, max_vertices)
        for nv in range(1, top + 1):
            pairs = [(a, b) for a in range(nv) for b in range(a, nv)]
            for es in combinations_with_replacement(pairs, ne):
                if _connected(nv, es):
                    yield nv, list(es)


def _connected(nv: int, edges) -> bool:
    seen = {0}
    frontier = [0]
    while frontier:
        v = frontier.pop()
        for a, b in edges:
            for x, y in ((a, b), (b, a)):
                if x == v and y not in seen:
                    seen.add(y)
                    frontier.append(y)
    return len(seen) == nv


def random_graph(rng: random.Random, max_edges: int, min_genus: int = 1):
    """Random connected multigraph with at most ``max_edges`` edges and genus >= min_genus."""
    while True:
        ne = rng.randint(1, max_edges)
        nv = rng.randint(1, ne)
        edges = []
        for v in range(1, nv):
            edges.append((rng.randrange(v), v))
        while len(edges) < ne:
            edges.append((rng.randrange(nv), rng.randrange(nv)))
        if len(edges) - nv + 1 < min_genus:
            continue
        rng.shuffle(edges)
        edges = [(b, a) if rng.random() < 0.5 else (a, b) for a, b in edges]
        return nv, edges


def random_lex_curve(rng: random.Random, max_edges: int = 4, max_rank: int = 3, min_genus: int = 1):
    """Random connected curve metrized by N^r with the standard lex order.

    Lengths are random nonzero vectors of N^r with entries in 0..3, so edges
    sit at different archimedean levels.
    """
    r = rng.randint(1, max_rank)
    M = SharpMonoid.free(r)
    V = ValuationOrder(M, [Vec.unit(r, i) for i in range(r)])
    nv, edges = random_graph(rng, max_edges, min_genus)
    out = []
    for a, b in edges:
        while True:
            ell = [rng.randint(0, 3) for _ in range(r)]
            if any(ell):
                break
        out.append((a, b, ell))
    return TropicalCurve.from_graph(M, nv, out, order=V)


def random_bounded_hom(rng: random.Random, curve: TropicalCurve, order=None, box: int = 6, tries: int = 200):
    """Random bounded monodromy: a small bounded part plus a random coboundary.

    Small values are drawn by rejection, so the result follows the order's
    notion of boundedness rather than a hand-made recipe.  Returns None if no
    bounded draw was found.
    """
    from .monodromy import MonodromyHom, coboundary, is_bounded

    order = order or curve.ordering
    g, r = curve.genus, curve.rank
    for _ in range(tries):
        mu = MonodromyHom([[rng.randint(-box, box) for _ in range(r)] for _ in range(g)])
        if is_bounded(curve, mu, order):
            c = [rng.randint(-4, 4) for _ in range(curve.n_edges)]
            return mu + coboundary(curve, c)
    return None
