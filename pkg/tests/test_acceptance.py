"""End-to-end acceptance checks with their tolerances and time limits.

Each test carries a ``criterion`` marker; the terminal summary prints one
PASS/FAIL line per criterion.
"""

import random
import time
from fractions import Fraction
from itertools import permutations, product

import pytest

from tropjac.errors import PreconditionError
from tropjac.generators import connected_multigraphs, random_bounded_hom, random_lex_curve, theta
from tropjac.linalg import Vec, det
from tropjac.monodromy import (
    MonodromyHom,
    bound_factor,
    coboundary,
    cycle_coboundary,
    is_bounded,
    normalize,
    trivialize,
)
from tropjac.ordmonoid import SharpMonoid
from tropjac.picard import jac_equal, quasistable_cells, verify_tiling
from tropjac.plfun import PLFunction, is_linear, slope_divisor
from tropjac.tropcurve import TropicalCurve, contract, contraction_compatible, cycle_basis, cycle_length, intersection_matrix


# -- 1 ---------------------------------------------------------------------------------


@pytest.mark.criterion(1, "genus-2 pairing matrix on the theta graph")
def test_theta_pairing_matrix(record_property):
    t0 = time.perf_counter()
    d1, d2, d3 = (Vec.unit(3, i) for i in range(3))
    assert intersection_matrix(theta()) == ((d1 + d2, -d2), (-d2, d2 + d3))
    A = [[x[0] for x in row] for row in intersection_matrix(theta([5, 3, 5]))]
    assert A == [[8, -3], [-3, 8]]
    assert det(A) == 55
    elapsed = time.perf_counter() - t0
    record_property("detail", f"det {det(A)}")
    assert elapsed < 1


# -- 2 ---------------------------------------------------------------------------------

TATE_DENOM = 20
TATE_POINTS = 1000


def _tate_curves():
    rng = random.Random(2)
    out = []
    for n in range(1, 7):
        lengths = [Fraction(rng.randint(1, 9), rng.randint(1, 4)) for _ in range(n)]
        C = TropicalCurve.from_graph(SharpMonoid.free(1), n, [(i, (i + 1) % n, (ell,)) for i, ell in enumerate(lengths)])
        out.append(C)
    return out


@pytest.mark.criterion(2, "Tate curve Jacobian is R/(delta Z) on a rational grid")
def test_tate_jacobian(record_property):
    t0 = time.perf_counter()
    q = TATE_DENOM
    curves = _tate_curves()
    per = [TATE_POINTS // len(curves) + (i < TATE_POINTS % len(curves)) for i in range(len(curves))]
    checked = pairs = 0
    rng = random.Random(3)
    for C, count in zip(curves, per):
        (g,) = cycle_basis(C).cycles
        delta = cycle_length(C, g)[0]
        assert intersection_matrix(C) == ((Vec([delta]),),)

        def hom(a):
            return MonodromyHom([(delta * Fraction(a, q),)])

        reps = [hom(r) for r in range(q)]
        # representatives in [0, delta) are pairwise inequivalent
        for i in range(q):
            for j in range(i + 1, q):
                assert not jac_equal(C, reps[i], reps[j])[0]
        # every grid point meets exactly one representative, the expected one
        grid = list(range(-2 * q, -2 * q + count))
        for a in grid:
            mu = hom(a)
            hits = [r for r in range(q) if jac_equal(C, mu, reps[r])[0]]
            assert hits == [a % q]
            ok, gam = jac_equal(C, mu, reps[a % q])
            assert gam == ((a - a % q) // q,)
            checked += 1
        # direct pairs: mu ~ mu' exactly when they differ by a multiple of delta
        for _ in range(300):
            a, b = rng.choice(grid), rng.choice(grid)
            assert jac_equal(C, hom(a), hom(b))[0] == ((a - b) % q == 0)
            pairs += 1
    elapsed = time.perf_counter() - t0
    record_property("detail", f"{checked} grid points, {pairs} pairs, {elapsed:.1f}s")
    assert checked == TATE_POINTS
    assert elapsed < 10


# -- 3 and 4 -----------------------------------------------------------------------------

SUITE_SIZE = 500


@pytest.fixture(scope="module")
def bounded_suite():
    """500 random bounded homomorphisms on random lex curves (<= 4 edges, rank <= 3)."""
    rng = random.Random(2024)
    out = []
    while len(out) < SUITE_SIZE:
        C = random_lex_curve(rng, max_edges=4, max_rank=3)
        mu = random_bounded_hom(rng, C)
        if mu is not None:
            out.append((C, mu))
    return out


@pytest.mark.criterion(3, "trivialization round trip on 500 random bounded homomorphisms")
def test_trivialization_round_trip(bounded_suite, record_property):
    t0 = time.perf_counter()
    failures = 0
    split = 0
    for C, mu in bounded_suite:
        tr = trivialize(C, C.order, mu)
        # the mapped basis identifies H1 of the subdivision with H1 of C
        if coboundary(tr.curve, tr.cochain) != mu:
            failures += 1
        for g in cycle_basis(C).cycles:
            if cycle_length(tr.curve, tr.cycle_map(g)) != cycle_length(C, g):
                failures += 1
        split += bool(tr.points)
    elapsed = time.perf_counter() - t0
    record_property("detail", f"{failures} failures, {split} needed subdivision, {elapsed:.1f}s")
    assert failures == 0
    assert elapsed < 60


@pytest.mark.criterion(4, "normalization bound r(g+1) on the same suite")
def test_normalization_bound(bounded_suite, record_property):
    failures = 0
    moved = 0
    for C, mu in bounded_suite:
        V = C.order
        zeta, gamma = normalize(C, V, mu)
        if zeta != mu - cycle_coboundary(C, gamma):
            failures += 1
        R = bound_factor(C)
        for j, g in enumerate(cycle_basis(C).cycles):
            ell = cycle_length(C, g)
            if not (V.leq(ell * -R, zeta[j]) and V.leq(zeta[j], ell * R)):
                failures += 1
        moved += any(gamma)
    record_property("detail", f"{failures} failures, {moved} nontrivial shifts")
    assert failures == 0


# -- 5 ---------------------------------------------------------------------------------


@pytest.mark.criterion(5, "quasistable cells tile the theta Jacobian (d=2, lengths 5,3,5)")
def test_quasistable_tiling(record_property):
    t0 = time.perf_counter()
    T = theta([5, 3, 5])
    cells = quasistable_cells(T, 2, 3, [(0, 2), (-2, 0)])
    rep = verify_tiling(cells, T, grid=100)
    elapsed = time.perf_counter() - t0
    record_property("detail", rep.summary() + f", {len(cells)} cells, {elapsed:.1f}s")
    assert rep.det == 55
    assert rep.area == 55
    assert rep.overlaps == []
    assert rep.samples == 10**4 and rep.uncovered == []
    assert elapsed < 120


# -- 6 ---------------------------------------------------------------------------------


def _canonical(nv, edges):
    best = None
    for perm in permutations(range(nv)):
        key = tuple(sorted(tuple(sorted((perm[a], perm[b]))) for a, b in edges))
        if best is None or key < best:
            best = key
    return nv, best


@pytest.mark.criterion(6, "no non-constant balanced PL function on small graphs")
def test_harmonic_functions_are_constant(record_property):
    graphs = {}
    for nv, edges in connected_multigraphs(4):
        key = _canonical(nv, edges)
        graphs.setdefault(key, (nv, edges))
    counterexamples = 0
    balanced_seen = 0
    for nv, edges in graphs.values():
        for lengths in ([1] * len(edges), [1, 2, 5, 11][: len(edges)]):
            C = TropicalCurve.from_graph(
                SharpMonoid.free(1), nv, [(a, b, (ell,)) for (a, b), ell in zip(edges, lengths)]
            )
            for slopes in product(range(-2, 3), repeat=len(edges)):
                if any(slope_divisor(C, slopes).values):
                    continue
                try:
                    f = PLFunction.from_slopes(C, slopes)
                except PreconditionError:
                    continue
                balanced_seen += 1
                if is_linear(f) and any(slopes):
                    counterexamples += 1
    record_property("detail", f"{len(graphs)} graphs, {balanced_seen} balanced functions, {counterexamples} counterexamples")
    assert counterexamples == 0


# -- 7 ---------------------------------------------------------------------------------


@pytest.mark.criterion(7, "contraction respects the intersection pairing")
def test_contraction_compatibility(record_property):
    rng = random.Random(7)
    failures = contracted = 0
    for _ in range(200):
        C = random_lex_curve(rng, max_edges=4, max_rank=3).with_order(None)
        if rng.random() < 0.5:
            # a coordinate projection kills whole levels, so edges contract
            keep = sorted(rng.sample(range(C.rank), rng.randint(1, C.rank)))
            hom = [[int(i == k) for i in range(C.rank)] for k in keep]
        else:
            hom = [[rng.choice((0, 0, 1, 2)) for _ in range(C.rank)] for _ in range(rng.randint(1, 3))]
        m = len(hom)
        target = SharpMonoid.free(m)
        if not contraction_compatible(C, hom, target):
            failures += 1
        new, _ = contract(C, hom, target)
        contracted += new.n_edges < C.n_edges
    record_property("detail", f"{failures} failures, {contracted} contracted some edge")
    assert failures == 0


# -- 8 ---------------------------------------------------------------------------------


@pytest.mark.criterion(8, "boundedness does not depend on the representative")
def test_boundedness_representative_independence(record_property):
    rng = random.Random(8)
    failures = 0
    counts = {True: 0, False: 0}
    for i in range(200):
        C = random_lex_curve(rng, max_edges=4, max_rank=3)
        if i % 2:
            C = C.with_order(None)  # the partial order of the free monoid
        mu = MonodromyHom([[rng.randint(-4, 4) for _ in range(C.rank)] for _ in range(C.genus)])
        c = [rng.randint(-6, 6) for _ in range(C.n_edges)]
        b1 = bool(is_bounded(C, mu))
        b2 = bool(is_bounded(C, mu + coboundary(C, c)))
        counts[b1] += 1
        failures += b1 != b2
    record_property("detail", f"{failures} failures, {counts[True]} bounded / {counts[False]} unbounded")
    assert failures == 0
