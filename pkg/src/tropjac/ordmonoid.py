"""Sharp saturated monoids in Z^n and lexicographic (valuative) orders.

A :class:`SharpMonoid` is the saturation of the monoid generated by finitely
many lattice vectors, i.e. the integer points of the rational cone they span.
All order questions reduce to the cone's H-representation, which is computed
once, exactly, from the generators.

A :class:`ValuationOrder` is a total (pre)order on Z^n given by comparing
images under a weight matrix lexicographically.  Each row is one archimedean
level: row 1 is the most significant.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Sequence

from .errors import DimensionError, PreconditionError
from .linalg import Vec, floor_frac, nullspace, primitive, rank, vsum


def _vec(x, n: int) -> Vec:
    v = x if isinstance(x, Vec) else Vec(x)
    if len(v) != n:
        raise DimensionError(f"expected a vector of length {n}, got {len(v)}")
    return v


@dataclass(frozen=True)
class SharpMonoid:
    ambient_rank: int
    generators: tuple[Vec, ...]

    def __init__(self, ambient_rank: int, generators: Sequence[Sequence] = ()):
        if ambient_rank < 1:
            raise ValueError("ambient rank must be positive")
        gens = tuple(_vec(g, ambient_rank) for g in generators)
        for g in gens:
            if g.is_zero():
                raise ValueError("generators must be nonzero")
            if not g.is_integral():
                raise ValueError(f"generator {g} is not integral")
        if len(set(gens)) != len(gens):
            raise ValueError("generators must be pairwise distinct")
        object.__setattr__(self, "ambient_rank", ambient_rank)
        object.__setattr__(self, "generators", gens)
        if not self.is_sharp():
            raise ValueError("generators span a cone containing a line; the monoid is not sharp")

    @classmethod
    def free(cls, n: int) -> "SharpMonoid":
        """N^n with its standard generators."""
        return cls(n, [Vec.unit(n, i) for i in range(n)])

    @property
    def rank(self) -> int:
        return self.ambient_rank

    # -- H-representation ---------------------------------------------------

    @cached_property
    def equalities(self) -> tuple[Vec, ...]:
        """Primitive integer normals of the linear span's orthogonal complement."""
        return tuple(primitive(h) for h in nullspace(self.generators, self.ambient_rank))

    @cached_property
    def facets(self) -> tuple[Vec, ...]:
        """Inward primitive facet normals, modulo the equalities."""
        n = self.ambient_rank
        gens = self.generators
        k = rank(gens, n) if gens else 0
        if k == 0:
            return ()
        found: dict[Vec, None] = {}
        for subset in combinations(range(len(gens)), k - 1):
            rows = [gens[i] for i in subset] + list(self.equalities)
            if rank(rows, n) != n - 1:
                continue
            (f,) = nullspace(rows, n)
            signs = {(g.dot(f) > 0) - (g.dot(f) < 0) for g in gens}
            if -1 in signs and 1 in signs:
                continue
            if 1 not in signs:
                f = -f
            found[primitive(f)] = None
        return tuple(found)

    def is_sharp(self) -> bool:
        # the cone is pointed iff equalities and facet normals together have full rank
        if not self.generators:
            return True
        return rank(list(self.equalities) + list(self.facets), self.ambient_rank) == self.ambient_rank

    # -- membership and order -------------------------------------------------

    def in_cone(self, x) -> bool:
        """Membership in the rational cone Q_{>=0} . generators."""
        x = _vec(x, self.ambient_rank)
        if not self.generators:
            return x.is_zero()
        return all(h.dot(x) == 0 for h in self.equalities) and all(f.dot(x) >= 0 for f in self.facets)

    def contains(self, x) -> bool:
        x = _vec(x, self.ambient_rank)
        return x.is_integral() and self.in_cone(x)

    def leq(self, a, b) -> bool:
        # rational inputs are compared in Q.M, which agrees with M on lattice points
        return self.in_cone(_vec(b, self.ambient_rank) - _vec(a, self.ambient_rank))

    def is_positive(self, x) -> bool:
        x = _vec(x, self.ambient_rank)
        return not x.is_zero() and self.in_cone(x)

    def bounds(self, alpha, delta) -> tuple[int, int] | None:
        """Tightest integers m <= n with m.delta <= alpha <= n.delta, or None.

        ``alpha`` is bounded by ``delta`` exactly when alpha vanishes on every
        equality and on every facet normal that vanishes on delta; the
        witnesses are then read off from the remaining facets.
        """
        n = self.ambient_rank
        alpha, delta = _vec(alpha, n), _vec(delta, n)
        if not self.in_cone(delta):
            raise PreconditionError(f"{delta} is not in the monoid")
        if any(h.dot(alpha) != 0 for h in self.equalities):
            return None
        lo: Fraction | None = None
        hi: Fraction | None = None
        for f in self.facets:
            fd, fa = f.dot(delta), f.dot(alpha)
            if fd == 0:
                if fa != 0:
                    return None
                continue
            q = fa / fd
            lo = q if lo is None or q < lo else lo
            hi = q if hi is None or q > hi else hi
        if lo is None:
            return (0, 0) if alpha.is_zero() else None
        return floor_frac(lo), -floor_frac(-hi)

    def support_tests(self) -> list[tuple[tuple[Vec, ...], Vec]]:
        """(edge filter, test functional) pairs that characterise boundedness.

        A value alpha is bounded by a sum of lengths delta iff, for every pair
        (filter, phi) where all of delta's summands lie in the kernel of the
        filter functionals, phi(alpha) = 0.
        """
        tests = [((), h) for h in self.equalities]
        tests += [((f,), f) for f in self.facets]
        return tests


@dataclass(frozen=True)
class ValuationOrder:
    base: SharpMonoid
    weights: tuple[Vec, ...] = field()

    def __init__(self, base: SharpMonoid, weights: Sequence[Sequence]):
        n = base.ambient_rank
        rows = tuple(_vec(w, n) for w in weights)
        if not rows:
            raise ValueError("a valuation order needs at least one weight row")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "weights", rows)
        for g in base.generators:
            if self.sign(g) <= 0:
                raise ValueError(f"generator {g} is not lexicographically positive under the weights")

    @property
    def rank(self) -> int:
        return self.base.ambient_rank

    @property
    def levels(self) -> int:
        return len(self.weights)

    def image(self, x) -> tuple[Fraction, ...]:
        x = _vec(x, self.rank)
        return tuple(w.dot(x) for w in self.weights)

    def sign(self, x) -> int:
        for c in self.image(x):
            if c:
                return 1 if c > 0 else -1
        return 0

    def compare(self, a, b) -> int:
        return self.sign(_vec(a, self.rank) - _vec(b, self.rank))

    def lex_leq(self, a, b) -> bool:
        return self.compare(a, b) <= 0

    leq = lex_leq

    def contains(self, x) -> bool:
        return self.sign(x) >= 0

    in_cone = contains

    def is_positive(self, x) -> bool:
        return self.sign(x) > 0

    def arch_level(self, x) -> int:
        """1-based index of the first weight row not annihilating x (levels+1 if none)."""
        for j, c in enumerate(self.image(x), start=1):
            if c:
                return j
        return self.levels + 1

    def floor_div(self, alpha, delta) -> int | None:
        """Greatest k with k.delta <= alpha, or None when alpha is not bounded by delta."""
        alpha, delta = _vec(alpha, self.rank), _vec(delta, self.rank)
        if self.sign(delta) <= 0:
            raise PreconditionError(f"{delta} is not positive in the order")
        lev = self.arch_level(delta)
        if self.arch_level(alpha) < lev:
            return None
        w = self.weights[lev - 1]
        q = w.dot(alpha) / w.dot(delta)
        # lo satisfies k.delta <= alpha, hi violates it; both from the leading level
        lo, hi = floor_frac(q) - 1, floor_frac(q) + 1
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if self.sign(alpha - delta * mid) >= 0:
                lo = mid
            else:
                hi = mid
        return lo

    def bounds(self, alpha, delta) -> tuple[int, int] | None:
        alpha, delta = _vec(alpha, self.rank), _vec(delta, self.rank)
        s = self.sign(delta)
        if s < 0:
            raise PreconditionError(f"{delta} is negative in the order")
        if s == 0:
            return (0, 0) if self.sign(alpha) == 0 else None
        k = self.floor_div(alpha, delta)
        if k is None:
            return None
        return (k, k) if self.sign(alpha - delta * k) == 0 else (k, k + 1)

    def support_tests(self) -> list[tuple[tuple[Vec, ...], Vec]]:
        return [(self.weights[: j + 1], self.weights[j]) for j in range(self.levels)]


Order = SharpMonoid | ValuationOrder


def contains(M: SharpMonoid, x) -> bool:
    return M.contains(x)


def leq(M: Order, a, b) -> bool:
    return M.leq(a, b)


def bounds(M: Order, alpha, delta) -> tuple[int, int] | None:
    return M.bounds(alpha, delta)


def totalize(M: SharpMonoid) -> ValuationOrder:
    """Deterministic lexicographic refinement of M's partial order.

    The first row is the primitive sum of the facet normals, which is strictly
    positive on every nonzero element of a pointed cone; the remaining rows are
    standard basis vectors, skipping any that depend on earlier rows.
    """
    n = M.ambient_rank
    rows: list[Vec] = []
    if M.generators:
        u = primitive(vsum(M.facets, n))
        assert all(u.dot(g) > 0 for g in M.generators)
        rows.append(u)
    for i in range(n):
        e = Vec.unit(n, i)
        if rank(rows + [e], n) > len(rows):
            rows.append(e)
    return ValuationOrder(M, rows)


def lex_leq(V: ValuationOrder, a, b) -> bool:
    return V.lex_leq(a, b)


def floor_div(V: ValuationOrder, alpha, delta) -> int | None:
    return V.floor_div(alpha, delta)


def arch_level(V: ValuationOrder, x) -> int:
    return V.arch_level(x)
