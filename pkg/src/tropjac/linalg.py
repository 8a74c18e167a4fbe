"""Exact rational vectors and small dense linear algebra over Q.

Everything here works on :class:`fractions.Fraction` (ints are promoted on
entry).  Matrices are plain tuples of row tuples; sizes are desk scale, so
the routines favour clarity over asymptotics.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Sequence

Matrix = tuple  # tuple[tuple[Fraction, ...], ...]


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


class Vec(tuple):
    """Immutable vector of Fractions with elementwise arithmetic.

    ``+`` and ``-`` are vector operations (not tuple concatenation); scalar
    multiplication accepts ints and Fractions on either side.
    """

    __slots__ = ()

    def __new__(cls, coords: Iterable = ()):
        return super().__new__(cls, (as_fraction(c) for c in coords))

    @classmethod
    def zero(cls, n: int) -> "Vec":
        return cls((0,) * n)

    @classmethod
    def unit(cls, n: int, i: int) -> "Vec":
        return cls(1 if j == i else 0 for j in range(n))

    def _check(self, other) -> None:
        if len(other) != len(self):
            raise ValueError(f"dimension mismatch: {len(self)} vs {len(other)}")

    def __add__(self, other):
        self._check(other)
        return Vec(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        self._check(other)
        return Vec(a - b for a, b in zip(self, other))

    def __neg__(self):
        return Vec(-a for a in self)

    def __mul__(self, k):
        if isinstance(k, (tuple, list)):
            return NotImplemented
        k = as_fraction(k)
        return Vec(k * a for a in self)

    __rmul__ = __mul__

    def dot(self, other) -> Fraction:
        self._check(other)
        return sum((a * as_fraction(b) for a, b in zip(self, other)), Fraction(0))

    def is_zero(self) -> bool:
        return all(a == 0 for a in self)

    def is_integral(self) -> bool:
        return all(a.denominator == 1 for a in self)

    def __repr__(self) -> str:
        return "Vec(" + ", ".join(_fmt(a) for a in self) + ")"


def _fmt(a: Fraction) -> str:
    return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"


def vsum(vectors: Iterable[Vec], n: int) -> Vec:
    acc = [Fraction(0)] * n
    for v in vectors:
        if len(v) != n:
            raise ValueError(f"dimension mismatch: expected {n}, got {len(v)}")
        for i, a in enumerate(v):
            acc[i] += a
    return Vec(acc)


def matrix(rows: Iterable[Iterable]) -> Matrix:
    return tuple(tuple(as_fraction(x) for x in row) for row in rows)


def transpose(m: Sequence[Sequence], ncols: int | None = None) -> Matrix:
    if not m:
        return tuple(() for _ in range(ncols or 0))
    return tuple(zip(*m))


def mat_vec(m: Sequence[Sequence], v: Sequence) -> Vec:
    return Vec(sum((as_fraction(a) * as_fraction(b) for a, b in zip(row, v)), Fraction(0)) for row in m)


def rref(rows: Sequence[Sequence], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    a = [[as_fraction(x) for x in row] for row in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def rank(rows: Sequence[Sequence], ncols: int) -> int:
    return len(rref(rows, ncols)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[Vec]:
    """Basis of {x : rows . x = 0}, one vector per free column."""
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(red, pivots):
            x[p] = -row[f]
        basis.append(Vec(x))
    return basis


def solve(rows: Sequence[Sequence], rhs: Sequence, ncols: int) -> Vec | None:
    """One rational solution of rows . x = rhs (free variables set to 0), or None."""
    aug = [list(row) + [rhs[i]] for i, row in enumerate(rows)]
    red, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(red, pivots):
        x[p] = row[ncols]
    return Vec(x)


def det(m: Sequence[Sequence]) -> Fraction:
    n = len(m)
    a = [[as_fraction(x) for x in row] for row in m]
    sign = 1
    result = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            sign = -sign
        result *= a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] / a[c][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return sign * result


def inverse(m: Sequence[Sequence]) -> Matrix:
    n = len(m)
    aug = [list(m[i]) + [1 if j == i else 0 for j in range(n)] for i in range(n)]
    red, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("matrix is singular")
    return tuple(tuple(row[n:]) for row in red)


def primitive(v: Sequence) -> Vec:
    """Smallest integer vector on the ray of v (v itself if zero)."""
    v = Vec(v)
    if v.is_zero():
        return v
    den = reduce(lambda a, b: a * b // gcd(a, b), (x.denominator for x in v), 1)
    ints = [int(x * den) for x in v]
    g = reduce(gcd, (abs(x) for x in ints if x), 0)
    return Vec(x // g for x in ints)


def floor_frac(x: Fraction) -> int:
    return x.numerator // x.denominator


def ceil_frac(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)
