"""Piecewise linear functions on tropical curves.

A PL function is stored as one value per vertex plus one integer slope per
edge, read along the edge's canonical orientation: on edge e from u to v,
alpha(v) = alpha(u) + slope(e) * length(e).  Flag-level slopes follow from
mu(tail flag) = slope and mu(head flag) = -slope.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import DimensionError, PreconditionError
from .linalg import Vec, mat_vec
from .tropcurve import Divisor, Pushforward, TropicalCurve, components, spanning_forest


@dataclass(frozen=True)
class PLFunction:
    curve: TropicalCurve
    values: tuple[Vec, ...]  # per vertex index
    slopes: tuple[int, ...]  # per edge index

    def __post_init__(self):
        vals = tuple(Vec(v) for v in self.values)
        if len(vals) != self.curve.n_vertices:
            raise DimensionError(f"need {self.curve.n_vertices} vertex values, got {len(vals)}")
        for v in vals:
            if len(v) != self.curve.rank:
                raise DimensionError(f"vertex value {v} does not live in Z^{self.curve.rank}")
        if len(self.slopes) != self.curve.n_edges:
            raise DimensionError(f"need {self.curve.n_edges} slopes, got {len(self.slopes)}")
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "slopes", tuple(int(s) for s in self.slopes))

    @classmethod
    def constant(cls, curve: TropicalCurve, value: Sequence | None = None) -> "PLFunction":
        v = Vec(value) if value is not None else Vec.zero(curve.rank)
        return cls(curve, (v,) * curve.n_vertices, (0,) * curve.n_edges)

    @classmethod
    def from_slopes(
        cls, curve: TropicalCurve, slopes: Sequence[int], base_values: Sequence[Sequence] | None = None
    ) -> "PLFunction":
        """Integrate slopes along a spanning forest.

        ``base_values`` gives the value at the root of each component (zero by
        default).  Raises PreconditionError if the slopes are not the slopes of
        any PL function, i.e. some cycle has nonzero total rise.
        """
        curve.require_compact()
        slopes = tuple(int(s) for s in slopes)
        if len(slopes) != curve.n_edges:
            raise DimensionError(f"need {curve.n_edges} slopes, got {len(slopes)}")
        _, paths = spanning_forest(curve)
        vals = []
        for path in paths:
            rise = Vec.zero(curve.rank)
            for c, s, e in zip(path, slopes, curve.edges):
                if c:
                    rise = rise + e.length * (c * s)
            vals.append(rise)
        for i, comp in enumerate(components(curve)):
            base = Vec(base_values[i]) if base_values is not None else Vec.zero(curve.rank)
            for v in comp:
                vals[v] = vals[v] + base
        f = cls(curve, tuple(vals), slopes)
        bad = f.violations()
        if bad:
            raise PreconditionError("slopes are not integrable: " + "; ".join(bad))
        return f

    # -- flag-level view --------------------------------------------------------

    def alpha(self, flag: int) -> Vec | None:
        """Value at a flag: its vertex's value (None on an open end)."""
        c = self.curve
        r = c.ret[flag]
        return self.values[c.vertex_index[r]] if r is not None else None

    def mu(self, flag: int) -> int:
        c = self.curve
        if c.length[flag].is_zero():
            return 0
        k = c.edge_of_flag[flag]
        return self.slopes[k] if c.edges[k].tail_flag == flag else -self.slopes[k]

    # -- invariants -------------------------------------------------------------

    def violations(self) -> list[str]:
        out = []
        for k, (e, s) in enumerate(zip(self.curve.edges, self.slopes)):
            if e.tail is None or e.head is None:
                continue
            if self.values[e.head] != self.values[e.tail] + e.length * s:
                out.append(
                    f"edge {k}: alpha(head) = {self.values[e.head]} but alpha(tail) + slope*length = "
                    f"{self.values[e.tail] + e.length * s}"
                )
        return out

    def __add__(self, other: "PLFunction") -> "PLFunction":
        _same_curve(self, other)
        return PLFunction(
            self.curve,
            tuple(a + b for a, b in zip(self.values, other.values)),
            tuple(a + b for a, b in zip(self.slopes, other.slopes)),
        )

    def __neg__(self) -> "PLFunction":
        return PLFunction(self.curve, tuple(-a for a in self.values), tuple(-s for s in self.slopes))

    def __sub__(self, other: "PLFunction") -> "PLFunction":
        return self + (-other)


def _same_curve(f: PLFunction, g: PLFunction) -> None:
    if f.curve is not g.curve and f.curve != g.curve:
        raise ValueError("PL functions live on different curves")


def slope_divisor(curve: TropicalCurve, slopes: Sequence[int]) -> Divisor:
    """Sum of outgoing slopes at each vertex."""
    curve.require_compact()
    out = [0] * curve.n_vertices
    for e, s in zip(curve.edges, slopes, strict=True):
        out[e.tail] += s
        out[e.head] -= s
    return Divisor(out)


def multidegree(f: PLFunction) -> Divisor:
    return slope_divisor(f.curve, f.slopes)


def is_linear(f: PLFunction) -> bool:
    f.curve.require_compact()
    bad = f.violations()
    if bad:
        raise PreconditionError("not a PL function: " + "; ".join(bad))
    return not any(multidegree(f).values)


def contract_plf(f: PLFunction, target: TropicalCurve, push: Pushforward) -> PLFunction:
    """Image of f on a contraction of its curve (see ``tropcurve.contract``)."""
    vals: list[Vec | None] = [None] * target.n_vertices
    for v, w in enumerate(push.vertex_map):
        img = mat_vec(push.hom, f.values[v])
        if vals[w] is None:
            vals[w] = img
        elif vals[w] != img:
            raise PreconditionError(f"values do not agree on the contracted region of vertex {w}")
    return PLFunction(target, tuple(vals), tuple(f.slopes[k] for k in push.survivors))
