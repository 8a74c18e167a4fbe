"""Exact computations with tropical curves, their Jacobians and Picard groups."""

from .errors import DimensionError, PreconditionError, TropjacError, UnboundedError
from .linalg import Vec
from .monodromy import MonodromyHom, coboundary, is_bounded, normalize, trivialize
from .ordmonoid import SharpMonoid, ValuationOrder, totalize
from .picard import TroPicClass, class_equal, jac_equal, jac_solve, quasistable_cells, tau_contains, verify_tiling
from .plfun import PLFunction, is_linear, multidegree
from .tropcurve import TropicalCurve, betti, cycle_basis, intersection_matrix, subdivide, contract

__all__ = [
    "DimensionError", "PreconditionError", "TropjacError", "UnboundedError", "Vec",
    "MonodromyHom", "coboundary", "is_bounded", "normalize", "trivialize",
    "SharpMonoid", "ValuationOrder", "totalize",
    "TroPicClass", "class_equal", "jac_equal", "jac_solve", "quasistable_cells", "tau_contains", "verify_tiling",
    "PLFunction", "is_linear", "multidegree",
    "TropicalCurve", "betti", "cycle_basis", "intersection_matrix", "subdivide", "contract",
]
