"""Command-line front end.

Exit status: 0 on success, 2 when a computation's precondition fails (the
certificate is printed), 1 on malformed input.  Set TROPJAC_LOG to a logging
level name (e.g. DEBUG) for progress messages on stderr.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import serialize as ser
from .errors import DimensionError, PreconditionError, UnboundedError
from .export import cells_csv, cells_svg
from .generators import theta
from .linalg import Vec, det
from .monodromy import is_bounded, normalize, require_bounded, trivialize
from .ordmonoid import ValuationOrder, totalize
from .picard import class_equal, jac_equal, quasistable_cells, tau_contains, translation_classes, verify_tiling
from .tropcurve import TropicalCurve, betti, cycle_basis, intersection_matrix

log = logging.getLogger("tropjac")


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _fmt(x) -> str:
    return str(ser.encode_rational(x))


def _fmt_vec(v) -> str:
    return "(" + ", ".join(_fmt(a) for a in v) + ")"


def _read(path: str, kind: str) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc
    try:
        return ser.loads(text, kind)
    except ser.SchemaError as exc:
        raise InputError("\n".join(f"{path}{e}" for e in exc.errors)) from exc


def _parse_rationals(text: str) -> list[Fraction]:
    try:
        return [Fraction(t.strip()) for t in text.split(",") if t.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"cannot parse rational list {text!r}") from exc


def _parse_box(text: str) -> list[tuple[int, int]]:
    out = []
    for part in text.split(","):
        try:
            lo, hi = part.split(":") if ":" in part else (part, part)
            out.append((int(lo), int(hi)))
        except ValueError as exc:
            raise InputError(f"cannot parse box entry {part!r}; use lo:hi") from exc
    return out


def _load_curve(args) -> TropicalCurve:
    if getattr(args, "curve", None):
        try:
            return ser.curve_from_doc(_read(args.curve, "curve"))
        except (ValueError, DimensionError) as exc:
            if isinstance(exc, InputError):
                raise
            raise InputError(f"{args.curve}: {exc}") from exc
    lengths = getattr(args, "lengths", None)
    if lengths is None:
        raise InputError("give a curve file or --lengths for the built-in theta graph")
    vals = _parse_rationals(lengths)
    if len(vals) != 3:
        raise InputError("--lengths needs three values for the theta graph")
    try:
        return theta(vals)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _load_hom(path: str, curve: TropicalCurve):
    try:
        mu = ser.hom_from_doc(_read(path, "hom"))
    except ValueError as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"{path}: {exc}") from exc
    if len(mu) != curve.genus or any(len(v) != curve.rank for v in mu):
        raise InputError(f"{path}: expected {curve.genus} values in Z^{curve.rank}")
    return mu


def _order(curve: TropicalCurve) -> ValuationOrder:
    # the input is checked against the curve's own order first; a total
    # refinement then drives the level-by-level algorithms
    return curve.order if curve.order is not None else totalize(curve.monoid)


def _print_matrix(A) -> None:
    for row in A:
        print("  [" + ", ".join(_fmt_vec(x) for x in row) + "]")


# -- commands --------------------------------------------------------------------------


def cmd_info(args) -> int:
    curve = _load_curve(args)
    print(f"vertices: {curve.n_vertices}, edges: {curve.n_edges}, rank: {curve.rank}")
    if not curve.is_compact():
        print("compact: no")
        return 0
    b0, b1 = betti(curve)
    print(f"b0={b0} b1={b1}")
    basis = cycle_basis(curve)
    for j, g in enumerate(basis.cycles):
        terms = " ".join(f"{'+' if c > 0 else '-'}{abs(c) if abs(c) != 1 else ''}e{k + 1}" for k, c in enumerate(g) if c)
        print(f"cycle {j + 1}: {terms.lstrip('+')}")
    print("pairing:")
    _print_matrix(intersection_matrix(curve))
    return 0


def cmd_pairing(args) -> int:
    curve = _load_curve(args)
    A = intersection_matrix(curve)
    print("pairing:")
    _print_matrix(A)
    if curve.rank == 1 and A:
        print(f"det: {_fmt(det([[x[0] for x in row] for row in A]))}")
    return 0


def cmd_bounded(args) -> int:
    curve = _load_curve(args)
    mu = _load_hom(args.hom, curve)
    rep = is_bounded(curve, mu, basis_only=args.basis_only)
    for j, w in enumerate(rep.witnesses):
        print(f"cycle {j + 1}: " + (f"({w[0]},{w[1]}) witnesses" if w else "unbounded"))
    if not rep:
        _certificate(rep.certificate)
        return 2
    print("bounded")
    return 0


def _certificate(cert) -> None:
    print("certificate:")
    for k, v in (cert or {}).items():
        if isinstance(v, Vec):
            v = _fmt_vec(v)
        print(f"  {k}: {v}")


def cmd_trivialize(args) -> int:
    curve = _load_curve(args)
    mu = _load_hom(args.hom, curve)
    require_bounded(curve, mu)
    res = trivialize(curve, _order(curve), mu)
    if not res.points:
        print("no subdivision needed")
    for k, t in res.points:
        print(f"subdivide e{k + 1} at {_fmt_vec(t)}")
    print("cochain: " + " ".join(str(c) for c in res.cochain))
    if args.output:
        Path(args.output).write_text(ser.dumps(ser.curve_to_doc(res.curve)))
    return 0


def cmd_normalize(args) -> int:
    curve = _load_curve(args)
    mu = _load_hom(args.hom, curve)
    require_bounded(curve, mu)
    zeta, gamma = normalize(curve, _order(curve), mu)
    print("gamma: " + " ".join(str(c) for c in gamma))
    for j, z in enumerate(zeta):
        print(f"zeta {j + 1}: {_fmt_vec(z)}")
    if args.output:
        Path(args.output).write_text(ser.dumps(ser.hom_to_doc(zeta)))
    return 0


def cmd_jac_equal(args) -> int:
    curve = _load_curve(args)
    mu1, mu2 = _load_hom(args.hom1, curve), _load_hom(args.hom2, curve)
    eq, gamma = jac_equal(curve, mu1, mu2)
    print("equal" if eq else "not equal")
    if eq:
        print("gamma: " + " ".join(str(c) for c in gamma))
    return 0


def cmd_class_equal(args) -> int:
    curve = _load_curve(args)
    try:
        c1 = ser.class_from_doc(_read(args.class1, "class"), curve)
        c2 = ser.class_from_doc(_read(args.class2, "class"), curve)
    except ser.SchemaError as exc:
        raise InputError(str(exc)) from exc
    eq, gamma = class_equal(c1, c2)
    print("equal" if eq else "not equal")
    if eq:
        print("gamma: " + " ".join(str(c) for c in gamma))
    return 0


def _cells(args, curve):
    box = _parse_box(args.box) if args.box else [(-args.d, args.d)] * curve.n_vertices
    if len(box) != curve.n_vertices:
        raise InputError(f"--box needs {curve.n_vertices} ranges")
    log.info("enumerating cells with slope bound %d", args.slope_bound)
    return quasistable_cells(curve, args.d, args.slope_bound, box, base=args.base)


def cmd_cells(args) -> int:
    curve = _load_curve(args)
    cells = _cells(args, curve)
    log.info("%d cells", len(cells))
    text = cells_csv(cells, curve)
    if args.svg:
        # one translate per class, so the picture shows the fundamental domain
        Path(args.svg).write_text(cells_svg(translation_classes(curve, cells), curve))
    if args.csv:
        Path(args.csv).write_text(text)
        print(f"{len(cells)} cells")
    else:
        sys.stdout.write(text)
    return 0


def cmd_tiling(args) -> int:
    curve = _load_curve(args)
    cells = _cells(args, curve)
    rep = verify_tiling(cells, curve, grid=args.grid)
    print(rep.summary())
    for i, j, lam in rep.overlaps[:10]:
        print(f"overlap: class {i} with class {j} shifted by {lam}")
    for x in rep.uncovered[:10]:
        print("uncovered: " + _fmt_vec(x))
    if args.svg:
        Path(args.svg).write_text(cells_svg(rep.representatives, curve))
    return 0 if rep.ok else 2


def cmd_tau(args) -> int:
    curve = _load_curve(args)
    u, v = _parse_rationals(args.u), _parse_rationals(args.v)
    if len(u) != curve.rank or len(v) != curve.genus:
        raise InputError(f"--u needs {curve.rank} entries and --v needs {curve.genus}")
    print("in tau" if tau_contains(curve, u, v) else "not in tau")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tropjac", description="Tropical Jacobians and Picard groups of tropical curves.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def curve_cmd(name, fn, help, optional_curve=False):
        sp = sub.add_parser(name, help=help)
        if optional_curve:
            sp.add_argument("curve", nargs="?", help="curve JSON (default: built-in theta graph)")
            sp.add_argument("--lengths", help="theta graph edge lengths, e.g. 5,3,5")
        else:
            sp.add_argument("curve", help="curve JSON")
        sp.set_defaults(fn=fn)
        return sp

    curve_cmd("info", cmd_info, "Betti numbers, cycle basis and pairing")
    curve_cmd("pairing", cmd_pairing, "intersection matrix", optional_curve=True)
    sp = curve_cmd("bounded", cmd_bounded, "bounded monodromy test")
    sp.add_argument("hom")
    sp.add_argument("--basis-only", action="store_true", help="test basis cycles only")
    sp = curve_cmd("trivialize", cmd_trivialize, "subdivide until the monodromy is a coboundary")
    sp.add_argument("hom")
    sp.add_argument("-o", "--output", help="write the subdivided curve here")
    sp = curve_cmd("normalize", cmd_normalize, "bounded representative of a Jacobian point")
    sp.add_argument("hom")
    sp.add_argument("-o", "--output", help="write the normalized homomorphism here")
    sp = curve_cmd("jac-equal", cmd_jac_equal, "equality in the tropical Jacobian")
    sp.add_argument("hom1")
    sp.add_argument("hom2")
    sp = curve_cmd("class-equal", cmd_class_equal, "equality in the tropical Picard group")
    sp.add_argument("class1")
    sp.add_argument("class2")
    for name, fn in (("cells", cmd_cells), ("tiling", cmd_tiling)):
        sp = curve_cmd(name, fn, "quasistable cells" if name == "cells" else "verify the cell tiling",
                       optional_curve=True)
        sp.add_argument("--d", type=int, default=0, help="degree")
        sp.add_argument("--slope-bound", type=int, default=3)
        sp.add_argument("--box", help="per-vertex divisor ranges lo:hi, comma separated")
        sp.add_argument("--base", type=int, default=None, help="base vertex index")
        sp.add_argument("--svg", help="write an SVG picture (genus 2)")
        if name == "cells":
            sp.add_argument("--csv", help="write the cell table here")
        else:
            sp.add_argument("--grid", type=int, default=100, help="samples per axis")
    sp = curve_cmd("tau", cmd_tau, "membership in the prorepresenting cone")
    sp.add_argument("--u", required=True, help="functional on lengths, comma separated")
    sp.add_argument("--v", required=True, help="functional on the cycle basis")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    level = os.environ.get("TROPJAC_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), format="%(levelname)s %(message)s")
    args = build_parser().parse_args(argv)
    if args.command in ("cells", "tiling") and args.box is None and args.curve is None and args.lengths:
        # the theta graph's default box follows the genus-two example
        args.box = f"0:{args.d},-{args.d}:0"
    try:
        return args.fn(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except UnboundedError as exc:
        print(f"precondition failed: {exc}")
        _certificate(exc.certificate)
        return 2
    except PreconditionError as exc:
        print(f"precondition failed: {exc}")
        return 2
    except (ValueError, DimensionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
