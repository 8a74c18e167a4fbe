"""Tate curves: compare jac_equal with the quotient R / (delta Z) on a grid."""

import argparse
import random
from dataclasses import dataclass
from fractions import Fraction

from tropjac.linalg import Vec
from tropjac.monodromy import MonodromyHom
from tropjac.ordmonoid import SharpMonoid
from tropjac.picard import jac_equal
from tropjac.tropcurve import TropicalCurve, cycle_basis, cycle_length


@dataclass
class TateConfig:
    max_n: int = 6
    denom: int = 12
    span: int = 3  # grid covers [-span*delta, span*delta)
    seed: int = 0


def run(cfg: TateConfig):
    rng = random.Random(cfg.seed)
    rows = []
    for n in range(1, cfg.max_n + 1):
        lengths = [Fraction(rng.randint(1, 9), rng.randint(1, 4)) for _ in range(n)]
        C = TropicalCurve.from_graph(SharpMonoid.free(1), n, [(i, (i + 1) % n, (x,)) for i, x in enumerate(lengths)])
        (g,) = cycle_basis(C).cycles
        delta = cycle_length(C, g)[0]
        q = cfg.denom

        def hom(a):
            return MonodromyHom([Vec([delta * Fraction(a, q)])])

        mismatches = 0
        points = range(-cfg.span * q, cfg.span * q)
        for a in points:
            for r in range(q):
                if jac_equal(C, hom(a), hom(r))[0] != (a % q == r):
                    mismatches += 1
        rows.append((n, delta, len(points), mismatches))
    return rows


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--denom", type=int, default=12)
    p.add_argument("--seed", type=int, default=0)
    a = p.parse_args()
    print("n  delta  points  mismatches")
    for n, delta, pts, bad in run(TateConfig(a.max_n, a.denom, seed=a.seed)):
        print(f"{n}  {delta}  {pts}  {bad}")


if __name__ == "__main__":
    main()
