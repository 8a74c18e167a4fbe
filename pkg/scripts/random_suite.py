"""Random lex-metrized curves: trivialize, normalize and the two boundedness checks.

Also measures how often checking basis cycles alone disagrees with the
check over all of H1.
"""

import argparse
import random
import time
from collections import Counter
from dataclasses import dataclass

from tropjac.generators import random_bounded_hom, random_lex_curve
from tropjac.monodromy import MonodromyHom, coboundary, cycle_coboundary, is_bounded, normalize, trivialize


@dataclass
class SuiteConfig:
    size: int = 500
    seed: int = 0
    max_edges: int = 4
    max_rank: int = 3


def run(cfg: SuiteConfig) -> Counter:
    rng = random.Random(cfg.seed)
    stats: Counter = Counter()
    t0 = time.perf_counter()
    while stats["homs"] < cfg.size:
        C = random_lex_curve(rng, cfg.max_edges, cfg.max_rank)
        # boundedness: basis-only versus full
        raw = MonodromyHom([[rng.randint(-4, 4) for _ in range(C.rank)] for _ in range(C.genus)])
        full, basis = bool(is_bounded(C, raw)), bool(is_bounded(C, raw, basis_only=True))
        stats["bounded"] += full
        stats["basis_only_too_lenient"] += basis and not full
        mu = random_bounded_hom(rng, C)
        if mu is None:
            continue
        stats["homs"] += 1
        tr = trivialize(C, C.order, mu)
        stats["trivialize_ok"] += coboundary(tr.curve, tr.cochain) == mu
        stats["points"] += len(tr.points)
        zeta, gamma = normalize(C, C.order, mu)
        stats["normalize_ok"] += zeta == mu - cycle_coboundary(C, gamma)
    stats["ms_total"] = int(1000 * (time.perf_counter() - t0))
    return stats


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--size", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    a = p.parse_args()
    for k, v in sorted(run(SuiteConfig(a.size, a.seed)).items()):
        print(f"{k}: {v}")


if __name__ == "__main__":
    main()
