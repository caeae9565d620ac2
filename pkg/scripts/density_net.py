"""Coarse covering test: how close do short local words get to Haar-random code unitaries?

    python scripts/density_net.py --category fibonacci --half-depth 5 --targets 20
"""

import argparse
import time

from scipy.stats import unitary_group

from tvkit.cli import resolve_category
from tvkit.compiler import net_distances


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--category", default="fibonacci")
    ap.add_argument("--half-depth", type=int, default=5)
    ap.add_argument("--targets", type=int, default=20)
    ap.add_argument("--seed", type=int, default=2024)
    ap.add_argument("--radius", type=float, default=0.5)
    args = ap.parse_args()
    cat = resolve_category(args.category)
    targets = unitary_group.rvs(4, size=args.targets, random_state=args.seed)
    t0 = time.time()
    res = net_distances(cat, 2, (1, 2), targets, half_depth=args.half_depth)
    dists = sorted(r.distance for r in res)
    print(f"category = {cat.name}")
    print(f"max_word_length = {2 * args.half_depth}")
    print(f"distances = {' '.join(f'{d:.4f}' for d in dists)}")
    print(f"max_distance = {dists[-1]:.6f}")
    print(f"covered = {sum(d <= args.radius for d in dists)}/{len(dists)} within {args.radius}")
    print(f"seconds = {time.time() - t0:.1f}")


if __name__ == "__main__":
    main()
