"""Random walk of 1-4 / 2-3 moves from the boundary of the 4-simplex, printing TV after each move.

    python scripts/pachner_walk.py --category su2k:2 --moves 8 --max-tets 14
"""

import argparse
import random
import time

from tvkit.cli import resolve_category
from tvkit.invariants import boundary_4simplex, internal_faces_23, pachner_14, pachner_23, tv_triangulation


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--category", default="su2k:2")
    ap.add_argument("--moves", type=int, default=8)
    ap.add_argument("--max-tets", type=int, default=14)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    cat = resolve_category(args.category)
    rng = random.Random(args.seed)
    tri = boundary_4simplex()
    ref = tv_triangulation(cat, tri)
    print(f"start tets=5 tv={ref:.12g} (1/D^2 = {1 / cat.total_dim**2:.12g})")
    for step in range(1, args.moves + 1):
        faces = internal_faces_23(tri)
        room = args.max_tets - len(tri.tets)
        if faces and room >= 1 and (room < 3 or rng.random() < 0.6):
            tri, kind = pachner_23(tri, rng.choice(faces)), "2-3"
        elif room >= 3:
            tri, kind = pachner_14(tri, rng.randrange(len(tri.tets))), "1-4"
        else:
            print("no room for further moves")
            break
        t0 = time.time()
        tv = tv_triangulation(cat, tri)
        print(f"move {step} {kind} tets={len(tri.tets)} edges={len(tri.edges)} tv={tv:.12g} drift={abs(tv - ref):.2e} sec={time.time() - t0:.2f}")


if __name__ == "__main__":
    main()
