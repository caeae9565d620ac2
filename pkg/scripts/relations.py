"""Residuals of the mapping-class-group relations for each built-in category.

    python scripts/relations.py --max-genus 3
"""

import argparse

from tvkit.category import build_so3k, build_su2k, fibonacci
from tvkit.repspace import relation_residuals, standard_graph, enumerate_basis


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-genus", type=int, default=3)
    args = ap.parse_args()
    cats = [build_su2k(k) for k in (1, 2, 3)] + [build_so3k(3), fibonacci()]
    print(f"{'category':<10} {'g':>2} {'dim':>5} {'commute':>10} {'braid':>10} {'unitary':>10}")
    for cat in cats:
        for g in range(1, args.max_genus + 1):
            r = relation_residuals(cat, g)
            dim = len(enumerate_basis(cat, standard_graph(g)))
            print(f"{cat.name:<10} {g:>2} {dim:>5} {r.commutation:>10.1e} {r.braid:>10.1e} {r.unitarity:>10.1e}")


if __name__ == "__main__":
    main()
