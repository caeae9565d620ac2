"""Compile a small circuit and compare normalized TV with the circuit's acceptance probability.

    python scripts/compile_demo.py --category so3k:3 --eps 0.1
"""

import argparse
import time

from tvkit.cli import resolve_category
from tvkit.compiler import GATES, QubitCircuit, reduce_circuit
from tvkit.invariants import normalized_tv

CIRCUITS = {
    "h": QubitCircuit(2, (((1, 2), GATES["H1"]),)),
    "bell": QubitCircuit(2, (((1, 2), GATES["H1"]), ((1, 2), GATES["CNOT"]))),
    "bell_undo": QubitCircuit(2, (((1, 2), GATES["H1"]), ((1, 2), GATES["CNOT"]), ((1, 2), GATES["CNOT"]), ((1, 2), GATES["H1"]))),
    "routed": QubitCircuit(3, (((1, 2), GATES["H1"]), ((1, 3), GATES["CNOT"]))),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--category", default="so3k:3")
    ap.add_argument("--eps", type=float, default=0.1)
    ap.add_argument("--circuits", nargs="*", default=list(CIRCUITS))
    args = ap.parse_args()
    cat = resolve_category(args.category)
    print(f"{'circuit':<10} {'qubits':>6} {'gates':>5} {'length':>7} {'exact':>8} {'tv':>8} {'|diff|':>8} {'bound':>8} {'sec':>6}")
    for name in args.circuits:
        circ = CIRCUITS[name]
        t0 = time.time()
        res = reduce_circuit(cat, circ, args.eps)
        ntv = normalized_tv(cat, res.genus, res.word)
        p = circ.acceptance()
        print(f"{name:<10} {circ.n:>6} {len(circ.gates):>5} {res.length:>7} {p:>8.4f} {ntv:>8.4f} {abs(ntv - p):>8.4f} {res.probability_error_bound:>8.4f} {time.time() - t0:>6.1f}")


if __name__ == "__main__":
    main()
