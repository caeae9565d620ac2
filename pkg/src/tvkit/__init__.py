"""Turaev-Viro / WRT invariants, mapping-class-group representations and the circuit-to-word compiler."""

import os as _os

# TVKIT_THREADS caps BLAS threads; it must be applied before numpy loads
_threads = _os.environ.get("TVKIT_THREADS", "0")
if _threads.isdigit() and int(_threads) > 0:
    for _var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
        _os.environ.setdefault(_var, _threads)

from .category import (  # noqa: E402
    Category,
    CategoryError,
    Particle,
    build_so3k,
    build_su2k,
    fibonacci,
    load_category,
    restrict_so3,
    s_matrix,
    s_symbol,
    save_category,
    twist_phase,
    verify_axioms,
)
from .compiler import QubitCircuit, encode_bits, read_circuit, reduce_circuit, sk_compile  # noqa: E402
from .estimator import EstimateParams, approximate_tv, estimate_matrix_element  # noqa: E402
from .heegaard import DehnGenerator, DehnWord, HeegaardSplitting, generators, parse_word, stabilize  # noqa: E402
from .invariants import (  # noqa: E402
    Triangulation,
    normalized_tv,
    tv_heegaard,
    tv_triangulation,
    wrt_heegaard,
)
from .repspace import PantsGraph, StateVector, apply_word, enumerate_basis, matrix_element, vacuum  # noqa: E402

__version__ = "0.1.0"
