import math

import numpy as np
import pytest
from scipy.stats import unitary_group

from tvkit.category import build_so3k, build_su2k, fibonacci, twist_phase
from tvkit.compiler import (
    GATES,
    CircuitError,
    CompileBudgetError,
    CompilerConfig,
    QubitCircuit,
    codespace_distance,
    encode_bits,
    local_generator_images,
    read_circuit,
    reduce_circuit,
    sk_compile,
    word_codespace_image,
)
from tvkit.heegaard import DehnGenerator
from tvkit.invariants import normalized_tv
from tvkit.repspace import enumerate_basis, is_consistent, standard_graph, vacuum


@pytest.fixture(scope="module")
def so3():
    return build_so3k(3)


def test_encode_examples(fib):
    assert encode_bits(fib, "00") == vacuum(fib, 3).basis[int(np.argmax(np.abs(vacuum(fib, 3).amps)))]
    graph = standard_graph(3)
    lab = dict(zip(graph.edge_names, encode_bits(fib, "10")))
    assert lab["loop1"] == 1 and all(v == 0 for k, v in lab.items() if k != "loop1")


@pytest.mark.parametrize("n", [1, 2, 3])
def test_encodings_consistent_and_injective(fib, n):
    graph = standard_graph(n + 1)
    images = set()
    for z in range(2**n):
        bits = format(z, f"0{n}b")
        lab = encode_bits(fib, bits)
        assert is_consistent(fib, graph, lab)
        images.add(lab)
    assert len(images) == 2**n


def test_encode_rejects():
    with pytest.raises(ValueError):
        encode_bits(fibonacci(), "012")
    with pytest.raises(ValueError):
        encode_bits(fibonacci(), "1", particle=0)


@pytest.mark.parametrize("cat", [fibonacci(), build_so3k(3)], ids=lambda c: c.name)
def test_local_images(cat):
    im = local_generator_images(cat, 3, (1, 2))
    assert im.dim == 5 and im.n_code == 4
    assert len(im.matrices) == 10
    for M in im.matrices:
        assert np.abs(M.conj().T @ M - np.eye(5)).max() < 1e-9
    m1, m2 = im.matrices[0], im.matrices[6]
    assert np.abs(m1 - np.diag(np.diag(m1))).max() == 0
    assert np.abs(m1 @ m2 - m2 @ m1).max() == 0
    # code states 00, 01, 10, 11: loop1 label is the high bit
    assert np.allclose(np.diag(m1)[:4], [1, 1, twist_phase(cat, 1), twist_phase(cat, 1)])


def test_local_images_adjacent_only(fib):
    with pytest.raises(ValueError):
        local_generator_images(fib, 4, (1, 3))
    with pytest.raises(ValueError):
        local_generator_images(fib, 2, (2, 3))


def test_identity_and_generator_targets(fib):
    im = local_generator_images(fib, 2, (1, 2))
    r = sk_compile(fib, 2, (1, 2), np.eye(4), 0.1)
    assert len(r.word) == 0 and r.distance < 1e-12
    target = im.matrices[2]  # l1
    r = sk_compile(fib, 2, (1, 2), target, 0.1)
    assert r.word.render() == "l1" and r.distance < 1e-9


def test_cnot_fibonacci(fib):
    r = sk_compile(fib, 2, (1, 2), GATES["CNOT"], 0.2)
    assert r.distance <= 0.2
    W = word_codespace_image(fib, r.word, (1, 2))
    assert abs(codespace_distance(W, GATES["CNOT"]) - r.distance) < 1e-9


def test_h1_so3(so3):
    circ = QubitCircuit(2, (((1, 2), GATES["H1"]),))
    res = reduce_circuit(so3, circ, 0.1)
    assert res.genus == 3
    assert res.total_error_bound <= 0.1
    assert abs(normalized_tv(so3, 3, res.word) - 0.5) <= res.probability_error_bound


def test_budget_error(fib):
    cfg = CompilerConfig(base_depth=3, levels=1, per_level=50, max_steps=5)
    with pytest.raises(CompileBudgetError) as info:
        sk_compile(fib, 2, (1, 2), GATES["SWAP"], 1e-6, cfg)
    assert info.value.best_distance > 1e-6


def test_empty_and_identity_circuits(so3):
    res = reduce_circuit(so3, QubitCircuit(2))
    assert len(res.word) == 0 and normalized_tv(so3, 3, res.word) == 1.0
    res = reduce_circuit(so3, QubitCircuit(2, (((1, 2), np.eye(4, dtype=complex)),)))
    assert res.total_error_bound == 0 and normalized_tv(so3, 3, res.word) == 1.0


def test_random_circuit_error_budget(so3):
    rng = np.random.default_rng(17)
    for T in (1, 2, 3):
        gates = tuple(((1, 2), unitary_group.rvs(4, random_state=rng)) for _ in range(T))
        circ = QubitCircuit(2, gates)
        res = reduce_circuit(so3, circ, 0.12)
        assert all(e <= 0.12 for e in res.gate_errors)
        S = res.total_error_bound
        assert abs(normalized_tv(so3, 3, res.word) - circ.acceptance()) <= 2 * S + S * S


def test_length_linear_in_gate_count(so3):
    lengths = []
    for T in (1, 2, 3, 4):
        circ = QubitCircuit(2, tuple(((1, 2), GATES["CNOT"]) for _ in range(T)))
        lengths.append(reduce_circuit(so3, circ, 0.1).length)
    assert lengths == [lengths[0] * T for T in (1, 2, 3, 4)]


@pytest.mark.slow
def test_routed_three_qubit_circuit(so3):
    circ = QubitCircuit(3, (((1, 2), GATES["H1"]), ((1, 3), GATES["CNOT"])))
    res = reduce_circuit(so3, circ, 0.1)
    assert res.genus == 4
    assert len(res.gate_errors) == 4  # H, SWAP, CNOT, SWAP
    S = res.total_error_bound
    assert abs(normalized_tv(so3, 4, res.word) - circ.acceptance()) <= 2 * S + S * S


def test_simulate_matches_kron():
    H = GATES["H1"][:2, :2] * math.sqrt(2) / math.sqrt(2)
    circ = QubitCircuit(3, (((1, 3), GATES["CNOT"]), ((2, 3), GATES["H1"])))
    psi = circ.simulate()
    e0 = np.zeros(8)
    e0[0] = 1
    CN13 = np.zeros((8, 8))
    for z in range(8):
        a, b, c = (z >> 2) & 1, (z >> 1) & 1, z & 1
        CN13[(a << 2) | (b << 1) | (c ^ a), z] = 1
    H2 = np.kron(np.eye(2), np.kron(np.array([[1, 1], [1, -1]]) / math.sqrt(2), np.eye(2)))
    assert np.allclose(psi, H2 @ CN13 @ e0)
    assert H.shape == (2, 2)


def test_read_circuit(tmp_path):
    p = tmp_path / "c.txt"
    rows = "\n".join(" ".join(f"{x.real} {x.imag}" for x in row) for row in GATES["CZ"])
    p.write_text(f"qubits: 3\ngate: 1 2 H1\ngate: 3 1\n{rows}\n")
    c = read_circuit(p)
    assert c.n == 3 and len(c.gates) == 2
    (a, b), U = c.gates[1]
    assert (a, b) == (1, 3) and np.allclose(U, GATES["CZ"])


def test_read_circuit_swapped_targets(tmp_path):
    p = tmp_path / "c.txt"
    p.write_text("qubits: 2\ngate: 2 1 CNOT\n")
    (ab, U), = read_circuit(p).gates
    ref = QubitCircuit(2, (((1, 2), GATES["SWAP"] @ GATES["CNOT"] @ GATES["SWAP"]),))
    assert ab == (1, 2) and np.allclose(U, ref.gates[0][1])


@pytest.mark.parametrize(
    "text, match",
    [
        ("gate: 1 2 CNOT\n", "qubits"),
        ("qubits: 2\ngate: 1 2 FOO\n", "unknown gate"),
        ("qubits: 2\ngate: 1 3 CNOT\n", "1 <= a < b"),
        ("qubits: 2\ngate: 1 2\n1 0 0 0\n", "4 matrix rows"),
        ("qubits: 2\ngate: 1 2\n" + "1 0 0 0\n" * 4, "8 numbers"),
        ("qubits: 2\ngate: 1 2\n" + "2 0 0 0 0 0 0 0\n" * 4, "unitary"),
    ],
)
def test_read_circuit_errors(tmp_path, text, match):
    p = tmp_path / "c.txt"
    p.write_text(text)
    with pytest.raises(CircuitError, match=match):
        read_circuit(p)


def test_density_warning_for_finite_image():
    with pytest.warns(UserWarning, match="finite image"):
        with pytest.raises(CompileBudgetError):
            sk_compile(build_su2k(2), 2, (1, 2), GATES["H1"], 0.05, CompilerConfig(base_depth=3, levels=1, per_level=50, max_steps=5))
