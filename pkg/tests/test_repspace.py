import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import builtin_categories
from tvkit.category import build_su2k, fibonacci, s_matrix, twist_phase
from tvkit.heegaard import DehnGenerator, DehnWord, generators, mcg_plus_generators, parse_word
from tvkit.repspace import (
    GraphError,
    apply_f_move,
    apply_s_move,
    apply_twist,
    apply_word,
    basis_state,
    enumerate_basis,
    generator_matrix,
    is_consistent,
    matrix_element,
    relation_residuals,
    standard_graph,
    vacuum,
    word_matrix,
)


def verlinde(cat, g):
    S0 = np.abs(s_matrix(cat)[0])
    return round(float(np.sum(S0 ** (2 - 2 * g))))


@pytest.mark.parametrize("k", range(1, 5))
@pytest.mark.parametrize("g", range(1, 5))
def test_dimension_matches_verlinde(k, g):
    cat = build_su2k(k)
    assert len(enumerate_basis(cat, standard_graph(g))) == verlinde(cat, g)


@pytest.mark.parametrize("g", range(1, 5))
def test_fibonacci_dimension(g):
    cat = fibonacci()
    assert len(enumerate_basis(cat, standard_graph(g))) == verlinde(cat, g)


@pytest.mark.parametrize("g", range(1, 6))
def test_standard_graph_shape(g):
    graph = standard_graph(g)
    graph.validate()
    assert graph.betti() == g
    assert len(graph.edge_names) == (1 if g == 1 else 3 * g - 3)


def test_basis_labels_are_consistent():
    cat = build_su2k(3)
    graph = standard_graph(3)
    for labels in enumerate_basis(cat, graph):
        assert is_consistent(cat, graph, labels)
    with pytest.raises(ValueError):
        basis_state(cat, graph, (0, 0, 0, 1, 0, 0))


@pytest.mark.parametrize("cat", [fibonacci(), build_su2k(2), build_su2k(3)], ids=lambda c: c.name)
@pytest.mark.parametrize("g", [1, 2, 3])
def test_generators_unitary(cat, g):
    for gen in generators(g):
        M = generator_matrix(cat, g, gen).toarray()
        assert np.abs(M.conj().T @ M - np.eye(len(M))).max() < 1e-12
        Minv = generator_matrix(cat, g, gen, -1).toarray()
        assert np.abs(M @ Minv - np.eye(len(M))).max() < 1e-12


@pytest.mark.parametrize("cat", [fibonacci(), build_su2k(2)], ids=lambda c: c.name)
@pytest.mark.parametrize("g", [2, 3])
def test_commutation_and_braid(cat, g):
    rep = relation_residuals(cat, g)
    assert rep.commutation < 1e-9
    assert rep.braid < 1e-6


def _proportional_to_identity(M):
    ph = M[0, 0]
    return abs(abs(ph) - 1) < 1e-9 and np.abs(M - ph * np.eye(len(M))).max() < 1e-9


@pytest.mark.parametrize("cat", [fibonacci(), build_su2k(2), build_su2k(3)], ids=lambda c: c.name)
def test_genus_one_modular_relations(cat):
    s = word_matrix(cat, 1, "m1 l1 m1")
    assert _proportional_to_identity(np.linalg.matrix_power(s, 4))
    assert _proportional_to_identity(np.linalg.matrix_power(word_matrix(cat, 1, "m1 l1"), 6))


def test_meridian_twist_is_diagonal_twist(fib):
    M = generator_matrix(fib, 2, DehnGenerator("m", 1)).toarray()
    basis = enumerate_basis(fib, standard_graph(2))
    assert np.abs(M - np.diag(np.diag(M))).max() == 0
    for r, labels in enumerate(basis):
        assert abs(M[r, r] - twist_phase(fib, labels[0])) < 1e-15


def test_genus_two_chain_relation(fib):
    M = word_matrix(fib, 2, "m1 l1 c1 l2 m2")
    assert _proportional_to_identity(np.linalg.matrix_power(M, 6))


def test_hyperelliptic_involution_is_central(su2_2):
    H = word_matrix(su2_2, 2, "m1 l1 c1 l2 m2 m2 l2 c1 l1 m1")
    for gen in generators(2):
        G = generator_matrix(su2_2, 2, gen).toarray()
        assert np.abs(H @ G - G @ H).max() < 1e-9


def test_s3_matrix_element(fib):
    assert abs(abs(matrix_element(fib, 1, "m1 l1 m1")) - 1 / fib.total_dim) < 1e-12
    assert matrix_element(fib, 3, "") == 1


def test_moves_roundtrip(su2_2):
    graph = standard_graph(3)
    basis = enumerate_basis(su2_2, graph)
    rng = np.random.default_rng(3)
    amps = rng.normal(size=len(basis)) + 1j * rng.normal(size=len(basis))
    from tvkit.repspace import StateVector

    state = StateVector(su2_2, graph, amps / np.linalg.norm(amps))
    for e in ("conn1", "conn2", "stem2"):
        moved = apply_f_move(state, e)
        assert abs(moved.norm() - 1) < 1e-12
        back = apply_f_move(moved, e, inverse=True)
        assert back.graph == graph and np.abs(back.amps - state.amps).max() < 1e-12
    s = apply_s_move(state, "loop1")
    assert abs(s.norm() - 1) < 1e-12
    assert np.abs(apply_s_move(s, "loop1", inverse=True).amps - state.amps).max() < 1e-12
    t = apply_twist(apply_twist(state, "loop2"), "loop2", -1)
    assert np.abs(t.amps - state.amps).max() < 1e-14


def test_f_move_on_loop_rejected(su2_2):
    with pytest.raises(GraphError):
        apply_f_move(vacuum(su2_2, 2), "loop1")


def random_word(draw, g, max_len):
    gens = generators(g)
    n = draw(st.integers(0, max_len))
    return DehnWord(tuple((draw(st.sampled_from(gens)), draw(st.sampled_from([1, -1]))) for _ in range(n)), g)


@settings(max_examples=50, deadline=None)
@given(st.data())
def test_handlebody_twists_fix_matrix_element(data):
    cat = data.draw(st.sampled_from([fibonacci(), build_su2k(2), build_su2k(3)]))
    g = 2
    w = random_word(data.draw, g, 20)
    mer = [(x, e) for x in mcg_plus_generators(g) for e in (1, -1)]
    pre = DehnWord(tuple(data.draw(st.lists(st.sampled_from(mer), max_size=5))), g)
    post = DehnWord(tuple(data.draw(st.lists(st.sampled_from(mer), max_size=5))), g)
    assert abs(abs(matrix_element(cat, g, pre + w + post)) - abs(matrix_element(cat, g, w))) < 1e-12


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_word_inverse_gives_identity(data):
    cat = fibonacci()
    g = data.draw(st.integers(1, 3))
    w = random_word(data.draw, g, 12)
    v = vacuum(cat, g)
    out = apply_word(apply_word(v, w), w.inverse())
    assert abs(out.inner(v) - 1) < 1e-12


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_norm_preserved(data):
    cat = data.draw(st.sampled_from(builtin_categories()[:4]))
    g = data.draw(st.integers(1, 3))
    w = random_word(data.draw, g, 10)
    assert abs(apply_word(vacuum(cat, g), w).norm() - 1) < 1e-12
