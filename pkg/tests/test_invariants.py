import math
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import builtin_categories
from tvkit.category import CategoryError, build_so3k, build_su2k, fibonacci, s_matrix, twist_phase
from tvkit.heegaard import HeegaardSplitting, mcg_plus_generators, stabilize
from tvkit.invariants import (
    S3_WORD,
    Triangulation,
    TriangulationError,
    boundary_4simplex,
    corpus_checks,
    edge_weights,
    heegaard_invariants,
    internal_faces_23,
    lens_tv_formula,
    lens_word,
    normalized_tv,
    pachner_14,
    pachner_23,
    read_triangulation,
    symmetry_residual,
    tetrahedral_symbol,
    tv_heegaard,
    tv_triangulation,
    write_triangulation,
)


def random_moves(seed: int, n14: int, n23: int) -> Triangulation:
    """Apply the given numbers of 1-4 and 2-3 moves in a random order."""
    rng = random.Random(seed)
    tri = boundary_4simplex()
    # the boundary of the 4-simplex has no legal 2-3 face, so start with a 1-4 move
    rest = ["14"] * (n14 - 1) + ["23"] * n23
    rng.shuffle(rest)
    for m in ["14"] + rest:
        faces = internal_faces_23(tri)
        if m == "23" and faces:
            tri = pachner_23(tri, rng.choice(faces))
        else:
            tri = pachner_14(tri, rng.randrange(len(tri.tets)))
    return tri


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_s3_three_ways(k):
    cat = build_su2k(k)
    s3 = 1 / cat.total_dim**2
    g1 = tv_heegaard(cat, 1, S3_WORD)
    g2 = heegaard_invariants(cat, stabilize(HeegaardSplitting.from_text(S3_WORD, 1))).tv
    tri = tv_triangulation(cat, boundary_4simplex())
    for v in (g1, g2, tri):
        assert abs(v - s3) < 1e-12


@pytest.mark.parametrize("cat", [build_so3k(3), build_so3k(5), fibonacci()], ids=lambda c: c.name)
def test_s3_self_dual_families(cat):
    assert abs(tv_triangulation(cat, boundary_4simplex()) - 1 / cat.total_dim**2) < 1e-12


@pytest.mark.parametrize("k", [1, 2, 3])
def test_pachner_14_then_23(k):
    cat = build_su2k(k)
    tri = pachner_14(boundary_4simplex(), 0)
    assert len(tri.tets) == 8 and tri.n_vertices == 6
    ref = tv_triangulation(cat, boundary_4simplex())
    assert abs(tv_triangulation(cat, tri) - ref) < 1e-12
    tri = pachner_23(tri, internal_faces_23(tri)[0])
    assert len(tri.tets) == 9
    assert abs(tv_triangulation(cat, tri) - ref) < 1e-12


@settings(max_examples=8, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 2), st.integers(0, 4))
def test_random_pachner_sequences(seed, n14, n23):
    cat = build_su2k(1)
    tri = random_moves(seed, n14, n23)
    assert abs(tv_triangulation(cat, tri) - 0.5) < 1e-9


def test_enumerate_matches_contract():
    for cat in (build_su2k(2), fibonacci()):
        for tri in (boundary_4simplex(), pachner_14(boundary_4simplex(), 2)):
            a = tv_triangulation(cat, tri, "enumerate")
            b = tv_triangulation(cat, tri, "contract")
            assert abs(a - b) < 1e-12


def test_tetrahedral_symbol_symmetric():
    for cat in (build_su2k(3), build_so3k(5), fibonacci()):
        assert symmetry_residual(tetrahedral_symbol(cat)) < 1e-12


def test_edge_weights_signed():
    cat = build_su2k(3)
    w = edge_weights(cat)
    assert np.allclose(w, [(-1) ** a * d for a, d in enumerate(cat.qdims)])


def test_non_self_dual_rejected():
    # Z3 pointed category: particle 1 and 2 are mutually dual
    from tvkit.category import Category, Particle

    fusion = frozenset((a, b, (a + b) % 3) for a in range(3) for b in range(3))
    F = np.zeros((3,) * 6, dtype=complex)
    for a, b, m, c, l, n in np.ndindex(*(3,) * 6):
        if m == (a + b) % 3 and l == (m + c) % 3 and n == (b + c) % 3:
            F[a, b, m, c, l, n] = 1
    R = np.zeros((3, 3, 3), dtype=complex)
    for a in range(3):
        for b in range(3):
            R[(a + b) % 3, a, b] = np.exp(2j * math.pi * a * b / 3)
    z3 = Category("Z3", tuple(Particle(i, 1.0, (-i) % 3) for i in range(3)), fusion, F, R)
    with pytest.raises(CategoryError):
        tv_triangulation(z3, boundary_4simplex())


@pytest.mark.parametrize("cat", [build_su2k(1), build_su2k(2), build_su2k(3), build_so3k(3)], ids=lambda c: c.name)
@pytest.mark.parametrize("p", [0, 1, 2, 3, 4, 5, -2])
def test_lens_spaces(cat, p):
    assert abs(tv_heegaard(cat, 1, lens_word(p)) - lens_tv_formula(cat, p)) < 1e-12


def test_lens_independent_oracle():
    # |sum_j S_0j^2 theta_j^p|^2 with closed-form SU(2)_k data, no F or R involved
    for k in (2, 3, 5):
        n = k + 2
        a = np.arange(1, k + 2)
        s0 = math.sqrt(2 / n) * np.sin(a * math.pi / n)
        theta = np.exp(2j * math.pi * (a**2 - 1) / (4 * n))
        for p in (2, 3):
            ref = abs(np.sum(s0**2 * theta**p)) ** 2
            assert abs(tv_heegaard(build_su2k(k), 1, lens_word(p)) - ref) < 1e-12


def test_s2xs1():
    for cat in builtin_categories():
        assert abs(tv_heegaard(cat, 1, "") - 1) < 1e-12


@pytest.mark.parametrize("cat", builtin_categories(), ids=lambda c: c.name)
@pytest.mark.parametrize("g", [1, 2, 3])
def test_identity_normalization(cat, g):
    assert normalized_tv(cat, g, "") == 1.0


@settings(max_examples=20, deadline=None)
@given(st.lists(st.tuples(st.sampled_from(["m1", "l1"]), st.sampled_from(["", "^-1"])), max_size=10))
def test_stabilization_invariance(parts):
    cat = build_su2k(3)
    word = " ".join(a + e for a, e in parts)
    s = HeegaardSplitting.from_text(word, 1)
    assert abs(heegaard_invariants(cat, s).tv - heegaard_invariants(cat, stabilize(s)).tv) < 1e-10


@settings(max_examples=20, deadline=None)
@given(st.lists(st.sampled_from(["m1", "l1", "c1", "m2", "l2"]), max_size=12), st.lists(st.sampled_from(["m1", "m2", "m1^-1"]), max_size=4))
def test_handlebody_invariance_of_tv(letters, mer):
    cat = fibonacci()
    w = " ".join(letters)
    m = " ".join(mer)
    assert abs(tv_heegaard(cat, 2, f"{m} {w} {m}") - tv_heegaard(cat, 2, w)) < 1e-10


def test_corpus(tmp_path):
    for cat in (build_su2k(1), build_su2k(2), build_so3k(3)):
        bad = [c for c in corpus_checks(cat) if not c.passed]
        assert not bad


def test_triangulation_file_roundtrip(tmp_path):
    tri = pachner_14(boundary_4simplex(), 1)
    path = tmp_path / "t.tri"
    write_triangulation(tri, path)
    assert read_triangulation(path) == tri


@pytest.mark.parametrize(
    "text, match",
    [
        ("tet: 0 1 2 3\n", "vertices"),
        ("vertices: 4\ntet: 0 1 2 3\n", "open boundary"),
        ("vertices: 5\ntet: 0 1 2\n", "4 vertex ids"),
        ("vertices: 5\nfoo: 1\n", "unknown field"),
    ],
)
def test_bad_triangulation_files(tmp_path, text, match):
    path = tmp_path / "t.tri"
    path.write_text(text)
    with pytest.raises(TriangulationError, match=match):
        read_triangulation(path)


def test_pinched_link_rejected():
    # two boundary 4-simplices glued at a single vertex: vertex link is two spheres
    a = list(boundary_4simplex().tets)
    b = [tuple(x + 4 if x else 0 for x in t) for t in a]
    with pytest.raises(TriangulationError, match="2-sphere"):
        Triangulation(tuple(a + b), 9).validate()


def test_illegal_23_rejected():
    tri = boundary_4simplex()
    with pytest.raises(TriangulationError):
        pachner_23(tri, (0, 1, 2))
