"""Turaev-Viro and WRT invariants.

Two independent routes:

* Heegaard splittings: ``WRT = D^{g-1} <v|rho(x)|v>`` and ``TV = |WRT|^2``.
* Triangulations: the state sum
  ``TV = D^{-2|V|} sum_labelings prod_edges w_e prod_tets G(tet)``
  with ``w_a = kappa_a d_a`` (``kappa`` the Frobenius-Schur indicator;
  ``(-1)^{2j} [2j+1]`` for SU(2)_k).

For the state sum each tetrahedron's vertices are sorted and its edges read
as ``i=e01, j=e12, m=e02, k=e23, l=e03, n=e13``.  ``G`` must then be
invariant under all 24 vertex permutations, which is checked before use.
For categories built from SU(2)_k the q-6j gauge is not symmetric on its
own; multiplying by ``i^{-(2m + 2n)}`` (twice-spins of the two unpaired
edges) yields the Kirillov-Reshetikhin symmetric 6j symbol.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

import numpy as np

from .category import Category, CategoryError, frobenius_schur, s_matrix, twist_phase
from .heegaard import DehnWord, HeegaardSplitting, parse_word, stabilize
from .repspace import matrix_element

# (a, b) vertex pairs for i, j, m, k, l, n
TET_EDGES = ((0, 1), (1, 2), (0, 2), (2, 3), (0, 3), (1, 3))
SYMMETRY_TOL = 1e-9


class TriangulationError(ValueError):
    """Malformed triangulation file, non-manifold gluing, or invalid Pachner move."""


@dataclass(frozen=True)
class Triangulation:
    """Closed simplicial 3-manifold; tetrahedra are 4-tuples of vertex ids."""

    tets: tuple[tuple[int, int, int, int], ...]
    n_vertices: int
    oriented: bool = True

    def __post_init__(self):
        object.__setattr__(self, "tets", tuple(tuple(sorted(t)) for t in self.tets))

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted({e for t in self.tets for e in itertools.combinations(t, 2)}))

    @cached_property
    def faces(self) -> Counter:
        return Counter(f for t in self.tets for f in itertools.combinations(t, 3))

    def validate(self) -> Triangulation:
        if not self.tets:
            raise TriangulationError("triangulation has no tetrahedra")
        for t in self.tets:
            if len(set(t)) != 4:
                raise TriangulationError(f"tetrahedron {t} has repeated vertices")
        if len(set(self.tets)) != len(self.tets):
            raise TriangulationError("duplicate tetrahedron")
        used = {v for t in self.tets for v in t}
        if used != set(range(self.n_vertices)):
            raise TriangulationError(f"vertex ids must be exactly 0..{self.n_vertices - 1}, found {sorted(used)}")
        for f, c in self.faces.items():
            if c == 1:
                raise TriangulationError(f"face {f} is on an open boundary")
            if c > 2:
                raise TriangulationError(f"face {f} is shared by {c} tetrahedra (non-manifold)")
        for v in range(self.n_vertices):
            self._check_link(v)
        return self

    def _check_link(self, v: int) -> None:
        tris = [tuple(x for x in t if x != v) for t in self.tets if v in t]
        link_edges = {e for tri in tris for e in itertools.combinations(tri, 2)}
        link_verts = {x for tri in tris for x in tri}
        chi = len(link_verts) - len(link_edges) + len(tris)
        # connectivity through shared edges
        seen, todo = {tris[0]}, [tris[0]]
        while todo:
            a = todo.pop()
            for b in tris:
                if b not in seen and len(set(a) & set(b)) == 2:
                    seen.add(b)
                    todo.append(b)
        if chi != 2 or len(seen) != len(tris):
            raise TriangulationError(f"link of vertex {v} is not a 2-sphere (non-manifold)")


def read_triangulation(path) -> Triangulation:
    n_vertices, tets, oriented = None, [], True
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition(":")
        key = key.strip()
        where = f"{path}:{lineno}"
        if not sep:
            raise TriangulationError(f"{where}: expected 'key: value'")
        if key == "vertices":
            try:
                n_vertices = int(value)
            except ValueError:
                raise TriangulationError(f"{where}: vertex count {value.strip()!r} is not an integer") from None
        elif key == "tet":
            try:
                t = tuple(int(x) for x in value.split())
            except ValueError:
                raise TriangulationError(f"{where}: tetrahedron needs 4 integer vertex ids") from None
            if len(t) != 4:
                raise TriangulationError(f"{where}: tetrahedron needs 4 vertex ids, got {len(t)}")
            tets.append(t)
        elif key == "oriented":
            oriented = value.strip().lower() == "true"
        else:
            raise TriangulationError(f"{where}: unknown field {key!r}")
    if n_vertices is None:
        raise TriangulationError(f"{path}: missing 'vertices' line")
    return Triangulation(tuple(tets), n_vertices, oriented).validate()


def write_triangulation(tri: Triangulation, path) -> None:
    lines = [f"vertices: {tri.n_vertices}", f"oriented: {'true' if tri.oriented else 'false'}"]
    lines += ["tet: " + " ".join(map(str, t)) for t in tri.tets]
    Path(path).write_text("\n".join(lines) + "\n")


def boundary_4simplex() -> Triangulation:
    """Five tetrahedra forming S^3."""
    return Triangulation(tuple(itertools.combinations(range(5), 4)), 5).validate()


def pachner_14(tri: Triangulation, tet_index: int) -> Triangulation:
    if not 0 <= tet_index < len(tri.tets):
        raise TriangulationError(f"no tetrahedron {tet_index}")
    t = tri.tets[tet_index]
    v = tri.n_vertices
    new = [tuple(v if a == b else t[a] for a in range(4)) for b in range(4)]
    tets = tri.tets[:tet_index] + tri.tets[tet_index + 1 :] + tuple(new)
    return Triangulation(tets, v + 1, tri.oriented).validate()


def pachner_23(tri: Triangulation, face) -> Triangulation:
    face = tuple(sorted(face))
    pair = [t for t in tri.tets if set(face) <= set(t)]
    if len(face) != 3 or len(pair) != 2:
        raise TriangulationError(f"face {face} is not shared by two tetrahedra")
    (d,) = set(pair[0]) - set(face)
    (e,) = set(pair[1]) - set(face)
    if tuple(sorted((d, e))) in set(tri.edges):
        raise TriangulationError(f"2-3 move on {face} would duplicate existing edge {(d, e)}")
    a, b, c = face
    rest = tuple(t for t in tri.tets if t not in pair)
    return Triangulation(rest + ((a, b, d, e), (b, c, d, e), (a, c, d, e)), tri.n_vertices, tri.oriented).validate()


def internal_faces_23(tri: Triangulation) -> list[tuple[int, int, int]]:
    """Faces on which a 2-3 move is legal."""
    edges = set(tri.edges)
    out = []
    for f in sorted(tri.faces):
        pair = [t for t in tri.tets if set(f) <= set(t)]
        (d,) = set(pair[0]) - set(f)
        (e,) = set(pair[1]) - set(f)
        if tuple(sorted((d, e))) not in edges:
            out.append(f)
    return out


# ---------------------------------------------------------------------------
# the state sum


def tetrahedral_symbol(cat: Category) -> np.ndarray:
    """Symmetric tetrahedral weight ``G[i, j, m, k, l, n]``; raises if not symmetric."""
    if not cat.is_self_dual():
        raise CategoryError(f"{cat.name}: the triangulation state sum is implemented for self-dual categories only")
    d = np.sqrt(cat.qdims)
    G = cat.F / (d[None, None, :, None, None, None] * d[None, None, None, None, None, :])
    if "twice_spin" in cat.meta:
        ph = (-1j) ** np.asarray(cat.meta["twice_spin"])
        G = G * ph[None, None, :, None, None, None] * ph[None, None, None, None, None, :]
    res = symmetry_residual(G)
    if res > SYMMETRY_TOL:
        raise CategoryError(
            f"{cat.name}: tetrahedral symbol is not symmetric (residual {res:.3g}); "
            "the state sum would depend on vertex order"
        )
    return G


def symmetry_residual(G: np.ndarray) -> float:
    worst = 0.0
    for perm in itertools.permutations(range(4)):
        axes = [TET_EDGES.index(tuple(sorted((perm[a], perm[b])))) for a, b in TET_EDGES]
        worst = max(worst, float(np.abs(np.transpose(G, axes) - G).max()))
    return worst


def edge_weights(cat: Category) -> np.ndarray:
    return np.array([frobenius_schur(cat, a) * cat.qdims[a] for a in range(cat.rank)])


def _tet_axes(tri: Triangulation) -> list[list[int]]:
    ix = {e: k for k, e in enumerate(tri.edges)}
    return [[ix[(t[a], t[b])] for a, b in TET_EDGES] for t in tri.tets]


def _contract(cat: Category, tri: Triangulation, G: np.ndarray) -> complex:
    n_edges = len(tri.edges)
    if n_edges > 52:
        return _enumerate(cat, tri, G)
    args: list = []
    for axes in _tet_axes(tri):
        args += [G, axes]
    w = edge_weights(cat)
    for e in range(n_edges):
        args += [w, [e]]
    return complex(np.einsum(*args, [], optimize="greedy"))


def _enumerate(cat: Category, tri: Triangulation, G: np.ndarray) -> complex:
    """Nested sum over edge labels, checking each tetrahedron once its edges are set."""
    tet_axes = _tet_axes(tri)
    n_edges = len(tri.edges)
    ready: list[list[int]] = [[] for _ in range(n_edges)]
    for t, axes in enumerate(tet_axes):
        ready[max(axes)].append(t)
    # faces give early pruning before a whole tetrahedron is fixed
    ix = {e: k for k, e in enumerate(tri.edges)}
    face_ready: list[list[tuple[int, int, int]]] = [[] for _ in range(n_edges)]
    for a, b, c in tri.faces:
        es = (ix[(a, b)], ix[(b, c)], ix[(a, c)])
        face_ready[max(es)].append(es)
    N = cat.N
    d = edge_weights(cat)
    labels = [0] * n_edges

    def rec(e: int, acc: complex) -> complex:
        if e == n_edges:
            return acc
        total = 0j
        for x in range(cat.rank):
            labels[e] = x
            if not all(N[labels[p], labels[q], labels[r]] for p, q, r in face_ready[e]):
                continue
            w = acc * d[x]
            for t in ready[e]:
                w *= G[tuple(labels[a] for a in tet_axes[t])]
                if w == 0:
                    break
            if w != 0:
                total += rec(e + 1, w)
        return total

    return rec(0, 1.0 + 0j)


def tv_triangulation_complex(cat: Category, tri: Triangulation, method: str = "enumerate") -> complex:
    tri.validate()
    G = tetrahedral_symbol(cat)
    if method == "enumerate":
        z = _enumerate(cat, tri, G)
    elif method == "contract":
        z = _contract(cat, tri, G)
    else:
        raise ValueError(f"unknown method {method!r}")
    return z / cat.total_dim ** (2 * tri.n_vertices)


def tv_triangulation(cat: Category, tri: Triangulation, method: str = "enumerate") -> float:
    z = tv_triangulation_complex(cat, tri, method)
    if abs(z.imag) > 1e-9 * max(1.0, abs(z)):
        raise ArithmeticError(f"state sum has imaginary part {z.imag:.3g}")
    return z.real


# ---------------------------------------------------------------------------
# Heegaard splittings


def _word(word, g: int) -> DehnWord:
    return parse_word(word, g) if isinstance(word, str) else word


def wrt_heegaard(cat: Category, g: int, word) -> complex:
    """``D^{g-1} <v|rho(x)|v>``; only the modulus is presentation-independent."""
    return cat.total_dim ** (g - 1) * matrix_element(cat, g, _word(word, g))


def normalized_tv(cat: Category, g: int, word) -> float:
    return abs(matrix_element(cat, g, _word(word, g))) ** 2


def tv_heegaard(cat: Category, g: int, word) -> float:
    return abs(wrt_heegaard(cat, g, word)) ** 2


@dataclass(frozen=True)
class InvariantResult:
    tv: float
    wrt: complex | None = None
    normalized_tv: float | None = None
    presentation: str = ""

    @property
    def wrt_modulus(self) -> float | None:
        return None if self.wrt is None else abs(self.wrt)


def heegaard_invariants(cat: Category, s: HeegaardSplitting) -> InvariantResult:
    me = matrix_element(cat, s.genus, s.word)
    wrt = cat.total_dim ** (s.genus - 1) * me
    return InvariantResult(
        tv=abs(wrt) ** 2,
        wrt=wrt,
        normalized_tv=abs(me) ** 2,
        presentation=f"heegaard g={s.genus} len={len(s.word)}",
    )


def triangulation_invariants(cat: Category, tri: Triangulation, method: str = "enumerate") -> InvariantResult:
    return InvariantResult(
        tv=tv_triangulation(cat, tri, method),
        presentation=f"triangulation tets={len(tri.tets)} vertices={tri.n_vertices}",
    )


# ---------------------------------------------------------------------------
# shipped manifolds and cross-checks

S3_WORD = "m1 l1 m1"


def lens_word(p: int) -> str:
    """Genus-1 word for L(p, 1): S, then p meridian twists, then S."""
    return " ".join([S3_WORD] + ["m1" if p > 0 else "m1^-1"] * abs(p) + [S3_WORD])


def lens_tv_formula(cat: Category, p: int) -> float:
    """``|sum_j S_0j^2 theta_j^p|^2`` from the modular data alone."""
    S = s_matrix(cat)
    theta = np.array([twist_phase(cat, j) for j in range(cat.rank)])
    return float(abs(np.sum(S[0, :] ** 2 * theta**p)) ** 2)


def corpus_dir() -> Path:
    return Path(__file__).with_name("corpus")


@dataclass(frozen=True)
class CorpusCheck:
    name: str
    value: float
    expected: float
    tol: float

    @property
    def passed(self) -> bool:
        return math.isfinite(self.value) and abs(self.value - self.expected) <= self.tol


def corpus_checks(cat: Category, tol: float = 1e-9) -> list[CorpusCheck]:
    """Compare every shipped presentation against its known TV value."""
    from .heegaard import read_splitting

    s3 = 1 / cat.total_dim**2
    checks = []
    for path in sorted(corpus_dir().glob("*.tri")):
        tri = read_triangulation(path)
        checks.append(CorpusCheck(f"tri:{path.stem}", tv_triangulation(cat, tri), s3, tol))
    for path in sorted(corpus_dir().glob("*.hs")):
        s = read_splitting(path)
        expected = _expected_heegaard(cat, path.stem)
        checks.append(CorpusCheck(f"heegaard:{path.stem}", heegaard_invariants(cat, s).tv, expected, tol))
    base = HeegaardSplitting.from_text(S3_WORD, 1)
    checks.append(CorpusCheck("heegaard:s3_stabilized_twice", heegaard_invariants(cat, stabilize(stabilize(base))).tv, s3, tol))
    return checks


def _expected_heegaard(cat: Category, stem: str) -> float:
    if stem.startswith("s3"):
        return 1 / cat.total_dim**2
    if stem.startswith("s2xs1"):
        return 1.0
    if stem.startswith("lens_"):
        p = int(stem.split("_")[1].split("-")[0])
        return lens_tv_formula(cat, p)
    raise ValueError(f"no reference value for corpus entry {stem!r}")
