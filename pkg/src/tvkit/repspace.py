"""The space H_{C,g} and the projective mapping-class-group action on it.

A basis vector is a fusion-consistent labeling of the edges of a trivalent
graph dual to a pants decomposition.  Vertices store their three half-edges
in cyclic order; a half-edge is ``(edge, end)`` with ``end = 1`` at the head
of the edge and ``0`` at its tail.  The charge flowing *into* a vertex along
a half-edge is the edge label at the head and its dual at the tail, and a
vertex is consistent when its three incoming charges fuse to the vacuum.

Standard graph at genus ``g >= 2`` (handles ``L_1..L_g``, spine ``T_2..T_{g-1}``)::

    loop1      loop2            loop<g>
     (L1)--conn1--(T2)--conn2-- ... --(L<g>)
                   |
                 stem2
                   |
                  (L2)

Each handle vertex ``L_i`` carries the self-loop ``loop<i>`` whose dual
curve is the meridian ``m<i>``.  At genus 1 the graph is a single loop with
no vertex.

The Dehn twist about a generator is computed by moving to a graph in which
its curve is dual to an edge (F moves for ``c<i>``, the S move for
``l<i>``), multiplying by twist phases, and moving back.  Words act left to
right: the leftmost letter is applied to the state first.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np
import scipy.sparse as sp

from .category import Category, s_symbol, twist_phase
from .heegaard import DehnGenerator, DehnWord, WordError, parse_word

HalfEdge = tuple[int, int]


class GraphError(ValueError):
    """A move was requested on an edge or graph where it is undefined."""


def _canonical(triple: tuple[HalfEdge, ...]) -> tuple[HalfEdge, ...]:
    k = triple.index(min(triple))
    return triple[k:] + triple[:k]


def _rotate_to(triple: tuple[HalfEdge, ...], h: HalfEdge) -> tuple[HalfEdge, ...]:
    k = triple.index(h)
    return triple[k:] + triple[:k]


@dataclass(frozen=True)
class PantsGraph:
    genus: int
    edge_names: tuple[str, ...]
    vertices: tuple[tuple[HalfEdge, HalfEdge, HalfEdge], ...]

    @cached_property
    def position(self) -> dict[HalfEdge, int]:
        """Vertex holding each half-edge."""
        return {h: v for v, triple in enumerate(self.vertices) for h in triple}

    def edge(self, e) -> int:
        if isinstance(e, str):
            try:
                return self.edge_names.index(e)
            except ValueError:
                raise GraphError(f"no edge named {e!r}") from None
        if not 0 <= e < len(self.edge_names):
            raise GraphError(f"edge index {e} out of range")
        return int(e)

    def endpoints(self, e) -> tuple[int | None, int | None]:
        e = self.edge(e)
        return self.position.get((e, 0)), self.position.get((e, 1))

    def is_loop(self, e) -> bool:
        t, h = self.endpoints(e)
        return t == h

    def betti(self) -> int:
        if not self.vertices:
            return len(self.edge_names)
        return len(self.edge_names) - len(self.vertices) + 1

    def validate(self) -> None:
        halves = sorted(h for triple in self.vertices for h in triple)
        if self.vertices and halves != [(e, end) for e in range(len(self.edge_names)) for end in (0, 1)]:
            raise GraphError("every edge must have exactly one head and one tail")
        if any(len(t) != 3 for t in self.vertices):
            raise GraphError("graph is not trivalent")
        if self.vertices:
            seen, todo = {0}, [0]
            while todo:
                v = todo.pop()
                for e, end in self.vertices[v]:
                    w = self.position[(e, 1 - end)]
                    if w not in seen:
                        seen.add(w)
                        todo.append(w)
            if len(seen) != len(self.vertices):
                raise GraphError("graph is disconnected")
        if self.betti() != self.genus:
            raise GraphError(f"first Betti number {self.betti()} != genus {self.genus}")


@lru_cache(maxsize=None)
def standard_graph(g: int) -> PantsGraph:
    """Caterpillar graph: loops, then connecting path ``conn1..conn<g-1>``, then inner stems."""
    if g < 1:
        raise GraphError(f"genus must be >= 1, got {g}")
    if g == 1:
        return PantsGraph(1, ("loop1",), ())
    names = [f"loop{i}" for i in range(1, g + 1)]
    names += [f"conn{i}" for i in range(1, g)]
    names += [f"stem{i}" for i in range(2, g)]
    ix = {n: k for k, n in enumerate(names)}
    verts = []
    for i in range(1, g + 1):
        if i == 1:
            parent = (ix["conn1"], 0)
        elif i == g:
            parent = (ix[f"conn{g - 1}"], 1)
        else:
            parent = (ix[f"stem{i}"], 0)
        loop = ix[f"loop{i}"]
        verts.append((parent, (loop, 1), (loop, 0)))
    for m in range(2, g):
        verts.append(((ix[f"conn{m}"], 0), (ix[f"conn{m - 1}"], 1), (ix[f"stem{m}"], 1)))
    graph = PantsGraph(g, tuple(names), tuple(_canonical(t) for t in verts))
    graph.validate()
    return graph


def _incoming(cat: Category, labels, h: HalfEdge) -> int:
    lab = labels[h[0]]
    return lab if h[1] == 1 else cat.duals[lab]


def vertex_consistent(cat: Category, labels, triple) -> bool:
    x1, x2, x3 = (_incoming(cat, labels, h) for h in triple)
    return (x1, x2, cat.duals[x3]) in cat.fusion


def is_consistent(cat: Category, graph: PantsGraph, labels) -> bool:
    return all(vertex_consistent(cat, labels, t) for t in graph.vertices)


@lru_cache(maxsize=256)
def _basis(cat: Category, graph: PantsGraph) -> tuple[tuple[int, ...], ...]:
    n_edges = len(graph.edge_names)
    # check each vertex as soon as its last edge is assigned
    ready: list[list] = [[] for _ in range(n_edges)]
    for triple in graph.vertices:
        ready[max(e for e, _ in triple)].append(triple)
    out = []
    labels = [0] * n_edges

    def extend(e: int) -> None:
        if e == n_edges:
            out.append(tuple(labels))
            return
        for a in range(cat.rank):
            labels[e] = a
            if all(vertex_consistent(cat, labels, t) for t in ready[e]):
                extend(e + 1)

    extend(0)
    return tuple(out)


def enumerate_basis(cat: Category, graph: PantsGraph) -> list[tuple[int, ...]]:
    """All fusion-consistent labelings, lexicographic in the graph's edge order."""
    return list(_basis(cat, graph))


@lru_cache(maxsize=256)
def _index(cat: Category, graph: PantsGraph) -> dict[tuple[int, ...], int]:
    return {lab: k for k, lab in enumerate(_basis(cat, graph))}


@dataclass(frozen=True, eq=False)
class StateVector:
    cat: Category
    graph: PantsGraph
    amps: np.ndarray

    @property
    def basis(self) -> tuple[tuple[int, ...], ...]:
        return _basis(self.cat, self.graph)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def amplitude(self, labels) -> complex:
        k = _index(self.cat, self.graph).get(tuple(labels))
        return 0j if k is None else complex(self.amps[k])

    def inner(self, other: StateVector) -> complex:
        if other.graph != self.graph:
            raise GraphError("states live on different graphs")
        return complex(np.vdot(self.amps, other.amps))


def basis_state(cat: Category, graph: PantsGraph, labels) -> StateVector:
    idx = _index(cat, graph)
    labels = tuple(labels)
    if labels not in idx:
        raise GraphError(f"labeling {labels} is not fusion-consistent on this graph")
    amps = np.zeros(len(idx), dtype=complex)
    amps[idx[labels]] = 1.0
    return StateVector(cat, graph, amps)


def vacuum(cat: Category, g: int) -> StateVector:
    graph = standard_graph(g)
    return basis_state(cat, graph, (0,) * len(graph.edge_names))


# ---------------------------------------------------------------------------
# elementary moves as sparse operators (new basis x old basis)


def _f_move(cat: Category, graph: PantsGraph, e: int, inverse: bool):
    u, v = graph.endpoints(e)
    if u == v:
        raise GraphError(f"edge {graph.edge_names[e]!r} is a loop; the F move needs two distinct vertices")
    _, a1, a2 = _rotate_to(graph.vertices[u], (e, 0))
    _, b1, b2 = _rotate_to(graph.vertices[v], (e, 1))
    if not inverse:
        # region legs in cyclic order x1 x2 y1 y2; regroup (x2 y1 | y2 x1)
        x1, x2, y1, y2 = a1, a2, b1, b2
        new_u, new_v = ((e, 0), x2, y1), ((e, 1), y2, x1)
    else:
        # undo: current u = (e, x2, y1), v = (e, y2, x1)
        x2, y1, y2, x1 = a1, a2, b1, b2
        new_u, new_v = ((e, 0), x1, x2), ((e, 1), y1, y2)
    verts = list(graph.vertices)
    verts[u], verts[v] = _canonical(new_u), _canonical(new_v)
    new_graph = PantsGraph(graph.genus, graph.edge_names, tuple(verts))

    old_basis = _basis(cat, graph)
    new_index = _index(cat, new_graph)
    F, duals = cat.F, cat.duals
    rows, cols, vals = [], [], []
    for col, labels in enumerate(old_basis):
        A, B = _incoming(cat, labels, x1), _incoming(cat, labels, x2)
        C, D = _incoming(cat, labels, y1), duals[_incoming(cat, labels, y2)]
        cur = labels[e]
        lab = list(labels)
        for new in range(cat.rank):
            coeff = F[A, B, cur, C, D, new] if not inverse else np.conj(F[A, B, new, C, D, cur])
            if coeff == 0:
                continue
            lab[e] = new
            row = new_index.get(tuple(lab))
            if row is None:
                raise GraphError("F move produced an inconsistent labeling; category data is invalid")
            rows.append(row)
            cols.append(col)
            vals.append(coeff)
    op = sp.csr_matrix((vals, (rows, cols)), shape=(len(new_index), len(old_basis)), dtype=complex)
    return new_graph, op


def _s_move(cat: Category, graph: PantsGraph, e: int, inverse: bool):
    basis = _basis(cat, graph)
    index = _index(cat, graph)
    if graph.vertices:
        u, v = graph.endpoints(e)
        if u != v:
            raise GraphError(
                f"edge {graph.edge_names[e]!r} is not a self-loop; F-move the handle into self-connected form first"
            )
        (third,) = [h for h in graph.vertices[u] if h[0] != e]
    else:
        third = None
    n = cat.rank
    smats = {}
    rows, cols, vals = [], [], []
    for col, labels in enumerate(basis):
        i = 0 if third is None else _incoming(cat, labels, third)
        if i not in smats:
            S = np.array([[s_symbol(cat, i, j, k) for k in range(n)] for j in range(n)])
            smats[i] = S.conj().T if inverse else S
        S = smats[i]
        j = labels[e]
        lab = list(labels)
        for k in range(n):
            coeff = S[j, k]
            if coeff == 0:
                continue
            lab[e] = k
            row = index.get(tuple(lab))
            if row is None:
                if abs(coeff) > 1e-12:
                    raise GraphError("S move left the fusion-consistent subspace")
                continue
            rows.append(row)
            cols.append(col)
            vals.append(coeff)
    return graph, sp.csr_matrix((vals, (rows, cols)), shape=(len(basis), len(basis)), dtype=complex)


def _twist(cat: Category, graph: PantsGraph, e: int, exponent: int):
    phases = np.array([twist_phase(cat, a) for a in range(cat.rank)]) ** exponent
    diag = np.array([phases[labels[e]] for labels in _basis(cat, graph)])
    return graph, sp.diags(diag, format="csr")


def apply_f_move(state: StateVector, edge, inverse: bool = False) -> StateVector:
    """Flip a non-loop edge; ``inverse=True`` undoes a previous flip of the same edge."""
    graph, op = _f_move(state.cat, state.graph, state.graph.edge(edge), inverse)
    return StateVector(state.cat, graph, op @ state.amps)


def apply_s_move(state: StateVector, edge, inverse: bool = False) -> StateVector:
    graph, op = _s_move(state.cat, state.graph, state.graph.edge(edge), inverse)
    return StateVector(state.cat, graph, op @ state.amps)


def apply_twist(state: StateVector, edge, exponent: int = 1) -> StateVector:
    graph, op = _twist(state.cat, state.graph, state.graph.edge(edge), exponent)
    return StateVector(state.cat, graph, op @ state.amps)


# ---------------------------------------------------------------------------
# Dehn-twist generators


def _c_flip_path(g: int, i: int) -> tuple[list[str], str]:
    """F-move sequence making the dual edge of ``c<i>`` appear, and that edge."""
    if g == 2:
        return ["conn1"], "conn1"
    if i == 1:
        return ["conn1", "stem2"], "stem2"
    if i == g - 1:
        return [f"stem{g - 1}", f"conn{g - 1}"], f"conn{g - 1}"
    return [f"stem{i}", f"conn{i}", f"stem{i + 1}"], f"stem{i + 1}"


def _generator_operator(cat: Category, g: int, gen: DehnGenerator, exponent: int):
    graph = standard_graph(g)
    if not gen.valid_at(g):
        raise WordError(f"generator {gen} out of range for genus {g}")
    if gen.kind == "m":
        return _twist(cat, graph, graph.edge(f"loop{gen.index}"), exponent)[1]
    if gen.kind == "l":
        e = graph.edge(f"loop{gen.index}")
        _, s = _s_move(cat, graph, e, False)
        _, t = _twist(cat, graph, e, exponent)
        _, s_inv = _s_move(cat, graph, e, True)
        return s_inv @ t @ s
    path, target = _c_flip_path(g, gen.index)
    fwd, cur = None, graph
    for name in path:
        cur, op = _f_move(cat, cur, cur.edge(name), False)
        fwd = op if fwd is None else op @ fwd
    e = cur.edge(target)
    # the new edge must separate the B end of loop i together with the A end of loop i+1
    t_v, h_v = cur.endpoints(e)
    near = {cur.position[(cur.edge(f"loop{gen.index}"), 0)], cur.position[(cur.edge(f"loop{gen.index + 1}"), 1)]}
    if len(near) != 1 or near.pop() not in (t_v, h_v):
        raise GraphError(f"flip path for {gen} did not expose its curve")
    _, t = _twist(cat, cur, e, exponent)
    out = t @ fwd
    for name in reversed(path):
        cur, op = _f_move(cat, cur, cur.edge(name), True)
        out = op @ out
    if cur != graph:
        raise GraphError("undoing the flips did not return to the standard graph")
    return out.tocsr()


@lru_cache(maxsize=None)
def generator_matrix(cat: Category, g: int, gen: DehnGenerator, exponent: int = 1) -> sp.csr_matrix:
    """Sparse matrix of the twist ``gen^exponent`` in the standard basis at genus ``g``."""
    if exponent not in (1, -1):
        raise WordError(f"exponent must be +1 or -1, got {exponent}")
    op = _generator_operator(cat, g, gen, exponent)
    op.eliminate_zeros()
    return op


def _require_standard(state: StateVector) -> None:
    if state.graph != standard_graph(state.graph.genus):
        raise GraphError("generators act on states over the standard graph")


def apply_generator(state: StateVector, gen: DehnGenerator, exponent: int = 1) -> StateVector:
    _require_standard(state)
    op = generator_matrix(state.cat, state.graph.genus, gen, exponent)
    return StateVector(state.cat, state.graph, op @ state.amps)


def _as_word(word, g: int) -> DehnWord:
    if isinstance(word, str):
        return parse_word(word, g)
    if word.genus != g:
        raise WordError(f"word has genus {word.genus}, expected {g}")
    return word


def apply_word(state: StateVector, word) -> StateVector:
    """Apply letters left to right (the first letter acts first)."""
    _require_standard(state)
    g = state.graph.genus
    word = _as_word(word, g)
    amps = state.amps
    for gen, exp in word.letters:
        amps = generator_matrix(state.cat, g, gen, exp) @ amps
    return StateVector(state.cat, state.graph, amps)


def word_matrix(cat: Category, g: int, word) -> np.ndarray:
    """Dense matrix of the whole word in the standard basis."""
    word = _as_word(word, g)
    dim = len(_basis(cat, standard_graph(g)))
    out = np.eye(dim, dtype=complex)
    for gen, exp in word.letters:
        out = generator_matrix(cat, g, gen, exp) @ out
    return out


def matrix_element(cat: Category, g: int, word) -> complex:
    """``<v| rho(word) |v>`` for the handlebody vacuum ``|v>``."""
    v = vacuum(cat, g)
    return v.inner(apply_word(v, _as_word(word, g)))


def _phase_residual(A: np.ndarray, B: np.ndarray) -> float:
    """``min_phi ||A - e^{i phi} B||_max`` evaluated at the phase fixed by the overlap."""
    ov = np.vdot(B, A)
    phase = ov / abs(ov) if abs(ov) > 1e-300 else 1.0
    return float(np.abs(A - phase * B).max())


@dataclass(frozen=True)
class RelationReport:
    genus: int
    commutation: float  # worst residual over disjoint pairs, exact
    braid: float  # worst residual over once-intersecting pairs, up to phase
    unitarity: float

    def ok(self, tol: float = 1e-6) -> bool:
        return max(self.commutation, self.braid, self.unitarity) <= tol


def relation_residuals(cat: Category, g: int) -> RelationReport:
    """Check commutation and braid relations of the Lickorish generators as dense operators."""
    from .heegaard import generators, intersection_number

    gens = generators(g)
    mats = {x: generator_matrix(cat, g, x).toarray() for x in gens}
    eye = np.eye(next(iter(mats.values())).shape[0])
    uni = max(float(np.abs(M.conj().T @ M - eye).max()) for M in mats.values())
    comm = braid = 0.0
    for i, a in enumerate(gens):
        for b in gens[i + 1:]:
            A, B = mats[a], mats[b]
            if intersection_number(a, b) == 0:
                comm = max(comm, float(np.abs(A @ B - B @ A).max()))
            else:
                braid = max(braid, _phase_residual(A @ B @ A, B @ A @ B))
    return RelationReport(g, comm, braid, uni)
