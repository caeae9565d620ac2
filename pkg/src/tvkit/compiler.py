"""Compile qubit circuits into Dehn-twist words.

Qubit ``j`` of an ``n``-qubit circuit lives on handle ``j`` of the genus
``n + 1`` surface: its loop edge carries ``0`` for ``|0>`` and a fixed
nontrivial particle for ``|1>``, and every other edge carries ``0``.  The
last handle is a spare held at the vacuum.

A gate on adjacent qubits ``(i, i+1)`` is approximated by a word in the
five twists ``m_i, l_i, c_i, m_{i+1}, l_{i+1}``.  These preserve the
*two-handle space*: states whose labels vanish off the two handles and the
path joining them.  It contains the four code states plus leakage states
where the joining path carries a nontrivial label.

Search, per target:

1. meet-in-the-middle over pairs of short words (all distinct images of
   reduced words up to ``base_depth`` letters);
2. greedy descent, repeatedly multiplying on either side by the best
   element of a multiscale dictionary.  The dictionary holds near-identity
   elements: near-collisions from step 1, their conjugates by short words,
   and nested group commutators, whose distance to the identity shrinks
   geometrically with nesting depth.

The reported error is certified: ``min_phi || W P - e^{i phi} U P ||`` in
operator norm, where ``P`` projects onto the code states, evaluated on the
word's actual image.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

import numpy as np
from scipy.optimize import minimize_scalar

from .category import Category
from .heegaard import DehnGenerator, DehnWord, WordError
from .repspace import enumerate_basis, generator_matrix, standard_graph

GATES = {
    "CNOT": np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex),
    "CZ": np.diag([1, 1, 1, -1]).astype(complex),
    "SWAP": np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex),
    "H1": np.kron(np.array([[1, 1], [1, -1]]) / math.sqrt(2), np.eye(2)).astype(complex),
    "H2": np.kron(np.eye(2), np.array([[1, 1], [1, -1]]) / math.sqrt(2)).astype(complex),
}


class CircuitError(ValueError):
    """Malformed circuit or circuit file."""


class CompileBudgetError(RuntimeError):
    """The requested precision was not reached within the search budget."""

    def __init__(self, message: str, best_distance: float):
        super().__init__(message)
        self.best_distance = best_distance


# ---------------------------------------------------------------------------
# circuits


@dataclass(frozen=True)
class QubitCircuit:
    n: int
    gates: tuple[tuple[tuple[int, int], np.ndarray], ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise CircuitError(f"need at least one qubit, got {self.n}")
        for (a, b), U in self.gates:
            if not 1 <= a < b <= self.n:
                raise CircuitError(f"gate targets ({a},{b}) must satisfy 1 <= a < b <= {self.n}")
            if U.shape != (4, 4) or np.abs(U.conj().T @ U - np.eye(4)).max() > 1e-9:
                raise CircuitError(f"gate on ({a},{b}) is not a 4x4 unitary")

    def simulate(self) -> np.ndarray:
        """Final state from ``|0...0>``; qubit 1 is the most significant bit."""
        psi = np.zeros(2**self.n, dtype=complex)
        psi[0] = 1.0
        for (a, b), U in self.gates:
            t = psi.reshape([2] * self.n)
            t = np.moveaxis(t, (a - 1, b - 1), (0, 1))
            shape = t.shape
            t = (U @ t.reshape(4, -1)).reshape(shape)
            psi = np.moveaxis(t, (0, 1), (a - 1, b - 1)).reshape(-1)
        return psi

    def acceptance(self) -> float:
        """``|<0^n| circuit |0^n>|^2``."""
        return float(abs(self.simulate()[0]) ** 2)


def read_circuit(path) -> QubitCircuit:
    """Parse ``qubits: n`` then ``gate: a b [NAME]`` blocks (4 rows of 4 ``re,im`` pairs when unnamed)."""
    lines = [
        (k, raw.split("#", 1)[0].strip()) for k, raw in enumerate(Path(path).read_text().splitlines(), 1)
    ]
    lines = [(k, s) for k, s in lines if s]
    n, gates, pos = None, [], 0
    while pos < len(lines):
        lineno, line = lines[pos]
        key, sep, value = line.partition(":")
        where = f"{path}:{lineno}"
        if not sep:
            raise CircuitError(f"{where}: expected 'key: value'")
        key = key.strip()
        if key == "qubits":
            try:
                n = int(value)
            except ValueError:
                raise CircuitError(f"{where}: qubit count {value.strip()!r} is not an integer") from None
            pos += 1
        elif key == "gate":
            parts = value.split()
            if len(parts) not in (2, 3):
                raise CircuitError(f"{where}: expected 'gate: a b' or 'gate: a b NAME'")
            try:
                a, b = int(parts[0]), int(parts[1])
            except ValueError:
                raise CircuitError(f"{where}: gate targets must be integers") from None
            if len(parts) == 3:
                if parts[2] not in GATES:
                    raise CircuitError(f"{where}: unknown gate {parts[2]!r}; known: {', '.join(GATES)}")
                U = GATES[parts[2]]
                pos += 1
            else:
                rows = lines[pos + 1 : pos + 5]
                if len(rows) < 4:
                    raise CircuitError(f"{where}: gate needs 4 matrix rows")
                U = np.array([_parse_row(r, f"{path}:{k}") for k, r in rows])
                pos += 5
            if a > b:
                # reorder targets, conjugating the matrix by the qubit swap
                a, b = b, a
                U = GATES["SWAP"] @ U @ GATES["SWAP"]
            gates.append(((a, b), U))
        else:
            raise CircuitError(f"{where}: unknown field {key!r}")
    if n is None:
        raise CircuitError(f"{path}: missing 'qubits' line")
    return QubitCircuit(n, tuple(gates))


def _parse_row(text: str, where: str) -> list[complex]:
    nums = text.replace(",", " ").split()
    if len(nums) != 8:
        raise CircuitError(f"{where}: matrix row needs 4 complex entries as 8 numbers (re im pairs)")
    try:
        vals = [float(x) for x in nums]
    except ValueError:
        raise CircuitError(f"{where}: non-numeric matrix entry") from None
    return [complex(vals[2 * k], vals[2 * k + 1]) for k in range(4)]


# ---------------------------------------------------------------------------
# encoding and local images


def _check_qubit_particle(cat: Category, particle: int) -> int:
    if not 0 < particle < cat.rank:
        raise ValueError(f"qubit particle must be a nontrivial particle of {cat.name}, got {particle}")
    return particle


def encode_bits(cat: Category, z: str, particle: int = 1) -> tuple[int, ...]:
    """Labeling of the genus ``len(z) + 1`` standard graph encoding bitstring ``z``."""
    particle = _check_qubit_particle(cat, particle)
    if not z or set(z) - {"0", "1"}:
        raise ValueError(f"bitstring must be nonempty over {{0,1}}, got {z!r}")
    graph = standard_graph(len(z) + 1)
    labels = [0] * len(graph.edge_names)
    for i, bit in enumerate(z, 1):
        if bit == "1":
            labels[graph.edge(f"loop{i}")] = particle
    labels = tuple(labels)
    if labels not in set(enumerate_basis(cat, graph)):
        raise ValueError(f"particle {particle} does not give a fusion-consistent encoding")
    return labels


def local_generators(i: int) -> list[DehnGenerator]:
    return [
        DehnGenerator("m", i),
        DehnGenerator("l", i),
        DehnGenerator("c", i),
        DehnGenerator("m", i + 1),
        DehnGenerator("l", i + 1),
    ]


def _pair_path(g: int, i: int) -> list[str]:
    """Non-loop edges joining handle vertices ``L_i`` and ``L_{i+1}``."""
    if g == 2:
        return ["conn1"]
    first = "conn1" if i == 1 else f"stem{i}"
    last = f"conn{g - 1}" if i + 1 == g else f"stem{i + 1}"
    return list(dict.fromkeys([first, f"conn{i}", last]))


@dataclass(frozen=True, eq=False)
class LocalImages:
    """Images of the ten local letters on the two-handle space of pair ``(i, i+1)``."""

    genus: int
    pair: tuple[int, int]
    indices: tuple[int, ...]  # global basis positions, code states first
    n_code: int
    matrices: np.ndarray  # (10, d, d); letter 2k is generator k, 2k+1 its inverse
    generators: tuple[DehnGenerator, ...]

    @property
    def dim(self) -> int:
        return len(self.indices)

    def letter_word(self, letters) -> DehnWord:
        return DehnWord(tuple((self.generators[a // 2], -1 if a % 2 else 1) for a in letters), self.genus)


@lru_cache(maxsize=64)
def local_generator_images(cat: Category, g: int, pair: tuple[int, int], particle: int = 1) -> LocalImages:
    i, j = pair
    if j != i + 1 or not 1 <= i < g:
        raise ValueError(f"handle pair {pair} is not an adjacent pair at genus {g}")
    particle = _check_qubit_particle(cat, particle)
    graph = standard_graph(g)
    basis = enumerate_basis(cat, graph)
    keep = {graph.edge(f"loop{i}"), graph.edge(f"loop{j}")} | {graph.edge(e) for e in _pair_path(g, i)}
    sub = [k for k, lab in enumerate(basis) if all(lab[e] == 0 for e in range(len(lab)) if e not in keep)]
    li, lj = graph.edge(f"loop{i}"), graph.edge(f"loop{j}")
    code = []
    for bits in ((0, 0), (0, 1), (1, 0), (1, 1)):
        lab = [0] * len(graph.edge_names)
        lab[li], lab[lj] = bits[0] * particle, bits[1] * particle
        code.append(basis.index(tuple(lab)))
    indices = code + [k for k in sub if k not in code]
    gens = local_generators(i)
    mats = []
    for gen in gens:
        for exp in (1, -1):
            full = generator_matrix(cat, g, gen, exp)
            cols = full[:, indices].toarray()
            leak = np.abs(np.delete(cols, indices, axis=0)).max(initial=0.0)
            if leak > 1e-12:
                raise ArithmeticError(f"{gen}^{exp} leaks {leak:.3g} out of the two-handle space")
            mats.append(cols[indices, :])
    return LocalImages(g, pair, tuple(indices), 4, np.array(mats), tuple(gens))


# ---------------------------------------------------------------------------
# distances


def _code_target(target: np.ndarray, dim: int, n_code: int) -> np.ndarray:
    """Target restricted to code columns, as a ``dim x n_code`` matrix."""
    target = np.asarray(target, dtype=complex)
    if target.shape == (n_code, n_code):
        out = np.zeros((dim, n_code), dtype=complex)
        out[:n_code] = target
        return out
    if target.shape == (dim, dim):
        return target[:, :n_code]
    if target.shape == (dim, n_code):
        return target
    raise ValueError(f"target must be {n_code}x{n_code} or {dim}x{dim}, got {target.shape}")


def codespace_distance(W: np.ndarray, target: np.ndarray, n_code: int = 4) -> float:
    """``min_phi || W[:, code] - e^{i phi} T[:, code] ||_2`` (operator norm)."""
    D = W[:, :n_code]
    T = _code_target(target, W.shape[0], n_code)

    def f(phi: float) -> float:
        return float(np.linalg.norm(D - np.exp(1j * phi) * T, 2))

    grid = np.linspace(0, 2 * math.pi, 181)
    vals = [f(p) for p in grid]
    k = int(np.argmin(vals))
    step = grid[1] - grid[0]
    res = minimize_scalar(f, bounds=(grid[k] - step, grid[k] + step), method="bounded", options={"xatol": 1e-12})
    return min(vals[k], float(res.fun))


# ---------------------------------------------------------------------------
# search


@dataclass(frozen=True)
class CompilerConfig:
    base_depth: int = 5  # letters per side of the meet-in-the-middle search
    n_seeds: int = 80  # closest non-trivial collisions kept as near-identity seeds
    conjugate_depth: int = 2
    levels: int = 6  # nested-commutator depth
    per_level: int = 4000
    max_steps: int = 500
    max_length: int = 100_000
    seed: int = 0


_INV = np.array([1, 0, 3, 2, 5, 4, 7, 6, 9, 8])


def _inverse(word: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(int(_INV[a]) for a in reversed(word))


def _reduce(word) -> tuple[int, ...]:
    """Cancel adjacent letter/inverse pairs."""
    out: list[int] = []
    for a in word:
        if out and _INV[a] == out[-1]:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def _image(mats: np.ndarray, word) -> np.ndarray:
    W = np.eye(mats.shape[1], dtype=complex)
    for a in word:
        W = mats[a] @ W
    return W


def _proj_key(W: np.ndarray, R: np.ndarray) -> bytes:
    t = np.trace(W @ R)
    Z = W * (np.conj(t) / abs(t))
    return np.round(Z, 7).tobytes()


@dataclass(eq=False)
class SearchTables:
    """Word tables shared by every target compiled over the same local images."""

    mats: np.ndarray
    n_code: int
    config: CompilerConfig
    words: list = field(default_factory=list)
    images: np.ndarray = None
    dict_words: list = field(default_factory=list)
    dict_images: np.ndarray = None

    def __post_init__(self):
        self._enumerate()
        self._dictionary()

    def _enumerate(self) -> None:
        d = self.mats.shape[1]
        R = np.random.default_rng(12345).normal(size=(d, d)) + 1j * np.random.default_rng(54321).normal(size=(d, d))
        seen = {_proj_key(np.eye(d, dtype=complex), R)}
        words, images = [()], [np.eye(d, dtype=complex)]
        frontier = [((), np.eye(d, dtype=complex))]
        for _ in range(self.config.base_depth):
            nxt = []
            for w, W in frontier:
                for a in range(len(self.mats)):
                    if w and _INV[a] == w[-1]:
                        continue
                    V = self.mats[a] @ W
                    key = _proj_key(V, R)
                    if key in seen:
                        continue
                    seen.add(key)
                    nxt.append((w + (a,), V))
            frontier = nxt
            words += [w for w, _ in nxt]
            images += [W for _, W in nxt]
        self.words = words
        self.images = np.array(images)

    def _pairs(self, score_fn, k: int, chunk: int = 400):
        """Best ``k`` (A, B) index pairs for the product ``B A`` under ``score_fn``."""
        n, d = len(self.images), self.mats.shape[1]
        flat = self.images.reshape(n, d * d)
        best = []
        for s in range(0, n, chunk):
            S = score_fn(self.images[s : s + chunk], flat)
            top = np.argpartition(S.ravel(), -k)[-k:] if S.size > k else np.arange(S.size)
            for t in top:
                a, b = divmod(int(t), n)
                best.append((float(S[a, b]), s + a, b))
        best.sort(reverse=True)
        return best[:k]

    def _dictionary(self) -> None:
        cfg = self.config
        d = self.mats.shape[1]
        n = len(self.images)
        flat = self.images.reshape(n, d * d)
        # the closest non-trivial collisions B A ~ I become near-identity seeds
        cands = []
        for s in range(0, n, 400):
            A = self.images[s : s + 400]
            F = np.abs(np.transpose(A, (0, 2, 1)).reshape(len(A), d * d) @ flat.T)
            dist = np.sqrt(np.maximum(2 * d - 2 * F, 0)).ravel()
            dist[dist < 1e-6] = np.inf
            top = np.argpartition(dist, cfg.n_seeds)[: cfg.n_seeds] if dist.size > cfg.n_seeds else np.arange(dist.size)
            for t in top:
                if np.isfinite(dist[t]):
                    a, b = divmod(int(t), n)
                    cands.append((float(dist[t]), s + a, b))
        cands.sort()
        seeds = [self.words[a] + self.words[b] for _, a, b in cands[: cfg.n_seeds]]
        if not seeds:
            raise CompileBudgetError("no near-identity elements found; increase base_depth", math.inf)
        conj = [(w, W) for w, W in zip(self.words, self.images) if len(w) <= cfg.conjugate_depth]
        level0 = {}
        for s_ in seeds:
            S = _image(self.mats, s_)
            for e, E in ((s_, S), (_inverse(s_), S.conj().T)):
                for c, C in conj:
                    # apply c^-1, then e, then c
                    level0.setdefault(_inverse(c) + e + c, C @ E @ C.conj().T)
        level0 = list(level0.items())
        rng = np.random.default_rng(cfg.seed)
        entries = list(level0)
        prev = level0
        for _ in range(cfg.levels):
            new = []
            for _ in range(cfg.per_level):
                a, A = level0[rng.integers(len(level0))]
                b, B = prev[rng.integers(len(prev))]
                # operator A B A^-1 B^-1
                new.append((_inverse(b) + _inverse(a) + b + a, A @ B @ A.conj().T @ B.conj().T))
            entries += new
            prev = new
        imgs = np.array([E for _, E in entries])
        # drop elements that are projectively the identity
        size = np.sqrt(np.maximum(2 * d - 2 * np.abs(np.trace(imgs, axis1=1, axis2=2)), 0))
        keep = size > 1e-9
        self.dict_words = [w for (w, _), k in zip(entries, keep) if k]
        self.dict_images = imgs[keep]

    def search(self, target: np.ndarray, eps: float):
        """Return ``(letters, image, certified_distance)``."""
        cfg = self.config
        d, nc = self.mats.shape[1], self.n_code
        T = _code_target(target, d, nc)
        Tdag = T.conj().T

        def score(A, flat):
            M = A[:, :, :nc] @ Tdag  # (k, d, d)
            return np.abs(np.transpose(M, (0, 2, 1)).reshape(len(A), d * d) @ flat.T)

        # relations tie with shorter words at the same image, so always offer
        # the empty word and the best single table words as well
        single = score(self.images[:1], self.images.reshape(len(self.images), d * d))[0]
        singles = [(0.0, 0, 0)] + [(0.0, 0, int(b)) for b in np.argsort(-single)[:4]]
        best = None
        for _, a, b in singles + self._pairs(score, 16):
            W = self.images[b] @ self.images[a]
            dist = codespace_distance(W, T, nc)
            word = _reduce(self.words[a] + self.words[b])
            if best is None or (round(dist, 12), len(word)) < (round(best[2], 12), len(best[0])):
                best = (word, W, dist)
        word, W, dist = best
        if dist <= eps:
            return best
        E, Ec = self.dict_images, self.dict_images[:, :, :nc]
        for _ in range(cfg.max_steps):
            cur = abs(np.trace(Tdag @ W[:, :nc]))
            fa = np.abs(np.einsum("kab,ba->k", E, W[:, :nc] @ Tdag))
            fp = np.abs(np.einsum("ab,kba->k", Tdag @ W, Ec))
            ka, kp = int(fa.argmax()), int(fp.argmax())
            if max(fa[ka], fp[kp]) <= cur + 1e-13:
                break
            if fa[ka] >= fp[kp]:
                W, word = E[ka] @ W, _reduce(word + self.dict_words[ka])
            else:
                W, word = W @ E[kp], _reduce(self.dict_words[kp] + word)
            if len(word) > cfg.max_length:
                break
            frob = math.sqrt(max(2 * nc - 2 * abs(np.trace(Tdag @ W[:, :nc])), 0.0))
            if frob <= 2 * eps:
                dist = codespace_distance(W, T, nc)
                if dist < best[2]:
                    best = (word, W, dist)
                if dist <= eps:
                    break
        # certify on the exact product of the final word
        word = best[0]
        W = _image(self.mats, word)
        return word, W, codespace_distance(W, T, nc)


_TABLES: dict = {}


def _tables(images: LocalImages, config: CompilerConfig) -> SearchTables:
    key = (np.round(images.matrices, 12).tobytes(), images.n_code, config)
    if key not in _TABLES:
        _TABLES[key] = SearchTables(images.matrices, images.n_code, config)
    return _TABLES[key]


@dataclass(frozen=True)
class GateApproximation:
    word: DehnWord
    distance: float


def _density_warning(cat: Category) -> None:
    fam, k = cat.meta.get("family"), cat.meta.get("level")
    if fam == "fibonacci":
        return
    if fam not in ("su2", "so3") or k is None:
        warnings.warn(f"{cat.name}: density of the generated group is not known; search may fail", stacklevel=3)
    elif k < 3 or (fam == "su2" and k == 4):
        warnings.warn(f"{cat.name}: level {k} has a finite image; only finitely many gates are reachable", stacklevel=3)
    elif any((k + 2) % p == 0 for p in range(2, int(math.isqrt(k + 2)) + 1)):
        warnings.warn(f"{cat.name}: k+2 = {k + 2} is not prime; density is not guaranteed", stacklevel=3)


def sk_compile(
    cat: Category,
    g: int,
    pair: tuple[int, int],
    target: np.ndarray,
    eps: float,
    config: CompilerConfig = CompilerConfig(),
    particle: int = 1,
) -> GateApproximation:
    """Word in the local twists of ``pair`` whose code block is within ``eps`` of ``target``."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    _density_warning(cat)
    images = local_generator_images(cat, g, tuple(pair), particle)
    letters, W, dist = _tables(images, config).search(target, eps)
    if dist > eps:
        raise CompileBudgetError(f"reached distance {dist:.4g} > eps {eps:.4g} within the search budget", dist)
    return GateApproximation(images.letter_word(letters), dist)


# ---------------------------------------------------------------------------
# whole circuits


@dataclass(frozen=True)
class CompilationResult:
    genus: int
    word: DehnWord
    gate_errors: tuple[float, ...]
    per_gate_error: float  # requested precision per gate
    total_error_bound: float  # sum of certified per-gate operator errors

    @property
    def probability_error_bound(self) -> float:
        """Bound on ``| normalized_tv - |<0|U|0>|^2 |``."""
        s = self.total_error_bound
        return 2 * s + s * s

    @property
    def length(self) -> int:
        return len(self.word)


def reduce_circuit(
    cat: Category,
    circuit: QubitCircuit,
    eps_per_gate: float | None = None,
    config: CompilerConfig = CompilerConfig(),
    particle: int = 1,
) -> CompilationResult:
    """Word at genus ``n + 1`` with ``normalized_tv`` within the bound of the acceptance probability."""
    g = circuit.n + 1
    n_gates = len(circuit.gates)
    eps = eps_per_gate if eps_per_gate is not None else (1 / (6 * n_gates) if n_gates else 1.0)
    cache: dict = {}

    def compiled(i: int, U: np.ndarray) -> GateApproximation:
        key = (i, np.round(U, 12).tobytes())
        if key not in cache:
            if np.abs(U - U[0, 0] * np.eye(4)).max() < 1e-12 and abs(abs(U[0, 0]) - 1) < 1e-12:
                cache[key] = GateApproximation(DehnWord((), g), 0.0)
            else:
                cache[key] = sk_compile(cat, g, (i, i + 1), U, eps, config, particle)
        return cache[key]

    letters: tuple = ()
    errors = []
    for (a, b), U in circuit.gates:
        # bring qubit b next to qubit a, apply, then undo
        route = list(range(b - 1, a, -1))
        for s in route:
            ga = compiled(s, GATES["SWAP"])
            letters += ga.word.letters
            errors.append(ga.distance)
        ga = compiled(a, U)
        letters += ga.word.letters
        errors.append(ga.distance)
        for s in reversed(route):
            ga = compiled(s, GATES["SWAP"])
            letters += ga.word.letters
            errors.append(ga.distance)
    return CompilationResult(g, DehnWord(letters, g), tuple(errors), eps, float(sum(errors)))


def word_codespace_image(cat: Category, word: DehnWord, pair: tuple[int, int], particle: int = 1) -> np.ndarray:
    """Image of a local word on the two-handle space (code states first)."""
    images = local_generator_images(cat, word.genus, tuple(pair), particle)
    gens = list(images.generators)
    W = np.eye(images.dim, dtype=complex)
    for gen, exp in word.letters:
        if gen not in gens:
            raise WordError(f"letter {gen} is not local to handles {pair}")
        W = images.matrices[2 * gens.index(gen) + (exp < 0)] @ W
    return W


def net_distances(
    cat: Category,
    g: int,
    pair: tuple[int, int],
    targets,
    half_depth: int = 6,
    particle: int = 1,
    candidates: int = 64,
    chunk: int = 512,
) -> list[GateApproximation]:
    """Closest word of length ``<= 2 * half_depth`` to each code-block target.

    Every word splits as ``A`` then ``B`` with both halves of length at most
    ``half_depth``.  Pairs are ranked by the phase-invariant Frobenius overlap
    ``|<A_code, B^dag U>|``; the top ``candidates`` per target are then scored
    by the certified operator distance.
    """
    images = local_generator_images(cat, g, tuple(pair), particle)
    tables = object.__new__(SearchTables)
    tables.mats, tables.n_code = images.matrices, images.n_code
    tables.config = CompilerConfig(base_depth=half_depth)
    tables._enumerate()
    words, imgs = tables.words, tables.images
    n, d, c = len(imgs), images.dim, images.n_code
    left = np.ascontiguousarray(imgs[:, :, :c].reshape(n, d * c)).astype(np.complex64)
    out = []
    for U in targets:
        T = _code_target(np.asarray(U, dtype=complex), d, c)
        right = (np.conj(np.transpose(imgs, (0, 2, 1))) @ T).reshape(n, d * c).astype(np.complex64)
        best: list[tuple[float, int, int]] = []
        for s in range(0, n, chunk):
            ov = np.abs(np.conj(right[s : s + chunk]) @ left.T)
            k = min(candidates, ov.size)
            for t in np.argpartition(ov.ravel(), -k)[-k:]:
                b, a = divmod(int(t), n)
                best.append((float(ov.ravel()[t]), a, s + b))
            best = sorted(best, reverse=True)[:candidates]
        scored = []
        for _, a, b in best:
            W = imgs[b] @ imgs[a]
            scored.append((codespace_distance(W, T, c), a, b))
        dist, a, b = min(scored)
        out.append(GateApproximation(images.letter_word(_reduce(words[a] + words[b])), dist))
    return out
