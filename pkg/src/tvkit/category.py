"""Multiplicity-free unitary modular tensor categories.

Symbols are stored as dense complex arrays indexed by particle id:

* ``F[i, j, m, k, l, n]`` is the six-index symbol ``F^{ijm}_{kln}``.  In the
  usual fusion-tree language it is the matrix element ``[F^{ijk}_l]_{mn}`` of
  the move ``((i j)_m k)_l -> (i (j k)_n)_l``, so the admissible triples are
  ``(i,j,m)``, ``(m,k,l)``, ``(j,k,n)`` and ``(i,n,l)``.
* ``R[i, j, k]`` is the braiding phase ``R^{jk}_i`` for the channel
  ``i`` in ``j x k``.

Entries for inadmissible labels are exactly zero.

Built-in SU(2)_k data uses the unitary q-6j gauge with
``q = exp(i pi / (k + 2))``:
``[F^{abc}_d]_{ef} = (-1)^{a+b+c+d} sqrt([2e+1][2f+1]) {a b e; c d f}_q`` and
``R^{ab}_c = (-1)^{c-a-b} q^{c(c+1) - a(a+1) - b(b+1)}`` (spins, not twice-spins).
With this orientation the twist phase of spin ``j`` is
``R^{jj}_0 = (-1)^{2j} exp(-2 pi i j(j+1)/(k+2))``; for the Fibonacci
restriction ``R^{11}_0 = exp(-4 pi i / 5)``.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from pathlib import Path

import numpy as np

AXIOM_TOL = 1e-9


class CategoryError(ValueError):
    """Raised for malformed category data or invalid particle indices."""


@dataclass(frozen=True)
class Particle:
    id: int
    qdim: float
    dual: int
    label: str = ""


@dataclass(frozen=True, eq=False)
class Category:
    name: str
    particles: tuple[Particle, ...]
    fusion: frozenset[tuple[int, int, int]]
    F: np.ndarray
    R: np.ndarray
    total_dim: float = field(default=0.0)
    # family metadata, e.g. {"family": "su2", "level": 3, "twice_spin": (0, 1, 2, 3)}
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.total_dim == 0.0:
            object.__setattr__(self, "total_dim", math.sqrt(sum(p.qdim**2 for p in self.particles)))
        for arr in (self.F, self.R):
            arr.setflags(write=False)

    @property
    def rank(self) -> int:
        return len(self.particles)

    @property
    def qdims(self) -> np.ndarray:
        return np.array([p.qdim for p in self.particles])

    @cached_property
    def duals(self) -> tuple[int, ...]:
        return tuple(p.dual for p in self.particles)

    @cached_property
    def N(self) -> np.ndarray:
        """Fusion tensor ``N[i, j, k] = 1`` iff ``k`` appears in ``i x j``."""
        n = np.zeros((self.rank,) * 3, dtype=int)
        for t in self.fusion:
            n[t] = 1
        return n

    def admissible(self, i: int, j: int, k: int) -> bool:
        return (i, j, k) in self.fusion

    def dual(self, i: int) -> int:
        return self.particles[self.check(i)].dual

    def is_self_dual(self) -> bool:
        return all(p.dual == p.id for p in self.particles)

    def check(self, i: int) -> int:
        if not (0 <= i < self.rank) or int(i) != i:
            raise CategoryError(f"invalid particle index {i!r} for {self.name} (rank {self.rank})")
        return int(i)

    def label(self, i: int) -> str:
        return self.particles[i].label or str(i)


# ---------------------------------------------------------------------------
# SU(2)_k


def _qint(n: int, k: int) -> float:
    return math.sin(n * math.pi / (k + 2)) / math.sin(math.pi / (k + 2))


def _qfact(n: int, k: int) -> float:
    out = 1.0
    for m in range(1, n + 1):
        out *= _qint(m, k)
    return out


def _su2_admissible(a: int, b: int, c: int, k: int) -> bool:
    """Triangle rule on twice-spins, with the level cutoff."""
    return (
        abs(a - b) <= c <= a + b
        and (a + b + c) % 2 == 0
        and a + b + c <= 2 * k
    )


def _delta(a: int, b: int, c: int, k: int) -> float:
    # twice-spin arguments; all the half-sums below are integers for admissible triples
    return math.sqrt(
        _qfact((a + b - c) // 2, k) * _qfact((a - b + c) // 2, k) * _qfact((-a + b + c) // 2, k)
        / _qfact((a + b + c) // 2 + 1, k)
    )


def q6j(a: int, b: int, e: int, c: int, d: int, f: int, k: int) -> float:
    """Racah-Wigner q-6j symbol ``{a b e; c d f}`` on twice-spins at level ``k``."""
    triads = [(a, b, e), (e, c, d), (b, c, f), (a, f, d)]
    if not all(_su2_admissible(*t, k) for t in triads):
        return 0.0
    pre = 1.0
    for t in triads:
        pre *= _delta(*t, k)
    lo = max(sum(t) // 2 for t in triads)
    hi = min((a + b + c + d) // 2, (a + e + c + f) // 2, (b + e + d + f) // 2)
    total = 0.0
    for z in range(lo, hi + 1):
        den = _qfact((a + b + c + d) // 2 - z, k)
        den *= _qfact((a + e + c + f) // 2 - z, k)
        den *= _qfact((b + e + d + f) // 2 - z, k)
        for t in triads:
            den *= _qfact(z - sum(t) // 2, k)
        total += (-1) ** z * _qfact(z + 1, k) / den
    return pre * total


@lru_cache(maxsize=None)
def build_su2k(k: int) -> Category:
    """SU(2)_k with particles stored as twice-spins ``0..k``."""
    if int(k) != k or k < 1:
        raise CategoryError(f"SU(2)_k needs an integer level k >= 1, got {k!r}")
    k = int(k)
    n = k + 1
    particles = tuple(
        Particle(id=a, qdim=_qint(a + 1, k), dual=a, label=_spin_label(a)) for a in range(n)
    )
    fusion = frozenset(
        (a, b, c) for a in range(n) for b in range(n) for c in range(n) if _su2_admissible(a, b, c, k)
    )
    F = np.zeros((n,) * 6, dtype=complex)
    for a in range(n):
        for b in range(n):
            for c in range(n):
                for d in range(n):
                    sign = (-1) ** ((a + b + c + d) // 2)
                    for e in range(n):
                        if (a, b, e) not in fusion or (e, c, d) not in fusion:
                            continue
                        for f in range(n):
                            if (b, c, f) not in fusion or (a, f, d) not in fusion:
                                continue
                            F[a, b, e, c, d, f] = (
                                sign
                                * math.sqrt(_qint(e + 1, k) * _qint(f + 1, k))
                                * q6j(a, b, e, c, d, f, k)
                            )
    R = np.zeros((n,) * 3, dtype=complex)
    cas = [a * (a + 2) / 4 for a in range(n)]  # j(j+1)
    for a, b, c in fusion:
        # R^{ab}_c stored at R[c, a, b]
        sign = (-1) ** ((c - a - b) // 2)
        R[c, a, b] = sign * np.exp(1j * math.pi * (cas[c] - cas[a] - cas[b]) / (k + 2))
    return Category(
        name=f"SU(2)_{k}",
        particles=particles,
        fusion=fusion,
        F=F,
        R=R,
        meta={"family": "su2", "level": k, "twice_spin": tuple(range(n))},
    )


def _spin_label(a: int) -> str:
    return str(a // 2) if a % 2 == 0 else f"{a}/2"


def restrict_so3(cat: Category) -> Category:
    """Full subcategory on the integer spins of an SU(2)_k category."""
    if cat.meta.get("family") != "su2":
        raise CategoryError(f"{cat.name} does not carry the SU(2)_k twice-spin labeling")
    k = cat.meta["level"]
    keep = [p.id for p in cat.particles if cat.meta["twice_spin"][p.id] % 2 == 0]
    idx = np.array(keep)
    new_id = {old: new for new, old in enumerate(keep)}
    particles = tuple(
        Particle(id=new_id[p.id], qdim=p.qdim, dual=new_id[p.dual], label=p.label)
        for p in cat.particles
        if p.id in new_id
    )
    fusion = frozenset(
        (new_id[a], new_id[b], new_id[c])
        for a, b, c in cat.fusion
        if a in new_id and b in new_id and c in new_id
    )
    F = cat.F[np.ix_(idx, idx, idx, idx, idx, idx)].copy()
    R = cat.R[np.ix_(idx, idx, idx)].copy()
    if k % 2 == 0:
        warnings.warn(f"SO(3)_{k} with even level is not modular; S-matrix will be degenerate")
    return Category(
        name=f"SO(3)_{k}",
        particles=particles,
        fusion=fusion,
        F=F,
        R=R,
        meta={"family": "so3", "level": k, "twice_spin": tuple(cat.meta["twice_spin"][a] for a in keep)},
    )


def build_so3k(k: int) -> Category:
    return restrict_so3(build_su2k(k))


def fibonacci() -> Category:
    """Fibonacci data in its textbook gauge (independent of the q-6j route)."""
    phi = (1 + math.sqrt(5)) / 2
    particles = (Particle(0, 1.0, 0, "1"), Particle(1, phi, 1, "tau"))
    fusion = frozenset(
        t for t in [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0), (1, 1, 1)]
    )
    F = np.zeros((2,) * 6, dtype=complex)
    for a, b, e, c, d, f in np.ndindex(*(2,) * 6):
        if all(t in fusion for t in [(a, b, e), (e, c, d), (b, c, f), (a, f, d)]):
            F[a, b, e, c, d, f] = 1.0
    F[1, 1, 0, 1, 1, 0] = 1 / phi
    F[1, 1, 0, 1, 1, 1] = 1 / math.sqrt(phi)
    F[1, 1, 1, 1, 1, 0] = 1 / math.sqrt(phi)
    F[1, 1, 1, 1, 1, 1] = -1 / phi
    R = np.zeros((2, 2, 2), dtype=complex)
    R[0, 0, 0] = R[1, 0, 1] = R[1, 1, 0] = 1.0
    R[0, 1, 1] = np.exp(-4j * math.pi / 5)
    R[1, 1, 1] = np.exp(3j * math.pi / 5)
    return Category("Fibonacci", particles, fusion, F, R, meta={"family": "fibonacci"})


def trivial_category() -> Category:
    """The category with only the vacuum; every invariant equals 1."""
    one = np.ones((1,) * 6, dtype=complex)
    return Category("Trivial", (Particle(0, 1.0, 0, "0"),), frozenset({(0, 0, 0)}), one, np.ones((1, 1, 1), dtype=complex))


# ---------------------------------------------------------------------------
# derived quantities


def s_symbol(cat: Category, i: int, j: int, k: int) -> complex:
    """Punctured S-symbol ``S^i_{jk}`` assembled from F, R and quantum dimensions.

    ``S^i_{jk} = D^{-1} sum_l F^{i k* k}_{l j* j} d_l R^{k j*}_l R^{j k*}_{l*}``,
    summed over ``l`` with ``(j, k*, l)`` admissible.  The isotopy-normalized
    form of this identity carries ``d_l / sqrt(d_i)``; in the unitary vertex
    gauge used here the extra ``sqrt(d_i)`` is absorbed by the two trivalent
    vertices on the puncture, which is what makes every block ``[S^i_{jk}]``
    unitary.
    """
    i, j, k = cat.check(i), cat.check(j), cat.check(k)
    d = cat.qdims
    js, ks = cat.dual(j), cat.dual(k)
    total = 0.0j
    for l in range(cat.rank):
        if not cat.admissible(j, ks, l):
            continue
        total += (
            cat.F[i, ks, k, l, js, j]
            * d[l]
            * cat.R[l, k, js]
            * cat.R[cat.dual(l), j, ks]
        )
    return complex(total / cat.total_dim)


def s_matrix(cat: Category, i: int = 0) -> np.ndarray:
    """Matrix ``[S^i_{jk}]_{j,k}`` over all particle pairs (zero where undefined)."""
    n = cat.rank
    return np.array([[s_symbol(cat, i, j, k) for k in range(n)] for j in range(n)])


def twist_phase(cat: Category, i: int) -> complex:
    """Phase ``R^{i i*}_0`` applied by a Dehn twist to an edge labelled ``i``."""
    i = cat.check(i)
    return complex(cat.R[0, i, cat.dual(i)])


# ---------------------------------------------------------------------------
# axiom checks


@dataclass(frozen=True)
class AxiomReport:
    pentagon_residual: float
    hexagon_residual: float
    f_unitarity_residual: float

    def ok(self, tol: float = AXIOM_TOL) -> bool:
        return max(self.pentagon_residual, self.hexagon_residual, self.f_unitarity_residual) < tol


def pentagon_residual(cat: Category) -> float:
    """max |[F^{fcd}_e]_{gl}[F^{abl}_e]_{fk} - sum_h [F^{abc}_g]_{fh}[F^{ahd}_e]_{gk}[F^{bcd}_k]_{hl}|."""
    F = cat.F
    worst = 0.0
    for a in range(cat.rank):
        Fa = F[a]  # indices b, f(e-slot), c(k-slot), g, h
        lhs = np.einsum("fcgdel,bflek->bcdefgkl", F, Fa, optimize=True)
        rhs = np.einsum("bfcgh,hgdek,bchdkl->bcdefgkl", Fa, Fa, F, optimize=True)
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return worst


def hexagon_residual(cat: Category) -> float:
    """Both hexagons, with R and with its inverse (conjugate, R being unitary)."""
    F, R = cat.F, cat.R
    worst = 0.0
    for Rx in (R, None):
        if Rx is None:
            # inverse braiding: (R^{ac}_e)^{-1} F (R^{bc}_g)^{-1} = sum_f F (R^{fc}_d)^{-1} F
            Ri = np.conj(R)
            lhs = np.einsum("eac,acebdg,gbc->abcdeg", Ri, F, Ri)
            rhs = np.einsum("caebdf,dfc,abfcdg->abcdeg", F, Ri, F)
        else:
            # R^{ca}_e [F^{acb}_d]_{eg} R^{cb}_g = sum_f [F^{cab}_d]_{ef} R^{cf}_d [F^{abc}_d]_{fg}
            lhs = np.einsum("eca,acebdg,gcb->abcdeg", R, F, R)
            rhs = np.einsum("caebdf,dcf,abfcdg->abcdeg", F, R, F)
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return worst


def f_unitarity_residual(cat: Category) -> float:
    n = cat.rank
    adm = cat.N
    worst = 0.0
    for a, b, c, d in np.ndindex(n, n, n, n):
        rows = adm[a, b, :] & adm[:, c, d]
        cols = adm[b, c, :] & adm[a, :, d]
        if not rows.any() and not cols.any():
            continue
        M = cat.F[a, b, :, c, d, :]
        block = M[np.ix_(rows.astype(bool), cols.astype(bool))]
        if block.shape[0] != block.shape[1]:
            worst = max(worst, 1.0)
            continue
        # entries outside the admissible block must vanish
        stray = np.abs(M).sum() - np.abs(block).sum()
        worst = max(worst, stray, float(np.abs(block @ block.conj().T - np.eye(len(block))).max()))
    return worst


def verify_axioms(cat: Category) -> AxiomReport:
    """Maximum absolute residuals of the pentagon, hexagons and F-unitarity."""
    return AxiomReport(
        pentagon_residual=pentagon_residual(cat),
        hexagon_residual=hexagon_residual(cat),
        f_unitarity_residual=f_unitarity_residual(cat),
    )


def frobenius_schur(cat: Category, a: int) -> float:
    """Indicator ``kappa_a = d_a [F^{a a* a}_a]_{00}`` of a self-dual particle (+1 or -1)."""
    a = cat.check(a)
    if cat.dual(a) != a:
        raise CategoryError(f"particle {a} is not self-dual")
    return float((cat.qdims[a] * cat.F[a, a, 0, a, a, 0]).real)


# ---------------------------------------------------------------------------
# JSON files


def _cplx(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def save_category(cat: Category, path) -> None:
    """Write nonzero F and R entries; keys are comma-joined particle ids."""
    F = {",".join(map(str, idx)): _cplx(cat.F[idx]) for idx in zip(*np.nonzero(cat.F))}
    R = {",".join(map(str, idx)): _cplx(cat.R[idx]) for idx in zip(*np.nonzero(cat.R))}
    doc = {
        "name": cat.name,
        "particles": [{"id": p.id, "qdim": p.qdim, "dual": p.dual, "label": p.label} for p in cat.particles],
        "fusion": sorted(list(t) for t in cat.fusion),
        "F": F,
        "R": R,
        "meta": {k: list(v) if isinstance(v, tuple) else v for k, v in cat.meta.items()},
    }
    Path(path).write_text(json.dumps(doc, indent=1) + "\n")


def _parse_key(key: str, size: int, rank: int, where: str) -> tuple[int, ...]:
    try:
        idx = tuple(int(x) for x in key.replace(" ", "").split(","))
    except ValueError:
        raise CategoryError(f"{where}: key {key!r} is not a comma-separated index list") from None
    if len(idx) != size or not all(0 <= x < rank for x in idx):
        raise CategoryError(f"{where}: key {key!r} needs {size} particle ids in 0..{rank - 1}")
    return idx


def _parse_complex(value, where: str) -> complex:
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, list) and len(value) == 2 and all(isinstance(x, (int, float)) for x in value):
        return complex(value[0], value[1])
    raise CategoryError(f"{where}: expected [re, im], got {value!r}")


def _admissible_f(fusion, n: int) -> np.ndarray:
    N = np.zeros((n,) * 3, dtype=bool)
    for t in fusion:
        N[t] = True
    # (i,j,m) (m,k,l) (j,k,n) (i,n,l)
    return np.einsum("ijm,mkl,jkn,inl->ijmkln", N, N, N, N).astype(bool)


def load_category(path, check: bool = True) -> Category:
    """Read a JSON category file.

    Every F entry whose four triads are admissible must be present, as must
    every R entry for an admissible triple.  With ``check`` the axioms are
    evaluated and a warning is issued when a residual exceeds ``AXIOM_TOL``.
    """
    text = Path(path).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CategoryError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    for key in ("name", "particles", "fusion", "F", "R"):
        if key not in doc:
            raise CategoryError(f"{path}: missing field {key!r}")
    parts = []
    for k, p in enumerate(doc["particles"]):
        try:
            parts.append(Particle(int(p["id"]), float(p["qdim"]), int(p["dual"]), str(p.get("label", ""))))
        except (KeyError, TypeError, ValueError):
            raise CategoryError(f"{path}: particles[{k}] needs integer id, real qdim, integer dual") from None
    n = len(parts)
    if [p.id for p in parts] != list(range(n)):
        raise CategoryError(f"{path}: particle ids must be 0..{n - 1} in order")
    for p in parts:
        if not 0 <= p.dual < n or parts[p.dual].dual != p.id:
            raise CategoryError(f"{path}: particles[{p.id}].dual is not an involution")
        if p.qdim <= 0:
            raise CategoryError(f"{path}: particles[{p.id}].qdim must be positive")
    if parts[0].dual != 0 or abs(parts[0].qdim - 1) > 1e-12:
        raise CategoryError(f"{path}: particle 0 must be trivial (qdim 1, self-dual)")
    fusion = set()
    for k, t in enumerate(doc["fusion"]):
        if not (isinstance(t, list) and len(t) == 3 and all(isinstance(x, int) and 0 <= x < n for x in t)):
            raise CategoryError(f"{path}: fusion[{k}] must be a triple of particle ids")
        fusion.add(tuple(t))
    F = np.zeros((n,) * 6, dtype=complex)
    for key, val in doc["F"].items():
        F[_parse_key(key, 6, n, f"{path}: F")] = _parse_complex(val, f"{path}: F[{key}]")
    R = np.zeros((n,) * 3, dtype=complex)
    for key, val in doc["R"].items():
        R[_parse_key(key, 3, n, f"{path}: R")] = _parse_complex(val, f"{path}: R[{key}]")
    spelled = {_parse_key(key, 6, n, f"{path}: F") for key in doc["F"]}
    for i, j, m, k, l, nn in zip(*np.nonzero(_admissible_f(fusion, n))):
        # a genuine zero is allowed only if spelled out
        if (i, j, m, k, l, nn) not in spelled:
            raise CategoryError(f"{path}: missing F entry for indices ({i},{j},{m},{k},{l},{nn})")
    for a, b, c in fusion:
        if R[c, a, b] == 0:
            raise CategoryError(f"{path}: missing R entry for indices ({c},{a},{b})")
    cat = Category(str(doc["name"]), tuple(parts), frozenset(fusion), F, R, meta=dict(doc.get("meta", {})))
    if check:
        rep = verify_axioms(cat)
        if not rep.ok():
            warnings.warn(f"{path}: axiom residuals exceed {AXIOM_TOL}: {rep}", stacklevel=2)
    return cat
