"""Classical simulation of Hadamard-test estimation of ``<v|rho(x)|v>``.

A Hadamard test on the real (imaginary) part returns +1 with probability
``(1 + Re z) / 2`` (``(1 + Im z) / 2``).  We compute ``z`` exactly and draw
Bernoulli outcomes, which reproduces the outcome statistics of the quantum
procedure without simulating the controlled circuit.

Sample count.  Each outcome lies in [-1, 1], so by Hoeffding the mean of
``N`` outcomes deviates from its expectation by at least ``t`` with
probability at most ``2 exp(-N t^2 / 2)``.  Asking for ``t = eps`` on each
part with failure ``delta / 2`` apiece (union bound over the two parts)
gives ``N = ceil(2 ln(4 / delta) / eps^2)`` per part.  The guarantee is
then ``|Re err|, |Im err| <= eps``, hence ``|err| <= sqrt(2) eps``, with
probability at least ``1 - delta``.

Randomness is keyed by ``(seed, part, block)`` through a counter-based
generator, so results do not depend on how blocks are scheduled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .category import Category
from .heegaard import DehnWord, parse_word
from .repspace import matrix_element

PARTS = ("real", "imag")
BLOCK = 1 << 16


@dataclass(frozen=True)
class EstimateParams:
    eps: float
    delta: float
    seed: int = 0
    # "matrix": eps bounds each part of the matrix element;
    # "tv": eps is the target for the normalized TV value and is converted internally
    reading: str = "matrix"

    def __post_init__(self):
        if not self.eps > 0:
            raise ValueError(f"eps must be positive, got {self.eps}")
        if not 0 < self.delta < 1:
            raise ValueError(f"delta must lie in (0, 1), got {self.delta}")
        if self.reading not in ("matrix", "tv"):
            raise ValueError(f"reading must be 'matrix' or 'tv', got {self.reading!r}")

    @property
    def part_eps(self) -> float:
        """Per-part accuracy actually targeted by the sampler."""
        if self.reading == "matrix":
            return self.eps
        # need 2e + e^2 <= eps for e = sqrt(2) * part_eps
        return (math.sqrt(1 + self.eps) - 1) / math.sqrt(2)

    @property
    def samples_per_part(self) -> int:
        return math.ceil(2 * math.log(4 / self.delta) / self.part_eps**2)


def hoeffding_samples(eps: float, delta: float) -> int:
    return math.ceil(2 * math.log(4 / delta) / eps**2)


@dataclass(frozen=True)
class Estimate:
    value: complex
    eps: float  # per-part accuracy
    delta: float
    samples_used: int  # both parts together

    @property
    def error_bound(self) -> float:
        """Bound on ``|value - exact|`` holding with probability ``1 - delta``."""
        return math.sqrt(2) * self.eps


@lru_cache(maxsize=1024)
def _exact(cat: Category, g: int, word: DehnWord) -> complex:
    return matrix_element(cat, g, word)


def _as_word(word, g: int) -> DehnWord:
    return parse_word(word, g) if isinstance(word, str) else word


def _part_value(z: complex, part: str) -> float:
    if part not in PARTS:
        raise ValueError(f"part must be 'real' or 'imag', got {part!r}")
    return z.real if part == "real" else z.imag


def hadamard_test_sample(cat: Category, g: int, word, part: str, rng: np.random.Generator) -> int:
    """One simulated Hadamard-test outcome (+1 or -1)."""
    x = _part_value(_exact(cat, g, _as_word(word, g)), part)
    return 1 if rng.random() < (1 + x) / 2 else -1


def _block_rng(seed: int, part: str, block: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, PARTS.index(part), block])))


def sample_mean(x: float, n: int, seed: int, part: str) -> float:
    """Mean of ``n`` outcomes with expectation ``x``; reproducible for a fixed seed."""
    p = (1 + x) / 2
    plus = 0
    for block, start in enumerate(range(0, n, BLOCK)):
        size = min(BLOCK, n - start)
        plus += int(np.count_nonzero(_block_rng(seed, part, block).random(size) < p))
    return (2 * plus - n) / n


def estimate_matrix_element(cat: Category, g: int, word, params: EstimateParams) -> Estimate:
    z = _exact(cat, g, _as_word(word, g))
    n = params.samples_per_part
    re = sample_mean(z.real, n, params.seed, "real")
    im = sample_mean(z.imag, n, params.seed, "imag")
    return Estimate(complex(re, im), params.part_eps, params.delta, 2 * n)


@dataclass(frozen=True)
class TVApproximation:
    value: float
    error_bound: float  # holds with probability 1 - delta
    estimate: Estimate


def approximate_tv(cat: Category, g: int, word, params: EstimateParams) -> TVApproximation:
    """``D^{2(g-1)} |estimate|^2`` with the induced bound ``D^{2(g-1)} (2e + e^2)``."""
    est = estimate_matrix_element(cat, g, word, params)
    scale = cat.total_dim ** (2 * (g - 1))
    e = est.error_bound
    return TVApproximation(scale * abs(est.value) ** 2, scale * (2 * e + e * e), est)
