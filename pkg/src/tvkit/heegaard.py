"""Dehn-twist words on the genus-g surface and Heegaard splittings.

Generators follow Lickorish's set of ``3g - 1`` curves:

* ``m<i>``  meridian of handle ``i``; bounds a disk in the handlebody.
* ``l<i>``  longitude of handle ``i``; meets ``m<i>`` once.
* ``c<i>``  connecting curve between handles ``i`` and ``i+1``; meets
  ``l<i>`` and ``l<i+1>`` once each and is disjoint from every meridian.

Consecutive curves of the chain ``m1 l1 c1 l2 c2 ... l<g> m<g>`` meet once,
all other pairs are disjoint.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

KINDS = ("m", "l", "c")
_LETTER = re.compile(r"^([mlc])(\d+)(\^-1)?$")


class WordError(ValueError):
    """Bad generator name, index out of range, or genus mismatch."""


@dataclass(frozen=True, order=True)
class DehnGenerator:
    kind: str
    index: int

    def __post_init__(self):
        if self.kind not in KINDS:
            raise WordError(f"unknown generator kind {self.kind!r}")

    def valid_at(self, g: int) -> bool:
        top = g - 1 if self.kind == "c" else g
        return 1 <= self.index <= top

    def __str__(self) -> str:
        return f"{self.kind}{self.index}"


def generators(g: int) -> list[DehnGenerator]:
    """Meridians, then longitudes, then connecting curves, each by handle index."""
    if g < 1:
        raise WordError(f"genus must be >= 1, got {g}")
    return (
        [DehnGenerator("m", i) for i in range(1, g + 1)]
        + [DehnGenerator("l", i) for i in range(1, g + 1)]
        + [DehnGenerator("c", i) for i in range(1, g)]
    )


def mcg_plus_generators(g: int) -> list[DehnGenerator]:
    """Meridian twists; these extend over the handlebody."""
    if g < 1:
        raise WordError(f"genus must be >= 1, got {g}")
    return [DehnGenerator("m", i) for i in range(1, g + 1)]


def intersection_number(a: DehnGenerator, b: DehnGenerator) -> int:
    """Geometric intersection number of two generator curves (0 or 1)."""
    if a == b:
        return 0
    pair = sorted([a, b], key=lambda x: KINDS.index(x.kind))
    x, y = pair
    if x.kind == "m" and y.kind == "l":
        return int(x.index == y.index)
    if x.kind == "l" and y.kind == "c":
        return int(x.index in (y.index, y.index + 1))
    return 0


@dataclass(frozen=True)
class DehnWord:
    letters: tuple[tuple[DehnGenerator, int], ...]
    genus: int

    def __post_init__(self):
        if self.genus < 1:
            raise WordError(f"genus must be >= 1, got {self.genus}")
        for gen, exp in self.letters:
            if exp not in (1, -1):
                raise WordError(f"exponent must be +1 or -1, got {exp}")
            if not gen.valid_at(self.genus):
                raise WordError(f"generator {gen} out of range for genus {self.genus}")

    def __len__(self) -> int:
        return len(self.letters)

    def __add__(self, other: DehnWord) -> DehnWord:
        if other.genus != self.genus:
            raise WordError(f"genus mismatch: {self.genus} vs {other.genus}")
        return DehnWord(self.letters + other.letters, self.genus)

    def inverse(self) -> DehnWord:
        return DehnWord(tuple((g, -e) for g, e in reversed(self.letters)), self.genus)

    def at_genus(self, g: int) -> DehnWord:
        return DehnWord(self.letters, g)

    def render(self) -> str:
        return " ".join(f"{gen}{'^-1' if e < 0 else ''}" for gen, e in self.letters)

    def __str__(self) -> str:
        return self.render()


def parse_word(text: str, g: int) -> DehnWord:
    """Parse whitespace-separated letters such as ``"m1 l1^-1 c1"``."""
    letters = []
    for tok in text.split():
        match = _LETTER.match(tok)
        if match is None:
            raise WordError(f"unknown generator {tok!r}")
        gen = DehnGenerator(match.group(1), int(match.group(2)))
        if not gen.valid_at(g):
            raise WordError(f"generator {tok!r} out of range for genus {g}")
        letters.append((gen, -1 if match.group(3) else 1))
    return DehnWord(tuple(letters), g)


@dataclass(frozen=True)
class HeegaardSplitting:
    genus: int
    word: DehnWord

    def __post_init__(self):
        if self.word.genus != self.genus:
            raise WordError(f"word genus {self.word.genus} does not match splitting genus {self.genus}")

    @classmethod
    def from_text(cls, word: str, genus: int) -> HeegaardSplitting:
        return cls(genus, parse_word(word, genus))


def stabilize(s: HeegaardSplitting) -> HeegaardSplitting:
    """Append a fresh handle glued by ``m l m`` (the genus-1 word for S^3)."""
    g = s.genus + 1
    block = parse_word(f"m{g} l{g} m{g}", g)
    return HeegaardSplitting(g, s.word.at_genus(g) + block)


def write_splitting(s: HeegaardSplitting, path) -> None:
    Path(path).write_text(f"genus: {s.genus}\nword: {s.word.render()}\n")


def read_splitting(path) -> HeegaardSplitting:
    fields = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        key, sep, value = line.partition(":")
        if not sep:
            raise WordError(f"{path}:{lineno}: expected 'key: value'")
        fields[key.strip()] = value.strip()
    if "genus" not in fields:
        raise WordError(f"{path}: missing 'genus' line")
    try:
        g = int(fields["genus"])
    except ValueError:
        raise WordError(f"{path}: genus {fields['genus']!r} is not an integer") from None
    return HeegaardSplitting(g, parse_word(fields.get("word", ""), g))
