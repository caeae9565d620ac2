"""Regenerate the shipped manifold corpus under src/tvkit/corpus."""

from pathlib import Path

from tvkit.heegaard import HeegaardSplitting, stabilize, write_splitting
from tvkit.invariants import (
    S3_WORD,
    boundary_4simplex,
    internal_faces_23,
    lens_word,
    pachner_14,
    pachner_23,
    write_triangulation,
)

OUT = Path(__file__).resolve().parents[1] / "src" / "tvkit" / "corpus"


def main() -> None:
    OUT.mkdir(exist_ok=True)
    s3 = boundary_4simplex()
    write_triangulation(s3, OUT / "s3_simplex.tri")
    t14 = pachner_14(s3, 0)
    write_triangulation(t14, OUT / "s3_pachner14.tri")
    write_triangulation(pachner_23(t14, internal_faces_23(t14)[0]), OUT / "s3_pachner14_23.tri")

    g1 = HeegaardSplitting.from_text(S3_WORD, 1)
    write_splitting(g1, OUT / "s3_g1.hs")
    write_splitting(stabilize(g1), OUT / "s3_g2.hs")
    write_splitting(HeegaardSplitting.from_text("", 1), OUT / "s2xs1_g1.hs")
    for p in range(2, 6):
        write_splitting(HeegaardSplitting.from_text(lens_word(p), 1), OUT / f"lens_{p}_1.hs")
    print(f"wrote {len(list(OUT.iterdir()))} files to {OUT}")


if __name__ == "__main__":
    main()
