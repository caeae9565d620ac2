"""``tvkit`` command-line entry point.

Results go to stdout as ``key = value`` lines; diagnostics go to stderr.
Exit status: 0 success, 1 domain error (bad input file, budget exceeded,
failed check), 2 usage error.
"""

from __future__ import annotations

import argparse
import math
import sys
import warnings
from pathlib import Path

from .category import Category, CategoryError, build_so3k, build_su2k, fibonacci, load_category, s_matrix, twist_phase, verify_axioms
from .heegaard import HeegaardSplitting, WordError, read_splitting, write_splitting

DEFAULT_CATEGORY = "su2k:2"


class UsageError(Exception):
    pass


def fmt(x) -> str:
    if isinstance(x, bool):
        return str(x).lower()
    if isinstance(x, complex):
        # drop rounding noise so phases like -1 print cleanly
        re, im = (0.0 if abs(t) < 1e-13 else t for t in (x.real, x.imag))
        return f"{re:.12g}{im:+.12g}j"
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


def emit(key: str, value) -> None:
    print(f"{key} = {fmt(value)}")


def resolve_category(spec: str) -> Category:
    """``su2k:K``, ``so3k:K``, ``fibonacci`` or a path to a JSON category file."""
    family, sep, arg = spec.partition(":")
    if sep and family in ("su2k", "so3k"):
        try:
            k = int(arg)
        except ValueError:
            raise UsageError(f"level must be an integer in {spec!r}") from None
        if k < 1:
            raise UsageError(f"level must be >= 1 in {spec!r}")
        if family == "so3k" and k % 2 == 0:
            raise UsageError(f"so3k needs an odd level, got {k}")
        return build_su2k(k) if family == "su2k" else build_so3k(k)
    if spec == "fibonacci":
        return fibonacci()
    path = Path(spec)
    if not path.is_file():
        raise UsageError(f"category {spec!r} is neither a builtin (su2k:K, so3k:K, fibonacci) nor a file")
    return load_category(path)


def _positive(text: str) -> float:
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not (x > 0 and math.isfinite(x)):
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return x


# ---------------------------------------------------------------------------
# subcommands


def cmd_category_show(args) -> int:
    cat = resolve_category(args.category)
    emit("name", cat.name)
    emit("rank", cat.rank)
    emit("total_dim", cat.total_dim)
    for p in cat.particles:
        emit(f"particle.{p.id}.label", cat.label(p.id))
        emit(f"particle.{p.id}.qdim", float(p.qdim))
        emit(f"particle.{p.id}.dual", p.dual)
        emit(f"particle.{p.id}.twist", complex(twist_phase(cat, p.id)))
    if args.s_matrix:
        S = s_matrix(cat)
        for i in range(cat.rank):
            for j in range(cat.rank):
                emit(f"S.{i}.{j}", complex(S[i, j]))
    return 0


def cmd_verify(args) -> int:
    from .repspace import relation_residuals

    cat = resolve_category(args.category)
    rep = verify_axioms(cat)
    emit("pentagon", rep.pentagon_residual)
    emit("hexagon", rep.hexagon_residual)
    emit("f_unitarity", rep.f_unitarity_residual)
    ok = rep.ok()
    for g in range(1, args.max_genus + 1):
        rel = relation_residuals(cat, g)
        emit(f"relations.g{g}.commutation", rel.commutation)
        emit(f"relations.g{g}.braid", rel.braid)
        emit(f"relations.g{g}.unitarity", rel.unitarity)
        ok = ok and rel.ok(args.tol)
    emit("ok", ok)
    return 0 if ok else 1


def cmd_invariant_tri(args) -> int:
    from .invariants import read_triangulation, triangulation_invariants

    cat = resolve_category(args.category)
    res = triangulation_invariants(cat, read_triangulation(args.input), args.method)
    emit("tv", res.tv)
    return 0


def _splitting(args) -> HeegaardSplitting:
    if args.input is not None:
        if args.word is not None or args.genus is not None:
            raise UsageError("give either --input or --genus/--word, not both")
        return read_splitting(args.input)
    if args.genus is None:
        raise UsageError("--genus is required unless --input is given")
    try:
        return HeegaardSplitting.from_text(args.word or "", args.genus)
    except WordError as exc:
        raise UsageError(str(exc)) from None


def cmd_invariant_heegaard(args) -> int:
    from .invariants import heegaard_invariants

    s = _splitting(args)
    cat = resolve_category(args.category)
    res = heegaard_invariants(cat, s)
    emit("wrt_modulus", res.wrt_modulus)
    emit("tv", res.tv)
    emit("normalized_tv", res.normalized_tv)
    return 0


def cmd_compile(args) -> int:
    from .compiler import CompilerConfig, read_circuit, reduce_circuit

    cat = resolve_category(args.category)
    circuit = read_circuit(args.circuit)
    config = CompilerConfig(base_depth=args.base_depth, levels=args.levels, seed=args.seed)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore" if args.quiet else "default")
        res = reduce_circuit(cat, circuit, args.eps_per_gate, config)
    s = HeegaardSplitting(res.genus, res.word)
    if args.out:
        write_splitting(s, args.out)
    emit("genus", res.genus)
    emit("length", res.length)
    emit("per_gate_eps", float(res.per_gate_error))
    emit("max_gate_error", float(max(res.gate_errors, default=0.0)))
    emit("total_error_bound", res.total_error_bound)
    emit("probability_error_bound", res.probability_error_bound)
    emit("target_probability", float(circuit.acceptance()))
    if not args.out:
        emit("word", s.word.render())
    return 0


def cmd_estimate(args) -> int:
    from .estimator import EstimateParams, approximate_tv

    cat = resolve_category(args.category)
    try:
        s = HeegaardSplitting.from_text(args.word, args.genus)
        params = EstimateParams(args.eps, args.delta, args.seed, args.reading)
    except (WordError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    res = approximate_tv(cat, s.genus, s.word, params)
    emit("estimate", res.estimate.value)
    emit("samples_per_part", params.samples_per_part)
    emit("samples_used", res.estimate.samples_used)
    emit("part_eps", float(res.estimate.eps))
    emit("matrix_element_tolerance", res.estimate.error_bound)
    emit("delta", float(params.delta))
    emit("normalized_tv", res.value / cat.total_dim ** (2 * (s.genus - 1)))
    emit("tv", res.value)
    emit("tv_tolerance", res.error_bound)
    return 0


def cmd_corpus(args) -> int:
    from .invariants import corpus_checks

    ok = True
    for spec in args.category or ["su2k:1", "su2k:2", "su2k:3", "so3k:3"]:
        cat = resolve_category(spec)
        for chk in corpus_checks(cat, args.tol):
            emit(f"{spec}.{chk.name}", chk.value)
            if not chk.passed:
                print(f"mismatch: {spec} {chk.name}: got {chk.value:.12g}, expected {chk.expected:.12g}", file=sys.stderr)
            ok = ok and chk.passed
    emit("ok", ok)
    return 0 if ok else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tvkit", description="Turaev-Viro invariants, mapping-class-group actions and circuit compilation.")
    sub = p.add_subparsers(dest="command", required=True)

    def with_category(sp):
        sp.add_argument("--category", default=DEFAULT_CATEGORY, help=f"su2k:K, so3k:K, fibonacci or a JSON file (default {DEFAULT_CATEGORY})")
        return sp

    cat = sub.add_parser("category", help="inspect a category")
    cat_sub = cat.add_subparsers(dest="action", required=True)
    show = with_category(cat_sub.add_parser("show", help="particles, dimensions and twists"))
    show.add_argument("--s-matrix", action="store_true", help="also print the S matrix")
    show.set_defaults(func=cmd_category_show)

    ver = with_category(sub.add_parser("verify", help="axiom residuals and mapping-class-group relations"))
    ver.add_argument("--max-genus", type=int, default=2, help="check relations for genus 1..G (default 2)")
    ver.add_argument("--tol", type=_positive, default=1e-6, help="relation tolerance (default 1e-6)")
    ver.set_defaults(func=cmd_verify)

    inv = sub.add_parser("invariant", help="compute TV/WRT invariants")
    inv_sub = inv.add_subparsers(dest="presentation", required=True)
    tri = with_category(inv_sub.add_parser("tri", help="state sum on a triangulation file"))
    tri.add_argument("--input", required=True, help="triangulation file")
    tri.add_argument("--method", choices=["enumerate", "contract"], default="enumerate")
    tri.set_defaults(func=cmd_invariant_tri)
    hs = with_category(inv_sub.add_parser("heegaard", help="vacuum matrix element of a Dehn-twist word"))
    hs.add_argument("--genus", type=int)
    hs.add_argument("--word", help='letters such as "m1 l1^-1 c1"')
    hs.add_argument("--input", help="splitting file with 'genus:' and 'word:' lines")
    hs.set_defaults(func=cmd_invariant_heegaard)

    comp = with_category(sub.add_parser("compile", help="compile a qubit circuit to a Dehn-twist word"))
    comp.add_argument("--circuit", required=True, help="circuit file")
    comp.add_argument("--eps-per-gate", type=_positive, default=None, help="per-gate operator error (default 1/(6T))")
    comp.add_argument("--out", help="write the splitting file here")
    comp.add_argument("--base-depth", type=int, default=5, help="meet-in-the-middle depth per side")
    comp.add_argument("--levels", type=int, default=6, help="commutator refinement levels")
    comp.add_argument("--seed", type=int, default=0)
    comp.add_argument("--quiet", action="store_true", help="suppress density warnings")
    comp.set_defaults(func=cmd_compile)

    est = with_category(sub.add_parser("estimate", help="simulated Hadamard-test estimate of TV"))
    est.add_argument("--genus", type=int, required=True)
    est.add_argument("--word", default="")
    est.add_argument("--eps", type=_positive, required=True)
    est.add_argument("--delta", type=_positive, required=True)
    est.add_argument("--seed", type=int, default=0)
    est.add_argument("--reading", choices=["matrix", "tv"], default="matrix", help="what --eps bounds (default: the matrix element)")
    est.set_defaults(func=cmd_estimate)

    cor = sub.add_parser("corpus", help="cross-check the shipped manifolds")
    cor.add_argument("--category", action="append", help="repeatable; default su2k:1..3 and so3k:3")
    cor.add_argument("--tol", type=_positive, default=1e-9)
    cor.set_defaults(func=cmd_corpus)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"tvkit: usage error: {exc}", file=sys.stderr)
        return 2
    except (CategoryError, WordError, ValueError, OSError, RuntimeError) as exc:
        print(f"tvkit: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
