"""Command-line interface.

Exit codes: 0 success, 1 domain error (e.g. KernelDimensionError), 2 input or
parse error.  Output is ``key=value`` lines and is byte-for-byte deterministic.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Callable, Sequence

from . import fixtures, mcg, moves
from .cubical import boundary_surface, build_complex
from .embedding import SystemEmbedding, predict_q, q_system, transport_marking
from .errors import (
    ComponentCountMismatch,
    InconsistentMorseData,
    InputError,
    InvalidPath,
    NotUnimodular,
    TorusQError,
    UnknownGenerator,
)
from .formats import EmbeddingDocument, dump_embedding, parse_embedding

_INPUT_ERRORS = (InputError, ComponentCountMismatch, InvalidPath, NotUnimodular, InconsistentMorseData, UnknownGenerator)

HYPOTHESIS_BANNER = "# valid if f, g regularly homotopic"


def _read(path: str) -> str:
    try:
        return sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc


def _load(path: str, box_margin: int | None) -> EmbeddingDocument:
    return parse_embedding(_read(path), box_margin)


def _matrix(text: str) -> mcg.MappingClass:
    try:
        return mcg.MappingClass.of(text)
    except ValueError as exc:
        raise InputError(f"bad matrix {text!r}: {exc}") from exc


def cmd_q_invariant(args: argparse.Namespace, out: Callable[[str], None]) -> int:
    doc = _load(args.path, args.box_margin)
    result = q_system(doc.system)
    status = 0
    for i, comp in enumerate(result.components):
        out(f"component{i}: c={comp.c.name} n={comp.n.name} Q={comp.q_bit} c_bits={comp.c.bits} n_bits={comp.n.bits}")
        if args.verify_oracle:
            core = doc.cores[i]
            if core is None:
                out(f"component{i}: oracle=skipped")
                continue
            compact, outer = fixtures.oracle_kernel_classes(doc.system.components[i], core)
            agree = compact == [comp.c] and outer == [comp.n]
            out(f"component{i}: oracle={'agree' if agree else 'DISAGREE'}")
            if not agree:
                status = 1
    out(f"total Q={result.total}")
    return status


def cmd_predict(args: argparse.Namespace, out: Callable[[str], None]) -> int:
    f = _load(args.path_f, args.box_margin).system
    g = _load(args.path_g, args.box_margin).system
    q = predict_q(f, g)
    out(HYPOTHESIS_BANNER)
    out(f"Q(f)={q_system(f).total} Q(g)={q_system(g).total}")
    out(f"predicted q={q}")
    return 0


def cmd_mcg(args: argparse.Namespace, out: Callable[[str], None]) -> int:
    if args.mcg_cmd == "check":
        m = _matrix(args.matrix)
        t = mcg.tau(m)
        out(f"tau={t} ({t.name})")
        out(f"reg-homotopic-to-inclusion: {'true' if mcg.reg_homotopic_to_inclusion(m) else 'false'}")
    elif args.mcg_cmd == "parity":
        f, g = _matrix(args.f), _matrix(args.g)
        out(f"q={mcg.q_parity(f, g)}")
    else:
        m = _matrix(args.matrix)
        word = mcg.decompose_tau_u(m)
        out(f"word: {mcg.format_word(word)}")
        out(f"length={mcg.word_length(word)}")
    return 0


def cmd_moves(args: argparse.Namespace, out: Callable[[str], None]) -> int:
    if args.moves_cmd == "eval":
        seq = moves.parse_moves(_read(args.path))
    elif args.name == "lemma-l2":
        if None in (args.chi, args.min, args.saddle, args.max):
            raise InputError("lemma-l2 needs --chi, --min, --saddle and --max")
        seq = moves.builder_lemma_l2(moves.MorseData(args.min, args.saddle, args.max, args.chi))
    else:
        seq = moves.BUILDERS[args.name]()
    if args.moves_cmd == "build":
        for tok in seq:
            out(tok.move.value)
    out(f"count={len(seq)}")
    out(f"q={moves.q_of(seq)}")
    return 0


def _fixture(args: argparse.Namespace) -> tuple[SystemEmbedding, tuple]:
    name = args.name
    margin = args.box_margin if args.box_margin is not None else 2
    core = None
    if name == "donut":
        e = fixtures.donut(args.outer, margin)
        core = fixtures.rectangle_path(args.outer, args.outer)
    elif name == "unknot-tube":
        core = fixtures.rectangle_path(args.outer, args.outer)
        e = fixtures.tube(core, margin)
    elif name == "trefoil-tube":
        core = fixtures.TREFOIL
        e = fixtures.trefoil_tube(args.framing, margin)
    elif name == "drilled-cube":
        e = fixtures.drilled_cube(args.side, box_margin=margin)
    else:  # donut-pair
        first = fixtures.donut(args.outer, margin)
        second = first.swapped().translated((args.outer + 1, 0, 0))
        return SystemEmbedding((first, second)), (None, None)
    if args.transport:
        e = transport_marking(e, _matrix(args.transport))
    if args.swap:
        e = e.swapped()
    return SystemEmbedding((e,)), (core,)


def cmd_fixture(args: argparse.Namespace, out: Callable[[str], None]) -> int:
    system, cores = _fixture(args)
    text = dump_embedding(system, cores)
    if args.out == "-":
        sys.stdout.write(text)
    else:
        Path(args.out).write_text(text, encoding="utf-8")
        out(f"wrote {args.out} components={len(system)}")
    return 0


def _b(cx, top: int) -> str:
    return "(" + ",".join(str(cx.betti(k)) for k in range(top + 1)) + ")"


def cmd_homology(args: argparse.Namespace, out: Callable[[str], None]) -> int:
    doc = _load(args.path, args.box_margin)
    for i, e in enumerate(doc.system.components):
        solid = build_complex(e.solid)
        surface = boundary_surface(e.solid)
        outer = e.outer
        out(
            f"component{i}: solid b={_b(solid, 2)}  surface b={_b(surface, 2)} chi={surface.euler_characteristic()}"
            f"  solid_chi={solid.euler_characteristic()}  outer b={_b(outer, 2)} outer_chi={outer.euler_characteristic()}"
        )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="torusq", description="Quadruple-point invariant of embedded tori.")
    parser.add_argument("--box-margin", type=int, default=None, help="outer-region clearance (default 2)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("q-invariant", help="compute c, n and Q for an embedding file")
    p.add_argument("path")
    p.add_argument("--verify-oracle", action="store_true", help="cross-check tube components with the linking oracle")
    p.set_defaults(func=cmd_q_invariant)

    p = sub.add_parser("predict", help="parity of quadruple points between two embeddings")
    p.add_argument("path_f")
    p.add_argument("path_g")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("mcg", help="mapping-class calculus on 2x2 integer matrices")
    msub = p.add_subparsers(dest="mcg_cmd", required=True)
    c = msub.add_parser("check")
    c.add_argument("matrix", help='entries row-major, e.g. "0 1 1 0"')
    c = msub.add_parser("parity")
    c.add_argument("f")
    c.add_argument("g")
    c = msub.add_parser("decompose")
    c.add_argument("matrix")
    p.set_defaults(func=cmd_mcg)

    p = sub.add_parser("moves", help="evaluate or build move sequences")
    msub = p.add_subparsers(dest="moves_cmd", required=True)
    c = msub.add_parser("eval")
    c.add_argument("path")
    c = msub.add_parser("build")
    c.add_argument("name", choices=sorted(moves.BUILDERS) + ["lemma-l2"])
    c.add_argument("--chi", type=int)
    c.add_argument("--min", type=int)
    c.add_argument("--saddle", type=int)
    c.add_argument("--max", type=int)
    p.set_defaults(func=cmd_moves)

    p = sub.add_parser("fixture", help="write a fixture embedding file")
    p.add_argument("name", choices=["donut", "donut-pair", "unknot-tube", "trefoil-tube", "drilled-cube"])
    p.add_argument("out", help="output path, or - for stdout")
    p.add_argument("--outer", type=int, default=3)
    p.add_argument("--side", type=int, default=4)
    p.add_argument("--framing", choices=["even", "odd"], default="even")
    p.add_argument("--swap", action="store_true", help="exchange the m and l cycles")
    p.add_argument("--transport", metavar="MATRIX", help="re-mark by a unimodular matrix")
    p.set_defaults(func=cmd_fixture)

    p = sub.add_parser("homology", help="Betti numbers and Euler characteristics")
    p.add_argument("path")
    p.set_defaults(func=cmd_homology)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out = lambda line: print(line)  # noqa: E731
    try:
        return args.func(args, out)
    except _INPUT_ERRORS as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except TorusQError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
