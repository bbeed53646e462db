"""Command-line front end.

Exit status: 0 success, 1 internal consistency failure, 2 syntax error,
3 validation error, 4 usage or I/O error.
"""

from __future__ import annotations

import argparse
import hashlib
import sys
import time

from . import __version__
from .cktwo import DEFAULT_H3_WINDOW, check_conditions, homology_complex, k_theory_a2, k_theory_general
from .errors import (
    ConsistencyFailure,
    DimensionMismatch,
    NotCommuting,
    NotZeroOne,
    PresentationSyntaxError,
    UnknownBuiltin,
    ValidationError,
)
from .presentation import builtin, builtin_names, parse_presentation, synthetic, validate
from .report import analysis_text, analysis_to_dict, dumps, ktheory_text, ktheory_to_dict
from .transition import HatAlphabet, select
from .zmat import IntMatrix

EXIT_OK, EXIT_CONSISTENCY, EXIT_SYNTAX, EXIT_VALIDATION, EXIT_USAGE = 0, 1, 2, 3, 4
MATRICES = ("hat1", "hat2", "check1", "check2")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror or e}") from None


def _load_presentation(args):
    chosen = [x for x in (args.file, args.builtin, getattr(args, "synthetic", None)) if x is not None]
    if len(chosen) != 1:
        raise UsageError("give exactly one of FILE, --builtin" + (", --synthetic" if hasattr(args, "synthetic") else ""))
    if args.builtin is not None:
        return builtin(args.builtin)
    if getattr(args, "synthetic", None) is not None:
        try:
            return synthetic(args.synthetic)
        except ValueError as e:
            raise UsageError(str(e)) from None
    return parse_presentation(_read(args.file), source=args.file)


def cmd_validate(args) -> int:
    p = _load_presentation(args)
    vp = validate(p)
    print(f"valid, q={vp.q}, |Â|={len(vp.closure)}")
    return EXIT_OK


def cmd_ktheory(args) -> int:
    vp = validate(_load_presentation(args))
    report = k_theory_a2(vp, method=args.method)
    if args.json:
        sys.stdout.write(dumps(ktheory_to_dict(report)))
    else:
        sys.stdout.write(ktheory_text(report))
    return EXIT_OK


def cmd_matrices(args) -> int:
    vp = validate(_load_presentation(args))
    M = select(vp, args.which)
    alpha = HatAlphabet.of(vp)
    header = [
        f"{args.which} of {vp.presentation.source or 'presentation'}",
        f"presentation sha256 {vp.presentation.digest()}",
        "index order: closure triples sorted lexicographically; "
        + "M(b, a) sits in row b, column a",
    ]
    header += [f"{i}: {vp.presentation.word(t)}" for i, t in enumerate(alpha)]
    text = M.to_text(header)
    if args.output in (None, "-"):
        sys.stdout.write(text)
    else:
        try:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as e:
            raise UsageError(f"cannot write {args.output}: {e.strerror or e}") from None
    return EXIT_OK


def _read_matrix(path: str) -> IntMatrix:
    text = _read(path)
    try:
        return IntMatrix.from_text(text)
    except ValueError as e:
        raise _MatrixSyntax(f"{path}: {e}") from None


class _MatrixSyntax(Exception):
    pass


def cmd_analyze(args) -> int:
    t0 = time.perf_counter()
    M1, M2 = _read_matrix(args.m1), _read_matrix(args.m2)
    if M1.shape != M2.shape or not M1.is_square():
        raise UsageError(f"matrices must be square of equal size, got {M1.shape} and {M2.shape}")
    cond = check_conditions(M1, M2, args.h3_window)
    hom = k = None
    notice = None
    try:
        hom = homology_complex(M1, M2)
        k = k_theory_general(M1, M2)
    except NotCommuting:
        notice = "M1 and M2 do not commute; homology and K-groups skipped"
    digest = hashlib.sha256((M1.to_text() + M2.to_text()).encode()).hexdigest()
    doc = analysis_to_dict(cond, hom, k, notice, digest, {"total": round(time.perf_counter() - t0, 6)})
    if notice:
        print(notice, file=sys.stderr)
    sys.stdout.write(dumps(doc) if args.json else analysis_text(doc))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="a2k", description="K-theory of boundary algebras of Ã₂ groups.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def source_args(p, with_synthetic=False):
        p.add_argument("file", nargs="?", help="presentation file")
        p.add_argument("--builtin", choices=builtin_names(), help="use a bundled presentation")
        if with_synthetic:
            p.add_argument("--synthetic", type=int, metavar="Q", help="cyclic presentation of prime order Q")

    p = sub.add_parser("validate", help="check a presentation")
    source_args(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("ktheory", help="run the K-theory pipeline")
    source_args(p, with_synthetic=True)
    p.add_argument("--json", action="store_true", help="emit a JSON report")
    p.add_argument("--method", choices=("auto", "dense", "sparse"), default="auto",
                   help="cokernel algorithm (default: auto by size)")
    p.set_defaults(func=cmd_ktheory)

    p = sub.add_parser("matrices", help="write a transition matrix")
    source_args(p, with_synthetic=True)
    p.add_argument("--which", choices=MATRICES, required=True)
    p.add_argument("-o", "--output", help="output file (default: stdout)")
    p.set_defaults(func=cmd_matrices)

    p = sub.add_parser("analyze", help="conditions, homology and K-groups of a matrix pair")
    p.add_argument("--m1", required=True, help="first matrix file")
    p.add_argument("--m2", required=True, help="second matrix file")
    p.add_argument("--h3-window", type=int, default=DEFAULT_H3_WINDOW)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_analyze)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, UnknownBuiltin, DimensionMismatch, NotZeroOne) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (PresentationSyntaxError, _MatrixSyntax) as e:
        print(f"syntax error: {e}", file=sys.stderr)
        return EXIT_SYNTAX
    except ValidationError as e:
        print(f"invalid: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    except ConsistencyFailure as e:
        print(f"consistency failure: {e}", file=sys.stderr)
        return EXIT_CONSISTENCY


if __name__ == "__main__":
    sys.exit(main())
