"""Command line interface.

Exit codes: 0 success, 1 usage error, 2 verification failure (including
malformed matrix files), 3 size limit exceeded, 4 ambiguous nullspace rank.
"""

from __future__ import annotations

import argparse
import contextlib
import io
import json
import math
import os
import sys
from pathlib import Path

from .catalog import FAMILIES, FamilySpec, catalog_matrix, compose_blocks
from .commutants import second_commutant, zero_pattern_sweep
from .dita import DitaShape, verify_bisch_expectation, verify_bisch_membership, verify_intermediate_decomposition
from .hadamard import (
    DEFAULT_TOL,
    NotHadamardError,
    check_hadamard,
    equivalence_fingerprint,
    fingerprint_digest,
    random_equivalence,
    verify_hadamard,
)
from .io import MatrixFormatError, dumps_matrix, parse_matrix_file, read_matrix
from .report import analyze, write_report
from .tower import SizeLimitError

EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_LIMIT, EXIT_AMBIGUOUS = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")

    def exit(self, status=0, message=None):
        # --help lands here; surface as a normal return
        if message:
            self._print_message(message, sys.stderr)
        raise _HelpExit(status)


class _HelpExit(Exception):
    def __init__(self, status):
        self.status = status


def default_tol() -> float:
    env = os.environ.get("HADSUB_TOL")
    if env:
        try:
            return float(env)
        except ValueError:
            raise UsageError(f"HADSUB_TOL={env!r} is not a number") from None
    return DEFAULT_TOL


def parse_angle(token: str) -> float:
    """``0.7rad`` or bare ``0.7`` -> radians; ``0.25tau`` -> 0.25 * 2 pi."""
    tok = token.strip()
    try:
        if tok.endswith("tau"):
            return float(tok[:-3]) * 2 * math.pi
        if tok.endswith("rad"):
            return float(tok[:-3])
        return float(tok)
    except ValueError:
        raise UsageError(f"bad parameter {token!r}; use e.g. 0.7rad or 0.25tau") from None


def parse_family(name: str, params: str | None) -> FamilySpec:
    if name not in FAMILIES:
        raise UsageError(f"unknown family {name!r}; known: {', '.join(FAMILIES)}")
    tokens = [t for t in (params or "").split(",") if t.strip()]
    if name == "fourier":
        try:
            values = tuple(int(t) for t in tokens)
        except ValueError:
            raise UsageError("fourier takes an integer size, e.g. --params 6") from None
    else:
        values = tuple(parse_angle(t) for t in tokens)
    try:
        return FamilySpec(name, values)
    except ValueError as err:
        raise UsageError(str(err)) from None


def _build_parser() -> _Parser:
    common = _Parser(add_help=False)
    common.add_argument("--tol", type=float, default=None, help="tolerance (default: HADSUB_TOL or 1e-9)")
    common.add_argument("--seed", type=int, default=0, help="seed for every random choice")

    parser = _Parser(prog="hadsub", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("verify", parents=[common], help="check that a matrix file is Hadamard")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("catalog", parents=[common], help="list or generate catalog matrices")
    csub = p.add_subparsers(dest="action", parser_class=_Parser)
    csub.add_parser("list", parents=[common])
    g = csub.add_parser("gen", parents=[common])
    g.add_argument("family")
    g.add_argument("--params", default="")
    g.add_argument("-o", "--output")
    g.add_argument("--equivalent", action="store_true", help="apply a seeded random equivalence")

    p = sub.add_parser("analyze", parents=[common], help="full analysis report")
    p.add_argument("file", nargs="?")
    p.add_argument("--family")
    p.add_argument("--params", default="")
    p.add_argument("--order", type=int, choices=(2, 3, 4), default=2)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json")
    fmt.add_argument("--text", dest="fmt", action="store_const", const="text")
    p.add_argument("--force", action="store_true", help="lift the size limits for orders 3 and 4")
    p.add_argument("--timings", action="store_true", help="include timings (output no longer byte-stable)")

    p = sub.add_parser("sweep", parents=[common], help="profile zero-pattern sweep over a parameter grid")
    p.add_argument("--family", required=True)
    p.add_argument("--grid", required=True, help="points per parameter, e.g. 72 or 72,72")
    p.add_argument("--json", action="store_true")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--max-points", type=int, default=200_000)

    p = sub.add_parser("dita", parents=[common], help="Dita composition and its checks")
    p.add_argument("--A", dest="A", required=True)
    p.add_argument("--B", dest="B", nargs="+", required=True)
    p.add_argument("--D", dest="D", nargs="+")
    p.add_argument("--check-only", action="store_true")
    p.add_argument("-o", "--output")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("fingerprint", parents=[common], help="equivalence fingerprint digest")
    p.add_argument("file")
    return parser


def _cmd_verify(args, tol, out) -> int:
    try:
        mat = read_matrix(args.file)
    except OSError as err:
        raise UsageError(str(err)) from None
    diag = check_hadamard(mat, tol)
    if args.json:
        out.write(json.dumps({
            "n": mat.shape[0],
            "is_hadamard": diag is None,
            "diagnostic": None if diag is None else str(diag),
        }) + "\n")
    else:
        out.write(f"hadamard (n={mat.shape[0]}, tol={tol:g})\n" if diag is None else f"not hadamard: {diag}\n")
    return EXIT_OK if diag is None else EXIT_VERIFY


def _cmd_catalog(args, tol, out) -> int:
    if args.action == "list":
        for name, (arity, _) in FAMILIES.items():
            what = "size n" if name == "fourier" else f"{arity} angle(s)"
            out.write(f"{name:9s} {what}\n")
        return EXIT_OK
    if args.action != "gen":
        raise UsageError("catalog needs 'list' or 'gen'")
    H = catalog_matrix(parse_family(args.family, args.params), tol=tol)
    if args.equivalent:
        H = random_equivalence(H, args.seed)
    text = dumps_matrix(H.mat)
    if args.output:
        Path(args.output).write_text(text)
    else:
        out.write(text)
    return EXIT_OK


def _load_source(args, tol):
    if args.family:
        if args.file:
            raise UsageError("give either a file or --family, not both")
        spec = parse_family(args.family, args.params)
        return catalog_matrix(spec, tol=tol), {"family": spec.name, "params": list(spec.params), "label": spec.label()}
    if not args.file:
        raise UsageError("analyze needs a matrix file or --family")
    try:
        return parse_matrix_file(args.file, tol), {"file": str(args.file)}
    except OSError as err:
        raise UsageError(str(err)) from None


def _cmd_analyze(args, tol, out) -> int:
    H, source = _load_source(args, tol)
    report = analyze(H, source, order=args.order, tol=tol, force=args.force, timings=args.timings)
    out.write(write_report(report, args.fmt or "text").decode())
    return EXIT_AMBIGUOUS if report.ambiguous else EXIT_OK


def _cmd_sweep(args, tol, out) -> int:
    try:
        grid = tuple(int(g) for g in args.grid.split(","))
    except ValueError:
        raise UsageError(f"bad grid {args.grid!r}") from None
    try:
        res = zero_pattern_sweep(args.family, grid, tol, max_points=args.max_points, workers=args.workers)
    except SizeLimitError:
        raise
    except ValueError as err:
        raise UsageError(str(err)) from None
    generic_zeros = next(p.zero_count for p in res.points if p.signature == res.generic_signature)
    if args.json:
        out.write(json.dumps({
            "family": res.family,
            "grid": list(res.grid),
            "points": len(res.points),
            "patterns": res.pattern_count,
            "generic": {"signature": res.generic_signature, "dim": res.generic_dim, "zero_count": generic_zeros},
            "exceptional": [
                {"index": p.index, "params": [round(x, 12) for x in p.params], "dim": p.dim,
                 "zero_count": p.zero_count, "signature": p.signature}
                for p in res.exceptional
            ],
        }, indent=2) + "\n")
    else:
        out.write(f"{res.family} sweep over grid {'x'.join(map(str, res.grid))}: "
                  f"{len(res.points)} points, {res.pattern_count} zero patterns\n")
        out.write(f"generic: dim {res.generic_dim}, {generic_zeros} zero profile entries\n")
        out.write(f"exceptional points: {len(res.exceptional)}\n")
        for p in res.exceptional:
            angles = ", ".join(f"{x / (2 * math.pi):.6g}tau" for x in p.params)
            out.write(f"  ({angles})  dim {p.dim}\n")
    return EXIT_OK


def _cmd_dita(args, tol, out) -> int:
    try:
        A = read_matrix(args.A)
        Bs = [read_matrix(b) for b in args.B]
        Ds = [read_matrix(d) for d in args.D] if args.D else None
    except OSError as err:
        raise UsageError(str(err)) from None
    k = A.shape[0]
    if len(Bs) == 1 and k > 1:
        Bs = Bs * k
    if len(Bs) != k or (Ds is not None and len(Ds) != k):
        raise UsageError(f"A is {k}x{k}: give 1 or {k} B matrices and 0 or {k} D matrices")
    try:
        h = compose_blocks(A, Bs, Ds)
    except ValueError as err:
        raise UsageError(str(err)) from None
    m = Bs[0].shape[0]
    shape = DitaShape(h.shape[0], m, k)
    vtol = max(tol, 1e-8)
    inter = verify_intermediate_decomposition(A, Bs, Ds, tol=vtol)
    expectation = verify_bisch_expectation(shape, vtol)
    hadamard = check_hadamard(h, tol) is None
    result = {
        "shape": [shape.n, shape.m, shape.k],
        "hadamard": hadamard,
        "intermediate": {
            "passed": inter.passed,
            "defects": {k_: float(f"{v:.3e}") for k_, v in inter.defects.items()},
            "span_dim": inter.span_dim,
            "expected_span_dim": inter.expected_span_dim,
            "location": inter.location,
        },
        "bisch_expectation": expectation,
    }
    ok = hadamard and inter.passed and expectation
    if hadamard:
        H = verify_hadamard(h, tol)
        mb = verify_bisch_membership(H, shape, tol)
        result["membership"] = mb.member
        result["witness"] = list(mb.witness) if mb.witness else None
        result["second_dim"] = second_commutant(H, tol).dim
        ok = ok and mb.member
    if not args.check_only and hadamard:
        if args.output:
            Path(args.output).write_text(dumps_matrix(h))
            result["output"] = args.output
        elif args.json:
            result["matrix"] = json.loads(dumps_matrix(h))
    if args.json:
        out.write(json.dumps(result, indent=2) + "\n")
    else:
        out.write(f"dita composition n={shape.n} (m={m}, k={k}): {'hadamard' if hadamard else 'NOT hadamard'}\n")
        if "membership" in result:
            out.write(f"bisch projection in second commutant: {result['membership']}"
                      f" (second commutant dim {result['second_dim']})\n")
        out.write(f"intermediate decomposition: {'passed' if inter.passed else 'FAILED'}"
                  + (f" at {inter.location}" if inter.location else "") + "\n")
        for name, v in inter.defects.items():
            out.write(f"  {name}: {v:.3e}\n")
        out.write(f"bisch expectation identity: {'passed' if expectation else 'FAILED'}\n")
        if not args.check_only and hadamard and not args.output:
            out.write(dumps_matrix(h))
    return EXIT_OK if ok else EXIT_VERIFY


def _cmd_fingerprint(args, tol, out) -> int:
    H = parse_matrix_file(args.file, tol)
    out.write(fingerprint_digest(equivalence_fingerprint(H, tol), tol) + "\n")
    return EXIT_OK


COMMANDS = {
    "verify": _cmd_verify,
    "catalog": _cmd_catalog,
    "analyze": _cmd_analyze,
    "sweep": _cmd_sweep,
    "dita": _cmd_dita,
    "fingerprint": _cmd_fingerprint,
}


def run_command(argv: list[str]) -> tuple[int, str]:
    """Run one CLI invocation; returns (exit code, captured stdout).

    Diagnostics for failures are part of the returned output.
    """
    out = io.StringIO()
    try:
        with contextlib.redirect_stdout(out):
            args = _build_parser().parse_args(argv)
        if args.command is None:
            raise UsageError("missing command; try --help")
        tol = args.tol if args.tol is not None else default_tol()
        if tol <= 0:
            raise UsageError("--tol must be positive")
        code = COMMANDS[args.command](args, tol, out)
    except _HelpExit as ex:
        code = EXIT_OK if ex.status == 0 else EXIT_USAGE
    except UsageError as err:
        out.write(f"usage error: {err}\n")
        code = EXIT_USAGE
    except (NotHadamardError, MatrixFormatError) as err:
        out.write(f"verification failed: {err}\n")
        code = EXIT_VERIFY
    except SizeLimitError as err:
        out.write(f"size limit: {err}\n")
        code = EXIT_LIMIT
    return code, out.getvalue()


def main(argv: list[str] | None = None) -> int:
    code, text = run_command(sys.argv[1:] if argv is None else argv)
    stream = sys.stdout if code in (EXIT_OK, EXIT_AMBIGUOUS) else sys.stderr
    stream.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
