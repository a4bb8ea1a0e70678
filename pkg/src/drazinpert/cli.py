"""Command line front end.

Exit codes: 0 success, 1 hypothesis violated, 2 not group invertible,
3 numeric failure, 4 worked-example mismatch, 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from .errors import DrazinPertError, NotGroupInvertible
from .geninv import drazin, group_inverse
from .harness.matio import matrix_to_dict, read_matrix
from .harness.trials import fuzz_specs, run_batch, summarize
from .harness.worked import reproduce_examples
from .matcore import NormKind, Tolerances
from .perturb import (
    MODES,
    bound_c24,
    bound_c33,
    bound_c34,
    bound_t23,
    bound_t32,
    check_c34,
    check_t23,
    check_t32,
    sum_group_t23,
    sum_group_t32,
)

EXIT_OK = 0
EXIT_HYPOTHESIS = 1
EXIT_NOT_GROUP = 2
EXIT_NUMERIC = 3
EXIT_MISMATCH = 4
EXIT_USAGE = 64

CHECKS = {"t23": check_t23, "t32": check_t32, "c34": check_c34}
FORMULAS = {"t23": sum_group_t23, "t32": sum_group_t32}
BOUNDS = {"t23": bound_t23, "t32": bound_t32, "c24": bound_c24, "c33": bound_c33, "c34": bound_c34}
THEOREM_NAMES = {"t23": "T2.3", "t32": "T3.2"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def format_matrix(m, digits: int = 6) -> str:
    m = np.asarray(m)
    if m.size == 0:
        return "[]"
    real = np.allclose(m.imag, 0.0, atol=1e-14)

    def cell(z):
        if real:
            return f"{z.real:.{digits}g}"
        return f"{z.real:.{digits}g}{z.imag:+.{digits}g}i"

    cells = [[cell(z) for z in row] for row in m]
    width = max(len(c) for row in cells for c in row)
    return "\n".join("  " + " ".join(c.rjust(width) for c in row) for row in cells)


def _fmt(v) -> str:
    if isinstance(v, float):
        return "Divergent" if np.isinf(v) else f"{v:.12g}"
    return str(v)


class _Out:
    def __init__(self, as_json: bool, stream=None):
        self.as_json = as_json
        self.stream = stream or sys.stdout
        self.doc: dict = {}
        self.text: list[str] = []

    def line(self, s: str = ""):
        self.text.append(s)

    def matrix(self, label: str, m):
        self.doc[label] = matrix_to_dict(m)
        self.line(f"{label}:")
        self.line(format_matrix(m))

    def field(self, label: str, value, shown=None):
        self.doc[label] = value
        self.line(f"{label}: {_fmt(value) if shown is None else shown}")

    def flush(self):
        if self.as_json:
            self.stream.write(json.dumps(self.doc, default=str) + "\n")
        else:
            self.stream.write("\n".join(self.text) + "\n")


def _report_lines(out: _Out, rep):
    out.doc["conditions"] = rep.to_dict()
    out.line(f"theorem: {rep.theorem}  (norm {rep.norm_kind.value})")
    out.line(f"|a^d b a a^d| = {rep.norm_value:.12g}  ({'< 1' if rep.norm_ok else '>= 1, fails'})")
    for k, v in rep.residuals.items():
        out.line(f"  {k:<28} scaled {v:.3e}   raw {rep.raw.get(k, float('nan')):.3e}")
    out.line(f"hypotheses hold: {rep.all_hold}")


def _bound_lines(out: _Out, bd):
    out.doc["bound"] = bd.to_dict()
    out.line(f"bound terms (norm {bd.norm_kind.value}):")
    for k, v in bd.terms:
        out.line(f"  {k:<16} {_fmt(v)}")
    out.line(f"total: {_fmt(bd.total)}")


def cmd_drazin(args, out, tol) -> int:
    res = drazin(read_matrix(args.file), tol)
    out.field("index", res.index)
    out.matrix("drazin_inverse", res.inverse)
    out.matrix("spectral_idempotent", res.spectral_idempotent)
    return EXIT_OK


def cmd_group(args, out, tol) -> int:
    out.matrix("group_inverse", group_inverse(read_matrix(args.file), tol))
    return EXIT_OK


def cmd_check(args, out, tol) -> int:
    rep = CHECKS[args.theorem](read_matrix(args.a), read_matrix(args.b), args.norm, tol)
    _report_lines(out, rep)
    return EXIT_OK if rep.all_hold else EXIT_HYPOTHESIS


def cmd_perturb(args, out, tol) -> int:
    res = FORMULAS[args.theorem](read_matrix(args.a), read_matrix(args.b), args.mode, tol)
    out.field("mode", res.mode)
    out.field("tail_index", res.tail_index)
    out.field("sum_index", res.sum_index)
    out.field("exists", res.exists)
    if not res.exists:
        out.line("a + b is not group invertible")
        return EXIT_NOT_GROUP
    out.matrix("group_inverse", res.group_inv)
    return EXIT_OK


def cmd_bound(args, out, tol) -> int:
    bd = BOUNDS[args.theorem](read_matrix(args.a), read_matrix(args.b), args.norm, tol)
    _bound_lines(out, bd)
    return EXIT_OK


def cmd_examples(args, out, tol) -> int:
    t0 = time.perf_counter()
    rep = reproduce_examples(args.norm, tol)
    out.doc.update(rep.to_dict())
    for s in rep.lines():
        out.line(s)
    out.field("seconds", round(time.perf_counter() - t0, 4))
    out.line("all assertions pass" if rep.ok else f"{len(rep.failures)} assertion(s) failed")
    return EXIT_OK if rep.ok else EXIT_MISMATCH


def _dims(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("-")
    try:
        dims = (int(lo), int(hi)) if sep else (int(lo), int(lo))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or LO-HI, got {text!r}") from None
    if not 2 <= dims[0] <= dims[1] <= 16:
        raise argparse.ArgumentTypeError("dimensions must satisfy 2 <= LO <= HI <= 16")
    return dims


def cmd_fuzz(args, out, tol) -> int:
    t0 = time.perf_counter()
    specs = fuzz_specs(THEOREM_NAMES[args.theorem], args.trials, args.seed, args.dim)
    records = run_batch(specs, args.norm, tol, args.workers)
    summary = summarize(records)
    if args.report:
        with open(args.report, "w") as fh:
            for r in records:
                fh.write(json.dumps(r.to_dict(), default=str) + "\n")
    out.doc["summary"] = summary.to_dict()
    out.line(f"fuzz {THEOREM_NAMES[args.theorem]}, dims {args.dim[0]}-{args.dim[1]}, seed {args.seed}")
    for s in summary.lines():
        out.line("  " + s)
    for r in records:
        if not r.ok:
            out.line(f"  FAILED {r.spec}: {r.failure or 'disagreement'}")
    out.field("seconds", round(time.perf_counter() - t0, 3))
    return EXIT_OK if summary.ok == summary.trials else EXIT_NUMERIC


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
    normed = _Parser(add_help=False)
    normed.add_argument("--norm", type=NormKind.parse, default=NormKind.ENTRYWISE_L1,
                        help="entrywise-l1 (default), operator-1, operator-inf or frobenius")

    p = _Parser(prog="drazinpert", description="Drazin and group inverses of perturbed matrices.", parents=[common])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("drazin", parents=[common], help="Drazin inverse and index of a matrix file")
    s.add_argument("file")
    s.set_defaults(run=cmd_drazin)

    s = sub.add_parser("group", parents=[common], help="group inverse of a matrix file")
    s.add_argument("file")
    s.set_defaults(run=cmd_group)

    s = sub.add_parser("check", parents=[common, normed], help="evaluate perturbation hypotheses")
    s.add_argument("--theorem", choices=sorted(CHECKS), required=True)
    s.add_argument("a")
    s.add_argument("b")
    s.set_defaults(run=cmd_check)

    s = sub.add_parser("perturb", parents=[common], help="group inverse of a + b by the block formula")
    s.add_argument("--theorem", choices=sorted(FORMULAS), required=True)
    s.add_argument("--mode", choices=MODES, default="block")
    s.add_argument("a")
    s.add_argument("b")
    s.set_defaults(run=cmd_perturb)

    s = sub.add_parser("bound", parents=[common, normed], help="upper bound on |(a+b)^# - a^d|")
    s.add_argument("--theorem", choices=sorted(BOUNDS), required=True)
    s.add_argument("a")
    s.add_argument("b")
    s.set_defaults(run=cmd_bound)

    s = sub.add_parser("examples", parents=[common, normed], help="reproduce the two worked pairs")
    s.set_defaults(run=cmd_examples)

    s = sub.add_parser("fuzz", parents=[common, normed], help="random formula-versus-oracle trials")
    s.add_argument("--theorem", choices=sorted(FORMULAS), required=True)
    s.add_argument("--dim", type=_dims, default=(2, 8), help="N or LO-HI (default 2-8)")
    s.add_argument("--trials", type=int, default=200)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--report", help="write one JSON trial record per line")
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(run=cmd_fuzz)
    return p


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        tol = Tolerances.from_env()
    except UsageError as exc:
        stderr.write(f"{exc}\n")
        return EXIT_USAGE
    except ValueError as exc:
        stderr.write(f"{parser.format_usage()}error: {exc}\n")
        return EXIT_USAGE
    out = _Out(getattr(args, "json", False), stdout)
    try:
        code = args.run(args, out, tol)
    except NotGroupInvertible as exc:
        out.field("error", str(exc))
        code = exc.exit_code
    except DrazinPertError as exc:
        out.field("error", f"{type(exc).__name__}: {exc}")
        report = getattr(exc, "report", None)
        if report is not None:
            _report_lines(out, report)
        code = exc.exit_code
    except (OSError, ValueError) as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    out.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
