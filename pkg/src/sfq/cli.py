"""Command line entry point.

Exit codes: 0 success, 2 bad input, 3 inconsistent linear system, 4 a
verification check failed.
"""
from __future__ import annotations

import argparse
import logging
import sys
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

from .graph import GraphVector
from .homology import hoch_differential, pi_projection, pike_differential, pike_homotopy
from .induction import InductionError, run_induction
from .io import (ParseError, format_log, format_table, format_vector, format_verdicts,
                 read_table, read_vector, write_text)
from .kgra import broom, compose
from .linalg import Inconsistent
from .oc import FAIL, mc_verify
from .weights import estimate_weight

EXIT_OK, EXIT_PARSE, EXIT_INCONSISTENT, EXIT_FAIL = 0, 2, 3, 4


@dataclass(frozen=True)
class RunConfig:
    nmax: int
    kmax: int
    seed: int = 0
    samples: int = 0
    out: Path = Path("sfq-out")
    verbosity: int = 0

    def __post_init__(self):
        if self.nmax < 2:
            raise ValueError("--nmax must be at least 2")
        if self.kmax < 0:
            raise ValueError("--kmax must be non-negative")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("--seed must fit in 64 bits")
        if self.samples < 0:
            raise ValueError("--samples must be non-negative")

    def header(self) -> str:
        return f"# nmax={self.nmax} kmax={self.kmax} seed={self.seed} samples={self.samples}\n"


def _single(v: GraphVector):
    (g, _), = v.graphs()
    return g


# subcommands -----------------------------------------------------------------

def cmd_canon(args) -> int:
    sys.stdout.write(format_vector(read_vector(args.file)))
    return EXIT_OK


def cmd_compose(args) -> int:
    outer, inner = read_vector(args.outer), read_vector(args.inner)
    sys.stdout.write(format_vector(compose(outer, args.slot, inner, args.color)))
    return EXIT_OK


def _unary(op):
    def run(args) -> int:
        sys.stdout.write(format_vector(op(read_vector(args.file))))
        return EXIT_OK
    return run


def cmd_run(args) -> int:
    cfg = RunConfig(args.nmax, args.kmax, args.seed, args.samples, Path(args.out), args.verbose)
    result = run_induction(cfg.nmax, cfg.kmax)
    cfg.out.mkdir(parents=True, exist_ok=True)
    write_text(cfg.out / "table.txt", format_table(result.table))
    write_text(cfg.out / "report.tsv", cfg.header() + format_log(result.log))
    write_text(cfg.out / "mc.tsv", format_verdicts(result.report))
    if cfg.samples:
        rows = ["k\tmean\tstderr\tsamples\tseed\n"]
        for k in range(min(cfg.kmax, 3) + 1):
            est = estimate_weight(_single(broom(k)), cfg.samples, cfg.seed)
            rows.append(f"{k}\t{est.mean!r}\t{est.stderr!r}\t{est.samples}\t{est.seed}\n")
        write_text(cfg.out / "weights.tsv", "".join(rows))
    from .plotting import stage_figure
    stage_figure(result.log, result.report, cfg.out / "report.png")
    counts = Counter(v.status for v in result.report)
    sys.stdout.write("".join(f"{s}\t{counts[s]}\n" for s in sorted(counts)))
    return EXIT_FAIL if counts[FAIL] else EXIT_OK


def cmd_verify(args) -> int:
    report = mc_verify(read_table(args.table))
    sys.stdout.write(format_verdicts(report))
    return EXIT_FAIL if any(v.status == FAIL for v in report) else EXIT_OK


def cmd_weight(args) -> int:
    v = read_vector(args.file)
    if len(v) > 1:
        raise ParseError(0, args.file, "weight needs a single graph")
    if not v:
        mean, stderr = 0.0, 0.0
    else:
        (g, c), = v.graphs()
        est = estimate_weight(g, args.samples, args.seed)
        mean, stderr = est.mean * float(c), est.stderr * abs(float(c))
    sys.stdout.write("mean\tstderr\tsamples\tseed\n")
    sys.stdout.write(f"{mean!r}\t{stderr!r}\t{args.samples}\t{args.seed}\n")
    return EXIT_OK


# parser ------------------------------------------------------------------------

def _positive(s: str) -> int:
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sfq", description="Rational SFQ construction toolkit")
    p.add_argument("-v", "--verbose", action="count", default=0)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("canon", help="canonical form of a graph file")
    s.add_argument("file")
    s.set_defaults(func=cmd_canon)

    s = sub.add_parser("compose", help="operadic insertion outer o_{slot,colour} inner")
    s.add_argument("--slot", type=_positive, required=True)
    s.add_argument("--color", choices=("c", "o"), required=True)
    s.add_argument("outer")
    s.add_argument("inner")
    s.set_defaults(func=cmd_compose)

    for name, op, what in (("hoch", hoch_differential, "Hochschild differential"),
                           ("pi", pi_projection, "projection onto univalent antisymmetric graphs"),
                           ("pike-d", pike_differential, "pike-creating operator"),
                           ("pike-h", pike_homotopy, "homotopy of the pike operator")):
        s = sub.add_parser(name, help=what)
        s.add_argument("file")
        s.set_defaults(func=_unary(op))

    s = sub.add_parser("run", help="build a rational MC element up to a cutoff")
    s.add_argument("--nmax", type=int, required=True)
    s.add_argument("--kmax", type=int, required=True)
    s.add_argument("--seed", type=int, default=0, help="seed for the weight cross-check")
    s.add_argument("--samples", type=int, default=0,
                   help="Monte Carlo samples per broom weight cross-check (0 skips it)")
    s.add_argument("--out", default="sfq-out")
    s.set_defaults(func=cmd_run)

    s = sub.add_parser("verify", help="check the MC equation on a table file")
    s.add_argument("table")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("weight", help="Monte Carlo weight of a graph")
    s.add_argument("file")
    s.add_argument("--samples", type=_positive, default=100_000)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_weight)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2),
                        format="%(levelname)s %(name)s: %(message)s")
    if args.command == "run":
        try:
            RunConfig(args.nmax, args.kmax, args.seed, args.samples)
        except ValueError as exc:
            parser.error(str(exc))
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"sfq: error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (Inconsistent, InductionError) as exc:
        print(f"sfq: INCONSISTENT: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT


if __name__ == "__main__":
    sys.exit(main())
