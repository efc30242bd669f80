"""Command-line entry points."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .cnf import random_3sat, to_dimacs
from .pipeline import PipelineConfig, run_pipeline, stats_csv, summary_csv


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="minqubo",
        description="Compile Max 3-SAT / cubic pseudo-Boolean inputs into minimal QUBO models and solve them.")
    p.add_argument("--input", nargs="*", default=[], metavar="PATH", help="input files")
    p.add_argument("--kind", choices=["cnf", "poly"], default="cnf")
    p.add_argument("--m-mode", default="eq3", help="eq3 | oracle | fixed:<int> (default eq3)")
    p.add_argument("--solver", choices=["tabu", "exact"], default="tabu")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--time-limit", type=float, default=30.0, help="seconds per instance (default 30)")
    p.add_argument("--iters", type=int, default=None,
                   help="tabu iteration budget; replaces the time limit and makes runs reproducible")
    p.add_argument("--target-stop", action="store_true",
                   help="stop as soon as every clause is satisfied")
    p.add_argument("--out", default=None, help="QUBO output file, or directory for several inputs")
    p.add_argument("--format", dest="fmt", choices=["qubo", "json"], default="qubo")
    p.add_argument("--stats", dest="stats_path", default=None, metavar="CSV",
                   help="per-instance statistics; the summary goes next to it as *_summary.csv")
    p.add_argument("--stats-only", action="store_true", help="transform and report, skip solving")
    p.add_argument("--no-timing", action="store_true",
                   help="write 0 for elapsed times so repeated runs produce identical files")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        config = PipelineConfig(
            inputs=args.input, kind=args.kind, m_mode=args.m_mode, solver=args.solver,
            seed=args.seed, time_limit=args.time_limit, iters=args.iters,
            target_stop=args.target_stop, out=args.out, fmt=args.fmt,
            stats_path=args.stats_path, stats_only=args.stats_only,
            record_timing=not args.no_timing)
    except ValueError as exc:
        print(f"minqubo: error: {exc}", file=sys.stderr)
        return 2

    result = run_pipeline(config)
    table = stats_csv(result.stats)
    summary = summary_csv(result.stats)
    if config.stats_path:
        path = Path(config.stats_path)
        path.write_text(table)
        path.with_name(path.stem + "_summary.csv").write_text(summary)
    else:
        sys.stdout.write(table)
        if result.stats:
            sys.stdout.write("\n" + summary)
    for name, err in result.failures:
        print(f"minqubo: {name}: {err}", file=sys.stderr)
    return 0 if result.ok else 1


def generate_main(argv=None) -> int:
    p = argparse.ArgumentParser(prog="minqubo-gen",
                                description="Write seeded uniform random 3-SAT instances as DIMACS files.")
    p.add_argument("outdir")
    p.add_argument("--vars", type=int, default=100)
    p.add_argument("--clauses", type=int, default=429)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--seed", type=int, default=0, help="first seed; instance i uses seed+i")
    args = p.parse_args(argv)
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    for i in range(args.count):
        name = f"rand-n{args.vars}-m{args.clauses}-s{args.seed + i}.cnf"
        inst = random_3sat(args.vars, args.clauses, args.seed + i, name)
        (out / name).write_text(to_dimacs(inst))
    return 0


if __name__ == "__main__":
    sys.exit(main())
