"""End-to-end runs: ingest, transform, quadratize, solve, decode, tabulate."""

from __future__ import annotations

import csv
import io
import logging
import math
import statistics
import time
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path

from .bounds import ORACLE_MAX_VARS, penalty_lower_bound_oracle
from .cnf import CnfInstance, parse_dimacs
from .cover import pairs_of, solve_min_cover
from .errors import MinQuboError, TooManyVariables
from .poly import Polynomial, build_objective
from .qubo_io import export_qubo, parse_cubic_poly
from .quadratize import (QuboModel, SubstitutionPlan, assign_terms, dominance_filter,
                         extract_cubic_terms, penalty_lower_bound, quadratize)
from .solver import SolveReport, brute_force, decode, tabu_search

log = logging.getLogger(__name__)

# eq3 mode also runs the exhaustive oracle when it is this cheap, to flag gaps
AUDIT_MAX_VARS = 16


@dataclass
class PipelineConfig:
    inputs: list[str] = field(default_factory=list)
    kind: str = "cnf"
    m_mode: str = "eq3"
    solver: str = "tabu"
    seed: int = 0
    time_limit: float = 30.0
    iters: int | None = None
    target_stop: bool = False
    out: str | None = None
    fmt: str = "qubo"
    stats_path: str | None = None
    stats_only: bool = False
    record_timing: bool = True

    def __post_init__(self):
        if self.kind not in ("cnf", "poly"):
            raise ValueError(f"kind must be cnf or poly, got {self.kind!r}")
        if self.solver not in ("tabu", "exact"):
            raise ValueError(f"solver must be tabu or exact, got {self.solver!r}")
        if self.time_limit <= 0:
            raise ValueError("time_limit must be positive")
        if self.iters is not None and self.iters < 1:
            raise ValueError("iters must be >= 1")
        parse_m_mode(self.m_mode)


def parse_m_mode(mode: str) -> tuple[str, int | None]:
    if mode in ("eq3", "oracle"):
        return mode, None
    if mode.startswith("fixed:"):
        try:
            value = int(mode[len("fixed:"):])
        except ValueError:
            raise ValueError(f"bad fixed M in {mode!r}") from None
        if value < 1:
            raise ValueError("fixed M must be >= 1")
        return "fixed", value
    raise ValueError(f"m_mode must be eq3, oracle or fixed:<int>, got {mode!r}")


@dataclass
class InstanceStats:
    instance: str
    n: int
    m: int | None
    cubic_terms: int
    forced_pairs: int
    residual_ip_size: int
    pct_reduction_terms: float
    pct_reduction_pairs: float
    aux_vars: int
    m_lb: int
    m_oracle: str | None
    eq3_gap: bool | None
    penalty_m: int
    q_nodes: int
    q_edges: int
    best_value: int | None
    satisfied: int | None
    percent_satisfied: float | None
    penalty_clean: bool | None
    elapsed: float


STAT_COLUMNS = [f.name for f in fields(InstanceStats)]
SUMMARY_COLUMNS = ["n", "m", "cubic_terms", "forced_pairs", "residual_ip_size",
                   "pct_reduction_terms", "pct_reduction_pairs", "aux_vars", "m_lb", "penalty_m",
                   "q_nodes", "q_edges", "best_value", "satisfied", "percent_satisfied", "elapsed"]


@dataclass
class InstanceResult:
    stats: InstanceStats
    model: QuboModel
    plan: SubstitutionPlan
    report: SolveReport | None


@dataclass
class PipelineResult:
    results: list[InstanceResult] = field(default_factory=list)
    failures: list[tuple[str, str]] = field(default_factory=list)

    @property
    def stats(self) -> list[InstanceStats]:
        return [r.stats for r in self.results]

    @property
    def ok(self) -> bool:
        return not self.failures


def reduction_ratios(cubic_triples, residual_triples) -> tuple[float, float]:
    """Percent of cubic terms, and of candidate pairs, removed from the cover search."""
    if not cubic_triples:
        return 100.0, 100.0
    all_pairs = {p for t in cubic_triples for p in pairs_of(t)}
    left_pairs = {p for t in residual_triples for p in pairs_of(t)}
    by_terms = 100.0 * (len(cubic_triples) - len(residual_triples)) / len(cubic_triples)
    by_pairs = 100.0 * (len(all_pairs) - len(left_pairs)) / len(all_pairs)
    return by_terms, by_pairs


def process(poly: Polynomial, num_vars: int, name: str, config: PipelineConfig,
            instance: CnfInstance | None = None) -> InstanceResult:
    t0 = time.perf_counter()
    cubics = extract_cubic_terms(poly)
    forced, residual = dominance_filter(cubics)
    cover = solve_min_cover(residual, forced)
    plan = assign_terms(cubics, forced | cover, num_vars,
                        forced=forced, residual_cover_size=len(residual))
    m_lb = penalty_lower_bound(plan)

    mode, fixed = parse_m_mode(config.m_mode)
    oracle = None
    width = len({v for t in cubics for v in t.variables}) + plan.num_aux
    if mode == "oracle":
        if width > ORACLE_MAX_VARS:
            raise TooManyVariables(f"oracle M needs {width} variables (limit {ORACLE_MAX_VARS})")
        oracle = penalty_lower_bound_oracle(plan, cubics)
    elif width <= AUDIT_MAX_VARS:
        oracle = penalty_lower_bound_oracle(plan, cubics)
    if mode == "fixed":
        penalty_m = fixed
    elif mode == "oracle":
        penalty_m = max(math.ceil(oracle), 1)
    else:
        penalty_m = m_lb

    provenance = {"source": name, "kind": config.kind}
    if instance is not None:
        provenance["fingerprint"] = instance.fingerprint()
    model = quadratize(poly, plan, penalty_m, provenance)

    report = None
    best_value = satisfied = pct = clean = None
    m = instance.num_clauses if instance is not None else None
    if not config.stats_only:
        report = solve(model, config, target=m if config.target_stop else None)
        best_value = report.best.total_value
        clean = report.penalty_clean
        if instance is not None:
            satisfied = decode(report.best, instance, model)
            report = replace(report, decoded_satisfied=satisfied)
            pct = 100.0 * satisfied / m

    by_terms, by_pairs = reduction_ratios([t.variables for t in cubics],
                                          [t.variables for t in residual])
    elapsed = time.perf_counter() - t0 if config.record_timing else 0.0
    if not config.record_timing and report is not None:
        report = replace(report, elapsed=0.0)
    stats = InstanceStats(
        instance=name, n=num_vars, m=m, cubic_terms=len(cubics), forced_pairs=len(forced),
        residual_ip_size=len(residual), pct_reduction_terms=by_terms, pct_reduction_pairs=by_pairs,
        aux_vars=plan.num_aux, m_lb=m_lb,
        m_oracle=None if oracle is None else str(oracle),
        eq3_gap=None if oracle is None else bool(oracle > m_lb),
        penalty_m=penalty_m, q_nodes=model.nodes(), q_edges=model.edges(),
        best_value=best_value, satisfied=satisfied, percent_satisfied=pct, penalty_clean=clean,
        elapsed=elapsed)
    return InstanceResult(stats, model, plan, report)


def solve(model: QuboModel, config: PipelineConfig, target: int | None = None) -> SolveReport:
    if config.solver == "exact":
        t0 = time.perf_counter()
        best = brute_force(model)
        return SolveReport(best, None, model.penalty_clean(best.bits),
                           time.perf_counter() - t0, config.seed, 1 << model.size)
    if config.iters is not None:
        return tabu_search(model, seed=config.seed, target=target, max_iters=config.iters)
    return tabu_search(model, seed=config.seed, time_limit=config.time_limit, target=target)


def load_input(path: str | Path, kind: str) -> tuple[Polynomial, int, CnfInstance | None]:
    path = Path(path)
    data = path.read_bytes()
    if kind == "cnf":
        instance = parse_dimacs(data, source_name=path.name)
        return build_objective(instance), instance.num_vars, instance
    poly = parse_cubic_poly(data)
    return poly, max(poly.variables, default=0), None


def run_pipeline(config: PipelineConfig) -> PipelineResult:
    """Process every input in order; failures are recorded and do not stop the run."""
    result = PipelineResult()
    out = Path(config.out) if config.out else None
    many = len(config.inputs) > 1 or (out is not None and out.is_dir())
    if out is not None and many:
        out.mkdir(parents=True, exist_ok=True)
    for path in config.inputs:
        name = Path(path).name
        try:
            poly, num_vars, instance = load_input(path, config.kind)
            res = process(poly, num_vars, name, config, instance)
        except (MinQuboError, ValueError, OSError) as exc:
            log.error("%s: %s: %s", name, type(exc).__name__, exc)
            result.failures.append((name, f"{type(exc).__name__}: {exc}"))
            continue
        result.results.append(res)
        if out is not None:
            target = out / f"{Path(path).stem}.{config.fmt}" if many else out
            target.write_bytes(export_qubo(res.model, config.fmt))
    return result


def summarize(stats: list[InstanceStats]) -> list[dict]:
    """Min, max, mean and sample stdev of each numeric column (blank cells skipped)."""
    rows = []
    for label, fn in (("min", min), ("max", max), ("mean", statistics.fmean),
                      ("stdev", lambda v: statistics.stdev(v) if len(v) > 1 else 0.0)):
        row = {"stat": label}
        for col in SUMMARY_COLUMNS:
            values = [getattr(s, col) for s in stats if getattr(s, col) is not None]
            row[col] = fn(values) if values else None
        rows.append(row)
    return rows


def _cell(v):
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def stats_csv(stats: list[InstanceStats]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(STAT_COLUMNS)
    for s in stats:
        w.writerow([_cell(v) for v in asdict(s).values()])
    return buf.getvalue()


def summary_csv(stats: list[InstanceStats]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["stat"] + SUMMARY_COLUMNS)
    for row in summarize(stats):
        w.writerow([row["stat"]] + [_cell(row[c]) for c in SUMMARY_COLUMNS])
    return buf.getvalue()


def read_stats_csv(text: str) -> list[dict]:
    return list(csv.DictReader(io.StringIO(text)))
