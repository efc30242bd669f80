import math
import statistics
import subprocess
import sys

import pytest

from conftest import EXAMPLE_CNF, GOLDEN_Q, SIX_TERMS
from minqubo import import_qubo, random_3sat, to_dimacs
from minqubo.cli import generate_main, main
from minqubo.pipeline import (STAT_COLUMNS, SUMMARY_COLUMNS, PipelineConfig, read_stats_csv,
                              run_pipeline, stats_csv, summarize)


@pytest.fixture
def example_file(tmp_path):
    path = tmp_path / "example4.cnf"
    path.write_text(EXAMPLE_CNF)
    return path


@pytest.fixture
def six_file(tmp_path):
    path = tmp_path / "six.poly"
    path.write_text("\n".join(f"1 {i} {j} {k}" for i, j, k in SIX_TERMS) + "\n")
    return path


def test_worked_example_end_to_end(example_file):
    res = run_pipeline(PipelineConfig([str(example_file)], m_mode="fixed:10", solver="exact"))
    (r,) = res.results
    assert r.model.q.tolist() == GOLDEN_Q
    assert r.stats.percent_satisfied == 100.0
    assert r.stats.aux_vars == 1
    assert r.stats.penalty_m == 10
    assert r.report.decoded_satisfied == 4


def test_empty_input_list():
    res = run_pipeline(PipelineConfig([]))
    assert res.ok and res.stats == []
    assert main([]) == 0


def test_failures_are_tagged_and_do_not_stop(tmp_path, example_file):
    bad = tmp_path / "bad.cnf"
    bad.write_text("p cnf 2 1\n1 2 3 0\n")
    res = run_pipeline(PipelineConfig([str(bad), str(example_file)], iters=200))
    assert [r.stats.instance for r in res.results] == ["example4.cnf"]
    assert res.failures[0][0] == "bad.cnf" and "VariableOutOfRange" in res.failures[0][1]
    assert main(["--input", str(bad), str(example_file), "--iters", "50"]) == 1


def test_poly_input(six_file):
    res = run_pipeline(PipelineConfig([str(six_file)], kind="poly", solver="exact"))
    s = res.stats[0]
    assert (s.cubic_terms, s.forced_pairs, s.aux_vars, s.m_lb) == (6, 2, 2, 4)
    assert s.m is None and s.percent_satisfied is None
    assert s.best_value == max(0, 6)  # all-ones on x gives 6 unit cubic terms


def test_m_modes(example_file):
    eq3 = run_pipeline(PipelineConfig([str(example_file)], solver="exact")).stats[0]
    orc = run_pipeline(PipelineConfig([str(example_file)], solver="exact", m_mode="oracle")).stats[0]
    assert eq3.penalty_m == 2 and eq3.m_oracle == "3" and eq3.eq3_gap is True
    assert orc.penalty_m == 3
    assert eq3.percent_satisfied == orc.percent_satisfied == 100.0


@pytest.mark.parametrize("mode", ["fixed:0", "fixed:x", "magic"])
def test_bad_m_mode(mode):
    with pytest.raises(ValueError):
        PipelineConfig([], m_mode=mode)
    assert main(["--m-mode", mode]) == 2


def test_stats_only_matches_full(tmp_path):
    paths = []
    for s in range(3):
        p = tmp_path / f"r{s}.cnf"
        p.write_text(to_dimacs(random_3sat(30, 120, s)))
        paths.append(str(p))
    full = run_pipeline(PipelineConfig(paths, iters=300, record_timing=False)).stats
    only = run_pipeline(PipelineConfig(paths, stats_only=True, record_timing=False)).stats
    transform_cols = ["n", "m", "cubic_terms", "forced_pairs", "residual_ip_size",
                      "pct_reduction_terms", "pct_reduction_pairs", "aux_vars", "m_lb",
                      "m_oracle", "penalty_m", "q_nodes", "q_edges"]
    for a, b in zip(full, only):
        assert [getattr(a, c) for c in transform_cols] == [getattr(b, c) for c in transform_cols]
        assert b.best_value is None


def test_percent_satisfied_formula(tmp_path):
    paths = []
    for s in range(4):
        p = tmp_path / f"r{s}.cnf"
        p.write_text(to_dimacs(random_3sat(20, 90, s)))
        paths.append(str(p))
    for s in run_pipeline(PipelineConfig(paths, iters=500)).stats:
        assert s.percent_satisfied == s.satisfied * 100 / s.m
        assert 0 <= s.percent_satisfied <= 100
        assert 0 <= s.pct_reduction_terms <= 100 and 0 <= s.pct_reduction_pairs <= 100


def test_summary_recomputes_from_rows(tmp_path):
    paths = []
    for s in range(5):
        p = tmp_path / f"r{s}.cnf"
        p.write_text(to_dimacs(random_3sat(25, 100, s)))
        paths.append(str(p))
    stats_path = tmp_path / "stats.csv"
    assert main(["--input", *paths, "--iters", "200", "--stats", str(stats_path)]) == 0
    rows = read_stats_csv(stats_path.read_text())
    assert list(rows[0]) == STAT_COLUMNS
    summary = {r["stat"]: r for r in read_stats_csv((tmp_path / "stats_summary.csv").read_text())}
    for col in SUMMARY_COLUMNS:
        values = [float(r[col]) for r in rows]
        assert float(summary["min"][col]) == min(values)
        assert float(summary["max"][col]) == max(values)
        assert math.isclose(float(summary["mean"][col]), statistics.fmean(values), rel_tol=0, abs_tol=1e-12)
        assert math.isclose(float(summary["stdev"][col]), statistics.stdev(values), rel_tol=1e-12, abs_tol=1e-12)


def test_summarize_single_row(example_file):
    stats = run_pipeline(PipelineConfig([str(example_file)], solver="exact")).stats
    rows = {r["stat"]: r for r in summarize(stats)}
    assert rows["stdev"]["m_lb"] == 0.0 and rows["mean"]["m_lb"] == 2


def test_cli_exports(tmp_path, example_file, six_file):
    out = tmp_path / "model.qubo"
    assert main(["--input", str(example_file), "--m-mode", "fixed:10", "--solver", "exact",
                 "--out", str(out)]) == 0
    assert import_qubo(out.read_bytes()).q.tolist() == GOLDEN_Q
    outdir = tmp_path / "models"
    assert main(["--input", str(example_file), str(six_file), "--kind", "cnf", "--iters", "10",
                 "--out", str(outdir), "--format", "json"]) == 1  # six.poly is not DIMACS
    assert (outdir / "example4.json").exists()


def test_cli_stdout(example_file, capsys):
    assert main(["--input", str(example_file), "--solver", "exact"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == ",".join(STAT_COLUMNS)
    assert "example4.cnf" in out


def test_generator_cli(tmp_path):
    assert generate_main([str(tmp_path), "--vars", "10", "--clauses", "30", "--count", "2", "--seed", "5"]) == 0
    files = sorted(tmp_path.glob("*.cnf"))
    assert len(files) == 2
    assert files[0].read_text() == to_dimacs(random_3sat(10, 30, 5, files[0].name))


def test_module_entry_point(example_file):
    proc = subprocess.run([sys.executable, "-m", "minqubo.cli", "--input", str(example_file),
                           "--solver", "exact", "--no-timing"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "example4.cnf,4,4,2,1,0,100.0,100.0,1,2,3,True,2,5,9,5,4,100.0,False,0.0" in proc.stdout


def test_stats_csv_blank_cells(six_file):
    stats = run_pipeline(PipelineConfig([str(six_file)], kind="poly", stats_only=True)).stats
    row = read_stats_csv(stats_csv(stats))[0]
    assert row["m"] == "" and row["percent_satisfied"] == ""
