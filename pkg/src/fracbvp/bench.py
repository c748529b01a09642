"""Benchmark harness: run cases, time them, score them, emit CSV and plots.

A diverging or singular solve is a valid scientific outcome here, reported
through the ``status`` column rather than an exception; only configuration
and I/O problems raise.
"""

from __future__ import annotations

import csv
import statistics
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np

from . import fdm, shooting
from .cases import CaseSpec, SolveReport, get_case, make_case3, sup_error
from .ifoi import (AlphaPartition, IfoiDivergenceError, IfoiTrace,
                   make_alpha_partition, make_ivp_solver)
from .svgplot import Series, ramp_color, render_line_plot

RESULTS_CSV_HEADER = ["case", "method", "scheme", "n", "m", "spacing",
                      "error", "time_s", "status"]
TABLE1_CSV_HEADER = ["method", "N", "error", "time_s"]
TABLE1_SIZES = (40, 80, 200)


@dataclass(frozen=True)
class RunConfig:
    """Everything one benchmark invocation needs.

    Unset numeric fields fall back to the case defaults (grid size, stage
    count, spacing, scheme).  The alpha fields are accepted and ignored for
    pure FDM runs.
    """

    case_id: str
    method: str = "both"
    n: Optional[int] = None
    m: Optional[int] = None
    spacing: Optional[str] = None
    scheme: Optional[str] = None
    repeats: int = 1
    output_dir: Union[str, Path] = "."
    emit_trace: bool = False
    case3_constants: Optional[tuple[float, float, float]] = None

    def __post_init__(self):
        if self.method not in ("fdm", "ifoi", "both"):
            raise ValueError(f"unknown method {self.method!r}")
        if self.repeats < 1:
            raise ValueError("repeats must be at least 1")


def _resolve_case(config: RunConfig) -> CaseSpec:
    case = get_case(config.case_id)
    if case.id == "case3" and config.case3_constants is not None:
        case = make_case3(*config.case3_constants)
    return case


def _resolve_params(config: RunConfig,
                    case: CaseSpec) -> tuple[int, AlphaPartition, str]:
    n = config.n if config.n is not None else case.default_n
    spacing = config.spacing or case.default_partition.spacing
    m = config.m if config.m is not None else case.default_partition.stage_count
    scheme = config.scheme or case.default_scheme
    return n, make_alpha_partition(spacing, m), scheme


def _timed(solve, repeats: int):
    """Run a solve ``repeats`` times; returns (result, median wall time)."""
    times = []
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = solve()
        times.append(time.perf_counter() - t0)
    return result, statistics.median(times)


def _run_fdm(case: CaseSpec, n: int, repeats: int, params: dict) -> SolveReport:
    solver = (lambda: fdm.fdm_newton(case, n)) if case.depends_on_u \
        else (lambda: fdm.fdm_linear(case, n))
    try:
        solution, wall = _timed(solver, repeats)
    except fdm.NewtonConvergenceError:
        return SolveReport("fdm", "diverged", params, 0.0)
    except fdm.SingularSystemError:
        return SolveReport("fdm", "singular", params, 0.0)
    return SolveReport("fdm", "converged", params, wall, solution,
                       sup_error(solution, case))


def _run_ifoi(case: CaseSpec, n: int, partition: AlphaPartition, scheme: str,
              repeats: int, params: dict) -> SolveReport:
    traces: list[IfoiTrace] = []

    def solve():
        traces.clear()
        solver = make_ivp_solver(partition, n, scheme, trace_sink=traces)
        return shooting.solve_bvp(case, solver)

    try:
        (solution, coeff), wall = _timed(solve, repeats)
    except IfoiDivergenceError:
        return SolveReport("ifoi", "diverged", params, 0.0)
    except shooting.SingularShootingError:
        return SolveReport("ifoi", "singular", params, 0.0)
    # traces arrive in solve order: the particular solution first
    extra = {"trace": traces[0], "coefficient": coeff,
             "picard_iterations": traces[0].picard_iterations}
    return SolveReport("ifoi", "converged", params, wall, solution,
                       sup_error(solution, case), extra)


def run_quiet(config: RunConfig) -> list[SolveReport]:
    """Execute one configuration without touching the filesystem."""
    case = _resolve_case(config)
    n, partition, scheme = _resolve_params(config, case)
    params = {"case": case.id, "n": n, "m": partition.stage_count,
              "spacing": partition.spacing, "scheme": scheme}
    reports = []
    if config.method in ("fdm", "both"):
        reports.append(_run_fdm(case, n, config.repeats, params))
    if config.method in ("ifoi", "both"):
        reports.append(_run_ifoi(case, n, partition, scheme, config.repeats,
                                 params))
    return reports


def run(config: RunConfig) -> list[SolveReport]:
    """Execute one configuration and write ``results.csv`` plus any plots."""
    reports = run_quiet(config)
    out_dir = Path(config.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    write_results_csv(out_dir / "results.csv", reports)
    if config.emit_trace:
        ifoi_reports = [r for r in reports if r.method == "ifoi"
                        and r.status == "converged"]
        if ifoi_reports:
            plot(reports, ifoi_reports[0].extra["trace"],
                 _resolve_case(config), out_dir)
    return reports


def sweep(case_id: str, n_list: Sequence[int], config: RunConfig,
          parallel: bool = False) -> list[SolveReport]:
    """Run one case across several grid sizes; one ``results.csv`` for all.

    Parallel execution is only honored for untimed runs (``repeats == 1``);
    timing runs stay sequential so measurements do not contend.
    """
    configs = [replace(config, case_id=case_id, n=n, emit_trace=False)
               for n in n_list]
    if parallel and config.repeats == 1:
        with ThreadPoolExecutor() as pool:
            chunks = list(pool.map(run_quiet, configs))
    else:
        chunks = [run_quiet(cfg) for cfg in configs]
    reports = [r for chunk in chunks for r in chunk]
    out_dir = Path(config.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    write_results_csv(out_dir / "results.csv", reports)
    return reports


def table1(output_dir: Union[str, Path], repeats: int = 1) -> Path:
    """Case-3 error/time table at N in {40, 80, 200}, both methods."""
    out_dir = Path(output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    rows = []
    for method in ("fdm", "ifoi"):
        for n in TABLE1_SIZES:
            report = run_quiet(RunConfig("case3", method=method, n=n,
                                         repeats=repeats))[0]
            rows.append([method, str(n), _fmt_float(report.sup_error),
                         _fmt_float(report.wall_time)])
    path = out_dir / "table1.csv"
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(TABLE1_CSV_HEADER)
        writer.writerows(rows)
    return path


def _fmt_float(v: Optional[float]) -> str:
    """17 significant digits, enough to round-trip any double exactly."""
    return "" if v is None else f"{v:.16e}"


def write_results_csv(path: Union[str, Path],
                      reports: Sequence[SolveReport]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(RESULTS_CSV_HEADER)
        for r in reports:
            writer.writerow([
                r.params["case"], r.method, r.params["scheme"],
                str(r.params["n"]), str(r.params["m"]), r.params["spacing"],
                _fmt_float(r.sup_error), _fmt_float(r.wall_time), r.status,
            ])


def read_results_csv(path: Union[str, Path]) -> list[dict]:
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


def plot(reports: Sequence[SolveReport], trace: IfoiTrace, case: CaseSpec,
         output_dir: Union[str, Path]) -> list[Path]:
    """Write the stage-evolution and method-comparison SVGs for one case."""
    out_dir = Path(output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    converged = [r for r in reports if r.status == "converged"
                 and r.solution is not None]
    if not converged:
        return []
    x = converged[0].solution.nodes

    # u enters the plotted forcing only for cases whose rhs reads it
    u_ref = np.asarray(case.oracle(x), dtype=float)
    forcing = np.broadcast_to(
        np.asarray(case.rhs(x, u_ref), dtype=float), x.shape)
    total = case.default_partition.cumulative[-1]
    stage_series = [
        Series(f"order {order:.2f}", gf.nodes, gf.values,
               ramp_color(order / total), 1.2,
               in_legend=(i in (0, len(trace.stages) - 1)))
        for i, (order, gf) in enumerate(trace.stages)
    ]
    solution_report = next((r for r in converged if r.method == "ifoi"),
                           converged[0])
    evolution = [Series("forcing", x, forcing, "#1f77b4", 2.0)] \
        + stage_series \
        + [Series("solution", x, solution_report.solution.values,
                  "#2ca02c", 2.2)]
    evo_path = out_dir / f"{case.id}_evolution.svg"
    evo_path.write_text(
        render_line_plot(evolution, f"{case.id}: stage evolution"),
        encoding="utf-8")

    comparison = [Series("exact", x, np.asarray(case.oracle(x), dtype=float),
                         "#444444", 2.2)]
    palette = {"fdm": "#d62728", "ifoi": "#2ca02c"}
    for r in converged:
        comparison.append(Series(r.method, r.solution.nodes,
                                 r.solution.values, palette[r.method], 1.6))
    cmp_path = out_dir / f"{case.id}_comparison.svg"
    cmp_path.write_text(
        render_line_plot(comparison, f"{case.id}: methods vs exact"),
        encoding="utf-8")
    return [evo_path, cmp_path]
