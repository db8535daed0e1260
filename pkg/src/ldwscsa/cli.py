#!/usr/bin/env python3
"""
Command-line interface for the LDW-SCSA benchmark harness.
"""

import functools
import secrets
import sys
from dataclasses import replace
from pathlib import Path
from typing import Any, Dict, Optional, Sequence, Tuple

import click
import numpy as np
from loguru import logger
from rich.console import Console
from rich.table import Table

from .benchmarks import VARIANTS, BenchmarkSuite
from .config import load_experiment_config
from .exceptions import (
    ConfigurationError,
    LDWSCSAError,
    OutputPathError,
    SettingsMismatchError,
    UnknownAlgorithmError,
    UnknownFunctionError,
)
from .export import (
    check_writable,
    convergence_csv_text,
    to_json,
    trace_rows,
    write_convergence_csv,
    write_json,
    write_results_csv,
)
from .harness import (
    ALL_FUNCTIONS,
    DEFAULT_MASTER_SEED,
    TABLE1_PARTICLES,
    CellKey,
    ComparisonReport,
    ExperimentConfig,
    classify_zero,
    compare_to_reference,
    convergence_trace,
    experiment_to_dict,
    run_experiment,
)
from .optimizers import ALGORITHMS, LDWParams, OptimizerConfig, run
from .reference import load_particle_sweep, load_reference
from .rng_weights import WEIGHT_INIT_MODES, RngStream

console = Console()

CONVERGENCE_FUNCTIONS = ("f1", "f3", "f4", "f7", "f9", "f11", "f12")

# exit status per error family; click usage errors exit with 2
EXIT_CODES = (
    (UnknownFunctionError, 3),
    (UnknownAlgorithmError, 4),
    (OutputPathError, 5),
    (ConfigurationError, 6),
    (SettingsMismatchError, 7),
    (LDWSCSAError, 1),
)


def _configure_logging(verbose: bool, debug: bool) -> None:
    logger.remove()
    if debug:
        logger.add(sys.stderr, level="DEBUG")
    elif verbose:
        logger.add(sys.stderr, level="INFO")
    else:
        logger.add(sys.stderr, level="WARNING")


def _resolve_seed(seed: str) -> int:
    if seed == "random":
        return secrets.randbits(64)
    try:
        value = int(seed)
    except ValueError:
        raise ConfigurationError(f"--seed must be an integer or 'random', got {seed!r}") from None
    if not 0 <= value < 2 ** 64:
        raise ConfigurationError(f"--seed must fit in 64 unsigned bits, got {value}")
    return value


def _validate_functions(function_ids: Sequence[str], dimension: int, variant: str) -> Tuple[str, ...]:
    suite = BenchmarkSuite(dimension, variant)
    for function_id in function_ids:
        suite.get(function_id)
    return tuple(function_ids)


def _validate_algorithms(algorithms: Sequence[str]) -> Tuple[str, ...]:
    for algorithm in algorithms:
        if algorithm not in ALGORITHMS:
            raise UnknownAlgorithmError(algorithm)
    return tuple(algorithms)


def handle_errors(command):
    """Turn package errors into one diagnostic line and a family-specific exit status."""

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except LDWSCSAError as e:
            for error_type, status in EXIT_CODES:
                if isinstance(e, error_type):
                    break
            logger.error(f"{type(e).__name__}: {e}")
            click.echo(f"Error: {e}", err=True)
            sys.exit(status)

    return wrapper


def common_options(command):
    command = click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text",
                           help="Report format on stdout")(command)
    command = click.option("--debug", is_flag=True, help="Enable debug logging")(command)
    command = click.option("--verbose", "-v", is_flag=True, help="Enable info logging")(command)
    return command


def experiment_options(command):
    command = click.option("--jobs", "-j", default=1, show_default=True, type=int,
                           help="Parallel worker processes")(command)
    command = click.option("--seed", default=str(DEFAULT_MASTER_SEED), show_default=True,
                           help="Master seed (integer) or 'random'")(command)
    command = click.option("--variant", type=click.Choice(VARIANTS), default="standard",
                           show_default=True, help="Benchmark forms")(command)
    command = click.option("--runs", default=10, show_default=True, type=int,
                           help="Independent runs per cell")(command)
    command = click.option("--dim", default=30, show_default=True, type=int,
                           help="Problem dimension")(command)
    command = click.option("--iters", default=500, show_default=True, type=int,
                           help="Maximum iterations")(command)
    command = click.option("--out", type=click.Path(path_type=Path), default=None,
                           help="Results CSV path")(command)
    command = click.option("--json-out", type=click.Path(path_type=Path), default=None,
                           help="JSON report path")(command)
    return command


def _fmt(value: Optional[float]) -> str:
    return "-" if value is None else f"{value:.4e}"


def _results_table(title: str, results: Dict[CellKey, Any], threshold: float) -> Table:
    table = Table(title=title)
    for column in ("function", "algorithm", "P", "mean", "sd", "best", "median", "mean (<thr=0)"):
        table.add_column(column)
    for key, cell in results.items():
        table.add_row(
            key.function, key.algorithm, str(key.particles),
            _fmt(cell.stats.mean), _fmt(cell.stats.sd), _fmt(cell.stats.best),
            _fmt(cell.stats.median), _fmt(classify_zero(cell.stats.mean, threshold)),
        )
    return table


def _comparison_table(report: ComparisonReport) -> Table:
    table = Table(title=f"Measured LDW-SCSA vs {report.reference} ({report.source})")
    table.add_column("function")
    table.add_column("measured")
    competitors = sorted({c for row in report.rows for c in row.outcomes})
    for competitor in competitors:
        table.add_column(competitor)
    for row in report.rows:
        cells = [
            f"{_fmt(row.published.get(c))} {row.outcomes.get(c, '')}".strip() for c in competitors
        ]
        table.add_row(row.function, _fmt(row.measured_mean), *cells)
    return table


def _report(cfg: ExperimentConfig, results: Dict[CellKey, Any],
            extra: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    payload = {
        "seed": cfg.master_seed,
        "numpy_version": np.__version__,
        "config": experiment_to_dict(cfg),
        "results": [cell.to_row() for cell in results.values()],
    }
    if extra:
        payload.update(extra)
    return payload


def _emit_outputs(cfg: ExperimentConfig, results, payload, out: Optional[Path],
                  json_out: Optional[Path]) -> None:
    results_path = out or cfg.results_csv
    if results_path:
        write_results_csv(results_path, results)
    json_path = json_out or cfg.json_path
    if json_path:
        write_json(json_path, payload)


def _precheck_outputs(*paths: Optional[Path]) -> None:
    for path in paths:
        if path:
            check_writable(path)


@click.group()
@click.version_option(package_name="ldwscsa")
def main():
    """
    LDW-SCSA: logistic dynamic weight sine-cosine search, with SCA and PSO
    baselines and the thirteen-function benchmark protocol.
    """


@main.command("list")
@click.option("--dim", default=30, show_default=True, type=int, help="Problem dimension")
@click.option("--variant", type=click.Choice(VARIANTS), default="standard", show_default=True)
@common_options
@handle_errors
def list_command(dim: int, variant: str, fmt: str, verbose: bool, debug: bool):
    """Print the benchmark registry."""
    _configure_logging(verbose, debug)
    functions = BenchmarkSuite(dim, variant).list_functions()
    if fmt == "json":
        click.echo(to_json([fn.describe() for fn in functions]))
        return
    for fn in functions:
        optimum = "-" if fn.optimum_value is None else f"{fn.optimum_value:g}"
        noise = "" if fn.deterministic else " noisy"
        click.echo(
            f"{fn.id:<4} {fn.name:<26} [{fn.lower:g}, {fn.upper:g}] {fn.modality:<10} "
            f"optimum {optimum}{noise}"
        )


@main.command("run")
@click.option("--algo", default="ldw_scsa", show_default=True, help="ldw_scsa, sca or pso")
@click.option("--fn", "function_id", default="f1", show_default=True, help="Function id f1..f13")
@click.option("--particles", default=40, show_default=True, type=int)
@click.option("--iters", default=500, show_default=True, type=int)
@click.option("--dim", default=30, show_default=True, type=int)
@click.option("--seed", default=str(DEFAULT_MASTER_SEED), show_default=True,
              help="Seed (integer) or 'random'")
@click.option("--variant", type=click.Choice(VARIANTS), default="standard", show_default=True)
@click.option("--weight-init", type=click.Choice(WEIGHT_INIT_MODES), default="pseudocode",
              show_default=True, help="Initial LDW-SCSA weight")
@click.option("--target", type=float, default=None, help="Stop once best <= target")
@click.option("--threshold", type=float, default=1e-16, show_default=True,
              help="Report values below this as 0")
@click.option("--trace", "trace_path", type=click.Path(path_type=Path), default=None,
              help="Write the convergence trace CSV here")
@common_options
@handle_errors
def run_command(algo: str, function_id: str, particles: int, iters: int, dim: int, seed: str,
                variant: str, weight_init: str, target: Optional[float], threshold: float,
                trace_path: Optional[Path], fmt: str, verbose: bool, debug: bool):
    """Run one optimizer once and print its final best."""
    _configure_logging(verbose, debug)
    _validate_algorithms([algo])
    fn = BenchmarkSuite(dim, variant).get(function_id)
    _precheck_outputs(trace_path)
    seed_value = _resolve_seed(seed)

    cfg = OptimizerConfig.for_function(
        fn, algorithm=algo, particles=particles, max_iterations=iters, seed=seed_value,
        target_fitness=target, ldw=LDWParams(weight_init_mode=weight_init),
    )
    result = run(cfg, fn, RngStream(seed_value))
    if trace_path:
        write_convergence_csv(trace_path, trace_rows(fn.id, algo, result.trace()))

    classified = classify_zero(result.best_fitness, threshold)
    if fmt == "json":
        payload = result.to_dict()
        payload["best_classified"] = classified
        click.echo(to_json(payload))
        return
    console.print(f"seed: {seed_value}")
    console.print(f"algorithm: {algo}  function: {fn.id} ({fn.name})  n={dim}  P={particles}  MI={iters}")
    console.print(f"best: {result.best_fitness!r}  (reported: {classified:g})")
    console.print(f"evaluations: {result.evaluations}  iterations: {result.iterations_executed}")


@main.command("experiment")
@click.argument("config_path", type=click.Path(path_type=Path))
@click.option("--jobs", "-j", type=int, default=None, help="Override the config's jobs")
@click.option("--seed", default=None, help="Override the master seed (integer or 'random')")
@common_options
@handle_errors
def experiment_command(config_path: Path, jobs: Optional[int], seed: Optional[str], fmt: str,
                       verbose: bool, debug: bool):
    """Run the experiment described by a YAML config file."""
    _configure_logging(verbose, debug)
    cfg = load_experiment_config(config_path)
    overrides = {}
    if jobs is not None:
        overrides["jobs"] = jobs
    if seed is not None:
        overrides["master_seed"] = _resolve_seed(seed)
    if overrides:
        cfg = replace(cfg, **overrides)
    _precheck_outputs(*(Path(p) for p in (cfg.results_csv, cfg.convergence_csv, cfg.json_path) if p))

    results = run_experiment(cfg, progress=fmt == "text")
    payload = _report(cfg, results)
    if cfg.convergence_csv:
        traces = {fid: convergence_trace(cfg, fid) for fid in cfg.functions}
        write_convergence_csv(cfg.convergence_csv, traces)
    _emit_outputs(cfg, results, payload, None, None)

    if fmt == "json":
        click.echo(to_json(payload))
        return
    console.print(f"seed: {cfg.master_seed}")
    console.print(_results_table(cfg.name, results, cfg.zero_threshold))


@main.command("table1")
@click.option("--fn", "function_ids", multiple=True, help="Function id (repeatable); default all")
@click.option("--particles", "particle_counts", multiple=True, type=int,
              help="Particle count (repeatable); default 10..60")
@experiment_options
@common_options
@handle_errors
def table1_command(function_ids, particle_counts, out, json_out, iters, dim, runs, variant, seed,
                   jobs, fmt, verbose, debug):
    """LDW-SCSA with 10..60 particles at 500 iterations."""
    _configure_logging(verbose, debug)
    functions = _validate_functions(function_ids or ALL_FUNCTIONS, dim, variant)
    _precheck_outputs(out, json_out)
    cfg = ExperimentConfig(
        name="table1", functions=functions, algorithms=("ldw_scsa",),
        particles=tuple(particle_counts) or TABLE1_PARTICLES, iterations=iters, dimension=dim,
        runs=runs, master_seed=_resolve_seed(seed), jobs=jobs, variant=variant,
    )
    results = run_experiment(cfg, progress=fmt == "text")
    sweep = load_particle_sweep()
    published = [
        {"function": k.function, "particles": k.particles, "published": sweep.cell(k.function, k.particles)}
        for k in results
    ]
    payload = _report(cfg, results, {"published": published, "published_source": sweep.source})
    _emit_outputs(cfg, results, payload, out, json_out)

    if fmt == "json":
        click.echo(to_json(payload))
        return
    console.print(f"seed: {cfg.master_seed}")
    table = Table(title=f"LDW-SCSA mean over {runs} runs, MI={iters}, n={dim}")
    table.add_column("function")
    for pn in cfg.particles:
        table.add_column(f"P={pn}")
    for function_id in cfg.functions:
        table.add_row(function_id, *[
            _fmt(results[CellKey(function_id, "ldw_scsa", pn)].stats.mean) for pn in cfg.particles
        ])
    console.print(table)


def _comparison_command(name: str, algorithms: Tuple[str, ...], particles: int, function_ids,
                        out, json_out, iters, dim, runs, variant, seed, jobs, fmt) -> None:
    reference = load_reference(name)
    if (iters, dim) != (reference.iterations, reference.dimension):
        raise SettingsMismatchError(
            f"{name} compares against MI={reference.iterations}, n={reference.dimension}; "
            f"got --iters {iters} --dim {dim}"
        )
    functions = _validate_functions(function_ids or reference.functions, dim, variant)
    _precheck_outputs(out, json_out)
    cfg = ExperimentConfig(
        name=name, functions=functions, algorithms=algorithms, particles=(particles,),
        iterations=iters, dimension=dim, runs=runs, master_seed=_resolve_seed(seed),
        jobs=jobs, variant=variant,
    )
    results = run_experiment(cfg, progress=fmt == "text")
    report = compare_to_reference(results, reference, threshold=cfg.zero_threshold)
    payload = _report(cfg, results, {"comparison": report.to_dict()})
    _emit_outputs(cfg, results, payload, out, json_out)

    if fmt == "json":
        click.echo(to_json(payload))
        return
    console.print(f"seed: {cfg.master_seed}")
    console.print(_results_table(name, results, cfg.zero_threshold))
    console.print(_comparison_table(report))
    console.print(f"LDW-SCSA best on {report.best_count} of {len(report.rows)} functions")


@main.command("table3")
@click.option("--fn", "function_ids", multiple=True, help="Function id (repeatable); default all")
@experiment_options
@common_options
@handle_errors
def table3_command(function_ids, out, json_out, iters, dim, runs, variant, seed, jobs, fmt,
                   verbose, debug):
    """LDW-SCSA, SCA and PSO at 40 particles, compared with published results."""
    _configure_logging(verbose, debug)
    _comparison_command("table3", ALGORITHMS, 40, function_ids, out, json_out, iters, dim, runs,
                        variant, seed, jobs, fmt)


@main.command("table4")
@click.option("--fn", "function_ids", multiple=True, help="Function id (repeatable); default all")
@experiment_options
@common_options
@handle_errors
def table4_command(function_ids, out, json_out, iters, dim, runs, variant, seed, jobs, fmt,
                   verbose, debug):
    """LDW-SCSA at 50 particles, compared with published PSO2011 and Vortex Search."""
    _configure_logging(verbose, debug)
    _comparison_command("table4", ("ldw_scsa",), 50, function_ids, out, json_out, iters, dim, runs,
                        variant, seed, jobs, fmt)


@main.command("convergence")
@click.option("--fn", "function_ids", multiple=True,
              help="Function id (repeatable); default f1 f3 f4 f7 f9 f11 f12")
@click.option("--algo", "algorithms", multiple=True, help="Algorithm (repeatable); default ldw_scsa, sca")
@click.option("--particles", default=30, show_default=True, type=int)
@click.option("--iters", default=500, show_default=True, type=int)
@click.option("--dim", default=30, show_default=True, type=int)
@click.option("--seed", default=str(DEFAULT_MASTER_SEED), show_default=True)
@click.option("--variant", type=click.Choice(VARIANTS), default="standard", show_default=True)
@click.option("--out", type=click.Path(path_type=Path), default=None,
              help="Convergence CSV path (stdout when omitted)")
@common_options
@handle_errors
def convergence_command(function_ids, algorithms, particles, iters, dim, seed, variant, out, fmt,
                        verbose, debug):
    """Best-so-far traces for external plotting."""
    _configure_logging(verbose, debug)
    functions = _validate_functions(function_ids or CONVERGENCE_FUNCTIONS, dim, variant)
    algorithms = _validate_algorithms(algorithms or ("ldw_scsa", "sca"))
    _precheck_outputs(out)
    cfg = ExperimentConfig(
        name="convergence", functions=functions, algorithms=algorithms, particles=(particles,),
        iterations=iters, dimension=dim, runs=1, master_seed=_resolve_seed(seed), variant=variant,
    )
    traces = {fid: convergence_trace(cfg, fid, algorithms, particles) for fid in functions}
    if out:
        write_convergence_csv(out, traces)

    if fmt == "json":
        click.echo(to_json({
            "seed": cfg.master_seed,
            "traces": {fid: {a: [list(p) for p in t] for a, t in per.items()} for fid, per in traces.items()},
        }))
        return
    if out:
        console.print(f"seed: {cfg.master_seed}")
        for fid, per_algorithm in traces.items():
            finals = "  ".join(f"{a}={_fmt(t[-1][1])}" for a, t in per_algorithm.items())
            console.print(f"{fid}: {finals}")
    else:
        click.echo(f"# seed: {cfg.master_seed}")
        click.echo(convergence_csv_text(traces), nl=False)


if __name__ == '__main__':
    main()
