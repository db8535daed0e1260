"""
Experiment orchestration: repeated seeded runs, summary statistics,
convergence traces and comparison against published reference numbers.
"""

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, Iterable, List, Mapping, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from loguru import logger
from tqdm import tqdm

from .benchmarks import DEFAULT_DIMENSION, VARIANTS, BenchmarkSuite
from .exceptions import ConfigurationError, SettingsMismatchError, UnknownAlgorithmError
from .optimizers import ALGORITHMS, LDWParams, OptimizerConfig, PSOParams, is_real_number, run
from .reference import ReferenceTable
from .rng_weights import RngStream

DEFAULT_MASTER_SEED = 12345
DEFAULT_ZERO_THRESHOLD = 1e-16
CONVERGENCE_PARTICLES = 30
TABLE1_PARTICLES = (10, 20, 30, 40, 50, 60)
ALL_FUNCTIONS = tuple(f"f{i}" for i in range(1, 14))


@dataclass(frozen=True)
class ExperimentConfig:
    """
    Settings of a batch of repeated runs.

    Every (function, algorithm, particles) cell is run ``runs`` times with
    child seeds master_seed + run_index.
    """

    functions: Tuple[str, ...] = ALL_FUNCTIONS
    algorithms: Tuple[str, ...] = ("ldw_scsa",)
    particles: Tuple[int, ...] = (40,)
    iterations: int = 500
    dimension: int = DEFAULT_DIMENSION
    runs: int = 10
    master_seed: int = DEFAULT_MASTER_SEED
    zero_threshold: float = DEFAULT_ZERO_THRESHOLD
    jobs: int = 1
    variant: str = "standard"
    target_fitness: Optional[float] = None
    record_timing: bool = False
    pso: PSOParams = field(default_factory=PSOParams)
    ldw: LDWParams = field(default_factory=LDWParams)
    name: str = "experiment"
    results_csv: Optional[str] = None
    convergence_csv: Optional[str] = None
    json_path: Optional[str] = None

    def __post_init__(self):
        if not isinstance(self.runs, int) or self.runs < 1:
            raise ConfigurationError(f"runs must be a positive integer, got {self.runs!r}")
        if not isinstance(self.master_seed, int) or not 0 <= self.master_seed < 2 ** 64:
            raise ConfigurationError(
                f"master_seed must be an unsigned 64-bit integer, got {self.master_seed!r}"
            )
        if not is_real_number(self.zero_threshold) or not self.zero_threshold > 0:
            raise ConfigurationError(f"zero_threshold must be positive, got {self.zero_threshold!r}")
        if not isinstance(self.jobs, int) or self.jobs < 1:
            raise ConfigurationError(f"jobs must be a positive integer, got {self.jobs!r}")
        if self.variant not in VARIANTS:
            raise ConfigurationError(f"variant must be one of {VARIANTS}, got {self.variant!r}")
        if not self.functions or not self.algorithms or not self.particles:
            raise ConfigurationError("functions, algorithms and particles must be non-empty")
        for algorithm in self.algorithms:
            if algorithm not in ALGORITHMS:
                raise UnknownAlgorithmError(algorithm)
        suite = BenchmarkSuite(self.dimension, self.variant)
        for function_id in self.functions:
            suite.get(function_id)
        for pn in self.particles:
            if not isinstance(pn, int) or pn < 2:
                raise ConfigurationError(f"particle counts must be integers >= 2, got {pn!r}")
        if not isinstance(self.iterations, int) or self.iterations < 1:
            raise ConfigurationError(f"iterations must be a positive integer, got {self.iterations!r}")
        if self.target_fitness is not None and not is_real_number(self.target_fitness):
            raise ConfigurationError(
                f"target_fitness must be a real number or None, got {self.target_fitness!r}"
            )
        if not isinstance(self.record_timing, bool):
            raise ConfigurationError(f"record_timing must be true or false, got {self.record_timing!r}")
        if not isinstance(self.name, str) or not self.name:
            raise ConfigurationError(f"name must be a non-empty string, got {self.name!r}")

    def suite(self) -> BenchmarkSuite:
        return BenchmarkSuite(self.dimension, self.variant)

    def optimizer_config(self, function_id: str, algorithm: str, particles: int,
                         seed: int) -> OptimizerConfig:
        fn = self.suite().get(function_id)
        return OptimizerConfig.for_function(
            fn,
            algorithm=algorithm,
            particles=particles,
            max_iterations=self.iterations,
            seed=seed,
            target_fitness=self.target_fitness,
            pso=self.pso,
            ldw=self.ldw,
        )


class CellKey(NamedTuple):
    function: str
    algorithm: str
    particles: int


@dataclass(frozen=True)
class SummaryStats:
    mean: float
    sd: float
    best: float
    worst: float
    median: float


@dataclass
class CellResult:
    """Summary of one (function, algorithm, particles) cell."""

    key: CellKey
    iterations: int
    dimension: int
    runs: int
    stats: SummaryStats
    mean_classified: float
    run_bests: List[float]
    wall_seconds: Optional[float] = None

    def to_row(self) -> Dict[str, Any]:
        return {
            "function": self.key.function,
            "algorithm": self.key.algorithm,
            "particles": self.key.particles,
            "iterations": self.iterations,
            "dimension": self.dimension,
            "runs": self.runs,
            "mean": self.stats.mean,
            "sd": self.stats.sd,
            "best": self.stats.best,
            "worst": self.stats.worst,
            "median": self.stats.median,
            "mean_classified": self.mean_classified,
            "wall_seconds": self.wall_seconds,
        }


def classify_zero(v: float, threshold: float = DEFAULT_ZERO_THRESHOLD) -> float:
    """Report-time rule: magnitudes strictly below ``threshold`` are shown as 0."""
    if not threshold > 0:
        raise ConfigurationError(f"threshold must be positive, got {threshold!r}")
    return 0.0 if abs(v) < threshold else v


def summarize(values: Sequence[float]) -> SummaryStats:
    """
    Mean, sample standard deviation (n-1), best, worst and median.

    ``values`` must be in run-index order; a single run has sd 0.
    """
    data = np.asarray(values, dtype=np.float64)
    if data.size == 0:
        raise ConfigurationError("cannot summarize an empty set of runs")
    sd = float(np.std(data, ddof=1)) if data.size > 1 else 0.0
    return SummaryStats(
        mean=float(np.mean(data)),
        sd=sd,
        best=float(np.min(data)),
        worst=float(np.max(data)),
        median=float(np.median(data)),
    )


def _execute_run(task: Tuple[OptimizerConfig, str, int, str]) -> Tuple[float, float]:
    cfg, function_id, dimension, variant = task
    fn = BenchmarkSuite(dimension, variant).get(function_id)
    result = run(cfg, fn, RngStream(cfg.seed))
    return result.best_fitness, result.wall_seconds


class ExperimentRunner:
    """
    Executes every cell of an ExperimentConfig, optionally across processes.
    """

    def __init__(self, config: ExperimentConfig, progress: bool = False):
        """
        Initialize the runner.

        Args:
            config: Experiment settings
            progress: Show a tqdm progress bar on stderr
        """
        self.config = config
        self.progress = progress
        logger.info(
            f"Initialized ExperimentRunner '{config.name}': {len(config.functions)} functions, "
            f"algorithms={list(config.algorithms)}, particles={list(config.particles)}, "
            f"runs={config.runs}, master_seed={config.master_seed}, jobs={config.jobs}"
        )

    def cells(self) -> List[CellKey]:
        cfg = self.config
        return [
            CellKey(fid, algo, pn)
            for fid in cfg.functions
            for algo in cfg.algorithms
            for pn in cfg.particles
        ]

    def _tasks(self) -> List[Tuple[CellKey, int, Tuple]]:
        cfg = self.config
        tasks = []
        for key in self.cells():
            for run_index in range(cfg.runs):
                seed = RngStream.for_run(cfg.master_seed, run_index).seed
                opt_cfg = cfg.optimizer_config(key.function, key.algorithm, key.particles, seed)
                tasks.append((key, run_index, (opt_cfg, key.function, cfg.dimension, cfg.variant)))
        return tasks

    def run(self) -> Dict[CellKey, CellResult]:
        """
        Run every cell and aggregate in run-index order.

        Returns:
            Mapping from cell to its summary; nothing is returned if any run fails
        """
        cfg = self.config
        tasks = self._tasks()
        payloads = [payload for _, _, payload in tasks]
        started = time.perf_counter()

        with tqdm(total=len(tasks), desc=cfg.name, disable=not self.progress, leave=False) as bar:
            if cfg.jobs > 1:
                with ProcessPoolExecutor(max_workers=cfg.jobs) as executor:
                    outcomes = []
                    for outcome in executor.map(_execute_run, payloads):
                        outcomes.append(outcome)
                        bar.update(1)
            else:
                outcomes = []
                for payload in payloads:
                    outcomes.append(_execute_run(payload))
                    bar.update(1)

        per_cell: Dict[CellKey, Dict[int, Tuple[float, float]]] = {}
        for (key, run_index, _), outcome in zip(tasks, outcomes):
            per_cell.setdefault(key, {})[run_index] = outcome

        results = {}
        for key in self.cells():
            ordered = [per_cell[key][i] for i in range(cfg.runs)]
            bests = [best for best, _ in ordered]
            stats = summarize(bests)
            wall = sum(seconds for _, seconds in ordered) if cfg.record_timing else None
            results[key] = CellResult(
                key=key,
                iterations=cfg.iterations,
                dimension=cfg.dimension,
                runs=cfg.runs,
                stats=stats,
                mean_classified=classify_zero(stats.mean, cfg.zero_threshold),
                run_bests=bests,
                wall_seconds=wall,
            )
            logger.info(
                f"{key.function}/{key.algorithm}/P={key.particles}: "
                f"mean={stats.mean:.4e} sd={stats.sd:.4e}"
            )

        logger.info(f"Experiment '{cfg.name}' finished in {time.perf_counter() - started:.1f}s")
        return results


def run_experiment(cfg: ExperimentConfig, progress: bool = False) -> Dict[CellKey, CellResult]:
    """Run every cell of ``cfg``; see ExperimentRunner.run."""
    return ExperimentRunner(cfg, progress=progress).run()


def convergence_trace(cfg: ExperimentConfig, function_id: str,
                      algorithms: Optional[Iterable[str]] = None,
                      particles: int = CONVERGENCE_PARTICLES) -> Dict[str, List[Tuple[int, float]]]:
    """
    One seeded run per algorithm; returns (iteration, best_fitness) pairs including iteration 0.

    Every algorithm uses the child seed of run 0, so they start from the same swarm.
    """
    algorithms = tuple(algorithms) if algorithms is not None else cfg.algorithms
    fn = cfg.suite().get(function_id)
    seed = RngStream.for_run(cfg.master_seed, 0).seed
    traces = {}
    for algorithm in algorithms:
        if algorithm not in ALGORITHMS:
            raise UnknownAlgorithmError(algorithm)
        opt_cfg = cfg.optimizer_config(function_id, algorithm, particles, seed)
        traces[algorithm] = run(opt_cfg, fn, RngStream(seed)).trace()
        logger.debug(f"Convergence trace {function_id}/{algorithm}: final={traces[algorithm][-1][1]!r}")
    return traces


@dataclass(frozen=True)
class FunctionComparison:
    function: str
    measured_mean: float
    outcomes: Mapping[str, str]  # competitor -> 'win' | 'tie' | 'lose'
    published: Mapping[str, float]

    @property
    def best_overall(self) -> bool:
        return bool(self.outcomes) and all(o in ("win", "tie") for o in self.outcomes.values())


@dataclass(frozen=True)
class ComparisonReport:
    reference: str
    source: str
    threshold: float
    rows: Tuple[FunctionComparison, ...]

    @property
    def best_count(self) -> int:
        """Functions on which the measured mean is <= every published competitor mean."""
        return sum(1 for row in self.rows if row.best_overall)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "reference": self.reference,
            "source": self.source,
            "threshold": self.threshold,
            "best_count": self.best_count,
            "rows": [
                {
                    "function": row.function,
                    "measured_mean": row.measured_mean,
                    "published": dict(row.published),
                    "outcomes": dict(row.outcomes),
                    "best_overall": row.best_overall,
                }
                for row in self.rows
            ],
        }


def compare_to_reference(results: Mapping[CellKey, CellResult], reference: ReferenceTable,
                         algorithm: str = "ldw_scsa",
                         threshold: float = DEFAULT_ZERO_THRESHOLD) -> ComparisonReport:
    """
    Mark, per function, whether the measured mean beats each published competitor mean.

    Measured means go through classify_zero first; equal values are ties and count as wins.

    Raises:
        SettingsMismatchError: the measured cells were not run at the reference's
            particles, iterations and dimension
    """
    rows = []
    for function_id in reference.functions:
        key = CellKey(function_id, algorithm, reference.particles)
        cell = results.get(key)
        if cell is None:
            continue
        if cell.iterations != reference.iterations or cell.dimension != reference.dimension:
            raise SettingsMismatchError(
                f"{function_id}: measured at MI={cell.iterations}, n={cell.dimension}; "
                f"{reference.name} needs MI={reference.iterations}, n={reference.dimension}"
            )
        measured = classify_zero(cell.stats.mean, threshold)
        outcomes, published = {}, {}
        for competitor in reference.competitors:
            value = reference.mean(function_id, competitor)
            if value is None:
                continue
            published[competitor] = value
            if measured < value:
                outcomes[competitor] = "win"
            elif measured == value:
                outcomes[competitor] = "tie"
            else:
                outcomes[competitor] = "lose"
        rows.append(FunctionComparison(function_id, measured, outcomes, published))

    if not rows:
        measured_settings = sorted({(k.particles, c.iterations, c.dimension)
                                    for k, c in results.items() if k.algorithm == algorithm})
        raise SettingsMismatchError(
            f"no {algorithm} cells at {reference.name} settings "
            f"(pn={reference.particles}, MI={reference.iterations}, n={reference.dimension}); "
            f"measured (pn, MI, n): {measured_settings}"
        )

    report = ComparisonReport(reference.name, reference.source, threshold, tuple(rows))
    logger.info(f"{algorithm} best on {report.best_count}/{len(rows)} functions vs {reference.name}")
    return report


def experiment_to_dict(cfg: ExperimentConfig) -> Dict[str, Any]:
    data = asdict(cfg)
    data["functions"] = list(cfg.functions)
    data["algorithms"] = list(cfg.algorithms)
    data["particles"] = list(cfg.particles)
    return data
