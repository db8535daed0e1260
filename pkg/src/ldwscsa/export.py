"""
CSV and JSON writers for experiment results and convergence traces.

Floats are written with repr() so identical runs give identical bytes.
"""

import csv
import io
import json
from pathlib import Path
from typing import Any, Dict, Iterable, List, Mapping, Sequence, Tuple, Union

from loguru import logger

from .exceptions import OutputPathError
from .harness import CellKey, CellResult

RESULTS_COLUMNS = [
    "function", "algorithm", "particles", "iterations", "dimension", "runs",
    "mean", "sd", "best", "worst", "median", "mean_classified", "wall_seconds",
]
CONVERGENCE_COLUMNS = ["function", "algorithm", "iteration", "best_fitness"]

PathLike = Union[str, Path]


def _format(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def check_writable(path: PathLike) -> Path:
    """Create missing parent directories, or raise OutputPathError if ``path`` cannot be written."""
    path = Path(path)
    parent = path.parent if str(path.parent) else Path(".")
    if not parent.is_dir():
        try:
            parent.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            raise OutputPathError(f"cannot create output directory {parent}: {e}") from e
        logger.debug(f"Created output directory {parent}")
    if path.is_dir():
        raise OutputPathError(f"output path is a directory: {path}")
    return path


def _write_text(path: PathLike, text: str) -> Path:
    path = check_writable(path)
    try:
        with open(path, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    except OSError as e:
        raise OutputPathError(f"cannot write {path}: {e}") from e
    logger.info(f"Wrote {path} ({len(text)} bytes)")
    return path


def results_rows(results: Mapping[CellKey, CellResult]) -> List[Dict[str, Any]]:
    return [cell.to_row() for cell in results.values()]


def results_csv_text(results: Mapping[CellKey, CellResult]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(RESULTS_COLUMNS)
    for row in results_rows(results):
        writer.writerow([_format(row[column]) for column in RESULTS_COLUMNS])
    return buffer.getvalue()


def write_results_csv(path: PathLike, results: Mapping[CellKey, CellResult]) -> Path:
    """One row per cell; ``mean`` is raw, ``mean_classified`` applies the zero threshold."""
    return _write_text(path, results_csv_text(results))


def convergence_csv_text(traces: Mapping[str, Mapping[str, Sequence[Tuple[int, float]]]]) -> str:
    """``traces[function][algorithm]`` is a sequence of (iteration, best_fitness)."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CONVERGENCE_COLUMNS)
    for function_id, per_algorithm in traces.items():
        for algorithm, trace in per_algorithm.items():
            for iteration, best in trace:
                writer.writerow([function_id, algorithm, iteration, _format(float(best))])
    return buffer.getvalue()


def write_convergence_csv(path: PathLike,
                          traces: Mapping[str, Mapping[str, Sequence[Tuple[int, float]]]]) -> Path:
    return _write_text(path, convergence_csv_text(traces))


def to_json(payload: Any) -> str:
    return json.dumps(payload, indent=2, sort_keys=False)


def write_json(path: PathLike, payload: Any) -> Path:
    return _write_text(path, to_json(payload) + "\n")


def trace_rows(function_id: str, algorithm: str,
               trace: Iterable[Tuple[int, float]]) -> Dict[str, Dict[str, List[Tuple[int, float]]]]:
    """Wrap a single run's trace in the nested shape the convergence writer takes."""
    return {function_id: {algorithm: list(trace)}}
