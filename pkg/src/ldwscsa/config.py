"""
YAML experiment configuration.

Sections: ``experiment``, ``pso``, ``ldw`` and ``output``; see docs/config.md.
"""

from pathlib import Path
from typing import Any, Dict, Mapping, Union

import yaml
from loguru import logger

from .exceptions import ConfigurationError
from .harness import ExperimentConfig
from .optimizers import LDWParams, PSOParams

_EXPERIMENT_KEYS = {
    "name", "functions", "algorithms", "particles", "iterations", "dimension", "runs",
    "master_seed", "zero_threshold", "jobs", "benchmark_variant", "target_fitness",
    "record_timing",
}
_PSO_KEYS = {"w", "c1", "c2"}
_LDW_KEYS = {"weight_init_mode", "chaos_multiplier"}
_OUTPUT_KEYS = {"results_csv", "convergence_csv", "json"}
_SECTIONS = {"experiment": _EXPERIMENT_KEYS, "pso": _PSO_KEYS, "ldw": _LDW_KEYS, "output": _OUTPUT_KEYS}


def _section(data: Mapping[str, Any], name: str) -> Dict[str, Any]:
    section = data.get(name)
    section = {} if section is None else section
    if not isinstance(section, dict):
        raise ConfigurationError(f"section '{name}' must be a mapping")
    unknown = set(section) - _SECTIONS[name]
    if unknown:
        raise ConfigurationError(f"unknown keys in section '{name}': {sorted(unknown)}")
    return section


def _as_float(key: str, value: Any) -> float:
    # YAML 1.1 reads exponent literals without a dot (1e-8) as strings
    if isinstance(value, bool):
        raise ConfigurationError(f"{key} must be a number, got {value!r}")
    try:
        return float(value)
    except (TypeError, ValueError) as e:
        raise ConfigurationError(f"{key} must be a number, got {value!r}") from e


def _as_tuple(value: Any) -> tuple:
    if isinstance(value, (list, tuple)):
        return tuple(value)
    return (value,)


def experiment_config_from_dict(data: Mapping[str, Any]) -> ExperimentConfig:
    """
    Build an ExperimentConfig from parsed YAML.

    Args:
        data: Mapping with the four optional sections

    Returns:
        Validated experiment configuration
    """
    if not isinstance(data, Mapping):
        raise ConfigurationError("experiment config must be a mapping of sections")
    unknown = set(data) - set(_SECTIONS)
    if unknown:
        raise ConfigurationError(f"unknown sections: {sorted(unknown)}")

    experiment = _section(data, "experiment")
    pso = _section(data, "pso")
    ldw = _section(data, "ldw")
    output = _section(data, "output")

    kwargs: Dict[str, Any] = {}
    for key in ("name", "iterations", "dimension", "runs", "master_seed", "jobs", "record_timing"):
        if key in experiment:
            kwargs[key] = experiment[key]
    if "zero_threshold" in experiment:
        kwargs["zero_threshold"] = _as_float("zero_threshold", experiment["zero_threshold"])
    if experiment.get("target_fitness") is not None:
        kwargs["target_fitness"] = _as_float("target_fitness", experiment["target_fitness"])
    if "benchmark_variant" in experiment:
        kwargs["variant"] = experiment["benchmark_variant"]
    for key in ("functions", "algorithms", "particles"):
        if key in experiment:
            kwargs[key] = _as_tuple(experiment[key])

    kwargs["pso"] = PSOParams(**{k: _as_float(k, v) for k, v in pso.items()})
    ldw_kwargs = dict(ldw)
    if "chaos_multiplier" in ldw_kwargs:
        ldw_kwargs["chaos_multiplier"] = _as_float("chaos_multiplier", ldw_kwargs["chaos_multiplier"])
    kwargs["ldw"] = LDWParams(**ldw_kwargs)

    kwargs["results_csv"] = output.get("results_csv")
    kwargs["convergence_csv"] = output.get("convergence_csv")
    kwargs["json_path"] = output.get("json")

    try:
        return ExperimentConfig(**kwargs)
    except TypeError as e:
        raise ConfigurationError(f"invalid experiment config: {e}") from e


def load_experiment_config(path: Union[str, Path]) -> ExperimentConfig:
    """Read and validate a YAML experiment config file."""
    path = Path(path)
    logger.info(f"Loading experiment config: {path}")
    if not path.exists():
        raise ConfigurationError(f"config file not found: {path}")
    try:
        data = yaml.safe_load(path.read_text(encoding="utf-8"))
    except yaml.YAMLError as e:
        raise ConfigurationError(f"cannot parse {path}: {e}") from e
    return experiment_config_from_dict({} if data is None else data)
