"""
Published reference numbers shipped with the package.

These are transcribed results of other optimizers (and of the published
LDW-SCSA runs) and are never produced by this package.
"""

from dataclasses import dataclass
from importlib import resources
from types import MappingProxyType
from typing import Dict, Mapping, Optional, Tuple

import yaml
from loguru import logger

from .exceptions import ConfigurationError

PUBLISHED_LABEL = "published, not measured"
COMPARISON_TABLES = ("table3", "table4")

MeanSd = Tuple[float, float]


@dataclass(frozen=True)
class ReferenceTable:
    """
    Immutable published comparison table.

    ``values[function][algorithm]`` is (mean, sd) or None for an empty cell.
    """

    name: str
    description: str
    particles: int
    iterations: int
    dimension: int
    competitors: Tuple[str, ...]
    published_ldw_scsa: str
    values: Mapping[str, Mapping[str, Optional[MeanSd]]]
    source: str = PUBLISHED_LABEL

    def mean(self, function_id: str, algorithm: str) -> Optional[float]:
        cell = self.values.get(function_id, {}).get(algorithm)
        return None if cell is None else cell[0]

    @property
    def functions(self) -> Tuple[str, ...]:
        return tuple(sorted(self.values, key=lambda fid: int(fid[1:])))


@dataclass(frozen=True)
class ParticleSweepTable:
    """Published LDW-SCSA mean/sd per particle count at 500 iterations."""

    particles: Tuple[int, ...]
    iterations: int
    dimension: int
    mean: Mapping[str, Tuple[float, ...]]
    sd: Mapping[str, Tuple[float, ...]]
    source: str = PUBLISHED_LABEL

    def cell(self, function_id: str, particles: int) -> Optional[MeanSd]:
        if function_id not in self.mean or particles not in self.particles:
            return None
        i = self.particles.index(particles)
        return self.mean[function_id][i], self.sd[function_id][i]


def _load_raw() -> Dict:
    text = resources.files("ldwscsa").joinpath("data/reference_tables.yaml").read_text(encoding="utf-8")
    return yaml.safe_load(text)


def _freeze_cell(cell) -> Optional[MeanSd]:
    if cell is None:
        return None
    mean, sd = cell
    return float(mean), float(sd)


def load_reference(name: str = "table3") -> ReferenceTable:
    """
    Load one published comparison table.

    Args:
        name: 'table3' (pn=40) or 'table4' (pn=50)
    """
    if name not in COMPARISON_TABLES:
        raise ConfigurationError(f"reference table must be one of {COMPARISON_TABLES}, got {name!r}")
    raw = _load_raw()
    section = raw[name]
    values = MappingProxyType({
        fid: MappingProxyType({algo: _freeze_cell(cell) for algo, cell in row.items()})
        for fid, row in section["values"].items()
    })
    table = ReferenceTable(
        name=name,
        description=section["description"],
        particles=int(section["particles"]),
        iterations=int(section["iterations"]),
        dimension=int(section["dimension"]),
        competitors=tuple(section["competitors"]),
        published_ldw_scsa=section["published_ldw_scsa"],
        values=values,
        source=raw.get("source", PUBLISHED_LABEL),
    )
    logger.debug(f"Loaded reference {name} ({len(values)} functions, {table.source})")
    return table


def load_particle_sweep() -> ParticleSweepTable:
    """Load the published particle-count sweep of LDW-SCSA."""
    raw = _load_raw()
    section = raw["table1"]
    return ParticleSweepTable(
        particles=tuple(int(p) for p in section["particles"]),
        iterations=int(section["iterations"]),
        dimension=int(section["dimension"]),
        mean=MappingProxyType({k: tuple(float(v) for v in row) for k, row in section["mean"].items()}),
        sd=MappingProxyType({k: tuple(float(v) for v in row) for k, row in section["sd"].items()}),
        source=raw.get("source", PUBLISHED_LABEL),
    )
