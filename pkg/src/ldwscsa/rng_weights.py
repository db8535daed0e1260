"""
Deterministic random streams and the logistic-map dynamic weight schedule.

Every random number consumed by the optimizers and by the noisy benchmark
comes from an RngStream. The stream is numpy's PCG64 bit generator seeded
through SeedSequence(seed) and read through Generator.random(), which maps
one 64-bit output to one double in [0, 1). Changing this pairing changes
every recorded trace, so it is fixed for the lifetime of the package.
"""

import math
from typing import Sequence

import numpy as np
from loguru import logger

from .exceptions import ConfigurationError

EPS = float(np.finfo(np.float64).eps)  # 2.220446049250313e-16
DEFAULT_CHAOS_MULTIPLIER = 4.0
CHAOS_MULTIPLIER_RANGE = (3.57, 4.0)
WEIGHT_INIT_MODES = ("pseudocode", "eps")

_SEED_MODULUS = 2 ** 64


class RngStream:
    """
    Seedable uniform random source.

    Subclasses may override ``_draw`` to script the sequence (tests do this);
    every public method is built on it so draw order is the only thing that
    determines the values handed out.
    """

    def __init__(self, seed: int = 0):
        """
        Initialize the stream.

        Args:
            seed: Unsigned 64-bit seed
        """
        if not isinstance(seed, (int, np.integer)) or isinstance(seed, bool):
            raise ConfigurationError(f"seed must be an integer, got {seed!r}")
        if seed < 0 or seed >= _SEED_MODULUS:
            raise ConfigurationError(f"seed must fit in 64 unsigned bits, got {seed}")
        self.seed = int(seed)
        self.draws = 0
        self._generator = np.random.Generator(np.random.PCG64(self.seed))

    @classmethod
    def for_run(cls, master_seed: int, run_index: int) -> "RngStream":
        """Child stream of an experiment: seed = master_seed + run_index (mod 2**64)."""
        return cls((int(master_seed) + int(run_index)) % _SEED_MODULUS)

    def _draw(self, size: int) -> np.ndarray:
        return self._generator.random(size)

    def uniform01(self) -> float:
        """One draw in [0, 1)."""
        self.draws += 1
        return float(self._draw(1)[0])

    def uniform01_array(self, size: int) -> np.ndarray:
        """``size`` consecutive draws in [0, 1)."""
        self.draws += size
        return np.asarray(self._draw(size), dtype=np.float64)

    def uniform_in(self, a: float, b: float) -> float:
        """One draw in [a, b) for a < b."""
        value = a + (b - a) * self.uniform01()
        if value >= b:
            value = float(np.nextafter(b, a))
        return value

    def uniform_array(self, a: float, b: float, size: int) -> np.ndarray:
        """``size`` consecutive draws in [a, b)."""
        values = a + (b - a) * self.uniform01_array(size)
        return np.where(values >= b, np.nextafter(b, a), values)


def clamp_weight(w: float) -> float:
    """Move a weight off the logistic map's fixed points 0 and 1."""
    if w >= 1.0:
        return 1.0 - EPS
    if w <= 0.0:
        return EPS
    return w


class LogisticWeightGenerator:
    """
    Chaotic weight w in (0, 1) produced by the logistic map w' = r*w*(1-w).
    """

    def __init__(self, w: float, chaos_multiplier: float = DEFAULT_CHAOS_MULTIPLIER):
        lo, hi = CHAOS_MULTIPLIER_RANGE
        if not lo <= chaos_multiplier <= hi:
            raise ConfigurationError(
                f"chaos_multiplier must lie in [{lo}, {hi}], got {chaos_multiplier}"
            )
        self.chaos_multiplier = float(chaos_multiplier)
        self.eps = EPS
        self.w = clamp_weight(float(w))

    def next(self) -> float:
        """Advance the map one step and return the new weight."""
        return logistic_next(self)

    def __repr__(self) -> str:
        return f"LogisticWeightGenerator(w={self.w!r}, chaos_multiplier={self.chaos_multiplier!r})"


def logistic_next(gen: LogisticWeightGenerator) -> float:
    """
    One logistic-map step with clamping applied to the result.

    Args:
        gen: Generator whose weight is advanced in place

    Returns:
        The updated weight
    """
    gen.w = clamp_weight(gen.chaos_multiplier * gen.w * (1.0 - gen.w))
    return gen.w


def _norm(x: np.ndarray) -> float:
    # plain sum of squares; BLAS-backed norms may fuse multiply-adds
    return math.sqrt(float(np.sum(np.square(x))))


def init_weight(pbest_position: Sequence[float], lb: float, ub: float,
                mode: str = "pseudocode") -> float:
    """
    Initial weight of the LDW-SCSA schedule.

    ``pseudocode`` mode takes the ratio of the best position's Euclidean norm
    to the norm of the per-dimension range vector; ``eps`` mode starts the
    schedule at machine epsilon. Both results are clamped into (0, 1).

    Args:
        pbest_position: Best position after the initial sweep
        lb: Lower bound shared by every dimension
        ub: Upper bound shared by every dimension
        mode: 'pseudocode' or 'eps'

    Returns:
        Weight strictly inside (0, 1)
    """
    if ub <= lb:
        raise ConfigurationError(f"upper bound must exceed lower bound, got lb={lb}, ub={ub}")
    if mode == "eps":
        return EPS
    if mode != "pseudocode":
        raise ConfigurationError(
            f"weight_init_mode must be one of {WEIGHT_INIT_MODES}, got {mode!r}"
        )

    position = np.asarray(pbest_position, dtype=np.float64)
    span = np.full(position.shape[0], ub - lb, dtype=np.float64)
    w = clamp_weight(_norm(position) / _norm(span))
    logger.debug(f"Initial weight from best position: {w!r}")
    return w


def make_weight_generator(pbest_position: Sequence[float], lb: float, ub: float,
                          mode: str = "pseudocode",
                          chaos_multiplier: float = DEFAULT_CHAOS_MULTIPLIER) -> LogisticWeightGenerator:
    """Weight schedule starting from ``init_weight`` of the best initial position."""
    return LogisticWeightGenerator(init_weight(pbest_position, lb, ub, mode), chaos_multiplier)
