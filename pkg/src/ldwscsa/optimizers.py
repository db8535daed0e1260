"""
LDW-SCSA and its two baselines (sine-cosine search and inertia-weight PSO)
behind one minimization entry point that records a per-iteration trace.

Random draws happen in a fixed order so that a seed fully determines a run:

* initial positions: pn*n uniforms, particle-major;
* LDW-SCSA / SCA, per particle and iteration: r1, r2, r3 in [-2, 2), r4 in [0, 1),
  then one uniform per out-of-bounds coordinate (index order), then the noise
  function's draw if the objective is f7;
* PSO, per particle and iteration: n uniforms for rand1, n for rand2, then repair
  and objective draws as above.
"""

import math
import numbers
import time
from dataclasses import dataclass, field, replace
from typing import Any, Callable, Dict, List, Optional

import numpy as np
from loguru import logger

from .benchmarks import BenchmarkFunction, evaluate
from .exceptions import ConfigurationError, UnknownAlgorithmError
from .rng_weights import (
    CHAOS_MULTIPLIER_RANGE,
    DEFAULT_CHAOS_MULTIPLIER,
    WEIGHT_INIT_MODES,
    RngStream,
    make_weight_generator,
)

ALGORITHMS = ("ldw_scsa", "sca", "pso")
R_LOW, R_HIGH = -2.0, 2.0


def is_real_number(value: Any) -> bool:
    return isinstance(value, numbers.Real) and not isinstance(value, bool)


@dataclass(frozen=True)
class PSOParams:
    """Inertia and acceleration coefficients (constriction-equivalent defaults)."""

    w: float = 0.7298
    c1: float = 1.49618
    c2: float = 1.49618


@dataclass(frozen=True)
class LDWParams:
    weight_init_mode: str = "pseudocode"
    chaos_multiplier: float = DEFAULT_CHAOS_MULTIPLIER

    def __post_init__(self):
        if self.weight_init_mode not in WEIGHT_INIT_MODES:
            raise ConfigurationError(
                f"weight_init_mode must be one of {WEIGHT_INIT_MODES}, got {self.weight_init_mode!r}"
            )
        lo, hi = CHAOS_MULTIPLIER_RANGE
        if not lo <= self.chaos_multiplier <= hi:
            raise ConfigurationError(
                f"chaos_multiplier must lie in [{lo}, {hi}], got {self.chaos_multiplier}"
            )


@dataclass(frozen=True)
class OptimizerConfig:
    """
    Settings of one optimizer run.

    Attributes:
        algorithm: 'ldw_scsa', 'sca' or 'pso'
        particles: Swarm size pn (>= 2)
        max_iterations: Iteration budget MI (>= 1)
        dimension: Number of decision variables n
        lower: Lower bound of every coordinate
        upper: Upper bound of every coordinate
        seed: Unsigned 64-bit seed of the run's stream
        target_fitness: Stop once the best fitness is <= this value (disabled when None)
        pso: PSO coefficients
        ldw: LDW-SCSA weight schedule options
    """

    algorithm: str = "ldw_scsa"
    particles: int = 40
    max_iterations: int = 500
    dimension: int = 30
    lower: float = -100.0
    upper: float = 100.0
    seed: int = 0
    target_fitness: Optional[float] = None
    pso: PSOParams = field(default_factory=PSOParams)
    ldw: LDWParams = field(default_factory=LDWParams)

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise UnknownAlgorithmError(self.algorithm)
        if not isinstance(self.particles, int) or self.particles < 2:
            raise ConfigurationError(f"particles must be an integer >= 2, got {self.particles!r}")
        if not isinstance(self.max_iterations, int) or self.max_iterations < 1:
            raise ConfigurationError(
                f"max_iterations must be a positive integer, got {self.max_iterations!r}"
            )
        if not isinstance(self.dimension, int) or self.dimension < 1:
            raise ConfigurationError(f"dimension must be a positive integer, got {self.dimension!r}")
        if not self.upper > self.lower:
            raise ConfigurationError(
                f"upper bound must exceed lower bound, got lb={self.lower}, ub={self.upper}"
            )
        if not isinstance(self.seed, int) or not 0 <= self.seed < 2 ** 64:
            raise ConfigurationError(f"seed must be an unsigned 64-bit integer, got {self.seed!r}")
        if self.target_fitness is not None and not is_real_number(self.target_fitness):
            raise ConfigurationError(
                f"target_fitness must be a real number or None, got {self.target_fitness!r}"
            )

    @classmethod
    def for_function(cls, fn: BenchmarkFunction, **overrides: Any) -> "OptimizerConfig":
        """Config whose dimension and bounds are taken from ``fn``."""
        overrides.setdefault("dimension", fn.dimension)
        overrides.setdefault("lower", fn.lower)
        overrides.setdefault("upper", fn.upper)
        return cls(**overrides)

    def with_seed(self, seed: int) -> "OptimizerConfig":
        return replace(self, seed=seed)


@dataclass
class Particle:
    position: np.ndarray
    fitness: float = math.inf


@dataclass
class SwarmState:
    """
    Mutable swarm. ``pbest_*`` is the global best-so-far; PSO additionally
    keeps per-particle velocities and personal bests.
    """

    particles: List[Particle]
    pbest_position: np.ndarray
    pbest_fitness: float = math.inf
    iteration: int = 0
    weight: Optional[float] = None
    velocities: Optional[List[np.ndarray]] = None
    personal_best_positions: Optional[List[np.ndarray]] = None
    personal_best_fitness: Optional[List[float]] = None

    def offer(self, position: np.ndarray, fitness: float) -> bool:
        """Replace the global best if ``fitness`` is strictly better."""
        if fitness < self.pbest_fitness:
            self.pbest_fitness = fitness
            self.pbest_position = position.copy()
            return True
        return False


@dataclass(frozen=True)
class IterationRecord:
    iteration: int
    best_fitness: float
    weight: Optional[float] = None


@dataclass
class RunResult:
    """Outcome of one optimizer run."""

    algorithm: str
    function_id: str
    seed: int
    best_position: np.ndarray
    best_fitness: float
    history: List[IterationRecord]
    evaluations: int
    iterations_executed: int
    stopped_early: bool
    wall_seconds: float = 0.0

    def trace(self) -> List[tuple]:
        """(iteration, best_fitness) pairs, iteration 0 included."""
        return [(record.iteration, record.best_fitness) for record in self.history]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "algorithm": self.algorithm,
            "function": self.function_id,
            "seed": self.seed,
            "best_fitness": self.best_fitness,
            "best_position": [float(v) for v in self.best_position],
            "evaluations": self.evaluations,
            "iterations_executed": self.iterations_executed,
            "stopped_early": self.stopped_early,
            "wall_seconds": self.wall_seconds,
            "history": [
                {"iteration": r.iteration, "best_fitness": r.best_fitness, "weight": r.weight}
                for r in self.history
            ],
        }


class CountingObjective:
    """
    Objective wrapper that counts calls and maps NaN to +inf.
    """

    def __init__(self, fn: BenchmarkFunction, rng: RngStream):
        self.fn = fn
        self.rng = rng
        self.evaluations = 0

    def __call__(self, position: np.ndarray) -> float:
        self.evaluations += 1
        value = evaluate(self.fn, position, self.rng)
        if math.isnan(value):
            logger.warning(f"{self.fn.id} returned NaN; treating it as +inf")
            return math.inf
        return value


def init_positions(cfg: OptimizerConfig, rng: RngStream) -> List[np.ndarray]:
    """pn random positions, p = rand * (UB - LB) + LB per coordinate."""
    draws = rng.uniform01_array(cfg.particles * cfg.dimension).reshape(cfg.particles, cfg.dimension)
    positions = draws * (cfg.upper - cfg.lower) + cfg.lower
    return [row.copy() for row in positions]


def ldw_velocity(p: np.ndarray, pbest: np.ndarray, w: float,
                 r1: float, r2: float, r3: float, r4: float) -> np.ndarray:
    """
    Weighted sine-cosine velocity: w*r1*trig(r2)*|r3*pbest - p|.

    The sine branch is taken when r4 < 0.5. The scalars are shared by every dimension.
    """
    trig = math.sin(r2) if r4 < 0.5 else math.cos(r2)
    scale = w * r1 * trig
    return scale * np.abs(r3 * pbest - p)


def ldw_position_update(p: np.ndarray, v: np.ndarray, w: float, r4: float,
                        pbest: np.ndarray) -> np.ndarray:
    """p' = p*w + v + r4*pbest*w."""
    return p * w + v + r4 * pbest * w


def boundary_repair(p: np.ndarray, lb: float, ub: float, rng: RngStream) -> np.ndarray:
    """
    Redraw every coordinate outside [lb, ub] uniformly in [lb, ub).

    In-bounds coordinates are untouched and no draw is consumed for them.
    """
    outside = ~((p >= lb) & (p <= ub))
    count = int(np.count_nonzero(outside))
    if count == 0:
        return p
    repaired = p.copy()
    repaired[outside] = rng.uniform_array(lb, ub, count)
    return repaired


def _draw_sine_cosine_scalars(rng: RngStream):
    r1 = rng.uniform_in(R_LOW, R_HIGH)
    r2 = rng.uniform_in(R_LOW, R_HIGH)
    r3 = rng.uniform_in(R_LOW, R_HIGH)
    r4 = rng.uniform01()
    return r1, r2, r3, r4


def _move_and_score(state: SwarmState, particle: Particle, position: np.ndarray,
                    cfg: OptimizerConfig, rng: RngStream,
                    objective: Callable[[np.ndarray], float]) -> None:
    particle.position = boundary_repair(position, cfg.lower, cfg.upper, rng)
    particle.fitness = objective(particle.position)
    state.offer(particle.position, particle.fitness)


def ldw_step(state: SwarmState, cfg: OptimizerConfig, rng: RngStream,
             objective: Callable[[np.ndarray], float]) -> SwarmState:
    """
    One LDW-SCSA iteration with the weight held in ``state.weight``.

    The best solution is refreshed after every particle, so later particles
    in the same sweep are attracted to the newest best.
    """
    w = state.weight
    for particle in state.particles:
        r1, r2, r3, r4 = _draw_sine_cosine_scalars(rng)
        v = ldw_velocity(particle.position, state.pbest_position, w, r1, r2, r3, r4)
        moved = ldw_position_update(particle.position, v, w, r4, state.pbest_position)
        _move_and_score(state, particle, moved, cfg, rng, objective)
    state.iteration += 1
    return state


def sca_step(state: SwarmState, cfg: OptimizerConfig, rng: RngStream,
             objective: Callable[[np.ndarray], float]) -> SwarmState:
    """
    One sine-cosine iteration: x' = x + r1*trig(r2)*|r3*pbest - x|.

    Same scalar ranges and best-refresh schedule as LDW-SCSA, without the weight.
    """
    for particle in state.particles:
        r1, r2, r3, r4 = _draw_sine_cosine_scalars(rng)
        trig = math.sin(r2) if r4 < 0.5 else math.cos(r2)
        displacement = r1 * trig
        x = particle.position
        moved = x + displacement * np.abs(r3 * state.pbest_position - x)
        _move_and_score(state, particle, moved, cfg, rng, objective)
    state.iteration += 1
    return state


def pso_step(state: SwarmState, cfg: OptimizerConfig, rng: RngStream,
             objective: Callable[[np.ndarray], float]) -> SwarmState:
    """
    One gbest-PSO iteration.

    v' = w*v + c1*rand1*(pbest_i - x) + c2*rand2*(gbest - x) and x' = x + v',
    with rand1 and rand2 drawn per dimension. Personal bests are refreshed per
    particle; the global best is refreshed once the whole swarm has moved.
    """
    params = cfg.pso
    gbest = state.pbest_position
    n = cfg.dimension
    for i, particle in enumerate(state.particles):
        rand1 = rng.uniform01_array(n)
        rand2 = rng.uniform01_array(n)
        x = particle.position
        velocity = (
            params.w * state.velocities[i]
            + params.c1 * rand1 * (state.personal_best_positions[i] - x)
            + params.c2 * rand2 * (gbest - x)
        )
        state.velocities[i] = velocity
        particle.position = boundary_repair(x + velocity, cfg.lower, cfg.upper, rng)
        particle.fitness = objective(particle.position)
        if particle.fitness < state.personal_best_fitness[i]:
            state.personal_best_fitness[i] = particle.fitness
            state.personal_best_positions[i] = particle.position.copy()

    for position, fitness in zip(state.personal_best_positions, state.personal_best_fitness):
        state.offer(position, fitness)
    state.iteration += 1
    return state


def initial_state(cfg: OptimizerConfig, rng: RngStream,
                  objective: Callable[[np.ndarray], float]) -> SwarmState:
    """Random swarm, one evaluation per particle, best selected in particle order."""
    particles = [Particle(position=p) for p in init_positions(cfg, rng)]
    state = SwarmState(particles=particles, pbest_position=particles[0].position.copy())
    for particle in particles:
        particle.fitness = objective(particle.position)
        state.offer(particle.position, particle.fitness)

    if cfg.algorithm == "pso":
        state.velocities = [np.zeros(cfg.dimension) for _ in particles]
        state.personal_best_positions = [p.position.copy() for p in particles]
        state.personal_best_fitness = [p.fitness for p in particles]
    return state


_STEPS = {"ldw_scsa": ldw_step, "sca": sca_step, "pso": pso_step}


def run(cfg: OptimizerConfig, fn: BenchmarkFunction, rng: Optional[RngStream] = None) -> RunResult:
    """
    Minimize ``fn`` with the algorithm named in ``cfg``.

    LDW-SCSA takes its initial weight from the best initial position (or eps),
    then every iteration uses the current weight while the logistic map
    advances it for the next one. The run stops after ``max_iterations`` or at
    the end of the first iteration whose best fitness reaches ``target_fitness``.

    Args:
        cfg: Run settings; dimension and bounds must fit ``fn``
        fn: Benchmark to minimize
        rng: Stream to draw from (defaults to RngStream(cfg.seed))

    Returns:
        RunResult with the final best and the full trace, iteration 0 included
    """
    if cfg.dimension != fn.dimension:
        raise ConfigurationError(
            f"config dimension {cfg.dimension} does not match {fn.id} dimension {fn.dimension}"
        )
    if cfg.lower < fn.lower or cfg.upper > fn.upper:
        raise ConfigurationError(
            f"config bounds [{cfg.lower}, {cfg.upper}] exceed {fn.id} bounds [{fn.lower}, {fn.upper}]"
        )

    rng = rng if rng is not None else RngStream(cfg.seed)
    objective = CountingObjective(fn, rng)
    step = _STEPS[cfg.algorithm]
    started = time.perf_counter()

    state = initial_state(cfg, rng, objective)
    generator = None
    if cfg.algorithm == "ldw_scsa":
        generator = make_weight_generator(state.pbest_position, cfg.lower, cfg.upper,
                                          cfg.ldw.weight_init_mode, cfg.ldw.chaos_multiplier)
        state.weight = generator.w

    history = [IterationRecord(0, state.pbest_fitness, state.weight)]
    stopped_early = False
    for iteration in range(1, cfg.max_iterations + 1):
        if generator is not None:
            state.weight = generator.w
            generator.next()
        step(state, cfg, rng, objective)
        history.append(IterationRecord(iteration, state.pbest_fitness, state.weight))

        if cfg.target_fitness is not None and state.pbest_fitness <= cfg.target_fitness:
            stopped_early = True
            logger.debug(f"{cfg.algorithm} on {fn.id} reached target at iteration {iteration}")
            break

    result = RunResult(
        algorithm=cfg.algorithm,
        function_id=fn.id,
        seed=cfg.seed,
        best_position=state.pbest_position.copy(),
        best_fitness=state.pbest_fitness,
        history=history,
        evaluations=objective.evaluations,
        iterations_executed=state.iteration,
        stopped_early=stopped_early,
        wall_seconds=time.perf_counter() - started,
    )
    logger.debug(
        f"{cfg.algorithm} on {fn.id} (seed={cfg.seed}): best={result.best_fitness!r} "
        f"after {result.iterations_executed} iterations"
    )
    return result
