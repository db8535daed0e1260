"""
Numerical benchmark suite: seven unimodal and six multimodal test functions.

Functions are registered with their search box, known optimum and modality.
Two variants exist. ``standard`` uses the textbook forms whose optimum values
are attainable; ``paper-literal`` keeps the printed forms of the noise,
Rastrigin, Griewank and the two penalized functions.
"""

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np
from loguru import logger

from .exceptions import (
    ConfigurationError,
    DimensionMismatchError,
    OutOfBoundsError,
    UnknownFunctionError,
)
from .rng_weights import RngStream

DEFAULT_DIMENSION = 30
VARIANTS = ("standard", "paper-literal")
UNIMODAL = "unimodal"
MULTIMODAL = "multimodal"

Objective = Callable[[np.ndarray, Optional[RngStream]], float]


@dataclass(frozen=True)
class PenaltyParams:
    """Parameters of the boundary penalty u(x, a, k, m)."""

    a: float
    k: float
    m: float

    def __post_init__(self):
        if self.a <= 0 or self.k <= 0 or self.m < 1:
            raise ConfigurationError(f"penalty requires a > 0, k > 0, m >= 1, got {self}")


PENALIZED_1 = PenaltyParams(a=10.0, k=100.0, m=4.0)
PENALIZED_2 = PenaltyParams(a=5.0, k=100.0, m=4.0)


@dataclass(frozen=True)
class BenchmarkFunction:
    """
    Descriptor of one registered test function.

    ``optimum_location`` is the per-coordinate value of the minimizer (every
    optimum of the suite has all coordinates equal); it is None when the
    variant has no closed-form minimizer.
    """

    id: str
    name: str
    lower: float
    upper: float
    modality: str
    optimum_value: Optional[float]
    optimum_location: Optional[float]
    deterministic: bool
    dimension: int
    variant: str
    objective: Objective = field(repr=False, compare=False)

    @property
    def bounds(self):
        return (self.lower, self.upper)

    @property
    def index(self) -> int:
        return int(self.id[1:])

    def optimum_point(self) -> Optional[np.ndarray]:
        if self.optimum_location is None:
            return None
        return np.full(self.dimension, self.optimum_location, dtype=np.float64)

    def describe(self) -> Dict[str, object]:
        return {
            "id": self.id,
            "name": self.name,
            "lower": self.lower,
            "upper": self.upper,
            "modality": self.modality,
            "optimum_value": self.optimum_value,
            "optimum_location": self.optimum_location,
            "deterministic": self.deterministic,
            "dimension": self.dimension,
            "variant": self.variant,
        }


def penalty_u(xi, p: PenaltyParams):
    """
    Boundary penalty: k(xi-a)^m above a, k(-xi-a)^m below -a, zero in between.

    Works on scalars and elementwise on arrays.
    """
    x = np.asarray(xi, dtype=np.float64)
    above = p.k * np.power(np.maximum(x - p.a, 0.0), p.m)
    below = p.k * np.power(np.maximum(-x - p.a, 0.0), p.m)
    result = np.where(x > p.a, above, np.where(x < -p.a, below, 0.0))
    return float(result) if result.ndim == 0 else result


def y_transform(x):
    """Inner transform of the first penalized function: y = 1 + (x + 1) / 4."""
    y = 1.0 + (np.asarray(x, dtype=np.float64) + 1.0) / 4.0
    return float(y) if y.ndim == 0 else y


# unimodal

def _sphere(x, rng=None):
    return float(np.sum(x ** 2))


def _schwefel_2_22(x, rng=None):
    a = np.abs(x)
    return float(np.sum(a) + np.prod(a))


def _schwefel_1_2(x, rng=None):
    return float(np.sum(np.cumsum(x) ** 2))


def _schwefel_2_21(x, rng=None):
    return float(np.max(np.abs(x)))


def _rosenbrock(x, rng=None):
    head, tail = x[:-1], x[1:]
    return float(np.sum(100.0 * (tail - head ** 2) ** 2 + (head - 1.0) ** 2))


def _step(x, rng=None):
    return float(np.sum(np.abs(x + 0.5) ** 2))


def _require_rng(rng):
    if rng is None:
        raise ConfigurationError("the noise function needs a caller-supplied RngStream")
    return rng


def _quartic_noise(x, rng=None):
    i = np.arange(1, x.shape[0] + 1, dtype=np.float64)
    return float(np.sum(i * x ** 4)) + _require_rng(rng).uniform01()


def _linear_noise(x, rng=None):
    i = np.arange(1, x.shape[0] + 1, dtype=np.float64)
    return float(np.sum(i * x)) + _require_rng(rng).uniform01()


# multimodal

def _rastrigin(x, rng=None):
    return float(np.sum(x ** 2 - 10.0 * np.cos(2.0 * np.pi * x) + 10.0))


def _rastrigin_literal(x, rng=None):
    return float(np.sum(x ** 2 + 10.0 * np.cos(2.0 * np.pi * x) + 10.0))


def _ackley(x, rng=None):
    n = x.shape[0]
    mean_square = np.sum(x ** 2) / n
    mean_cos = np.sum(np.cos(2.0 * np.pi * x)) / n
    return float(-20.0 * np.exp(-0.2 * np.sqrt(mean_square)) - np.exp(mean_cos) + 20.0 + np.e)


def _griewank_terms(x):
    i = np.arange(1, x.shape[0] + 1, dtype=np.float64)
    return np.sum(x ** 2) / 4000.0 - np.prod(np.cos(x / np.sqrt(i)))


def _griewank(x, rng=None):
    return float(_griewank_terms(x) + 1.0)


def _griewank_literal(x, rng=None):
    return float(_griewank_terms(x))


def _penalized_1_body(x, first_term):
    y = y_transform(x)
    n = x.shape[0]
    inner = (
        first_term(y[0])
        + np.sum((y[:-1] - 1.0) ** 2 * (1.0 + 10.0 * np.sin(np.pi * y[1:]) ** 2))
        + (y[-1] - 1.0) ** 2
    )
    return float(np.pi / n * inner + np.sum(penalty_u(x, PENALIZED_1)))


def _penalized_1(x, rng=None):
    return _penalized_1_body(x, lambda y1: 10.0 * np.sin(np.pi * y1) ** 2)


def _penalized_1_literal(x, rng=None):
    return _penalized_1_body(x, lambda y1: 10.0 * np.sin(np.pi * y1))


def _penalized_2(x, rng=None):
    inner = (
        np.sin(3.0 * np.pi * x[0]) ** 2
        + np.sum((x[:-1] - 1.0) ** 2 * (1.0 + np.sin(3.0 * np.pi * x[1:]) ** 2))
        + (x[-1] - 1.0) ** 2 * (1.0 + np.sin(2.0 * np.pi * x[-1]) ** 2)
    )
    return float(0.1 * inner + np.sum(penalty_u(x, PENALIZED_2)))


def _penalized_2_literal(x, rng=None):
    inner = (
        np.sin(3.0 * np.pi * x[0]) ** 2
        + np.sum((x - 1.0) ** 2 * (1.0 + np.sin(3.0 * np.pi * x + 1.0) ** 2))
        + (x[-1] - 1.0) ** 2 * (1.0 + np.sin(2.0 * np.pi * x[-1]) ** 2)
    )
    return float(0.1 * inner + np.sum(penalty_u(x, PENALIZED_2)))


def _alpine(x, rng=None):
    return float(np.sum(np.abs(x * np.sin(x) + 0.1 * x)))


class BenchmarkSuite:
    """
    Registry of the thirteen test functions at a given dimension and variant.
    """

    def __init__(self, dimension: int = DEFAULT_DIMENSION, variant: str = "standard"):
        """
        Initialize the suite.

        Args:
            dimension: Number of decision variables n (n >= 2)
            variant: 'standard' or 'paper-literal'
        """
        if not isinstance(dimension, (int, np.integer)) or dimension < 2:
            raise ConfigurationError(f"dimension must be an integer >= 2, got {dimension!r}")
        if variant not in VARIANTS:
            raise ConfigurationError(f"variant must be one of {VARIANTS}, got {variant!r}")
        self.dimension = int(dimension)
        self.variant = variant
        self.functions = self._initialize_functions()
        logger.debug(f"Initialized BenchmarkSuite (n={self.dimension}, variant={variant})")

    def _initialize_functions(self) -> Dict[str, BenchmarkFunction]:
        n = self.dimension
        literal = self.variant == "paper-literal"

        if literal:
            noise = ("Noise (linear)", _linear_noise, -1.28 * n * (n + 1) / 2.0, -1.28)
            rastrigin = ("Rastrigin (printed sign)", _rastrigin_literal, None, None)
            griewank = ("Griewank (no offset)", _griewank_literal, -1.0, 0.0)
            penalized_1 = _penalized_1_literal
            penalized_2 = _penalized_2_literal
        else:
            noise = ("Noise (quartic)", _quartic_noise, 0.0, 0.0)
            rastrigin = ("Rastrigin", _rastrigin, 0.0, 0.0)
            griewank = ("Griewank", _griewank, 0.0, 0.0)
            penalized_1 = _penalized_1
            penalized_2 = _penalized_2

        # id, name, bound, modality, objective, optimum value, optimum coordinate, deterministic
        table = [
            ("f1", "Sphere", 100.0, UNIMODAL, _sphere, 0.0, 0.0, True),
            ("f2", "Schwefel 2.22", 10.0, UNIMODAL, _schwefel_2_22, 0.0, 0.0, True),
            ("f3", "Schwefel 1.2", 100.0, UNIMODAL, _schwefel_1_2, 0.0, 0.0, True),
            ("f4", "Schwefel 2.21", 100.0, UNIMODAL, _schwefel_2_21, 0.0, 0.0, True),
            ("f5", "Rosenbrock", 30.0, UNIMODAL, _rosenbrock, 0.0, 1.0, True),
            ("f6", "Step", 100.0, UNIMODAL, _step, 0.0, -0.5, True),
            ("f7", noise[0], 1.28, UNIMODAL, noise[1], noise[2], noise[3], False),
            ("f8", rastrigin[0], 5.12, MULTIMODAL, rastrigin[1], rastrigin[2], rastrigin[3], True),
            ("f9", "Ackley", 32.0, MULTIMODAL, _ackley, 0.0, 0.0, True),
            ("f10", griewank[0], 600.0, MULTIMODAL, griewank[1], griewank[2], griewank[3], True),
            ("f11", "Generalized Penalized 1", 50.0, MULTIMODAL, penalized_1, 0.0, -1.0, True),
            ("f12", "Generalized Penalized 2", 50.0, MULTIMODAL, penalized_2, 0.0, 1.0, True),
            ("f13", "Alpine", 10.0, MULTIMODAL, _alpine, 0.0, 0.0, True),
        ]

        functions = {}
        for fid, name, bound, modality, objective, opt_value, opt_loc, deterministic in table:
            functions[fid] = BenchmarkFunction(
                id=fid,
                name=name,
                lower=-bound,
                upper=bound,
                modality=modality,
                optimum_value=opt_value,
                optimum_location=opt_loc,
                deterministic=deterministic,
                dimension=n,
                variant=self.variant,
                objective=objective,
            )
        return functions

    def get(self, function_id: str) -> BenchmarkFunction:
        """Look up a function by id ('f1'..'f13')."""
        try:
            return self.functions[function_id]
        except KeyError:
            raise UnknownFunctionError(function_id) from None

    def list_functions(self) -> List[BenchmarkFunction]:
        """All thirteen descriptors in id order."""
        return sorted(self.functions.values(), key=lambda fn: fn.index)


def list_functions(dimension: int = DEFAULT_DIMENSION,
                   variant: str = "standard") -> List[BenchmarkFunction]:
    """All thirteen descriptors in id order."""
    return BenchmarkSuite(dimension, variant).list_functions()


def get_function(function_id: str, dimension: int = DEFAULT_DIMENSION,
                 variant: str = "standard") -> BenchmarkFunction:
    return BenchmarkSuite(dimension, variant).get(function_id)


def evaluate(fn: BenchmarkFunction, x: Sequence[float], rng: Optional[RngStream] = None) -> float:
    """
    Objective value of ``fn`` at ``x``.

    Only the noise function consumes ``rng`` (one uniform draw added after the sum).

    Raises:
        DimensionMismatchError: len(x) differs from the function's dimension
        OutOfBoundsError: some coordinate lies outside the search box
    """
    point = np.asarray(x, dtype=np.float64)
    if point.ndim != 1 or point.shape[0] != fn.dimension:
        raise DimensionMismatchError(
            f"{fn.id} expects a vector of length {fn.dimension}, got shape {point.shape}"
        )
    if not np.all((point >= fn.lower) & (point <= fn.upper)):
        raise OutOfBoundsError(f"{fn.id} input outside [{fn.lower}, {fn.upper}]")
    return fn.objective(point, rng)
