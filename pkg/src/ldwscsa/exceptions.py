"""
Exception hierarchy for the ldwscsa package.
"""


class LDWSCSAError(Exception):
    """Base class for every error raised by ldwscsa."""


class ConfigurationError(LDWSCSAError, ValueError):
    """An optimizer or experiment configuration violates its invariants."""


class UnknownFunctionError(LDWSCSAError, KeyError):
    """A benchmark function id is not registered."""

    def __init__(self, function_id: str):
        self.function_id = function_id
        super().__init__(function_id)

    def __str__(self) -> str:
        return f"Unknown benchmark function: {self.function_id!r} (expected f1..f13)"


class UnknownAlgorithmError(LDWSCSAError, ValueError):
    """An algorithm name is not one of ldw_scsa, sca, pso."""

    def __init__(self, algorithm: str):
        self.algorithm = algorithm
        super().__init__(f"Unknown algorithm: {algorithm!r} (expected ldw_scsa, sca or pso)")


class DimensionMismatchError(LDWSCSAError, ValueError):
    """A candidate vector does not have the function's configured dimension."""


class OutOfBoundsError(LDWSCSAError, ValueError):
    """A candidate vector lies outside the function's search box."""


class SettingsMismatchError(LDWSCSAError, ValueError):
    """Measured statistics were produced under settings the reference table does not cover."""


class OutputPathError(LDWSCSAError, OSError):
    """An output file cannot be written."""
