"""
Shared fixtures for the ldwscsa test suite.
"""

import sys
from pathlib import Path

import numpy as np
import pytest

# Add the src directory to the path
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from ldwscsa.rng_weights import RngStream


class ScriptedRng(RngStream):
    """RngStream that hands out a fixed cycle of uniforms instead of PCG64 output."""

    def __init__(self, values):
        super().__init__(0)
        self.values = [float(v) for v in values]
        self.position = 0

    def _draw(self, size):
        out = np.empty(size, dtype=np.float64)
        for i in range(size):
            out[i] = self.values[self.position % len(self.values)]
            self.position += 1
        return out


class ScriptedSource:
    """Plain-Python mirror of ScriptedRng used by the naive transcripts."""

    def __init__(self, values):
        self.values = [float(v) for v in values]
        self.position = 0

    def u(self):
        value = self.values[self.position % len(self.values)]
        self.position += 1
        return value

    def between(self, a, b):
        return a + (b - a) * self.u()


# Irregular values in [0, 1) so that both trig branches and repairs are exercised.
SCRIPT = [
    0.137, 0.912, 0.405, 0.688, 0.251, 0.063, 0.774, 0.519, 0.996, 0.328,
    0.447, 0.851, 0.019, 0.605, 0.293, 0.732, 0.158, 0.964, 0.381, 0.547,
    0.826, 0.074, 0.469, 0.613, 0.905, 0.212, 0.358, 0.697, 0.041, 0.583,
]


@pytest.fixture
def scripted_rng():
    """Factory for ScriptedRng instances."""
    return ScriptedRng


@pytest.fixture
def scripted_source():
    return ScriptedSource


@pytest.fixture
def script():
    return list(SCRIPT)
