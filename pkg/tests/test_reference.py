"""
Tests for the bundled published tables.
"""

import sys
from pathlib import Path

import pytest

# Add the src directory to the path
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from ldwscsa.exceptions import ConfigurationError
from ldwscsa.reference import load_particle_sweep, load_reference


class TestReferenceTables:
    """Test cases for loading the published comparison tables."""

    def test_table3_layout(self):
        table = load_reference("table3")
        assert (table.particles, table.iterations, table.dimension) == (40, 500, 30)
        assert table.competitors == ("MFO", "ABC", "SCA", "BBO", "KH")
        assert table.functions == tuple(f"f{i}" for i in range(1, 13))
        assert table.source == "published, not measured"

    def test_table3_values(self):
        table = load_reference("table3")
        assert table.mean("f3", "SCA") == 2.10e4
        assert table.mean("f6", "ABC") == 5.82e-5
        assert table.values["f2"]["LDW-SCA"] == (1.62e-273, 0.0)

    def test_table4_empty_cells(self):
        table = load_reference("table4")
        assert table.particles == 50
        assert len(table.functions) == 13
        assert table.mean("f4", "PSO2011") is None
        assert table.mean("f13", "VS") is None
        assert table.mean("f8", "PSO2011") == 26.1101

    def test_tables_are_read_only(self):
        table = load_reference("table3")
        with pytest.raises(TypeError):
            table.values["f1"]["SCA"] = (0.0, 0.0)

    def test_unknown_table(self):
        with pytest.raises(ConfigurationError):
            load_reference("table9")


class TestParticleSweep:
    """Test cases for the published particle-count sweep."""

    def test_layout(self):
        sweep = load_particle_sweep()
        assert sweep.particles == (10, 20, 30, 40, 50, 60)
        assert set(sweep.mean) == {f"f{i}" for i in range(1, 14)}

    def test_cells(self):
        sweep = load_particle_sweep()
        assert sweep.cell("f6", 40) == (3.5782e-04, 7.9898e-04)
        assert sweep.cell("f9", 10) == (8.8818e-16, 0.0)
        assert sweep.cell("f1", 35) is None
        assert sweep.cell("f14", 40) is None


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
