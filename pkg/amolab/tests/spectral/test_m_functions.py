import math
from fractions import Fraction

import numpy as np
import pytest

from amolab.arithmetic.frequencies import named_frequency
from amolab.cocycle.schrodinger import SchrodingerCocycle
from amolab.core.linalg import HPoint
from amolab.periodic.approximation import band_energy_at_rho
from amolab.periodic.bands import bands, density_periodic
from amolab.spectral import m_functions
from amolab.spectral.m_functions import (
    MFunctionSample, borel_M, density_estimate, density_estimates, density_sweep,
    kotani_symmetry_probe, m_function, m_sample, m_values,
)
from amolab.utils.errors import ContractionFailure, DegeneratePair

GOLDEN = named_frequency("golden")
SQRT5 = math.sqrt(5.0)


class TestMValues:

    def test_free_operator_closed_form(self):
        # zero potential: m² + zm + 1 = 0 on the right, w² − zw + 1 = 0 on the left
        plus = m_values(0.0, GOLDEN, 0.0, [1j], "plus")[0]
        minus = m_values(0.0, GOLDEN, 0.0, [1j], "minus")[0]

        assert plus == pytest.approx(0.5j * (SQRT5 - 1.0), abs=1e-8)
        assert minus == pytest.approx(0.5j * (SQRT5 + 1.0), abs=1e-8)

    def test_free_borel_transform(self):
        sample = m_sample(0.0, GOLDEN, 0.0, 0.0, 1.0)

        assert sample.M.real == pytest.approx(0.0, abs=1e-8)
        assert sample.M.imag == pytest.approx(2.0 / SQRT5, abs=1e-8)

    def test_right_equivariance(self):
        theta, z = 0.17, complex(0.3, 0.1)
        here = m_values(0.5, GOLDEN, theta, [z], "plus")[0]
        there = m_values(0.5, GOLDEN, (theta + GOLDEN) % 1.0, [z], "plus")[0]

        potential = 2.0 * 0.5 * math.cos(2.0 * math.pi * theta)

        assert there == pytest.approx(potential - z - 1.0 / here, abs=1e-7)

    def test_upper_half_plane_values(self):
        z = np.array([-1.0 + 0.05j, 0.2 + 0.05j, 2.5 + 0.05j])
        for side in ("plus", "minus"):
            values = m_values(2.0, GOLDEN, 0.3, z, side)
            assert np.all(values.imag > 0)

    def test_rational_path_matches_step_loop(self):
        z = np.array([0.4 + 0.02j, -1.3 + 0.02j])
        alpha = Fraction(3, 8)
        for side in ("plus", "minus"):
            fast = m_values(0.5, alpha, 0.2, z, side)
            slow = m_functions._pull_back_loop(0.5, alpha, 0.2, z, side, 4096)

            np.testing.assert_allclose(fast, slow, atol=1e-7)

    def test_preconditions(self):
        with pytest.raises(ValueError):
            m_values(0.5, GOLDEN, 0.0, [0.3], "plus")
        with pytest.raises(ValueError):
            m_values(0.5, GOLDEN, 0.0, [0.3 + 0.1j], "left")
        with pytest.raises(ValueError):
            m_values(0.5, GOLDEN, 0.0, [0.3 + 0.1j], "plus", depth=4)

    def test_contraction_failure_at_capped_depth(self, monkeypatch):
        monkeypatch.setattr(m_functions, "MAX_DEPTH", 64)

        with pytest.raises(ContractionFailure):
            m_values(0.5, GOLDEN, 0.0, [0.1 + 1e-6j], "plus")

    def test_m_function_needs_complex_energy(self):
        with pytest.raises(ValueError):
            m_function(SchrodingerCocycle(0.5, GOLDEN, 0.1), 0.0, "plus")

        value = m_function(SchrodingerCocycle(0.5, GOLDEN, 0.1 + 0.1j), 0.0, "plus")
        assert value.im > 0


class TestBorelM:

    def test_formula(self):
        plus, minus = HPoint(0.3, 0.8), HPoint(-0.1, 1.7)

        expected = (complex(0.3, 0.8) * complex(-0.1, 1.7) - 1.0) / complex(0.2, 2.5)

        assert borel_M(plus, minus) == pytest.approx(expected, abs=1e-14)

    def test_degenerate_pair(self):
        with pytest.raises(DegeneratePair):
            borel_M(HPoint(0.0, 1e-15), HPoint(0.0, 1e-15))

    def test_sample_rejects_non_positive_transform(self):
        with pytest.raises(ValueError):
            MFunctionSample(0.0, 0.01, HPoint(0.0, 1.0), HPoint(0.0, 1.0), complex(0.0, -1.0))


class TestDensityEstimates:

    def test_rational_frequency_matches_periodic_density(self):
        alpha = Fraction(2, 5)
        spectrum = bands(0.5, alpha, 0.11)
        energies = [band_energy_at_rho(spectrum, k, rho) for k in range(1, 6) for rho in (0.1, 0.3)]

        smoothed = density_estimates(0.5, alpha, 0.11, energies, 1e-6)

        for E, value in zip(energies, smoothed):
            assert value == pytest.approx(density_periodic(spectrum, E), rel=1e-3)

    def test_large_eps_is_a_smoothed_value(self):
        E = band_energy_at_rho(bands(0.5, Fraction(34, 55), 0.0), 28, 0.25)

        coarse = density_estimate(0.5, GOLDEN, 0.0, E, 0.1)
        fine = density_estimate(0.5, GOLDEN, 0.0, E, 1e-3)

        assert 0.0 < coarse < math.inf
        assert fine / 3.0 <= coarse <= 3.0 * fine

    def test_eps_range(self):
        with pytest.raises(ValueError):
            density_estimates(0.5, GOLDEN, 0.0, [0.0], 0.5)
        with pytest.raises(ValueError):
            density_estimates(0.5, GOLDEN, 0.0, [0.0], 0.0)

    def test_sweep_frame(self):
        frame = density_sweep(0.5, GOLDEN, 0.0, [-1.0, 0.0, 1.0], 0.05)

        assert list(frame.columns) == ["E", "eps", "density"]
        assert len(frame) == 3
        assert (frame["density"] > 0).all()


class TestKotaniSymmetryProbe:

    def test_one_row_per_eps(self):
        rows = kotani_symmetry_probe(0.5, GOLDEN, 0.0, 0.3, [0.1, 0.01])

        assert [row["eps"] for row in rows] == [0.1, 0.01]
        assert all(row["distance"] >= 0.0 and math.isfinite(row["distance"]) for row in rows)
