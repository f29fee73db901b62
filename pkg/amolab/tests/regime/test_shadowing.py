import math
from fractions import Fraction

import pytest

from amolab.arithmetic.frequencies import NearRational
from amolab.core.linalg import HPoint, phi
from amolab.periodic.approximation import band_energy_at_rho
from amolab.periodic.bands import bands
from amolab.regime.shadowing import (
    ShadowReport, asymptotic_log_b, build_shadowing, dynamical_cancellation,
    integrated_cancellation, kappa, orbit_products, point_with_phi_ratio,
)


def exact(instance):
    return NearRational(instance["p"], instance["q"], 0.0)


def shadow(instance, alpha_true, b=None):
    return build_shadowing(instance["lambda"], Fraction(instance["p"], instance["q"]), alpha_true,
                           instance["theta"], instance["E"], instance["b"] if b is None else b)


class TestPointWithPhiRatio:

    def test_above_i(self):
        z = point_with_phi_ratio(HPoint(0.0, 1.0), 2.0)

        assert z.re == 0.0
        assert z.im == pytest.approx(2.0 + math.sqrt(3.0))
        assert phi(z) == pytest.approx(2.0)

    def test_general_point(self):
        m = HPoint(0.7, 0.3)

        assert phi(point_with_phi_ratio(m, 3.5)) == pytest.approx(3.5 * phi(m), rel=1e-12)

    def test_ratio_below_one(self):
        with pytest.raises(ValueError):
            point_with_phi_ratio(HPoint(0.0, 1.0), 0.5)


class TestKappa:

    def test_clamped_to_two(self):
        m = HPoint(0.0, 1.0)

        assert kappa(m, m) == pytest.approx(1.0)
        assert kappa(point_with_phi_ratio(m, 1.5), m) == pytest.approx(1.5)
        assert kappa(point_with_phi_ratio(m, 10.0), m) == 2.0


class TestBuildShadowing:

    def test_exact_rational_is_a_rotation(self, q13_instance):
        report = shadow(q13_instance, exact(q13_instance))

        assert isinstance(report, ShadowReport)
        assert len(report.deviations) == q13_instance["b"]
        assert report.max_dev <= 1e-9
        assert report.rho == pytest.approx(0.25, abs=1e-9)

    def test_deviation_grows_with_dev(self, q13_instance):
        previous = 0.0
        for j in range(5):
            alpha_true = NearRational(q13_instance["p"], q13_instance["q"], math.exp(-14.0) * 2 ** j)

            report = shadow(q13_instance, alpha_true)

            assert report.max_dev >= previous
            previous = report.max_dev
        assert previous > 1e-9

    def test_longer_period_shadows_better(self, golden_instances, q13_instance):
        rate = golden_instances["matched_dev_rate"]
        long = dict(golden_instances["q34"])
        spectrum = bands(long["lambda"], Fraction(long["p"], long["q"]), long["theta"])
        long["E"] = band_energy_at_rho(spectrum, long["band"], long["rho"])

        short_report = shadow(q13_instance, NearRational(8, 13, math.exp(-rate * 13)))
        long_report = shadow(long, NearRational(21, 34, math.exp(-rate * 34)))

        assert long_report.max_dev < short_report.max_dev

    def test_orbit_products_start_at_identity(self, q13_instance):
        products = orbit_products(0.5, q13_instance["alpha_true"], 0.0, q13_instance["E"], 3)

        assert len(products) == 3
        assert products[0].max_abs_diff(products[0].identity()) == 0.0
        assert products[2].det() == pytest.approx(1.0, abs=1e-9)

    def test_rejects_energy_outside_x_set(self, q13_instance):
        spectrum = bands(0.5, Fraction(8, 13), 0.0)
        edge = spectrum.bands[6].lo

        with pytest.raises(ValueError, match="near band edges"):
            build_shadowing(0.5, Fraction(8, 13), exact(q13_instance), 0.0, edge, 4)

    def test_rejects_large_dev_and_wrong_rational(self, q13_instance):
        with pytest.raises(ValueError):
            shadow(q13_instance, NearRational(8, 13, 1e-2))
        with pytest.raises(ValueError):
            shadow(q13_instance, NearRational(5, 8, 0.0))
        with pytest.raises(ValueError):
            shadow(q13_instance, exact(q13_instance), b=20_000)


class TestDynamicalCancellation:

    def run(self, instance, alpha_true, z_ratio):
        alpha = Fraction(instance["p"], instance["q"])
        m = shadow(instance, exact(instance), b=1).m
        z = m if z_ratio == 1.0 else point_with_phi_ratio(m, z_ratio)
        return dynamical_cancellation(instance["lambda"], alpha, alpha_true, instance["theta"],
                                      instance["E"], z, instance["b"])

    def test_fixed_point_is_the_floor(self, q13_instance):
        result = self.run(q13_instance, exact(q13_instance), 1.0)

        assert result["kappa"] == pytest.approx(1.0)
        assert result["floor"] == pytest.approx(result["phi_m"])
        assert result["ratio"] == pytest.approx(1.0, abs=1e-9)

    def test_golden_instance_clears_the_floor(self, q13_instance):
        result = self.run(q13_instance, q13_instance["alpha_true"], q13_instance["phi_ratio"])

        assert result["kappa"] == pytest.approx(2.0)
        assert result["floor_factor"] == pytest.approx(1.25)
        assert result["ratio"] >= q13_instance["dynamical_ratio_floor"]
        assert result["pass"]

    def test_reports_the_asymptotic_orbit_length(self, q13_instance):
        result = self.run(q13_instance, q13_instance["alpha_true"], q13_instance["phi_ratio"])

        # dev = e^-8 at q = 13 reads as beta = 8/13, so c = 4/13 and ln b = cq/10
        assert result["asymptotic_log_b"] == pytest.approx(0.4, abs=1e-12)
        assert asymptotic_log_b(0.5, exact(q13_instance)) is None

    def test_far_point_doubles_phi_m(self, q13_instance):
        result = self.run(q13_instance, q13_instance["alpha_true"], math.exp(13))

        assert result["avg"] >= 2.0 * result["phi_m"]
        assert result["floor_factor"] >= 1.0


class TestIntegratedCancellation:

    def test_golden_instance_masses(self, q13_instance):
        alpha = Fraction(q13_instance["p"], q13_instance["q"])

        result = integrated_cancellation(0.5, alpha, q13_instance["alpha_true"], 0.0, b=2)

        low, high = q13_instance["k0_mass_range"]
        assert low <= result["k0_mass"] <= high
        assert len(result["masses"]) == 2
        assert result["average_mass"] <= result["ceiling"] == 1.05
        assert result["pass"]
