from fractions import Fraction

import pytest

from amolab.arithmetic.frequencies import named_frequency
from amolab.periodic.approximation import band_energy_at_rho
from amolab.periodic.bands import bands
from amolab.spectral.ids import IDSTable
from amolab.spectral.probes import HolderReport, dyadic_scales, holder_probe, lemma2000_check
from amolab.utils.errors import ResolutionError

GOLDEN = named_frequency("golden")


@pytest.fixture(scope="module")
def approximant():
    return bands(0.5, Fraction(34, 55), 0.0)


@pytest.fixture(scope="module")
def fine_ids(approximant):
    return IDSTable.from_periodic(approximant, spacing=1e-4)


class TestDyadicScales:

    def test_halving_from_top(self):
        scales = dyadic_scales(1e-2, 1e-3)

        assert scales[0] == 1e-2
        assert scales[-1] >= 1e-3
        assert scales[-1] / 2.0 < 1e-3
        assert all(a == pytest.approx(2.0 * b) for a, b in zip(scales, scales[1:]))


class TestHolderProbe:

    def test_upper_exponent_on_resolved_scales(self, fine_ids):
        report = holder_probe(fine_ids, scales=dyadic_scales(1e-2, 4e-4), samples=50)

        assert report.upper_exponent >= 0.45
        assert len(report.energies) == 50
        assert report.moduli.shape == (50, len(report.scales))
        assert report.min_exponent > 0.0

    def test_golden_proxy_over_full_scale_range(self):
        ids = IDSTable.from_periodic(bands(0.5, Fraction(144, 233), 0.0), spacing=4e-6)
        scales = dyadic_scales(1e-2, 1e-5)

        report = holder_probe(ids, scales=scales, samples=50)

        assert min(report.scales) < 2e-5
        assert report.max_exponent <= 1.6
        assert report.upper_exponent >= 0.45
        assert report.passed
        assert report.to_dict()["pass"] is True

    def test_flags_follow_the_exponents(self):
        report = HolderReport(scales=[1e-2], energies=[0.0], min_exponent=0.5, max_exponent=1.7,
                              upper_exponent=0.6, lower_constant=1.0)

        assert not report.lower_side_ok
        assert report.upper_side_ok
        assert report.to_dict()["pass"] is False

    def test_scales_below_grid_resolution(self, fine_ids):
        with pytest.raises(ResolutionError):
            holder_probe(fine_ids)

    def test_report_dict(self, fine_ids):
        payload = holder_probe(fine_ids, scales=[1e-2, 5e-3], samples=10).to_dict()

        assert payload["samples"] == 10
        assert payload["scales"] == [1e-2, 5e-3]


class TestWindowMassBound:

    def test_subcritical_window_mass_bound(self, approximant):
        E = band_energy_at_rho(approximant, 28, 0.25)

        result = lemma2000_check(0.5, GOLDEN, 0.0, E, 0.01)

        assert result["horizon"] == 10_000
        assert result["window_mass"] > 0.0
        assert result["ratio"] <= 100.0
        assert result["within_bound"]

    def test_eps_range(self):
        with pytest.raises(ValueError):
            lemma2000_check(0.5, GOLDEN, 0.0, 0.0, 0.2)
