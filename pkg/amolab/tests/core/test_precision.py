import mpmath
import pytest

from amolab.core.precision import extended_iterate, extended_precision, extended_trace


class TestExtendedPrecision:

    def test_context_restores_working_precision(self):
        saved = mpmath.mp.dps

        with extended_precision(50):
            assert mpmath.mp.dps == 50

        assert mpmath.mp.dps == saved

    def test_zero_steps_is_identity(self):
        product = extended_iterate(0.5, 0.25, 0.0, 0.1, 0)

        assert product == mpmath.eye(2)

    def test_one_step_is_the_schrodinger_matrix(self):
        product = extended_iterate(0.5, 0.25, 1.0, 0.0, 1)

        assert float(product[0, 0]) == pytest.approx(0.0, abs=1e-30)
        assert float(product[0, 1]) == -1.0
        assert float(product[1, 0]) == 1.0

    def test_products_are_unimodular(self):
        product = extended_iterate(2.0, 0.618, 0.3, 0.123, 40)

        with extended_precision(40):
            assert float(mpmath.det(product)) == pytest.approx(1.0, abs=1e-12)

    def test_free_period_trace(self):
        # tr [[E, -1], [1, 0]]^2 = E^2 - 2
        assert float(extended_trace(0.0, 1, 2, 0.0, 1.5)) == pytest.approx(1.5 ** 2 - 2.0)
