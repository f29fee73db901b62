from .trig_poly import TrigPoly, truncate, orbit_sampling_ratio
from .cancellation import (
    c_constant, cancellation_identity, elliptic_average_experiment, elliptic_average_chart,
    cancellation_sweep, random_unimodular, random_h_point,
)
from .shadowing import (
    ShadowReport, build_shadowing, dynamical_cancellation, integrated_cancellation,
    orbit_products, kappa, point_with_phi_ratio, asymptotic_log_b,
)

__all__ = [
    'TrigPoly', 'truncate', 'orbit_sampling_ratio', 'c_constant', 'cancellation_identity',
    'elliptic_average_experiment', 'elliptic_average_chart', 'cancellation_sweep',
    'random_unimodular', 'random_h_point', 'ShadowReport', 'build_shadowing',
    'dynamical_cancellation', 'integrated_cancellation', 'orbit_products', 'kappa',
    'point_with_phi_ratio', 'asymptotic_log_b',
]
