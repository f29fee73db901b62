from .linalg import (
    Mat2, HPoint, Interval, mobius_act, phi, hs_norm_sq, op_norm, hyp_dist,
    rotation, diag, conjugate, elliptic_fixed_point, upper_triangular_to,
)

__all__ = [
    'Mat2', 'HPoint', 'Interval', 'mobius_act', 'phi', 'hs_norm_sq', 'op_norm',
    'hyp_dist', 'rotation', 'diag', 'conjugate', 'elliptic_fixed_point',
    'upper_triangular_to',
]
