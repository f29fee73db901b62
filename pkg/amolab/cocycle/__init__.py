from .schrodinger import SchrodingerCocycle, IterateResult, step_matrix, iterate, phase_grid
from .dynamics import (
    OrbitStats, lyapunov, lyapunov_complex, lyapunov_many, rotation_number,
    sign_change_fraction, boundedness_probe, uniform_hyperbolicity_test,
)
from .sweep import LyapunovSweep, lyapunov_sweep, SWEEP_COLUMNS

__all__ = [
    'SchrodingerCocycle', 'IterateResult', 'step_matrix', 'iterate', 'phase_grid',
    'OrbitStats', 'lyapunov', 'lyapunov_complex', 'lyapunov_many', 'rotation_number',
    'sign_change_fraction', 'boundedness_probe', 'uniform_hyperbolicity_test',
    'LyapunovSweep', 'lyapunov_sweep', 'SWEEP_COLUMNS',
]
