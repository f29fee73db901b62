from .m_functions import (
    MFunctionSample, m_function, m_values, m_sample, borel_M, density_estimate,
    density_estimates, density_sweep, kotani_symmetry_probe,
)
from .ids import IDSTable, thouless_L, thouless_increment
from .probes import HolderReport, holder_probe, lemma2000_check, dyadic_scales

__all__ = [
    'MFunctionSample', 'm_function', 'm_values', 'm_sample', 'borel_M', 'density_estimate',
    'density_estimates', 'density_sweep', 'kotani_symmetry_probe', 'IDSTable', 'thouless_L',
    'thouless_increment', 'HolderReport', 'holder_probe', 'lemma2000_check', 'dyadic_scales',
]
