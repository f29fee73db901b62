from .bands import (
    BandSpectrum, as_rational, discriminant, bands, ids_periodic, density_periodic,
    band_masses, bloch_matrix, rho_from_trace, elliptic_point, period_matrix,
    phi_of_fixed_points, integrate_density,
)
from .eigen_oracle import jacobi_eigenvalues, hermitian_eigenvalues, ids_eigencount
from .approximation import (
    XSet, spectrum_union, x_set, x_complement_mass, spectra_gap_measure, phi_m_sup_log,
    band_energy_at_rho, union_measure,
)
from .butterfly import butterfly, coprime_pairs, BUTTERFLY_COLUMNS

__all__ = [
    'BandSpectrum', 'as_rational', 'discriminant', 'bands', 'ids_periodic', 'density_periodic',
    'band_masses', 'bloch_matrix', 'rho_from_trace', 'elliptic_point', 'period_matrix',
    'phi_of_fixed_points', 'integrate_density', 'jacobi_eigenvalues', 'hermitian_eigenvalues',
    'ids_eigencount', 'XSet', 'spectrum_union', 'x_set', 'x_complement_mass',
    'spectra_gap_measure', 'phi_m_sup_log', 'band_energy_at_rho', 'union_measure',
    'butterfly', 'coprime_pairs', 'BUTTERFLY_COLUMNS',
]
