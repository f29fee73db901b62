from .continued_fraction import (
    ContinuedFraction, BetaEstimate, expand, from_quotients, synthetic_liouville,
    beta_estimate, convergents_from_quotients,
)
from .frequencies import NearRational, named_frequency, parse_frequency, orbit_phases, shift_phase
from .resonances import ResonanceReport, torus_norm, find_resonances, following_resonance_growth

__all__ = [
    'ContinuedFraction', 'BetaEstimate', 'expand', 'from_quotients', 'synthetic_liouville',
    'beta_estimate', 'convergents_from_quotients', 'NearRational', 'named_frequency',
    'parse_frequency', 'orbit_phases', 'shift_phase', 'ResonanceReport', 'torus_norm',
    'find_resonances', 'following_resonance_growth',
]
