"""Tabulated integrated density of states and the Thouless log-potential."""

import logging
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from amolab.arithmetic.frequencies import Frequency
from amolab.cocycle.dynamics import sign_change_fraction
from amolab.periodic.bands import BandSpectrum, Rational, as_rational, bands, ids_periodic
from amolab.periodic.eigen_oracle import ids_eigencount

logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')
logger = logging.getLogger(__name__)

HULL_MARGIN = 0.5
ATOM_WIDTH = 1e-15
RISE_TOL = 1e-12


@dataclass
class IDSTable:
    """Non-decreasing N on a sorted energy grid, 0 below and 1 above the grid."""

    energies: np.ndarray
    values: np.ndarray
    source: str
    resolution: float

    def __post_init__(self):
        self.energies = np.asarray(self.energies, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if self.energies.shape != self.values.shape or self.energies.size < 2:
            raise ValueError("IDS table needs matching energy and value arrays of length >= 2")
        if np.any(np.diff(self.energies) < 0):
            raise ValueError("IDS energies must be sorted")
        if np.any(np.diff(self.values) < -1e-12):
            raise ValueError("IDS values must be non-decreasing")

    def evaluate(self, E):
        scalar = np.isscalar(E)
        values = np.interp(np.atleast_1d(np.asarray(E, dtype=float)), self.energies, self.values,
                           left=0.0, right=1.0)
        return float(values[0]) if scalar else values

    def max_band_spacing(self) -> float:
        """Largest grid step across which N actually increases."""
        steps = np.diff(self.energies)
        rising = np.diff(self.values) > RISE_TOL
        return float(np.max(steps[rising])) if np.any(rising) else 0.0

    def quantile(self, levels) -> np.ndarray:
        """Smallest grid-interpolated E with N(E) = level, for levels in (0, 1)."""
        levels = np.atleast_1d(np.asarray(levels, dtype=float))
        upper = np.clip(np.searchsorted(self.values, levels, side="left"), 1, self.values.size - 1)
        lower = upper - 1
        v_lo, v_hi = self.values[lower], self.values[upper]
        e_lo, e_hi = self.energies[lower], self.energies[upper]
        with np.errstate(divide="ignore", invalid="ignore"):
            fraction = np.where(v_hi > v_lo, (levels - v_lo) / (v_hi - v_lo), 1.0)
        return e_lo + np.clip(fraction, 0.0, 1.0) * (e_hi - e_lo)

    def to_dict(self) -> dict:
        return {
            "source": self.source,
            "resolution": self.resolution,
            "energies": self.energies.tolist(),
            "values": self.values.tolist(),
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "IDSTable":
        return cls(np.array(payload["energies"]), np.array(payload["values"]),
                   payload["source"], float(payload["resolution"]))

    @classmethod
    def from_periodic(cls, bs: BandSpectrum, spacing: float = 1e-4) -> "IDSTable":
        """Band-adapted grid: edges of every band plus points at most `spacing` apart inside."""
        pieces = [np.array([bs.bands[0].lo - HULL_MARGIN])]
        for band in bs.bands:
            cells = max(1, int(math.ceil(band.length / spacing)))
            pieces.append(np.linspace(band.lo, band.hi, cells + 1))
        pieces.append(np.array([bs.bands[-1].hi + HULL_MARGIN]))
        energies = np.unique(np.concatenate(pieces))
        values = ids_periodic(bs, energies)
        # edges carry the exact gap labels k/q
        for k, band in enumerate(bs.bands, start=1):
            values[energies == band.lo] = (k - 1) / bs.q
            values[energies == band.hi] = k / bs.q
        values = np.maximum.accumulate(values)
        logger.info(f"Periodic IDS table for p/q={bs.p_over_q}: {energies.size} grid points")
        return cls(energies, values, f"periodic {bs.p_over_q} theta={bs.theta}", spacing)

    @classmethod
    def from_periodic_average(cls, lam: float, p_over_q: Rational, theta_samples: int = 8,
                              spacing: float = 1e-3) -> "IDSTable":
        """N averaged over phases spread through one period of qθ, on a uniform grid."""
        alpha = as_rational(p_over_q)
        q = alpha.denominator
        reach = 2.0 + 2.0 * abs(lam) + HULL_MARGIN
        energies = np.linspace(-reach, reach, int(math.ceil(2.0 * reach / spacing)) + 1)
        total = np.zeros_like(energies)
        for j in range(theta_samples):
            total += ids_periodic(bands(lam, alpha, j / (q * theta_samples)), energies)
        values = np.maximum.accumulate(total / theta_samples)
        return cls(energies, values, f"periodic average {alpha}", float(energies[1] - energies[0]))

    @classmethod
    def from_rotation_number(cls, lam: float, alpha: Frequency, energies: Sequence[float],
                             n: int = 100_000) -> "IDSTable":
        energies = np.sort(np.asarray(energies, dtype=float))
        counted = 1.0 - sign_change_fraction(lam, alpha, energies, n)
        values = np.maximum.accumulate(np.clip(counted, 0.0, 1.0))
        return cls(energies, values, f"rotation number n={n}", float(np.max(np.diff(energies))))

    @classmethod
    def from_eigencount(cls, lam: float, p_over_q: Rational, theta: float,
                        energies: Sequence[float]) -> "IDSTable":
        energies = np.sort(np.asarray(energies, dtype=float))
        values = np.maximum.accumulate(ids_eigencount(lam, p_over_q, theta, energies))
        return cls(energies, values, f"eigencount {as_rational(p_over_q)}",
                   float(np.max(np.diff(energies))))


def _log_antiderivative(u: np.ndarray, delta: float) -> np.ndarray:
    """G with G'(u) = ½·ln(u² + δ²)."""
    if delta > 0:
        return 0.5 * u * np.log(u * u + delta * delta) - u + delta * np.arctan(u / delta)
    with np.errstate(divide="ignore", invalid="ignore"):
        value = u * np.log(np.abs(u)) - u
    return np.where(u == 0, 0.0, value)


def thouless_L(ids: IDSTable, E: complex) -> float:
    """∫ ln|E − E′| dN(E′) with N linear on each grid cell.

    Zero-width cells carrying an increment are spread over one resolution
    width around their energy.
    """
    z = complex(E)
    lo, hi = ids.energies[:-1].copy(), ids.energies[1:].copy()
    mass = np.diff(ids.values)
    keep = mass > 0
    lo, hi, mass = lo[keep], hi[keep], mass[keep]

    atoms = (hi - lo) < ATOM_WIDTH
    if np.any(atoms):
        half = 0.5 * max(ids.resolution, ATOM_WIDTH)
        lo[atoms] -= half
        hi[atoms] += half

    delta = abs(z.imag)
    integral = _log_antiderivative(hi - z.real, delta) - _log_antiderivative(lo - z.real, delta)
    return float(np.sum(mass / (hi - lo) * integral))


def thouless_increment(ids: IDSTable, E: float, delta: float) -> float:
    """½∫ ln(1 + δ²/(E − E′)²) dN(E′) = L(E + iδ) − L(E)."""
    if delta <= 0:
        raise ValueError(f"delta must be positive, got {delta}")
    return thouless_L(ids, complex(E, delta)) - thouless_L(ids, complex(E, 0.0))
