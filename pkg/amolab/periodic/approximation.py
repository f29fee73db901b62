"""Spectrum unions over phases, the X set and the approximation charts of rational models."""

import logging
import math
from dataclasses import dataclass, field
from typing import List

import numpy as np
from scipy import optimize

from amolab.core.linalg import Interval
from amolab.periodic.bands import (
    BandSpectrum, Rational, as_rational, bands, discriminant, integrate_density,
    phi_of_fixed_points, rho_from_trace,
)

logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')
logger = logging.getLogger(__name__)

PHI_SAMPLES_PER_BAND = 64


@dataclass
class XSet:
    lam: float
    p_over_q: object
    theta: float
    threshold: float
    intervals: List[Interval] = field(default_factory=list)
    band_numbers: List[int] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "lambda": self.lam,
            "p_over_q": str(self.p_over_q),
            "theta": self.theta,
            "threshold": self.threshold,
            "intervals": [[interval.lo, interval.hi] for interval in self.intervals],
        }


def union_phases(q: int, theta_samples: int) -> np.ndarray:
    grid = np.arange(theta_samples) / theta_samples
    return np.unique(np.concatenate([grid, [0.0, 1.0 / (2.0 * q)]]))


def merge_intervals(intervals: List[Interval]) -> List[Interval]:
    ordered = sorted(intervals, key=lambda interval: interval.lo)
    merged: List[Interval] = []
    for interval in ordered:
        if merged and interval.lo <= merged[-1].hi:
            merged[-1] = Interval(merged[-1].lo, max(merged[-1].hi, interval.hi))
        else:
            merged.append(interval)
    return merged


def spectrum_union(lam: float, p_over_q: Rational, theta_samples: int) -> List[Interval]:
    """∪_θ of the bands, sampled on a θ-grid.

    Band k moves continuously with θ, so its union over the θ-range is the
    interval between its smallest left edge and largest right edge.
    """
    alpha = as_rational(p_over_q)
    q = alpha.denominator
    if theta_samples < 2 * q:
        raise ValueError(f"theta_samples={theta_samples} must be at least 2q={2 * q}")

    lows = np.full(q, np.inf)
    highs = np.full(q, -np.inf)
    for theta in union_phases(q, theta_samples):
        spectrum = bands(lam, alpha, float(theta))
        lows = np.minimum(lows, [band.lo for band in spectrum.bands])
        highs = np.maximum(highs, [band.hi for band in spectrum.bands])

    return merge_intervals([Interval(float(lo), float(hi)) for lo, hi in zip(lows, highs)])


def union_measure(intervals: List[Interval]) -> float:
    return float(sum(interval.length for interval in intervals))


def interval_difference_measure(first: List[Interval], second: List[Interval]) -> float:
    """Lebesgue measure of (∪first) \\ (∪second), both merged and sorted."""
    total = 0.0
    for interval in first:
        covered = 0.0
        for other in second:
            lo, hi = max(interval.lo, other.lo), min(interval.hi, other.hi)
            if hi > lo:
                covered += hi - lo
        total += interval.length - covered
    return max(total, 0.0)


def spectra_gap_measure(lam: float, p_over_q: Rational, alpha_fine: Rational) -> float:
    coarse = as_rational(p_over_q)
    fine = as_rational(alpha_fine)
    if coarse == fine:
        return 0.0
    if fine.denominator < 10 * coarse.denominator:
        raise ValueError(f"fine denominator {fine.denominator} must be at least 10q={10 * coarse.denominator}")

    coarse_union = spectrum_union(lam, coarse, 2 * coarse.denominator)
    fine_union = spectrum_union(lam, fine, 2 * fine.denominator)
    measure = interval_difference_measure(coarse_union, fine_union)
    logger.info(f"|Σ({coarse}) \\ Σ({fine})| = {measure:.3e} at lambda={lam}")
    return measure


def x_threshold(q: int) -> float:
    return 1.0 / (q * q)


def band_energy_at_rho(bs: BandSpectrum, band_number: int, rho: float) -> float:
    """E inside band `band_number` whose rotation number is `rho`."""
    if not 0.0 <= rho <= 0.5:
        raise ValueError(f"rho must lie in [0, 1/2], got {rho}")
    band = bs.bands[band_number - 1]
    orientation = 1.0 if bs.orientations[band_number - 1] > 0 else -1.0

    def offset(E: float) -> float:
        return orientation * (float(rho_from_trace(discriminant(bs.lam, bs.p_over_q, bs.theta, E))) - rho)

    if offset(band.lo) >= 0.0:
        return band.lo
    if offset(band.hi) <= 0.0:
        return band.hi
    return optimize.brentq(offset, band.lo, band.hi, xtol=1e-15, maxiter=200)


def x_set(bs: BandSpectrum) -> XSet:
    threshold = x_threshold(bs.q)
    result = XSet(bs.lam, bs.p_over_q, bs.theta, threshold)
    if threshold >= 0.25:
        # [threshold, 1/2 − threshold] holds at most one rotation number
        return result
    for k, band in enumerate(bs.bands, start=1):
        if band.length == 0:
            continue
        first = band_energy_at_rho(bs, k, threshold)
        second = band_energy_at_rho(bs, k, 0.5 - threshold)
        lo, hi = min(first, second), max(first, second)
        if hi > lo:
            result.intervals.append(Interval(lo, hi))
            result.band_numbers.append(k)
    return result


def x_complement_mass(bs: BandSpectrum, xs: XSet = None) -> float:
    """μ_θ-mass of the bands outside the X set."""
    xs = x_set(bs) if xs is None else xs
    inner = dict(zip(xs.band_numbers, xs.intervals))
    total = 0.0
    for k in range(1, bs.q + 1):
        if k not in inner:
            total += integrate_density(bs, k)
            continue
        interval = inner[k]
        total += integrate_density(bs, k, E_hi=interval.lo)
        total += integrate_density(bs, k, E_lo=interval.hi)
    return total


def phi_m_sup_log(bs: BandSpectrum) -> dict:
    """sup of ln φ(m(x, E)) over X-set energies and a 4q phase grid."""
    xs = x_set(bs)
    if not xs.intervals:
        return {"q": bs.q, "sup_log": 0.0, "ratio": 0.0}

    energies = np.concatenate([
        np.linspace(interval.lo, interval.hi, PHI_SAMPLES_PER_BAND + 2)[1:-1]
        for interval in xs.intervals
    ])
    sup_log = 0.0
    for x in np.arange(4 * bs.q) / (4 * bs.q):
        values = phi_of_fixed_points(bs.lam, bs.p_over_q, float(x), energies)
        finite = values[np.isfinite(values)]
        if finite.size:
            sup_log = max(sup_log, float(np.log(np.max(finite))))

    return {"q": bs.q, "sup_log": sup_log, "ratio": sup_log / bs.q}
