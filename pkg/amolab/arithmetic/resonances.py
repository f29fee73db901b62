import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Union

import numpy as np

logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')
logger = logging.getLogger(__name__)

DEFAULT_SEARCH_BOUND = 10 ** 4


def torus_norm(x):
    if isinstance(x, np.ndarray):
        return np.abs(x - np.round(x))
    return abs(x - round(x))


@dataclass
class ResonanceReport:
    theta: float
    alpha: float
    epsilon0: float
    resonances: List[int] = field(default_factory=list)
    search_bound: int = DEFAULT_SEARCH_BOUND
    ties: List[int] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "theta": self.theta,
            "alpha": self.alpha,
            "epsilon0": self.epsilon0,
            "resonances": list(self.resonances),
            "search_bound": self.search_bound,
            "ties": list(self.ties),
        }


def _scan_order(K: int) -> np.ndarray:
    ks = [0]
    for magnitude in range(1, K + 1):
        ks.extend((magnitude, -magnitude))
    return np.array(ks, dtype=np.int64)


def find_resonances(theta: float, alpha: float, epsilon0: float,
                    K: int = DEFAULT_SEARCH_BOUND) -> ResonanceReport:
    if epsilon0 <= 0:
        raise ValueError(f"epsilon0 must be positive, got {epsilon0}")
    if K < 1:
        raise ValueError(f"K must be at least 1, got {K}")

    ks = _scan_order(K)
    distances = torus_norm(2.0 * theta - ks * float(alpha))
    magnitudes = np.abs(ks)

    # min over |j| <= |k|: both signs of a magnitude share one prefix minimum
    per_magnitude = np.full(K + 1, np.inf)
    np.minimum.at(per_magnitude, magnitudes, distances)
    prefix_min = np.minimum.accumulate(per_magnitude)

    report = ResonanceReport(theta, float(alpha), epsilon0, search_bound=K)
    for k, distance, magnitude in zip(ks, distances, magnitudes):
        if distance > math.exp(-magnitude * epsilon0):
            continue
        if distance > prefix_min[magnitude]:
            continue
        report.resonances.append(int(k))
        rivals = (magnitudes <= magnitude) & (distances == distance) & (ks != k)
        if np.any(rivals):
            report.ties.append(int(k))

    if report.ties:
        logger.warning(f"Resonance ties at {report.ties} for theta={theta}")

    return report


def following_resonance_growth(report: ResonanceReport) -> List[float]:
    growth = []
    for k in report.resonances:
        if k == 0:
            continue
        distance = torus_norm(2.0 * report.theta - k * report.alpha)
        growth.append(math.log(1.0 / max(distance, 1e-300)) / abs(k))
    return growth
