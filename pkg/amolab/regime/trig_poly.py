"""Trigonometric polynomials, truncation to frequency windows and orbit sampling."""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, Mapping, Optional, Tuple, Union

import numpy as np

from amolab.arithmetic.frequencies import Frequency, orbit_phases
from amolab.utils.errors import DegenerateSample

logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')
logger = logging.getLogger(__name__)

SAMPLE_FLOOR = 1e-300
DENSE_FACTOR = 16

IntRange = Tuple[int, int]


@dataclass
class TrigPoly:
    """Σ_k c_k e^{2πikx} with every k inside essential_interval (inclusive).

    essential_interval=None is the empty window and only admits the zero polynomial.
    """

    coeffs: Dict[int, complex] = field(default_factory=dict)
    essential_interval: Optional[IntRange] = None

    def __post_init__(self):
        self.coeffs = {int(k): complex(c) for k, c in self.coeffs.items()}
        if self.essential_interval is None:
            if self.coeffs:
                raise ValueError("a non-zero polynomial needs an essential interval")
            return
        lo, hi = self.essential_interval
        if lo > hi:
            raise ValueError(f"essential interval [{lo}, {hi}] is empty; use None")
        outside = [k for k in self.coeffs if not lo <= k <= hi]
        if outside:
            raise ValueError(f"frequencies {outside} lie outside [{lo}, {hi}]")

    @classmethod
    def from_coefficients(cls, coeffs: Mapping[int, complex]) -> "TrigPoly":
        if not coeffs:
            return cls()
        return cls(dict(coeffs), (min(coeffs), max(coeffs)))

    @classmethod
    def random(cls, rng: np.random.Generator, window: IntRange) -> "TrigPoly":
        lo, hi = window
        size = hi - lo + 1
        values = rng.standard_normal(size) + 1j * rng.standard_normal(size)
        return cls({lo + j: values[j] for j in range(size)}, window)

    @property
    def essential_degree(self) -> int:
        if self.essential_interval is None:
            return 0
        return self.essential_interval[1] - self.essential_interval[0]

    def evaluate(self, x) -> Union[complex, np.ndarray]:
        scalar = np.isscalar(x)
        points = np.atleast_1d(np.asarray(x, dtype=float))
        total = np.zeros(points.shape, dtype=complex)
        for k, c in self.coeffs.items():
            total += c * np.exp(2j * math.pi * k * points)
        return complex(total[0]) if scalar else total

    def coefficient_l1(self) -> float:
        return float(sum(abs(c) for c in self.coeffs.values()))

    def dense_sup(self, points: int) -> float:
        grid = np.arange(points) / points
        return float(np.max(np.abs(self.evaluate(grid)))) if self.coeffs else 0.0


def truncate(series: Union[TrigPoly, Mapping[int, complex]], window: Optional[IntRange]) -> TrigPoly:
    coeffs = series.coeffs if isinstance(series, TrigPoly) else series
    if window is None or window[0] > window[1]:
        return TrigPoly()
    lo, hi = window
    return TrigPoly({k: c for k, c in coeffs.items() if lo <= k <= hi}, (lo, hi))


def orbit_sampling_ratio(p: TrigPoly, alpha: Frequency, x0: float, k: int) -> float:
    """Dense-grid sup of |p| over the sup of |p| on the orbit x0 + jα, 0 ≤ j ≤ k."""
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    if p.essential_degree > k:
        raise ValueError(f"essential degree {p.essential_degree} exceeds k={k}")

    samples = np.abs(p.evaluate(orbit_phases(x0, alpha, k + 1)))
    orbit_sup = float(np.max(samples)) if samples.size else 0.0
    if orbit_sup < SAMPLE_FLOOR:
        raise DegenerateSample(f"polynomial vanishes on the first {k + 1} orbit points")

    return p.dense_sup(DENSE_FACTOR * max(k, 1)) / orbit_sup
