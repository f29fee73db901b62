import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import numpy as np

from amolab.arithmetic.continued_fraction import convergents_from_quotients

logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')
logger = logging.getLogger(__name__)

NAMED_QUOTIENTS = {
    "golden": 1,
    "silver": 2,
}
NAMED_DEPTH = 30


@dataclass(frozen=True)
class NearRational:
    """Frequency p/q + dev with the rational part kept exact."""

    p: int
    q: int
    dev: float

    def __post_init__(self):
        if self.q < 1:
            raise ValueError(f"q must be positive, got {self.q}")

    def __float__(self) -> float:
        return self.p / self.q + self.dev

    @property
    def rational(self) -> Fraction:
        return Fraction(self.p, self.q)


Frequency = Union[float, Fraction, NearRational]


def named_frequency(name: str) -> float:
    key = name.lower()
    if key not in NAMED_QUOTIENTS:
        raise ValueError(f"Unknown frequency alias: {name}")
    p, q = convergents_from_quotients([NAMED_QUOTIENTS[key]] * NAMED_DEPTH)[-1]
    return p / q


def parse_frequency(text: str) -> Frequency:
    text = text.strip()
    if text.lower() in NAMED_QUOTIENTS:
        return named_frequency(text)
    if "/" in text:
        fraction = Fraction(text)
        if fraction.denominator < 1:
            raise ValueError(f"Bad rational frequency {text}")
        return fraction
    return float(text)


def orbit_phases(theta: float, alpha: Frequency, n: int, start: int = 0) -> np.ndarray:
    """θ + jα mod 1 for j = start .. start+n-1."""
    steps = np.arange(start, start + n, dtype=np.int64)

    if isinstance(alpha, Fraction):
        p, q = alpha.numerator, alpha.denominator
        return np.mod(theta + np.mod(steps * p, q) / q, 1.0)
    if isinstance(alpha, NearRational):
        return np.mod(theta + np.mod(steps * alpha.p, alpha.q) / alpha.q + steps * alpha.dev, 1.0)

    return np.mod(theta + steps * float(alpha), 1.0)


def shift_phase(theta: float, alpha: Frequency, k: int) -> float:
    return float(orbit_phases(theta, alpha, 1, start=k)[0])
