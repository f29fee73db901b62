"""Averages of φ along rotation orbits and the exact cancellation identity."""

import logging
import math
from fractions import Fraction
from typing import List, Sequence, Tuple, Union

import numpy as np

from amolab.core.linalg import HPoint, Mat2, mobius_act, phi, rotation
from amolab.utils.batching import ChunkedRunner

logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')
logger = logging.getLogger(__name__)

IDENTITY_TOLERANCE = 1e-9
MIN_AVERAGE_LENGTH = 10
MAX_PHI_SAMPLE = 100.0
MIN_SAMPLE_DET = 1e-3

I = HPoint(0.0, 1.0)


def c_constant(beta: float, lam: float) -> float:
    """min{β/2, −ln|λ|/2}, the exponential rate available in the subcritical regime."""
    if not 0 < abs(lam) < 1:
        raise ValueError(f"c is defined for 0 < |lambda| < 1, got {lam}")
    if beta < 0:
        raise ValueError(f"beta must be non-negative, got {beta}")
    return min(beta / 2.0, -math.log(abs(lam)) / 2.0)


def _check_ratio(r_over_s: Union[Fraction, Tuple[int, int]]) -> Fraction:
    if isinstance(r_over_s, tuple):
        r, s = r_over_s
        if s < 1 or math.gcd(r, s) != 1:
            raise ValueError(f"{r}/{s} is not a reduced fraction")
        r_over_s = Fraction(r, s)
    r_over_s = Fraction(r_over_s)
    if (2 * r_over_s).denominator == 1:
        raise ValueError(f"{r_over_s} is an integer multiple of 1/2")
    return r_over_s


def rotated_phi(B0: Mat2, z0: HPoint, angle: float) -> float:
    return phi(mobius_act(B0 @ rotation(angle), z0))


def cancellation_identity(B0: Mat2, z0: HPoint, r_over_s) -> Tuple[float, float]:
    """(1/s)Σ_k φ(B₀R_{rk/s}z₀) against φ(z₀)φ(B₀·i)."""
    ratio = _check_ratio(r_over_s)
    r, s = ratio.numerator, ratio.denominator
    lhs = math.fsum(rotated_phi(B0, z0, (r * k % s) / s) for k in range(s)) / s
    rhs = phi(z0) * phi(mobius_act(B0, I))
    return lhs, rhs


def elliptic_average_experiment(B0: Mat2, rho: float, z0: HPoint, b0: int, sign: int = 1,
                                delta: float = 0.0) -> Tuple[float, float]:
    if b0 < MIN_AVERAGE_LENGTH:
        raise ValueError(f"b0 must be at least {MIN_AVERAGE_LENGTH}, got {b0}")
    if not delta < rho < 0.5 - delta:
        raise ValueError(f"rho={rho} must lie in ({delta}, {0.5 - delta})")

    angles = np.mod(sign * np.arange(b0) * rho, 1.0)
    avg = math.fsum(rotated_phi(B0, z0, float(angle)) for angle in angles) / b0
    bound = phi(z0) * phi(mobius_act(B0, I))
    return avg, bound


def elliptic_average_chart(B0: Mat2, rho: float, z0: HPoint,
                           b0_values: Sequence[int] = (100, 1000, 10000)) -> List[dict]:
    rows = []
    for b0 in b0_values:
        avg, bound = elliptic_average_experiment(B0, rho, z0, b0)
        rows.append({"b0": b0, "avg": avg, "bound": bound, "ratio": avg / bound})
    return rows


def random_unimodular(rng: np.random.Generator, bound: float = 5.0) -> Mat2:
    """Entries uniform in [−bound, bound], column-flipped to det > 0 and rescaled to det 1."""
    while True:
        a, b, c, d = rng.uniform(-bound, bound, size=4)
        det = a * d - b * c
        if abs(det) < MIN_SAMPLE_DET:
            continue
        if det < 0:
            a, c = -a, -c
            det = -det
        root = math.sqrt(det)
        return Mat2(a / root, b / root, c / root, d / root)


def random_h_point(rng: np.random.Generator, phi_max: float = MAX_PHI_SAMPLE) -> HPoint:
    while True:
        y = math.exp(rng.uniform(math.log(1.0 / phi_max), math.log(phi_max)))
        x = rng.uniform(-phi_max, phi_max)
        z = HPoint(x, y)
        if phi(z) <= phi_max:
            return z


def random_ratio(rng: np.random.Generator, s_max: int) -> Fraction:
    while True:
        s = int(rng.integers(3, s_max + 1))
        r = int(rng.integers(1, s))
        if math.gcd(r, s) == 1:
            return Fraction(r, s)


def _identity_chunk(instances: Sequence[tuple]) -> List[float]:
    deviations = []
    for B0, z0, ratio in instances:
        lhs, rhs = cancellation_identity(B0, z0, ratio)
        deviations.append(abs(lhs - rhs) / rhs)
    return deviations


def cancellation_sweep(trials: int = 1000, seed: int = 0x5EED, s_max: int = 97, threads: int = 1,
                       chunk_size: int = 100) -> dict:
    """Random instances drawn in one seeded stream, evaluated in order-preserving chunks."""
    if s_max < 3:
        raise ValueError(f"s_max must be at least 3, got {s_max}")
    rng = np.random.default_rng(seed)
    instances = [(random_unimodular(rng), random_h_point(rng), random_ratio(rng, s_max))
                 for _ in range(trials)]

    runner = ChunkedRunner(_identity_chunk, threads=threads, chunk_size=chunk_size)
    deviations = runner.run(instances)
    failed = sum(1 for value in deviations if value is None)
    measured = [value for value in deviations if value is not None]
    max_deviation = max(measured) if measured else float("nan")

    passed = failed == 0 and max_deviation <= IDENTITY_TOLERANCE
    if not passed:
        logger.warning(f"Cancellation sweep: max relative deviation {max_deviation:.3e}, "
                       f"{failed} failed trials")
    return {
        "trials": trials,
        "seed": seed,
        "s_max": s_max,
        "failed": failed,
        "max_relative_deviation": max_deviation,
        "threshold": IDENTITY_TOLERANCE,
        "pass": passed,
    }
