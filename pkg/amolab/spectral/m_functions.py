"""Half-line m-functions, the Borel transform M and smoothed spectral densities."""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence

import numpy as np
import pandas as pd

from amolab.arithmetic.frequencies import Frequency, orbit_phases
from amolab.cocycle.schrodinger import SchrodingerCocycle
from amolab.core.linalg import HPoint, hyp_dist
from amolab.utils.errors import ContractionFailure, DegeneratePair

logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')
logger = logging.getLogger(__name__)

MIN_DEPTH = 16
MAX_DEPTH = 2 ** 20
MAX_RATIONAL_DEPTH = 2 ** 56
DEFAULT_TOL = 1e-9
RATIONAL_FAST_PERIOD = 2000
SIDES = ("plus", "minus")


@dataclass
class MFunctionSample:
    E: float
    eps: float
    m_plus: HPoint
    m_minus: HPoint
    M: complex

    def __post_init__(self):
        if not self.M.imag > 0:
            raise ValueError(f"Borel transform must have positive imaginary part, got {self.M}")

    def to_dict(self) -> dict:
        return {
            "E": self.E,
            "eps": self.eps,
            "m_plus": [self.m_plus.re, self.m_plus.im],
            "m_minus": [self.m_minus.re, self.m_minus.im],
            "M": [self.M.real, self.M.imag],
        }


def _hyp_dist_array(z: np.ndarray, w: np.ndarray) -> np.ndarray:
    argument = 1.0 + np.abs(z - w) ** 2 / (2.0 * z.imag * w.imag)
    return np.arccosh(np.maximum(argument, 1.0))


def _pull_back_loop(lam: float, alpha: Frequency, theta: float, z: np.ndarray, side: str,
                    depth: int) -> np.ndarray:
    if side == "plus":
        potential = 2.0 * lam * np.cos(2.0 * math.pi * orbit_phases(theta, alpha, depth))
        m = np.full(z.shape, 1j)
        for n in range(depth - 1, -1, -1):
            m = 1.0 / (potential[n] - z - m)
        return m

    potential = 2.0 * lam * np.cos(2.0 * math.pi * orbit_phases(theta, alpha, depth, start=-depth))
    m = np.full(z.shape, 1j)
    for n in range(depth):
        m = (z - potential[n]) - 1.0 / m
    return m


def _period_power(lam: float, alpha: Fraction, theta: float, z: np.ndarray, side: str,
                  power: int) -> np.ndarray:
    """Seed transported through `power` full periods (rational α), by repeated squaring."""
    q = alpha.denominator
    potential = 2.0 * lam * np.cos(2.0 * math.pi * orbit_phases(theta, alpha, q))
    a = np.ones(z.shape, dtype=complex)
    b = np.zeros(z.shape, dtype=complex)
    c = np.zeros(z.shape, dtype=complex)
    d = np.ones(z.shape, dtype=complex)
    for n in range(q):
        t = z - potential[n]
        a, c = t * a - c, a
        b, d = t * b - d, b
        if n % 32 == 31:
            scale = np.maximum.reduce([np.abs(a), np.abs(b), np.abs(c), np.abs(d)])
            a, b, c, d = a / scale, b / scale, c / scale, d / scale

    if side == "plus":
        # inverse period map pulls the ratio u_0/u_{-1} back from the far right
        a, b, c, d = d, -b, -c, a

    result = (np.ones(z.shape, dtype=complex), np.zeros(z.shape, dtype=complex),
              np.zeros(z.shape, dtype=complex), np.ones(z.shape, dtype=complex))
    base = (a, b, c, d)
    remaining = power
    while remaining:
        if remaining & 1:
            result = _normalized_product(base, result)
        base = _normalized_product(base, base)
        remaining >>= 1

    ra, rb, rc, rd = result
    seed = -1j if side == "plus" else 1j
    value = (ra * seed + rb) / (rc * seed + rd)
    return -value if side == "plus" else value


def _normalized_product(left, right):
    la, lb, lc, ld = left
    ra, rb, rc, rd = right
    a = la * ra + lb * rc
    b = la * rb + lb * rd
    c = lc * ra + ld * rc
    d = lc * rb + ld * rd
    scale = np.maximum.reduce([np.abs(a), np.abs(b), np.abs(c), np.abs(d)])
    return a / scale, b / scale, c / scale, d / scale


def _uses_period_power(alpha: Frequency) -> bool:
    return isinstance(alpha, Fraction) and alpha.denominator <= RATIONAL_FAST_PERIOD


def m_values(lam: float, alpha: Frequency, theta: float, z, side: str,
             depth: int = MIN_DEPTH, tol: float = DEFAULT_TOL) -> np.ndarray:
    """m^± at every point of z (Im z > 0), deepening the seed until it stops moving."""
    if side not in SIDES:
        raise ValueError(f"side must be one of {SIDES}, got {side}")
    if depth < MIN_DEPTH:
        raise ValueError(f"depth must be at least {MIN_DEPTH}, got {depth}")
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    if np.any(z.imag <= 0):
        raise ValueError("m-functions need Im E > 0")

    if _uses_period_power(alpha):
        q = alpha.denominator
        current_depth = max(depth, q)
        depth_cap = MAX_RATIONAL_DEPTH

        def evaluate(steps):
            return _period_power(lam, alpha, theta, z, side, max(1, steps // q))
    else:
        current_depth = depth
        depth_cap = MAX_DEPTH

        def evaluate(steps):
            return _pull_back_loop(lam, alpha, theta, z, side, steps)

    previous = evaluate(current_depth)
    while current_depth < depth_cap:
        current_depth *= 2
        current = evaluate(current_depth)
        if np.all(current.imag > 0) and np.all(_hyp_dist_array(current, previous) < tol):
            return current
        previous = current

    raise ContractionFailure(
        f"m^{side} did not settle by depth {depth_cap} (min Im E = {float(np.min(z.imag)):.3e})"
    )


def m_function(c: SchrodingerCocycle, theta: float, side: str, depth: int = MIN_DEPTH,
               tol: float = DEFAULT_TOL) -> HPoint:
    if c.is_real:
        raise ValueError("m_function needs Im E > 0")
    value = m_values(c.lam, c.alpha, theta, [complex(c.E)], side, depth, tol)[0]
    return HPoint.from_complex(complex(value))


def borel_M(m_plus: HPoint, m_minus: HPoint) -> complex:
    plus, minus = m_plus.to_complex(), m_minus.to_complex()
    total = plus + minus
    if abs(total) < 1e-14:
        raise DegeneratePair(f"m+ + m- vanishes for m+={plus}, m-={minus}")
    return (plus * minus - 1.0) / total


def borel_M_array(m_plus: np.ndarray, m_minus: np.ndarray) -> np.ndarray:
    total = m_plus + m_minus
    if np.any(np.abs(total) < 1e-14):
        raise DegeneratePair("m+ + m- vanishes at some sample")
    return (m_plus * m_minus - 1.0) / total


def m_sample(lam: float, alpha: Frequency, theta: float, E: float, eps: float,
             depth: int = MIN_DEPTH, tol: float = DEFAULT_TOL) -> MFunctionSample:
    z = complex(E, eps)
    plus = m_values(lam, alpha, theta, [z], "plus", depth, tol)[0]
    minus = m_values(lam, alpha, theta, [z], "minus", depth, tol)[0]
    m_plus, m_minus = HPoint.from_complex(complex(plus)), HPoint.from_complex(complex(minus))
    return MFunctionSample(E, eps, m_plus, m_minus, borel_M(m_plus, m_minus))


def _check_eps(eps: float):
    if not 0 < eps <= 0.1:
        raise ValueError(f"eps must lie in (0, 0.1], got {eps}")


def density_estimates(lam: float, alpha: Frequency, theta: float, energies: Sequence[float],
                      eps: float, depth: int = MIN_DEPTH, tol: float = DEFAULT_TOL) -> np.ndarray:
    _check_eps(eps)
    z = np.asarray(energies, dtype=float) + 1j * eps
    plus = m_values(lam, alpha, theta, z, "plus", depth, tol)
    minus = m_values(lam, alpha, theta, z, "minus", depth, tol)
    return borel_M_array(plus, minus).imag / math.pi


def density_estimate(lam: float, alpha: Frequency, theta: float, E: float, eps: float,
                     depth: int = MIN_DEPTH, tol: float = DEFAULT_TOL) -> float:
    return float(density_estimates(lam, alpha, theta, [E], eps, depth, tol)[0])


def density_sweep(lam: float, alpha: Frequency, theta: float, energies: Sequence[float],
                  eps: float, depth: int = MIN_DEPTH, tol: float = DEFAULT_TOL) -> pd.DataFrame:
    logger.info(f"Density sweep over {len(energies)} energies at eps={eps}")
    densities = density_estimates(lam, alpha, theta, energies, eps, depth, tol)
    return pd.DataFrame({"E": np.asarray(energies, dtype=float), "eps": eps, "density": densities})


def kotani_symmetry_probe(lam: float, alpha: Frequency, theta: float, E: float,
                          eps_list: Sequence[float], depth: int = MIN_DEPTH,
                          tol: float = DEFAULT_TOL) -> List[dict]:
    """hyp_dist(m⁺, −conj(m⁻)) at E + iε for each ε; report only."""
    rows = []
    for eps in eps_list:
        sample = m_sample(lam, alpha, theta, E, eps, depth, tol)
        mirrored = HPoint(-sample.m_minus.re, sample.m_minus.im)
        rows.append({"eps": eps, "distance": hyp_dist(sample.m_plus, mirrored)})
    return rows
