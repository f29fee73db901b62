"""Shadowing of near-rational orbits by rotations, and the cancellation experiments along them."""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

import numpy as np

from amolab.arithmetic.frequencies import NearRational, orbit_phases
from amolab.cocycle.schrodinger import transfer_products
from amolab.core.linalg import (
    HPoint, Interval, Mat2, elliptic_fixed_point, mobius_act, op_norm, phi, rotation,
    upper_triangular_to,
)
from amolab.periodic.approximation import x_set
from amolab.periodic.bands import (
    BandSpectrum, Rational, as_rational, bands, cosine_nodes, discriminant, period_matrix,
    rho_from_trace,
)
from amolab.regime.cancellation import c_constant
from amolab.spectral.m_functions import density_estimates

logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')
logger = logging.getLogger(__name__)

MAX_ORBIT_LENGTH = 10_000
DEV_RATE = 0.5
DYNAMICAL_SLACK = 0.1
MASS_CEILING = 1.05
KAPPA_CAP = 2.0


@dataclass
class ShadowReport:
    q: int
    b: int
    deviations: List[float]
    max_dev: float
    sign: int = 1
    rho: float = 0.0
    m: Optional[HPoint] = None
    products: List[Mat2] = field(default_factory=list, repr=False)

    def __post_init__(self):
        if len(self.deviations) != self.b:
            raise ValueError(f"expected {self.b} deviations, got {len(self.deviations)}")

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "b": self.b,
            "sign": self.sign,
            "rho": self.rho,
            "m": [self.m.re, self.m.im] if self.m else None,
            "deviations": list(self.deviations),
            "max_dev": self.max_dev,
        }


def _check_instance(p_over_q: Rational, alpha_true: NearRational, b: int) -> Fraction:
    alpha = as_rational(p_over_q)
    if alpha_true.rational != alpha:
        raise ValueError(f"alpha_true={alpha_true} does not shadow {alpha}")
    if abs(alpha_true.dev) > math.exp(-DEV_RATE * alpha.denominator):
        raise ValueError(f"|dev|={abs(alpha_true.dev):.3e} exceeds e^(-q/2) for q={alpha.denominator}")
    if not 1 <= b <= MAX_ORBIT_LENGTH:
        raise ValueError(f"b must lie in [1, {MAX_ORBIT_LENGTH}], got {b}")
    return alpha


def _x_interior(bs: BandSpectrum, E: float) -> Interval:
    for interval in x_set(bs).intervals:
        if interval.lo < E < interval.hi:
            return interval
    raise ValueError(f"E={E} is outside the X set: elliptic shadowing undefined near band edges")


def orbit_products(lam: float, alpha_true: NearRational, theta: float, E: float, b: int) -> List[Mat2]:
    """Ã_{kq}(θ) for k = 0 .. b−1 under the true frequency."""
    q = alpha_true.q
    starts = orbit_phases(theta, alpha_true, b * q)[::q]
    state = transfer_products(lam, alpha_true, [E], starts, q)
    scale = np.exp(state.log_scale[0])
    products = [Mat2.identity()]
    for k in range(b - 1):
        step = Mat2(*(float(entry[0, k] * scale[k]) for entry in (state.a, state.b, state.c, state.d)))
        products.append(step @ products[-1])
    return products


def build_shadowing(lam: float, p_over_q: Rational, alpha_true: NearRational, theta: float,
                    E: float, b: int) -> ShadowReport:
    alpha = _check_instance(p_over_q, alpha_true, b)
    bs = bands(lam, alpha, theta)
    _x_interior(bs, E)

    m = elliptic_fixed_point(period_matrix(lam, alpha, theta, E))
    B = upper_triangular_to(m)
    B_inv = B.inverse()
    rho = float(rho_from_trace(discriminant(lam, alpha, theta, E)))
    products = orbit_products(lam, alpha_true, theta, E, b)

    conjugated = [B_inv @ A @ B for A in products]

    def deviation(k: int, sign: int) -> float:
        gap = conjugated[k]
        target = rotation(sign * k * rho)
        return op_norm(Mat2(gap.a - target.a, gap.b - target.b, gap.c - target.c, gap.d - target.d))

    sign = 1
    if b > 1 and deviation(1, -1) < deviation(1, 1):
        sign = -1
    deviations = [deviation(k, sign) for k in range(b)]

    report = ShadowReport(alpha.denominator, b, deviations, max(deviations), sign, rho, m, products)
    logger.info(f"Shadowing q={report.q}, dev={alpha_true.dev:.3e}, b={b}: max deviation {report.max_dev:.3e}")
    return report


def kappa(z: HPoint, m: HPoint) -> float:
    return min(KAPPA_CAP, math.exp(abs(math.log(phi(z)) - math.log(phi(m)))))


def asymptotic_log_b(lam: float, alpha_true: NearRational) -> Optional[float]:
    """ln of the orbit length e^{cq/10} the asymptotic argument asks for, with β read off dev."""
    if alpha_true.dev == 0 or not 0 < abs(lam) < 1:
        return None
    beta = -math.log(abs(alpha_true.dev)) / alpha_true.q
    return c_constant(max(beta, 0.0), lam) * alpha_true.q / 10.0


def dynamical_cancellation(lam: float, p_over_q: Rational, alpha_true: NearRational, theta: float,
                           E: float, z: HPoint, b: int) -> dict:
    """Average of φ(Ã_{kq}(θ)·z) over k < b against ((1 + κ²)/2κ)·φ(m(θ, E))."""
    report = build_shadowing(lam, p_over_q, alpha_true, theta, E, b)
    phi_m = phi(report.m)
    k_value = kappa(z, report.m)
    factor = (1.0 + k_value * k_value) / (2.0 * k_value)

    avg = math.fsum(phi(mobius_act(A, z)) for A in report.products) / b
    floor = factor * phi_m
    ratio = avg / floor
    passed = ratio >= 1.0 - DYNAMICAL_SLACK
    if not passed:
        logger.warning(f"Dynamical cancellation ratio {ratio:.4f} below 1 - {DYNAMICAL_SLACK}")
    return {
        "q": report.q,
        "b": b,
        "dev": alpha_true.dev,
        "kappa": k_value,
        "floor_factor": factor,
        "phi_m": phi_m,
        "phi_z": phi(z),
        "avg": avg,
        "floor": floor,
        "ratio": ratio,
        "slack": DYNAMICAL_SLACK,
        "asymptotic_log_b": asymptotic_log_b(lam, alpha_true),
        "pass": passed,
    }


def integrated_cancellation(lam: float, p_over_q: Rational, alpha_true: NearRational, theta: float,
                            b: int, energy_samples: int = 32, eps: float = 1e-3,
                            tol: float = 1e-7) -> dict:
    """Half the ε-smoothed spectral mass of the X set at the phases θ + kα, k < b.

    The smoothed density stands in for the boundary values of the m-functions,
    so the masses carry an ε-bias of their own.
    """
    alpha = _check_instance(p_over_q, alpha_true, b)
    xs = x_set(bands(lam, alpha, theta))
    if not xs.intervals:
        raise ValueError(f"X set of {alpha} at theta={theta} is empty")

    nodes = [cosine_nodes(interval.lo, interval.hi, 0.0, math.pi, energy_samples)
             for interval in xs.intervals]
    energies = np.concatenate([node[0] for node in nodes])
    weights = np.concatenate([node[1] for node in nodes])

    masses = []
    for phase in orbit_phases(theta, alpha_true, b):
        density = density_estimates(lam, alpha_true, float(phase), energies, eps, tol=tol)
        masses.append(0.5 * float(np.dot(density, weights)))
        logger.info(f"Integrated mass at phase {phase:.6f}: {masses[-1]:.6f}")

    average = float(np.mean(masses))
    return {
        "q": alpha.denominator,
        "b": b,
        "dev": alpha_true.dev,
        "eps": eps,
        "x_measure": float(sum(interval.length for interval in xs.intervals)),
        "masses": masses,
        "k0_mass": masses[0],
        "average_mass": average,
        "ceiling": MASS_CEILING,
        "pass": average <= MASS_CEILING,
    }


def point_with_phi_ratio(m: HPoint, ratio: float) -> HPoint:
    """The point above m on its vertical geodesic with φ equal to ratio·φ(m)."""
    if ratio < 1.0:
        raise ValueError(f"ratio must be at least 1, got {ratio}")
    shift = 1.0 + m.re * m.re
    y = m.im
    total = ratio * (shift + y * y)
    t = (total + math.sqrt(max(total * total - 4.0 * shift * y * y, 0.0))) / (2.0 * y * y)
    return HPoint(m.re, t * y)
