"""Diagnostic probes: the ε-window mass bound and the Hölder modulus of the IDS."""

import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from amolab.arithmetic.frequencies import Frequency
from amolab.cocycle.dynamics import boundedness_probe
from amolab.cocycle.schrodinger import SchrodingerCocycle
from amolab.spectral.ids import IDSTable
from amolab.spectral.m_functions import DEFAULT_TOL, MIN_DEPTH, m_sample
from amolab.utils.errors import ResolutionError

logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')
logger = logging.getLogger(__name__)

HOLDER_EPS_MAX = 1e-2
HOLDER_EPS_MIN = 1e-5
HOLDER_SAMPLES = 50
LOWER_EXPONENT = 1.5
EXPONENT_SLACK = 0.1
UPPER_EXPONENT_FLOOR = 0.45


@dataclass
class HolderReport:
    scales: List[float]
    energies: List[float]
    min_exponent: float
    max_exponent: float
    upper_exponent: float
    lower_constant: float
    moduli: Optional[np.ndarray] = field(default=None, repr=False)

    @property
    def lower_side_ok(self) -> bool:
        return self.max_exponent <= LOWER_EXPONENT + EXPONENT_SLACK

    @property
    def upper_side_ok(self) -> bool:
        return self.upper_exponent >= UPPER_EXPONENT_FLOOR

    @property
    def passed(self) -> bool:
        return self.lower_side_ok and self.upper_side_ok

    def to_dict(self) -> dict:
        return {
            "scales": list(self.scales),
            "samples": len(self.energies),
            "min_exponent": self.min_exponent,
            "max_exponent": self.max_exponent,
            "upper_exponent": self.upper_exponent,
            "lower_constant": self.lower_constant,
            "lower_side_ok": self.lower_side_ok,
            "upper_side_ok": self.upper_side_ok,
            "pass": self.passed,
        }


def dyadic_scales(eps_max: float = HOLDER_EPS_MAX, eps_min: float = HOLDER_EPS_MIN) -> List[float]:
    scales = []
    eps = eps_max
    while eps >= eps_min:
        scales.append(eps)
        eps /= 2.0
    return scales


def holder_probe(ids: IDSTable, scales: Sequence[float] = None,
                 samples: int = HOLDER_SAMPLES) -> HolderReport:
    """Local exponents ln(N(E+ε) − N(E−ε))/ln ε at energies spread through the spectrum.

    Sample energies are the IDS quantiles at levels (i + ½)/samples, so every
    one of them lies in the support of dN.
    """
    scales = dyadic_scales() if scales is None else sorted(scales, reverse=True)
    spacing = ids.max_band_spacing()
    if min(scales) < 2.0 * spacing:
        raise ResolutionError(
            f"scale {min(scales)} is below twice the grid spacing {spacing}"
        )

    energies = ids.quantile((np.arange(samples) + 0.5) / samples)
    eps = np.array(scales)
    moduli = ids.evaluate((energies[:, None] + eps[None, :]).ravel()) \
        - ids.evaluate((energies[:, None] - eps[None, :]).ravel())
    moduli = moduli.reshape(energies.size, eps.size)

    positive = moduli > 0
    with np.errstate(divide="ignore"):
        exponents = np.where(positive, np.log(np.where(positive, moduli, 1.0)) / np.log(eps)[None, :],
                             np.inf)

    sup_modulus = np.max(moduli, axis=0)
    upper_exponent, _ = np.polyfit(np.log(eps), np.log(sup_modulus), 1)
    lower_constant = float(np.min(moduli / eps[None, :] ** LOWER_EXPONENT))

    report = HolderReport(
        scales=list(scales),
        energies=energies.tolist(),
        min_exponent=float(np.min(exponents)),
        max_exponent=float(np.max(exponents)),
        upper_exponent=float(upper_exponent),
        lower_constant=lower_constant,
        moduli=moduli,
    )
    logger.info(f"Holder probe over {samples} energies: exponents in "
                f"[{report.min_exponent:.3f}, {report.max_exponent:.3f}], upper fit {report.upper_exponent:.3f}")
    if not report.passed:
        logger.warning(f"Holder probe outside its bounds: max exponent {report.max_exponent:.3f} "
                       f"(limit {LOWER_EXPONENT + EXPONENT_SLACK}), upper fit {report.upper_exponent:.3f} "
                       f"(floor {UPPER_EXPONENT_FLOOR})")
    return report


def lemma2000_check(lam: float, alpha: Frequency, theta: float, E: float, eps: float,
                    safety_C: float = 100.0, grid: int = 32, depth: int = MIN_DEPTH,
                    tol: float = DEFAULT_TOL) -> dict:
    """Compare the ε-window spectral mass with ε·sup‖A_s‖² over s ≤ C/ε.

    The window mass is bounded by 2ε·Im M(E + iε); the supremum uses the
    Hilbert–Schmidt norm over a phase grid, so the comparison is an estimate.
    """
    if not 0 < eps <= 0.1:
        raise ValueError(f"eps must lie in (0, 0.1], got {eps}")

    sample = m_sample(lam, alpha, theta, E, eps, depth, tol)
    window_mass = 2.0 * eps * sample.M.imag / math.pi
    horizon = int(math.ceil(safety_C / eps))
    stats = boundedness_probe(SchrodingerCocycle(lam, alpha, E), horizon, grid)

    log_right = math.log(eps) + 2.0 * stats.log_sup_norm
    ratio = math.exp(math.log(window_mass) - log_right) if window_mass > 0 else 0.0
    result = {
        "E": E,
        "eps": eps,
        "horizon": horizon,
        "window_mass": window_mass,
        "log_sup_norm": stats.log_sup_norm,
        "ratio": ratio,
        "within_bound": ratio <= safety_C,
    }
    logger.info(f"Window bound at E={E}, eps={eps}: ratio={ratio:.4g}")
    return result
