"""Lyapunov exponents, rotation numbers and boundedness/hyperbolicity probes."""

import logging
import math
from dataclasses import dataclass, field
from typing import List, Sequence

import numpy as np

from amolab.arithmetic.frequencies import Frequency, orbit_phases
from amolab.cocycle.schrodinger import (
    RENORM_EVERY, PHASE_OFFSET, SchrodingerCocycle, log_op_norms, phase_grid, transfer_products,
)

logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')
logger = logging.getLogger(__name__)

MIN_LYAPUNOV_STEPS = 1000
MIN_GRID = 32
DIRECTION_JUMP_LIMIT = math.pi / 4


@dataclass
class OrbitStats:
    n: int
    phases: int
    lyap: float
    sup_norm: float
    rotation: float
    log_sup_norm: float = 0.0
    loglog_slope: float = float("nan")
    loglinear_slope: float = float("nan")
    checkpoints: List[int] = field(default_factory=list)
    log_sup_at: List[float] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "phases": self.phases,
            "lyap": self.lyap,
            "sup_norm": self.sup_norm,
            "rotation": self.rotation,
            "log_sup_norm": self.log_sup_norm,
            "loglog_slope": self.loglog_slope,
            "loglinear_slope": self.loglinear_slope,
        }


def _check_sizes(n: int, grid: int):
    if n < MIN_LYAPUNOV_STEPS:
        raise ValueError(f"Lyapunov estimates need n >= {MIN_LYAPUNOV_STEPS}, got {n}")
    if grid < MIN_GRID:
        raise ValueError(f"Lyapunov estimates need grid >= {MIN_GRID}, got {grid}")


def lyapunov_many(lam: float, alpha: Frequency, energies: Sequence[complex], n: int,
                  grid: int) -> np.ndarray:
    state = transfer_products(lam, alpha, energies, phase_grid(grid), n)
    return np.mean(log_op_norms(state), axis=1) / n


def lyapunov(c: SchrodingerCocycle, n: int = 200_000, grid: int = 64) -> float:
    _check_sizes(n, grid)
    return float(lyapunov_many(c.lam, c.alpha, [c.energy], n, grid)[0])


def lyapunov_complex(c: SchrodingerCocycle, n: int = 20_000, grid: int = 64) -> float:
    """Same estimator at E + iδ; δ = 0 falls back to the real-energy path."""
    _check_sizes(n, grid)
    return float(lyapunov_many(c.lam, c.alpha, [c.energy], n, grid)[0])


def sign_change_fraction(lam: float, alpha: Frequency, energies: Sequence[float], n: int,
                         x0: float = 0.0) -> np.ndarray:
    """Fraction of steps at which the solution with (u_0, u_{-1}) = (1, 0) changes sign.

    Each sign change is one half-turn of the Prüfer angle, so this fraction
    equals twice the fibered rotation number up to 1/n.
    """
    energies = np.atleast_1d(np.asarray(energies, dtype=float))
    potential = 2.0 * lam * np.cos(2.0 * math.pi * orbit_phases(x0, alpha, n))

    u = np.ones_like(energies)
    v = np.zeros_like(energies)
    changes = np.zeros(energies.shape, dtype=np.int64)

    for j in range(n):
        u_next = (energies - potential[j]) * u - v
        changes += (u_next * u < 0)
        u, v = u_next, u
        if (j + 1) % RENORM_EVERY == 0:
            scale = np.maximum(np.abs(u), np.abs(v))
            u, v = u / scale, v / scale

    return changes / n


def rotation_number(c: SchrodingerCocycle, n: int = 100_000, x0: float = PHASE_OFFSET) -> float:
    if not c.is_real:
        raise ValueError("rotation_number needs a real energy")
    if n < MIN_LYAPUNOV_STEPS:
        raise ValueError(f"rotation_number needs n >= {MIN_LYAPUNOV_STEPS}, got {n}")

    fraction = float(sign_change_fraction(c.lam, c.alpha, [c.energy], n, x0)[0])
    return min(max(fraction / 2.0, 0.0), 0.5)


def _slope(xs: np.ndarray, ys: np.ndarray) -> float:
    if xs.size < 2:
        return float("nan")
    slope, _ = np.polyfit(xs, ys, 1)
    return float(slope)


def boundedness_probe(c: SchrodingerCocycle, n_max: int = 10_000, grid: int = 32) -> OrbitStats:
    if n_max <= 0:
        return OrbitStats(n=0, phases=grid, lyap=0.0, sup_norm=math.sqrt(2.0),
                          rotation=float("nan"), log_sup_norm=0.5 * math.log(2.0))

    checkpoints = [s for s in (2 ** k for k in range(4, 64)) if s < n_max] + [n_max]
    state = transfer_products(c.lam, c.alpha, [c.energy],
                              phase_grid(grid), n_max, track_sup=True, checkpoint_steps=checkpoints)

    log_sup_at = [float(np.max(state.checkpoints[s])) for s in checkpoints]
    log_sup = float(np.max(state.log_sup_hs))
    lyap = float(np.mean(log_op_norms(state)) / n_max)

    rotation = float("nan")
    if c.is_real and n_max >= MIN_LYAPUNOV_STEPS:
        rotation = rotation_number(c, n_max)

    steps = np.array(checkpoints, dtype=float)
    values = np.array(log_sup_at)
    stats = OrbitStats(
        n=n_max,
        phases=grid,
        lyap=lyap,
        sup_norm=math.exp(min(log_sup, 709.0)),
        rotation=rotation,
        log_sup_norm=log_sup,
        loglog_slope=_slope(np.log(steps), values),
        loglinear_slope=_slope(steps, values),
        checkpoints=checkpoints,
        log_sup_at=log_sup_at,
    )
    logger.info(f"Boundedness probe E={c.E}: log sup={log_sup:.4f}, "
                f"log-log slope={stats.loglog_slope:.4f}")
    return stats


def _contracted_directions(a, b, c, d) -> np.ndarray:
    # eigenvector of AᵀA for the smaller eigenvalue, as an angle mod π
    p = a * a + c * c
    r = a * b + c * d
    s = b * b + d * d
    major = 0.5 * np.arctan2(2.0 * r, p - s)
    return np.mod(major + math.pi / 2.0, math.pi)


def uniform_hyperbolicity_test(c: SchrodingerCocycle, n: int = 500, grid: int = 64,
                               tol: float = 0.1) -> bool:
    if not c.is_real:
        raise ValueError("uniform_hyperbolicity_test needs a real energy")
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")

    state = transfer_products(c.lam, c.alpha, [c.energy], phase_grid(grid), n)
    log_gap = 2.0 * log_op_norms(state)[0]
    if not np.all(log_gap > n * tol):
        return False

    directions = _contracted_directions(state.a[0], state.b[0], state.c[0], state.d[0])
    jumps = np.abs(np.diff(np.append(directions, directions[0])))
    jumps = np.minimum(jumps, math.pi - jumps)
    return bool(np.all(jumps < DIRECTION_JUMP_LIMIT))
