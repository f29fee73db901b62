"""Schrödinger cocycles S_{λ,E}(x) = [[E − 2λcos2πx, −1], [1, 0]] and their products."""

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence, Union

import numpy as np

from amolab.arithmetic.frequencies import Frequency, orbit_phases
from amolab.core.linalg import Mat2

RENORM_EVERY = 32
PHASE_OFFSET = 0.123


@dataclass(frozen=True)
class SchrodingerCocycle:
    lam: float
    alpha: Frequency
    E: complex

    def __post_init__(self):
        if self.lam == 0:
            raise ValueError("coupling lambda must be non-zero")
        if complex(self.E).imag < 0:
            raise ValueError(f"energy must lie in the closed upper half-plane, got {self.E}")

    @property
    def is_real(self) -> bool:
        return complex(self.E).imag == 0.0

    @property
    def energy(self) -> Union[float, complex]:
        return complex(self.E).real if self.is_real else complex(self.E)

    def with_energy(self, E: complex) -> "SchrodingerCocycle":
        return SchrodingerCocycle(self.lam, self.alpha, E)


class ProductState(NamedTuple):
    """Entries of A_n divided by e^{log_scale}, one per (energy, phase) pair."""
    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    d: np.ndarray
    log_scale: np.ndarray
    log_sup_hs: Optional[np.ndarray]
    checkpoints: dict


class IterateResult(NamedTuple):
    matrix: Mat2
    log_scale: float

    def full(self) -> Mat2:
        return self.matrix.scaled(math.exp(self.log_scale))

    def log_op_norm(self) -> float:
        from amolab.core.linalg import op_norm
        return self.log_scale + math.log(op_norm(self.matrix))


def phase_grid(grid: int) -> np.ndarray:
    return np.mod(np.arange(grid) / grid + PHASE_OFFSET, 1.0)


def step_matrix(c: SchrodingerCocycle, x: float) -> Mat2:
    return Mat2(c.energy - 2.0 * c.lam * math.cos(2.0 * math.pi * x), -1.0, 1.0, 0.0)


def transfer_products(lam: float, alpha: Frequency, energies: Sequence[complex],
                      x0s: Sequence[float], n: int, track_sup: bool = False,
                      checkpoint_steps: Sequence[int] = ()) -> ProductState:
    """Products A_n(x) for every energy × starting phase, vectorized over both.

    Entries are rescaled by their largest modulus every RENORM_EVERY steps and
    the logarithm of the scale is accumulated.
    """
    energies = np.atleast_1d(np.asarray(energies))
    if np.all(np.imag(energies) == 0):
        energies = np.real(energies).astype(float)
    else:
        energies = energies.astype(complex)
    x0s = np.atleast_1d(np.asarray(x0s, dtype=float))
    shape = (energies.size, x0s.size)
    dtype = energies.dtype

    a = np.ones(shape, dtype=dtype)
    b = np.zeros(shape, dtype=dtype)
    c = np.zeros(shape, dtype=dtype)
    d = np.ones(shape, dtype=dtype)
    log_scale = np.zeros(shape)
    E = energies[:, None]

    offsets = 2.0 * math.pi * orbit_phases(0.0, alpha, n)
    cos_off, sin_off = np.cos(offsets), np.sin(offsets)
    cos_x = 2.0 * lam * np.cos(2.0 * math.pi * x0s)[None, :]
    sin_x = 2.0 * lam * np.sin(2.0 * math.pi * x0s)[None, :]

    log_sup_hs = np.full(shape, 0.5 * math.log(2.0)) if track_sup else None
    block_sup = np.full(shape, 2.0) if track_sup else None
    wanted = set(int(s) for s in checkpoint_steps)
    checkpoints = {}

    for j in range(n):
        trace_term = E - (cos_x * cos_off[j] - sin_x * sin_off[j])
        a, c = trace_term * a - c, a
        b, d = trace_term * b - d, b

        if track_sup:
            frob = np.abs(a) ** 2 + np.abs(b) ** 2 + np.abs(c) ** 2 + np.abs(d) ** 2
            np.maximum(block_sup, frob, out=block_sup)

        step = j + 1
        if step % RENORM_EVERY == 0 or step == n or step in wanted:
            if track_sup:
                np.maximum(log_sup_hs, 0.5 * np.log(block_sup) + log_scale, out=log_sup_hs)
            if step % RENORM_EVERY == 0:
                scale = np.maximum.reduce([np.abs(a), np.abs(b), np.abs(c), np.abs(d)])
                a, b, c, d = a / scale, b / scale, c / scale, d / scale
                log_scale = log_scale + np.log(scale)
                if track_sup:
                    block_sup = np.abs(a) ** 2 + np.abs(b) ** 2 + np.abs(c) ** 2 + np.abs(d) ** 2
            if step in wanted and track_sup:
                checkpoints[step] = log_sup_hs.copy()

    return ProductState(a, b, c, d, log_scale, log_sup_hs, checkpoints)


def log_op_norms(state: ProductState) -> np.ndarray:
    frob = np.abs(state.a) ** 2 + np.abs(state.b) ** 2 + np.abs(state.c) ** 2 + np.abs(state.d) ** 2
    det = np.abs(state.a * state.d - state.b * state.c)
    disc = np.sqrt(np.maximum(frob * frob - 4.0 * det * det, 0.0))
    return state.log_scale + 0.5 * np.log((frob + disc) / 2.0)


def iterate(c: SchrodingerCocycle, x: float, n: int) -> IterateResult:
    if n < 0:
        raise ValueError(f"iterate needs n >= 0, got {n}")
    if n == 0:
        return IterateResult(Mat2.identity(), 0.0)

    state = transfer_products(c.lam, c.alpha, [c.energy], [x], n)
    entries = [complex(v[0, 0]) if np.iscomplexobj(v) else float(v[0, 0])
               for v in (state.a, state.b, state.c, state.d)]
    return IterateResult(Mat2(*entries), float(state.log_scale[0, 0]))
