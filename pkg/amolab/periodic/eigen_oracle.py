"""Independent IDS oracle: Bloch-matrix eigenvalue counting with a cyclic Jacobi solver."""

import logging
import math
from typing import Callable, List, Sequence, Tuple

import numpy as np
from scipy import optimize

from amolab.periodic.bands import Rational, as_rational

logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')
logger = logging.getLogger(__name__)

ORACLE_MAX_PERIOD = 200
JACOBI_TOL = 1e-14
MAX_SWEEPS = 60
BLOCH_TOL = 1e-11


def _round_robin(size: int) -> List[Tuple[np.ndarray, np.ndarray]]:
    """size − 1 rounds of disjoint index pairs covering every pair once."""
    players = list(range(size))
    rounds = []
    for _ in range(size - 1):
        half = size // 2
        rounds.append((np.array(players[:half]), np.array(players[size - 1:half - 1:-1])))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def jacobi_eigenvalues(matrix: np.ndarray, tol: float = JACOBI_TOL,
                       max_sweeps: int = MAX_SWEEPS) -> np.ndarray:
    """Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations.

    Each sweep visits the pairs in round-robin order; the rotations of one
    round act on disjoint rows and columns, so they are applied together.
    """
    a = np.array(matrix, dtype=float, copy=True)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("jacobi_eigenvalues needs a square matrix")
    if not np.allclose(a, a.T, atol=1e-12):
        raise ValueError("jacobi_eigenvalues needs a symmetric matrix")
    if n == 1:
        return a[0].copy()
    if n % 2:
        # a decoupled zero row keeps its diagonal entry through every rotation
        a = np.pad(a, ((0, 1), (0, 1)))

    scale = max(np.linalg.norm(a), 1e-300)
    rounds = _round_robin(a.shape[0])
    for sweep in range(max_sweeps):
        off = math.sqrt(max(np.sum(a * a) - np.sum(np.diag(a) ** 2), 0.0))
        if off <= tol * scale:
            return np.sort(np.diag(a)[:n])

        for p, r in rounds:
            apr = a[p, r]
            active = np.abs(apr) > tol * scale * 1e-3
            if not np.any(active):
                continue
            theta = (a[r, r] - a[p, p]) / (2.0 * np.where(active, apr, 1.0))
            t = np.where(active, np.sign(theta) / (np.abs(theta) + np.sqrt(theta * theta + 1.0)), 0.0)
            t = np.where(active & (theta == 0.0), 1.0, t)
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c

            col_p, col_r = a[:, p].copy(), a[:, r].copy()
            a[:, p] = c * col_p - s * col_r
            a[:, r] = s * col_p + c * col_r
            row_p, row_r = a[p, :].copy(), a[r, :].copy()
            a[p, :] = c[:, None] * row_p - s[:, None] * row_r
            a[r, :] = s[:, None] * row_p + c[:, None] * row_r

    logger.warning(f"Jacobi iteration stopped after {max_sweeps} sweeps")
    return np.sort(np.diag(a)[:n])


def hermitian_eigenvalues(matrix: np.ndarray) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix via its real symmetric 2n×2n embedding."""
    if np.allclose(matrix.imag, 0.0):
        return jacobi_eigenvalues(matrix.real)
    embedded = np.block([[matrix.real, -matrix.imag], [matrix.imag, matrix.real]])
    doubled = jacobi_eigenvalues(embedded)
    return doubled[::2]


def periodic_jacobi(lam: float, p_over_q: Rational, theta: float, k: float) -> np.ndarray:
    """H(k) assembled from the cyclic shift, with e^{2πik} on the wrap-around hop."""
    alpha = as_rational(p_over_q)
    q = alpha.denominator
    phases = theta + alpha.numerator * np.arange(q, dtype=float) / q
    shift = np.roll(np.eye(q), 1, axis=0).astype(complex)
    shift[0, q - 1] *= np.exp(2j * math.pi * k)
    return np.diag(2.0 * lam * np.cos(2.0 * math.pi * phases)) + shift + shift.conj().T


def eigen_count(lam: float, p_over_q: Rational, theta: float, k: float, E: float) -> int:
    values = hermitian_eigenvalues(periodic_jacobi(lam, p_over_q, theta, k))
    return int(np.count_nonzero(values <= E))


def ids_eigencount(lam: float, p_over_q: Rational, theta: float, energies: Sequence[float],
                   k_tol: float = BLOCH_TOL,
                   eigensolver: Callable[[np.ndarray], np.ndarray] = None) -> np.ndarray:
    """N(E) = (2/q)∫_0^{1/2} #{eigenvalues of H(k) ≤ E} dk.

    Each band function is monotone on [0, 1/2], so the count has at most one
    jump there; it sits where the crossing band function equals E.

    `eigensolver` replaces the Jacobi solver for periods where it is too slow.
    """
    alpha = as_rational(p_over_q)
    q = alpha.denominator
    if q > ORACLE_MAX_PERIOD:
        raise ValueError(f"eigenvalue oracle is limited to q <= {ORACLE_MAX_PERIOD}")

    solve = hermitian_eigenvalues if eigensolver is None else eigensolver
    edge_periodic = solve(periodic_jacobi(lam, alpha, theta, 0.0))
    edge_anti = solve(periodic_jacobi(lam, alpha, theta, 0.5))

    values = []
    for E in np.atleast_1d(energies):
        count_zero = int(np.count_nonzero(edge_periodic <= E))
        count_half = int(np.count_nonzero(edge_anti <= E))
        if count_zero == count_half:
            values.append(count_zero / q)
            continue

        crossing = min(count_zero, count_half)

        def band_offset(k: float) -> float:
            return float(solve(periodic_jacobi(lam, alpha, theta, k))[crossing] - E)

        jump = optimize.brentq(band_offset, 0.0, 0.5, xtol=k_tol)
        values.append(2.0 * (count_zero * jump + count_half * (0.5 - jump)) / q)

    return np.array(values)
