"""Bands, IDS labelling and spectral density of the rational-frequency operator."""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Tuple, Union

import numpy as np
from scipy import integrate

from amolab.cocycle.schrodinger import transfer_products
from amolab.core.linalg import HPoint, Interval, Mat2, elliptic_fixed_point
from amolab.utils.errors import BandResolutionFailure, EdgeSingularity

logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')
logger = logging.getLogger(__name__)

MAX_PERIOD = 2000
EDGE_TOL = 1e-12
EDGE_GUARD = 1e-10
EDGE_TRACE_TOL = 1e-6
TRACE_ROUNDING = 4.0
THIN_BAND_ULPS = 64
COLLAPSE_WIDTH = 1e-12
RHO_SAMPLES = 33
QUADRATURE_NODES = 96

Rational = Union[Fraction, Tuple[int, int], str]


def as_rational(p_over_q: Rational) -> Fraction:
    if isinstance(p_over_q, tuple):
        p, q = p_over_q
        if q < 1:
            raise ValueError(f"denominator must be positive, got {q}")
        if math.gcd(p, q) != 1:
            raise ValueError(f"{p}/{q} is not in lowest terms")
        return Fraction(p, q)
    if isinstance(p_over_q, str):
        return Fraction(p_over_q)
    return Fraction(p_over_q)


@dataclass
class BandSpectrum:
    lam: float
    p_over_q: Fraction
    theta: float
    bands: List[Interval]
    orientations: List[int]
    rho_tables: List[np.ndarray] = field(default_factory=list)
    collapsed_gaps: List[int] = field(default_factory=list)
    thin_bands: List[int] = field(default_factory=list)

    @property
    def q(self) -> int:
        return self.p_over_q.denominator

    @property
    def p(self) -> int:
        return self.p_over_q.numerator

    def band_index(self, E: float) -> int:
        """1-based band containing E, or 0 when E lies in a gap."""
        for k, band in enumerate(self.bands, start=1):
            if band.contains(E):
                return k
        return 0

    def to_dict(self) -> dict:
        return {
            "lambda": self.lam,
            "p": self.p,
            "q": self.q,
            "theta": self.theta,
            "bands": [[band.lo, band.hi] for band in self.bands],
            "orientations": list(self.orientations),
            "collapsed_gaps": list(self.collapsed_gaps),
            "thin_bands": list(self.thin_bands),
        }


def period_products(lam: float, p_over_q: Rational, theta: float, energies):
    """Scaled entries and log-scale of A_q(θ) at every energy."""
    alpha = as_rational(p_over_q)
    state = transfer_products(lam, alpha, np.atleast_1d(energies), [theta], alpha.denominator)
    return state.a[:, 0], state.b[:, 0], state.c[:, 0], state.d[:, 0], state.log_scale[:, 0]


def discriminant(lam: float, p_over_q: Rational, theta: float, E):
    scalar = np.isscalar(E)
    a, _, _, d, log_scale = period_products(lam, p_over_q, theta, E)
    with np.errstate(over="ignore"):
        trace = (a + d) * np.exp(log_scale)
    return float(trace[0]) if scalar else trace


def rho_from_trace(trace) -> np.ndarray:
    return np.arccos(np.clip(np.asarray(trace) / 2.0, -1.0, 1.0)) / (2.0 * math.pi)


def bloch_matrix(lam: float, p_over_q: Rational, theta: float, k: float) -> np.ndarray:
    """Periodic Jacobi matrix of one period with Bloch phase e^{2πik} on the corners."""
    alpha = as_rational(p_over_q)
    p, q = alpha.numerator, alpha.denominator
    sites = np.arange(q)
    potential = 2.0 * lam * np.cos(2.0 * math.pi * (theta + np.mod(sites * p, q) / q))

    matrix = np.diag(potential).astype(complex)
    bloch = np.exp(2j * math.pi * k)
    for n in range(q):
        right = n + 1
        hop = 1.0
        if right == q:
            right = 0
            hop = bloch
        matrix[right, n] += hop
        matrix[n, right] += np.conj(hop)
    return matrix


def trace_terms(lam: float, p_over_q: Rational, theta: float, energies):
    """tr A_q split as sign, log|tr| and log of its attainable rounding error.

    The rounding error follows the largest partial product, so it stays
    honest when the trace cancels out of entries of size λ^q.
    """
    alpha = as_rational(p_over_q)
    q = alpha.denominator
    state = transfer_products(lam, alpha, np.atleast_1d(energies), [theta], q, track_sup=True)
    scaled = (state.a + state.d)[:, 0].real
    with np.errstate(divide="ignore"):
        log_abs = np.log(np.abs(scaled)) + state.log_scale[:, 0]
    log_rounding = math.log(TRACE_ROUNDING * q * np.finfo(float).eps) + state.log_sup_hs[:, 0]
    return np.sign(scaled), log_abs, log_rounding


def _polish_edges(lam: float, alpha: Fraction, theta: float, edges: np.ndarray,
                  targets: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Bisect tr − target inside a small window around each seed.

    Returns the polished edges and a mask of edges confirmed as roots, either
    by a sign change or by |tr − target| within EDGE_TRACE_TOL.
    """
    width = 1e-9 * np.maximum(1.0, np.abs(edges))
    lo, hi = edges - width, edges + width
    f_lo = discriminant(lam, alpha, theta, lo) - targets
    f_hi = discriminant(lam, alpha, theta, hi) - targets
    bracketed = f_lo * f_hi < 0
    touching = np.abs(discriminant(lam, alpha, theta, edges) - targets) <= EDGE_TRACE_TOL

    polished = edges.copy()
    if np.any(bracketed):
        lo, hi, f_lo = lo[bracketed], hi[bracketed], f_lo[bracketed]
        goal = targets[bracketed]
        for _ in range(64):
            if np.max(hi - lo) <= EDGE_TOL * 1e-1:
                break
            mid = 0.5 * (lo + hi)
            f_mid = discriminant(lam, alpha, theta, mid) - goal
            left = f_lo * f_mid <= 0
            hi = np.where(left, mid, hi)
            lo = np.where(left, lo, mid)
            f_lo = np.where(left, f_lo, f_mid)
        polished[bracketed] = 0.5 * (lo + hi)

    return polished, bracketed | touching


def _gap_samples(edges: np.ndarray) -> np.ndarray:
    """One energy below the spectrum, one in each gap, one above."""
    inner = 0.5 * (edges[1:-1:2] + edges[2::2])
    return np.concatenate([[edges[0] - 1.0], inner, [edges[-1] + 1.0]])


def _check_sign_changes(lam: float, alpha: Fraction, theta: float, edges: np.ndarray,
                        collapsed: List[int]):
    """tr A_q must leave [−2, 2] in every open gap with the sign (−1)^(q−j).

    Walking up through the gaps, tr therefore changes sign once per band; any
    other count means an edge pair was missed or invented.
    """
    q = alpha.denominator
    samples = _gap_samples(edges)
    signs, log_abs, log_rounding = trace_terms(lam, alpha, theta, samples)
    expected = np.array([(-1) ** (q - j) for j in range(q + 1)])

    open_gaps = np.ones(q + 1, dtype=bool)
    open_gaps[collapsed] = False
    readable = log_abs > log_rounding
    outside = log_abs >= math.log(2.0 - EDGE_TRACE_TOL)

    wrong = open_gaps & ~(readable & outside & (signs == expected))
    if np.any(wrong):
        observed = signs[open_gaps]
        changes = int(np.count_nonzero(observed[1:] != observed[:-1]))
        wanted = int(np.count_nonzero(expected[open_gaps][1:] != expected[open_gaps][:-1]))
        raise BandResolutionFailure(
            f"tr A_q changes sign {changes} times across the gaps of p/q={alpha}, expected {wanted}; "
            f"first bad gap is {int(np.flatnonzero(wrong)[0])}"
        )


def _check_band_interiors(lam: float, alpha: Fraction, theta: float, band_list: List[Interval]) -> List[int]:
    """|tr| ≤ 2 at every band centre the double-precision trace can resolve.

    Returns the 1-based indices of bands too thin for that check.
    """
    midpoints = np.array([0.5 * (band.lo + band.hi) for band in band_list])
    widths = np.array([band.length for band in band_list])
    _, log_abs, log_rounding = trace_terms(lam, alpha, theta, midpoints)
    thin = (log_rounding >= 0.0) | (widths < THIN_BAND_ULPS * np.spacing(np.maximum(np.abs(midpoints), 1.0)))
    with np.errstate(over="ignore"):
        bound = 2.0 + 1e-6 + np.exp(log_rounding)
        bad = np.flatnonzero(~thin & (np.exp(log_abs) > bound))
    if bad.size:
        raise BandResolutionFailure(
            f"band {int(bad[0]) + 1} of p/q={alpha} has |tr|={math.exp(min(log_abs[bad[0]], 700.0))} "
            f"at its centre"
        )
    return [int(k) + 1 for k in np.flatnonzero(thin)]


def bands(lam: float, p_over_q: Rational, theta: float) -> BandSpectrum:
    """Bands of the period-q operator at phase θ.

    Edges are seeded by the periodic and antiperiodic eigenvalues, polished as
    roots of tr A_q ∓ 2 and accepted only when a sign-change scan of the trace
    over the gaps finds exactly q bands.
    """
    alpha = as_rational(p_over_q)
    q = alpha.denominator
    if q > MAX_PERIOD:
        raise ValueError(f"q={q} exceeds the supported period {MAX_PERIOD}")

    # tr A_q = 2 at periodic eigenvalues, -2 at antiperiodic ones
    periodic = np.linalg.eigvalsh(bloch_matrix(lam, alpha, theta, 0.0))
    antiperiodic = np.linalg.eigvalsh(bloch_matrix(lam, alpha, theta, 0.5))
    edges = np.concatenate([periodic, antiperiodic])
    targets = np.concatenate([np.full(q, 2.0), np.full(q, -2.0)])
    order = np.argsort(edges, kind="stable")
    edges, targets = edges[order], targets[order]

    _, _, log_rounding = trace_terms(lam, alpha, theta, edges)
    readable = log_rounding < math.log(EDGE_TRACE_TOL)
    if np.any(readable):
        polished, confirmed = _polish_edges(lam, alpha, theta, edges[readable], targets[readable])
        if not np.all(confirmed):
            miss = int(np.flatnonzero(~confirmed)[0])
            raise BandResolutionFailure(
                f"edge {polished[miss]} of p/q={alpha} is not a root of tr A_q - {targets[readable][miss]:+g}"
            )
        edges[readable] = polished
    edges = np.sort(edges)

    collapsed = []
    for j in range(q - 1):
        if edges[2 * j + 2] - edges[2 * j + 1] < COLLAPSE_WIDTH:
            collapsed.append(j + 1)
            edges[2 * j + 2] = edges[2 * j + 1] = max(edges[2 * j + 1], edges[2 * j + 2])
    if collapsed:
        logger.warning(f"Collapsed gaps after bands {collapsed} for lambda={lam}, p/q={alpha}, theta={theta}")

    _check_sign_changes(lam, alpha, theta, edges, collapsed)

    band_list = [Interval(float(edges[2 * j]), float(edges[2 * j + 1])) for j in range(q)]
    thin = _check_band_interiors(lam, alpha, theta, band_list)
    if thin:
        logger.info(f"{len(thin)} of {q} bands at p/q={alpha} are below the double-precision trace resolution")

    orientations = [(-1) ** (q + k - 1) for k in range(1, q + 1)]
    spectrum = BandSpectrum(lam, alpha, theta, band_list, orientations, collapsed_gaps=collapsed,
                            thin_bands=thin)
    spectrum.rho_tables = _rho_tables(spectrum)
    return spectrum


def _rho_tables(bs: BandSpectrum) -> List[np.ndarray]:
    t = np.linspace(0.0, math.pi, RHO_SAMPLES)
    tables = []
    for band, orientation in zip(bs.bands, bs.orientations):
        energies = band.lo + band.length * (1.0 - np.cos(t)) / 2.0
        rho = rho_from_trace(discriminant(bs.lam, bs.p_over_q, bs.theta, energies))
        interior = rho[1:-1]
        if interior.size > 1 and band.length > 1e-9:
            measured = 1 if interior[-1] > interior[0] else -1
            if measured != orientation:
                logger.warning(f"Orientation mismatch in band [{band.lo}, {band.hi}]")
        tables.append(np.column_stack([energies, rho]))
    return tables


def ids_periodic(bs: BandSpectrum, E):
    scalar = np.isscalar(E)
    energies = np.atleast_1d(np.asarray(E, dtype=float))
    q = bs.q
    los = np.array([band.lo for band in bs.bands])
    his = np.array([band.hi for band in bs.bands])

    # number of bands lying entirely at or below E
    completed = np.searchsorted(his, energies, side="left")
    values = completed / q

    inside = (completed < q)
    inside[inside] &= energies[inside] >= los[completed[inside]]
    if np.any(inside):
        k = completed[inside] + 1
        rho = rho_from_trace(discriminant(bs.lam, bs.p_over_q, bs.theta, energies[inside]))
        parity = np.where((q + k - 1) % 2 == 0, 1, -1)
        values[inside] = (k - 1 + parity * 2.0 * rho + (1 - parity) / 2.0) / q

    values = np.clip(values, 0.0, 1.0)
    return float(values[0]) if scalar else values


def fixed_points(a, b, c, d) -> Tuple[np.ndarray, np.ndarray]:
    """Fixed point in H of each (scaled) elliptic matrix, as (re, im) arrays."""
    trace = a + d
    det = a * d - b * c
    spread = 4.0 * det - trace * trace
    with np.errstate(divide="ignore", invalid="ignore"):
        im = np.sqrt(np.maximum(spread, 0.0)) / (2.0 * np.abs(c))
        re = (a - d) / (2.0 * c)
    return re, im


def phi_of_fixed_points(lam: float, p_over_q: Rational, theta: float, energies) -> np.ndarray:
    """φ(m(θ, E)); NaN where A_q(θ) is not elliptic."""
    a, b, c, d, _ = period_products(lam, p_over_q, theta, energies)
    trace = a + d
    det = a * d - b * c
    elliptic = 4.0 * det - trace * trace > 0
    re, im = fixed_points(a, b, c, d)
    with np.errstate(divide="ignore", invalid="ignore"):
        values = (1.0 + re * re + im * im) / (2.0 * im)
    return np.where(elliptic & (im > 0), values, np.nan)


def period_matrix(lam: float, p_over_q: Rational, theta: float, E: float) -> Mat2:
    a, b, c, d, _ = period_products(lam, p_over_q, theta, [E])
    return Mat2(float(a[0]), float(b[0]), float(c[0]), float(d[0]))


def elliptic_point(bs: BandSpectrum, E: float, theta: float = None) -> HPoint:
    phase = bs.theta if theta is None else theta
    return elliptic_fixed_point(period_matrix(bs.lam, bs.p_over_q, phase, E))


def density_periodic(bs: BandSpectrum, E: float) -> float:
    trace = discriminant(bs.lam, bs.p_over_q, bs.theta, E)
    if abs(trace) >= 2.0 - EDGE_GUARD:
        raise EdgeSingularity(f"E={E} sits at a band edge or in a gap (tr={trace})")
    return float(phi_of_fixed_points(bs.lam, bs.p_over_q, bs.theta, [E])[0]) / math.pi


def cosine_nodes(lo: float, hi: float, t_lo: float, t_hi: float, nodes: int):
    # E = lo + (hi - lo)(1 - cos t)/2 absorbs the inverse square roots at both edges
    x, w = np.polynomial.legendre.leggauss(nodes)
    t = 0.5 * (t_hi - t_lo) * x + 0.5 * (t_hi + t_lo)
    energies = lo + (hi - lo) * (1.0 - np.cos(t)) / 2.0
    weights = 0.5 * (t_hi - t_lo) * w * (hi - lo) * np.sin(t) / 2.0
    return energies, weights


def band_t(band: Interval, E: float) -> float:
    if band.length == 0:
        return 0.0
    ratio = 1.0 - 2.0 * (E - band.lo) / band.length
    return math.acos(min(1.0, max(-1.0, ratio)))


def integrate_density(bs: BandSpectrum, band_number: int, E_lo: float = None, E_hi: float = None,
                      theta: float = None, nodes: int = QUADRATURE_NODES) -> float:
    """μ_θ-mass of [E_lo, E_hi] ∩ band (1-based index), by Gauss–Legendre in the cosine variable."""
    band = bs.bands[band_number - 1]
    if band.length == 0:
        return 0.0
    t_lo = band_t(band, band.lo if E_lo is None else max(E_lo, band.lo))
    t_hi = band_t(band, band.hi if E_hi is None else min(E_hi, band.hi))
    if t_hi <= t_lo:
        return 0.0
    phase = bs.theta if theta is None else theta
    energies, weights = cosine_nodes(band.lo, band.hi, t_lo, t_hi, nodes)
    density = phi_of_fixed_points(bs.lam, bs.p_over_q, phase, energies) / math.pi
    return float(np.nansum(density * weights))


def integrate_density_adaptive(bs: BandSpectrum, band_number: int) -> float:
    band = bs.bands[band_number - 1]

    def integrand(t):
        E = band.lo + band.length * (1.0 - math.cos(t)) / 2.0
        value = phi_of_fixed_points(bs.lam, bs.p_over_q, bs.theta, [E])[0]
        if not np.isfinite(value):
            return 0.0
        return value / math.pi * band.length * math.sin(t) / 2.0

    result, _ = integrate.quad(integrand, 0.0, math.pi, epsabs=1e-11, epsrel=1e-10, limit=200)
    return float(result)


def band_masses(bs: BandSpectrum, orbit_average: bool = False,
                nodes: int = QUADRATURE_NODES) -> List[float]:
    """Per-band μ-mass at θ, or averaged over the phases θ + j·p/q."""
    if not orbit_average:
        return [integrate_density(bs, k, nodes=nodes) for k in range(1, bs.q + 1)]

    phases = [(bs.theta + (j * bs.p % bs.q) / bs.q) % 1.0 for j in range(bs.q)]
    return [
        float(np.mean([integrate_density(bs, k, theta=phase, nodes=nodes) for phase in phases]))
        for k in range(1, bs.q + 1)
    ]
