"""Continued-fraction expansions and the finite-depth β proxy."""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

import mpmath
from mpmath import mp

logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')
logger = logging.getLogger(__name__)

RATIONAL_RESOLUTION = 1e-15
GAUSS_DPS = 60
LIOUVILLE_Q_CAP = 10 ** 5


@dataclass
class ContinuedFraction:
    alpha: float
    quotients: List[int]
    convergents: List[Tuple[int, int]]
    exact: bool = False

    @property
    def denominators(self) -> List[int]:
        return [q for _, q in self.convergents]

    def deepest(self) -> Fraction:
        p, q = self.convergents[-1]
        return Fraction(p, q)

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "quotients": list(self.quotients),
            "convergents": [list(pair) for pair in self.convergents],
            "exact": self.exact,
        }


@dataclass
class BetaEstimate:
    depth: int
    ratios: List[float] = field(default_factory=list)
    beta_hat: float = 0.0

    def to_dict(self) -> dict:
        return {"depth": self.depth, "ratios": list(self.ratios), "beta_hat": self.beta_hat}


def convergents_from_quotients(quotients: Sequence[int]) -> List[Tuple[int, int]]:
    p_prev, q_prev = 1, 0
    p_curr, q_curr = 0, 1
    pairs = []
    for a in quotients:
        p_prev, p_curr = p_curr, a * p_curr + p_prev
        q_prev, q_curr = q_curr, a * q_curr + q_prev
        pairs.append((p_curr, q_curr))
    return pairs


def expand(alpha: Union[float, Fraction, "mpmath.mpf"], max_terms: int = 30,
           q_cap: Optional[int] = None) -> ContinuedFraction:
    if max_terms < 1:
        raise ValueError(f"max_terms must be at least 1, got {max_terms}")
    if not 0 < alpha < 1:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")

    quotients: List[int] = []
    convergents: List[Tuple[int, int]] = []
    exact = False

    with mpmath.workdps(GAUSS_DPS):
        if isinstance(alpha, Fraction):
            x = mpmath.mpf(alpha.numerator) / alpha.denominator
        else:
            x = mpmath.mpf(alpha)
        target = x
        p_prev, q_prev, p_curr, q_curr = 1, 0, 0, 1

        while len(quotients) < max_terms:
            if x < RATIONAL_RESOLUTION:
                exact = True
                break
            inverse = 1 / x
            a = int(mpmath.floor(inverse))
            x = inverse - a

            p_prev, p_curr = p_curr, a * p_curr + p_prev
            q_prev, q_curr = q_curr, a * q_curr + q_prev
            if q_cap is not None and q_curr > q_cap:
                break

            quotients.append(a)
            convergents.append((p_curr, q_curr))

            if abs(target - mpmath.mpf(p_curr) / q_curr) < RATIONAL_RESOLUTION:
                exact = True
                break

    if exact:
        logger.info(f"alpha={float(alpha)} is rational at machine resolution after {len(quotients)} terms")

    return ContinuedFraction(float(alpha), quotients, convergents, exact)


def from_quotients(quotients: Sequence[int]) -> ContinuedFraction:
    convergents = convergents_from_quotients(quotients)
    p, q = convergents[-1]
    return ContinuedFraction(p / q, list(quotients), convergents, exact=False)


def synthetic_liouville(depth: int, seed_quotients: Sequence[int] = (1,)) -> ContinuedFraction:
    """Quotients a_{k+1} = ceil(e^{q_k}/q_k), so ln q_{k+1} ≈ q_k.

    Construction stops early once q_k exceeds LIOUVILLE_Q_CAP, since e^{q_k}
    is then beyond any integer worth carrying.
    """
    quotients = list(seed_quotients)
    convergents = convergents_from_quotients(quotients)

    while len(quotients) < depth:
        q_k = convergents[-1][1]
        if q_k > LIOUVILLE_Q_CAP:
            logger.warning(f"Stopping synthetic expansion at q_k={q_k}")
            break
        with mpmath.workdps(int(q_k / math.log(10)) + 30):
            a_next = int(mpmath.ceil(mpmath.exp(q_k) / q_k))
        quotients.append(a_next)
        convergents = convergents_from_quotients(quotients)

    p, q = convergents[-1]
    return ContinuedFraction(p / q, quotients, convergents, exact=False)


def beta_estimate(cf: ContinuedFraction, tail: int) -> BetaEstimate:
    if len(cf.convergents) < 2:
        raise ValueError("beta_estimate needs at least two convergents")
    if tail < 1:
        raise ValueError(f"tail must be positive, got {tail}")

    denominators = cf.denominators
    ratios = [math.log(denominators[k + 1]) / denominators[k] for k in range(len(denominators) - 1)]
    window = ratios[-tail:]

    return BetaEstimate(depth=len(cf.convergents), ratios=ratios, beta_hat=max(0.0, max(window)))
