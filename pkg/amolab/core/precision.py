"""Extended-precision replay of cocycle products, used as an oracle."""

from contextlib import contextmanager
from typing import Union

import mpmath
from mpmath import mp


@contextmanager
def extended_precision(dps: int = 40):
    saved = mp.dps
    mp.dps = dps
    try:
        yield
    finally:
        mp.dps = saved


def extended_iterate(lam: float, alpha: Union[float, str], E: Union[float, complex],
                     x: float, n: int, dps: int = 40) -> mpmath.matrix:
    with extended_precision(dps):
        alpha_mp = mpmath.mpf(alpha)
        energy = mpmath.mpc(E)
        product = mpmath.eye(2)
        for j in range(n):
            phase = mpmath.mpf(x) + j * alpha_mp
            step = mpmath.matrix([[energy - 2 * lam * mpmath.cos(2 * mpmath.pi * phase), -1],
                                  [1, 0]])
            product = step * product
        return product


def extended_trace(lam: float, p: int, q: int, theta: float, E: float, dps: int = 40):
    with extended_precision(dps):
        product = mpmath.eye(2)
        for j in range(q):
            phase = mpmath.mpf(theta) + mpmath.mpf(j * p % q) / q
            step = mpmath.matrix([[mpmath.mpf(E) - 2 * lam * mpmath.cos(2 * mpmath.pi * phase), -1],
                                  [1, 0]])
            product = step * product
        return product[0, 0] + product[1, 1]
