"""Energy sweeps of the cocycle engine, merged deterministically."""

import logging
from functools import partial
from typing import List, Sequence

import pandas as pd

from amolab.arithmetic.frequencies import Frequency
from amolab.cocycle.dynamics import boundedness_probe
from amolab.cocycle.schrodinger import SchrodingerCocycle
from amolab.utils.batching import ChunkedRunner

logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')
logger = logging.getLogger(__name__)

SWEEP_COLUMNS = ["lambda", "alpha", "E_re", "E_im", "n", "lyap", "rotation", "sup_norm"]


def _sweep_chunk(energies: Sequence[complex], lam: float, alpha: Frequency, n: int,
                 grid: int) -> List[dict]:
    rows = []
    for E in energies:
        cocycle = SchrodingerCocycle(lam, alpha, E)
        stats = boundedness_probe(cocycle, n, grid)
        rows.append({
            "lambda": lam,
            "alpha": float(alpha),
            "E_re": complex(E).real,
            "E_im": complex(E).imag,
            "n": n,
            "lyap": stats.lyap,
            "rotation": stats.rotation,
            "sup_norm": stats.sup_norm,
        })
    return rows


class LyapunovSweep:

    def __init__(self, lam: float, alpha: Frequency, n: int = 20_000, grid: int = 32,
                 threads: int = 1, chunk_size: int = 4):
        self.lam = lam
        self.alpha = alpha
        self.n = n
        self.grid = grid
        self.runner = ChunkedRunner(
            partial(_sweep_chunk, lam=lam, alpha=alpha, n=n, grid=grid), threads, chunk_size
        )

    def run(self, energies: Sequence[complex]) -> pd.DataFrame:
        logger.info(f"Lyapunov sweep over {len(energies)} energies, lambda={self.lam}, n={self.n}")
        rows = self.runner.run(list(energies))

        failed = sum(1 for row in rows if row is None)
        if failed:
            logger.warning(f"{failed} energies failed and are reported as NaN rows")
        filled = [row if row is not None else _failed_row(self, E) for row, E in zip(rows, energies)]

        return pd.DataFrame(filled, columns=SWEEP_COLUMNS)


def _failed_row(sweep: LyapunovSweep, E: complex) -> dict:
    nan = float("nan")
    return {"lambda": sweep.lam, "alpha": float(sweep.alpha), "E_re": complex(E).real,
            "E_im": complex(E).imag, "n": sweep.n, "lyap": nan, "rotation": nan, "sup_norm": nan}


def lyapunov_sweep(lam: float, alpha: Frequency, energies: Sequence[complex], n: int = 20_000,
                   grid: int = 32, threads: int = 1, chunk_size: int = 4) -> pd.DataFrame:
    sweep = LyapunovSweep(lam, alpha, n, grid, threads, chunk_size)
    return sweep.run(energies)
