"""Hofstadter butterfly rows: every band of every coprime p/q up to qmax."""

import logging
import math
from functools import partial
from typing import List, NamedTuple, Sequence, Tuple, Union

import pandas as pd

from amolab.periodic.bands import bands
from amolab.utils.batching import ChunkedRunner
from amolab.utils.errors import BandResolutionFailure

logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')
logger = logging.getLogger(__name__)

BUTTERFLY_COLUMNS = ["p", "q", "band", "E_lo", "E_hi"]


class PairFailure(NamedTuple):
    p: int
    q: int
    reason: str


def coprime_pairs(qmax: int) -> List[Tuple[int, int]]:
    pairs = []
    for q in range(1, qmax + 1):
        for p in range(q):
            if math.gcd(p, q) == 1:
                pairs.append((p, q))
    return pairs


def _butterfly_chunk(pairs: Sequence[Tuple[int, int]], lam: float,
                     theta: float) -> List[Union[List[dict], PairFailure]]:
    rows = []
    for p, q in pairs:
        try:
            spectrum = bands(lam, (p, q), theta)
        except BandResolutionFailure as e:
            logger.error(f"Bands for {p}/{q} at lambda={lam} failed: {e}")
            rows.append(PairFailure(p, q, str(e)))
            continue
        rows.append([
            {"p": p, "q": q, "band": k, "E_lo": band.lo, "E_hi": band.hi}
            for k, band in enumerate(spectrum.bands, start=1)
        ])
    return rows


def butterfly(lam: float, qmax: int, theta: float = 0.0, threads: int = 1,
              chunk_size: int = 16) -> pd.DataFrame:
    """One row per band; raises BandResolutionFailure naming every p/q that failed."""
    if qmax < 1:
        raise ValueError(f"qmax must be at least 1, got {qmax}")

    pairs = coprime_pairs(qmax)
    runner = ChunkedRunner(partial(_butterfly_chunk, lam=lam, theta=theta), threads, chunk_size,
                           reraise=True)
    per_pair = runner.run(pairs)

    failures = [result for result in per_pair if isinstance(result, PairFailure)]
    if failures:
        named = ", ".join(f"{f.p}/{f.q}" for f in failures[:10])
        more = f" and {len(failures) - 10} more" if len(failures) > 10 else ""
        raise BandResolutionFailure(
            f"bands failed for {len(failures)} of {len(pairs)} frequencies: {named}{more}; "
            f"first reason: {failures[0].reason}"
        )

    rows = [row for pair_rows in per_pair for row in pair_rows]
    frame = pd.DataFrame(rows, columns=BUTTERFLY_COLUMNS)
    return frame.sort_values(["q", "p", "band"], kind="stable").reset_index(drop=True)
