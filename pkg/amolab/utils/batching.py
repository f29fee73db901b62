"""Chunked, order-preserving parallel evaluation of parameter sweeps."""

import logging
from multiprocessing import Pool
from typing import Any, Callable, List, Sequence, Tuple

logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')
logger = logging.getLogger(__name__)


class ChunkedRunner:

    def __init__(self, worker: Callable[[Sequence[Any]], List[Any]], threads: int = 1,
                 chunk_size: int = 8, reraise: bool = False):
        if threads < 1:
            raise ValueError(f"threads must be at least 1, got {threads}")
        if chunk_size < 1:
            raise ValueError(f"chunk_size must be at least 1, got {chunk_size}")
        self.worker = worker
        self.threads = threads
        self.chunk_size = chunk_size
        self.reraise = reraise

    def run(self, items: Sequence[Any]) -> List[Any]:
        chunk_ranges = self._calculate_chunk_ranges(len(items), self.chunk_size)
        chunks = [list(items[start:end]) for start, end in chunk_ranges]
        chunk_count = len(chunks)

        logger.info(f"Evaluating {len(items)} items in {chunk_count} chunks on {self.threads} workers")

        if self.threads == 1 or chunk_count <= 1:
            chunk_results = [self._guarded(i, chunk, chunk_count) for i, chunk in enumerate(chunks)]
        else:
            with Pool(min(self.threads, chunk_count)) as pool:
                # map keeps chunk order, so the merge is independent of the worker count
                chunk_results = pool.starmap(
                    self._guarded, [(i, chunk, chunk_count) for i, chunk in enumerate(chunks)]
                )

        merged = []
        for result in chunk_results:
            merged.extend(result)
        return merged

    def _guarded(self, index: int, chunk: List[Any], chunk_count: int) -> List[Any]:
        logger.info(f"Processing chunk {index + 1}/{chunk_count}")
        try:
            return self.worker(chunk)
        except Exception as e:
            logger.error(f"Error in chunk {index + 1}: {str(e)}")
            if self.reraise:
                raise
            return [None] * len(chunk)

    def _calculate_chunk_ranges(self, total: int, chunk_size: int) -> List[Tuple[int, int]]:
        ranges = []
        start = 0
        while start < total:
            end = min(start + chunk_size, total)
            ranges.append((start, end))
            start = end
        return ranges
