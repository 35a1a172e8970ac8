"""
Variable Chunking
Splits per-variable work across workers and accounts parallel time
"""

import time
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional

import numpy as np

from app.core.exceptions import ValidationException
from app.utils.algorithm_constants import SpeedupMode


class VariableChunker:
    """
    Runs a slice-wise function over D variables in `workers` contiguous chunks

    SIMULATED mode runs the chunks inline and counts only the slowest one
    towards parallel time; THREADS mode dispatches them to a thread pool.
    Elementwise work gives identical results either way.
    """

    def __init__(self, dimension: int, workers: int = 1, mode: SpeedupMode = SpeedupMode.SIMULATED):
        if workers < 1:
            raise ValidationException(f"workers must be >= 1, got {workers}")
        self.dimension = dimension
        self.workers = workers
        self.mode = SpeedupMode(mode)
        bounds = np.array_split(np.arange(dimension), min(workers, dimension))
        self.slices: List[slice] = [slice(int(b[0]), int(b[-1]) + 1) for b in bounds if len(b)]
        self._pool: Optional[ThreadPoolExecutor] = None
        if self.mode == SpeedupMode.THREADS and len(self.slices) > 1:
            self._pool = ThreadPoolExecutor(max_workers=len(self.slices))
        self.chunk_time = 0.0  # Sum of chunk times
        self.critical_time = 0.0  # Slowest chunk per call, summed

    def run(self, fn: Callable[[slice], None]) -> None:
        if self._pool is not None:
            start = time.perf_counter()
            list(self._pool.map(fn, self.slices))
            elapsed = time.perf_counter() - start
            self.chunk_time += elapsed
            self.critical_time += elapsed
            return

        times = []
        for chunk in self.slices:
            start = time.perf_counter()
            fn(chunk)
            times.append(time.perf_counter() - start)
        self.chunk_time += sum(times)
        self.critical_time += max(times)

    def parallel_time(self, wall_time: float) -> float:
        """Wall time with the chunked work replaced by its critical path"""
        return max(0.0, wall_time - self.chunk_time + self.critical_time)

    def close(self) -> None:
        if self._pool is not None:
            self._pool.shutdown(wait=True)
            self._pool = None

    def __enter__(self) -> "VariableChunker":
        return self

    def __exit__(self, *exc) -> None:
        self.close()
