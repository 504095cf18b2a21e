"""Timing harness comparing the F_k(x, l) algorithms on identical inputs."""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass

from .summatory import NAIVE_MAX_X, F_doubling, F_hyperbola, F_naive, F_separation

log = logging.getLogger(__name__)

ALGORITHMS = ("naive", "separation-single", "separation-full", "hyperbola", "doubling")


@dataclass(frozen=True)
class BenchRecord:
    algorithm: str
    x: int
    k: int
    l: int
    seconds: float
    value: int


def _runner(name: str, x: int, k: int, l: int, split_j: int | None):
    if name == "naive":
        if x > NAIVE_MAX_X:
            return None, f"x > {NAIVE_MAX_X}"
        return (lambda: F_naive(x, k, l)), None
    if name == "separation-single":
        return (lambda: F_separation(x, k, l, "single")), None
    if name == "separation-full":
        return (lambda: F_separation(x, k, l, "full")), None
    if name == "hyperbola":
        if k < 2:
            return None, "needs k >= 2"
        return (lambda: F_hyperbola(x, k, l, split_j)), None
    if name == "doubling":
        if k % 2:
            return None, "needs even k"
        return (lambda: F_doubling(x, k, l)), None
    raise ValueError(f"unknown algorithm {name!r}")


def bench(x_grid, k: int, l: int, split_j: int | None = None, algorithms=ALGORITHMS,
          repeat: int = 1) -> tuple[list[BenchRecord], list[str]]:
    """Time each applicable algorithm at every x; values must all agree.

    Returns the records and a list of notices for skipped algorithms.
    """
    records: list[BenchRecord] = []
    notices: list[str] = []
    for x in x_grid:
        row = []
        for name in algorithms:
            fn, why = _runner(name, x, k, l, split_j)
            if fn is None:
                notices.append(f"skipped {name} at x={x}: {why}")
                continue
            best = float("inf")
            for _ in range(repeat):
                t0 = time.perf_counter()
                value = fn()
                best = min(best, time.perf_counter() - t0)
            row.append(BenchRecord(name, x, k, l, best, value))
        values = {r.value for r in row}
        if len(values) > 1:
            raise AssertionError(f"algorithms disagree at x={x}: " + ", ".join(f"{r.algorithm}={r.value}" for r in row))
        records.extend(row)
    for n in notices:
        log.info(n)
    return records, notices
