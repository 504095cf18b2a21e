"""Numpy sieves: smallest prime factor, Piltz divisor counts, Moebius, primes.

Tables are indexed directly by n; index 0 is unused and holds 0.
"""

from __future__ import annotations

import os
import struct
from dataclasses import dataclass
from math import comb, isqrt
from pathlib import Path

import numpy as np

from .arith import factorize

MAX_SIEVE = 10**8
_MAGIC = b"ODFK"
_VERSION = 1
_HEADER = struct.Struct("<4sIIQ")


def _check_limit(limit: int) -> None:
    if limit < 1:
        raise ValueError(f"sieve limit must be >= 1, got {limit}")
    if limit > MAX_SIEVE:
        raise MemoryError(f"sieve limit {limit} exceeds the allocation guard {MAX_SIEVE}")


def spf_sieve(limit: int) -> np.ndarray:
    _check_limit(limit)
    spf = np.zeros(limit + 1, dtype=np.int64)
    spf[1] = 1
    for p in range(2, isqrt(limit) + 1):
        if spf[p] == 0:
            block = spf[p * p :: p]
            block[block == 0] = p
            spf[p] = p
    rest = np.flatnonzero(spf == 0)
    spf[rest[rest >= 2]] = rest[rest >= 2]
    return spf


def prime_mask(limit: int) -> np.ndarray:
    _check_limit(limit)
    mask = np.ones(limit + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, isqrt(limit) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    return mask


def mobius_sieve(limit: int) -> np.ndarray:
    _check_limit(limit)
    mu = np.ones(limit + 1, dtype=np.int64)
    mu[0] = 0
    for p in np.flatnonzero(prime_mask(limit)):
        p = int(p)
        mu[p::p] *= -1
        if p * p <= limit:
            mu[p * p :: p * p] = 0
    return mu


def dirichlet_times_one(a: np.ndarray) -> np.ndarray:
    """Dirichlet convolution of ``a`` with the constant 1, truncated to len(a) - 1.

    Pairs (i, m) with i * m = n are split at sqrt(N) so only O(sqrt N)
    vectorised slice updates are needed.
    """
    n_max = len(a) - 1
    out = np.zeros_like(a)
    s = isqrt(n_max)
    for i in range(1, s + 1):
        q = n_max // i
        out[i : i * q + 1 : i] += a[1 : q + 1]
    # remaining pairs have i > s, hence m <= n_max // (s + 1)
    for m in range(1, n_max // (s + 1) + 1):
        hi = n_max // m
        if hi > s:
            out[m * (s + 1) : m * hi + 1 : m] += a[m]
    return out


def divisor_count_sieve(limit: int, k: int, dtype=np.int64) -> np.ndarray:
    """Table of d_k(n) for 0 <= n <= limit (entry 0 is 0)."""
    _check_limit(limit)
    if k < 0:
        raise ValueError("k must be nonnegative")
    d = np.zeros(limit + 1, dtype=dtype)
    if k == 0:
        d[1] = 1
        return d
    d[1:] = 1
    for _ in range(k - 1):
        d = dirichlet_times_one(d)
    return d


@dataclass(frozen=True)
class SieveTables:
    limit: int
    spf: np.ndarray
    k: int | None = None
    divisor_counts: np.ndarray | None = None

    @classmethod
    def build(cls, limit: int, k: int | None = None) -> "SieveTables":
        spf = spf_sieve(limit)
        counts = divisor_count_sieve(limit, k) if k is not None else None
        return cls(limit, spf, k, counts)

    def factor(self, n: int) -> list[tuple[int, int]]:
        out: list[tuple[int, int]] = []
        while n > 1:
            p = int(self.spf[n])
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        return out

    def verify_samples(self, indices) -> bool:
        """Check spf minimality and d_k(n) against the product formula on sampled n."""
        for n in indices:
            n = int(n)
            if n < 2 or n > self.limit:
                continue
            p = int(self.spf[n])
            if n % p or factorize(n).factors[0][0] != p:
                return False
            if self.divisor_counts is not None:
                want = 1
                for _, e in factorize(n).factors:
                    want *= comb(e + self.k - 1, e)
                if int(self.divisor_counts[n]) != want:
                    return False
        return True


def summatory_table(values: np.ndarray) -> np.ndarray:
    """Prefix sums: out[x] = sum of values[1..x]."""
    return np.cumsum(values, dtype=np.int64)


def save_table(path: str | os.PathLike, k: int, table: np.ndarray) -> None:
    """Write a 64-bit table with a (magic, version, k, limit) header."""
    limit = len(table) - 1
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(_MAGIC, _VERSION, k, limit))
        fh.write(np.ascontiguousarray(table, dtype="<i8").tobytes())


def load_table(path: str | os.PathLike) -> tuple[int, np.ndarray]:
    with open(path, "rb") as fh:
        raw = fh.read(_HEADER.size)
        if len(raw) != _HEADER.size:
            raise ValueError(f"{path}: truncated header")
        magic, version, k, limit = _HEADER.unpack(raw)
        if magic != _MAGIC:
            raise ValueError(f"{path}: bad magic {magic!r}")
        if version != _VERSION:
            raise ValueError(f"{path}: unsupported version {version}")
        table = np.frombuffer(fh.read(), dtype="<i8")
    if len(table) != limit + 1:
        raise ValueError(f"{path}: expected {limit + 1} values, found {len(table)}")
    return k, table.astype(np.int64)


def cached_summatory_divisor_table(limit: int, k: int, cache_dir: str | None = None) -> np.ndarray:
    """D_k(x) for x <= limit, cached on disk under ``cache_dir`` or $FK_CACHE_DIR when set."""
    cache_dir = cache_dir or os.environ.get("FK_CACHE_DIR")
    path = Path(cache_dir) / f"D{k}_{limit}.bin" if cache_dir else None
    if path is not None and path.exists():
        stored_k, table = load_table(path)
        if stored_k == k and len(table) == limit + 1:
            return table
    table = summatory_table(divisor_count_sieve(limit, k))
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        save_table(path, k, table)
    return table
