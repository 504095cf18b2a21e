"""Summatory functions F_k(x, l) = sum_{n <= x} f_k(n, l) and D_k(x).

F_k depends on a real threshold x only through floor(x), so every routine
floors its argument first and then works with exact integers.
"""

from __future__ import annotations

import math
from fractions import Fraction
from math import comb, isqrt

import numpy as np

from . import sieve
from .arith import floor_log, iroot
from .counts import dirichlet_power_coefficients

__all__ = [
    "F_naive",
    "F_separation",
    "F_hyperbola",
    "F_doubling",
    "F2_closed",
    "D_k_sieve",
    "D_from_F",
    "F_from_D",
    "F_value",
]

NAIVE_MAX_X = 10**12


def _floor(x) -> int:
    if isinstance(x, int):
        n = x
    elif isinstance(x, Fraction):
        n = x.numerator // x.denominator
    else:
        n = math.floor(x)
    if n < 0:
        raise ValueError(f"x must be nonnegative, got {x}")
    return n


def _check(k: int, l: int) -> None:
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    if l < 1:
        raise ValueError(f"l must be >= 1, got {l}")


def _base(y: int, k: int, l: int) -> int | None:
    """Closed-form cases: k <= 1, or the sum is empty because l^k > y."""
    if k == 0:
        return 1 if y >= 1 else 0
    if k == 1:
        return max(0, y - l + 1)
    if y < l**k:
        return 0
    return None


def F_naive(x, k: int, l: int, memo: dict | None = None) -> int:
    """F_k(x, l) = sum_{i=l}^{x} F_{k-1}(x / i, l), grouping runs of equal floor(x / i)."""
    _check(k, l)
    x = _floor(x)
    if x > NAIVE_MAX_X:
        raise ValueError(f"F_naive: x = {x} exceeds the recursion budget {NAIVE_MAX_X}")
    if memo is None:
        memo = {}

    def go(y: int, kk: int) -> int:
        base = _base(y, kk, l)
        if base is not None:
            return base
        key = (y, kk, l)
        hit = memo.get(key)
        if hit is not None:
            return hit
        total = 0
        i = l
        # beyond y // l^(kk-1) the inner term vanishes
        hi = y // l ** (kk - 1)
        while i <= hi:
            q = y // i
            j = min(y // q, hi)
            total += (j - i + 1) * go(q, kk - 1)
            i = j + 1
        memo[key] = total
        return total

    return go(x, k)


def F_separation(x, k: int, l: int, variant: str = "single", memo: dict | None = None) -> int:
    """F_k(x, l) by separating the factors equal to the smallest admissible value.

    ``"single"`` applies F_k(x, l) = F_k(x, l+1) + sum_{i>=1} binom(k, i) F_{k-i}(x / l^i, l+1)
    level by level from m = x^(1/k) down to l, resuming from the nearest stored level above l.
    ``"full"`` sums the same peeled terms directly over m = l .. x^(1/k).
    """
    _check(k, l)
    if variant not in ("single", "full"):
        raise ValueError(f"unknown variant {variant!r}")
    x = _floor(x)
    if memo is None:
        memo = {}
    return (_sepF_single if variant == "single" else _sepF_full)(x, k, l, memo)


def _peel(y: int, k: int, m: int, memo: dict, go) -> int:
    total = 0
    q = y
    for i in range(1, k + 1):
        q //= m
        if q == 0:
            break
        total += comb(k, i) * go(q, k - i, m + 1, memo)
    return total


def _sepF_single(y: int, k: int, l: int, memo: dict) -> int:
    base = _base(y, k, l)
    if base is not None:
        return base
    key = ("s", y, k, l)
    hit = memo.get(key)
    if hit is not None:
        return hit
    top = iroot(y, k)
    # walk the i = 0 chain upwards from its vanishing end, reusing stored levels
    m = l
    while m < top and ("s", y, k, m + 1) not in memo:
        m += 1
    acc = memo.get(("s", y, k, m + 1), 0) if m < top else 0
    while m >= l:
        acc += _peel(y, k, m, memo, _sepF_single)
        m -= 1
    # only the requested level is kept; storing every level costs memory of order x^(2/3)
    memo[key] = acc
    return acc


def _sepF_full(y: int, k: int, l: int, memo: dict) -> int:
    base = _base(y, k, l)
    if base is not None:
        return base
    key = ("f", y, k, l)
    hit = memo.get(key)
    if hit is not None:
        return hit
    total = 0
    for m in range(l, iroot(y, k) + 1):
        total += _peel(y, k, m, memo, _sepF_full)
    memo[key] = total
    return total


class _CountTables:
    """Growable tables of f_j(n, l) for the short sums of the hyperbola method."""

    def __init__(self, l: int):
        self.l = l
        self.size = 0
        self.tables: dict[int, list[int]] = {}

    def get(self, j: int, n: int) -> int:
        if n > self.size or j not in self.tables:
            self._grow(max(n, 2 * self.size), max([j, *self.tables]))
        return self.tables[j][n]

    def _grow(self, size: int, max_j: int) -> None:
        self.size = max(size, 16)
        self.tables = {j: dirichlet_power_coefficients(j, self.l, self.size) for j in range(max_j + 1)}


def F_hyperbola(x, k: int, l: int, split_j: int | None = None, u: int | None = None,
                memo: dict | None = None, tables: _CountTables | None = None) -> int:
    """Dirichlet hyperbola evaluation of F_k(x, l) with f_k = f_{k-j} * f_j.

    ``u`` defaults to floor(x^(j/k)); any 1 <= u <= x is valid since
    v = x / u only enters through floor(x / u). Inner F values use the
    default split recursively.
    """
    _check(k, l)
    x = _floor(x)
    if k >= 2:
        j = split_j if split_j is not None else k // 2
        if not 1 <= j <= k - 1:
            raise ValueError(f"split_j must lie in [1, {k - 1}], got {split_j}")
    elif split_j is not None:
        raise ValueError("hyperbola split needs k >= 2")
    if memo is None:
        memo = {}
    if tables is None:
        tables = _CountTables(l)

    def F(y: int, kk: int) -> int:
        base = _base(y, kk, l)
        if base is not None:
            return base
        key = (y, kk)
        hit = memo.get(key)
        if hit is None:
            hit = _hyper(y, kk, kk // 2, None)
            memo[key] = hit
        return hit

    def _hyper(y: int, kk: int, j: int, uu: int | None) -> int:
        if uu is None:
            uu = max(1, iroot(y**j, kk))
        elif not 1 <= uu <= max(y, 1):
            raise ValueError(f"u must lie in [1, x], got {uu}")
        vv = y // uu
        a = sum(F(y // i, kk - j) * tables.get(j, i) for i in range(l, uu + 1))
        b = sum(F(y // i, j) * tables.get(kk - j, i) for i in range(l, vv + 1))
        return a + b - F(uu, j) * F(vv, kk - j)

    base = _base(x, k, l)
    if base is not None:
        return base
    return _hyper(x, k, j, u)


def F_doubling(x, k: int, l: int, memo: dict | None = None) -> int:
    """F_k(x, l) for even k from the half order h = k/2.

    F_{2h}(x) = 2 sum_{i <= sqrt x} F_h(x / i) f_h(i) - F_h(floor(sqrt x))^2;
    the F_h values come from the separation recursion.
    """
    _check(k, l)
    if k % 2:
        raise ValueError(f"F_doubling needs even k, got {k}")
    x = _floor(x)
    if k == 0:
        return 1 if x >= 1 else 0
    h = k // 2
    if memo is None:
        memo = {}
    s = isqrt(x)
    f_h = dirichlet_power_coefficients(h, l, max(s, 1))
    total = 0
    for i in range(l, s + 1):
        if f_h[i]:
            total += F_separation(x // i, h, l, "full", memo) * f_h[i]
    return 2 * total - F_separation(s, h, l, "full", memo) ** 2


def F2_closed(x, l: int, paper_literal: bool = False) -> int:
    """F_2(x, l) = 2 sum_{i=l}^{s} (floor(x/i) - l + 1) - (s - l + 1)^2 with s = floor(sqrt x).

    With ``paper_literal`` the compact relation
    2 sum_{i=1}^{s} floor(x/i) - s^2 + (l-1)^2 is returned instead; it only
    agrees with F_2 for l = 1.
    """
    _check(2, l)
    x = _floor(x)
    s = isqrt(x)
    if paper_literal:
        return 2 * _sum_floor(x, 1, s) - s * s + (l - 1) ** 2
    if s < l:
        return 0
    return 2 * (_sum_floor(x, l, s) - (s - l + 1) * (l - 1)) - (s - l + 1) ** 2


def _sum_floor(x: int, lo: int, hi: int) -> int:
    return sum(x // i for i in range(lo, hi + 1))


def D_k_sieve(limit: int, k: int) -> np.ndarray:
    """Table D_k(x) for 0 <= x <= limit from a divisor-count sieve."""
    if k < 0:
        raise ValueError("k must be >= 0")
    return sieve.summatory_table(sieve.divisor_count_sieve(limit, k))


def D_from_F(x, k: int, memo: dict | None = None) -> int:
    """D_k(x) = sum_{i <= log2 x} binom(k, i) F_i(x)."""
    x = _floor(x)
    if x < 1:
        return 0
    memo = {} if memo is None else memo
    return sum(comb(k, i) * F_separation(x, i, 2, "full", memo) for i in range(min(k, floor_log(x, 2)) + 1))


def F_from_D(k: int, D_values) -> int:
    """F_k(x) = sum_i (-1)^(k-i) binom(k, i) D_i(x), given D_0(x) .. D_k(x)."""
    return sum((-1) ** (k - i) * comb(k, i) * int(D_values[i]) for i in range(k + 1))


def F_value(x, k: int, l: int, algorithm: str = "separation", split_j: int | None = None) -> int:
    """Dispatch by algorithm name: naive, separation, separation-full, hyperbola, doubling, closed."""
    if algorithm == "naive":
        return F_naive(x, k, l)
    if algorithm in ("separation", "separation-single"):
        return F_separation(x, k, l, "single")
    if algorithm == "separation-full":
        return F_separation(x, k, l, "full")
    if algorithm == "hyperbola":
        if k < 2:
            return F_naive(x, k, l)
        return F_hyperbola(x, k, l, split_j)
    if algorithm == "doubling":
        return F_doubling(x, k, l)
    if algorithm == "closed":
        if k != 2:
            raise ValueError("closed form is only available for k = 2")
        return F2_closed(x, l)
    raise ValueError(f"unknown algorithm {algorithm!r}")
