"""Exact arithmetic helpers: integer roots and logs, factorization, Stirling numbers.

Big naturals are plain Python ``int`` and exact rationals are
``fractions.Fraction``; both are immutable and always canonical.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, isqrt, prod

from sympy import factorint

__all__ = [
    "PrimeFactorization",
    "StirlingTable",
    "factorize",
    "floor_log",
    "iroot",
    "parse_bignat",
    "stirling_first",
    "binomial_from_stirling",
    "format_rat",
    "parse_rat",
    "binom",
]

MAX_FACTORIZE = 2**64 - 1


@dataclass(frozen=True)
class PrimeFactorization:
    """Exponent vector of a positive integer, primes strictly increasing."""

    factors: tuple[tuple[int, int], ...]

    @property
    def value(self) -> int:
        return prod(p**e for p, e in self.factors)

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(e for _, e in self.factors)

    @property
    def omega(self) -> int:
        return len(self.factors)

    @property
    def big_omega(self) -> int:
        return sum(e for _, e in self.factors)


@lru_cache(maxsize=1 << 16)
def factorize(n: int) -> PrimeFactorization:
    if n < 1:
        raise ValueError(f"factorize: n must be >= 1, got {n}")
    if n > MAX_FACTORIZE:
        raise ValueError(f"factorize: n = {n} exceeds the 64-bit range")
    return PrimeFactorization(tuple(sorted(factorint(n).items())))


def floor_log(x: int, l: int) -> int:
    """Largest t with l**t <= x, by exact integer comparison."""
    if l < 2:
        raise ValueError(f"floor_log: base must be >= 2, got {l}")
    if x < 1:
        raise ValueError(f"floor_log: x must be >= 1, got {x}")
    if l & (l - 1) == 0:
        return (x.bit_length() - 1) // (l.bit_length() - 1)
    # bit lengths bracket the answer within one or two steps
    t = max(0, (x.bit_length() - 1) // l.bit_length())
    p = l**t
    while p * l <= x:
        p *= l
        t += 1
    while p > x:
        p //= l
        t -= 1
    return t


def iroot(x: int, k: int) -> int:
    """Largest m >= 0 with m**k <= x."""
    if k < 1:
        raise ValueError(f"iroot: k must be >= 1, got {k}")
    if x < 0:
        raise ValueError("iroot: x must be nonnegative")
    if k == 1 or x < 2:
        return x
    if k == 2:
        return isqrt(x)
    if k >= x.bit_length():
        return 1
    # integer Newton iteration from above
    m = 1 << -(-x.bit_length() // k)
    while True:
        y = ((k - 1) * m + x // m ** (k - 1)) // k
        if y >= m:
            return m
        m = y


def parse_bignat(text: str) -> int:
    """Parse ``"12345"`` or ``"a^b"`` (also ``a**b``) into a nonnegative int."""
    s = text.strip().replace("_", "").replace(",", "")
    for sep in ("**", "^"):
        if sep in s:
            base, exp = s.split(sep, 1)
            value = int(base) ** int(exp)
            break
    else:
        value = int(s)
    if value < 0:
        raise ValueError(f"expected a nonnegative integer, got {text!r}")
    return value


def format_rat(q: Fraction | int) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_rat(text: str) -> Fraction:
    return Fraction(text)


class StirlingTable:
    """Signed Stirling numbers of the first kind s(k, i) for 0 <= i <= k <= max_k."""

    def __init__(self, max_k: int):
        if max_k < 0:
            raise ValueError("max_k must be nonnegative")
        self.max_k = max_k
        rows = [[1]]
        for k in range(max_k):
            prev = rows[-1]
            row = [0] * (k + 2)
            for i in range(1, k + 2):
                # s(k+1, i) = s(k, i-1) - k s(k, i)
                row[i] = prev[i - 1] - (k * prev[i] if i <= k else 0)
            rows.append(row)
        self.values = tuple(tuple(r) for r in rows)

    def __call__(self, k: int, i: int) -> int:
        if not (0 <= i <= k <= self.max_k):
            raise IndexError(f"s({k}, {i}) outside table of size {self.max_k}")
        return self.values[k][i]


_stirling = StirlingTable(64)


def stirling_first(k: int, i: int) -> int:
    global _stirling
    if k < 0 or i < 0 or i > k:
        raise IndexError(f"s({k}, {i}) requires 0 <= i <= k")
    if k > _stirling.max_k:
        _stirling = StirlingTable(max(k, 2 * _stirling.max_k))
    return _stirling(k, i)


def binomial_from_stirling(n: int, k: int) -> Fraction:
    """binom(n, k) expanded as sum_i n**i s(k, i) / k!."""
    return Fraction(sum(n**i * stirling_first(k, i) for i in range(k + 1)), factorial(k))


def binom(n: int, k: int) -> int:
    return comb(n, k) if 0 <= k <= n else 0
