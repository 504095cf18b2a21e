"""Per-integer ordered factorization counts f_k(n, l) and d_k(n).

Every routine returns an exact ``int``. ``oracle_count`` enumerates tuples and
is the reference the other algorithms are checked against.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .arith import PrimeFactorization, factorize, floor_log, iroot

__all__ = [
    "oracle_count",
    "f_recursive",
    "f_macmahon",
    "f_separation",
    "d_k",
    "binomial_transform_d_from_f",
    "inverse_transform_f_from_d",
    "kalmar_f",
    "sen_series_check",
    "dirichlet_power_coefficients",
    "dirichlet_power_check",
    "divisors",
    "f_table",
]

ORACLE_MAX_N = 10**5
ORACLE_MAX_K = 12


def _check(n: int, k: int, l: int) -> None:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    if l < 1:
        raise ValueError(f"l must be >= 1, got {l}")


def _trial_divisors(n: int) -> list[int]:
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def oracle_count(n: int, k: int, l: int) -> int:
    """Count ordered k-tuples of factors >= l with product n by exhaustive enumeration.

    Deliberately independent of the factorization code: divisors come from
    trial division and every tuple is visited.
    """
    _check(n, k, l)
    if n > ORACLE_MAX_N or k > ORACLE_MAX_K:
        raise ValueError(f"oracle_count: (n={n}, k={k}) beyond enumeration guard")
    divs = _trial_divisors(n)

    def walk(rest: int, depth: int) -> int:
        if depth == 0:
            return 1 if rest == 1 else 0
        if depth == 1:
            return 1 if rest >= l else 0
        total = 0
        for d in divs:
            if d > rest:
                break
            if d >= l and rest % d == 0:
                total += walk(rest // d, depth - 1)
        return total

    return walk(n, k)


def divisors(n: int) -> list[int]:
    """Sorted divisors of n from its prime factorization."""
    out = [1]
    for p, e in factorize(n).factors:
        out = [d * p**a for d in out for a in range(e + 1)]
    out.sort()
    return out


def f_recursive(n: int, k: int, l: int, memo: dict | None = None) -> int:
    """f_k(n, l) = sum over divisors i >= l of f_{k-1}(n / i, l)."""
    _check(n, k, l)
    if memo is None:
        memo = {}

    def go(m: int, kk: int) -> int:
        if kk == 0:
            return 1 if m == 1 else 0
        if kk == 1:
            return 1 if m >= l else 0
        key = (m, kk, l)
        hit = memo.get(key)
        if hit is not None:
            return hit
        total = 0
        for i in divisors(m):
            if i >= l:
                total += go(m // i, kk - 1)
        memo[key] = total
        return total

    return go(n, k)


def f_macmahon(pf: PrimeFactorization, k: int) -> int:
    """MacMahon's closed form for f_k(n) = f_k(n, 2)."""
    if k < 0:
        raise ValueError("k must be >= 0")
    if k == 0:
        return 1 if not pf.factors else 0
    if k > pf.big_omega:
        return 0
    total = 0
    for i in range(k):
        term = comb(k, i)
        for e in pf.exponents:
            term *= comb(e + k - i - 1, e)
        total += -term if i % 2 else term
    if total < 0:
        raise ArithmeticError(f"negative MacMahon sum {total}")
    return total


def f_separation(n: int, k: int, l: int, variant: str = "single", memo: dict | None = None) -> int:
    """f_k(n, l) by separating the factors equal to the smallest admissible value.

    ``variant="single"`` peels one value of l at a time,
        f_k(n, l) = sum_{i: l^i | n} binom(k, i) f_{k-i}(n / l^i, l + 1);
    ``variant="full"`` sums the peeled terms over every m from l up to n^(1/k).
    """
    _check(n, k, l)
    if variant not in ("single", "full"):
        raise ValueError(f"unknown variant {variant!r}")
    if memo is None:
        memo = {}
    go = _sep_single if variant == "single" else _sep_full
    return go(n, k, l, memo)


def _sep_terms(n: int, k: int, m: int, memo: dict, go) -> int:
    # sum_{i >= 1, m^i | n} binom(k, i) f_{k-i}(n / m^i, m + 1)
    total = 0
    q = n
    for i in range(1, k + 1):
        if q % m:
            break
        q //= m
        total += comb(k, i) * go(q, k - i, m + 1, memo)
    return total


def _sep_base(n: int, k: int, l: int) -> int | None:
    if k == 0:
        return 1 if n == 1 else 0
    if k == 1:
        return 1 if n >= l else 0
    if l**k > n:
        return 0
    return None


def _sep_single(n: int, k: int, l: int, memo: dict) -> int:
    base = _sep_base(n, k, l)
    if base is not None:
        return base
    key = ("s", n, k, l)
    if key in memo:
        return memo[key]
    m = l
    if m > 1 and n % m:
        # no factor can equal a non-divisor, so the i = 0 term just moves l on
        m = next((d for d in divisors(n) if d >= l), n + 1)
    if m**k > n:
        total = 0
    else:
        total = _sep_single(n, k, m + 1, memo) + _sep_terms(n, k, m, memo, _sep_single)
    memo[key] = total
    return total


def _sep_full(n: int, k: int, l: int, memo: dict) -> int:
    base = _sep_base(n, k, l)
    if base is not None:
        return base
    key = ("f", n, k, l)
    if key in memo:
        return memo[key]
    total = 0
    for m in range(l, iroot(n, k) + 1):
        if m == 1 or n % m == 0:
            total += _sep_terms(n, k, m, memo, _sep_full)
    memo[key] = total
    return total


def d_k(n: int, k: int) -> int:
    """Piltz divisor function from the prime factorization."""
    _check(n, k, 1)
    if k == 0:
        return 1 if n == 1 else 0
    out = 1
    for _, e in factorize(n).factors:
        out *= comb(e + k - 1, e)
    return out


def _f2(n: int, i: int) -> int:
    return f_macmahon(factorize(n), i)


def binomial_transform_d_from_f(n: int, k: int) -> int:
    """d_k(n) = sum_{i <= log2 n} binom(k, i) f_i(n)."""
    _check(n, k, 1)
    return sum(comb(k, i) * _f2(n, i) for i in range(min(k, floor_log(n, 2)) + 1))


def inverse_transform_f_from_d(n: int, k: int) -> int:
    """f_k(n) = sum_i (-1)^(k-i) binom(k, i) d_i(n)."""
    _check(n, k, 1)
    return sum((-1) ** (k - i) * comb(k, i) * d_k(n, i) for i in range(k + 1))


def kalmar_f(n: int) -> int:
    """Total number of ordered factorizations of n into factors >= 2 (f(1) = 0)."""
    _check(n, 1, 2)
    pf = factorize(n)
    return sum(f_macmahon(pf, k) for k in range(1, pf.big_omega + 1))


def sen_series_check(n: int, u: Fraction | int, tolerance: float = 1e-12, max_terms: int = 10**4):
    """Compare sum_k u^-k d_k(n) with (u/(u-1)) sum_k (u-1)^-k f_k(n).

    The left series is truncated once a geometric bound on its tail drops
    below ``tolerance``. Returns ``(residual, terms_used, rhs)`` with the
    right side exact.
    """
    u = Fraction(u)
    if abs(u) <= 1:
        raise ValueError("sen_series_check requires |u| > 1")
    _check(n, 0, 1)
    pf = factorize(n)
    rhs = u / (u - 1) * sum(Fraction(f_macmahon(pf, k)) / (u - 1) ** k for k in range(pf.big_omega + 1))
    exps = pf.exponents
    lhs = Fraction(0)
    term_scale = Fraction(1)  # u^-k
    for k in range(max_terms + 1):
        if k == 0:
            dk = 1 if n == 1 else 0
        else:
            dk = 1
            for e in exps:
                dk *= comb(e + k - 1, e)
        term = dk * term_scale
        lhs += term
        if k >= 1:
            # d_{k+1}/d_k = prod (1 + e/k) is decreasing in k; bounds the tail ratio
            ratio = 1.0
            for e in exps:
                ratio *= 1.0 + e / k
            ratio /= float(abs(u))
            if ratio < 1.0:
                tail = float(abs(term)) * ratio / (1.0 - ratio)
                if tail < tolerance:
                    return abs(float(lhs - rhs)), k + 1, rhs
        term_scale /= u
    raise ArithmeticError(f"sen_series_check: no convergence within {max_terms} terms")


def dirichlet_power_coefficients(k: int, l: int, limit: int) -> list[int]:
    """Coefficients of zeta_l(s)^k up to n = limit via repeated truncated convolution."""
    if k < 0 or l < 1 or limit < 1:
        raise ValueError("need k >= 0, l >= 1, limit >= 1")
    coeffs = [0] * (limit + 1)
    coeffs[1] = 1
    for _ in range(k):
        nxt = [0] * (limit + 1)
        for m in range(1, limit + 1):
            c = coeffs[m]
            if c:
                for n in range(m * l, limit + 1, m):
                    nxt[n] += c
        coeffs = nxt
    return coeffs


def dirichlet_power_check(k: int, l: int, limit: int) -> bool:
    if limit > 10**4:
        raise ValueError("dirichlet_power_check: limit must be <= 10^4")
    coeffs = dirichlet_power_coefficients(k, l, limit)
    memo: dict = {}
    return all(coeffs[n] == f_recursive(n, k, l, memo) for n in range(1, limit + 1))


def f_table(limit: int, k: int, l: int) -> list[int]:
    """List of f_k(n, l) for 0 <= n <= limit (entry 0 is 0)."""
    return dirichlet_power_coefficients(k, l, max(limit, 1))[: limit + 1] if limit >= 1 else [0]
