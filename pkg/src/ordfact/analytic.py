"""Numerics: zeta and the Kalmar constants, divisor-problem main terms, the F_2
error scan, and the Moebius / Mertens / von Mangoldt / Pi identity checks."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial, lcm

import mpmath
import numpy as np

from . import sieve
from .arith import factorize, floor_log, iroot
from .counts import f_macmahon

__all__ = [
    "EULER_GAMMA",
    "STIELTJES_GAMMA1",
    "zeta",
    "zeta_prime",
    "KalmarConstants",
    "kalmar_constants",
    "MainTermCoefficients",
    "divisor_main_term",
    "f_main_term",
    "fit_divisor_constant",
    "ErrorScanResult",
    "error_scan_F2",
    "write_scan_csv",
    "IdentityReport",
    "identity_suite",
]

# Euler's constant and the first Stieltjes constant, 50 significant digits
# (Laurent expansion zeta(s) = 1/(s-1) + gamma - gamma_1 (s-1) + ...).
EULER_GAMMA = "0.57721566490153286060651209008240243104215933593992"
STIELTJES_GAMMA1 = "-0.072815845483676724860586375874901319137736338334338"

# exponents for documentation only: classical (k-1)/k and conjectured (k-1)/(2k)
DIVISOR_EXPONENT_CLASSICAL = {k: Fraction(k - 1, k) for k in range(1, 4)}
DIVISOR_EXPONENT_CONJECTURED = {k: Fraction(k - 1, 2 * k) for k in range(1, 4)}


def _em_terms(s, n_cut: int, eps, derivative: bool):
    """Euler-Maclaurin correction sum at cut N; stops once the next term is below eps."""
    log_n = mpmath.log(n_cut)
    total = mpmath.mpf(0)
    poch = s  # s (s+1) ... (s + 2j - 2)
    recip = 1 / s  # sum of 1/(s+q) over the same factors, for the derivative
    npow = mpmath.power(n_cut, -s - 1)
    for j in range(1, 400):
        coeff = mpmath.bernoulli(2 * j) / mpmath.factorial(2 * j)
        term = coeff * poch * npow
        if derivative:
            term *= recip - log_n
        if abs(term) < eps:
            return total
        total += term
        poch *= (s + 2 * j - 1) * (s + 2 * j)
        recip += 1 / (s + 2 * j - 1) + 1 / (s + 2 * j)
        npow /= n_cut * n_cut
    raise ArithmeticError("Euler-Maclaurin series did not reach the requested precision")


def _cut(precision: int) -> int:
    return 2 * precision + 10


def zeta(s, precision: int = 30):
    """Riemann zeta for real s > 1 by Euler-Maclaurin summation.

    For real s the remainder after the last included Bernoulli term is
    bounded by the first omitted term, which is kept below 10^-(precision+5).
    """
    with mpmath.workdps(precision + 15):
        s = mpmath.mpf(s)
        if s <= 1:
            raise ValueError(f"zeta: need s > 1, got {s}")
        n_cut = _cut(precision)
        eps = mpmath.mpf(10) ** (-precision - 5)
        head = mpmath.fsum(mpmath.power(n, -s) for n in range(1, n_cut))
        tail = mpmath.power(n_cut, 1 - s) / (s - 1) + mpmath.power(n_cut, -s) / 2
        out = head + tail + _em_terms(s, n_cut, eps, False)
    return +out


def zeta_prime(s, precision: int = 30):
    """Derivative of zeta for real s > 1, differentiating the same expansion term by term."""
    with mpmath.workdps(precision + 15):
        s = mpmath.mpf(s)
        if s <= 1:
            raise ValueError(f"zeta_prime: need s > 1, got {s}")
        n_cut = _cut(precision)
        eps = mpmath.mpf(10) ** (-precision - 8)
        log_n = mpmath.log(n_cut)
        head = -mpmath.fsum(mpmath.log(n) * mpmath.power(n, -s) for n in range(2, n_cut))
        p = mpmath.power(n_cut, 1 - s)
        tail = -p * log_n / (s - 1) - p / (s - 1) ** 2 - log_n * mpmath.power(n_cut, -s) / 2
        out = head + tail + _em_terms(s, n_cut, eps, True)
    return +out


@dataclass(frozen=True)
class KalmarConstants:
    rho: mpmath.mpf
    K: mpmath.mpf
    precision: int
    residual: mpmath.mpf


def kalmar_constants(precision: int = 20) -> KalmarConstants:
    """rho with zeta(rho) = 2 by bisection on (1, 2), and K = -1 / (rho zeta'(rho))."""
    if not 1 <= precision <= 30:
        raise ValueError("precision must be between 1 and 30 digits")
    with mpmath.workdps(precision + 10):
        lo, hi = mpmath.mpf("1.001"), mpmath.mpf(2)
        # zeta(1.001) ~ 1000 > 2 > zeta(2)
        tol = mpmath.mpf(10) ** (-precision - 3)
        while hi - lo > tol:
            mid = (lo + hi) / 2
            if zeta(mid, precision + 5) > 2:
                lo = mid
            else:
                hi = mid
        rho = (lo + hi) / 2
        K = -1 / (rho * zeta_prime(rho, precision + 5))
        residual = abs(zeta(rho, precision + 5) - 2)
    return KalmarConstants(rho, K, precision, residual)


@dataclass(frozen=True)
class MainTermCoefficients:
    """Coefficients of P_k^D (a) and P_k^F (b), lowest power of log x first."""

    k: int
    a: tuple
    b: tuple
    constants_used: dict = field(default_factory=dict)
    note: str = ""

    def leading_exact(self) -> Fraction:
        return Fraction(1, factorial(self.k - 1))

    def evaluate(self, coeffs: str, x: float) -> float:
        t = math.log(x)
        cs = self.a if coeffs == "a" else self.b
        return x * sum(float(c) * t**m for m, c in enumerate(cs))


def _gammas():
    return mpmath.mpf(EULER_GAMMA), mpmath.mpf(STIELTJES_GAMMA1)


def _a_coeffs(k: int) -> tuple:
    g, g1 = _gammas()
    if k == 1:
        return (mpmath.mpf(1),)
    if k == 2:
        return (2 * g - 1, mpmath.mpf(1))
    # residue of zeta(s)^3 x^s / s at s = 1
    return (1 - 3 * g + 3 * g**2 - 3 * g1, 3 * g - 1, mpmath.mpf(1) / 2)


def divisor_main_term(k: int) -> MainTermCoefficients:
    """a_{k,j} with D_k(x) ~ x sum_j a_{k,j} (log x)^j, for k <= 3."""
    if k not in (1, 2, 3):
        raise ValueError(f"main terms are only provided for k in 1..3, got {k}")
    with mpmath.workdps(50):
        a = _a_coeffs(k)
    g, g1 = _gammas()
    return MainTermCoefficients(k, a, f_main_term_b(k), {"gamma": g, "gamma1": g1})


def f_main_term_b(k: int) -> tuple:
    # b_{k,j} = sum_{i=j+1}^{k} (-1)^(k-i) binom(k, i) a_{i,j}
    with mpmath.workdps(50):
        rows = {i: _a_coeffs(i) for i in range(1, k + 1)}
        return tuple(
            mpmath.fsum((-1) ** (k - i) * comb(k, i) * rows[i][j] for i in range(j + 1, k + 1))
            for j in range(k)
        )


def f_main_term(k: int) -> MainTermCoefficients:
    """b_{k,j} with F_k(x) ~ x sum_j b_{k,j} (log x)^j, derived from the a_{i,j}."""
    m = divisor_main_term(k)
    beta = max(DIVISOR_EXPONENT_CLASSICAL[i] for i in range(1, k + 1))
    beta_conj = max(DIVISOR_EXPONENT_CONJECTURED[i] for i in range(1, k + 1))
    note = (f"error exponent beta_k = max_j alpha_j: {beta} with classical alpha_j = (j-1)/j, "
            f"{beta_conj} if alpha_j = (j-1)/(2j) (conjectural); not used in any computation")
    return MainTermCoefficients(k, m.a, m.b, m.constants_used, note)


def fit_divisor_constant(k: int, lo: int, hi: int, table: np.ndarray | None = None) -> float:
    """Least-squares constant c in D_k(x) - x * (known higher terms) ~ c x over lo <= x <= hi."""
    if table is None:
        table = sieve.summatory_table(sieve.divisor_count_sieve(hi, k))
    a = [float(c) for c in divisor_main_term(k).a]
    x = np.arange(lo, hi + 1, dtype=np.float64)
    t = np.log(x)
    known = sum(a[m] * t**m for m in range(1, k))
    r = table[lo : hi + 1].astype(np.float64) - x * known
    return float(np.dot(x, r) / np.dot(x, x))


@dataclass
class ErrorScanResult:
    limit: int
    max_abs_error: float
    argmax_x: int
    F_at_argmax: int
    # same scan on D_2(x) - x (log x + 2 gamma - 1); equals the F_2 error minus 1
    max_abs_error_D: float
    argmax_x_D: int
    D_at_argmax: int
    max_ratio_sqrt: float
    samples: list = field(default_factory=list)


def error_scan_F2(limit: int, chunk: int = 1 << 22, sample_every: int | None = None) -> ErrorScanResult:
    """Scan Delta(x) = F_2(x) - x (log x + 2 gamma - 3) over integers 1 <= x <= limit.

    F_2(x) = D_2(x) - 2x + 1 comes from an exact divisor-count sieve; the
    main term is evaluated in double precision. Chunks are reduced with a
    max that breaks ties toward the smaller x.
    """
    if limit < 1:
        raise ValueError("limit must be >= 1")
    d = sieve.divisor_count_sieve(limit, 2, dtype=np.int32)
    c = 2 * float(mpmath.mpf(EULER_GAMMA)) - 3
    best = (-1.0, 0, 0)
    best_d = (-1.0, 0, 0)
    ratio = 0.0
    samples = []
    carry = 0
    step = sample_every or max(1, limit // 1000)
    for start in range(1, limit + 1, chunk):
        stop = min(limit, start + chunk - 1)
        D = np.cumsum(d[start : stop + 1], dtype=np.int64) + carry
        carry = int(D[-1])
        xs = np.arange(start, stop + 1, dtype=np.int64)
        F = D - 2 * xs + 1
        xf = xs.astype(np.float64)
        main = xf * (np.log(xf) + c)
        delta = F.astype(np.float64) - main
        delta_d = D.astype(np.float64) - (main + 2 * xf)
        i = int(np.argmax(np.abs(delta)))
        if abs(delta[i]) > best[0]:
            best = (float(abs(delta[i])), int(xs[i]), int(F[i]))
        i = int(np.argmax(np.abs(delta_d)))
        if abs(delta_d[i]) > best_d[0]:
            best_d = (float(abs(delta_d[i])), int(xs[i]), int(D[i]))
        big = xs >= 100
        if big.any():
            ratio = max(ratio, float(np.max(np.abs(delta[big]) / np.sqrt(xf[big]))))
        for p in range(((start + step - 1) // step) * step, stop + 1, step):
            q = p - start
            samples.append((p, int(F[q]), float(main[q]), float(delta[q])))
    return ErrorScanResult(limit, best[0], best[1], best[2], best_d[0], best_d[1], best_d[2], ratio, samples)


def write_scan_csv(result: ErrorScanResult, fh) -> None:
    """Columns x, F_2(x), main_term, delta; sampled rows then the argmax row."""
    w = csv.writer(fh)
    w.writerow(["x", "F2", "main_term", "delta", "row"])
    for x, F, main, delta in result.samples:
        w.writerow([x, F, repr(main), repr(delta), "sample"])
    x = result.argmax_x
    c = 2 * float(mpmath.mpf(EULER_GAMMA)) - 3
    main = x * (math.log(x) + c)
    w.writerow([x, result.F_at_argmax, repr(main), repr(result.F_at_argmax - main), "argmax"])


@dataclass
class IdentityReport:
    limit: int
    ok: bool
    counterexample: tuple | None
    mertens_10: int | None
    pi_10: Fraction | None
    checked: dict


def identity_suite(limit: int) -> IdentityReport:
    """Check the four alternating-sum identities for every n, x <= limit in exact arithmetic.

    f_k(n) comes from MacMahon's formula; mu, primes and prime powers come
    from separate numpy sieves.
    """
    if not 1 <= limit <= 10**5:
        raise ValueError("identity_suite: limit must lie in [1, 10^5]")
    kmax = floor_log(limit, 2)
    mu = sieve.mobius_sieve(limit)
    primes = sieve.prime_mask(limit)
    spf = sieve.spf_sieve(limit)
    pi = np.cumsum(primes, dtype=np.int64)
    den = lcm(*range(1, kmax + 2))

    F = [0] * (kmax + 1)  # running F_k(x)
    mertens = 0
    checked = {"mobius": 0, "mertens": 0, "mangoldt": 0, "riemann_pi": 0}
    m10 = pi10 = None

    def fail(name, arg, lhs, rhs):
        return IdentityReport(limit, False, (name, arg, lhs, rhs), m10, pi10, checked)

    for n in range(1, limit + 1):
        pf = factorize(n)
        f = [f_macmahon(pf, k) for k in range(kmax + 1)]
        # mu(n) = sum_k (-1)^k f_k(n)
        lhs = sum((-1) ** k * f[k] for k in range(kmax + 1))
        if lhs != int(mu[n]):
            return fail("mobius", n, lhs, int(mu[n]))
        checked["mobius"] += 1
        # Lambda(n) / log n = 1/m for n = p^m, else 0
        lhs_l = sum(Fraction((-1) ** (k + 1) * f[k], k) for k in range(1, kmax + 1))
        rhs_l = Fraction(0)
        if n > 1:
            p, m, r = int(spf[n]), 0, n
            while r % p == 0:
                r //= p
                m += 1
            if r == 1:
                rhs_l = Fraction(1, m)
        if lhs_l != rhs_l:
            return fail("mangoldt", n, lhs_l, rhs_l)
        checked["mangoldt"] += 1

        for k in range(kmax + 1):
            F[k] += f[k]
        mertens += int(mu[n])
        lhs_m = sum((-1) ** k * F[k] for k in range(kmax + 1))
        if lhs_m != mertens:
            return fail("mertens", n, lhs_m, mertens)
        checked["mertens"] += 1
        # Pi(x) compared after scaling both sides by lcm(1..kmax+1)
        lhs_p = sum((-1) ** (k + 1) * F[k] * (den // k) for k in range(1, kmax + 1))
        rhs_p = sum(int(pi[iroot(n, m)]) * (den // m) for m in range(1, kmax + 1))
        if lhs_p != rhs_p:
            return fail("riemann_pi", n, Fraction(lhs_p, den), Fraction(rhs_p, den))
        checked["riemann_pi"] += 1
        if n == 10:
            m10, pi10 = lhs_m, Fraction(lhs_p, den)
    return IdentityReport(limit, True, None, m10, pi10, checked)
