"""F_{t-j}(x, l) as an exact polynomial in t = floor(log_l x).

Two routes produce the same polynomial: expanding binom(t-j, i) with Stirling
numbers of the first kind (coefficients in k = t - j), and solving the
Vandermonde system lambda = w B at the shifted nodes (coefficients in t).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from .arith import floor_log, format_rat, stirling_first
from .summatory import F_separation

__all__ = [
    "Poly",
    "PolynomialReport",
    "tau",
    "nodes",
    "poly_via_stirling",
    "poly_via_solve",
    "bounds_for_band",
    "solve_rational",
]


@dataclass(frozen=True)
class Poly:
    """Dense polynomial with exact rational coefficients, lowest degree first."""

    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        cs = [Fraction(c) for c in self.coefficients]
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coefficients", tuple(cs) or (Fraction(0),))

    @property
    def degree(self) -> int:
        if len(self.coefficients) == 1 and self.coefficients[0] == 0:
            return -1
        return len(self.coefficients) - 1

    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def shift(self, a) -> "Poly":
        """Return q with q(y) = p(y + a)."""
        out = [Fraction(0)] * len(self.coefficients)
        for m, c in enumerate(self.coefficients):
            for r in range(m + 1):
                out[r] += c * comb(m, r) * Fraction(a) ** (m - r)
        return Poly(tuple(out))

    def __str__(self) -> str:
        terms = []
        for m in range(len(self.coefficients) - 1, -1, -1):
            c = self.coefficients[m]
            if c == 0 and self.degree >= 0:
                continue
            mono = "" if m == 0 else ("t" if m == 1 else f"t^{m}")
            coef = format_rat(abs(c))
            body = coef if not mono else (mono if coef == "1" else f"{coef}*{mono}")
            terms.append(("- " if c < 0 else "+ ") + body)
        s = " ".join(terms) or "0"
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


@dataclass
class PolynomialReport:
    x: int
    l: int
    j: int
    t: int
    tau: int
    nodes_x_i: list[int]
    kappa: list[int] = field(default_factory=list)
    lam: list[int] = field(default_factory=list)
    poly_in_k: Poly | None = None
    poly_in_t: Poly | None = None
    value: int | None = None

    def to_dict(self) -> dict:
        def poly(p):
            return None if p is None else [format_rat(c) for c in p.coefficients]

        return {
            "x": str(self.x),
            "l": self.l,
            "j": self.j,
            "t": self.t,
            "k": self.t - self.j,
            "tau": self.tau,
            "nodes_x_i": [str(v) for v in self.nodes_x_i],
            "kappa": [str(v) for v in self.kappa],
            "lambda": [str(v) for v in self.lam],
            "poly_in_k": poly(self.poly_in_k),
            "poly_in_t": poly(self.poly_in_t),
            "value": None if self.value is None else str(self.value),
        }


def tau(x: int, k: int, l: int) -> int:
    """Index of the last nonvanishing term of sum_i binom(k, i) F_i(x / l^(k-i), l+1).

    That term survives iff (l+1)^i <= floor(x / l^(k-i)); the condition is
    monotone in i, so the largest such i <= k is returned (-1 when none do).
    """
    if l < 2:
        raise ValueError(f"tau needs l >= 2, got {l}")
    if k < 1:
        raise ValueError(f"tau needs k >= 1, got {k}")
    if x < 1:
        raise ValueError("tau needs x >= 1")
    best = -1
    for i in range(k + 1):
        if (l + 1) ** i <= x // l ** (k - i):
            best = i
        else:
            break
    return best


def _setup(x: int, l: int, j: int) -> tuple[int, int]:
    if l < 2:
        raise ValueError(f"polynomial representation needs l >= 2, got {l}")
    if x < 1:
        raise ValueError("x must be >= 1")
    t = floor_log(x, l)
    if j < 0 or j > t - 1:
        raise ValueError(f"j must satisfy 0 <= j <= t - 1 = {t - 1}, got {j}")
    return t, tau(x, t - j, l)


def nodes(x: int, l: int, j: int, tau_: int) -> list[int]:
    """floor(x_i) = floor(x / l^(t-j-i)) for i = 0..tau."""
    t = floor_log(x, l)
    if j > t - 1:
        raise ValueError(f"j must be <= t - 1 = {t - 1}")
    return [x // l ** (t - j - i) for i in range(tau_ + 1)]


def poly_via_stirling(x: int, l: int, j: int, memo: dict | None = None) -> PolynomialReport:
    """Coefficients v_m = sum_{i>=m} kappa_i s(i, m) / i! of the polynomial in k = t - j."""
    t, tau_ = _setup(x, l, j)
    xs = nodes(x, l, j, tau_)
    memo = {} if memo is None else memo
    kappa = [F_separation(xi, i, l + 1, "full", memo) for i, xi in enumerate(xs)]
    key = ("v", j, tuple(kappa))
    if key not in memo:
        v = [
            sum((Fraction(kappa[i] * stirling_first(i, m), factorial(i)) for i in range(m, tau_ + 1)), Fraction(0))
            for m in range(tau_ + 1)
        ]
        pk = Poly(tuple(v))
        memo[key] = (pk, pk.shift(-j))
    pk, pt = memo[key]
    value = pk(t - j)
    if value.denominator != 1 or value < 0:
        raise ArithmeticError(f"polynomial value {value} is not a nonnegative integer")
    return PolynomialReport(x, l, j, t, tau_, xs, kappa=kappa, poly_in_k=pk,
                            poly_in_t=pt, value=int(value))


def solve_rational(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Solve A y = b exactly by Gaussian elimination with partial pivoting on |entry|."""
    n = len(rows)
    a = [[Fraction(c) for c in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    for col in range(n):
        piv = max(range(col, n), key=lambda r: abs(a[r][col]))
        if a[piv][col] == 0:
            raise ZeroDivisionError("singular system")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] / p
            if f:
                for c in range(col, n + 1):
                    a[r][c] -= f * a[col][c]
    y = [Fraction(0)] * n
    for r in range(n - 1, -1, -1):
        s = a[r][n] - sum(a[r][c] * y[c] for c in range(r + 1, n))
        y[r] = s / a[r][r]
    return y


def poly_via_solve(x: int, l: int, j: int, memo: dict | None = None) -> PolynomialReport:
    """Coefficients w of the polynomial in t from lambda_i = F_i(x_i, l) = sum_m w_m (i+j)^m."""
    t, tau_ = _setup(x, l, j)
    xs = nodes(x, l, j, tau_)
    memo = {} if memo is None else memo
    lam = [F_separation(xi, i, l, "full", memo) for i, xi in enumerate(xs)]
    # the coefficients depend only on (j, lambda); bands sharing them reuse the solve
    key = ("w", j, tuple(lam))
    if key not in memo:
        # lambda = w B with B[i][m] = (i + j)^m, i.e. solve sum_m (i + j)^m w_m = lambda_i
        system = [[Fraction((i + j) ** m) for m in range(tau_ + 1)] for i in range(tau_ + 1)]
        pt = Poly(tuple(solve_rational(system, [Fraction(v) for v in lam])))
        memo[key] = (pt, pt.shift(j))
    pt, pk = memo[key]
    value = pt(t)
    if value.denominator != 1 or value < 0:
        raise ArithmeticError(f"polynomial value {value} is not a nonnegative integer")
    return PolynomialReport(x, l, j, t, tau_, xs, lam=lam, poly_in_t=pt,
                            poly_in_k=pk, value=int(value))


def bounds_for_band(j: int, l: int = 2) -> tuple[Poly, Poly]:
    """Lower and upper polynomials in t bounding F_{t-j}(n, l) for l^t <= n < l^(t+1).

    F_{t-j} is nondecreasing in n, so the band ends n = l^t and n = l^(t+1) - 1
    give the bounds. Their polynomials do not depend on t once t - j exceeds
    the truncation degree; terms beyond t - j carry binom(t - j, i) = 0, so
    the same polynomials hold for every t >= j + 1.
    """
    if j < 0:
        raise ValueError("j must be >= 0")
    m = j + 1
    while True:
        lo_x, hi_x = l**m, l ** (m + 1) - 1
        if tau(hi_x, m - j, l) < m - j and tau(lo_x, m - j, l) < m - j:
            break
        m += 1
    return poly_via_solve(lo_x, l, j).poly_in_t, poly_via_solve(hi_x, l, j).poly_in_t
