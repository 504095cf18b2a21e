"""Cross-algorithm sweeps used by ``selftest`` and the acceptance tests.

Each sweep returns a list of mismatches; an empty list means every algorithm
agreed with the brute-force reference on the whole grid.
"""

from __future__ import annotations

from itertools import accumulate

from .arith import factorize, floor_log
from .counts import (
    d_k,
    dirichlet_power_coefficients,
    f_macmahon,
    f_recursive,
    f_separation,
    inverse_transform_f_from_d,
    oracle_count,
)
from .polyfit import poly_via_solve, poly_via_stirling
from .summatory import F2_closed, F_doubling, F_hyperbola, F_naive, F_separation, _CountTables


def count_grid(n_max: int, k_max: int, ls=(1, 2, 3)) -> list[tuple]:
    """f_k(n, l) by every per-integer algorithm against tuple enumeration."""
    bad = []
    for l in ls:
        memos = {"recursive": {}, "single": {}, "full": {}}
        for k in range(k_max + 1):
            conv = dirichlet_power_coefficients(k, l, n_max)
            for n in range(1, n_max + 1):
                want = oracle_count(n, k, l)
                got = {
                    "recursive": f_recursive(n, k, l, memos["recursive"]),
                    "separation-single": f_separation(n, k, l, "single", memos["single"]),
                    "separation-full": f_separation(n, k, l, "full", memos["full"]),
                    "dirichlet": conv[n],
                }
                if l == 2:
                    got["macmahon"] = f_macmahon(factorize(n), k)
                    got["inverse-transform"] = inverse_transform_f_from_d(n, k)
                if l == 1:
                    got["d_k"] = d_k(n, k)
                for name, v in got.items():
                    if v != want:
                        bad.append((name, n, k, l, v, want))
                # vanishing conditions
                if want and l >= 2 and k >= 2 and (k > floor_log(n, l) or l**k > n):
                    bad.append(("vanishing", n, k, l, want, 0))
                if want and l >= 2 and k > factorize(n).big_omega:
                    bad.append(("vanishing-omega", n, k, l, want, 0))
    return bad


def summatory_grid(x_max: int, k_max: int, ls=(1, 2, 3), splits: str = "default") -> list[tuple]:
    """F_k(x, l) by every summatory algorithm against prefix sums of the enumeration.

    ``splits="all"`` also runs the hyperbola method at every split j.
    """
    bad = []
    for l in ls:
        for k in range(k_max + 1):
            ref = list(accumulate((oracle_count(n, k, l) for n in range(1, x_max + 1)), initial=0))
            memos = {name: {} for name in ("naive", "single", "full", "hyper", "double")}
            hyper_tables = None
            for x in range(1, x_max + 1):
                want = ref[x]
                got = {
                    "naive": F_naive(x, k, l, memos["naive"]),
                    "separation-single": F_separation(x, k, l, "single", memos["single"]),
                    "separation-full": F_separation(x, k, l, "full", memos["full"]),
                }
                if k >= 2:
                    js = range(1, k) if splits == "all" else [k // 2]
                    for j in js:
                        if hyper_tables is None:
                            hyper_tables = _CountTables(l)
                        memo = memos["hyper"] if j == k // 2 else {}
                        got[f"hyperbola-j{j}"] = F_hyperbola(x, k, l, j, memo=memo, tables=hyper_tables)
                if k % 2 == 0:
                    got["doubling"] = F_doubling(x, k, l, memos["double"])
                if k == 2:
                    got["closed"] = F2_closed(x, l)
                for name, v in got.items():
                    if v != want:
                        bad.append((name, x, k, l, v, want))
    return bad


def poly_grid(xs, ls=(2, 3), j_max: int = 3) -> list[tuple]:
    """Stirling and linear-solve routes against each other and against F_separation."""
    bad = []
    memo: dict = {}
    for l in ls:
        for x in xs:
            t = floor_log(x, l)
            for j in range(0, min(j_max, t - 1) + 1):
                a = poly_via_stirling(x, l, j, memo)
                b = poly_via_solve(x, l, j, memo)
                want = F_separation(x, t - j, l, "full", memo)
                if a.poly_in_t != b.poly_in_t or a.poly_in_k != b.poly_in_k:
                    bad.append(("route", x, l, j))
                if a.value != want or b.value != want:
                    bad.append(("value", x, l, j, a.value, b.value, want))
                if b.poly_in_t.degree > a.tau:
                    bad.append(("degree", x, l, j))
    return bad
