from fractions import Fraction as Q

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from ordfact.arith import floor_log
from ordfact.polyfit import (
    Poly,
    bounds_for_band,
    nodes,
    poly_via_solve,
    poly_via_stirling,
    solve_rational,
    tau,
)
from ordfact.summatory import F_separation

X1 = 10**100
KAPPA1 = [1, 16, 36, 32, 15, 1]
LAMBDA1 = [1, 17, 69, 189, 424, 837]
POLY_K1 = [Q(1), Q(307, 60), Q(203, 24), Q(15, 8), Q(13, 24), Q(1, 120)]
VALUE1 = 38535596289


def test_tau_examples():
    assert tau(X1, 329, 2) == 5
    for l in (2, 3, 5):
        for k in (1, 4, 9):
            assert tau(l**k, k, l) == 0
    with pytest.raises(ValueError):
        tau(100, 3, 1)


@pytest.mark.parametrize("x, k, l", [(10**4, 10, 2), (10**4, 12, 2), (10**5, 8, 3), (777, 6, 2)])
def test_tau_is_last_nonvanishing_term(x, k, l):
    nonzero = [i for i in range(k + 1) if F_separation(x // l ** (k - i), i, l + 1) > 0]
    assert tau(x, k, l) == max(nonzero)
    assert nonzero == list(range(max(nonzero) + 1))


def test_nodes_examples():
    assert nodes(X1, 2, 3, 5) == [9, 18, 36, 73, 146, 292]
    assert nodes(2**20, 2, 0, 4) == [1, 2, 4, 8, 16]
    t = floor_log(10**6, 2)
    assert nodes(10**6, 2, 1, 3) == [10**6 // 2 ** (t - 1 - i) for i in range(4)]


def test_example1_stirling_route():
    r = poly_via_stirling(X1, 2, 3)
    assert (r.t, r.tau) == (332, 5)
    assert r.kappa == KAPPA1
    assert list(r.poly_in_k.coefficients) == POLY_K1
    assert r.value == VALUE1


def test_example1_solve_route():
    r = poly_via_solve(X1, 2, 3)
    assert r.lam == LAMBDA1
    w = list(r.poly_in_t.coefficients)
    assert w[0] == 53 and w[2:] == [Q(223, 12), Q(-31, 8), Q(5, 12), Q(1, 120)]
    # the printed -252/15 does not reproduce the stated value; -752/15 does
    assert w[1] == Q(-752, 15)
    assert r.value == VALUE1 == F_separation(X1, 329, 2)


def test_tau_zero_is_constant_one():
    r = poly_via_stirling(2**10, 2, 0)
    assert r.tau == 0 and r.poly_in_k == Poly((Q(1),)) and r.value == 1
    s = poly_via_solve(2**10, 2, 0)
    assert s.poly_in_t.coefficients == (Q(s.lam[0]),)


def test_cross_module_values():
    t = floor_log(10**6, 2)
    assert poly_via_stirling(10**6, 2, 2).value == F_separation(10**6, t - 2, 2)
    a, b = poly_via_stirling(10**5, 3, 1), poly_via_solve(10**5, 3, 1)
    assert a.poly_in_t == b.poly_in_t
    assert a.value == b.value == F_separation(10**5, floor_log(10**5, 3) - 1, 3)


def test_j_range_checked():
    with pytest.raises(ValueError):
        poly_via_solve(1000, 2, 9)


def test_bounds_example2():
    lo, hi = bounds_for_band(0)
    assert lo == Poly((Q(1),)) and hi == Poly((Q(1), Q(1)))
    lo, hi = bounds_for_band(1)
    assert lo == Poly((Q(-1), Q(2)))
    assert hi == Poly((Q(0), Q(-2, 3), Q(3, 2), Q(1, 6)))
    lo, hi = bounds_for_band(2)
    assert lo == Poly((Q(3), Q(-14, 3), Q(3, 2), Q(1, 6)))
    assert hi == Poly((Q(-19), Q(449, 20), Q(-253, 24), Q(49, 24), Q(1, 24), Q(1, 120)))


def test_route_agreement_grid():
    xs = list(range(2, 5000, 3)) + list(range(10**6 - 400, 10**6 + 1, 11))
    memo = {}
    for l in (2, 3):
        for x in xs:
            t = floor_log(x, l)
            for j in range(0, min(3, t - 1) + 1):
                a = poly_via_stirling(x, l, j, memo)
                b = poly_via_solve(x, l, j, memo)
                assert a.poly_in_k == b.poly_in_k and a.poly_in_t == b.poly_in_t
                assert a.poly_in_k == b.poly_in_t.shift(j)
                assert b.poly_in_t.degree <= a.tau
                if a.kappa[-1]:
                    assert a.poly_in_k.degree == a.tau


def test_ground_truth_all_x_to_1e5():
    memo = {}
    for x in range(4, 10**5 + 1):
        t = floor_log(x, 2)
        for j in range(0, min(3, t - 1) + 1):
            assert poly_via_solve(x, 2, j, memo).value == F_separation(x, t - j, 2, "full", memo)


def test_band_invariance():
    seen = {}
    memo = {}
    for x in range(2**12, 2**16, 5):
        r = poly_via_solve(x, 2, 2, memo)
        key = tuple(r.nodes_x_i)
        if key in seen:
            assert seen[key] == r.poly_in_t
        seen[key] = r.poly_in_t


def test_solve_rational_against_sympy():
    rows = [[Q(3), Q(1, 2), Q(-4)], [Q(0), Q(7), Q(2, 3)], [Q(5), Q(-1), Q(1)]]
    rhs = [Q(1), Q(-2), Q(9, 7)]
    want = sympy.Matrix(rows).LUsolve(sympy.Matrix(rhs))
    got = solve_rational(rows, rhs)
    assert [sympy.Rational(g.numerator, g.denominator) for g in got] == list(want)
    with pytest.raises(ZeroDivisionError):
        solve_rational([[Q(1), Q(2)], [Q(2), Q(4)]], [Q(1), Q(1)])


def test_poly_shift_and_eval():
    p = Poly((Q(1), Q(-2), Q(3)))
    for y in range(-5, 6):
        assert p.shift(4)(y) == p(y + 4)
    assert str(Poly((Q(0), Q(-2, 3), Q(3, 2), Q(1, 6)))) == "1/6*t^3 + 3/2*t^2 - 2/3*t"


def test_report_serialisation():
    d = poly_via_solve(X1, 2, 3).to_dict()
    assert d["poly_in_t"][1] == "-752/15"
    assert d["value"] == "38535596289" and d["x"] == str(X1)


rats = st.fractions(min_value=-50, max_value=50, max_denominator=50)


@settings(max_examples=100)
@given(st.integers(1, 6), st.integers(0, 6), st.data())
def test_double_sum_rearrangement(k, r, data):
    """sum_{i=r}^k nu_i sum_{j=0}^{i-r} xi_ij g_j == sum_{j=0}^{k-r} g_j sum_{i=j+r}^k nu_i xi_ij."""
    r = min(r, k)
    nu = data.draw(st.lists(rats, min_size=k + 1, max_size=k + 1))
    g = data.draw(st.lists(rats, min_size=k + 1, max_size=k + 1))
    xi = data.draw(st.lists(st.lists(rats, min_size=k + 1, max_size=k + 1), min_size=k + 1, max_size=k + 1))
    lhs = sum(nu[i] * sum(xi[i][j] * g[j] for j in range(i - r + 1)) for i in range(r, k + 1))
    rhs = sum(g[j] * sum(nu[i] * xi[i][j] for i in range(j + r, k + 1)) for j in range(k - r + 1))
    assert lhs == rhs
