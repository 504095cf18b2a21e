"""Exact computation of ordered factorization counts f_k(n, l) and their summatory functions."""

from .arith import PrimeFactorization, factorize, floor_log, iroot, stirling_first
from .counts import (
    binomial_transform_d_from_f,
    d_k,
    dirichlet_power_check,
    f_macmahon,
    f_recursive,
    f_separation,
    inverse_transform_f_from_d,
    kalmar_f,
    oracle_count,
    sen_series_check,
)
from .polyfit import Poly, PolynomialReport, bounds_for_band, nodes, poly_via_solve, poly_via_stirling, tau
from .summatory import D_k_sieve, F2_closed, F_doubling, F_hyperbola, F_naive, F_separation

__version__ = "0.1.0"
