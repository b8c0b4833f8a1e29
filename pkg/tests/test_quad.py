"""Quadrature layer: production integrators and the self-contained oracle."""

import math

import numpy as np
import pytest
from scipy import special

from circlelab.errors import AccuracyError, ContractError, DomainError
from circlelab.quad import (QuadratureResult, integrate_adaptive,
                            integrate_gaussian_tail, oracle_defining_integral,
                            oracle_with_error, poly_gaussian_envelope,
                            truncation_radius)


def test_constant_integrand():
    res = integrate_adaptive(lambda s: 1.0, 0.0, 1.0, tol=1e-12)
    assert abs(res.value - 1.0) <= 1e-14


def test_gaussian_normalization():
    # int_0^8 2 pi s exp(-pi^2 s^2) ds = (1 - exp(-64 pi^2)) / pi
    res = integrate_adaptive(lambda s: 2.0 * math.pi * s * math.exp(-math.pi ** 2 * s * s),
                             0.0, 8.0, tol=1e-12)
    oracle = (1.0 - math.exp(-64.0 * math.pi ** 2)) / math.pi
    assert abs(res.value - oracle) <= 1e-10


def test_j1_example():
    res = integrate_adaptive(lambda s: s * float(special.j0(s)), 0.0, 3.0,
                             tol=1e-10, freq=1.0)
    assert abs(res.value - 3.0 * float(special.j1(3.0))) <= 1e-9


def test_complex_integrand():
    res = integrate_adaptive(lambda s: complex(math.cos(s), math.sin(s)),
                             0.0, 1.0, tol=1e-12)
    assert abs(res.value - complex(math.sin(1.0), 1.0 - math.cos(1.0))) <= 1e-12


def test_gaussian_tail_closed_form():
    n = 4
    alpha = math.pi ** 2 / n ** 2
    C, half_alpha = poly_gaussian_envelope(2.0 * math.pi, 1.0, alpha)
    res = integrate_gaussian_tail(
        lambda s: 2.0 * math.pi * s * math.exp(-alpha * s * s),
        C, half_alpha, tol=1e-10)
    assert abs(res.value - n ** 2 / math.pi) <= 1e-9
    assert res.total_error <= 1e-9


def test_zero_envelope():
    assert truncation_radius(0.0, 1.0, 1e-10) == 0.0
    res = integrate_gaussian_tail(lambda s: 0.0, 0.0, 1.0, tol=1e-10)
    assert res.value == 0.0 and res.total_error == 0.0


def test_bessel_product_closed_form():
    # 2 pi int s exp(-pi^2 s^2/n^2) J0(2 pi s)^2 ds equals the spatial family
    # value at distance 1 for r = 1 scaled by n / (2 pi sqrt(pi))
    from circlelab.circles import GAUSSIAN, CircleFamily, f_spatial_radial
    n = 8
    alpha = math.pi ** 2 / n ** 2
    C, half_alpha = poly_gaussian_envelope(2.0 * math.pi, 1.0, alpha)
    res = integrate_gaussian_tail(
        lambda s: 2.0 * math.pi * s * math.exp(-alpha * s * s)
        * float(special.j0(2.0 * math.pi * s)) ** 2,
        C, half_alpha, tol=1e-12, freq=4.0 * math.pi)
    expected = f_spatial_radial(CircleFamily(GAUSSIAN, 1.0, n), 1.0) \
        / (2.0 * math.pi * math.sqrt(math.pi) / n)
    assert abs(res.value - expected) <= 1e-8 * abs(expected)


def test_tol_monotonicity():
    def f(s):
        return 2.0 * math.pi * s * math.exp(-s * s) * float(special.j0(4.0 * s))
    C, half_alpha = poly_gaussian_envelope(2.0 * math.pi, 1.0, 1.0)
    errs = [integrate_gaussian_tail(f, C, half_alpha, tol=t, freq=4.0).total_error
            for t in (1e-4, 1e-6, 1e-8, 1e-10)]
    for loose, tight in zip(errs, errs[1:]):
        assert tight <= loose + 1e-15


def test_interval_contract():
    with pytest.raises(ContractError):
        integrate_adaptive(lambda s: 1.0, 1.0, 0.0, tol=1e-10)
    with pytest.raises(ContractError):
        integrate_adaptive(lambda s: 1.0, 0.0, 1.0, tol=-1.0)
    with pytest.raises(ContractError):
        poly_gaussian_envelope(1.0, -1.0, 1.0)
    with pytest.raises(ContractError):
        integrate_gaussian_tail(lambda s: 1.0, 1.0, -1.0, tol=1e-8)


def test_oracle_trivial_values():
    assert oracle_defining_integral("J0", 0.0, 64) == 1.0
    assert abs(oracle_defining_integral("I0_scaled", 0.0, 64) - 1.0) <= 1e-15


def test_oracle_panel_doubling_stability():
    a = oracle_defining_integral("J0", 5.0, 2048)
    b = oracle_defining_integral("J0", 5.0, 4096)
    assert abs(a - b) <= 1e-12


@pytest.mark.parametrize("kind,t", [("J0", 3.0), ("J0", 30.0),
                                    ("I0_scaled", 2.0), ("I0_scaled", 50.0)])
def test_oracle_error_estimate_covers_doubling(kind, t):
    res = oracle_with_error(kind, t, 2048)
    finer = oracle_defining_integral(kind, t, 4096)
    assert abs(res.value - finer) <= 10.0 * res.discretization_error + 1e-15


def test_oracle_contracts():
    with pytest.raises(DomainError):
        oracle_defining_integral("J0", -1.0, 64)
    with pytest.raises(ContractError):
        oracle_defining_integral("J0", 1.0, 32)
    with pytest.raises(ContractError):
        oracle_defining_integral("nope", 1.0, 64)


def test_total_error_property():
    r = QuadratureResult(1.0, 2e-12, 3e-12, 10)
    assert r.total_error == pytest.approx(5e-12, rel=1e-15)
