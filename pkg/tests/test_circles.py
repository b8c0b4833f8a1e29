"""Approximate circle families: closed forms, Fourier pairing, envelopes."""

import math

import numpy as np
import pytest
from scipy import integrate as sp_integrate
from scipy import special

from circlelab.circles import (ANNULUS, GAUSSIAN, CircleFamily, annulus_ft,
                               disk_ft, f_spatial, f_spatial_radial,
                               f_spectral, validate_family)
from circlelab.errors import ContractError
from circlelab.quad import integrate_adaptive
from circlelab.specfun import u_ratio

SQRT_PI = math.sqrt(math.pi)


def _hankel_of_spatial(fam, s, upper):
    """2 pi int_0^upper f_spatial(t) J0(2 pi s t) t dt."""
    res = integrate_adaptive(
        lambda t: 2.0 * math.pi * t * f_spatial_radial(fam, t)
        * float(special.j0(2.0 * math.pi * s * t)),
        0.0, upper, tol=1e-12, freq=2.0 * math.pi * max(s, 0.1))
    return res.value


def test_gaussian_spatial_on_circle():
    for n, r in [(2, 1.0), (5, 0.5), (16, 3.0)]:
        fam = CircleFamily(GAUSSIAN, r, n)
        assert f_spatial_radial(fam, r) == pytest.approx(u_ratio(2.0 * n * n * r * r), rel=1e-14)


def test_gaussian_spatial_at_origin():
    fam = CircleFamily(GAUSSIAN, 1.0, 2)
    assert f_spatial(fam, (0.0, 0.0)) == pytest.approx(4.0 * SQRT_PI * math.exp(-4.0), rel=1e-14)


def test_gaussian_spatial_matches_angular_convolution():
    n, r, rho = 3, 1.0, 0.6
    fam = CircleFamily(GAUSSIAN, r, n)
    # direct angular average of the Gaussian around the circle
    res = integrate_adaptive(
        lambda th: math.exp(-n * n * (rho * rho + r * r - 2.0 * rho * r * math.cos(th))),
        0.0, 2.0 * math.pi, tol=1e-13)
    oracle = 2.0 * n * r * SQRT_PI * res.value / (2.0 * math.pi)
    assert f_spatial_radial(fam, rho) == pytest.approx(oracle, rel=1e-9)


def test_spectral_zero_frequency():
    fam = CircleFamily(GAUSSIAN, 1.5, 4)
    assert f_spectral(fam, 0.0) == pytest.approx(2.0 * 1.5 * math.pi * SQRT_PI / 4.0, rel=1e-14)
    ann = CircleFamily(ANNULUS, 1.5, 4)
    assert f_spectral(ann, 0.0) == pytest.approx(4.0 * math.pi * 1.5 / 4.0, rel=1e-14)


def test_gaussian_spectral_closed_form_and_hankel():
    fam = CircleFamily(GAUSSIAN, 1.0, 2)
    expected = math.pi * SQRT_PI * math.exp(-math.pi ** 2 / 4.0) * float(special.j0(2.0 * math.pi))
    assert f_spectral(fam, 1.0) == pytest.approx(expected, rel=1e-14)
    hankel = _hankel_of_spatial(fam, 1.0, 1.0 + 10.0 / 2)
    assert hankel == pytest.approx(expected, rel=1e-6)


def test_fourier_pair_gaussian_grid():
    fam = CircleFamily(GAUSSIAN, 1.0, 4)
    upper = 1.0 + 10.0 / 4
    for s in np.linspace(0.0, 3.0, 10):
        expected = f_spectral(fam, float(s))
        got = _hankel_of_spatial(fam, float(s), upper)
        assert abs(got - expected) <= 1e-6 * abs(expected) + 1e-9


def test_fourier_pair_annulus_grid():
    fam = CircleFamily(ANNULUS, 1.0, 2)
    upper = 1.0 + 1.0 / 2 + 1.0
    for s in np.linspace(0.0, 3.0, 10):
        expected = f_spectral(fam, float(s))
        got = _hankel_of_spatial(fam, float(s), upper)
        assert abs(got - expected) <= 1e-4 * abs(expected) + 1e-8


def test_overflow_safety_large_n():
    fam = CircleFamily(GAUSSIAN, 1.0, 10000)
    for rho in (0.0, 0.5, 1.0, 10.0, 1000.0):
        v = f_spatial_radial(fam, rho)
        assert math.isfinite(v)
    assert f_spatial_radial(fam, 1.0) == pytest.approx(1.0, abs=1e-6)


def test_spatial_positivity():
    g = CircleFamily(GAUSSIAN, 1.0, 6)
    assert np.all(f_spatial_radial(g, np.linspace(0.0, 5.0, 101)) >= 0.0)
    a = CircleFamily(ANNULUS, 1.0, 4)
    assert np.all(f_spatial_radial(a, np.linspace(0.0, 3.0, 41)) >= 0.0)


def test_pointwise_limits():
    # on the circle the values settle monotonely to 1 from above
    on_circle = [f_spatial_radial(CircleFamily(GAUSSIAN, 1.0, n), 1.0)
                 for n in range(1, 33)]
    assert all(1.0 < b < a for a, b in zip(on_circle, on_circle[1:]))
    assert on_circle[-1] - 1.0 < 1e-3
    # at the origin the values die
    at_origin = [f_spatial_radial(CircleFamily(GAUSSIAN, 1.0, n), 0.0)
                 for n in range(2, 33)]
    # monotone until the values underflow to exactly zero
    assert all(b < a or a == b == 0.0 for a, b in zip(at_origin, at_origin[1:]))
    assert at_origin[-1] < 1e-9
    # annulus family off the circle
    off = [f_spatial_radial(CircleFamily(ANNULUS, 1.0, n), 1.5)
           for n in range(2, 9)]
    assert off[-1] <= 1e-12


def test_disk_ft_values():
    assert disk_ft(1.0, 0.0) == pytest.approx(math.pi, rel=1e-15)
    assert disk_ft(1.0, 1e-8) == pytest.approx(math.pi, abs=1e-6)


def test_disk_ft_against_polar_quadrature():
    s = 0.7
    oracle, _ = sp_integrate.dblquad(
        lambda th, rho: rho * math.cos(2.0 * math.pi * s * rho * math.cos(th)),
        0.0, 1.0, 0.0, 2.0 * math.pi, epsabs=1e-12, epsrel=1e-12)
    assert disk_ft(1.0, s) == pytest.approx(oracle, rel=1e-8)


def test_annulus_ft_against_polar_quadrature():
    r, n, s = 1.0, 4, 0.5
    oracle, _ = sp_integrate.dblquad(
        lambda th, rho: rho * math.cos(2.0 * math.pi * s * rho * math.cos(th)),
        r - 1.0 / n, r + 1.0 / n, 0.0, 2.0 * math.pi, epsabs=1e-12, epsrel=1e-12)
    assert annulus_ft(r, n, s) == pytest.approx(oracle, rel=1e-8)


def test_annulus_ft_is_disk_difference():
    s = np.linspace(0.0, 10.0, 57)
    lhs = annulus_ft(1.0, 4, s)
    rhs = disk_ft(1.25, s) - disk_ft(0.75, s)
    assert np.array_equal(lhs, rhs)
    # spectral annulus factorizes exactly through the same transform
    fam = CircleFamily(ANNULUS, 1.0, 4)
    spec = f_spectral(fam, s)
    assert np.allclose(spec, np.exp(-(math.pi ** 2) * s * s / 256.0) * lhs,
                       rtol=1e-15, atol=0)


def test_annulus_ft_high_frequency_decay():
    for s in np.linspace(50.0, 80.0, 13):
        assert abs(annulus_ft(1.0, 4, float(s))) < 1e-2


def test_family_contracts():
    with pytest.raises(ContractError):
        CircleFamily("square", 1.0, 4)
    with pytest.raises(ContractError):
        CircleFamily(GAUSSIAN, 0.0, 4)
    with pytest.raises(ContractError):
        CircleFamily(GAUSSIAN, 1.0, 0)
    with pytest.raises(ContractError):
        CircleFamily(ANNULUS, 0.25, 4)
    with pytest.raises(ContractError):
        annulus_ft(0.25, 4, 1.0)
    with pytest.raises(ContractError):
        disk_ft(-1.0, 1.0)


def test_validate_family_small_grid():
    grid = [0.0, 0.3, 0.7, 1.0, 1.4, 2.2, 3.0]
    for kind in (GAUSSIAN, ANNULUS):
        report = validate_family(kind, 1.0, grid, (4, 8, 16, 32))
        assert report.passed
        assert report.c1_max_dev <= 0.05
    with pytest.raises(ContractError):
        validate_family(GAUSSIAN, 1.0, [0.5, 1.0], (4, 8))
