"""1-D quadrature for radial integrands with Gaussian damping.

Two layers:
  * integrate_adaptive / integrate_gaussian_tail: the production integrators,
    backed by QUADPACK per panel with oscillation-aware panel splitting.
  * oracle_defining_integral: a self-contained composite midpoint rule on the
    defining integrals of J0 and the scaled I0, used to certify specfun.
    It shares no code with the production path.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate, special

from .errors import AccuracyError, ContractError, DomainError

_SUBDIVISION_BUDGET = 400


@dataclass(frozen=True)
class QuadratureResult:
    value: complex
    discretization_error: float
    truncation_error: float
    evaluations: int

    @property
    def total_error(self):
        return self.discretization_error + self.truncation_error


def _panel_edges(a, b, freq):
    """Panel edges so each 21-node panel sees at least 8 nodes per period 2*pi/freq."""
    if freq is None or freq <= 0:
        return [a, b]
    period = 2.0 * math.pi / freq
    # quarter-period panels with 21 Kronrod nodes each: >= 84 nodes per period
    width = period / 4.0
    count = max(1, int(math.ceil((b - a) / width)))
    return list(np.linspace(a, b, count + 1))


def _quad_real(f, edges, tol):
    per_panel = max(tol / max(len(edges) - 1, 1), 1e-15)
    total = 0.0
    err = 0.0
    nev = 0
    for lo, hi in zip(edges[:-1], edges[1:]):
        out = integrate.quad(f, lo, hi, epsabs=per_panel, epsrel=1e-12,
                             limit=_SUBDIVISION_BUDGET, full_output=True)
        total += out[0]
        err += out[1]
        nev += out[2]["neval"]
    return total, err, nev


def integrate_adaptive(f, a, b, tol, freq=None):
    """Integrate f on [a, b] to absolute target tol.

    ``freq`` declares the dominant angular frequency of any oscillatory factor
    (e.g. 2*pi*r for a J0(2*pi*r*s) factor); panels are pre-split so the node
    density resolves the oscillation.  Raises AccuracyError (carrying the best
    estimate) when the error estimate ends up far above tol.
    """
    if not (math.isfinite(a) and math.isfinite(b) and a < b):
        raise ContractError(f"need finite a < b, got [{a}, {b}]")
    if not tol > 0:
        raise ContractError("tol must be positive")
    edges = _panel_edges(a, b, freq)
    probe = f(0.5 * (a + b))
    if isinstance(probe, (complex, np.complexfloating)):
        re, err_re, n_re = _quad_real(lambda s: f(s).real, edges, tol)
        im, err_im, n_im = _quad_real(lambda s: f(s).imag, edges, tol)
        value, err, nev = complex(re, im), err_re + err_im, n_re + n_im
    else:
        value, err, nev = _quad_real(f, edges, tol)
    if err > 100.0 * tol:
        raise AccuracyError(
            f"adaptive quadrature did not converge: error {err:.3e} vs tol {tol:.3e}",
            value=value, error=err)
    return QuadratureResult(value, err, 0.0, nev)


def gaussian_tail_bound(C, alpha, T):
    """Rigorous bound for C * int_T^inf exp(-alpha s^2) ds."""
    return C * 0.5 * math.sqrt(math.pi / alpha) * float(special.erfc(math.sqrt(alpha) * T))


def truncation_radius(C, alpha, tol):
    """Smallest convenient T with gaussian_tail_bound(C, alpha, T) <= tol/2."""
    if C == 0:
        return 0.0
    T = 1.0 / math.sqrt(alpha)
    while gaussian_tail_bound(C, alpha, T) > 0.5 * tol:
        T *= 1.5
        if T > 1e9:
            raise AccuracyError("cannot satisfy tail bound", value=None, error=None)
    return T


def integrate_gaussian_tail(f, C, alpha, tol, freq=None):
    """Integrate f on [0, inf) given the declared envelope |f(s)| <= C exp(-alpha s^2).

    Truncates at T with a rigorous Gaussian tail bound <= tol/2, then delegates
    to integrate_adaptive on [0, T].
    """
    if not alpha > 0:
        raise ContractError("envelope decay rate alpha must be positive")
    if C < 0:
        raise ContractError("envelope constant C must be nonnegative")
    if C == 0:
        return QuadratureResult(0.0, 0.0, 0.0, 1)
    T = truncation_radius(C, alpha, tol)
    tail = gaussian_tail_bound(C, alpha, T)
    inner = integrate_adaptive(f, 0.0, T, tol=0.5 * tol, freq=freq)
    return QuadratureResult(inner.value, inner.discretization_error, tail,
                            inner.evaluations)


def poly_gaussian_envelope(C0, p, alpha, safety=2.0):
    """Envelope (C, alpha/2) for |f(s)| <= C0 * (1+s)^p * exp(-alpha s^2).

    Absorbs the polynomial factor into half of the Gaussian decay:
    (1+s)^p exp(-alpha s^2 / 2) is maximized on a dense grid, times a safety
    factor.
    """
    if p < 0 or C0 < 0 or alpha <= 0:
        raise ContractError("need C0 >= 0, p >= 0, alpha > 0")
    s = np.linspace(0.0, 10.0 / math.sqrt(alpha) + 10.0 * (1 + p), 4001)
    peak = float(np.max((1.0 + s) ** p * np.exp(-0.5 * alpha * s * s)))
    return safety * C0 * peak, 0.5 * alpha


def _composite_midpoint(values, width):
    # fixed-order pairwise reduction, independent of any scheduling
    return float(np.sum(values)) * width


def oracle_defining_integral(kind, t, panels):
    """High-resolution composite rule on the defining integral of J0 or e^-t I0.

    kind 'J0':        (1/pi) int_0^pi cos(t cos a) da
    kind 'I0_scaled': (1/pi) int_0^pi exp(-t (1 - cos a)) da
    The I0 form is the singularity-free substitution xi = 1 - cos(a) of the
    [0, 2] integral representation, and carries the exp(-t) scaling exactly.
    Both integrands extend to smooth 2*pi-periodic functions, so the midpoint
    rule converges spectrally in ``panels``.
    """
    if t < 0:
        raise DomainError("oracle requires t >= 0")
    if panels < 64:
        raise ContractError("panels must be >= 64")
    theta = (np.arange(panels) + 0.5) * (math.pi / panels)
    if kind == "J0":
        vals = np.cos(t * np.cos(theta))
    elif kind == "I0_scaled":
        vals = np.exp(-t * (1.0 - np.cos(theta)))
    else:
        raise ContractError(f"unknown oracle kind {kind!r}")
    return _composite_midpoint(vals, 1.0 / panels)


def oracle_with_error(kind, t, panels):
    """Oracle value plus a self-convergence error estimate (panel halving)."""
    coarse = oracle_defining_integral(kind, t, max(panels // 2, 64))
    fine = oracle_defining_integral(kind, t, panels)
    return QuadratureResult(fine, abs(fine - coarse), 0.0, panels + panels // 2)
