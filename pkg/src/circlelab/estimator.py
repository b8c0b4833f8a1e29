"""Intensity of a circle under the Fourier transform of a measure.

The pre-limit value I_n pairs the measure with the spectral side of an
approximate r-circle family; the limit over an n-schedule is the intensity
the transform assigns to the circle C_r.  A polynomial-in-1/n fit
extrapolates the limit and reports a conservative uncertainty.
"""

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from scipy import special

from . import circles
from .circles import ANNULUS, GAUSSIAN, CircleFamily, f_spatial_radial, f_spectral
from .errors import ContractError
from .measures import (CircleUniform, PlaneCharacter, PointSet, RadialDensity,
                       ShellWeights, pair_radial_detailed)

SQRT_PI = math.sqrt(math.pi)

# Atoms whose spectral Gaussian factor falls below this fraction of the top
# weight are provably negligible; their bound is reported, not hidden.
ATOM_TRUNCATION = 1e-16


@dataclass(frozen=True)
class Schedule:
    n_values: Tuple[int, ...]
    per_n_tol: float = 1e-9

    def __post_init__(self):
        ns = tuple(int(n) for n in self.n_values)
        if not ns:
            raise ContractError("schedule must be nonempty")
        if any(n < 1 for n in ns) or any(b <= a for a, b in zip(ns, ns[1:])):
            raise ContractError("n_values must be strictly increasing positive integers")
        if not self.per_n_tol > 0:
            raise ContractError("per_n_tol must be positive")
        object.__setattr__(self, "n_values", ns)


def default_schedule(fam_kind, per_n_tol=1e-9):
    """Desk-scale default schedules.

    The annulus family's spectral Gaussian decays like exp(-pi^2 s^2 / n^4),
    so shell cutoffs grow like n^4 and its schedule stays short.
    """
    if fam_kind == GAUSSIAN:
        return Schedule((4, 6, 8, 12, 16, 24, 32, 48, 64), per_n_tol)
    return Schedule((4, 6, 8, 10), per_n_tol)


@dataclass(frozen=True)
class IntensitySeries:
    entries: Tuple[Tuple[int, complex, float], ...]  # (n, I_n, quad_error)

    def ns(self):
        return np.array([e[0] for e in self.entries], dtype=float)

    def values(self):
        return np.array([e[1] for e in self.entries], dtype=complex)

    def quad_errors(self):
        return np.array([e[2] for e in self.entries], dtype=float)


@dataclass(frozen=True)
class IntensityEstimate:
    limit: complex
    uncertainty: float
    model: str
    series: IntensitySeries


def intensity_at(mu, fam, tol):
    """Pre-limit pairing I_n = <mu, f_spectral(fam, .)> with error accounting."""
    alpha = circles.spectral_decay_alpha(fam.kind, fam.n)
    sup = circles.spectral_sup_bound(fam.kind, fam.r, fam.n)
    if isinstance(mu, (PointSet, ShellWeights)):
        if isinstance(mu, PointSet):
            radii = mu.radii()
            weights = mu.weights
        else:
            radii, weights = mu.radii, mu.weights
        absw = np.abs(weights)
        if len(absw) == 0:
            return 0.0 + 0.0j, 0.0
        damp = np.exp(-alpha * radii ** 2)
        keep = damp >= ATOM_TRUNCATION * np.max(absw) / np.maximum(absw, 1e-300)
        skipped = float(np.sum(absw[~keep] * damp[~keep])) * sup
        value = complex(np.sum(weights[keep] * f_spectral(fam, radii[keep])))
        return value, skipped
    g = lambda s: f_spectral(fam, s)
    value, err = pair_radial_detailed(mu, g, tol, envelope=(sup, alpha),
                                      freq=2.0 * math.pi * fam.r)
    return value, err


def extrapolate(series, tail_len, degree=None):
    """Polynomial-in-1/n limit of the tail of an intensity series.

    Least-squares fit of I_n = L + a_1/n + ... + a_d/n^d over the last
    ``tail_len`` entries.  The default degree min(tail_len - 1, 4) resolves
    both the even (pure-point) and odd (absolutely continuous) decay shapes.
    Returns (limit, uncertainty) with uncertainty the max of the fit residual,
    the last-point deviation, and the worst tail quadrature error.
    """
    entries = series.entries
    if tail_len < 3 or len(entries) < tail_len:
        raise ContractError("extrapolation needs at least 3 tail entries")
    tail = entries[-tail_len:]
    ns = np.array([e[0] for e in tail], dtype=float)
    if len(np.unique(ns)) != len(ns):
        raise ContractError("repeated n in extrapolation tail")
    vals = np.array([e[1] for e in tail], dtype=complex)
    qerr = max(e[2] for e in tail)
    if degree is None:
        degree = min(tail_len - 1, 4)
    design = np.vstack([ns ** (-k) for k in range(degree + 1)]).T
    coef, _, _, _ = np.linalg.lstsq(design, vals, rcond=None)
    fit = design @ coef
    residual = float(np.max(np.abs(fit - vals)))
    limit = complex(coef[0])
    # 1.25: safety factor on the fit-based indicators (not the rigorous
    # quadrature bound) so the figure still covers a limit that is pure
    # fit contamination around zero
    uncertainty = max(1.25 * max(residual, abs(vals[-1] - limit)), qerr)
    return limit, uncertainty


def circle_intensity(mu, r, fam_kind, schedule=None, tail_len=None):
    """Intensity series over the schedule plus its extrapolated limit."""
    schedule = schedule or default_schedule(fam_kind)
    if fam_kind == ANNULUS and any(n * r <= 1 for n in schedule.n_values):
        raise ContractError("annulus schedule requires n > 1/r for every n")
    entries = []
    for n in schedule.n_values:
        fam = CircleFamily(fam_kind, r, n)
        value, err = intensity_at(mu, fam, schedule.per_n_tol)
        entries.append((n, value, err))
    series = IntensitySeries(tuple(entries))
    if tail_len is None:
        tail_len = min(5, len(entries))
    if tail_len >= 3 and len(entries) >= 3:
        degree = min(tail_len - 1, 4)
        limit, unc = extrapolate(series, tail_len)
        model = f"lstsq 1/n poly deg {degree}, tail {tail_len}"
    else:
        limit = entries[-1][1]
        unc = abs(entries[-1][1] - entries[-2][1]) if len(entries) > 1 else math.inf
        model = "raw last value (short schedule)"
    return IntensityEstimate(limit, unc, model, series)


def detect_circle(mu, r, schedule=None, threshold=1e-3, fam_kind=GAUSSIAN):
    """Significance-gated version of the circle-presence predicate."""
    if not threshold > 0:
        raise ContractError("threshold must be positive")
    est = circle_intensity(mu, r, fam_kind, schedule)
    present = abs(est.limit) > max(threshold, 3.0 * est.uncertainty)
    return present, est


# ---------------------------------------------------------------------------
# orthogonality integral

_DOUBLE_CANCELLATION_FLOOR = 1e-12


def j0_orthogonality(r, r_prime, n, tol=1e-8):
    """(r sqrt(pi)/n) int_0^inf exp(-z^2/4n^2) J0(rz) J0(r'z) z dz.

    ``tol`` is a relative target.  The integral is evaluated in double
    precision; when the requested absolute accuracy tol*|value| falls below
    the double-precision cancellation floor (the integrand is O(1) while the
    value can be exponentially small), the evaluation escalates to an
    arbitrary-precision quadrature with matching working precision.
    """
    if not (r > 0 and r_prime > 0):
        raise ContractError("r and r' must be positive")
    from .quad import integrate_gaussian_tail, poly_gaussian_envelope
    alpha = 1.0 / (4.0 * n * n)
    scale = r * SQRT_PI / n
    C, half_alpha = poly_gaussian_envelope(scale, 1.0, alpha)

    def integrand(z):
        return scale * math.exp(-alpha * z * z) * float(special.j0(r * z)) \
            * float(special.j0(r_prime * z)) * z

    # pilot pass to learn the value's scale, then match the tolerance to it
    pilot = integrate_gaussian_tail(integrand, C, half_alpha, tol=1e-10,
                                    freq=r + r_prime)
    value = float(np.real(pilot.value))
    needed_abs = tol * max(abs(value), 1e-300)
    if needed_abs >= _DOUBLE_CANCELLATION_FLOOR:
        res = integrate_gaussian_tail(integrand, C, half_alpha,
                                      tol=max(needed_abs / 10.0, 1e-13),
                                      freq=r + r_prime)
        return float(np.real(res.value))
    return _j0_orthogonality_mp(r, r_prime, n, tol, abs(value))


def _j0_orthogonality_mp(r, r_prime, n, tol, scale_hint):
    import mpmath as mp

    needed_abs = tol * max(scale_hint, 1e-100)
    dps = max(25, 10 + int(math.ceil(-math.log10(needed_abs))))
    with mp.workdps(dps):
        rm, rpm, nm = mp.mpf(r), mp.mpf(r_prime), mp.mpf(n)
        T = 2 * nm * mp.sqrt(mp.log(mp.mpf(10) ** (dps + 5)))
        f = lambda z: mp.exp(-z * z / (4 * nm * nm)) * mp.besselj(0, rm * z) \
            * mp.besselj(0, rpm * z) * z
        # split at roughly the oscillation scale of the J0 product
        step = mp.pi / (rm + rpm)
        count = int(mp.ceil(T / step))
        pts = [T * k / count for k in range(count + 1)]
        total = mp.quad(f, pts)
        return float(rm * mp.sqrt(mp.pi) / nm * total)


# ---------------------------------------------------------------------------
# Poisson self-check on Z^2

def default_poisson_cutoff(fam, tiny=1e-24):
    """Shell radius making both Poisson tails provably negligible."""
    power = 2 if fam.kind == GAUSSIAN else 4
    spectral = math.sqrt(float(fam.n) ** power * math.log(1.0 / tiny)) / math.pi
    spatial = fam.r + math.sqrt(math.log(1.0 / tiny)) / fam.n + 1.0
    return max(spectral, spatial)


@dataclass(frozen=True)
class PoissonReport:
    spectral_sum: float
    spatial_sum: float
    rel_diff: float


def poisson_selfcheck(fam, shell_cutoff=None):
    """Two-sided Poisson summation identity on Z^2 for the family transform.

    spectral = sum_m r2(m) f_spectral(sqrt(m)); spatial = same with f_spatial.
    Both sides are computed independently; Poisson summation makes them equal.
    """
    from .lattice import r2_sieve
    if shell_cutoff is None:
        shell_cutoff = default_poisson_cutoff(fam)
    M = int(math.floor(shell_cutoff ** 2))
    if M < 1:
        raise ContractError("shell_cutoff too small")
    r2 = r2_sieve(M).astype(float)
    m = np.arange(M + 1, dtype=float)
    s = np.sqrt(m)

    spectral_terms = r2 * f_spectral(fam, s)
    alpha = circles.spectral_decay_alpha(fam.kind, fam.n)
    # r2(m) <= 4(1+m): geometric-dominated tail bound past M
    q = math.exp(-alpha)
    spec_tail = circles.spectral_sup_bound(fam.kind, fam.r, fam.n) \
        * 4.0 * (M + 2) * math.exp(-alpha * (M + 1)) / max(1.0 - q * (M + 3) / (M + 2), 1e-6)
    spectral = float(np.sum(spectral_terms))

    if fam.kind == GAUSSIAN:
        spatial_terms = r2 * f_spatial_radial(fam, s)
        n2 = float(fam.n) ** 2
        edge = math.sqrt(M + 1) - fam.r
        spat_tail = 8.0 * (M + 2) * math.sqrt(max(fam.r, 1.0)) * math.exp(-n2 * edge * edge)
    else:
        # the annulus family is supported in a band around r; far shells vanish
        lo, hi = fam.r - 1.0 / fam.n - 1.0, fam.r + 1.0 / fam.n + 1.0
        active = (s >= lo) & (s <= hi)
        spatial_terms = np.zeros_like(s)
        spatial_terms[active] = r2[active] * f_spatial_radial(fam, s[active])
        n4 = float(fam.n) ** 4
        edge = math.sqrt(M + 1) - fam.r - 1.0 / fam.n
        spat_tail = 8.0 * (M + 2) * math.exp(-n4 * max(edge - 0.5, 0.0) ** 2)
    spatial = float(np.sum(spatial_terms))

    floor = 1e-14 * max(abs(spectral), abs(spatial))
    if spec_tail > floor or spat_tail > floor:
        raise ContractError(
            f"shell_cutoff {shell_cutoff} insufficient: tail bounds "
            f"{spec_tail:.3e}/{spat_tail:.3e} exceed {floor:.3e}")
    rel = abs(spectral - spatial) / max(abs(spatial), 1e-300)
    return PoissonReport(spectral, spatial, rel)
