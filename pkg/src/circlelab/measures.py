"""Representable strongly tempered measures on R^2 and the radial pairing.

Every estimator formula reduces to pair_radial(mu, g) = int g(||y||) dmu(y)
for a radially evaluated g with a declared Gaussian envelope.
"""

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple

import numpy as np
from scipy import special

from .errors import ContractError
from .quad import integrate_gaussian_tail, poly_gaussian_envelope

_GROUP_REL_TOL = 1e-9


@dataclass(frozen=True)
class PointSet:
    """Finite weighted Dirac comb: atoms delta_p with complex weights."""

    points: np.ndarray   # (N, 2) float
    weights: np.ndarray  # (N,) complex

    def __post_init__(self):
        pts = np.atleast_2d(np.asarray(self.points, dtype=float))
        w = np.atleast_1d(np.asarray(self.weights, dtype=complex))
        if pts.shape != (len(w), 2):
            raise ContractError("points must be (N, 2) with N matching weights")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "weights", w)

    def radii(self):
        return np.hypot(self.points[:, 0], self.points[:, 1])


@dataclass(frozen=True)
class ShellWeights:
    """Radially grouped atoms: weight w_j on the circle of radius_j."""

    radii: np.ndarray    # strictly increasing, >= 0
    weights: np.ndarray  # complex

    def __post_init__(self):
        r = np.atleast_1d(np.asarray(self.radii, dtype=float))
        w = np.atleast_1d(np.asarray(self.weights, dtype=complex))
        if len(r) != len(w):
            raise ContractError("radii and weights must have equal length")
        if len(r) and (r[0] < 0 or np.any(np.diff(r) <= 0)):
            raise ContractError("radii must be nonnegative and strictly increasing")
        object.__setattr__(self, "radii", r)
        object.__setattr__(self, "weights", w)


@dataclass(frozen=True)
class CircleUniform:
    """theta_{r'}: the uniform probability measure on the circle of radius r'."""

    radius: float

    def __post_init__(self):
        if not self.radius > 0:
            raise ContractError("CircleUniform radius must be positive")


@dataclass(frozen=True)
class RadialDensity:
    """Absolutely continuous radial measure with density rho(||y||).

    The declared polynomial envelope |rho(s)| <= C (1+s)^p is the
    strong-temperedness contract the integrator honors.
    """

    rho: Callable[[np.ndarray], np.ndarray]
    envelope_C: float = 1.0
    envelope_p: float = 0.0
    label: str = "custom"

    def __post_init__(self):
        if self.envelope_C < 0 or self.envelope_p < 0:
            raise ContractError("envelope needs C >= 0 and p >= 0")


@dataclass(frozen=True)
class PlaneCharacter:
    """The density y -> exp(-2 pi i x.y); its transform is delta_x."""

    x: Tuple[float, float]

    def __post_init__(self):
        object.__setattr__(self, "x", (float(self.x[0]), float(self.x[1])))

    @property
    def norm(self):
        return math.hypot(*self.x)


MeasureSpec = (PointSet, ShellWeights, CircleUniform, RadialDensity, PlaneCharacter)


def lebesgue():
    """Lebesgue measure on R^2 as a radial density rho == 1."""
    return RadialDensity(lambda s: np.ones_like(np.asarray(s, dtype=float)),
                         envelope_C=1.0, envelope_p=0.0, label="lebesgue")


def radial_j0(r_prime):
    """The radial density J0(2 pi r' ||y||): the transform of theta_{r'}."""
    if not r_prime > 0:
        raise ContractError("radial_j0 needs r' > 0")
    return RadialDensity(lambda s, rp=float(r_prime): special.j0(2.0 * math.pi * rp * np.asarray(s, dtype=float)),
                         envelope_C=1.0, envelope_p=0.0, label=f"j0:{float(r_prime)!r}")


def group_points_to_shells(ps: PointSet, rel_tol=_GROUP_REL_TOL):
    """Group a PointSet by norm into ShellWeights.

    Integer-coordinate inputs are grouped by exact squared norm; floating
    inputs use a relative radius tolerance.
    """
    radii = ps.radii()
    if np.allclose(ps.points, np.round(ps.points), atol=0.0):
        sq = np.round(np.sum(np.round(ps.points) ** 2, axis=1)).astype(np.int64)
        order = np.argsort(sq, kind="stable")
        keys = sq[order]
        new_group = np.ones(len(keys), dtype=bool)
        new_group[1:] = keys[1:] != keys[:-1]
    else:
        order = np.argsort(radii, kind="stable")
        keys = radii[order]
        scale = np.maximum(keys[:-1], 1.0)
        new_group = np.ones(len(keys), dtype=bool)
        if len(keys) > 1:
            new_group[1:] = (keys[1:] - keys[:-1]) > rel_tol * scale
    idx = np.cumsum(new_group) - 1
    n_groups = idx[-1] + 1 if len(idx) else 0
    out_r = np.zeros(n_groups)
    out_w = np.zeros(n_groups, dtype=complex)
    counts = np.zeros(n_groups)
    np.add.at(out_w, idx, ps.weights[order])
    np.add.at(out_r, idx, radii[order])
    np.add.at(counts, idx, 1.0)
    return ShellWeights(out_r / counts, out_w)


def _atomic_sum(weights, values):
    # fixed-order pairwise reduction (np.sum is pairwise), deterministic
    return complex(np.sum(weights * values))


def pair_radial_detailed(mu, g, tol, envelope: Optional[Tuple[float, float]] = None,
                         freq=None):
    """(value, error) of int g(||y||) dmu(y).

    ``envelope = (C_g, alpha)`` declares |g(s)| <= C_g exp(-alpha s^2); it is
    required for the continuous variants (RadialDensity, PlaneCharacter).
    ``freq`` declares the dominant angular frequency of g for the quadrature.
    """
    if isinstance(mu, PointSet):
        return _atomic_sum(mu.weights, np.asarray(g(mu.radii()))), 0.0
    if isinstance(mu, ShellWeights):
        return _atomic_sum(mu.weights, np.asarray(g(mu.radii))), 0.0
    if isinstance(mu, CircleUniform):
        val = g(np.asarray([mu.radius]))
        return complex(np.asarray(val).ravel()[0]), 0.0
    if envelope is None:
        raise ContractError("continuous measures need a declared Gaussian envelope for g")
    C_g, alpha = envelope
    if isinstance(mu, RadialDensity):
        # 2 pi int rho(s) g(s) s ds
        C, half_alpha = poly_gaussian_envelope(
            2.0 * math.pi * C_g * mu.envelope_C, mu.envelope_p + 1.0, alpha)
        res = integrate_gaussian_tail(
            lambda s: 2.0 * math.pi * s * complex(np.asarray(mu.rho(np.asarray([s]))).ravel()[0])
            * complex(np.asarray(g(np.asarray([s]))).ravel()[0]),
            C, half_alpha, tol, freq=freq)
        return complex(res.value), res.total_error
    if isinstance(mu, PlaneCharacter):
        # angular integral of exp(-2 pi i x.y) over the circle of radius s
        # is J0(2 pi ||x|| s)
        xnorm = mu.norm
        C, half_alpha = poly_gaussian_envelope(2.0 * math.pi * C_g, 1.0, alpha)
        total_freq = (freq or 0.0) + 2.0 * math.pi * xnorm
        res = integrate_gaussian_tail(
            lambda s: 2.0 * math.pi * s * float(special.j0(2.0 * math.pi * xnorm * s))
            * complex(np.asarray(g(np.asarray([s]))).ravel()[0]),
            C, half_alpha, tol, freq=total_freq)
        return complex(res.value), res.total_error
    raise ContractError(f"unknown measure variant {type(mu).__name__}")


def pair_radial(mu, g, tol, envelope=None, freq=None):
    """int g(||y||) dmu(y); see pair_radial_detailed."""
    value, _ = pair_radial_detailed(mu, g, tol, envelope=envelope, freq=freq)
    return value


# ---------------------------------------------------------------------------
# structured-file representation (see the cli module for usage)

def measure_to_dict(mu):
    if isinstance(mu, PointSet):
        return {"type": "point_set",
                "atoms": [[[float(p[0]), float(p[1])], [w.real, w.imag]]
                          for p, w in zip(mu.points, mu.weights)]}
    if isinstance(mu, ShellWeights):
        return {"type": "shell_weights",
                "shells": [[float(r), [w.real, w.imag]]
                           for r, w in zip(mu.radii, mu.weights)]}
    if isinstance(mu, CircleUniform):
        return {"type": "circle_uniform", "radius": mu.radius}
    if isinstance(mu, RadialDensity):
        if mu.label == "lebesgue":
            return {"type": "lebesgue"}
        if mu.label.startswith("j0:"):
            return {"type": "radial_j0", "r_prime": float(mu.label[3:])}
        raise ContractError("only named radial densities have a file representation")
    if isinstance(mu, PlaneCharacter):
        return {"type": "plane_character", "x": [mu.x[0], mu.x[1]]}
    raise ContractError(f"unknown measure variant {type(mu).__name__}")


def measure_from_dict(d):
    kind = d.get("type")
    if kind == "point_set":
        pts = [a[0] for a in d["atoms"]]
        ws = [complex(a[1][0], a[1][1]) for a in d["atoms"]]
        return PointSet(np.asarray(pts, dtype=float), np.asarray(ws, dtype=complex))
    if kind == "shell_weights":
        rs = [s[0] for s in d["shells"]]
        ws = [complex(s[1][0], s[1][1]) for s in d["shells"]]
        return ShellWeights(np.asarray(rs, dtype=float), np.asarray(ws, dtype=complex))
    if kind == "circle_uniform":
        return CircleUniform(float(d["radius"]))
    if kind == "lebesgue":
        return lebesgue()
    if kind == "radial_j0":
        return radial_j0(float(d["r_prime"]))
    if kind == "plane_character":
        return PlaneCharacter((d["x"][0], d["x"][1]))
    raise ContractError(f"unknown measure type {kind!r}")
