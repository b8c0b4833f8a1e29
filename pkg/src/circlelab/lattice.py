"""2-D lattices, shell enumeration and the sum-of-two-squares function.

The shelling function of a lattice L counts points at squared distance k from
the origin; for Z^2 this is the classical r_2, computed here by two
independent routes (direct enumeration and the mod-4 divisor formula) that
cross-validate each other.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import ContractError, DomainError

DEFAULT_GROUP_TOL = 1e-9


@dataclass(frozen=True)
class Lattice:
    """Full-rank lattice with generator columns; det is cached on creation."""

    basis: np.ndarray
    det: float = None

    def __post_init__(self):
        b = np.asarray(self.basis, dtype=float)
        if b.shape != (2, 2):
            raise ContractError("basis must be a 2x2 matrix (columns generate)")
        d = float(np.linalg.det(b))
        if abs(d) < 1e-300:
            raise ContractError("basis is singular")
        object.__setattr__(self, "basis", b)
        object.__setattr__(self, "det", abs(d))

    def gram(self):
        return self.basis.T @ self.basis


Z2 = Lattice(np.eye(2))


def dual(L):
    """Dual lattice: inverse-transpose basis, so dual points pair integrally."""
    return Lattice(np.linalg.inv(L.basis).T)


@dataclass(frozen=True)
class ShellTable:
    """Squared norms (strictly increasing) with point multiplicities."""

    sq_norms: np.ndarray
    multiplicities: np.ndarray
    group_tol: float

    def radii(self):
        return np.sqrt(self.sq_norms)

    def multiplicity_at(self, k, tol=None):
        tol = self.group_tol if tol is None else tol
        hits = np.abs(self.sq_norms - k) <= tol
        return int(self.multiplicities[hits][0]) if np.any(hits) else 0


def _enumerate_sq_norms(L, max_sq_norm):
    """Squared norms of all lattice points in the closed disk of radius sqrt(max)."""
    if max_sq_norm < 0:
        raise ContractError("max_sq_norm must be >= 0")
    smin = float(np.min(np.linalg.svd(L.basis, compute_uv=False)))
    bound = int(math.floor(math.sqrt(max_sq_norm) / smin)) + 1
    i = np.arange(-bound, bound + 1)
    ii, jj = np.meshgrid(i, i, indexing="ij")
    coeffs = np.stack([ii.ravel(), jj.ravel()])
    pts = L.basis @ coeffs
    sq = pts[0] ** 2 + pts[1] ** 2
    return sq[sq <= max_sq_norm + 1e-12], coeffs


def shells(L, max_sq_norm, group_tol=DEFAULT_GROUP_TOL):
    """Group lattice points with ||p||^2 <= max_sq_norm by squared norm.

    Lattices with an integral Gram matrix are grouped by exact integer squared
    norm; otherwise grouping uses ``group_tol`` on squared norms and a norm gap
    below 10*group_tol raises an ambiguity error.
    """
    if not group_tol > 0:
        raise ContractError("group_tol must be positive")
    gram = L.gram()
    gram_int = np.round(gram)
    if np.max(np.abs(gram - gram_int)) <= 1e-12:
        _, coeffs = _enumerate_sq_norms(L, max_sq_norm)
        a, b, c = int(gram_int[0, 0]), int(gram_int[0, 1]), int(gram_int[1, 1])
        q = a * coeffs[0] ** 2 + 2 * b * coeffs[0] * coeffs[1] + c * coeffs[1] ** 2
        q = q[q <= int(math.floor(max_sq_norm + 1e-12))]
        counts = np.bincount(q.astype(np.int64))
        sq = np.nonzero(counts)[0].astype(float)
        mult = counts[counts > 0]
        return ShellTable(sq, mult.astype(np.int64), group_tol)

    sq, _ = _enumerate_sq_norms(L, max_sq_norm)
    sq = np.sort(sq)
    gaps = np.diff(sq)
    breaks = gaps > group_tol
    inner = gaps[(gaps > group_tol)]
    if len(inner) and np.min(inner) < 10.0 * group_tol:
        raise ContractError(
            f"shell norm gap {np.min(inner):.3e} is within 10x group_tol; "
            "shrink group_tol or accept merged shells")
    idx = np.concatenate([[0], np.cumsum(breaks)])
    n_groups = idx[-1] + 1
    out_sq = np.zeros(n_groups)
    mult = np.zeros(n_groups, dtype=np.int64)
    np.add.at(out_sq, idx, sq)
    np.add.at(mult, idx, 1)
    return ShellTable(out_sq / mult, mult, group_tol)


def r2(m):
    """card{(k,l) in Z^2 : k^2 + l^2 = m}, by direct enumeration."""
    if m < 0 or m != int(m):
        raise DomainError("r2 is defined for nonnegative integers")
    m = int(m)
    if m == 0:
        return 1
    total = 0
    k = 0
    while k * k <= m:
        rem = m - k * k
        l = math.isqrt(rem)
        if l * l == rem:
            # sign choices for (k, l)
            total += (2 if k else 1) * (2 if l else 1)
        k += 1
    return total


def r2_divisor(m):
    """4 * (d_1(m) - d_3(m)), divisors counted mod 4; defined for m >= 1."""
    if m < 1 or m != int(m):
        raise DomainError("the divisor formula is stated for positive integers")
    m = int(m)
    d1 = d3 = 0
    d = 1
    while d * d <= m:
        if m % d == 0:
            for e in {d, m // d}:
                if e % 4 == 1:
                    d1 += 1
                elif e % 4 == 3:
                    d3 += 1
        d += 1
    return 4 * (d1 - d3)


def r2_sieve(max_m):
    """r2(m) for all 0 <= m <= max_m via a divisor-formula sieve (fast path)."""
    d1 = np.zeros(max_m + 1, dtype=np.int64)
    d3 = np.zeros(max_m + 1, dtype=np.int64)
    for d in range(1, max_m + 1, 2):
        if d % 4 == 1:
            d1[d::d] += 1
        else:
            d3[d::d] += 1
    out = 4 * (d1 - d3)
    out[0] = 1
    return out


def shelling_measure(L, max_sq_norm, group_tol=DEFAULT_GROUP_TOL):
    """delta_L restricted to the disk, packaged as shell weights."""
    from .measures import ShellWeights
    table = shells(L, max_sq_norm, group_tol)
    return ShellWeights(table.radii(), table.multiplicities.astype(complex))


@dataclass(frozen=True)
class ShellingReport:
    lattice_det: float
    k: float
    lhs_multiplicity: int
    rhs_limit: float
    rhs_uncertainty: float
    difference: float

    def __str__(self):
        return (f"shelling k={self.k}: count={self.lhs_multiplicity} "
                f"dual-sum={self.rhs_limit:.6f} +- {self.rhs_uncertainty:.2e} "
                f"(diff {self.difference:.2e})")


def verify_lattice_shelling(L, k, schedule=None):
    """Check r_L(k) = det(L)^-1 * (intensity of C_sqrt(k) for delta_{dual L}).

    lhs counts lattice points with squared norm k; rhs runs the Gaussian-family
    intensity estimator over the dual-lattice shells.
    """
    from . import estimator
    from .circles import GAUSSIAN

    if not k > 0:
        raise ContractError("k must be positive")
    schedule = schedule or estimator.default_schedule(GAUSSIAN)
    lhs_table = shells(L, k + 1.0)
    lhs = lhs_table.multiplicity_at(k)
    n_max = max(schedule.n_values)
    # Gaussian factor exp(-pi^2 m / n^2): cutoff so the skipped tail is < 1e-14
    cutoff = (n_max ** 2) * math.log(1e16) / math.pi ** 2
    mu = shelling_measure(dual(L), cutoff)
    est = estimator.circle_intensity(mu, math.sqrt(k), GAUSSIAN, schedule)
    rhs = est.limit.real / L.det
    unc = est.uncertainty / L.det
    return ShellingReport(L.det, float(k), lhs, rhs, unc, abs(rhs - lhs)), est
