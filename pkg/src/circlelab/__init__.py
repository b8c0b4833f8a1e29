"""circlelab: intensity of circles under 2-D Fourier transforms of measures.

Computes the mass a transformed strongly tempered measure assigns to a circle
of radius r, via approximate r-circle families, and cross-validates the
machinery against lattice shelling counts, Poisson summation and Bessel
orthogonality identities.
"""

from .circles import (ANNULUS, GAUSSIAN, CircleFamily, annulus_ft, disk_ft,
                      f_spatial, f_spatial_radial, f_spectral, validate_family)
from .errors import (AccuracyError, CircleLabError, ContractError, DomainError,
                     ValidationError)
from .estimator import (IntensityEstimate, IntensitySeries, Schedule,
                        circle_intensity, default_schedule, detect_circle,
                        extrapolate, intensity_at, j0_orthogonality,
                        poisson_selfcheck)
from .lattice import (Lattice, ShellTable, Z2, dual, r2, r2_divisor, r2_sieve,
                      shelling_measure, shells, verify_lattice_shelling)
from .measures import (CircleUniform, PlaneCharacter, PointSet, RadialDensity,
                       ShellWeights, group_points_to_shells, lebesgue,
                       measure_from_dict, measure_to_dict, pair_radial,
                       pair_radial_detailed, radial_j0)
from .quad import (QuadratureResult, integrate_adaptive, integrate_gaussian_tail,
                   oracle_defining_integral, oracle_with_error)
from .specfun import (EvalAccuracy, bessel_i0_scaled, bessel_j0, bessel_j1,
                      u_ratio)

__version__ = "0.1.0"
