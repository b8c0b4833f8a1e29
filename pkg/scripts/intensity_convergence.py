"""Print the intensity series for the square lattice at a few radii.

Shows the convergence shape the extrapolation model is built on: roughly
1/n^2 at shell radii, 1/n at non-shell radii.
"""

import argparse
import math

from circlelab import GAUSSIAN, ANNULUS, circle_intensity
from circlelab.estimator import default_schedule
from circlelab.lattice import Z2, shelling_measure


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--radii", default="1.0,1.2,2.23606797749979",
                    help="comma-separated target radii")
    ap.add_argument("--family", default="gaussian", choices=("gaussian", "annulus"))
    args = ap.parse_args()

    kind = GAUSSIAN if args.family == "gaussian" else ANNULUS
    n_max = max(default_schedule(kind).n_values)
    power = 2 if kind == GAUSSIAN else 4
    cutoff = n_max ** power * math.log(1e16) / math.pi ** 2
    mu = shelling_measure(Z2, cutoff)

    for r in (float(x) for x in args.radii.split(",")):
        est = circle_intensity(mu, r, kind)
        print(f"r = {r} ({args.family}):")
        for n, value, qerr in est.series.entries:
            print(f"  n={n:3d}  I_n = {value.real:+.12f}  quad_err = {qerr:.1e}")
        print(f"  limit = {est.limit.real:+.12f} +- {est.uncertainty:.2e} ({est.model})")
        print()


if __name__ == "__main__":
    main()
