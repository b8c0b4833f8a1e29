"""Sweep the Bessel orthogonality integral against its closed form.

For r' = r the values settle to 1; for r' != r they collapse like
exp(-n^2 (r - r')^2), which quickly drops below double precision.
"""

import argparse
import math

from scipy import special

from circlelab.estimator import j0_orthogonality


def closed_form(r, rp, n):
    return 2.0 * r * n * math.sqrt(math.pi) * float(special.i0e(2.0 * n * n * r * rp)) \
        * math.exp(-n * n * (r - rp) ** 2)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--r", type=float, default=1.0)
    ap.add_argument("--rp", default="1.0,1.1,1.3", help="comma-separated second radii")
    ap.add_argument("--ns", default="4,8,16", help="comma-separated family indices")
    args = ap.parse_args()

    print(f"{'r_prime':>8} {'n':>4} {'quadrature':>14} {'closed form':>14} {'rel diff':>10}")
    for rp in (float(x) for x in args.rp.split(",")):
        for n in (int(x) for x in args.ns.split(",")):
            v = j0_orthogonality(args.r, rp, n)
            cf = closed_form(args.r, rp, n)
            rel = abs(v - cf) / abs(cf)
            print(f"{rp:8.3f} {n:4d} {v:14.6e} {cf:14.6e} {rel:10.2e}")


if __name__ == "__main__":
    main()
