"""Cross-check lattice shell counts against dual-lattice intensity sums.

For each (lattice, k) pair: count points with squared norm k directly, then
recover the same number from the circle intensity of the dual lattice comb.
"""

import numpy as np

from circlelab.lattice import Lattice, Z2, verify_lattice_shelling

CASES = [
    (Z2, "Z^2", 1.0),
    (Z2, "Z^2", 2.0),
    (Z2, "Z^2", 1.44),  # no shell there: both sides vanish
    (Lattice(np.diag([1.0, 2.0])), "diag(1,2)", 1.0),
    (Lattice(np.diag([1.0, 2.0])), "diag(1,2)", 4.0),
]


def main():
    for L, name, k in CASES:
        report, _ = verify_lattice_shelling(L, k)
        print(f"{name:10s} {report}")


if __name__ == "__main__":
    main()
