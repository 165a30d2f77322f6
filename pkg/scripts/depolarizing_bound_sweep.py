#!/usr/bin/env python3
"""Sweep the depolarizing parameter and watch the sorted-weight upper bound.

For each b the script prints nu_inf of the single channel (which meets the
bound), the bound for the two-copy channel in the product Pauli basis (which
exceeds the true value), and the measured multiplicativity gap at p = 2.
"""

import argparse
import math

import numpy as np

from qcc.pauli import build_basis, depolarizing_weights, majorization_bound, pauli_channel, product_basis
from qcc.purity import OptimizerOptions, multiplicativity_gap, nu_p


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-d", type=int, default=2, help="single-copy dimension")
    ap.add_argument("--bs", default="0.1,0.3,0.5,0.7,0.9", help="comma-separated b values")
    ap.add_argument("--restarts", type=int, default=6)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    basis = build_basis(args.d)
    pbasis = product_basis(basis, basis)
    opts = OptimizerOptions(restarts=args.restarts, tol=1e-13, seed=args.seed)

    header = f"{'b':>5} {'nu_inf':>10} {'bound_1':>10} {'bound_2':>10} {'nu_inf_2':>10} {'slack_2':>10} {'gap_p2':>10}"
    print(header)
    for b in (float(t) for t in args.bs.split(",")):
        ch = pauli_channel(basis, depolarizing_weights(args.d, b))
        bound1 = majorization_bound(ch, math.inf).bound
        v1 = nu_p(ch.channel, math.inf, opts).value
        pair = pauli_channel(pbasis, np.kron(ch.weights, ch.weights))
        bound2 = majorization_bound(pair, math.inf).bound
        v2 = nu_p(pair.channel, math.inf, opts).value
        gap = multiplicativity_gap(ch.channel, ch.channel, 2, opts).gap
        print(
            f"{b:5.2f} {v1:10.6f} {bound1:10.6f} {bound2:10.6f} {v2:10.6f} "
            f"{bound2 - v2:10.6f} {gap:10.2e}"
        )


if __name__ == "__main__":
    main()
