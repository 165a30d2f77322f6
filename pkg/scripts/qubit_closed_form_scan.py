#!/usr/bin/env python3
"""Scan unital qubit channels: multistart optimizer vs the exact closed form.

Walks a grid over the weight simplex (product parameterization), runs the
p-norm optimizer at each point, and reports the worst deviation from the
closed-form value together with where it occurred.
"""

import argparse
import math

import numpy as np

from qcc.pauli import build_basis, pauli_channel, qubit_nu_p_closed_form
from qcc.purity import OptimizerOptions, nu_p


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=20, help="grid points per parameter")
    ap.add_argument("--restarts", type=int, default=4)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--p", default="2,3,inf", help="comma-separated p values")
    args = ap.parse_args()

    ps = [math.inf if t == "inf" else float(t) for t in args.p.split(",")]
    basis = build_basis(2)
    opts = OptimizerOptions(restarts=args.restarts, tol=1e-13, seed=args.seed)
    grid = np.linspace(0.025, 0.975, args.n)

    print(f"{'p':>5}  {'worst |opt - exact|':>20}  worst weights")
    for p in ps:
        worst = 0.0
        worst_w = None
        for u in grid:
            for v in grid:
                w = np.array([(1 - u) * (1 - v), (1 - u) * v, u * (1 - v), u * v])
                got = nu_p(pauli_channel(basis, w).channel, p, opts).value
                dev = abs(got - qubit_nu_p_closed_form(w, p))
                if dev > worst:
                    worst, worst_w = dev, w
        label = "inf" if math.isinf(p) else f"{p:g}"
        print(f"{label:>5}  {worst:20.3e}  {np.round(worst_w, 4)}")


if __name__ == "__main__":
    main()
