"""Step size against time for a self-weighted agent between two fixed sinks.

Shows the polynomial (not geometric) approach to a non-consensus fixed point
when alpha is close to 1.
"""

import argparse

import numpy as np

from brod.core import ModelParams, validate_influence_matrix
from brod.dynamics import step


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--alphas", type=float, nargs="+", default=[1.1, 1.2, 1.5, 2.0])
    ap.add_argument("--steps", type=int, default=10_000)
    args = ap.parse_args()

    W = validate_influence_matrix([[1, 0, 0], [0, 1, 0], [0.4, 0.3, 0.3]])
    marks = [10 ** e for e in range(1, int(np.log10(args.steps)) + 1)]
    print("alpha  " + "  ".join(f"t={m:<8d}" for m in marks))
    for alpha in args.alphas:
        p = ModelParams(alpha, 0.5)
        x = np.array([0.0, 1.0, 0.9])
        row = []
        for t in range(1, args.steps + 1):
            nxt = step(x, W, p)
            if t in marks:
                row.append(float(np.max(np.abs(nxt - x))))
            x = nxt
        print(f"{alpha:5.2f}  " + "  ".join(f"{v:<10.2e}" for v in row))


if __name__ == "__main__":
    main()
