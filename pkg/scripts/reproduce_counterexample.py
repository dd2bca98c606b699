"""Run the built-in six-agent counterexample and save its trajectory.

    python3 scripts/reproduce_counterexample.py --out results/example1.csv
"""

import argparse
import sys
from pathlib import Path

from brod.core import example1
from brod.dynamics import Status, simulate, write_trajectory_csv


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--alpha", type=float, default=0.5)
    ap.add_argument("--beta", type=float, default=0.4)
    ap.add_argument("--out", type=Path, default=Path("results/example1.csv"))
    args = ap.parse_args()

    inst = example1(alpha=args.alpha, beta=args.beta)
    res = simulate(inst.x0, inst.W, inst.params)
    args.out.parent.mkdir(parents=True, exist_ok=True)
    write_trajectory_csv(res, args.out)
    print(f"status={res.status.value} period={res.period} steps={res.iterations}")
    tail = res.history[-(res.period or 1):]
    for t, x in zip(range(res.iterations - len(tail) + 1, res.iterations + 1), tail):
        print(t, " ".join(f"{v:.6f}" for v in x))
    print(f"trajectory written to {args.out}")
    return 0 if res.status is Status.OSCILLATING else 1


if __name__ == "__main__":
    sys.exit(main())
