"""eta against J/delta for several qubit counts, plus the delta = 0 point.

    python scripts/spacing_crossover.py --n 12 --nd 100
"""

import argparse

from sgqc.ensemble import SweepPlan, run_sweep

GRID = (0.01, 0.02, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.4, 0.5)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, action="append")
    ap.add_argument("--nd", type=int, default=100)
    ap.add_argument("--unfolding", choices=("scaled", "window"), default="scaled")
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()
    for n in args.n or [12]:
        res = run_sweep(SweepPlan(qubit_counts=(n,), coupling_grid=GRID, realizations=args.nd, unfolding=args.unfolding), args.workers)
        for j in GRID:
            p = res.point(n, j)
            print(f"n={n:2d}  J/delta={j:5.2f}  eta={p.eta:6.3f} +- {p.eta_err:.3f}  N_S={p.sample_count}")
        print(f"n={n:2d}  J_c/delta={res.border(n, 'eta', 0.3):.3f}")
        zero = run_sweep(SweepPlan(qubit_counts=(n,), coupling_grid=(0.01,), realizations=args.nd, delta_over_delta0=0.0), args.workers)
        print(f"n={n:2d}  delta=0  eta={zero.point(n, 0.01).eta:.3f}")


if __name__ == "__main__":
    main()
