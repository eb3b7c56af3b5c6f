"""Local density of states widths against J/delta: Breit-Wigner and Gaussian fits.

    python scripts/ldos_widths.py --n 12 --nd 20
"""

import argparse

import numpy as np

from sgqc.ensemble import SweepPlan, fit_power_law, run_sweep, slope_through_origin

GRID = (0.03, 0.05, 0.07, 0.1, 0.15, 0.2, 0.3, 0.4)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=12)
    ap.add_argument("--nd", type=int, default=20)
    args = ap.parse_args()
    n = args.n
    res = run_sweep(SweepPlan(qubit_counts=(n,), coupling_grid=GRID, realizations=args.nd, analyses=frozenset({"ldos"})))
    for j in GRID:
        p = res.point(n, j)
        print(
            f"J/delta={j:5.2f}  Gamma_BW={p.gamma_bw:.4f}  a={p.gamma_bw / (j * j * n):.3f}  "
            f"sigma_gauss={p.gamma_gauss:.4f}  preferred={p.preferred_fit}"
        )
    weak = [j for j in GRID if j <= 0.1]
    gammas = np.array([res.point(n, j).gamma_bw for j in weak])
    a = slope_through_origin(np.array(weak) ** 2 * n, gammas)
    print(f"Breit-Wigner regime: a={a:.3f}  slope in J={fit_power_law(weak, gammas)[0]:.3f}")


if __name__ == "__main__":
    main()
