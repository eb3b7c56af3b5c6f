"""Survival probability, spreading entropy and the chaotic time scale.

    python scripts/dynamics.py --n 9 --n 12
"""

import argparse

from sgqc.ensemble import SweepPlan, run_sweep, slope_through_origin

GRID = (0.2, 0.3, 0.4)
ND = {9: 60, 12: 10}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, action="append")
    args = ap.parse_args()
    inv_gamma, tau = [], []
    for n in args.n or [9, 12]:
        plan = SweepPlan(
            qubit_counts=(n,), coupling_grid=GRID, realizations=ND.get(n, 10), analyses=frozenset({"ldos", "evolve", "sq"}),
            t_max=40.0, t_steps=801, sample_count=200, entropy_samples=10,
        )
        res = run_sweep(plan)
        for j in GRID:
            p = res.point(n, j)
            inv_gamma.append(1 / p.gamma_bw)
            tau.append(p.tau_chi)
            print(
                f"n={n:2d}  J/delta={j:.2f}  tau_chi={p.tau_chi:.3f}  Gamma_BW={p.gamma_bw:.3f}  "
                f"tau*Gamma={p.tau_chi * p.gamma_bw:.3f}  S_plateau={p.entropy_plateau:.3f}  S_q={p.sq:.3f}"
            )
    print(f"tau_chi = {slope_through_origin(inv_gamma, tau):.3f} / Gamma_BW")


if __name__ == "__main__":
    main()
