"""Chaos and mixing borders against qubit count, with the power-law fits.

Desk scale (default) takes a few minutes on one core:

    python scripts/border_scaling.py --out results/borders

``--full`` adds n = 15, 16 to the eta sweep (eigenvalues only) with the
realisation counts needed for a clean crossing; budget hours.
"""

import argparse
import json
from pathlib import Path

from sgqc.ensemble import SweepPlan, border_constant, fit_power_law, run_sweep

ETA_GRID = (0.01, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.5, 0.6, 0.7, 0.8, 1.0)
SQ_GRID = (0.005, 0.01, 0.02, 0.03, 0.04, 0.05, 0.07, 0.1, 0.15)
ETA_ND = {6: 2000, 9: 600, 12: 100, 15: 40, 16: 30}
SQ_ND = {6: 400, 9: 100, 12: 20}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="results/borders")
    ap.add_argument("--full", action="store_true", help="include n = 15, 16 in the eta sweep")
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--seed", type=int, default=101)
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    eta_ns = [6, 9, 12] + ([15, 16] if args.full else [])
    jc, jcs = {}, {}
    for n in eta_ns:
        plan = SweepPlan(qubit_counts=(n,), coupling_grid=ETA_GRID, realizations=ETA_ND[n], master_seed=args.seed)
        res = run_sweep(plan, workers=args.workers, checkpoint=out / f"eta_n{n}.json")
        jc[n] = res.border(n, "eta", 0.3)
        print(f"n={n:2d}  J_c/delta={jc[n]:.3f}", flush=True)
    for n in SQ_ND:
        plan = SweepPlan(
            qubit_counts=(n,), coupling_grid=SQ_GRID, realizations=SQ_ND[n], master_seed=args.seed + 1, analyses=frozenset({"sq"})
        )
        res = run_sweep(plan, workers=args.workers, checkpoint=out / f"sq_n{n}.json")
        jcs[n] = res.border(n, "sq", 1.0)
        print(f"n={n:2d}  J_cs/delta={jcs[n]:.4f}  J_cs/J_c={jcs[n] / jc[n]:.3f}", flush=True)

    slope, _ = fit_power_law(list(jc), list(jc.values()))
    summary = {
        "jc": jc,
        "jcs": jcs,
        "jc_slope": slope,
        "jc_constant": border_constant(list(jc), list(jc.values())),
        "jcs_over_jc": {n: jcs[n] / jc[n] for n in jcs},
    }
    (out / "summary.json").write_text(json.dumps(summary, indent=2))
    print(f"slope={summary['jc_slope']:.3f}  C={summary['jc_constant']:.2f}")


if __name__ == "__main__":
    main()
