"""Command-line front end.

Each subcommand writes one or more CSV files with a ``#`` metadata header
and a JSON summary into the output directory. The header carries the full
command line that regenerates the file.

Energies are in units of delta (of J when delta = 0), times in 1/delta.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import os
import shlex
import sys
from pathlib import Path
from typing import Any, Callable, Sequence

import numpy as np

from . import __version__
from .basis import central_band
from .dynamics import central_pair, explosion_map
from .ensemble import (
    CapExceeded,
    SweepPlan,
    border_constant,
    fit_power_law,
    model_params,
    multi_qubit_spacing,
    run_sweep,
)
from .model import build_band_hamiltonian, derive_seed, draw_realization, theory_estimates
from .spectra import EigensolverError, S0, band_density, eigendecompose, poisson_density, wigner_density
from .states import LdosProfile, breit_wigner, fit_breit_wigner, fit_gaussian, gaussian, register_map

OUT_ENV = "SGQC_OUT"
SCHEMA_ID = "sgqc-summary/1"
SUBCOMMANDS = ("spectrum", "pstats", "entropy", "ldos", "evolve", "map", "sweep", "border")

log = logging.getLogger("sgqc")


class ConfigError(ValueError):
    pass


# option name -> (converter for config-file values, is a list)
OPTIONS: dict[str, tuple[Callable[[str], Any], bool]] = {
    "n": (int, True),
    "rows": (int, False),
    "cols": (int, False),
    "delta_ratio": (float, False),
    "j_over_delta": (float, True),
    "nd": (int, False),
    "jc_constant": (float, False),
    "seed": (int, False),
    "window_fraction": (float, False),
    "bins": (int, False),
    "tmax": (float, False),
    "tsteps": (int, False),
    "threads": (int, False),
    "samples": (int, False),
    "count": (int, False),
    "vector_cap": (int, False),
    "unfolding": (str, False),
    "analyses": (str, False),
    "checkpoint": (str, False),
}

DEFAULTS: dict[str, dict[str, Any]] = {
    "spectrum": {"n": [16], "nd": 1, "bins": 400},
    "pstats": {"n": [12], "j_over_delta": [0.32], "nd": 50},
    "entropy": {"n": [12], "j_over_delta": [0.01, 0.02, 0.03, 0.04, 0.05, 0.07, 0.1], "nd": 20},
    "ldos": {"n": [12], "j_over_delta": [0.1], "nd": 20, "bins": 201},
    "evolve": {"n": [12], "j_over_delta": [0.4], "nd": 5, "tmax": 10.0, "tsteps": 201},
    "map": {"n": [12], "j_over_delta": [0.4], "tmax": 2.0, "tsteps": 150},
    "sweep": {"n": [6, 9, 12], "j_over_delta": [0.05, 0.1, 0.2, 0.3, 0.4], "nd": 50, "analyses": "eta,sq"},
    "border": {
        "n": [6, 9, 12],
        "j_over_delta": [0.01, 0.02, 0.03, 0.04, 0.05, 0.07, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.5, 0.6, 0.7, 0.8],
        "nd": 100,
    },
}
COMMON_DEFAULTS: dict[str, Any] = {
    "delta_ratio": 0.2,
    "nd": 50,
    "jc_constant": 3.3,
    "seed": 2000,
    "window_fraction": 0.0625,
    "bins": 40,
    "tmax": 10.0,
    "tsteps": 201,
    "threads": 1,
    "samples": 200,
    "count": 150,
    "vector_cap": 4000,
    "unfolding": "scaled",
    "analyses": "eta",
    "j_over_delta": [0.1],
}


def read_config_file(path: str | Path) -> dict[str, Any]:
    """Parse ``key = value`` lines; ``#`` starts a comment and list values are comma separated."""
    values: dict[str, Any] = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in OPTIONS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        conv, is_list = OPTIONS[key]
        try:
            values[key] = [conv(v) for v in value.replace(",", " ").split()] if is_list else conv(value)
        except ValueError as exc:
            raise ConfigError(f"{path}:{lineno}: bad value for {key}: {exc}") from exc
    return values


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("model and run options")
    g.add_argument("--n", type=int, action="append", help="qubit count (repeat for sweeps)")
    g.add_argument("--rows", type=int, help="lattice rows (with --cols, overrides --n)")
    g.add_argument("--cols", type=int, help="lattice columns")
    g.add_argument("--delta-ratio", type=float, help="detuning width over mean spacing, delta/delta0 (0 selects the delta=0 branch)")
    g.add_argument("--j-over-delta", type=float, action="append", help="coupling J/delta (repeat for grids); J/delta0 when delta=0")
    g.add_argument("--nd", type=int, help="disorder realisations per grid point")
    g.add_argument("--jc-constant", type=float, help="C in the chaos border estimate J_c = C delta / n")
    g.add_argument("--seed", type=int, help="master seed")
    g.add_argument("--window-fraction", type=float, help="half-width of the central window as a fraction of the band")
    g.add_argument("--bins", type=int, help="histogram bins")
    g.add_argument("--tmax", type=float, help="final time in units of 1/delta")
    g.add_argument("--tsteps", type=int, help="number of time points")
    g.add_argument("--samples", type=int, help="initial register states per realisation (evolve)")
    g.add_argument("--count", type=int, help="map size (map)")
    g.add_argument("--vector-cap", type=int, help="largest band dimension diagonalised with eigenvectors")
    g.add_argument("--unfolding", choices=("scaled", "window"), help="spacing unfolding procedure")
    g.add_argument("--analyses", help="comma list of eta,sq,ldos,evolve (sweep)")
    g.add_argument("--checkpoint", help="sweep checkpoint file (sweep, border)")
    g.add_argument("--out", help=f"output directory (default ${OUT_ENV} or ./sgqc_out)")
    g.add_argument("--config", help="key=value file; command-line flags take precedence")
    g.add_argument("--threads", type=int, help="worker processes")
    g.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="sgqc", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"sgqc {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    helps = {
        "spectrum": "density of register energies over all bands at J=0",
        "pstats": "level-spacing distribution P(s) and eta",
        "entropy": "eigenstate entropy S_q against coupling and the mixing border",
        "ldos": "local density of states with Breit-Wigner and Gaussian fits",
        "evolve": "survival probability F(t), entropy S(t) and tau_chi",
        "map": "register-state maps: W_im and the time explosion of a superposition",
        "sweep": "grid sweep over qubit counts and couplings with checkpointing",
        "border": "chaos and mixing borders J_c, J_cs against n with scaling fits",
    }
    for name in SUBCOMMANDS:
        sub.add_parser(name, parents=[common], help=helps[name], description=helps[name])
    return parser


def resolve_config(argv: Sequence[str]) -> tuple[argparse.Namespace, dict[str, Any]]:
    parser = build_parser()
    args = parser.parse_args(argv)
    values: dict[str, Any] = dict(COMMON_DEFAULTS)
    values.update(DEFAULTS[args.command])
    if args.config:
        values.update(read_config_file(args.config))
    for key in OPTIONS:
        v = getattr(args, key, None)
        if v is not None:
            values[key] = v
    if args.rows is not None or args.cols is not None:
        if args.rows is None or args.cols is None:
            raise ConfigError("--rows and --cols must be given together")
        values["n"] = [args.rows * args.cols]
    values["out"] = args.out or os.environ.get(OUT_ENV) or "sgqc_out"
    validate(args.command, values)
    return args, values


def validate(command: str, cfg: dict[str, Any]) -> None:
    if any(n < 2 for n in cfg["n"]):
        raise ConfigError("qubit counts must be at least 2")
    if cfg["delta_ratio"] < 0:
        raise ConfigError("--delta-ratio must be non-negative")
    if any(j < 0 for j in cfg["j_over_delta"]):
        raise ConfigError("couplings must be non-negative")
    if cfg["nd"] < 1:
        raise ConfigError("--nd must be at least 1")
    if not 0 < cfg["window_fraction"] <= 0.5:
        raise ConfigError("--window-fraction must lie in (0, 0.5]")
    if cfg["tsteps"] < 2 or cfg["tmax"] <= 0:
        raise ConfigError("need --tsteps >= 2 and --tmax > 0")
    if command not in ("sweep", "border", "entropy") and len(cfg["n"]) != 1:
        raise ConfigError(f"{command} takes a single --n")
    if command in ("pstats", "ldos", "evolve", "map") and len(cfg["j_over_delta"]) != 1:
        raise ConfigError(f"{command} takes a single --j-over-delta")


def canonical_command(command: str, cfg: dict[str, Any]) -> str:
    parts = ["sgqc", command]
    for key in OPTIONS:
        if key in ("threads", "checkpoint") or cfg.get(key) is None:
            continue
        flag = "--" + key.replace("_", "-")
        value = cfg[key]
        for v in value if isinstance(value, list) else [value]:
            parts += [flag, repr(v) if isinstance(v, float) else str(v)]
    parts += ["--out", cfg["out"]]
    return shlex.join(parts)


def _shape(cfg: dict[str, Any]) -> tuple[int, int] | None:
    return (cfg["rows"], cfg["cols"]) if cfg.get("rows") else None


def _units(cfg: dict[str, Any]) -> dict[str, str]:
    if cfg["delta_ratio"] > 0:
        return {"energy": "delta", "time": "1/delta", "coupling": "J/delta"}
    return {"energy": "J", "time": "1/J", "coupling": "J/delta0"}


def _clean(x: Any) -> Any:
    if isinstance(x, dict):
        return {str(k): _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    if isinstance(x, np.ndarray):
        return _clean(x.tolist())
    if isinstance(x, (np.floating, float)):
        return float(x) if math.isfinite(x) else None
    if isinstance(x, np.integer):
        return int(x)
    return x


class Emitter:
    """Writes self-describing CSV and JSON outputs for one command invocation."""

    def __init__(self, command: str, cfg: dict[str, Any]):
        self.command = command
        self.cfg = cfg
        self.out = Path(cfg["out"])
        self.out.mkdir(parents=True, exist_ok=True)
        self.cmdline = canonical_command(command, cfg)
        self.files: list[str] = []

    def header(self) -> list[str]:
        cfg = {k: v for k, v in self.cfg.items() if k not in ("threads",)}
        units = _units(self.cfg)
        return [
            f"sgqc {__version__}",
            f"command: {self.cmdline}",
            f"config: {json.dumps(_clean(cfg), sort_keys=True)}",
            f"units: energy={units['energy']} time={units['time']} coupling={units['coupling']}",
        ]

    def csv(self, name: str, columns: Sequence[str], rows: Sequence[Sequence[Any]], note: str = "") -> Path:
        path = self.out / name
        buf = io.StringIO()
        for line in self.header():
            buf.write(f"# {line}\n")
        if note:
            buf.write(f"# {note}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for row in rows:
            w.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else v for v in row])
        path.write_text(buf.getvalue())
        self.files.append(path.name)
        return path

    def matrix(self, name: str, matrix: np.ndarray, note: str) -> Path:
        cols = [f"c{j}" for j in range(matrix.shape[1])]
        return self.csv(name, cols, matrix.tolist(), note)

    def summary(self, results: dict[str, Any]) -> Path:
        doc = {
            "schema": SCHEMA_ID,
            "version": __version__,
            "subcommand": self.command,
            "command": self.cmdline,
            "config": _clean({k: v for k, v in self.cfg.items() if k != "threads"}),
            "units": _units(self.cfg),
            "results": _clean(results),
            "files": list(self.files),
        }
        path = self.out / f"{self.command}.json"
        path.write_text(json.dumps(doc, indent=2, sort_keys=True, allow_nan=False) + "\n")
        return path


def _plan(cfg: dict[str, Any], analyses: set[str], **extra: Any) -> SweepPlan:
    return SweepPlan(
        qubit_counts=tuple(cfg["n"]),
        coupling_grid=tuple(cfg["j_over_delta"]),
        delta_over_delta0=cfg["delta_ratio"],
        realizations=cfg["nd"],
        master_seed=cfg["seed"],
        analyses=frozenset(analyses),
        window_fraction=cfg["window_fraction"],
        bins=cfg["bins"] if "eta" in analyses else 40,
        unfolding=cfg["unfolding"],
        vector_cap=cfg["vector_cap"],
        sample_count=cfg["samples"],
        t_max=cfg["tmax"],
        t_steps=cfg["tsteps"],
        shape=_shape(cfg),
        **extra,
    )


# --- subcommands ------------------------------------------------------------


def cmd_spectrum(cfg: dict[str, Any], em: Emitter) -> dict[str, Any]:
    """Band structure of register energies at J=0 (one histogram over all 2^n states)."""
    n = cfg["n"][0]
    if n > 20:
        raise ConfigError("spectrum enumerates all 2^n states; use n <= 20")
    params = model_params(n, 0.0, cfg["delta_ratio"], _shape(cfg))
    reals = [draw_realization(params, derive_seed(cfg["seed"], n, 0.0, r)) for r in range(cfg["nd"])]
    bd = band_density(reals, bins=cfg["bins"])
    hist = bd.histogram
    em.csv(
        "spectrum_density.csv",
        ["energy_lo", "energy_hi", "density"],
        list(zip(hist.edges[:-1], hist.edges[1:], hist.density)),
        "density: states per unit energy per realisation, all bands pooled",
    )
    pooled_theory = math.sqrt(n / 12.0) * params.delta
    em.csv(
        "spectrum_bands.csv",
        ["k", "center", "states", "std", "std_uniform_theory"],
        [
            (k, float(c), int(cnt), float(s), pooled_theory if 0 < cnt else 0.0)
            for k, (c, cnt, s) in enumerate(zip(bd.band_centers, bd.band_counts, bd.band_std))
        ],
    )
    return {
        "n": n,
        "bands": n + 1,
        "band_std_central": float(bd.band_std[n // 2]),
        "band_std_theory": pooled_theory,
        "band_width_order_estimate": theory_estimates(params).band_width,
    }


def cmd_pstats(cfg: dict[str, Any], em: Emitter) -> dict[str, Any]:
    plan = _plan(cfg, {"eta"})
    res = run_sweep(plan, workers=cfg["threads"])
    n, j = plan.qubit_counts[0], plan.coupling_grid[0]
    p = res.point(n, j)
    edges = np.linspace(0.0, 4.0, plan.bins + 1)
    centers = 0.5 * (edges[1:] + edges[:-1])
    em.csv(
        f"pstats_n{n}.csv",
        ["s_lo", "s_hi", "s", "P", "P_poisson", "P_wigner"],
        list(zip(edges[:-1], edges[1:], centers, p.eta_histogram, poisson_density(centers), wigner_density(centers))),
    )
    return {
        "n": n,
        "j_over_delta": j,
        "eta": p.eta,
        "eta_err": p.eta_err,
        "sample_count": p.sample_count,
        "realization_count": p.realizations,
        "s0": S0,
        "failed_seeds": p.failed_seeds,
    }


def cmd_entropy(cfg: dict[str, Any], em: Emitter) -> dict[str, Any]:
    plan = _plan(cfg, {"sq"})
    res = run_sweep(plan, workers=cfg["threads"])
    rows, borders = [], {}
    for n in plan.qubit_counts:
        for j in plan.coupling_grid:
            p = res.point(n, j)
            rows.append((n, j, p.sq, p.sq_err if p.sq_err is not None else float("nan")))
        borders[n] = res.border(n, "sq", 1.0)
    em.csv("entropy.csv", ["n", "j_over_delta", "sq_mean", "sq_stderr"], rows)
    return {"jcs": borders, "realization_count": plan.realizations}


def cmd_ldos(cfg: dict[str, Any], em: Emitter) -> dict[str, Any]:
    plan = _plan(cfg, {"ldos"}, ldos_bins=cfg["bins"])
    res = run_sweep(plan, workers=cfg["threads"])
    n, j = plan.qubit_counts[0], plan.coupling_grid[0]
    p = res.point(n, j)
    edges = np.asarray(p.ldos_edges)
    density = np.asarray(p.ldos_density)
    x = 0.5 * (edges[1:] + edges[:-1])
    profile = LdosProfile(edges=edges, weights=density * np.diff(edges), contributors=1, captured=1.0, second_moment=0.0)
    out: dict[str, Any] = {"n": n, "j_over_delta": j, "realization_count": p.realizations}
    columns = ["energy", "density"]
    cols = [x, density]
    if p.gamma_bw is not None:
        bw, ga = fit_breit_wigner(profile), fit_gaussian(profile)
        columns += ["breit_wigner_fit", "gaussian_fit"]
        cols += [breit_wigner(x, bw.width, bw.center, bw.area), gaussian(x, ga.width, ga.center, ga.area)]
        out.update(
            gamma_bw=bw.width,
            gamma_gauss=ga.width,
            fit_residuals={"breit_wigner": bw.residual, "gaussian": ga.residual},
            preferred_fit="breit_wigner" if bw.residual <= ga.residual else "gaussian",
        )
    em.csv(f"ldos_n{n}.csv", columns, list(zip(*cols)), "energy is E_m - E_i measured from the unperturbed register energy")
    est = theory_estimates(plan.params(n, j))
    out["gamma_theory"] = est.gamma_theory
    out["crossover_j"] = est.crossover_j
    return out


def cmd_evolve(cfg: dict[str, Any], em: Emitter) -> dict[str, Any]:
    plan = _plan(cfg, {"evolve"}, entropy_samples=min(cfg["samples"], 20))
    res = run_sweep(plan, workers=cfg["threads"])
    n, j = plan.qubit_counts[0], plan.coupling_grid[0]
    p = res.point(n, j)
    em.csv(f"evolve_n{n}.csv", ["t", "fidelity", "entropy"], list(zip(plan.times, p.fidelity, p.entropy)))
    est = theory_estimates(plan.params(n, j))
    return {
        "n": n,
        "j_over_delta": j,
        "tau_chi": p.tau_chi,
        "tau_chi_theory": est.tau_chi_theory,
        "entropy_plateau": p.entropy_plateau,
        "realization_count": p.realizations,
    }


def cmd_map(cfg: dict[str, Any], em: Emitter) -> dict[str, Any]:
    n, j = cfg["n"][0], cfg["j_over_delta"][0]
    plan = _plan(cfg, {"maps"})
    plan.check_caps()
    params = plan.params(n, j)
    seed = plan.seed(n, j, 0)
    h = build_band_hamiltonian(draw_realization(params, seed), central_band(n))
    result = eigendecompose(h)
    count = min(cfg["count"], result.dimension)
    wmap = register_map(result, count)
    times = np.linspace(0.0, cfg["tmax"], cfg["tsteps"])
    pair = central_pair(result)
    emap = explosion_map(result, pair, times, count)
    em.matrix(f"map_register_n{n}.csv", wmap, "rows: central eigenstates by energy; columns: central register states by energy")
    em.matrix(f"map_explosion_n{n}.csv", emap, f"rows: {len(times)} times on [0, {cfg['tmax']}]; columns: register states by energy")
    rowmax = wmap.max(axis=1)
    return {
        "n": n,
        "j_over_delta": j,
        "seed": seed,
        "count": count,
        "rows_with_max_above_half": float(np.mean(rowmax > 0.5)),
        "initial_pair": list(pair),
        "final_entropy_bits": float(-(emap[-1][emap[-1] > 0] * np.log2(emap[-1][emap[-1] > 0])).sum()),
    }


def _parse_analyses(text: str) -> set[str]:
    return {a.strip() for a in text.split(",") if a.strip()}


def cmd_sweep(cfg: dict[str, Any], em: Emitter) -> dict[str, Any]:
    analyses = _parse_analyses(cfg["analyses"])
    plan = _plan(cfg, analyses)
    checkpoint = cfg.get("checkpoint") or str(Path(cfg["out"]) / "sweep_checkpoint.json")
    Path(checkpoint).parent.mkdir(parents=True, exist_ok=True)
    res = run_sweep(plan, workers=cfg["threads"], checkpoint=checkpoint)
    cols = ["n", "j_over_delta", "eta", "eta_err", "sq", "sq_err", "gamma_bw", "gamma_gauss", "preferred_fit", "tau_chi", "entropy_plateau"]
    rows = []
    for n in plan.qubit_counts:
        for j in plan.coupling_grid:
            p = res.point(n, j)
            rows.append([n, j] + [getattr(p, c) if getattr(p, c) is not None else "" for c in cols[2:]])
    em.csv("sweep.csv", cols, rows)
    return {"borders": res.borders, "checkpoint": str(checkpoint), "provenance": res.provenance}


def cmd_border(cfg: dict[str, Any], em: Emitter) -> dict[str, Any]:
    plan = _plan(cfg, {"eta", "sq"})
    res = run_sweep(plan, workers=cfg["threads"], checkpoint=cfg.get("checkpoint"))
    rows, jc_ok, jcs_ok = [], [], []
    for n in plan.qubit_counts:
        b = res.borders[n]
        est = theory_estimates(plan.params(n, 0.0), n, c=cfg["jc_constant"])
        dn = multi_qubit_spacing(n, realizations=cfg["nd"], delta_over_delta0=cfg["delta_ratio"], master_seed=cfg["seed"]) if cfg["delta_ratio"] > 0 else float("nan")
        rows.append((n, b["jc"] or float("nan"), b["jcs"] or float("nan"), dn, est.delta_band_n, est.jc_theory, est.jcs_theory))
        if b["jc"]:
            jc_ok.append((n, b["jc"]))
        if b["jcs"]:
            jcs_ok.append((n, b["jcs"]))
    em.csv("border.csv", ["n", "jc", "jcs", "delta_n_measured", "delta_n_estimate", "jc_theory", "jcs_theory"], rows)
    out: dict[str, Any] = {"borders": res.borders}
    if len(jc_ok) >= 2:
        slope, _ = fit_power_law(*zip(*jc_ok))
        out["jc_slope"] = slope
        out["jc_constant"] = border_constant(*zip(*jc_ok))
    if len(jcs_ok) >= 2:
        slope, _ = fit_power_law(*zip(*jcs_ok))
        out["jcs_slope"] = slope
        out["jcs_constant"] = border_constant(*zip(*jcs_ok))
    ratios = [res.borders[n]["jcs"] / res.borders[n]["jc"] for n in plan.qubit_counts if res.borders[n]["jc"] and res.borders[n]["jcs"]]
    if ratios:
        out["jcs_over_jc"] = ratios
    return out


COMMANDS: dict[str, Callable[[dict[str, Any], Emitter], dict[str, Any]]] = {
    "spectrum": cmd_spectrum,
    "pstats": cmd_pstats,
    "entropy": cmd_entropy,
    "ldos": cmd_ldos,
    "evolve": cmd_evolve,
    "map": cmd_map,
    "sweep": cmd_sweep,
    "border": cmd_border,
}


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args, cfg = resolve_config(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    except (ConfigError, OSError) as exc:
        build_parser().print_usage(sys.stderr)
        print(f"sgqc: error: {exc}", file=sys.stderr)
        return 2
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        em = Emitter(args.command, cfg)
        results = COMMANDS[args.command](cfg, em)
    except (CapExceeded, ConfigError) as exc:
        print(f"sgqc {args.command}: refused: {exc}", file=sys.stderr)
        return 2
    except EigensolverError as exc:
        print(f"sgqc {args.command}: failed: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # noqa: BLE001
        print(f"sgqc {args.command}: failed (master seed {cfg['seed']}): {exc}", file=sys.stderr)
        return 1
    path = em.summary(results)
    print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
