"""Parameter sweeps over qubit count and coupling with reproducible disorder ensembles.

Every realisation gets its own seed derived from ``(master_seed, n, J/delta, r)``,
and all per-point aggregates are merged in realisation order, so a sweep
gives bit-identical statistics regardless of worker count or resumption.
"""

from __future__ import annotations

import json
import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from math import comb
from pathlib import Path
from typing import Any, Iterable, Sequence

import numpy as np

from . import __version__
from .basis import central_band
from .dynamics import half_life, spread_entropy, survival_probability, choose_initial_states
from .lattice import build_lattice, lattice_for
from .model import ModelParams, build_band_hamiltonian, derive_seed, draw_realization
from .spectra import (
    DEFAULT_BINS,
    DEFAULT_WINDOW,
    EigensolverError,
    SpectralResult,
    central_window,
    eigendecompose,
    eta_parameter,
    find_border,
    flip_sectors,
    spacing_histogram,
)
from .states import LdosProfile, eigenstate_entropy, fit_profile, ldos_samples

log = logging.getLogger(__name__)

ANALYSES = frozenset({"eta", "sq", "ldos", "evolve", "maps"})
VECTOR_ANALYSES = frozenset({"sq", "ldos", "evolve", "maps"})
DEFAULT_VECTOR_CAP = 4000
ETA_THRESHOLD = 0.3
SQ_THRESHOLD = 1.0
CHECKPOINT_FORMAT = "sgqc-sweep-checkpoint"
DELTA0_OVER_J = 100.0


class CapExceeded(ValueError):
    pass


def model_params(
    n: int, coupling: float, delta_over_delta0: float, shape: tuple[int, int] | None = None
) -> ModelParams:
    """Parameters in the working energy unit.

    With ``delta > 0`` energies are in units of ``delta`` and ``coupling`` is
    ``J/delta``. With ``delta == 0`` energies are in units of ``J`` and
    ``coupling`` is read as ``J/delta0``.
    """
    if shape is not None:
        if shape[0] * shape[1] != n:
            raise ValueError(f"lattice {shape[0]}x{shape[1]} does not hold {n} qubits")
        lattice = build_lattice(*shape)
    else:
        lattice = lattice_for(n)
    if delta_over_delta0 > 0:
        return ModelParams(delta0=1.0 / delta_over_delta0, delta=1.0, j=coupling, lattice=lattice)
    delta0 = 1.0 / coupling if coupling > 0 else DELTA0_OVER_J
    return ModelParams(delta0=delta0, delta=0.0, j=1.0, lattice=lattice)


def scaled_window_spacings(levels: np.ndarray, fraction: float) -> np.ndarray:
    """Central-window spacings of one spectrum divided by its standard deviation.

    The spectral width sets the local level density up to a band-shape
    factor common to all realisations, which the pooled mean then removes.
    """
    levels = np.sort(np.asarray(levels, dtype=float))
    w = central_window(len(levels), fraction)
    width = levels.std()
    if width <= 0:
        raise ValueError("spectrum has zero width; spacings cannot be scaled")
    return np.diff(levels[w.start : w.stop]) / width


def unfold_pool(per_realization: Sequence[Sequence[np.ndarray]], unfolding: str = "scaled") -> list[np.ndarray]:
    """Unfold window spacings; returns one normalised array per realisation.

    Each realisation contributes one spacing array per symmetry block.
    ``scaled`` expects blocks from :func:`scaled_window_spacings` and rescales
    the whole pool to unit mean; ``window`` expects raw window spacings and
    divides each block by its own mean.
    """
    if unfolding == "window":
        return [np.concatenate([s / s.mean() for s in blocks]) for blocks in per_realization]
    if unfolding != "scaled":
        raise ValueError(f"unknown unfolding {unfolding!r}")
    flat = [np.concatenate(blocks) if blocks else np.zeros(0) for blocks in per_realization]
    total = np.concatenate(flat)
    if total.size == 0:
        raise ValueError("empty spacing pool")
    mean = total.mean()
    return [f / mean for f in flat]


def pooled_eta(per_realization: Sequence[Sequence[np.ndarray]], unfolding: str, bins: int, batches: int) -> dict[str, Any]:
    spacings = unfold_pool(per_realization, unfolding)
    pool = np.concatenate(spacings)
    hist = spacing_histogram(pool, bins)
    out = {"eta": eta_parameter(hist), "sample_count": int(pool.size), "histogram": hist.density.tolist()}
    groups = [g for g in np.array_split(np.arange(len(spacings)), min(batches, len(spacings))) if g.size]
    if len(groups) > 1:
        etas = [eta_parameter(spacing_histogram(np.concatenate([spacings[i] for i in g]), bins)) for g in groups]
        out["eta_err"] = float(np.std(etas, ddof=1) / math.sqrt(len(etas)))
    else:
        out["eta_err"] = float("nan")
    return out


def batch_stderr(values: Sequence[float], batches: int) -> float:
    values = np.asarray(values, dtype=float)
    groups = [g for g in np.array_split(values, min(batches, len(values))) if g.size]
    if len(groups) < 2:
        return float("nan")
    means = [g.mean() for g in groups]
    return float(np.std(means, ddof=1) / math.sqrt(len(means)))


@dataclass(frozen=True)
class SweepPlan:
    qubit_counts: tuple[int, ...]
    coupling_grid: tuple[float, ...]
    delta_over_delta0: float = 0.2
    realizations: int = 50
    master_seed: int = 2000
    analyses: frozenset[str] = frozenset({"eta"})
    window_fraction: float = DEFAULT_WINDOW
    bins: int = DEFAULT_BINS
    unfolding: str = "scaled"
    vector_cap: int = DEFAULT_VECTOR_CAP
    ldos_bins: int = 201
    sample_count: int = 200
    t_max: float = 10.0
    t_steps: int = 201
    entropy_samples: int = 20
    batches: int = 10
    shape: tuple[int, int] | None = None

    def __post_init__(self) -> None:
        if not self.qubit_counts or not self.coupling_grid:
            raise ValueError("sweep grid is empty")
        if self.realizations < 1:
            raise ValueError("need at least one realisation per grid point")
        unknown = set(self.analyses) - ANALYSES
        if unknown:
            raise ValueError(f"unknown analyses {sorted(unknown)}")
        if self.delta_over_delta0 < 0:
            raise ValueError("delta/delta0 must be non-negative")
        if self.shape is not None and tuple(self.qubit_counts) != (self.shape[0] * self.shape[1],):
            raise ValueError("an explicit lattice shape needs a single matching qubit count")

    def params(self, n: int, coupling: float) -> ModelParams:
        return model_params(n, coupling, self.delta_over_delta0, self.shape)

    @property
    def needs_vectors(self) -> bool:
        return bool(set(self.analyses) & VECTOR_ANALYSES)

    @property
    def times(self) -> np.ndarray:
        return np.linspace(0.0, self.t_max, self.t_steps)

    def seed(self, n: int, coupling: float, r: int) -> int:
        return derive_seed(self.master_seed, n, float(coupling), r)

    def check_caps(self) -> None:
        if not self.needs_vectors:
            return
        for n in self.qubit_counts:
            dim = comb(n, n // 2)
            if dim > self.vector_cap:
                raise CapExceeded(
                    f"n={n}: central band dimension {dim} exceeds the eigenvector cap {self.vector_cap}; "
                    f"use n <= 12 at desk scale or raise the cap"
                )

    def to_dict(self) -> dict[str, Any]:
        d = asdict(self)
        d["qubit_counts"] = list(self.qubit_counts)
        d["coupling_grid"] = list(self.coupling_grid)
        d["analyses"] = sorted(self.analyses)
        d["shape"] = list(self.shape) if self.shape else None
        return d

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "SweepPlan":
        d = dict(d)
        d["qubit_counts"] = tuple(d["qubit_counts"])
        d["coupling_grid"] = tuple(float(x) for x in d["coupling_grid"])
        d["analyses"] = frozenset(d["analyses"])
        d["shape"] = tuple(d["shape"]) if d.get("shape") else None
        return cls(**d)


def _ldos_range(n: int, params: ModelParams) -> float:
    # Eight times the expected rms off-diagonal row of the central band.
    k = n // 2
    nb = len(params.lattice.bonds)
    opposite = nb * 2 * k * (n - k) / (n * (n - 1))
    rms = params.j * math.sqrt(opposite / 3.0)
    return 8.0 * rms if rms > 0 else 1.0


def realization_task(plan: SweepPlan, n: int, coupling: float, r: int) -> dict[str, Any]:
    """All requested per-realisation quantities for one grid point."""
    seed = plan.seed(n, coupling, r)
    params = plan.params(n, coupling)
    real = draw_realization(params, seed)
    h = build_band_hamiltonian(real, central_band(n))
    out: dict[str, Any] = {"r": r, "seed": seed}
    try:
        result = eigendecompose(h, want_vectors=plan.needs_vectors)
        if "eta" in plan.analyses:
            blocks = flip_sectors(h)
            spectra = [result.eigenvalues] if blocks is None else [np.linalg.eigvalsh(b) for b in blocks]
            if plan.unfolding == "scaled":
                out["spacings"] = [scaled_window_spacings(lv, plan.window_fraction) for lv in spectra]
            else:
                out["spacings"] = []
                for lv in spectra:
                    w = central_window(len(lv), plan.window_fraction)
                    out["spacings"].append(np.diff(lv[w.start : w.stop]))
    except (EigensolverError, np.linalg.LinAlgError) as exc:
        out["error"] = str(exc)
        return out
    if "sq" in plan.analyses:
        out["sq"] = eigenstate_entropy(result, central_window(result, plan.window_fraction))
    if "ldos" in plan.analyses:
        offsets, weights, count = ldos_samples(result, plan.window_fraction)
        e_max = _ldos_range(n, params)
        hist, _ = np.histogram(offsets.ravel(), bins=plan.ldos_bins, range=(-e_max, e_max), weights=weights.ravel())
        out["ldos"] = hist
        out["ldos_count"] = count
        out["ldos_m2"] = float(np.sum(weights * offsets**2))
        out["ldos_mass"] = float(weights.sum())
    if "evolve" in plan.analyses:
        rng = np.random.Generator(np.random.PCG64(derive_seed(seed, 1)))
        regs = choose_initial_states(result, plan.sample_count, rng, plan.window_fraction)
        times = plan.times
        out["fidelity"] = survival_probability(result, regs, times).mean(axis=1)
        ent_regs = regs[: plan.entropy_samples]
        out["entropy"] = spread_entropy(result, ent_regs, times).mean(axis=1)
    return out


def _run_task(args: tuple[SweepPlan, int, float, int]) -> dict[str, Any]:
    return realization_task(*args)


@dataclass
class PointResult:
    n: int
    coupling: float
    realizations: int
    failed_seeds: list[int] = field(default_factory=list)
    eta: float | None = None
    eta_err: float | None = None
    sample_count: int | None = None
    eta_histogram: list[float] | None = None
    sq: float | None = None
    sq_err: float | None = None
    gamma_bw: float | None = None
    gamma_gauss: float | None = None
    fit_residuals: dict[str, float] | None = None
    preferred_fit: str | None = None
    ldos_edges: list[float] | None = None
    ldos_density: list[float] | None = None
    tau_chi: float | None = None
    fidelity: list[float] | None = None
    entropy: list[float] | None = None
    entropy_plateau: float | None = None

    @property
    def key(self) -> str:
        return point_key(self.n, self.coupling)


def point_key(n: int, coupling: float) -> str:
    return f"{n}:{float(coupling)!r}"


def _finite(x: float) -> float | None:
    return float(x) if np.isfinite(x) else None


def aggregate_point(plan: SweepPlan, n: int, coupling: float, parts: Sequence[dict[str, Any]]) -> PointResult:
    parts = sorted(parts, key=lambda p: p["r"])
    failed = [p["seed"] for p in parts if "error" in p]
    for p in parts:
        if "error" in p:
            log.warning("n=%d J=%g: realisation %d (seed %d) failed: %s", n, coupling, p["r"], p["seed"], p["error"])
    ok = [p for p in parts if "error" not in p]
    res = PointResult(n=n, coupling=float(coupling), realizations=len(ok), failed_seeds=failed)
    if not ok:
        return res
    if "eta" in plan.analyses:
        stats = pooled_eta([p["spacings"] for p in ok], plan.unfolding, plan.bins, plan.batches)
        res.eta = stats["eta"]
        res.eta_err = _finite(stats["eta_err"])
        res.sample_count = stats["sample_count"]
        res.eta_histogram = stats["histogram"]
    if "sq" in plan.analyses:
        values = [p["sq"] for p in ok]
        res.sq = float(np.mean(values))
        res.sq_err = _finite(batch_stderr(values, plan.batches))
    if "ldos" in plan.analyses:
        e_max = _ldos_range(n, plan.params(n, coupling))
        edges = np.linspace(-e_max, e_max, plan.ldos_bins + 1)
        total = np.sum([p["ldos"] for p in ok], axis=0)
        count = sum(p["ldos_count"] for p in ok)
        mass = sum(p["ldos_mass"] for p in ok)
        hist = total / count
        profile = LdosProfile(
            edges=edges,
            weights=hist,
            contributors=count,
            captured=float(total.sum() / mass),
            second_moment=sum(p["ldos_m2"] for p in ok) / mass,
        )
        try:
            fit_profile(profile)
            res.gamma_bw = profile.gamma_bw
            res.gamma_gauss = profile.gamma_gauss
            res.fit_residuals = profile.fit_residuals
            res.preferred_fit = profile.preferred_fit
        except (ValueError, RuntimeError) as exc:
            log.warning("n=%d J=%g: LDOS fit skipped: %s", n, coupling, exc)
        res.ldos_edges = edges.tolist()
        res.ldos_density = profile.density.tolist()
    if "evolve" in plan.analyses:
        fid = np.mean([p["fidelity"] for p in ok], axis=0)
        ent = np.mean([p["entropy"] for p in ok], axis=0)
        res.fidelity = fid.tolist()
        res.entropy = ent.tolist()
        res.tau_chi = _finite(half_life(plan.times, fid))
        res.entropy_plateau = float(ent[len(ent) // 2 :].mean())
    return res


@dataclass
class SweepResult:
    plan: SweepPlan
    points: dict[str, PointResult]
    provenance: dict[str, Any]

    def point(self, n: int, coupling: float) -> PointResult:
        return self.points[point_key(n, coupling)]

    def curve(self, n: int, attr: str) -> list[tuple[float, float]]:
        out = []
        for c in self.plan.coupling_grid:
            pt = self.points.get(point_key(n, c))
            if pt is None:
                continue
            v = getattr(pt, attr)
            if v is not None:
                out.append((c, v))
        return out

    def border(self, n: int, attr: str = "eta", threshold: float = ETA_THRESHOLD) -> float | None:
        try:
            return find_border(self.curve(n, attr), threshold)
        except ValueError:
            return None

    @property
    def borders(self) -> dict[int, dict[str, float | None]]:
        out = {}
        for n in self.plan.qubit_counts:
            out[n] = {
                "jc": self.border(n, "eta", ETA_THRESHOLD) if "eta" in self.plan.analyses else None,
                "jcs": self.border(n, "sq", SQ_THRESHOLD) if "sq" in self.plan.analyses else None,
            }
        return out

    def to_dict(self) -> dict[str, Any]:
        return {
            "format": CHECKPOINT_FORMAT,
            "version": 1,
            "plan": self.plan.to_dict(),
            "provenance": self.provenance,
            "points": {k: asdict(v) for k, v in self.points.items()},
            "borders": {str(n): b for n, b in self.borders.items()},
        }


def _load_checkpoint(path: Path, plan: SweepPlan) -> dict[str, PointResult]:
    data = json.loads(path.read_text())
    if data.get("format") != CHECKPOINT_FORMAT:
        raise ValueError(f"{path} is not a sweep checkpoint")
    if SweepPlan.from_dict(data["plan"]) != plan:
        raise ValueError(f"checkpoint {path} belongs to a different sweep plan")
    return {k: PointResult(**v) for k, v in data["points"].items()}


def _write_checkpoint(path: Path, result: SweepResult) -> None:
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(json.dumps(result.to_dict(), indent=1, allow_nan=False))
    os.replace(tmp, path)


def run_point(plan: SweepPlan, n: int, coupling: float, pool: ProcessPoolExecutor | None = None) -> PointResult:
    tasks = [(plan, n, coupling, r) for r in range(plan.realizations)]
    parts = list(pool.map(_run_task, tasks, chunksize=max(1, len(tasks) // 32))) if pool else [_run_task(t) for t in tasks]
    return aggregate_point(plan, n, coupling, parts)


def run_sweep(plan: SweepPlan, workers: int = 1, checkpoint: str | Path | None = None) -> SweepResult:
    """Run every grid point, flushing a checkpoint after each one when a path is given."""
    plan.check_caps()
    provenance = {
        "code_version": __version__,
        "master_seed": plan.master_seed,
        "seed_rule": "SeedSequence(master_seed, spawn_key=(n, float64 bits of J/delta, r))",
    }
    points: dict[str, PointResult] = {}
    path = Path(checkpoint) if checkpoint else None
    if path is not None and path.exists():
        points = _load_checkpoint(path, plan)
        log.info("resuming sweep from %s with %d finished points", path, len(points))
    result = SweepResult(plan=plan, points=points, provenance=provenance)
    pool = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        for n in plan.qubit_counts:
            for c in plan.coupling_grid:
                key = point_key(n, c)
                if key in points:
                    continue
                points[key] = run_point(plan, n, c, pool)
                log.info("finished n=%d J=%g", n, c)
                if path is not None:
                    _write_checkpoint(path, result)
    finally:
        if pool is not None:
            pool.shutdown()
    return result


def load_sweep(path: str | Path) -> SweepResult:
    data = json.loads(Path(path).read_text())
    plan = SweepPlan.from_dict(data["plan"])
    return SweepResult(
        plan=plan,
        points={k: PointResult(**v) for k, v in data["points"].items()},
        provenance=data.get("provenance", {}),
    )


# --- scaling laws --------------------------------------------------------------


def fit_power_law(x: Iterable[float], y: Iterable[float]) -> tuple[float, float]:
    """Least-squares slope and intercept of ``log y`` against ``log x``."""
    lx = np.log(np.asarray(list(x), dtype=float))
    ly = np.log(np.asarray(list(y), dtype=float))
    slope, intercept = np.polyfit(lx, ly, 1)
    return float(slope), float(intercept)


def border_constant(ns: Iterable[int], borders: Iterable[float]) -> float:
    """``C`` in ``J_c = C delta / n``, geometric mean of ``n * J_c``."""
    prod = np.asarray(list(ns), dtype=float) * np.asarray(list(borders), dtype=float)
    return float(np.exp(np.mean(np.log(prod))))


def slope_through_origin(x: Iterable[float], y: Iterable[float]) -> float:
    x = np.asarray(list(x), dtype=float)
    y = np.asarray(list(y), dtype=float)
    return float(np.dot(x, y) / np.dot(x, x))


def multi_qubit_spacing(
    n: int,
    realizations: int = 20,
    delta_over_delta0: float = 0.2,
    coupling: float = 0.0,
    master_seed: int = 2000,
) -> float:
    """Mean adjacent spacing of central-band levels, ``(E_max - E_min) / (D - 1)``, in units of delta.

    At zero coupling the levels are the register energies read off the band
    diagonal; otherwise the band Hamiltonian is diagonalised.
    """
    basis = central_band(n)
    if basis.dimension < 2:
        raise ValueError("band holds a single level")
    values = []
    for r in range(realizations):
        params = model_params(n, coupling, delta_over_delta0)
        real = draw_realization(params, derive_seed(master_seed, n, float(coupling), r, 2))
        h = build_band_hamiltonian(real, basis)
        levels = h.diag if coupling == 0 else eigendecompose(h, want_vectors=False).eigenvalues
        values.append((levels.max() - levels.min()) / (basis.dimension - 1))
    return float(np.mean(values))
