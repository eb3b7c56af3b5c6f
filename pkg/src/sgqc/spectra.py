"""Eigendecomposition and nearest-neighbour level-spacing statistics."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy import integrate, optimize

from .basis import enumerate_band
from .model import BandHamiltonian, DisorderRealization

S_MAX = 4.0
DEFAULT_BINS = 40
DEFAULT_WINDOW = 0.0625


def poisson_density(s):
    return np.exp(-np.asarray(s, dtype=float))


def wigner_density(s):
    s = np.asarray(s, dtype=float)
    return 0.5 * np.pi * s * np.exp(-0.25 * np.pi * s * s)


def _crossing() -> float:
    return optimize.brentq(lambda s: poisson_density(s) - wigner_density(s), 0.2, 1.0, xtol=1e-15)


S0 = _crossing()
# Closed-form integrals of both references over [0, S0].
POISSON_MASS = 1.0 - np.exp(-S0)
WIGNER_MASS = 1.0 - np.exp(-0.25 * np.pi * S0 * S0)


class EigensolverError(RuntimeError):
    def __init__(self, message: str, seed: int | None = None):
        super().__init__(f"{message} (realisation seed {seed})" if seed is not None else message)
        self.seed = seed


@dataclass(frozen=True)
class SpectralResult:
    """Eigenvalues in ascending order and, optionally, eigenvectors as columns.

    ``unperturbed`` holds the register-state energies (the Hamiltonian
    diagonal) in basis order, which the state diagnostics use as reference
    energies.
    """

    eigenvalues: np.ndarray = field(repr=False)
    eigenvectors: np.ndarray | None = field(default=None, repr=False)
    unperturbed: np.ndarray | None = field(default=None, repr=False)
    seed: int | None = None

    @property
    def dimension(self) -> int:
        return len(self.eigenvalues)

    @property
    def probabilities(self) -> np.ndarray:
        """``W[i, m] = |<register i | eigenstate m>|**2``."""
        if self.eigenvectors is None:
            raise ValueError("eigenvectors were not computed")
        return self.eigenvectors**2


def eigendecompose(h: BandHamiltonian | np.ndarray, want_vectors: bool = True) -> SpectralResult:
    if isinstance(h, BandHamiltonian):
        dense, diag, seed = h.to_dense(), h.diag, h.seed
    else:
        dense, diag, seed = np.asarray(h, dtype=float), None, None
        diag = np.diag(dense).copy()
    if dense.shape[0] < 1:
        raise ValueError("empty Hamiltonian")
    try:
        if want_vectors:
            vals, vecs = np.linalg.eigh(dense)
        else:
            vals, vecs = np.linalg.eigvalsh(dense), None
    except np.linalg.LinAlgError as exc:
        raise EigensolverError(f"eigendecomposition failed: {exc}", seed) from exc
    return SpectralResult(eigenvalues=vals, eigenvectors=vecs, unperturbed=diag, seed=seed)


def flip_sectors(h: BandHamiltonian) -> list[np.ndarray] | None:
    """Split the band Hamiltonian into global spin-flip parity blocks.

    Flipping every qubit maps band ``k`` to ``n - k`` and negates the
    detuning term, so it commutes with ``H`` only on the half-filled band
    when all register energies coincide (``delta == 0``). Returns the even
    and odd blocks in that case, else ``None``.
    """
    basis = h.basis
    if 2 * basis.k != basis.n or not np.allclose(h.diag, h.diag[0], rtol=0, atol=1e-12):
        return None
    full = np.uint64((1 << basis.n) - 1)
    partner = basis.lookup(basis.states ^ full)
    rep = np.flatnonzero(np.arange(basis.dimension) < partner)
    mate = partner[rep]
    dense = h.to_dense()
    even = dense[np.ix_(rep, rep)] + dense[np.ix_(rep, mate)]
    odd = dense[np.ix_(rep, rep)] - dense[np.ix_(rep, mate)]
    return [even, odd]


def decompose_levels(h: BandHamiltonian) -> list[SpectralResult]:
    """Eigenvalue sets suitable for spacing statistics, one per symmetry block."""
    blocks = flip_sectors(h)
    if blocks is None:
        return [eigendecompose(h, want_vectors=False)]
    out = []
    for block in blocks:
        r = eigendecompose(block, want_vectors=False)
        out.append(SpectralResult(eigenvalues=r.eigenvalues, seed=h.seed))
    return out


def central_window(result: SpectralResult | int, fraction: float = DEFAULT_WINDOW) -> range:
    """Index range of ``floor(2 * fraction * D) + 1`` levels centred on the median index."""
    dim = result if isinstance(result, (int, np.integer)) else result.dimension
    if not 0 < fraction <= 0.5:
        raise ValueError(f"window fraction must lie in (0, 0.5], got {fraction}")
    count = min(dim, int(np.floor(2 * fraction * dim)) + 1)
    if count < 2:
        raise ValueError(f"window of {count} level(s) in dimension {dim} holds no spacing")
    start = (dim - count) // 2
    return range(start, start + count)


@dataclass(frozen=True)
class Histogram:
    edges: np.ndarray
    density: np.ndarray

    @property
    def centers(self) -> np.ndarray:
        return 0.5 * (self.edges[1:] + self.edges[:-1])


@dataclass(frozen=True)
class SpacingStats:
    window_fraction: float
    spacings: np.ndarray = field(repr=False)
    histogram: Histogram = field(repr=False)
    eta: float
    sample_count: int
    realization_count: int


def window_spacings(levels: np.ndarray, fraction: float = DEFAULT_WINDOW) -> np.ndarray:
    """Spacings in the central window divided by their mean."""
    levels = np.sort(np.asarray(levels, dtype=float))
    window = central_window(len(levels), fraction)
    s = np.diff(levels[window.start : window.stop])
    mean = s.mean()
    if mean <= 0:
        raise ValueError("window is fully degenerate; spacings cannot be normalised")
    return s / mean


def spacing_histogram(spacings: np.ndarray, bins: int = DEFAULT_BINS, s_max: float = S_MAX) -> Histogram:
    """Density histogram on ``[0, s_max]``.

    The density is relative to *all* samples, so mass beyond ``s_max`` is
    lost from the histogram rather than redistributed into it.
    """
    spacings = np.asarray(spacings, dtype=float)
    if spacings.size == 0:
        raise ValueError("no spacings to histogram")
    counts, edges = np.histogram(spacings, bins=bins, range=(0.0, s_max))
    density = counts / (spacings.size * np.diff(edges))
    return Histogram(edges=edges, density=density)


def eta_parameter(hist: Histogram | Callable[[float], float]) -> float:
    """Position of a spacing density between Wigner-Dyson (0) and Poisson (1).

    Integrates ``P - P_W`` over ``[0, S0]`` relative to ``P_P - P_W``. A
    histogram bin straddling ``S0`` counts by its overlap fraction. A
    callable density is integrated by quadrature.
    """
    if callable(hist):
        mass = integrate.quad(hist, 0.0, S0, epsabs=1e-13, epsrel=1e-13)[0]
    else:
        lo, hi = hist.edges[:-1], hist.edges[1:]
        overlap = np.clip(np.minimum(hi, S0) - lo, 0.0, None)
        mass = float(np.sum(hist.density * overlap))
    return (mass - WIGNER_MASS) / (POISSON_MASS - WIGNER_MASS)


def spacing_statistics(
    results: Iterable[SpectralResult | np.ndarray],
    fraction: float = DEFAULT_WINDOW,
    bins: int = DEFAULT_BINS,
) -> SpacingStats:
    pooled = []
    count = 0
    for r in results:
        levels = r.eigenvalues if isinstance(r, SpectralResult) else np.asarray(r)
        pooled.append(window_spacings(levels, fraction))
        count += 1
    if not pooled:
        raise ValueError("no spectra supplied")
    s = np.concatenate(pooled)
    hist = spacing_histogram(s, bins)
    return SpacingStats(
        window_fraction=fraction,
        spacings=s,
        histogram=hist,
        eta=eta_parameter(hist),
        sample_count=s.size,
        realization_count=count,
    )


def moving_average(y: Sequence[float]) -> np.ndarray:
    """Three-point moving average; the two endpoints are left unchanged."""
    y = np.asarray(y, dtype=float)
    if y.size < 3:
        return y.copy()
    out = y.copy()
    out[1:-1] = (y[:-2] + y[1:-1] + y[2:]) / 3.0
    return out


def find_border(curve: Sequence[tuple[float, float]], threshold: float, smooth: bool = True) -> float:
    """Coupling at which ``curve`` first crosses ``threshold``, by linear interpolation."""
    pts = sorted((float(x), float(y)) for x, y in curve)
    if len(pts) < 2:
        raise ValueError("need at least two points to bracket a threshold")
    x = np.array([p[0] for p in pts])
    y = np.array([p[1] for p in pts])
    if smooth:
        y = moving_average(y)
    d = y - threshold
    for a in range(len(x) - 1):
        if d[a] == 0:
            return float(x[a])
        if d[a] * d[a + 1] < 0 or d[a + 1] == 0:
            return float(x[a] + (x[a + 1] - x[a]) * d[a] / (d[a] - d[a + 1]))
    raise ValueError(f"threshold {threshold} is not bracketed by the curve")


@dataclass(frozen=True)
class BandDensity:
    """Pooled density of all ``2**n`` register energies at zero coupling."""

    histogram: Histogram = field(repr=False)
    band_centers: np.ndarray
    band_counts: np.ndarray
    band_std: np.ndarray


def band_density(realizations: Sequence[DisorderRealization], bins: int = 400) -> BandDensity:
    if not realizations:
        raise ValueError("no realisations")
    n = realizations[0].n
    per_band: list[list[np.ndarray]] = [[] for _ in range(n + 1)]
    for real in realizations:
        if real.n != n:
            raise ValueError("realisations differ in qubit count")
        for k in range(n + 1):
            per_band[k].append(enumerate_band(n, k).spins() @ real.gammas)
    energies = [np.concatenate(b) for b in per_band]
    pooled = np.concatenate(energies)
    counts, edges = np.histogram(pooled, bins=bins)
    density = counts / (len(realizations) * np.diff(edges))
    delta0 = realizations[0].params.delta0
    return BandDensity(
        histogram=Histogram(edges=edges, density=density),
        band_centers=np.array([(2 * k - n) * delta0 for k in range(n + 1)]),
        band_counts=np.array([len(e) // len(realizations) for e in energies]),
        band_std=np.array([e.std() for e in energies]),
    )
