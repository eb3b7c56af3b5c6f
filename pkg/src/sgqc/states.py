"""Eigenstate structure: register probabilities, entropy and local density of states."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy import optimize

from .spectra import DEFAULT_WINDOW, SpectralResult, central_window

WEIGHT_CAPTURE = 0.99


def state_entropies(result: SpectralResult) -> np.ndarray:
    """``S_q(m) = -sum_i W_im log2 W_im`` for every eigenstate, with ``0 log 0 = 0``."""
    w = result.probabilities
    logw = np.log2(w, out=np.zeros_like(w), where=w > 0)
    return -np.sum(w * logw, axis=0)


def distribution_entropy(p: np.ndarray, axis: int = -1) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    logp = np.log2(p, out=np.zeros_like(p), where=p > 0)
    return -np.sum(p * logp, axis=axis)


def eigenstate_entropy(result: SpectralResult, window: range | None = None) -> float:
    """Mean eigenstate entropy over ``window`` (default: the central window)."""
    if result.eigenvectors is None:
        raise ValueError("eigenstate entropy needs eigenvectors")
    if window is None:
        window = central_window(result, DEFAULT_WINDOW)
    return float(state_entropies(result)[window.start : window.stop].mean())


def register_window(result: SpectralResult, fraction: float = DEFAULT_WINDOW) -> np.ndarray:
    """Register-state indices in the central window ranked by unperturbed energy."""
    if result.unperturbed is None:
        raise ValueError("result carries no unperturbed energies")
    order = np.argsort(result.unperturbed, kind="stable")
    w = central_window(len(order), fraction)
    return order[w.start : w.stop]


# --- local density of states -------------------------------------------------


def breit_wigner(e, gamma, center=0.0, area=1.0):
    e = np.asarray(e, dtype=float) - center
    return area * gamma / (2 * np.pi * (e * e + 0.25 * gamma * gamma))


def gaussian(e, width, center=0.0, area=1.0):
    """Normal density with standard deviation ``width``."""
    e = np.asarray(e, dtype=float) - center
    return area * np.exp(-0.5 * (e / width) ** 2) / (np.sqrt(2 * np.pi) * width)


@dataclass(frozen=True)
class FitResult:
    width: float
    center: float
    area: float
    residual: float


@dataclass
class LdosProfile:
    """Pooled local density of states on a symmetric energy grid.

    ``weights`` holds the pooled probability mass per bin divided by the
    number of contributing register states, so ``density`` integrates to
    the captured fraction of one state's weight.
    """

    edges: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)
    contributors: int
    captured: float
    second_moment: float
    gamma_bw: float = float("nan")
    gamma_gauss: float = float("nan")
    fit_residuals: dict[str, float] = field(default_factory=dict)
    preferred_fit: str = ""
    flags: tuple[str, ...] = ()

    @property
    def centered_energy_bins(self) -> np.ndarray:
        return 0.5 * (self.edges[1:] + self.edges[:-1])

    @property
    def density(self) -> np.ndarray:
        return self.weights / np.diff(self.edges)

    @classmethod
    def from_samples(
        cls,
        offsets: np.ndarray,
        weights: np.ndarray,
        contributors: int,
        bins: int,
        e_max: float,
    ) -> "LdosProfile":
        offsets = np.asarray(offsets, dtype=float).ravel()
        weights = np.asarray(weights, dtype=float).ravel()
        hist, edges = np.histogram(offsets, bins=bins, range=(-e_max, e_max), weights=weights)
        hist = hist / contributors
        total = weights.sum() / contributors
        captured = float(hist.sum() / total) if total > 0 else 0.0
        second = float(np.sum(weights * offsets**2) / weights.sum()) if total > 0 else 0.0
        flags = () if captured >= WEIGHT_CAPTURE else (f"only {captured:.4f} of the weight lies in the histogram",)
        return cls(
            edges=edges,
            weights=hist,
            contributors=contributors,
            captured=captured,
            second_moment=second,
            flags=flags,
        )


def ldos_samples(result: SpectralResult, fraction: float = DEFAULT_WINDOW) -> tuple[np.ndarray, np.ndarray, int]:
    """Energy offsets ``E_m - E_i`` and weights ``W_im`` for the central register states."""
    if result.eigenvectors is None:
        raise ValueError("local density of states needs eigenvectors")
    idx = register_window(result, fraction)
    w = result.eigenvectors[idx, :] ** 2
    offsets = result.eigenvalues[None, :] - result.unperturbed[idx, None]
    return offsets, w, len(idx)


def local_density_of_states(
    results: Sequence[SpectralResult],
    fraction: float = DEFAULT_WINDOW,
    bins: int = 201,
    e_max: float | None = None,
    fit: bool = True,
) -> LdosProfile:
    """Pool ``W_im`` at ``E_m - E_i`` over central register states and realisations, then fit.

    Without an explicit ``e_max`` the grid spans eight times the pooled
    root-mean-square offset, which for a fixed realisation equals the
    root-sum-square of the off-diagonal row.
    """
    chunks = [ldos_samples(r, fraction) for r in results]
    if not chunks:
        raise ValueError("no spectra supplied")
    offsets = np.concatenate([c[0].ravel() for c in chunks])
    weights = np.concatenate([c[1].ravel() for c in chunks])
    contributors = sum(c[2] for c in chunks)
    if e_max is None:
        rms = np.sqrt(np.sum(weights * offsets**2) / weights.sum())
        e_max = 8.0 * rms if rms > 0 else 1.0
    profile = LdosProfile.from_samples(offsets, weights, contributors, bins, e_max)
    if fit:
        fit_profile(profile)
    return profile


def _fit_region(profile: LdosProfile) -> tuple[np.ndarray, np.ndarray, float, float]:
    x = profile.centered_energy_bins
    y = profile.density
    if np.count_nonzero(y) < 10:
        raise ValueError("profile has fewer than 10 populated bins")
    peak = int(np.argmax(y))
    half = 0.5 * y[peak]
    above = np.flatnonzero(y >= half)
    fwhm = max(x[above[-1]] - x[above[0]], x[1] - x[0])
    sel = np.abs(x - x[peak]) <= 3.0 * fwhm
    return x[sel], y[sel], float(x[peak]), float(fwhm)


def _weighted_fit(model, x, y, p0, bounds) -> FitResult:
    # Poisson-like weighting of the binned mass, floored so empty tail bins still count.
    sigma = np.sqrt(np.maximum(y, 0.05 * y.max()))
    try:
        popt, _ = optimize.curve_fit(model, x, y, p0=p0, sigma=sigma, bounds=bounds, maxfev=20000)
    except (RuntimeError, ValueError) as exc:
        raise RuntimeError(f"LDOS fit diverged: {exc}") from exc
    residual = float(np.sum(((model(x, *popt) - y) / sigma) ** 2))
    return FitResult(width=float(popt[0]), center=float(popt[1]), area=float(popt[2]), residual=residual)


def fit_breit_wigner(profile: LdosProfile) -> FitResult:
    """Weighted least-squares Lorentzian over ``|E - peak| <= 3 FWHM``."""
    x, y, peak, fwhm = _fit_region(profile)
    span = x[-1] - x[0]
    return _weighted_fit(
        breit_wigner, x, y, p0=(fwhm, peak, 1.0), bounds=([1e-12, peak - span, 0.0], [np.inf, peak + span, np.inf])
    )


def fit_gaussian(profile: LdosProfile) -> FitResult:
    """Weighted least-squares normal density on the same region as the Lorentzian fit."""
    x, y, peak, fwhm = _fit_region(profile)
    span = x[-1] - x[0]
    return _weighted_fit(
        gaussian, x, y, p0=(fwhm / 2.355, peak, 1.0), bounds=([1e-12, peak - span, 0.0], [np.inf, peak + span, np.inf])
    )


def fit_profile(profile: LdosProfile) -> LdosProfile:
    bw = fit_breit_wigner(profile)
    ga = fit_gaussian(profile)
    profile.gamma_bw = bw.width
    profile.gamma_gauss = ga.width
    profile.fit_residuals = {"breit_wigner": bw.residual, "gaussian": ga.residual}
    profile.preferred_fit = "breit_wigner" if bw.residual <= ga.residual else "gaussian"
    return profile


def register_map(result: SpectralResult, count: int = 150) -> np.ndarray:
    """``count x count`` block of ``W``: rows are central eigenstates, columns central register states.

    Both axes are ordered by energy, eigenstates by eigenvalue and register
    states by unperturbed energy.
    """
    if result.eigenvectors is None:
        raise ValueError("register map needs eigenvectors")
    dim = result.dimension
    if not 1 <= count <= dim:
        raise ValueError(f"count must lie in [1, {dim}], got {count}")
    start = (dim - count) // 2
    eig = np.arange(start, start + count)
    reg = np.argsort(result.unperturbed, kind="stable")[start : start + count]
    return (result.eigenvectors[np.ix_(reg, eig)] ** 2).T
