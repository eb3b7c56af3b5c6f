"""Time evolution of register states through the eigenbasis of the band Hamiltonian.

With ``A`` the real orthogonal eigenvector matrix and ``E`` the eigenvalues,
``chi(t) = A exp(-i E t) A^T chi(0)`` (hbar = 1). This is the same
probability ``F_ii0(t) = |<i|chi(t)>|^2`` as the double sum over
eigenstate pairs, at O(D^2) per time point instead of O(D^4).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .spectra import DEFAULT_WINDOW, SpectralResult
from .states import distribution_entropy, register_window

NORM_TOL = 1e-10


def default_times(t_max: float = 2.0, steps: int = 150) -> np.ndarray:
    return np.linspace(0.0, t_max, steps)


def log_times(t_min: float, t_max: float, steps: int) -> np.ndarray:
    """Zero followed by a geometric grid, for decays spanning several scales."""
    return np.concatenate([[0.0], np.geomspace(t_min, t_max, steps - 1)])


def half_life(times: np.ndarray, fidelity: np.ndarray, level: float = 0.5) -> float:
    """First time the curve drops to ``level``, interpolated linearly; NaN if it never does."""
    below = np.flatnonzero(fidelity <= level)
    if below.size == 0:
        return float("nan")
    k = below[0]
    if k == 0:
        return float(times[0])
    t0, t1 = times[k - 1], times[k]
    f0, f1 = fidelity[k - 1], fidelity[k]
    return float(t0 + (t1 - t0) * (f0 - level) / (f0 - f1))


@dataclass
class EvolutionTrace:
    times: np.ndarray = field(repr=False)
    fidelity: np.ndarray = field(repr=False)
    entropy: np.ndarray = field(repr=False)
    tau_chi: float
    initial_state: str
    fidelity_var_states: np.ndarray | None = field(default=None, repr=False)
    fidelity_var_realizations: np.ndarray | None = field(default=None, repr=False)


def basis_vector(dim: int, index: int) -> np.ndarray:
    v = np.zeros(dim)
    v[index] = 1.0
    return v


def propagate(result: SpectralResult, initial: np.ndarray, times: np.ndarray) -> np.ndarray:
    """Amplitudes ``chi_i(t)``, shape ``(len(times), D)`` for one state or ``(len(times), D, S)`` for ``S`` columns."""
    if result.eigenvectors is None:
        raise ValueError("time evolution needs eigenvectors")
    a = result.eigenvectors
    initial = np.asarray(initial)
    single = initial.ndim == 1
    x0 = initial[:, None] if single else initial
    norms = np.sum(np.abs(x0) ** 2, axis=0)
    if np.any(np.abs(norms - 1.0) > NORM_TOL):
        raise ValueError(f"initial state is not normalised (norms {norms})")
    coeff = a.T @ x0
    times = np.asarray(times, dtype=float)
    phase = np.exp(-1j * np.outer(times, result.eigenvalues))
    out = np.einsum("im,tm,ms->tis", a, phase, coeff, optimize=True)
    return out[:, :, 0] if single else out


def evolve_projection(
    result: SpectralResult,
    initial: np.ndarray | int,
    times: np.ndarray | None = None,
) -> EvolutionTrace:
    """Evolve a register state (index) or normalised vector and trace its survival and spread.

    ``fidelity`` is the probability on the largest initial component, which
    for a single register state ``i0`` is ``F_i0i0(t)``. ``entropy`` is the
    Shannon entropy (bits) of the full band distribution ``F_ii0(t)``.
    """
    times = default_times() if times is None else np.asarray(times, dtype=float)
    dim = result.dimension
    if isinstance(initial, (int, np.integer)):
        label = f"register:{int(initial)}"
        vec = basis_vector(dim, int(initial))
    else:
        vec = np.asarray(initial)
        label = "vector"
    home = int(np.argmax(np.abs(vec)))
    amps = propagate(result, vec, times)
    prob = np.abs(amps) ** 2
    fidelity = prob[:, home]
    return EvolutionTrace(
        times=times,
        fidelity=fidelity,
        entropy=distribution_entropy(prob, axis=1),
        tau_chi=half_life(times, fidelity),
        initial_state=label,
    )


def survival_probability(result: SpectralResult, registers: np.ndarray, times: np.ndarray) -> np.ndarray:
    """``F_i0i0(t)`` for each register index, shape ``(len(times), len(registers))``.

    Only the initial component is needed, so this costs O(D) per state and time.
    """
    w = result.eigenvectors[registers, :] ** 2
    phase = np.exp(-1j * np.outer(times, result.eigenvalues))
    return np.abs(phase @ w.T) ** 2


def spread_entropy(result: SpectralResult, registers: np.ndarray, times: np.ndarray, chunk: int = 16) -> np.ndarray:
    """``S(t)`` for each initial register index, shape ``(len(times), len(registers))``."""
    dim = result.dimension
    out = np.empty((len(times), len(registers)))
    for lo in range(0, len(registers), chunk):
        idx = registers[lo : lo + chunk]
        x0 = np.zeros((dim, len(idx)))
        x0[idx, np.arange(len(idx))] = 1.0
        prob = np.abs(propagate(result, x0, times)) ** 2
        out[:, lo : lo + chunk] = distribution_entropy(prob, axis=1)
    return out


def choose_initial_states(result: SpectralResult, count: int, rng: np.random.Generator, fraction: float = DEFAULT_WINDOW) -> np.ndarray:
    """Random distinct register states from the central window (by unperturbed energy)."""
    pool = register_window(result, fraction)
    count = min(count, len(pool))
    return np.sort(rng.choice(pool, size=count, replace=False))


def average_traces(
    results: Sequence[SpectralResult],
    sample_count: int,
    times: np.ndarray,
    seed: int,
    fraction: float = DEFAULT_WINDOW,
    with_entropy: bool = True,
) -> EvolutionTrace:
    """Average ``F_i0i0(t)`` and ``S(t)`` over random central initial states and realisations.

    The half-life is taken on the averaged curve. Both variance components
    are reported: across initial states within a realisation (averaged) and
    across realisation means.
    """
    rng = np.random.Generator(np.random.PCG64(seed))
    times = np.asarray(times, dtype=float)
    fid_means, ent_means, within = [], [], []
    for r in results:
        regs = choose_initial_states(r, sample_count, rng, fraction)
        f = survival_probability(r, regs, times)
        fid_means.append(f.mean(axis=1))
        within.append(f.var(axis=1))
        if with_entropy:
            ent_means.append(spread_entropy(r, regs, times).mean(axis=1))
    fidelity = np.mean(fid_means, axis=0)
    entropy = np.mean(ent_means, axis=0) if with_entropy else np.full(len(times), np.nan)
    return EvolutionTrace(
        times=times,
        fidelity=fidelity,
        entropy=entropy,
        tau_chi=half_life(times, fidelity),
        initial_state=f"average over {sample_count} central register states x {len(results)} realisations",
        fidelity_var_states=np.mean(within, axis=0),
        fidelity_var_realizations=np.var(fid_means, axis=0),
    )


def explosion_map(
    result: SpectralResult,
    initial: Sequence[int] | np.ndarray,
    times: np.ndarray | None = None,
    count: int = 150,
) -> np.ndarray:
    """``len(times) x count`` map of ``|<i|chi(t)>|^2`` over the central register states ordered by energy.

    ``initial`` is a pair of register indices, superposed with equal weight,
    or an explicit normalised vector.
    """
    dim = result.dimension
    times = default_times(2.0, count) if times is None else np.asarray(times, dtype=float)
    initial = np.asarray(initial)
    if initial.shape == (dim,) and initial.dtype.kind == "f":
        vec = initial
    else:
        vec = np.zeros(dim)
        vec[initial.astype(int)] = 1.0
        vec /= np.linalg.norm(vec)
    count = min(count, dim)
    start = (dim - count) // 2
    reg = np.argsort(result.unperturbed, kind="stable")[start : start + count]
    prob = np.abs(propagate(result, vec, times)) ** 2
    return prob[:, reg]


def central_pair(result: SpectralResult) -> tuple[int, int]:
    """The two register states adjacent in unperturbed energy at the band centre."""
    order = np.argsort(result.unperturbed, kind="stable")
    mid = len(order) // 2
    return int(order[mid - 1]), int(order[mid])
