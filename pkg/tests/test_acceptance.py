"""End-to-end acceptance checks at desk scale.

Each test records one ``criterion N: PASS|FAIL`` line, printed in the
terminal summary, before asserting. Sweeps are shared through
session-scoped fixtures so every grid point is computed once.
"""

import math

import numpy as np
import pytest
from scipy.linalg import expm

from sgqc.basis import central_band, enumerate_band
from sgqc.dynamics import propagate
from sgqc.ensemble import SweepPlan, border_constant, fit_power_law, run_sweep, slope_through_origin
from sgqc.lattice import build_lattice, lattice_for
from sgqc.model import DisorderRealization, ModelParams, build_band_hamiltonian, build_full_hamiltonian, draw_realization
from sgqc.spectra import eigendecompose, spacing_statistics

REFERENCE_JC = {6: 0.59, 9: 0.35, 12: 0.28}
ETA_GRID = (0.01, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.5, 0.6, 0.7, 0.8, 1.0)
SQ_GRID = (0.005, 0.01, 0.02, 0.03, 0.04, 0.05, 0.07, 0.1, 0.15)
ETA_REALIZATIONS = {6: 2000, 9: 600, 12: 100}
SQ_REALIZATIONS = {6: 400, 9: 100, 12: 20}

pytestmark = pytest.mark.slow


def check(log, number, passed, detail):
    log.append(f"criterion {number}: {'PASS' if passed else 'FAIL'}  {detail}")
    assert passed, detail


def sweep(n, grid, realizations, **kw):
    return run_sweep(SweepPlan(qubit_counts=(n,), coupling_grid=tuple(grid), realizations=realizations, **kw))


@pytest.fixture(scope="session")
def eta_sweeps():
    return {n: sweep(n, ETA_GRID, nd, master_seed=101) for n, nd in ETA_REALIZATIONS.items()}


@pytest.fixture(scope="session")
def sq_sweeps():
    return {n: sweep(n, SQ_GRID, nd, master_seed=202, analyses=frozenset({"sq"})) for n, nd in SQ_REALIZATIONS.items()}


@pytest.fixture(scope="session")
def dynamics_sweeps():
    common = dict(master_seed=303, analyses=frozenset({"ldos", "evolve"}), t_max=10.0, t_steps=401, sample_count=200, entropy_samples=1)
    return {9: sweep(9, (0.2, 0.3, 0.4), 60, **common), 12: sweep(12, (0.2, 0.3, 0.4), 10, **common)}


def test_poisson_limit(acceptance_log):
    p = sweep(12, (0.01,), 100, master_seed=11).point(12, 0.01)
    check(acceptance_log, 1, p.eta > 0.9, f"n=12 J/delta=0.01 N_D=100: eta={p.eta:.3f} (need > 0.9)")


def test_wigner_dyson_limit(acceptance_log, eta_sweeps):
    p = eta_sweeps[12].point(12, 0.4)
    check(acceptance_log, 2, p.eta < 0.12, f"n=12 J/delta=0.4 N_D=100: eta={p.eta:.3f} (need < 0.12)")


def test_zero_detuning_chaos(acceptance_log):
    p = sweep(12, (0.01,), 100, master_seed=13, delta_over_delta0=0.0).point(12, 0.01)
    check(acceptance_log, 3, p.eta < 0.12, f"n=12 delta=0 N_D=100: eta={p.eta:.3f} (need < 0.12)")


def test_border_scaling(acceptance_log, eta_sweeps):
    ns = sorted(eta_sweeps)
    jc = [eta_sweeps[n].border(n, "eta", 0.3) for n in ns]
    slope, _ = fit_power_law(ns, jc)
    c = border_constant(ns, jc)
    within = all(abs(j / REFERENCE_JC[n] - 1) <= 0.35 for n, j in zip(ns, jc))
    passed = abs(slope + 1) <= 0.3 and 2.3 <= c <= 4.3 and within
    table = ", ".join(f"J_c({n})={j:.3f}" for n, j in zip(ns, jc))
    check(acceptance_log, 4, passed, f"{table}; slope={slope:.3f} (-1 +- 0.3), C={c:.2f} (2.3..4.3), each within 35%: {within}")


def test_mixing_border(acceptance_log, eta_sweeps, sq_sweeps):
    ratios = {}
    for n in sorted(sq_sweeps):
        ratios[n] = sq_sweeps[n].border(n, "sq", 1.0) / eta_sweeps[n].border(n, "eta", 0.3)
    passed = all(0.08 <= r <= 0.20 for r in ratios.values())
    table = ", ".join(f"n={n}: {r:.3f}" for n, r in ratios.items())
    check(acceptance_log, 5, passed, f"J_cs/J_c {table} (need 0.08..0.20)")


def test_breit_wigner_law(acceptance_log):
    grid = (0.05, 0.07, 0.1)
    res = sweep(12, grid, 20, master_seed=404, analyses=frozenset({"ldos"}))
    gammas = np.array([res.point(12, j).gamma_bw for j in grid])
    x = np.array(grid) ** 2 * 12
    a = slope_through_origin(x, gammas)
    slope, _ = fit_power_law(grid, gammas)
    passed = 0.9 <= a <= 1.8 and abs(slope - 2.0) <= 0.3
    widths = ", ".join(f"{g:.4f}" for g in gammas)
    check(acceptance_log, 6, passed, f"Gamma_BW=[{widths}]: a={a:.3f} (0.9..1.8), slope in J={slope:.3f} (2 +- 0.3)")


def test_gaussian_crossover(acceptance_log, dynamics_sweeps):
    p = dynamics_sweeps[12].point(12, 0.4)
    bw, ga = p.fit_residuals["breit_wigner"], p.fit_residuals["gaussian"]
    check(acceptance_log, 7, ga < bw, f"n=12 J/delta=0.4: Gaussian residual {ga:.3g} vs Breit-Wigner {bw:.3g}")


def test_chaotic_time_scale(acceptance_log, dynamics_sweeps):
    inv_gamma, tau = [], []
    for n, res in dynamics_sweeps.items():
        for j in res.plan.coupling_grid:
            p = res.point(n, j)
            inv_gamma.append(1.0 / p.gamma_bw)
            tau.append(p.tau_chi)
    slope = slope_through_origin(inv_gamma, tau)
    check(acceptance_log, 8, 0.9 <= slope <= 1.7, f"tau_chi vs 1/Gamma over n in (9, 12), J/delta in (0.2, 0.3, 0.4): slope={slope:.3f} (0.9..1.7)")


def test_entropy_saturation(acceptance_log):
    res = sweep(
        12, (0.4,), 5, master_seed=505, analyses=frozenset({"sq", "evolve"}),
        t_max=40.0, t_steps=81, sample_count=20, entropy_samples=20,
    )
    p = res.point(12, 0.4)
    ratio = p.entropy_plateau / p.sq
    check(acceptance_log, 9, abs(ratio - 1) <= 0.15, f"n=12 J/delta=0.4: plateau={p.entropy_plateau:.3f}, S_q={p.sq:.3f}, ratio={ratio:.3f} (1 +- 0.15)")


def test_property_suite(acceptance_log, rng):
    failures = []

    def require(ok, what):
        if not ok:
            failures.append(what)

    p12 = ModelParams(delta0=5.0, delta=1.0, j=0.3, lattice=lattice_for(12))
    h = build_band_hamiltonian(draw_realization(p12, 1), central_band(12))
    r = eigendecompose(h)
    dense, a, e = h.to_dense(), r.eigenvectors, r.eigenvalues
    require(np.linalg.norm(dense @ a - a * e, axis=0).max() <= 1e-10 * np.linalg.norm(dense), "eigenresidual")
    w = r.probabilities
    require(max(np.abs(w.sum(0) - 1).max(), np.abs(w.sum(1) - 1).max()) <= 1e-10, "W normalisation")
    amps = propagate(r, np.eye(r.dimension)[:, :8], np.array([0.5, 5.0, 50.0]))
    require(np.abs(np.sum(np.abs(amps) ** 2, axis=1) - 1).max() <= 1e-10, "unitarity")

    p6 = ModelParams(delta0=5.0, delta=1.0, j=0.5, lattice=lattice_for(6))
    h6 = build_band_hamiltonian(draw_realization(p6, 2), central_band(6))
    r6 = eigendecompose(h6)
    x0 = rng.normal(size=r6.dimension)
    x0 /= np.linalg.norm(x0)
    times = np.array([0.7, 3.1, 20.0])
    err = max(np.abs(amp - expm(-1j * t * h6.to_dense()) @ x0).max() for t, amp in zip(times, propagate(r6, x0, times)))
    require(r6.dimension <= 64 and err <= 1e-8, "matrix exponential oracle")

    for shape in [(1, 2), (1, 3), (2, 2)]:
        drawn = draw_realization(ModelParams(delta0=5.0, delta=1.0, j=0.4, lattice=build_lattice(*shape)), 3)
        # dyadic values make every sum exact, so equality is entrywise
        q = lambda x: np.round(x * 1024) / 1024
        real = DisorderRealization(drawn.params, q(drawn.gammas), q(drawn.couplings), drawn.seed)
        full = build_full_hamiltonian(real).toarray()
        for k in range(real.n + 1):
            b = enumerate_band(real.n, k)
            idx = b.states.astype(np.int64)
            require(np.array_equal(build_band_hamiltonian(real, b).to_dense(), full[np.ix_(idx, idx)]), f"projection {shape} k={k}")

    for shape in [(2, 2), (2, 3)]:
        params = ModelParams(delta0=100.0, delta=1.0, j=1.0, lattice=build_lattice(*shape))
        real = draw_realization(params, 4)
        n = params.n
        full = np.linalg.eigvalsh(build_full_hamiltonian(real).toarray())
        lo = sum(math.comb(n, q) for q in range(n // 2))
        cluster = full[lo : lo + math.comb(n, n // 2)]
        band = np.linalg.eigvalsh(build_band_hamiltonian(real, central_band(n)).to_dense())
        require(np.abs(cluster - band).max() <= 10 * (params.j / params.delta0) ** 2 * params.delta0, f"perturbative bound {shape}")

    poisson = spacing_statistics([np.cumsum(rng.exponential(size=100_001))], fraction=0.5).eta
    gaps = np.sqrt(-4.0 / np.pi * np.log(rng.random(100_000)))
    wigner = spacing_statistics([np.concatenate([[0.0], np.cumsum(gaps)])], fraction=0.5).eta
    require(abs(poisson - 1) <= 0.02, "Poisson eta")
    require(abs(wigner) <= 0.02, "Wigner eta")
    detail = f"eta(Poisson)={poisson:.4f}, eta(Wigner)={wigner:.4f}, matrix-exponential error={err:.1e}"
    check(acceptance_log, 10, not failures, detail + (f"; failed: {failures}" if failures else ""))
