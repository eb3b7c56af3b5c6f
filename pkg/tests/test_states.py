import numpy as np
import pytest
from hypothesis import given, strategies as st

from sgqc.basis import central_band
from sgqc.lattice import lattice_for
from sgqc.model import ModelParams, build_band_hamiltonian, draw_realization
from sgqc.spectra import SpectralResult, eigendecompose
from sgqc.states import (
    LdosProfile,
    distribution_entropy,
    eigenstate_entropy,
    fit_breit_wigner,
    fit_gaussian,
    fit_profile,
    local_density_of_states,
    register_map,
    state_entropies,
)


def spectrum(n, j, seed=4):
    p = ModelParams(delta0=5.0, delta=1.0, j=j, lattice=lattice_for(n))
    return eigendecompose(build_band_hamiltonian(draw_realization(p, seed), central_band(n)))


def profile_from_cdf(cdf, e_max=1.0, bins=201):
    edges = np.linspace(-e_max, e_max, bins + 1)
    weights = np.diff(cdf(edges))
    return LdosProfile(edges=edges, weights=weights, contributors=1, captured=float(weights.sum()), second_moment=0.0)


def test_entropy_examples():
    assert distribution_entropy(np.array([1.0, 0.0])) == 0.0
    assert distribution_entropy(np.array([0.5, 0.5])) == pytest.approx(1.0)
    assert distribution_entropy(np.full(8, 1 / 8)) == pytest.approx(3.0)


def test_unmixed_states_have_zero_entropy():
    r = spectrum(8, 0.0)
    assert np.all(state_entropies(r) == 0)
    assert eigenstate_entropy(r) == 0


def test_fully_mixed_pair():
    a = np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2)
    r = SpectralResult(eigenvalues=np.array([-1.0, 1.0]), eigenvectors=a, unperturbed=np.zeros(2))
    assert np.allclose(state_entropies(r), 1.0)


@given(st.integers(0, 2**32), st.floats(0.01, 1.0))
def test_probability_matrix_is_doubly_stochastic(seed, j):
    w = spectrum(6, j, seed).probabilities
    assert np.abs(w.sum(axis=0) - 1).max() <= 1e-10
    assert np.abs(w.sum(axis=1) - 1).max() <= 1e-10


def test_doubly_stochastic_n12():
    w = spectrum(12, 0.2).probabilities
    assert np.abs(w.sum(axis=0) - 1).max() <= 1e-10
    assert np.abs(w.sum(axis=1) - 1).max() <= 1e-10


def test_lorentzian_width_recovered():
    gamma = 0.1
    prof = profile_from_cdf(lambda e: np.arctan(2 * e / gamma) / np.pi)
    fit = fit_breit_wigner(prof)
    assert fit.width == pytest.approx(gamma, rel=0.02)
    assert fit.center == pytest.approx(0.0, abs=1e-3)
    assert fit_profile(prof).preferred_fit == "breit_wigner"


def test_gaussian_preferred_for_gaussian_input():
    from scipy.special import ndtr

    sd = 0.2
    prof = fit_profile(profile_from_cdf(lambda e: ndtr(e / sd)))
    assert prof.preferred_fit == "gaussian"
    assert fit_gaussian(prof).width == pytest.approx(sd, rel=0.02)


def test_ldos_mass_bookkeeping():
    results = [spectrum(8, 0.2, seed=s) for s in range(3)]
    prof = local_density_of_states(results)
    assert prof.captured >= 0.99
    assert np.sum(prof.weights) == pytest.approx(prof.captured)
    assert prof.gamma_bw > 0 and prof.gamma_gauss > 0
    assert not prof.flags


def test_register_map_at_zero_coupling_is_permutation():
    r = spectrum(8, 0.0)
    m = register_map(r, 40)
    assert m.shape == (40, 40)
    assert np.array_equal(m, np.eye(40))


def test_register_map_bounds():
    r = spectrum(6, 0.1)
    with pytest.raises(ValueError):
        register_map(r, 21)
