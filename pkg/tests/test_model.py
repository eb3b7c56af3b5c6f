from functools import reduce
from math import comb

import numpy as np
import pytest
from hypothesis import given, strategies as st

from sgqc.basis import central_band, enumerate_band
from sgqc.lattice import LatticeSpec, build_lattice, lattice_for
from sgqc.model import (
    DisorderRealization,
    ModelParams,
    build_band_hamiltonian,
    build_full_hamiltonian,
    derive_seed,
    draw_realization,
    theory_estimates,
)

SX = np.array([[0.0, 1.0], [1.0, 0.0]])
# bit value 1 is spin up (+1), so sigma^z is diag(-1, +1) on the bit basis
SZ = np.diag([-1.0, 1.0])
I2 = np.eye(2)


def site_operator(op, site, n):
    # qubit 0 is the least significant bit, i.e. the last Kronecker factor
    return reduce(np.kron, [op if q == site else I2 for q in reversed(range(n))])


def dense_oracle(real):
    n = real.n
    h = sum(g * site_operator(SZ, i, n) for i, g in enumerate(real.gammas))
    for (i, j), c in zip(real.params.lattice.bonds, real.couplings):
        h = h + c * site_operator(SX, i, n) @ site_operator(SX, j, n)
    return h


def dyadic(real):
    # values on a 2**-10 grid add exactly in any order, so entrywise equality is meaningful
    q = lambda x: np.round(x * 1024) / 1024
    return DisorderRealization(params=real.params, gammas=q(real.gammas), couplings=q(real.couplings), seed=real.seed)


def params(rows, cols, delta0=5.0, delta=1.0, j=0.3):
    return ModelParams(delta0=delta0, delta=delta, j=j, lattice=build_lattice(rows, cols))


def test_n2_band_matrix():
    real = draw_realization(params(1, 2), 7)
    h = build_band_hamiltonian(real, enumerate_band(2, 1))
    g0, g1 = real.gammas
    expected = np.array([[g0 - g1, real.couplings[0]], [real.couplings[0], g1 - g0]])
    assert np.array_equal(h.to_dense(), expected)


@pytest.mark.parametrize("shape", [(1, 2), (1, 3), (2, 2)])
def test_band_projection_matches_dense_projector_exactly(shape):
    real = dyadic(draw_realization(params(*shape), 11))
    oracle = dense_oracle(real)
    for k in range(real.n + 1):
        b = enumerate_band(real.n, k)
        idx = b.states.astype(np.int64)
        assert np.array_equal(build_band_hamiltonian(real, b).to_dense(), oracle[np.ix_(idx, idx)])


@pytest.mark.parametrize("shape", [(1, 2), (2, 2), (2, 3)])
def test_full_hamiltonian_matches_kronecker_oracle(shape):
    real = dyadic(draw_realization(params(*shape), 3))
    assert np.array_equal(build_full_hamiltonian(real).toarray(), dense_oracle(real))


def test_full_hamiltonian_single_qubit():
    lat = LatticeSpec(rows=1, cols=1, bonds=())
    real = draw_realization(ModelParams(delta0=2.0, delta=0.5, j=0.0, lattice=lat), 1)
    g = real.gammas[0]
    assert np.array_equal(build_full_hamiltonian(real).toarray(), np.diag([-g, g]))


def test_full_hamiltonian_n2_pauli_pairs():
    real = draw_realization(params(1, 2), 5)
    h = build_full_hamiltonian(real).toarray()
    c = real.couplings[0]
    assert h[0, 3] == h[3, 0] == c and h[1, 2] == h[2, 1] == c
    assert h[0, 1] == h[0, 2] == 0


def test_full_hamiltonian_cap():
    real = draw_realization(ModelParams(5.0, 1.0, 0.1, lattice_for(16)), 1)
    with pytest.raises(ValueError):
        build_full_hamiltonian(real)


@pytest.mark.parametrize("shape", [(2, 2), (1, 5), (2, 3)])
def test_projected_levels_track_full_spectrum(shape):
    # delta = 1, J / delta0 = 1e-2
    p = params(*shape, delta0=100.0, delta=1.0, j=1.0)
    real = draw_realization(p, 21)
    n = p.n
    full = np.linalg.eigvalsh(build_full_hamiltonian(real).toarray())
    bound = 10 * (p.j / p.delta0) ** 2 * p.delta0
    for k in range(n + 1):
        lo = sum(comb(n, q) for q in range(k))
        cluster = full[lo : lo + comb(n, k)]
        band = np.linalg.eigvalsh(build_band_hamiltonian(real, enumerate_band(n, k)).to_dense())
        assert np.max(np.abs(cluster - band)) <= bound


def test_zero_coupling_is_diagonal():
    real = draw_realization(params(3, 4, j=0.0), 2)
    h = build_band_hamiltonian(real, central_band(12))
    assert h.rows.size == 0
    assert np.array_equal(np.linalg.eigvalsh(h.to_dense()), np.sort(h.diag))


@given(st.integers(0, 2**32), st.sampled_from([(2, 2), (2, 3), (3, 3), (3, 4)]))
def test_band_hamiltonian_structure(seed, shape):
    real = draw_realization(params(*shape), seed)
    n = real.n
    h = build_band_hamiltonian(real, central_band(n))
    dense = h.to_dense()
    assert np.array_equal(dense, dense.T)
    assert np.all(h.rows < h.cols)
    per_row = np.count_nonzero(dense - np.diag(np.diag(dense)), axis=1)
    assert per_row.max() <= 2 * n
    assert np.all(np.isin(np.abs(h.values), np.abs(real.couplings)))


def test_dimension_mismatch():
    real = draw_realization(params(2, 3), 1)
    with pytest.raises(ValueError):
        build_band_hamiltonian(real, central_band(8))


def test_disorder_distribution():
    p = ModelParams(delta0=3.0, delta=0.8, j=0.5, lattice=lattice_for(100))
    draws = [draw_realization(p, derive_seed(9, r)) for r in range(100)]
    g = np.concatenate([d.gammas for d in draws])
    c = np.concatenate([d.couplings for d in draws])
    assert g.size >= 10**4
    assert abs(g.mean() - p.delta0) <= 3 * g.std(ddof=1) / np.sqrt(g.size)
    assert abs(g.var(ddof=1) / (p.delta**2 / 12) - 1) < 0.05
    assert np.all(np.abs(g - p.delta0) <= p.delta / 2)
    assert np.all(np.abs(c) <= p.j)
    assert abs(c.var(ddof=1) / (p.j**2 / 3) - 1) < 0.05


def test_seeding_is_reproducible():
    p = params(3, 3)
    a, b = draw_realization(p, 99), draw_realization(p, 99)
    assert np.array_equal(a.gammas, b.gammas) and np.array_equal(a.couplings, b.couplings)
    assert derive_seed(2000, 12, 0.3, 7) == derive_seed(2000, 12, 0.3, 7)
    assert derive_seed(2000, 12, 0.3, 7) != derive_seed(2000, 12, 0.3, 8)
    assert derive_seed(2000, 12, 0.3, 7) != derive_seed(2000, 12, 0.30000000000000004, 7)


def test_params_validation():
    with pytest.raises(ValueError):
        ModelParams(delta0=1.0, delta=-1.0, j=0.1, lattice=lattice_for(4))


def test_theory_examples():
    p15 = ModelParams(delta0=5.0, delta=1.0, j=0.08, lattice=lattice_for(15))
    assert theory_estimates(p15).gamma_theory == pytest.approx(0.1248, rel=1e-12)
    p16 = ModelParams(delta0=5.0, delta=1.0, j=0.1, lattice=lattice_for(16))
    assert theory_estimates(p16).jc_theory == pytest.approx(0.20625, rel=1e-12)
    big = theory_estimates(ModelParams(delta0=1.0, delta=1.0, j=0.1, lattice=lattice_for(4)), n=1000)
    assert big.delta_n == pytest.approx(1000 * 2.0**-1000, rel=1e-12)
    assert 1e-299 < big.delta_n < 1e-297


def test_theory_zero_detuning_branch():
    t = theory_estimates(ModelParams(delta0=100.0, delta=0.0, j=1.0, lattice=lattice_for(12)))
    assert t.gamma_theory == pytest.approx(np.sqrt(12))
    assert t.flags and t.jc_theory == 0
