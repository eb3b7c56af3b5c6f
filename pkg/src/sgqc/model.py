"""Disorder realisations, Hamiltonian assembly and closed-form estimates.

The Hamiltonian is ``H = sum_i G_i sz_i + sum_<ij> J_ij sx_i sx_j`` over
lattice bonds. Within one magnetisation band only the flip-flop part of
``sx_i sx_j`` survives the projection, so the band Hamiltonian couples two
register states exactly when they differ by exchanging opposite bits on a
bond.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .basis import BandBasis, bits
from .lattice import LatticeSpec

FULL_HAMILTONIAN_CAP = 14
JC_CONSTANT = 3.3
JCS_CONSTANT = 0.41
GAMMA_CONSTANT = 1.3
TAU_CONSTANT = 1.27


@dataclass(frozen=True)
class ModelParams:
    """Energy scales of one model instance.

    Energies are in whatever unit the caller picks; the analysis code uses
    ``delta = 1`` (units of the detuning width) or, when ``delta == 0``,
    ``j = 1`` (units of the coupling).
    """

    delta0: float
    delta: float
    j: float
    lattice: LatticeSpec

    def __post_init__(self) -> None:
        if self.delta < 0 or self.j < 0:
            raise ValueError("delta and j must be non-negative")
        if self.delta0 < 0:
            raise ValueError("delta0 must be non-negative")

    @property
    def n(self) -> int:
        return self.lattice.n

    @property
    def energy_unit(self) -> str:
        return "delta" if self.delta > 0 else "J"


@dataclass(frozen=True)
class DisorderRealization:
    params: ModelParams
    gammas: np.ndarray = field(repr=False)
    couplings: np.ndarray = field(repr=False)
    seed: int

    @property
    def n(self) -> int:
        return self.params.n


def _as_seed(seed: int) -> int:
    return int(seed) & 0xFFFF_FFFF_FFFF_FFFF


def draw_realization(params: ModelParams, seed: int) -> DisorderRealization:
    """Draw detunings ``G_i`` uniform in ``delta0 +- delta/2`` and bond couplings uniform in ``[-j, j]``.

    The stream is PCG64 keyed by the 64-bit seed, so a seed reproduces the
    same draw on every platform.
    """
    seed = _as_seed(seed)
    rng = np.random.Generator(np.random.PCG64(seed))
    u = rng.random(params.n)
    v = rng.random(len(params.lattice.bonds))
    gammas = params.delta0 + params.delta * (u - 0.5)
    couplings = params.j * (2.0 * v - 1.0)
    return DisorderRealization(params=params, gammas=gammas, couplings=couplings, seed=seed)


def derive_seed(master_seed: int, *key: int | float) -> int:
    """Deterministic 64-bit seed for one ensemble member.

    Floats in ``key`` are folded in through their IEEE-754 bit pattern, so
    ``derive_seed(s, 12, 0.3, 7)`` is stable across runs and processes.
    """
    words: list[int] = []
    for item in key:
        if isinstance(item, float):
            words.append(struct.unpack("<Q", struct.pack("<d", item))[0])
        else:
            words.append(int(item))
    ss = np.random.SeedSequence(entropy=_as_seed(master_seed), spawn_key=tuple(words))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


@dataclass(frozen=True)
class BandHamiltonian:
    """Sparse symmetric band Hamiltonian in the register basis.

    ``rows``, ``cols``, ``values`` list the upper triangle (``row < col``).
    """

    basis: BandBasis
    diag: np.ndarray = field(repr=False)
    rows: np.ndarray = field(repr=False)
    cols: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)
    seed: int | None = None

    @property
    def dimension(self) -> int:
        return len(self.diag)

    @property
    def offdiag(self) -> list[tuple[int, int, float]]:
        return list(zip(self.rows.tolist(), self.cols.tolist(), self.values.tolist()))

    def to_dense(self) -> np.ndarray:
        h = np.diag(self.diag.astype(float))
        h[self.rows, self.cols] = self.values
        h[self.cols, self.rows] = self.values
        return h

    def to_sparse(self) -> sp.csr_matrix:
        d = self.dimension
        r = np.concatenate([np.arange(d), self.rows, self.cols])
        c = np.concatenate([np.arange(d), self.cols, self.rows])
        v = np.concatenate([self.diag, self.values, self.values])
        return sp.csr_matrix((v, (r, c)), shape=(d, d))


def build_band_hamiltonian(real: DisorderRealization, basis: BandBasis) -> BandHamiltonian:
    if basis.n != real.n:
        raise ValueError(f"basis has n={basis.n} but realisation has n={real.n}")
    states = basis.states
    diag = basis.spins() @ real.gammas

    pos = np.arange(len(states))
    rows, cols, values = [], [], []
    for (i, j), coupling in zip(real.params.lattice.bonds, real.couplings):
        flip = np.uint64((1 << i) | (1 << j))
        bi = (states >> np.uint64(i)) & np.uint64(1)
        bj = (states >> np.uint64(j)) & np.uint64(1)
        # Upper triangle only: states are ascending, so partner > state <=> col > row.
        sel = (bi != bj) & ((states ^ flip) > states)
        partner = basis.lookup(states[sel] ^ flip)
        rows.append(pos[sel])
        cols.append(partner)
        values.append(np.full(len(partner), coupling))

    if rows:
        r = np.concatenate(rows)
        c = np.concatenate(cols)
        v = np.concatenate(values)
    else:
        r = c = np.zeros(0, dtype=np.int64)
        v = np.zeros(0)
    if real.params.j == 0:
        keep = np.zeros(len(v), dtype=bool)
        r, c, v = r[keep], c[keep], v[keep]
    order = np.lexsort((c, r))
    return BandHamiltonian(
        basis=basis, diag=diag, rows=r[order], cols=c[order], values=v[order], seed=real.seed
    )


def build_full_hamiltonian(real: DisorderRealization, cap: int = FULL_HAMILTONIAN_CAP) -> sp.csr_matrix:
    """Sparse ``2**n`` matrix of the unprojected Hamiltonian."""
    n = real.n
    if n > cap:
        raise ValueError(f"full Hamiltonian for n={n} exceeds the cap n <= {cap}")
    dim = 1 << n
    states = np.arange(dim, dtype=np.uint64)
    spins = 2 * bits(states, n).astype(np.int64) - 1
    diag = spins @ real.gammas

    r = [np.arange(dim)]
    c = [np.arange(dim)]
    v = [diag]
    if real.params.j != 0:
        for (i, j), coupling in zip(real.params.lattice.bonds, real.couplings):
            # sx_i sx_j flips both bits whatever their values.
            partner = states ^ np.uint64((1 << i) | (1 << j))
            r.append(np.arange(dim))
            c.append(partner.astype(np.int64))
            v.append(np.full(dim, coupling))
    return sp.csr_matrix(
        (np.concatenate(v), (np.concatenate(r), np.concatenate(c))), shape=(dim, dim)
    )


@dataclass(frozen=True)
class TheoryEstimates:
    """Closed-form scales of the model.

    ``flags`` is non-empty when ``delta == 0``; the width then follows the
    strong-coupling branch ``J * sqrt(n)`` and the detuning-based borders
    vanish.
    """

    n: int
    jc_theory: float
    jcs_theory: float
    gamma_theory: float
    tau_chi_theory: float
    delta_n: float
    delta_band_n: float
    band_width: float
    coupled_spacing: float
    transitions_per_state: int
    bandwidth_B: float
    u_s: float
    rho_c: float
    crossover_j: float
    flags: tuple[str, ...] = ()


def theory_estimates(params: ModelParams, n: int | None = None, c: float = JC_CONSTANT) -> TheoryEstimates:
    n = params.n if n is None else n
    delta, delta0, j = params.delta, params.delta0, params.j
    flags: tuple[str, ...] = ()
    if delta > 0:
        gamma = GAMMA_CONSTANT * j * j * n / delta
        rho_c = n / delta
    else:
        gamma = j * math.sqrt(n)
        rho_c = math.inf
        flags = ("delta=0: strong-coupling width J*sqrt(n)",)
    return TheoryEstimates(
        n=n,
        jc_theory=c * delta / n,
        jcs_theory=JCS_CONSTANT * delta / n,
        gamma_theory=gamma,
        tau_chi_theory=TAU_CONSTANT / gamma if gamma > 0 else math.inf,
        delta_n=math.ldexp(n * delta0, -n),
        delta_band_n=math.ldexp(n**1.5 * delta, -n),
        band_width=math.sqrt(n) * delta,
        coupled_spacing=delta / n,
        transitions_per_state=2 * n,
        bandwidth_B=delta,
        u_s=j,
        rho_c=rho_c,
        crossover_j=delta / n**0.25,
        flags=flags,
    )
