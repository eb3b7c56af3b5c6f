"""Quantum chaos in a disordered qubit lattice: band Hamiltonians, spectral statistics and dynamics."""

__version__ = "0.1.0"

from .basis import BandBasis, central_band, enumerate_band  # noqa: E402
from .lattice import LatticeSpec, build_lattice, lattice_for  # noqa: E402
from .model import (  # noqa: E402
    BandHamiltonian,
    DisorderRealization,
    ModelParams,
    TheoryEstimates,
    build_band_hamiltonian,
    build_full_hamiltonian,
    draw_realization,
    theory_estimates,
)
from .spectra import SpectralResult, SpacingStats, eigendecompose, eta_parameter, find_border, spacing_statistics  # noqa: E402

__all__ = [
    "BandBasis",
    "BandHamiltonian",
    "DisorderRealization",
    "LatticeSpec",
    "ModelParams",
    "SpacingStats",
    "SpectralResult",
    "TheoryEstimates",
    "build_band_hamiltonian",
    "build_full_hamiltonian",
    "build_lattice",
    "central_band",
    "draw_realization",
    "eigendecompose",
    "enumerate_band",
    "eta_parameter",
    "find_border",
    "lattice_for",
    "spacing_statistics",
    "theory_estimates",
]
