"""Register-state enumeration by magnetisation band.

A register state is an ``n``-bit mask, bit ``b`` set meaning qubit ``b`` is
up. Band ``k`` holds the masks with exactly ``k`` bits set; its unperturbed
energy centre is ``(2k - n) * delta0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from math import comb

import numpy as np

MAX_QUBITS = 63


@lru_cache(maxsize=None)
def _masks(n: int, k: int) -> np.ndarray:
    # Masks without bit n-1 are all < 2**(n-1) and precede those with it,
    # so concatenation keeps ascending order.
    if k == 0:
        return np.zeros(1, dtype=np.uint64)
    if k == n:
        return np.array([(1 << n) - 1], dtype=np.uint64)
    low = _masks(n - 1, k)
    high = _masks(n - 1, k - 1) | np.uint64(1 << (n - 1))
    out = np.concatenate([low, high])
    out.flags.writeable = False
    return out


def popcount(masks: np.ndarray) -> np.ndarray:
    masks = np.asarray(masks, dtype=np.uint64)
    return np.bitwise_count(masks).astype(np.int64)


def bits(masks: np.ndarray, n: int) -> np.ndarray:
    """Return the ``(len(masks), n)`` 0/1 matrix of qubit polarisations."""
    masks = np.asarray(masks, dtype=np.uint64)
    shifts = np.arange(n, dtype=np.uint64)
    return ((masks[:, None] >> shifts) & np.uint64(1)).astype(np.int8)


@dataclass(frozen=True)
class BandBasis:
    n: int
    k: int
    states: np.ndarray = field(repr=False)

    def __len__(self) -> int:
        return len(self.states)

    @property
    def dimension(self) -> int:
        return len(self.states)

    @property
    def center(self) -> int:
        """Band centre in units of delta0."""
        return 2 * self.k - self.n

    @cached_property
    def index_of(self) -> dict[int, int]:
        return {int(m): i for i, m in enumerate(self.states)}

    def lookup(self, masks: np.ndarray) -> np.ndarray:
        """Vectorised position lookup; returns -1 for masks not in the band."""
        masks = np.asarray(masks, dtype=np.uint64)
        pos = np.searchsorted(self.states, masks)
        pos = np.minimum(pos, len(self.states) - 1)
        return np.where(self.states[pos] == masks, pos, -1)

    def spins(self) -> np.ndarray:
        """``(dimension, n)`` matrix of sigma^z eigenvalues (+1 up, -1 down)."""
        return 2 * bits(self.states, self.n).astype(np.int64) - 1


def enumerate_band(n: int, k: int) -> BandBasis:
    if not 1 <= n <= MAX_QUBITS:
        raise ValueError(f"qubit count must lie in [1, {MAX_QUBITS}], got {n}")
    if not 0 <= k <= n:
        raise ValueError(f"band index k={k} outside [0, {n}]")
    states = _masks(n, k)
    assert len(states) == comb(n, k)
    return BandBasis(n=n, k=k, states=states)


def central_band_index(n: int) -> int:
    # Odd n: of the two bands at +-delta0 we take the one at -delta0.
    return n // 2


def central_band(n: int) -> BandBasis:
    if n < 2:
        raise ValueError(f"central band needs n >= 2, got {n}")
    return enumerate_band(n, central_band_index(n))
