"""Two-dimensional periodic qubit lattice and its nearest-neighbour bonds."""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt


@dataclass(frozen=True)
class LatticeSpec:
    """Rectangular lattice with periodic wrap in both directions.

    Sites are indexed row-major: site ``r * cols + c`` sits at row ``r``,
    column ``c``. The same index is the bit position of that qubit in a
    register mask.
    """

    rows: int
    cols: int
    bonds: tuple[tuple[int, int], ...]

    @property
    def n(self) -> int:
        return self.rows * self.cols

    def degree(self, site: int) -> int:
        return sum(site in bond for bond in self.bonds)


def build_lattice(rows: int, cols: int) -> LatticeSpec:
    """Connect each site to its right and down neighbours under periodic wrap.

    Pairs are deduplicated: a wrap along a dimension of size 2 reaches the
    same neighbour twice and contributes a single bond, and a dimension of
    size 1 produces self-pairs which are dropped.
    """
    if rows < 1 or cols < 1:
        raise ValueError(f"lattice dimensions must be positive, got {rows}x{cols}")
    if rows * cols < 2:
        raise ValueError("a lattice needs at least two sites to carry a bond")

    seen: set[tuple[int, int]] = set()
    bonds: list[tuple[int, int]] = []
    for r in range(rows):
        for c in range(cols):
            site = r * cols + c
            right = r * cols + (c + 1) % cols
            down = ((r + 1) % rows) * cols + c
            for other in (right, down):
                if other == site:
                    continue
                pair = (min(site, other), max(site, other))
                if pair not in seen:
                    seen.add(pair)
                    bonds.append(pair)
    return LatticeSpec(rows=rows, cols=cols, bonds=tuple(bonds))


def square_shape(n: int) -> tuple[int, int]:
    """Most-square factorisation ``rows * cols == n`` with ``rows <= cols``.

    >>> [square_shape(n) for n in (6, 9, 12, 15, 16)]
    [(2, 3), (3, 3), (3, 4), (3, 5), (4, 4)]
    """
    if n < 2:
        raise ValueError(f"need at least two qubits, got {n}")
    for rows in range(isqrt(n), 0, -1):
        if n % rows == 0:
            return rows, n // rows
    raise AssertionError("unreachable")


def lattice_for(n: int) -> LatticeSpec:
    return build_lattice(*square_shape(n))
