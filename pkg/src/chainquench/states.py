"""Initial states for the quench protocol.

Ket strings |b1 b2 ... bN> are read left to right as sites 1..N, so the
alternating half-filled state occupies sites 1, 3, 5, ... and the fully
polarized incoherent state occupies the left half of the chain.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import sqrt

import numpy as np

from .hilbert import Sector, enumerate_sector, full_space


@dataclass(frozen=True, eq=False)
class StateVector:
    """Complex amplitudes over one sector's basis order."""

    amplitudes: np.ndarray
    sector: Sector

    @property
    def n_sites(self) -> int:
        return self.sector.n_sites

    def norm2(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))

    def to_dense(self) -> np.ndarray:
        """Scatter onto the full 2^N computational basis (bit pattern = index)."""
        out = np.zeros(1 << self.n_sites, dtype=complex)
        out[self.sector.states] = self.amplitudes
        return out


@dataclass(frozen=True, eq=False)
class MultiSectorState:
    """A state spread over several particle-number blocks, one per count at most."""

    n_sites: int
    blocks: tuple[tuple[Sector, np.ndarray], ...]

    def norm2(self) -> float:
        return float(sum(np.sum(np.abs(a) ** 2) for _, a in self.blocks))

    def to_dense(self) -> np.ndarray:
        out = np.zeros(1 << self.n_sites, dtype=complex)
        for sector, amps in self.blocks:
            out[sector.states] = amps
        return out

    @classmethod
    def from_dense(cls, amplitudes: np.ndarray, n_sites: int) -> "MultiSectorState":
        """Split a full 2^N amplitude vector into its nonzero sector blocks."""
        amplitudes = np.asarray(amplitudes, dtype=complex)
        if amplitudes.shape != (1 << n_sites,):
            raise ValueError(
                f"expected {1 << n_sites} amplitudes for {n_sites} sites, "
                f"got {amplitudes.shape}"
            )
        blocks = []
        for sector in full_space(n_sites).sectors:
            amps = amplitudes[sector.states]
            if np.any(amps != 0):
                blocks.append((sector, amps))
        return cls(n_sites=n_sites, blocks=tuple(blocks))


def _basis_state(bits: int, sector: Sector) -> StateVector:
    amps = np.zeros(sector.dim, dtype=complex)
    amps[sector.index_of[bits]] = 1.0
    return StateVector(amplitudes=amps, sector=sector)


def neel(n_sites: int) -> StateVector:
    """Alternating occupation |1010...10>, leftmost site occupied, half filling."""
    if n_sites % 2:
        raise ValueError("alternating half filling needs an even number of sites")
    bits = sum(1 << i for i in range(0, n_sites, 2))
    return _basis_state(bits, enumerate_sector(n_sites, n_sites // 2))


def max_incoherent(n_sites: int) -> StateVector:
    """All particles on the left half of the chain, |1...10...0>."""
    if n_sites % 2:
        raise ValueError("half filling needs an even number of sites")
    bits = (1 << (n_sites // 2)) - 1
    return _basis_state(bits, enumerate_sector(n_sites, n_sites // 2))


def max_coherent(n_sites: int) -> MultiSectorState:
    """Uniform superposition of all 2^N occupation states.

    Mixes even and odd particle numbers, so it is not a physical fermionic
    state; it is still useful as the extreme-coherence reference point.
    """
    amp = 2.0 ** (-n_sites / 2.0)
    blocks = tuple(
        (sector, np.full(sector.dim, amp, dtype=complex))
        for sector in full_space(n_sites).sectors
    )
    return MultiSectorState(n_sites=n_sites, blocks=blocks)


def w_state(n_sites: int) -> StateVector:
    """Uniform single-excitation superposition over all sites."""
    if n_sites < 1:
        raise ValueError("chain needs at least one site")
    sector = enumerate_sector(n_sites, 1)
    amps = np.full(sector.dim, 1.0 / sqrt(n_sites), dtype=complex)
    return StateVector(amplitudes=amps, sector=sector)
