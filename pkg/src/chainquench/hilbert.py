"""Occupation-number basis states, particle-number sectors, and fermionic sign rules.

A basis state is a plain integer: site i (1-based, numbered left to right)
is occupied iff bit (i - 1) is set. Sectors list their states in ascending
integer order; that ordering fixes the matrix conventions everywhere else.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb

import numpy as np

# Bit patterns are stored in int64 arrays; one bit per site plus sign headroom.
MAX_SITES = 62


@dataclass(frozen=True, eq=False)
class Sector:
    """All basis states with a fixed particle number on a fixed chain."""

    n_sites: int
    n_particles: int
    states: np.ndarray  # ascending int64 bit patterns
    index_of: dict[int, int]  # exact inverse of `states`

    @property
    def dim(self) -> int:
        return len(self.states)


@dataclass(frozen=True, eq=False)
class FullSpace:
    """Every particle-number sector of an N-site chain, k = 0..N."""

    n_sites: int
    sectors: tuple[Sector, ...]

    @property
    def dim(self) -> int:
        return 1 << self.n_sites


@lru_cache(maxsize=None)
def enumerate_sector(n_sites: int, n_particles: int) -> Sector:
    """Enumerate all bit patterns with the given popcount, ascending."""
    if not 0 <= n_particles <= n_sites:
        raise ValueError(
            f"particle count {n_particles} outside [0, {n_sites}]"
        )
    if n_sites > MAX_SITES:
        raise ValueError(f"chains longer than {MAX_SITES} sites are not supported")
    patterns = sorted(
        sum(1 << i for i in sites)
        for sites in itertools.combinations(range(n_sites), n_particles)
    )
    assert len(patterns) == comb(n_sites, n_particles)
    states = np.asarray(patterns, dtype=np.int64)
    states.setflags(write=False)
    index_of = {s: m for m, s in enumerate(patterns)}
    return Sector(n_sites=n_sites, n_particles=n_particles, states=states, index_of=index_of)


@lru_cache(maxsize=None)
def full_space(n_sites: int) -> FullSpace:
    """All sectors of the chain, in particle-number order."""
    sectors = tuple(enumerate_sector(n_sites, k) for k in range(n_sites + 1))
    return FullSpace(n_sites=n_sites, sectors=sectors)


def sites_between_mask(i: int, j: int) -> int:
    """Bit mask of the sites strictly between sites i and j."""
    lo, hi = sorted((i, j))
    return ((1 << (hi - 1)) - 1) ^ ((1 << lo) - 1)


def hop_sign(state: int, i: int, j: int) -> int:
    """Sign of moving the particle on site i to the empty site j.

    Reordering the creation operators back into site order crosses every
    occupied site strictly between i and j once, so the sign is (-1) to
    that count. Adjacent hops therefore always give +1.
    """
    if i == j:
        raise ValueError("hop requires two distinct sites")
    if not (state >> (i - 1)) & 1:
        raise ValueError(f"site {i} is not occupied in state {state:#b}")
    if (state >> (j - 1)) & 1:
        raise ValueError(f"site {j} is already occupied in state {state:#b}")
    crossed = state & sites_between_mask(i, j)
    return -1 if crossed.bit_count() & 1 else 1
