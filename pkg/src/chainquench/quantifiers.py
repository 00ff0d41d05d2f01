"""l1-norm coherence, predictability, and entanglement of occupation-basis states.

For a density matrix rho of dimension d in a fixed reference basis:

    coherence      C = sum_{j != k} |rho_jk|
    predictability P = d - 1 - sum_{j != k} sqrt(rho_jj rho_kk)
    entanglement   E = sum_{j != k} (sqrt(rho_jj rho_kk) - |rho_jk|)

so C + P + E = d - 1 identically. Reported triples are divided by d - 1
of the relevant space, making the three quantities sum to one. Global
quantities use the full 2^N computational dimension (components outside
the occupied particle-number sectors are zero and contribute nothing);
n-site window quantities use 2^n.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence, Union

import numpy as np

from .hilbert import enumerate_sector
from .states import MultiSectorState, StateVector

NORM_ATOL = 1e-8

PureState = Union[StateVector, MultiSectorState]


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian trace-one matrix in the occupation basis of `sites`.

    Basis index a encodes the window occupations with the first listed
    site as the least significant bit, matching the global convention.
    """

    entries: np.ndarray
    sites: tuple[int, ...]

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class QuantifierTriple:
    """Normalized (C, P, E); sums to 1 for pure states."""

    C: float
    P: float
    E: float


def _as_matrix(rho: DensityMatrix | np.ndarray) -> np.ndarray:
    if isinstance(rho, DensityMatrix):
        return rho.entries
    return np.asarray(rho)


def _diag_probs(m: np.ndarray) -> np.ndarray:
    # tiny negative diagonals from numerical noise would poison the sqrt
    return np.clip(np.diagonal(m).real, 0.0, None)


def coherence_l1(rho: DensityMatrix | np.ndarray) -> float:
    """Sum of absolute off-diagonal elements."""
    m = _as_matrix(rho)
    a = np.abs(m)
    return float(a.sum() - np.trace(a))


def predictability_l1(rho: DensityMatrix | np.ndarray) -> float:
    """d - 1 minus the off-diagonal sum of sqrt(rho_jj rho_kk); diagonal-only."""
    m = _as_matrix(rho)
    p = _diag_probs(m)
    s = np.sqrt(p).sum()
    return float(len(p) - 1 - (s * s - p.sum()))


def entanglement_l1(rho: DensityMatrix | np.ndarray) -> float:
    """Term-by-term sum of sqrt(rho_jj rho_kk) - |rho_jk| over j != k.

    Computed directly rather than via d - 1 - C - P, so cancellation in
    the identity stays a checkable property instead of a built-in truth.
    """
    m = _as_matrix(rho)
    root = np.sqrt(_diag_probs(m))
    gaps = np.outer(root, root) - np.abs(m)
    return float(gaps.sum() - np.trace(gaps))


def global_quantifiers(psi: PureState, n_sites: int | None = None) -> QuantifierTriple:
    """Whole-chain triple of a pure state; no bipartition, so E = 0.

    Uses the pure-state shortcut: with s1 = sum_j |psi_j| over all 2^N
    components, raw C = s1^2 - 1 and raw P = 2^N - s1^2. Equivalent to
    building |psi><psi| explicitly but never materializes it.
    """
    if isinstance(psi, StateVector):
        chain_sites = psi.n_sites
        mags = np.abs(psi.amplitudes)
    elif isinstance(psi, MultiSectorState):
        chain_sites = psi.n_sites
        mags = np.concatenate([np.abs(a) for _, a in psi.blocks])
    else:
        raise TypeError(f"expected a state, got {type(psi).__name__}")
    if n_sites is not None and n_sites != chain_sites:
        raise ValueError(f"state lives on {chain_sites} sites, not {n_sites}")

    norm2 = float(np.sum(mags**2))
    if abs(norm2 - 1.0) > NORM_ATOL:
        raise ValueError(f"state is not normalized: |psi|^2 = {norm2!r}")

    d = 1 << chain_sites
    s1 = float(mags.sum())
    scale = d - 1
    return QuantifierTriple(C=(s1 * s1 - 1.0) / scale, P=(d - s1 * s1) / scale, E=0.0)


@lru_cache(maxsize=None)
def _window_scatter(
    n_sites: int, n_particles: int, first_site: int, width: int
) -> tuple[np.ndarray, np.ndarray]:
    """Map each sector basis state to (window bits, remainder bits)."""
    states = enumerate_sector(n_sites, n_particles).states
    window = (states >> (first_site - 1)) & ((1 << width) - 1)
    low = states & ((1 << (first_site - 1)) - 1)
    high = states >> (first_site - 1 + width)
    rest = low | (high << (first_site - 1))
    return window, rest


def partial_trace(psi: PureState, keep_sites: Sequence[int]) -> DensityMatrix:
    """Reduced density matrix of a contiguous site window.

    Works in the occupation (qubit) representation with sites in chain
    order: rho[a, a'] = sum_b psi[a (x) b] conj(psi[a' (x) b]) over the
    complement configurations b. Only contiguous windows are supported;
    there the window diagonal agrees with the fermionic-mode one and no
    reordering signs arise.
    """
    keep = tuple(int(s) for s in keep_sites)
    if not keep:
        raise ValueError("keep_sites must be nonempty")

    if isinstance(psi, StateVector):
        n_sites = psi.n_sites
        blocks: Sequence[tuple] = ((psi.sector, psi.amplitudes),)
        norm2 = psi.norm2()
    elif isinstance(psi, MultiSectorState):
        n_sites = psi.n_sites
        blocks = psi.blocks
        norm2 = psi.norm2()
    else:
        raise TypeError(f"expected a state, got {type(psi).__name__}")

    if any(not 1 <= s <= n_sites for s in keep):
        raise ValueError(f"sites {keep} outside chain 1..{n_sites}")
    if keep != tuple(range(keep[0], keep[0] + len(keep))):
        raise NotImplementedError(
            f"only contiguous ascending site windows are supported, got {keep}"
        )
    if abs(norm2 - 1.0) > NORM_ATOL:
        raise ValueError(f"state is not normalized: |psi|^2 = {norm2!r}")

    width = len(keep)
    M = np.zeros((1 << width, 1 << (n_sites - width)), dtype=complex)
    for sector, amps in blocks:
        window, rest = _window_scatter(n_sites, sector.n_particles, keep[0], width)
        M[window, rest] = amps
    return DensityMatrix(entries=M @ M.conj().T, sites=keep)


def local_quantifiers(psi: PureState, n: int) -> QuantifierTriple:
    """Average normalized triple over all N - n + 1 contiguous n-site windows."""
    n_sites = psi.n_sites
    if not 1 <= n <= n_sites:
        raise ValueError(f"window size {n} outside 1..{n_sites}")
    c_sum = p_sum = e_sum = 0.0
    n_windows = n_sites - n + 1
    for first in range(1, n_windows + 1):
        rho = partial_trace(psi, range(first, first + n))
        c_sum += coherence_l1(rho)
        p_sum += predictability_l1(rho)
        e_sum += entanglement_l1(rho)
    scale = ((1 << n) - 1) * n_windows
    return QuantifierTriple(C=c_sum / scale, P=p_sum / scale, E=e_sum / scale)


_QUANTIFIER_ALIASES = {
    "p": "predictability",
    "predictability": "predictability",
    "c": "coherence",
    "coherence": "coherence",
    "e": "entanglement",
    "entanglement": "entanglement",
}


def measurement_cost(n_sites: int, quantifier: str) -> int:
    """Observable count for estimating a quantifier on an N-qubit register.

    Predictability needs only the N single-site occupation observables;
    coherence and entanglement need the full 4^N Pauli-string budget of
    state tomography.
    """
    if n_sites < 1:
        raise ValueError("need at least one site")
    kind = _QUANTIFIER_ALIASES.get(str(quantifier).lower())
    if kind is None:
        raise ValueError(f"unknown quantifier {quantifier!r}")
    if kind == "predictability":
        return n_sites
    return 4**n_sites
