"""Disorder-averaged quench protocol.

For each realization: draw on-site energies, build and diagonalize the
sector Hamiltonian(s), evolve the chosen initial state over the time
grid, and evaluate the quantifier triple at every time. Realizations are
independent and may run on worker threads; aggregation always folds them
in realization-index order, so results do not depend on the worker count.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Callable, Sequence

import numpy as np

from .evolve import (
    TimeGrid,
    decompose,
    default_time_grid,
    evolve_multisector_series,
    evolve_series,
)
from .hamiltonian import ChainParams, build_hamiltonian, sample_disorder
from .quantifiers import QuantifierTriple, global_quantifiers, local_quantifiers
from .states import MultiSectorState, StateVector, max_coherent, max_incoherent, neel, w_state

INITIAL_STATES = ("neel", "max_incoherent", "max_coherent", "w_state")
MODES = ("global", "local")

SUPERSELECTION_WARNING = (
    "initial state max_coherent superposes even and odd particle numbers, "
    "which fermion parity superselection forbids; simulated regardless"
)

_STATE_FACTORIES: dict[str, Callable] = {
    "neel": neel,
    "max_incoherent": max_incoherent,
    "max_coherent": max_coherent,
    "w_state": w_state,
}


@dataclass(frozen=True)
class ExperimentConfig:
    chain: ChainParams
    initial_state: str
    grid: TimeGrid
    realizations: int
    master_seed: int
    mode: str = "global"
    window: int | None = None

    def __post_init__(self) -> None:
        if self.initial_state not in INITIAL_STATES:
            raise ValueError(
                f"initial_state must be one of {INITIAL_STATES}, got {self.initial_state!r}"
            )
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.mode == "local":
            if self.window is None or not 1 <= self.window <= self.chain.n_sites:
                raise ValueError(
                    f"local mode needs a window size in 1..{self.chain.n_sites}, "
                    f"got {self.window}"
                )
        elif self.window is not None:
            raise ValueError("window is only meaningful in local mode")
        if self.realizations < 1:
            raise ValueError("need at least one realization")
        if self.initial_state in ("neel", "max_incoherent") and self.chain.n_sites % 2:
            raise ValueError(
                f"{self.initial_state} requires an even chain, got N={self.chain.n_sites}"
            )

    def warnings(self) -> tuple[str, ...]:
        if self.initial_state == "max_coherent":
            return (SUPERSELECTION_WARNING,)
        return ()


@dataclass(frozen=True, eq=False)
class TrajectoryRecord:
    """Disorder means and standard errors of (C, P, E) over the grid."""

    times: np.ndarray
    c_mean: np.ndarray
    c_sem: np.ndarray
    p_mean: np.ndarray
    p_sem: np.ndarray
    e_mean: np.ndarray
    e_sem: np.ndarray
    config: ExperimentConfig | None
    seeds: tuple[int, ...]
    warnings: tuple[str, ...]


def realization_seed(master_seed: int, index: int) -> int:
    """Per-realization seed; depends only on (master_seed, index)."""
    return int(np.random.SeedSequence((master_seed, index)).generate_state(1, np.uint64)[0])


def _single_trajectory(config: ExperimentConfig, index: int) -> tuple[int, np.ndarray]:
    seed = realization_seed(config.master_seed, index)
    eps = sample_disorder(config.chain.n_sites, seed)
    psi0 = _STATE_FACTORIES[config.initial_state](config.chain.n_sites)
    times = config.grid.times

    if isinstance(psi0, MultiSectorState):
        specs = [
            decompose(build_hamiltonian(config.chain, eps, sector))
            for sector, _ in psi0.blocks
        ]
        series = evolve_multisector_series(specs, psi0, times)

        def state_at(j: int) -> MultiSectorState:
            blocks = tuple((sector, arr[:, j]) for sector, arr in series)
            return MultiSectorState(n_sites=psi0.n_sites, blocks=blocks)

    else:
        spec = decompose(build_hamiltonian(config.chain, eps, psi0.sector))
        arr = evolve_series(spec, psi0.amplitudes, times)

        def state_at(j: int) -> StateVector:
            return StateVector(amplitudes=arr[:, j], sector=psi0.sector)

    rows = np.empty((len(times), 3))
    for j in range(len(times)):
        psi_t = state_at(j)
        if config.mode == "global":
            trip: QuantifierTriple = global_quantifiers(psi_t)
        else:
            trip = local_quantifiers(psi_t, config.window)
        rows[j] = (trip.C, trip.P, trip.E)
    return seed, rows


def run_experiment(config: ExperimentConfig, n_workers: int = 1) -> TrajectoryRecord:
    """Run all realizations and aggregate disorder statistics."""
    indices = range(config.realizations)
    if n_workers > 1:
        with ThreadPoolExecutor(max_workers=n_workers) as pool:
            results = list(pool.map(lambda k: _single_trajectory(config, k), indices))
    else:
        results = [_single_trajectory(config, k) for k in indices]

    seeds = tuple(seed for seed, _ in results)
    stack = np.stack([rows for _, rows in results])  # (r, T, 3)
    mean = stack.mean(axis=0)
    r = config.realizations
    if r > 1:
        sem = stack.std(axis=0, ddof=1) / np.sqrt(r)
    else:
        sem = np.zeros_like(mean)

    return TrajectoryRecord(
        times=config.grid.times,
        c_mean=mean[:, 0],
        c_sem=sem[:, 0],
        p_mean=mean[:, 1],
        p_sem=sem[:, 1],
        e_mean=mean[:, 2],
        e_sem=sem[:, 2],
        config=config,
        seeds=seeds,
        warnings=config.warnings(),
    )


def run_sweep(
    base: ExperimentConfig,
    W_values: Sequence[float],
    g_values: Sequence[float],
    n_workers: int = 1,
) -> list[TrajectoryRecord]:
    """Cartesian (W, g) sweep sharing the master seed.

    Disorder draws depend only on (master_seed, realization index, N), so
    every cell sees identical epsilon vectors realization by realization;
    interacting and non-interacting runs are exactly paired.
    """
    if len(W_values) == 0 or len(g_values) == 0:
        raise ValueError("sweep value lists must be nonempty")
    records = []
    for W in W_values:
        for g in g_values:
            chain = replace(base.chain, W=float(W), g=float(g))
            config = replace(base, chain=chain)
            records.append(run_experiment(config, n_workers=n_workers))
    return records


def make_default_config(
    n_sites: int = 12,
    J: float = 1.0,
    W: float = 2.0,
    g: float = 1.0,
    initial_state: str = "neel",
    mode: str = "global",
    window: int | None = None,
    realizations: int = 100,
    master_seed: int = 0,
    grid: TimeGrid | None = None,
    boundary: str = "open",
) -> ExperimentConfig:
    """Convenience constructor with the headline protocol defaults."""
    return ExperimentConfig(
        chain=ChainParams(n_sites=n_sites, J=J, W=W, g=g, boundary=boundary),
        initial_state=initial_state,
        grid=grid if grid is not None else default_time_grid(),
        realizations=realizations,
        master_seed=master_seed,
        mode=mode,
        window=window,
    )
