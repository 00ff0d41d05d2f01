"""Quench dynamics of disordered fermion chains.

Builds Anderson and interacting disordered-chain Hamiltonians in
particle-number sectors, evolves initial states exactly through full
eigendecomposition, tracks l1-norm coherence / predictability /
entanglement triples, and classifies late-time trajectories as saturated
or logarithmically drifting.
"""

__version__ = "0.1.0"

from .detect import FitResult, FitWindow, classify, fit_log, last_decade
from .evolve import (
    SpectralDecomposition,
    TimeGrid,
    decompose,
    default_time_grid,
    evolve_multisector,
    evolve_state,
)
from .experiment import (
    ExperimentConfig,
    TrajectoryRecord,
    make_default_config,
    run_experiment,
    run_sweep,
)
from .hamiltonian import (
    ChainParams,
    DisorderRealization,
    HamiltonianMatrix,
    build_hamiltonian,
    sample_disorder,
)
from .hilbert import FullSpace, Sector, enumerate_sector, full_space, hop_sign
from .quantifiers import (
    DensityMatrix,
    QuantifierTriple,
    coherence_l1,
    entanglement_l1,
    global_quantifiers,
    local_quantifiers,
    measurement_cost,
    partial_trace,
    predictability_l1,
)
from .states import MultiSectorState, StateVector, max_coherent, max_incoherent, neel, w_state

__all__ = [
    "ChainParams",
    "DensityMatrix",
    "DisorderRealization",
    "ExperimentConfig",
    "FitResult",
    "FitWindow",
    "FullSpace",
    "HamiltonianMatrix",
    "MultiSectorState",
    "QuantifierTriple",
    "Sector",
    "SpectralDecomposition",
    "StateVector",
    "TimeGrid",
    "TrajectoryRecord",
    "build_hamiltonian",
    "classify",
    "coherence_l1",
    "decompose",
    "default_time_grid",
    "enumerate_sector",
    "entanglement_l1",
    "evolve_multisector",
    "evolve_state",
    "fit_log",
    "full_space",
    "global_quantifiers",
    "hop_sign",
    "last_decade",
    "local_quantifiers",
    "make_default_config",
    "max_coherent",
    "max_incoherent",
    "measurement_cost",
    "neel",
    "partial_trace",
    "predictability_l1",
    "run_experiment",
    "run_sweep",
    "sample_disorder",
    "w_state",
]
