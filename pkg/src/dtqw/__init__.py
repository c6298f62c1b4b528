"""Discrete-time quantum walk simulator with coherence, entanglement and
localization measures, seeded disorder ensembles, and a CSV-emitting
experiment runner."""

from ._version import __version__
from .ensemble import (
    EnsembleConfig,
    EnsembleResult,
    SpatialDisorderTemplate,
    TemporalDisorderTemplate,
    realization_seed,
    run_ensemble,
    sample_spatial_angles,
    sample_temporal_angles,
    splitmix64,
)
from .errors import (
    AngleTableError,
    BoundaryOverflowError,
    InvalidDimensionError,
    InvalidInputError,
    InvalidParameterError,
    LatticeTooSmallError,
    NumericalError,
    WalkError,
)
from .kernels import active_backend
from .measures import (
    CoherenceValue,
    CorrelatedCoherence,
    MeasureRecord,
    correlated_coherence,
    degree_of_interference,
    degree_of_interference_split_step,
    entanglement,
    full_density,
    l1_coherence_normalized,
    localization_indicator,
    measure_record,
    reduce_to_coin,
    reduce_to_position,
    relative_entropy_coherence,
    std_dev,
    von_neumann_entropy,
)
from .runner import (
    CATALOG,
    RunArtifacts,
    Scenario,
    build_scenario,
    catalog_scenario,
    run_scenario,
    run_sweep,
)
from .symmetry import (
    ChiralityResidual,
    build_step_unitary,
    chiral_operator,
    chirality_report,
    chirality_residual,
    unitarity_residual,
)
from .verification import CheckResult, verify
from .walk import (
    Homogeneous,
    InitialCoinState,
    Lattice,
    SpatialDisorder,
    SplitStep,
    TemporalDisorder,
    WalkState,
    apply_split_step,
    apply_step,
    coin_matrix,
    evolve,
    initial_state,
    iter_states,
    rotation_matrix,
)

__all__ = [name for name in dir() if not name.startswith("_")]
