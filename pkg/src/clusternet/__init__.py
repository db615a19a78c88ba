"""Cluster-state network synthesis and finite-squeezing noise optimization."""

from .errors import (
    ClusterNetError,
    DimensionError,
    InvalidPlanError,
    SingularityError,
    ValidationError,
)
from .graph import AdjacencyGraph, from_edges, grid_cluster, linear_cluster, ring_cluster
from .linalg import (
    check_symplectic,
    givens_orthogonal,
    inv_sqrt_spd,
    quadrature_symplectic,
    wrap_angles,
)
from .mbqc import (
    ExcessNoise,
    MBQCOutcome,
    MeasurementPlan,
    beamsplitter_unitary,
    compose_computation,
    eliminate_and_project,
    extra_noise_variances,
    fitness_f2,
    fourier_plan,
    nullifier_decomposition,
)
from .network import NetworkUnitary, cluster_unitary, symmetric_unitary, verify_cluster_condition
from .noise import (
    NullifierReport,
    SqueezingProfile,
    covariance_propagate,
    fitness_f1,
    fitness_f1_alt,
    nullifier_variances,
    shot_noise_variances,
    squeezing_to_k,
)
from .optimize import OptimizationTrace, OptimizerConfig, exhaustive_baseline, multistart, optimize

__version__ = "0.1.0"
