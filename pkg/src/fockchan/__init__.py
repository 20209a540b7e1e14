"""Noisy bosonic attenuator/amplifier channels on truncated Fock spaces,
NPT witnesses for NOON and photon-number entangled states, and
noise-threshold curves against Gaussian benchmarks."""

from .channels import (
    ChannelKind,
    ChannelParams,
    EvolvedOperator,
    QuantumLimitedPair,
    SingleModeElements,
    amplifier,
    attenuator,
    auto_cutoff,
    compose_quantum_limited,
    decompose,
    evolve_density,
    evolve_dyad,
    kraus_amplifier,
    kraus_attenuator,
    kraus_sum_dyad,
    x_elements,
)
from .fock_core import (
    FockOperator,
    TwoModeFockOperator,
    log_binomial,
    min_eigenvalue_symmetric,
    partial_transpose,
    tensor_dyad,
    validate_density,
)
from .gaussian import (
    OMEGA,
    VarianceMatrix,
    amplifier_gaussian_threshold,
    attenuator_gaussian_threshold,
    breaking_line,
    ebits_to_mu,
    evolve_variance,
    numeric_ppt_threshold,
    ppt_separable,
    tmsv_entanglement_entropy,
    tmsv_variance,
)
from .thresholds import (
    BracketError,
    RegionPoint,
    RegionReport,
    ThresholdCurve,
    ThresholdDiagnostics,
    ThresholdError,
    ThresholdPoint,
    bracket,
    region_r,
    solve_threshold,
    sweep_curve,
)
from .witness import (
    EvolvedTwoMode,
    NonGaussianState,
    StateFamily,
    WitnessResult,
    assemble,
    delta,
    evolve_two_sided,
    full_ppt_min_eigenvalue,
    make_state,
    project_subspace,
    state_variance_matrix,
)

__version__ = "0.1.0"

__all__ = [
    "ChannelKind",
    "ChannelParams",
    "EvolvedOperator",
    "QuantumLimitedPair",
    "SingleModeElements",
    "amplifier",
    "attenuator",
    "auto_cutoff",
    "compose_quantum_limited",
    "decompose",
    "evolve_density",
    "evolve_dyad",
    "kraus_amplifier",
    "kraus_attenuator",
    "kraus_sum_dyad",
    "x_elements",
    "FockOperator",
    "TwoModeFockOperator",
    "log_binomial",
    "min_eigenvalue_symmetric",
    "partial_transpose",
    "tensor_dyad",
    "validate_density",
    "OMEGA",
    "VarianceMatrix",
    "amplifier_gaussian_threshold",
    "attenuator_gaussian_threshold",
    "breaking_line",
    "ebits_to_mu",
    "evolve_variance",
    "numeric_ppt_threshold",
    "ppt_separable",
    "tmsv_entanglement_entropy",
    "tmsv_variance",
    "BracketError",
    "RegionPoint",
    "RegionReport",
    "ThresholdCurve",
    "ThresholdDiagnostics",
    "ThresholdError",
    "ThresholdPoint",
    "bracket",
    "region_r",
    "solve_threshold",
    "sweep_curve",
    "EvolvedTwoMode",
    "NonGaussianState",
    "StateFamily",
    "WitnessResult",
    "assemble",
    "delta",
    "evolve_two_sided",
    "full_ppt_min_eigenvalue",
    "make_state",
    "project_subspace",
    "state_variance_matrix",
    "__version__",
]
