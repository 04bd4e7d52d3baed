"""Phase estimation with two coherently superposed noisy qubit unitaries.

Closed-form Bloch-representation results for the superposed channel and the
Fisher information they imply. A brute-force Stinespring dilation certifies
the closed forms, and a Monte-Carlo layer checks maximum-likelihood estimators
against the Cramér-Rao bound.
"""
from __future__ import annotations

from .dilation import (
    CompoundMixture,
    DilatedUnitary,
    OracleReport,
    TInvarianceReport,
    check_T_invariance,
    complete_unitary,
    oracle_joint_state,
    oracle_suite,
)
from .estimation import (
    Calibration,
    EstimationReport,
    Geometry,
    JointEstimate,
    NonIdentifiableError,
    PhaseModel,
    ShotRecord,
    calibrate,
    calibration_plan,
    crb_experiment,
    joint_plan,
    log_likelihood,
    mle_joint,
    mle_phase,
    sample_control,
)
from .fisher import (
    FisherCurve,
    FisherPoint,
    beta_factor,
    control_fisher,
    control_fisher_geometric,
    control_fisher_optimal,
    fisher_binary,
    noncommutativity_avg,
    noncommutativity_index,
    noncommutativity_matrix_index,
    pauli_unbiased_fisher,
    phase_avg_closed,
    phase_avg_numeric,
    qfi_qubit,
    standard_avg,
    standard_probe_fisher,
    superposed_avg,
    switched_avg,
)
from .noise import (
    AffineMap,
    EnvironmentModel,
    KrausChannel,
    NoisyUnitaryChannel,
    PauliNoise,
    affine_of_channel,
    apply_kraus,
    apply_noisy_unitary,
    depolarizing,
    identity_channel,
    kraus_mix,
    pauli_channel,
)
from .qubit import (
    bloch_to_density,
    density_to_bloch,
    partial_trace,
    rotation_matrix,
    unitary_qubit,
)
from .superposed import (
    ControlReadout,
    SuperposedChannel,
    TransformData,
    control_readout,
    control_reduced_state,
    joint_output,
    optimal_geometry,
    q_factor,
    transform_data,
)

__version__ = "0.1.0"

__all__ = [
    "CompoundMixture",
    "DilatedUnitary",
    "OracleReport",
    "TInvarianceReport",
    "check_T_invariance",
    "complete_unitary",
    "oracle_joint_state",
    "oracle_suite",
    "Calibration",
    "EstimationReport",
    "Geometry",
    "JointEstimate",
    "NonIdentifiableError",
    "PhaseModel",
    "ShotRecord",
    "calibrate",
    "calibration_plan",
    "crb_experiment",
    "joint_plan",
    "log_likelihood",
    "mle_joint",
    "mle_phase",
    "sample_control",
    "FisherCurve",
    "FisherPoint",
    "beta_factor",
    "control_fisher",
    "control_fisher_geometric",
    "control_fisher_optimal",
    "fisher_binary",
    "noncommutativity_avg",
    "noncommutativity_index",
    "noncommutativity_matrix_index",
    "pauli_unbiased_fisher",
    "phase_avg_closed",
    "phase_avg_numeric",
    "qfi_qubit",
    "standard_avg",
    "standard_probe_fisher",
    "superposed_avg",
    "switched_avg",
    "AffineMap",
    "EnvironmentModel",
    "KrausChannel",
    "NoisyUnitaryChannel",
    "PauliNoise",
    "affine_of_channel",
    "apply_kraus",
    "apply_noisy_unitary",
    "depolarizing",
    "identity_channel",
    "kraus_mix",
    "pauli_channel",
    "bloch_to_density",
    "density_to_bloch",
    "partial_trace",
    "rotation_matrix",
    "unitary_qubit",
    "ControlReadout",
    "SuperposedChannel",
    "TransformData",
    "control_readout",
    "control_reduced_state",
    "joint_output",
    "optimal_geometry",
    "q_factor",
    "transform_data",
]
