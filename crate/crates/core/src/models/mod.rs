//! Concrete measurement scenarios: qubit and qutrit indirect measurements, the
//! three-qubit weak-measurement circuit and its interferometric realization.

mod circuit;
mod pipeline;
mod qubit;
mod qutrit;
mod sagnac;

pub use circuit::{
    circuit_povm, circuit_probabilities, invert_runs, marginals, run_distributions, simulate_circuit, triple_index,
    weak_strength, Basis, CircuitParams, CircuitProbabilities, PovmLabel, PovmSet, Sign,
};
pub use pipeline::IndirectMeasurement;
pub use qubit::{
    diagonal_axis, qubit_analytic_distributions, qubit_closed_forms, qubit_cnot_model, QubitClosedForms, QubitParams,
    X_AXIS, Z_AXIS,
};
pub use qutrit::{l_x, l_y, l_z, qutrit_coupling, qutrit_model, qutrit_pipeline, QutritParams};
pub use sagnac::{
    imperfect_povm, imperfect_probabilities, imperfect_runs, probe_offsets, recovered_from_offsets, sagnac_coefficients,
    sagnac_kraus, sagnac_povm, sagnac_unitary, Extinction, ImperfectProbabilities, ProbeOffsets, SagnacCoefficients,
};
