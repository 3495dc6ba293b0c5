//! Dense complex linear algebra and the quantum primitives built on it.
//!
//! Everything here works with small dense matrices (the models in this crate
//! never exceed dimension 9, the solver accepts up to 64). Basis vectors are
//! ordered `|0>, |1>, ...` and tensor products take the left operand as the
//! slow (most significant) index, so `|s>|m>` lives at index `s * dim_m + m`.

mod distribution;
mod eig;
mod observable;
mod operator;
pub mod random;
mod state;

pub use distribution::Distribution;
pub use eig::{eig_hermitian, EigenDecomposition, MAX_EIG_DIM};
pub use observable::Observable;
pub use operator::{Operator, C64};
pub use state::{born_probabilities, evolve, povm_probabilities, tensor_states, QuantumState};

/// Absolute tolerance used for structural checks (Hermiticity, completeness, ...).
pub const STRUCT_TOL: f64 = 1e-10;
/// Tolerance on ket norms and density-matrix traces.
pub const NORM_TOL: f64 = 1e-12;
