use super::distribution::Distribution;
use super::observable::check_projective;
use super::operator::{c, r, Operator, C64};
use super::{NORM_TOL, STRUCT_TOL};
use crate::error::{Error, Result};

/// Pure ket or density matrix on a finite-dimensional space.
#[derive(Debug, Clone, PartialEq)]
pub enum QuantumState {
    Pure(Vec<C64>),
    Mixed(Operator),
}

fn ket_norm(ket: &[C64]) -> f64 {
    ket.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

impl QuantumState {
    /// Unit-norm ket (within `1e-12`).
    pub fn pure(ket: Vec<C64>) -> Result<Self> {
        if ket.is_empty() {
            return Err(Error::InvalidState("empty ket".into()));
        }
        let norm = ket_norm(&ket);
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidState(format!("ket norm {norm} != 1")));
        }
        Ok(Self::Pure(ket))
    }

    /// Normalizes a nonzero ket.
    pub fn normalized(mut ket: Vec<C64>) -> Result<Self> {
        let norm = ket_norm(&ket);
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::InvalidState("cannot normalize a zero ket".into()));
        }
        for z in &mut ket {
            *z /= norm;
        }
        Ok(Self::Pure(ket))
    }

    /// Hermitian, positive semidefinite, unit-trace density matrix.
    pub fn mixed(rho: Operator) -> Result<Self> {
        let asym = rho.hermitian_asymmetry();
        if asym > STRUCT_TOL {
            return Err(Error::NotHermitian { asymmetry: asym });
        }
        let tr = rho.trace();
        if (tr - r(1.0)).norm() > NORM_TOL {
            return Err(Error::InvalidState(format!("trace {tr} != 1")));
        }
        let eig = super::eig_hermitian(&rho)?;
        let min = eig.values.last().copied().unwrap_or(0.0);
        if min < -STRUCT_TOL {
            return Err(Error::NotPositive { min_eigenvalue: min });
        }
        Ok(Self::Mixed(rho))
    }

    /// Computational basis ket `|k>`.
    pub fn basis(dim: usize, k: usize) -> Self {
        assert!(k < dim, "basis index {k} out of range for dimension {dim}");
        let mut ket = vec![r(0.0); dim];
        ket[k] = r(1.0);
        Self::Pure(ket)
    }

    /// `cos(alpha)|0> + e^{i phi} sin(alpha)|1>`.
    pub fn qubit(alpha: f64, phi: f64) -> Self {
        Self::Pure(vec![r(alpha.cos()), C64::from_polar(alpha.sin(), phi)])
    }

    /// Maximally mixed state `I/dim`.
    pub fn maximally_mixed(dim: usize) -> Self {
        Self::Mixed(Operator::identity(dim).scale(1.0 / dim as f64))
    }

    pub fn dim(&self) -> usize {
        match self {
            Self::Pure(ket) => ket.len(),
            Self::Mixed(rho) => rho.dim(),
        }
    }

    pub fn density(&self) -> Operator {
        match self {
            Self::Pure(ket) => Operator::outer(ket),
            Self::Mixed(rho) => rho.clone(),
        }
    }

    /// `Tr(rho X)`; complex in general.
    pub fn expectation(&self, op: &Operator) -> C64 {
        assert_eq!(op.dim(), self.dim(), "expectation with mismatched dimension");
        match self {
            Self::Pure(ket) => op.sandwich(ket, ket),
            Self::Mixed(rho) => {
                let n = rho.dim();
                let mut acc = c(0.0, 0.0);
                for i in 0..n {
                    for j in 0..n {
                        acc += rho[(i, j)] * op[(j, i)];
                    }
                }
                acc
            }
        }
    }

    /// `Tr(rho^2)`.
    pub fn purity(&self) -> f64 {
        match self {
            Self::Pure(_) => 1.0,
            Self::Mixed(rho) => rho.as_slice().iter().map(|z| z.norm_sqr()).sum(),
        }
    }

    /// Kronecker product; stays pure when both factors are pure.
    pub fn tensor(&self, other: &Self) -> Self {
        match (self, other) {
            (Self::Pure(a), Self::Pure(b)) => {
                Self::Pure(a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect())
            }
            _ => Self::Mixed(self.density().kron(&other.density())),
        }
    }
}

pub fn tensor_states(a: &QuantumState, b: &QuantumState) -> QuantumState {
    a.tensor(b)
}

/// `U|psi>` or `U rho U^dagger`.
pub fn evolve(state: &QuantumState, u: &Operator) -> Result<QuantumState> {
    if u.dim() != state.dim() {
        return Err(Error::DimensionMismatch {
            expected: state.dim(),
            got: u.dim(),
        });
    }
    let deviation = u.unitary_deviation();
    if deviation > STRUCT_TOL {
        return Err(Error::NotUnitary { deviation });
    }
    Ok(match state {
        QuantumState::Pure(ket) => QuantumState::Pure(u.apply(ket)),
        QuantumState::Mixed(rho) => QuantumState::Mixed(&(u * rho) * &u.dagger()),
    })
}

fn check_dims(state: &QuantumState, ops: &[Operator]) -> Result<()> {
    for op in ops {
        if op.dim() != state.dim() {
            return Err(Error::DimensionMismatch {
                expected: state.dim(),
                got: op.dim(),
            });
        }
    }
    Ok(())
}

fn collect(state: &QuantumState, ops: &[Operator]) -> Result<Distribution> {
    Distribution::new(ops.iter().map(|p| state.expectation(p).re).collect())
}

/// Born-rule probabilities `Tr(rho P_i)` for a complete orthogonal projector set.
pub fn born_probabilities(state: &QuantumState, projectors: &[Operator]) -> Result<Distribution> {
    check_dims(state, projectors)?;
    check_projective(projectors)?;
    collect(state, projectors)
}

/// Outcome probabilities `Tr(rho E_i)` for a POVM (elements must sum to the identity).
pub fn povm_probabilities(state: &QuantumState, elements: &[Operator]) -> Result<Distribution> {
    check_dims(state, elements)?;
    let dim = state.dim();
    let total: Operator = elements.iter().cloned().sum();
    let deviation = total.max_abs_diff(&Operator::identity(dim));
    if deviation > STRUCT_TOL {
        return Err(Error::IncompleteMeasurement { deviation });
    }
    collect(state, elements)
}
