use super::eig::eig_hermitian;
use super::operator::Operator;
use super::STRUCT_TOL;
use crate::error::{Error, Result};

/// Eigenvalues closer than this are treated as one degenerate outcome.
const DEGENERACY_TOL: f64 = 1e-8;

/// Hermitian operator together with its spectral decomposition.
///
/// Outcomes are ordered by descending eigenvalue; degenerate eigenvalues share
/// a single projector so every outcome label is a distinct eigenvalue.
#[derive(Debug, Clone)]
pub struct Observable {
    matrix: Operator,
    eigenvalues: Vec<f64>,
    projectors: Vec<Operator>,
}

impl Observable {
    pub fn from_matrix(matrix: Operator) -> Result<Self> {
        let eig = eig_hermitian(&matrix)?;
        let mut eigenvalues: Vec<f64> = Vec::new();
        let mut projectors: Vec<Operator> = Vec::new();
        let mut group_sizes: Vec<usize> = Vec::new();
        let mut group_start = f64::NAN;

        for (&lambda, v) in eig.values.iter().zip(&eig.vectors) {
            let rank_one = Operator::outer(v);
            if (lambda - group_start).abs() <= DEGENERACY_TOL {
                let last = projectors.len() - 1;
                projectors[last] = &projectors[last] + &rank_one;
                eigenvalues[last] += lambda;
                group_sizes[last] += 1;
            } else {
                group_start = lambda;
                projectors.push(rank_one);
                eigenvalues.push(lambda);
                group_sizes.push(1);
            }
        }
        for (value, &size) in eigenvalues.iter_mut().zip(&group_sizes) {
            *value /= size as f64;
        }
        Ok(Self {
            matrix,
            eigenvalues,
            projectors,
        })
    }

    /// Builds `sum_i a_i P_i` from explicit eigenvalues and projectors.
    ///
    /// The projectors must be Hermitian, mutually orthogonal idempotents that
    /// resolve the identity.
    pub fn from_spectral(eigenvalues: Vec<f64>, projectors: Vec<Operator>) -> Result<Self> {
        if eigenvalues.len() != projectors.len() || projectors.is_empty() {
            return Err(Error::LengthMismatch {
                left: eigenvalues.len(),
                right: projectors.len(),
            });
        }
        check_projective(&projectors)?;
        let dim = projectors[0].dim();
        let mut matrix = Operator::zeros(dim);
        for (&a, p) in eigenvalues.iter().zip(&projectors) {
            matrix = &matrix + &p.scale(a);
        }
        Ok(Self {
            matrix,
            eigenvalues,
            projectors,
        })
    }

    pub fn pauli_x() -> Self {
        Self::from_matrix(Operator::pauli_x()).expect("Pauli X is Hermitian")
    }

    pub fn pauli_z() -> Self {
        Self::from_matrix(Operator::pauli_z()).expect("Pauli Z is Hermitian")
    }

    /// `axis . sigma` for a unit Bloch vector.
    pub fn bloch(axis: [f64; 3]) -> Result<Self> {
        let norm = axis.iter().map(|x| x * x).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "Bloch axis must be a unit vector (norm {norm})"
            )));
        }
        Self::from_matrix(Operator::bloch(axis))
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn outcomes(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn matrix(&self) -> &Operator {
        &self.matrix
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn projectors(&self) -> &[Operator] {
        &self.projectors
    }
}

/// Completeness and orthogonality of a projector set within [`STRUCT_TOL`].
pub(crate) fn check_projective(projectors: &[Operator]) -> Result<()> {
    let dim = projectors
        .first()
        .ok_or_else(|| Error::InvalidParameter("empty projector set".into()))?
        .dim();
    for p in projectors {
        if p.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: p.dim(),
            });
        }
    }
    let total: Operator = projectors.iter().cloned().sum();
    let deviation = total.max_abs_diff(&Operator::identity(dim));
    if deviation > STRUCT_TOL {
        return Err(Error::IncompleteMeasurement { deviation });
    }
    for (i, p) in projectors.iter().enumerate() {
        for (j, q) in projectors.iter().enumerate() {
            let prod = p * q;
            let err = if i == j {
                prod.max_abs_diff(p)
            } else {
                prod.max_abs_diff(&Operator::zeros(dim))
            };
            if err > STRUCT_TOL {
                return Err(Error::InvalidParameter(format!(
                    "projectors {i} and {j} violate P_i P_j = delta_ij P_i by {err:.3e}"
                )));
            }
        }
    }
    Ok(())
}
