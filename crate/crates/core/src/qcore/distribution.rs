use std::ops::Index;

use crate::error::{Error, Result};

const ENTRY_TOL: f64 = 1e-12;
const SUM_TOL: f64 = 1e-10;

/// Outcome probabilities in a fixed outcome order.
///
/// A distribution built with [`Distribution::new`] is validated and flagged
/// physical. [`Distribution::unnormalized`] skips validation; it carries the
/// output of weak-measurement inversion, which can leave `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    probabilities: Vec<f64>,
    physical: bool,
}

impl Distribution {
    pub fn new(probabilities: Vec<f64>) -> Result<Self> {
        if probabilities.is_empty() {
            return Err(Error::NonphysicalDistribution("no outcomes".into()));
        }
        for (i, &p) in probabilities.iter().enumerate() {
            if !p.is_finite() || !(-ENTRY_TOL..=1.0 + ENTRY_TOL).contains(&p) {
                return Err(Error::NonphysicalDistribution(format!("entry {i} = {p}")));
            }
        }
        let total: f64 = probabilities.iter().sum();
        if (total - 1.0).abs() > SUM_TOL {
            return Err(Error::NonphysicalDistribution(format!("entries sum to {total}")));
        }
        Ok(Self {
            probabilities,
            physical: true,
        })
    }

    /// Wraps arbitrary finite values without normalization checks.
    pub fn unnormalized(probabilities: Vec<f64>) -> Result<Self> {
        if let Some(i) = probabilities.iter().position(|p| !p.is_finite()) {
            return Err(Error::NonphysicalDistribution(format!(
                "entry {i} is not finite"
            )));
        }
        Ok(Self {
            probabilities,
            physical: false,
        })
    }

    /// Two-outcome distribution `((1 + m)/2, (1 - m)/2)` for a signed mean `m`.
    ///
    /// Flagged physical only when `|m| <= 1`.
    pub fn from_mean(m: f64) -> Result<Self> {
        let probs = vec![0.5 * (1.0 + m), 0.5 * (1.0 - m)];
        if m.abs() <= 1.0 + 2.0 * ENTRY_TOL {
            Self::new(probs)
        } else {
            Self::unnormalized(probs)
        }
    }

    pub fn len(&self) -> usize {
        self.probabilities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probabilities.is_empty()
    }

    pub fn is_physical(&self) -> bool {
        self.physical
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.probabilities
    }

    /// Relabeled copy with entry `i` taken from index `sigma[i]`.
    pub fn permuted(&self, sigma: &[usize]) -> Self {
        assert_eq!(sigma.len(), self.len(), "permutation length mismatch");
        Self {
            probabilities: sigma.iter().map(|&k| self.probabilities[k]).collect(),
            physical: self.physical,
        }
    }
}

impl Index<usize> for Distribution {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.probabilities[i]
    }
}
