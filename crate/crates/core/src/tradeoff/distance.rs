use itertools::Itertools;

use super::{Permutation, TIE_TOL};
use crate::error::{Error, Result};
use crate::qcore::Distribution;

/// Largest outcome count searched exhaustively (720 permutations).
pub const MAX_PERMUTATION_OUTCOMES: usize = 6;

pub(crate) fn ensure_same_len(p: &Distribution, q: &Distribution) -> Result<()> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch {
            left: p.len(),
            right: q.len(),
        });
    }
    Ok(())
}

pub(crate) fn ensure_searchable(n: usize) -> Result<()> {
    if n > MAX_PERMUTATION_OUTCOMES {
        return Err(Error::PermutationBound {
            n,
            max: MAX_PERMUTATION_OUTCOMES,
        });
    }
    Ok(())
}

/// All permutations of `0..n` in lexicographic order.
pub(crate) fn all_permutations(n: usize) -> impl Iterator<Item = Permutation> {
    (0..n).permutations(n)
}

pub(crate) fn l1(p: &[f64], q: &[f64]) -> f64 {
    p.iter().zip(q).map(|(a, b)| (a - b).abs()).sum()
}

/// `sum_i |p_i - q_i|`.
pub fn statistical_distance(p: &Distribution, q: &Distribution) -> Result<f64> {
    ensure_same_len(p, q)?;
    Ok(l1(p.as_slice(), q.as_slice()))
}

/// Minimum of `sum_i |p_sigma(i) - q_i|` and every relabeling that attains it.
#[derive(Debug, Clone, PartialEq)]
pub struct PermutationMin {
    pub value: f64,
    /// Minimizers in lexicographic order; never empty.
    pub minimizers: Vec<Permutation>,
}

pub fn min_permutation_distance(p: &Distribution, q: &Distribution) -> Result<PermutationMin> {
    ensure_same_len(p, q)?;
    ensure_searchable(p.len())?;
    let (ps, qs) = (p.as_slice(), q.as_slice());

    let scored: Vec<(f64, Permutation)> = all_permutations(p.len())
        .map(|sigma| {
            let v = sigma.iter().zip(qs).map(|(&k, b)| (ps[k] - b).abs()).sum();
            (v, sigma)
        })
        .collect();
    let value = scored.iter().map(|(v, _)| *v).fold(f64::INFINITY, f64::min);
    let minimizers = scored
        .into_iter()
        .filter(|(v, _)| *v <= value + TIE_TOL)
        .map(|(_, s)| s)
        .collect();
    Ok(PermutationMin { value, minimizers })
}
