//! Random states, unitaries and observables for stress tests.
//!
//! Kets and unitaries come from complex Gaussian samples; unitaries are the
//! Gram-Schmidt orthonormalization of a complex Gaussian matrix.

use rand::Rng;
use rand_distr::{Exp1, StandardNormal};

use super::distribution::Distribution;
use super::observable::Observable;
use super::operator::{Operator, C64};
use super::state::QuantumState;

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn gaussian_ket<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Vec<C64> {
    (0..dim).map(|_| gaussian(rng)).collect()
}

pub fn pure_state<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> QuantumState {
    loop {
        if let Ok(s) = QuantumState::normalized(gaussian_ket(rng, dim)) {
            return s;
        }
    }
}

/// Full-rank mixed state `G G^dagger / Tr(G G^dagger)` with `G` complex Gaussian.
pub fn mixed_state<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> QuantumState {
    let g = Operator::from_fn(dim, |_, _| gaussian(rng));
    let w = &g * &g.dagger();
    let tr = w.trace().re;
    let rho = w.scale(1.0 / tr);
    // Clean up rounding so the Hermiticity check is exact.
    let rho = Operator::from_fn(dim, |i, j| (rho[(i, j)] + rho[(j, i)].conj()) * 0.5);
    QuantumState::Mixed(rho)
}

/// Haar-like unitary: columns of a complex Gaussian matrix, orthonormalized.
pub fn unitary<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Operator {
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(dim);
    while cols.len() < dim {
        let mut v = gaussian_ket(rng, dim);
        for u in &cols {
            let proj: C64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (vi, ui) in v.iter_mut().zip(u) {
                *vi -= proj * ui;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-8 {
            continue;
        }
        v.iter_mut().for_each(|z| *z /= norm);
        cols.push(v);
    }
    Operator::from_fn(dim, |i, j| cols[j][i])
}

/// Observable `U diag(spectrum) U^dagger` with spectrum uniform in `[-1, 1]`.
pub fn observable<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Observable {
    let spectrum: Vec<f64> = (0..dim).map(|_| rng.random_range(-1.0..=1.0)).collect();
    let u = unitary(rng, dim);
    let m = &(&u * &Operator::diagonal(&spectrum)) * &u.dagger();
    let m = Operator::from_fn(dim, |i, j| (m[(i, j)] + m[(j, i)].conj()) * 0.5);
    Observable::from_matrix(m).expect("conjugated diagonal matrix is Hermitian")
}

/// Flat-Dirichlet distribution over `n` outcomes.
pub fn distribution<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Distribution {
    let w: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let total: f64 = w.iter().sum();
    Distribution::new(w.into_iter().map(|x| x / total).collect()).expect("normalized weights")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn unitary_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for dim in 1..=6 {
            assert!(unitary(&mut rng, dim).is_unitary(1e-12));
        }
    }

    #[test]
    fn mixed_state_is_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let s = mixed_state(&mut rng, 3);
        assert!(QuantumState::mixed(s.density()).is_ok());
    }

    #[test]
    fn observable_spectrum_in_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let obs = observable(&mut rng, 4);
        assert!(obs.eigenvalues().iter().all(|a| a.abs() <= 1.0 + 1e-12));
    }
}
