//! Cyclic Jacobi eigensolver for small Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a_pq` with a diagonal
//! unitary, then applies the classic real Jacobi rotation to the resulting
//! real symmetric 2x2 block. Sweeps continue until the off-diagonal Frobenius
//! norm drops below `1e-13` (relative to the matrix norm when that exceeds 1).

use super::operator::{r, Operator, C64};
use super::STRUCT_TOL;
use crate::error::{Error, Result};

pub const MAX_EIG_DIM: usize = 64;
const OFF_DIAG_TOL: f64 = 1e-13;
const MAX_SWEEPS: usize = 100;
const PHASE_TOL: f64 = 1e-12;

/// Eigenvalues in descending order with matching orthonormal eigenvectors.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<C64>>,
}

impl EigenDecomposition {
    /// `sum_k f(lambda_k) |v_k><v_k|`.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> Operator {
        let dim = self.values.len();
        let mut out = Operator::zeros(dim);
        for (&lambda, v) in self.values.iter().zip(&self.vectors) {
            out = &out + &Operator::outer(v).scale(f(lambda));
        }
        out
    }

    pub fn reconstruct(&self) -> Operator {
        self.map_spectrum(|x| x)
    }
}

fn off_diagonal_norm(a: &Operator) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Diagonalizes a Hermitian matrix.
pub fn eig_hermitian(h: &Operator) -> Result<EigenDecomposition> {
    let n = h.dim();
    if n > MAX_EIG_DIM {
        return Err(Error::InvalidParameter(format!(
            "eigensolver limited to dimension {MAX_EIG_DIM}, got {n}"
        )));
    }
    let asym = h.hermitian_asymmetry();
    if asym > STRUCT_TOL {
        return Err(Error::NotHermitian { asymmetry: asym });
    }

    // Symmetrize so that tiny input asymmetry does not leak into the rotations.
    let mut a = Operator::from_fn(n, |i, j| (h[(i, j)] + h[(j, i)].conj()) * 0.5);
    let mut v = Operator::identity(n);
    let threshold = OFF_DIAG_TOL * a.frobenius_norm().max(1.0);

    let mut converged = off_diagonal_norm(&a) < threshold;
    let mut sweeps = 0;
    while !converged {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        converged = off_diagonal_norm(&a) < threshold;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re).then(i.cmp(&j)));

    let values = order.iter().map(|&k| a[(k, k)].re).collect();
    let vectors = order
        .iter()
        .map(|&k| {
            let mut col: Vec<C64> = (0..n).map(|i| v[(i, k)]).collect();
            fix_phase(&mut col);
            col
        })
        .collect();
    Ok(EigenDecomposition { values, vectors })
}

fn rotate(a: &mut Operator, v: &mut Operator, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let phase = apq / mag; // e^{i phi}

    let theta = (aqq - app) / (2.0 * mag);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let cs = 1.0 / (t * t + 1.0).sqrt();
    let sn = t * cs;

    // G = diag(1, e^{-i phi}) * [[c, s], [-s, c]]
    let g_pp = r(cs);
    let g_pq = r(sn);
    let g_qp = -phase.conj() * sn;
    let g_qq = phase.conj() * cs;

    let n = a.dim();
    // A <- A G
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * g_pp + akq * g_qp;
        a[(k, q)] = akp * g_pq + akq * g_qq;
    }
    // A <- G^dagger A
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = g_pp.conj() * apk + g_qp.conj() * aqk;
        a[(q, k)] = g_pq.conj() * apk + g_qq.conj() * aqk;
    }
    a[(p, q)] = r(0.0);
    a[(q, p)] = r(0.0);
    a[(p, p)] = r(a[(p, p)].re);
    a[(q, q)] = r(a[(q, q)].re);
    // V <- V G
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * g_pp + vkq * g_qp;
        v[(k, q)] = vkp * g_pq + vkq * g_qq;
    }
}

/// Makes the first component with modulus above `PHASE_TOL` real and positive.
pub(crate) fn fix_phase(ket: &mut [C64]) {
    if let Some(pivot) = ket.iter().find(|z| z.norm() > PHASE_TOL).copied() {
        let rot = pivot.conj() / pivot.norm();
        for z in ket.iter_mut() {
            *z *= rot;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::operator::c;

    fn orthonormality_error(vs: &[Vec<C64>]) -> f64 {
        let mut worst = 0.0_f64;
        for (i, u) in vs.iter().enumerate() {
            for (j, w) in vs.iter().enumerate() {
                let ip: C64 = u.iter().zip(w).map(|(a, b)| a.conj() * b).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((ip - r(target)).norm());
            }
        }
        worst
    }

    #[test]
    fn pauli_z_spectrum() {
        let e = eig_hermitian(&Operator::pauli_z()).unwrap();
        assert_eq!(e.values, vec![1.0, -1.0]);
        assert_eq!(e.vectors[0], vec![r(1.0), r(0.0)]);
        assert_eq!(e.vectors[1], vec![r(0.0), r(1.0)]);
    }

    #[test]
    fn pauli_y_needs_complex_rotation() {
        let e = eig_hermitian(&Operator::pauli_y()).unwrap();
        assert!((e.values[0] - 1.0).abs() < 1e-14);
        assert!((e.values[1] + 1.0).abs() < 1e-14);
        assert!(e.reconstruct().max_abs_diff(&Operator::pauli_y()) < 1e-14);
        // |+i> = (|0> + i|1>)/sqrt2 with the real-positive first component.
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((e.vectors[0][0] - r(h)).norm() < 1e-14);
        assert!((e.vectors[0][1] - c(0.0, h)).norm() < 1e-14);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = Operator::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        match eig_hermitian(&m) {
            Err(Error::NotHermitian { asymmetry }) => assert!((asymmetry - 1.0).abs() < 1e-15),
            other => panic!("expected NotHermitian, got {other:?}"),
        }
    }

    #[test]
    fn degenerate_spectrum_is_orthonormal() {
        let m = Operator::diagonal(&[2.0, 2.0, -1.0]);
        let e = eig_hermitian(&m).unwrap();
        assert_eq!(e.values, vec![2.0, 2.0, -1.0]);
        assert!(orthonormality_error(&e.vectors) < 1e-14);
    }

    #[test]
    fn dense_hermitian_reconstructs() {
        let m = Operator::from_rows(vec![
            vec![r(2.0), c(1.0, -1.0), c(0.0, 0.5)],
            vec![c(1.0, 1.0), r(-1.0), c(0.3, 0.0)],
            vec![c(0.0, -0.5), c(0.3, 0.0), r(0.5)],
        ])
        .unwrap();
        let e = eig_hermitian(&m).unwrap();
        assert!(e.reconstruct().max_abs_diff(&m) < 1e-12);
        assert!(orthonormality_error(&e.vectors) < 1e-12);
        assert!(e.values.windows(2).all(|w| w[0] >= w[1]));
        let trace: f64 = e.values.iter().sum();
        assert!((trace - 1.5).abs() < 1e-12);
    }

    #[test]
    fn deterministic_output() {
        let m = Operator::from_rows(vec![vec![r(1.0), c(0.2, 0.7)], vec![c(0.2, -0.7), r(-0.4)]]).unwrap();
        let a = eig_hermitian(&m).unwrap();
        let b = eig_hermitian(&m).unwrap();
        assert_eq!(a.values, b.values);
        assert_eq!(a.vectors, b.vectors);
    }
}
