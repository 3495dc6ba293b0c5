use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

#[inline]
pub(crate) fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[inline]
pub(crate) fn r(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Dense square complex matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct Operator {
    dim: usize,
    data: Vec<C64>,
}

impl Operator {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![C64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| if i == j { r(1.0) } else { r(0.0) })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    /// Builds an operator from rows; every row must have as many entries as there are rows.
    pub fn from_rows(rows: Vec<Vec<C64>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::InvalidParameter("operator must have dimension >= 1".into()));
        }
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Self { dim, data })
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|row| row.iter().map(|&x| r(x)).collect()).collect())
    }

    pub fn diagonal(values: &[f64]) -> Self {
        Self::from_fn(values.len(), |i, j| if i == j { r(values[i]) } else { r(0.0) })
    }

    /// `|v><v|` for a (not necessarily normalized) ket.
    pub fn outer(ket: &[C64]) -> Self {
        Self::outer2(ket, ket)
    }

    /// `|u><v|`.
    pub fn outer2(u: &[C64], v: &[C64]) -> Self {
        assert_eq!(u.len(), v.len(), "outer product of kets with different lengths");
        Self::from_fn(u.len(), |i, j| u[i] * v[j].conj())
    }

    pub fn pauli_x() -> Self {
        Self::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap()
    }

    pub fn pauli_y() -> Self {
        Self::from_rows(vec![vec![r(0.0), c(0.0, -1.0)], vec![c(0.0, 1.0), r(0.0)]]).unwrap()
    }

    pub fn pauli_z() -> Self {
        Self::diagonal(&[1.0, -1.0])
    }

    pub fn hadamard() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self::from_real_rows(&[&[h, h], &[h, -h]]).unwrap()
    }

    /// Two-qubit CNOT with the left (slow) qubit as control.
    pub fn cnot() -> Self {
        let p0 = Self::diagonal(&[1.0, 0.0]);
        let p1 = Self::diagonal(&[0.0, 1.0]);
        &p0.kron(&Self::identity(2)) + &p1.kron(&Self::pauli_x())
    }

    /// `a . sigma` for a real Bloch vector.
    pub fn bloch(axis: [f64; 3]) -> Self {
        &(&Self::pauli_x().scale(axis[0]) + &Self::pauli_y().scale(axis[1])) + &Self::pauli_z().scale(axis[2])
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn dagger(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, k: f64) -> Self {
        self.scale_c(r(k))
    }

    pub fn scale_c(&self, k: C64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * k).collect(),
        }
    }

    /// Kronecker product, `self` as the slow index.
    pub fn kron(&self, other: &Self) -> Self {
        let (n, m) = (self.dim, other.dim);
        Self::from_fn(n * m, |i, j| self[(i / m, j / m)] * other[(i % m, j % m)])
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn apply(&self, ket: &[C64]) -> Vec<C64> {
        assert_eq!(ket.len(), self.dim, "ket dimension does not match operator");
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self[(i, j)] * ket[j]).sum())
            .collect()
    }

    /// `<u|self|v>`.
    pub fn sandwich(&self, u: &[C64], v: &[C64]) -> C64 {
        self.apply(v).iter().zip(u).map(|(a, b)| b.conj() * a).sum()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "comparing operators of different dimension");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest `|A_ij - conj(A_ji)|`.
    pub fn hermitian_asymmetry(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_asymmetry() <= tol
    }

    /// Largest entry of `|U^dagger U - I|`.
    pub fn unitary_deviation(&self) -> f64 {
        (&self.dagger() * self).max_abs_diff(&Self::identity(self.dim))
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitary_deviation() <= tol
    }

    /// Hermitian and every eigenvalue `>= -tol`.
    pub fn is_positive_semidefinite(&self, tol: f64) -> bool {
        match super::eig_hermitian(self) {
            Ok(e) => e.values.last().is_none_or(|&v| v >= -tol),
            Err(_) => false,
        }
    }
}

impl Index<(usize, usize)> for Operator {
    type Output = C64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for Operator {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Mul for &Operator {
    type Output = Operator;

    fn mul(self, rhs: &Operator) -> Operator {
        assert_eq!(self.dim, rhs.dim, "multiplying operators of different dimension");
        let n = self.dim;
        let mut out = Operator::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl Add for &Operator {
    type Output = Operator;

    fn add(self, rhs: &Operator) -> Operator {
        assert_eq!(self.dim, rhs.dim, "adding operators of different dimension");
        Operator {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Operator {
    type Output = Operator;

    fn sub(self, rhs: &Operator) -> Operator {
        assert_eq!(self.dim, rhs.dim, "subtracting operators of different dimension");
        Operator {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Operator {
    type Output = Operator;

    fn neg(self) -> Operator {
        self.scale(-1.0)
    }
}

impl std::iter::Sum for Operator {
    /// Panics on an empty iterator since the dimension would be unknown.
    fn sum<I: Iterator<Item = Operator>>(mut iter: I) -> Operator {
        let first = iter.next().expect("sum of an empty operator iterator");
        iter.fold(first, |acc, x| &acc + &x)
    }
}

impl fmt::Debug for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Operator({}x{}) [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                let z = self[(i, j)];
                write!(f, "{:>9.5}{:+.5}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_tensor_identity() {
        let i2 = Operator::identity(2);
        assert_eq!(i2.kron(&i2), Operator::identity(4));
    }

    #[test]
    fn cnot_is_permutation_matrix() {
        let expected = Operator::from_real_rows(&[
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 1.0],
            &[0.0, 0.0, 1.0, 0.0],
        ])
        .unwrap();
        assert_eq!(Operator::cnot(), expected);
    }

    #[test]
    fn kron_is_left_slow() {
        // |1><0| (x) |0><1| has its single 1 at row 2 (= 1*2+0), column 1 (= 0*2+1).
        let a = Operator::outer2(&[r(0.0), r(1.0)], &[r(1.0), r(0.0)]);
        let b = Operator::outer2(&[r(1.0), r(0.0)], &[r(0.0), r(1.0)]);
        let k = a.kron(&b);
        assert_eq!(k[(2, 1)], r(1.0));
        assert!((k.frobenius_norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn pauli_algebra() {
        let (x, y, z) = (Operator::pauli_x(), Operator::pauli_y(), Operator::pauli_z());
        let xy = &x * &y;
        assert!(xy.max_abs_diff(&z.scale_c(c(0.0, 1.0))) < 1e-15);
        assert!(x.commutator(&y).max_abs_diff(&z.scale_c(c(0.0, 2.0))) < 1e-15);
        for p in [&x, &y, &z] {
            assert!(p.is_hermitian(0.0));
            assert!(p.is_unitary(1e-15));
        }
    }

    #[test]
    fn hadamard_conjugates_z_to_x() {
        let h = Operator::hadamard();
        let hzh = &(&h * &Operator::pauli_z()) * &h;
        assert!(hzh.max_abs_diff(&Operator::pauli_x()) < 1e-15);
    }

    #[test]
    fn non_square_rows_rejected() {
        let err = Operator::from_rows(vec![vec![r(1.0), r(0.0)], vec![r(0.0)]]).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
    }

    #[test]
    fn psd_predicate() {
        assert!(Operator::diagonal(&[1.0, 0.0]).is_positive_semidefinite(1e-12));
        assert!(!Operator::pauli_z().is_positive_semidefinite(1e-12));
        assert!(!Operator::outer2(&[r(1.0), r(0.0)], &[r(0.0), r(1.0)]).is_positive_semidefinite(1e-12));
    }
}
