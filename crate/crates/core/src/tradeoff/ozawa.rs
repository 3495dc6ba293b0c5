use crate::error::{Error, Result};
use crate::qcore::{eig_hermitian, Observable, Operator, QuantumState, C64, STRUCT_TOL};

/// Root-mean-square error/disturbance quantities and the two right-hand sides
/// they are compared with.
#[derive(Debug, Clone, PartialEq)]
pub struct OzawaReport {
    pub eps_rms: f64,
    pub eta_rms: f64,
    pub sigma_a: f64,
    pub sigma_b: f64,
    /// `eps * eta + eps * sigma_b + sigma_a * eta`.
    pub lhs: f64,
    /// `|<[A, B]>| / 2`.
    pub rhs_commutator: f64,
    /// `Tr|sqrt(rho) [A, B] sqrt(rho)| / 2`.
    pub rhs_dab: f64,
}

fn std_dev(state: &QuantumState, x: &Operator) -> f64 {
    let m = state.expectation(x).re;
    let m2 = state.expectation(&(x * x)).re;
    (m2 - m * m).max(0.0).sqrt()
}

fn rms(state: &QuantumState, diff: &Operator) -> f64 {
    state.expectation(&(diff * diff)).re.max(0.0).sqrt()
}

/// Positive square root of a density matrix; eigenvalues in `[-1e-10, 0)` are
/// treated as rounding noise.
fn sqrt_density(rho: &Operator) -> Result<Operator> {
    let eig = eig_hermitian(rho)?;
    if let Some(&min) = eig.values.last() {
        if min < -STRUCT_TOL {
            return Err(Error::NotPositive { min_eigenvalue: min });
        }
    }
    Ok(eig.map_spectrum(|x| x.max(0.0).sqrt()))
}

/// Evaluates the rms relation for system state `rho`, meter state `mu`,
/// coupling `u` on system (x) meter, and meter observable `m`.
pub fn ozawa_quantities(
    rho: &QuantumState,
    mu: &QuantumState,
    a: &Observable,
    b: &Observable,
    u: &Operator,
    m: &Observable,
) -> Result<OzawaReport> {
    let ds = rho.dim();
    let dm = mu.dim();
    for (expected, got) in [(ds, a.dim()), (ds, b.dim()), (dm, m.dim()), (ds * dm, u.dim())] {
        if expected != got {
            return Err(Error::DimensionMismatch { expected, got });
        }
    }
    let deviation = u.unitary_deviation();
    if deviation > STRUCT_TOL {
        return Err(Error::NotUnitary { deviation });
    }

    let joint = rho.tensor(mu);
    let id_s = Operator::identity(ds);
    let id_m = Operator::identity(dm);
    let ud = u.dagger();
    let noise_a = &(&ud * &id_s.kron(m.matrix())) * u;
    let noise_b = &(&ud * &b.matrix().kron(&id_m)) * u;
    let eps_rms = rms(&joint, &(&noise_a - &a.matrix().kron(&id_m)));
    let eta_rms = rms(&joint, &(&noise_b - &b.matrix().kron(&id_m)));

    let sigma_a = std_dev(rho, a.matrix());
    let sigma_b = std_dev(rho, b.matrix());
    let comm = a.matrix().commutator(b.matrix());
    let rhs_commutator = 0.5 * rho.expectation(&comm).norm();

    // i * sqrt(rho) [A, B] sqrt(rho) is Hermitian; its trace norm is the sum of |eigenvalues|.
    let root = sqrt_density(&rho.density())?;
    let sandwiched = (&(&root * &comm) * &root).scale_c(C64::new(0.0, 1.0));
    let herm = Operator::from_fn(ds, |i, j| (sandwiched[(i, j)] + sandwiched[(j, i)].conj()) * 0.5);
    let rhs_dab = 0.5 * eig_hermitian(&herm)?.values.iter().map(|x| x.abs()).sum::<f64>();

    Ok(OzawaReport {
        eps_rms,
        eta_rms,
        sigma_a,
        sigma_b,
        lhs: eps_rms * eta_rms + eps_rms * sigma_b + sigma_a * eta_rms,
        rhs_commutator,
        rhs_dab,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plus_state_moments() {
        let plus = QuantumState::qubit(std::f64::consts::FRAC_PI_4, 0.0);
        let z = Observable::pauli_z();
        let x = Observable::pauli_x();
        let meter = QuantumState::basis(2, 0);
        let r = ozawa_quantities(&plus, &meter, &z, &x, &Operator::cnot(), &z).unwrap();
        assert!((r.sigma_a - 1.0).abs() < 1e-14);
        assert!(r.rhs_commutator.abs() < 1e-14);
        // Sharp CNOT readout of Z.
        assert!(r.eps_rms < 1e-12);
    }

    #[test]
    fn rejects_dimension_mismatch() {
        let z = Observable::pauli_z();
        let s = QuantumState::basis(2, 0);
        assert!(ozawa_quantities(&s, &s, &z, &z, &Operator::identity(2), &z).is_err());
    }
}
