//! Qubit system read out through a CNOT onto a qubit meter.
//!
//! System `cos(alpha)|0> + e^{i phi} sin(alpha)|1>`, meter
//! `cos(theta)|0> + sin(theta)|1>`, readout observable on the meter equal to
//! the first observable. The closed forms below assume the first observable is
//! Pauli Z; the generic pipeline handles any pair of Bloch axes.

use std::f64::consts::FRAC_PI_4;

use super::pipeline::IndirectMeasurement;
use crate::error::{Error, Result};
use crate::qcore::{Distribution, Observable, Operator, QuantumState};
use crate::tradeoff::{ScenarioDistributions, TIE_TOL};

const AXIS_TOL: f64 = 1e-12;

pub const Z_AXIS: [f64; 3] = [0.0, 0.0, 1.0];
pub const X_AXIS: [f64; 3] = [1.0, 0.0, 0.0];

/// `(1, 1, 1) / sqrt(3)`.
pub fn diagonal_axis() -> [f64; 3] {
    let k = 1.0 / 3f64.sqrt();
    [k, k, k]
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitParams {
    pub alpha: f64,
    pub phi: f64,
    pub theta: f64,
    pub a_axis: [f64; 3],
    pub b_axis: [f64; 3],
}

impl QubitParams {
    pub fn new(alpha: f64, theta: f64, b_axis: [f64; 3]) -> Self {
        Self {
            alpha,
            phi: 0.0,
            theta,
            a_axis: Z_AXIS,
            b_axis,
        }
    }

    fn validate(&self) -> Result<()> {
        for (name, axis) in [("a_axis", self.a_axis), ("b_axis", self.b_axis)] {
            let norm = dot(axis, axis).sqrt();
            if (norm - 1.0).abs() > AXIS_TOL {
                return Err(Error::InvalidParameter(format!("{name} has norm {norm}, expected 1")));
            }
        }
        Ok(())
    }

    fn require_z_axis(&self) -> Result<()> {
        if self.a_axis.iter().zip(Z_AXIS).any(|(x, z)| (x - z).abs() > AXIS_TOL) {
            return Err(Error::InvalidParameter(
                "closed forms require the first observable to be Pauli Z".into(),
            ));
        }
        Ok(())
    }

    /// Bloch vector of the system state.
    pub fn bloch_vector(&self) -> [f64; 3] {
        let s = (2.0 * self.alpha).sin();
        [s * self.phi.cos(), s * self.phi.sin(), (2.0 * self.alpha).cos()]
    }

    pub fn indirect_measurement(&self) -> Result<IndirectMeasurement> {
        self.validate()?;
        let a = Observable::bloch(self.a_axis)?;
        Ok(IndirectMeasurement {
            system: QuantumState::qubit(self.alpha, self.phi),
            meter: QuantumState::qubit(self.theta, 0.0),
            coupling: Operator::cnot(),
            b: Observable::bloch(self.b_axis)?,
            meter_observable: a.clone(),
            a,
        })
    }
}

fn dot(u: [f64; 3], v: [f64; 3]) -> f64 {
    u.iter().zip(&v).map(|(x, y)| x * y).sum()
}

/// Distributions from Born-rule evaluation of the evolved joint state.
pub fn qubit_cnot_model(p: &QubitParams) -> Result<ScenarioDistributions> {
    p.indirect_measurement()?.distributions()
}

/// Means of the two observables and of the two noisy readouts.
struct Means {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

fn means(p: &QubitParams) -> Means {
    let r = p.bloch_vector();
    let a = dot(p.a_axis, r);
    let b = dot(p.b_axis, r);
    let (s, c) = (2.0 * p.theta).sin_cos();
    Means {
        a,
        b,
        c: c * a,
        d: s * b + (1.0 - s) * dot(p.b_axis, p.a_axis) * a,
    }
}

/// The same four distributions from their analytic expressions.
pub fn qubit_analytic_distributions(p: &QubitParams) -> Result<ScenarioDistributions> {
    p.validate()?;
    p.require_z_axis()?;
    let m = means(p);
    ScenarioDistributions::new(
        Distribution::from_mean(m.a)?,
        Distribution::from_mean(m.b)?,
        Distribution::from_mean(m.c)?,
        Distribution::from_mean(m.d)?,
    )
}

/// Analytic error, disturbance branches, the four bound candidates and the slack.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitClosedForms {
    pub error: f64,
    /// Disturbance with outcomes matched as labeled.
    pub eta1: f64,
    /// Disturbance with the two outcomes of the second observable swapped.
    pub eta2: f64,
    pub disturbance: f64,
    pub xi_g: [f64; 4],
    pub bound: f64,
    pub slack: f64,
}

pub fn qubit_closed_forms(p: &QubitParams) -> Result<QubitClosedForms> {
    p.validate()?;
    p.require_z_axis()?;
    if !(0.0..=FRAC_PI_4 + 1e-15).contains(&p.theta) {
        return Err(Error::InvalidParameter(format!(
            "closed forms need theta in [0, pi/4], got {}",
            p.theta
        )));
    }
    let Means { a, b, c: ca, d } = means(p);
    let (s, c) = (2.0 * p.theta).sin_cos();
    let ba = dot(p.b_axis, p.a_axis);

    let error = (1.0 - c) * a.abs();
    let eta1 = (1.0 - s) * (b - ba * a).abs();
    // Swapping the outcomes of `d` flips the sign of its mean: |B + D|.
    let eta2 = ((1.0 + s) * b + (1.0 - s) * ba * a).abs();
    let xi_g = [
        ((a - b).abs() - (ca - d).abs()).abs(),
        ((a + b).abs() - (ca + d).abs()).abs(),
        ((a - b).abs() - (ca + d).abs()).abs(),
        ((a + b).abs() - (ca - d).abs()).abs(),
    ];
    let (disturbance, bound) = if (eta1 - eta2).abs() <= TIE_TOL {
        (eta1.min(eta2), xi_g.iter().copied().fold(0.0, f64::max))
    } else if eta1 < eta2 {
        (eta1, xi_g[0].max(xi_g[1]))
    } else {
        (eta2, xi_g[2].max(xi_g[3]))
    };
    Ok(QubitClosedForms {
        error,
        eta1,
        eta2,
        disturbance,
        xi_g,
        bound,
        slack: error + disturbance - bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_8;

    #[test]
    fn sharp_meter_copies_first_observable() {
        let p = QubitParams::new(0.4, 0.0, X_AXIS);
        let s = qubit_cnot_model(&p).unwrap();
        assert!(s.a().as_slice().iter().zip(s.c().as_slice()).all(|(x, y)| (x - y).abs() < 1e-15));
    }

    #[test]
    fn balanced_meter_gives_uniform_readout() {
        let s = qubit_cnot_model(&QubitParams::new(0.4, FRAC_PI_4, X_AXIS)).unwrap();
        assert!((s.c()[0] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn orthogonal_disturbance_formula() {
        let (alpha, theta) = (0.3, 0.2);
        let s = qubit_cnot_model(&QubitParams::new(alpha, theta, X_AXIS)).unwrap();
        let expected = 0.5 * (1.0 + (2.0 * theta).sin() * (2.0 * alpha).sin());
        assert!((s.d()[0] - expected).abs() < 1e-14);
    }

    #[test]
    fn zero_mean_has_no_error() {
        let f = qubit_closed_forms(&QubitParams::new(FRAC_PI_4, 0.3, diagonal_axis())).unwrap();
        assert!(f.error.abs() < 1e-15);
        let f = qubit_closed_forms(&QubitParams::new(FRAC_PI_8, 0.1, X_AXIS)).unwrap();
        assert!(f.slack.abs() < 1e-14);
    }

    #[test]
    fn tilted_first_axis_rejected_by_closed_forms() {
        let mut p = QubitParams::new(0.1, 0.1, X_AXIS);
        p.a_axis = X_AXIS;
        assert!(qubit_closed_forms(&p).is_err());
        assert!(qubit_cnot_model(&p).is_ok());
    }
}
