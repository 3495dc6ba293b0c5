//! Qutrit system coupled to a qutrit meter by the generalized control gate
//! `sum_s |s><s| (x) X^s`, where `X|m> = |m + 1 mod 3>`.
//!
//! The first observable is the spin-1 `L_z = diag(1, 0, -1)` read out on the
//! meter; the second is `L_x` on the system.

use std::f64::consts::FRAC_1_SQRT_2;

use super::pipeline::IndirectMeasurement;
use crate::error::Result;
use crate::qcore::{Distribution, Observable, Operator, QuantumState, C64};
use crate::tradeoff::ScenarioDistributions;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct QutritParams {
    pub alpha: f64,
    pub phi_s: f64,
    pub chi12: f64,
    pub chi13: f64,
    pub theta: f64,
    pub phi_m: f64,
}

impl QutritParams {
    pub fn system_amplitudes(&self) -> [C64; 3] {
        let (sa, ca) = self.alpha.sin_cos();
        [
            C64::new(sa * self.phi_s.cos(), 0.0),
            C64::from_polar(sa * self.phi_s.sin(), self.chi12),
            C64::from_polar(ca, self.chi13),
        ]
    }

    pub fn meter_amplitudes(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        [st * self.phi_m.cos(), st * self.phi_m.sin(), ct]
    }

    pub fn indirect_measurement(&self) -> Result<IndirectMeasurement> {
        let a = Observable::from_matrix(l_z())?;
        Ok(IndirectMeasurement {
            system: QuantumState::normalized(self.system_amplitudes().to_vec())?,
            meter: QuantumState::normalized(self.meter_amplitudes().iter().map(|&x| C64::new(x, 0.0)).collect())?,
            coupling: qutrit_coupling(),
            b: Observable::from_matrix(l_x())?,
            meter_observable: a.clone(),
            a,
        })
    }
}

pub fn l_x() -> Operator {
    let h = FRAC_1_SQRT_2;
    Operator::from_real_rows(&[&[0.0, h, 0.0], &[h, 0.0, h], &[0.0, h, 0.0]]).unwrap()
}

pub fn l_y() -> Operator {
    let h = FRAC_1_SQRT_2;
    let z = C64::new(0.0, 0.0);
    let up = C64::new(0.0, -h);
    let down = C64::new(0.0, h);
    Operator::from_rows(vec![vec![z, up, z], vec![down, z, up], vec![z, down, z]]).unwrap()
}

pub fn l_z() -> Operator {
    Operator::diagonal(&[1.0, 0.0, -1.0])
}

/// 9x9 permutation `|s, m> -> |s, m + s mod 3>` (system index slow).
pub fn qutrit_coupling() -> Operator {
    let mut u = Operator::zeros(9);
    for s in 0..3 {
        for m in 0..3 {
            u[(3 * s + (m + s) % 3, 3 * s + m)] = C64::new(1.0, 0.0);
        }
    }
    u
}

/// Distributions from the analytic expressions.
pub fn qutrit_model(p: &QutritParams) -> Result<ScenarioDistributions> {
    let f = p.system_amplitudes();
    let [n1, n2, n3] = f.map(|z| z.norm_sqr());
    let [m1, m2, m3] = p.meter_amplitudes().map(|x| x * x);
    // 2 Re(f_i f_j^*)
    let re2 = |i: usize, j: usize| 2.0 * (f[i] * f[j].conj()).re;
    let (x13, x12, x23) = (re2(0, 2), re2(0, 1), re2(1, 2));
    let r2 = 2f64.sqrt();

    let base_outer = 0.25 * (n1 + 2.0 * n2 + n3);
    let base_mid = 0.5 * (n1 + n3);
    let b = [
        base_outer + 0.25 * (x13 + r2 * x12 + r2 * x23),
        base_mid - 0.5 * x13,
        base_outer + 0.25 * (x13 - r2 * x12 - r2 * x23),
    ];

    let st = p.theta.sin();
    let (sp, cp) = p.phi_m.sin_cos();
    let overlap = (2.0 * p.phi_m).sin() * st * st + (2.0 * p.theta).sin() * (cp + sp);
    let d = [
        base_outer + overlap / 8.0 * (x13 + r2 * x12 + r2 * x23),
        base_mid - overlap / 4.0 * x13,
        base_outer + overlap / 8.0 * (x13 - r2 * x12 - r2 * x23),
    ];

    let a = [n1, n2, n3];
    let c = [n1 * m1 + n2 * m3 + n3 * m2, n1 * m2 + n2 * m1 + n3 * m3, n1 * m3 + n2 * m2 + n3 * m1];
    ScenarioDistributions::new(
        Distribution::new(a.to_vec())?,
        Distribution::new(b.to_vec())?,
        Distribution::new(c.to_vec())?,
        Distribution::new(d.to_vec())?,
    )
}

/// Distributions from Born-rule evaluation of the evolved joint state.
pub fn qutrit_pipeline(p: &QutritParams) -> Result<ScenarioDistributions> {
    p.indirect_measurement()?.distributions()
}
