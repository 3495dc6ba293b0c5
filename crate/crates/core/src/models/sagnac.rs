//! Sagnac interferometer realizing a polarization-path CNOT, with polarizing
//! beam splitters of finite extinction ratio.
//!
//! Basis index is `2 * pol + path`: polarization (H = 0, V = 1) is the slow
//! index. A beam splitter with extinction ratio `e` transmits H with amplitude
//! `t = sqrt(1 - 1/e)` and leaks `i s = i sqrt(1/e)` into the other path, while
//! V is always routed across.

use std::fmt;

use super::circuit::{invert_runs, weak_strength, Basis, CircuitParams, PovmLabel, PovmSet, Sign};
use crate::error::{Error, Result};
use crate::qcore::{Distribution, Operator, C64};
use crate::tradeoff::{tradeoff_report, ScenarioDistributions, TradeoffReport};

/// Extinction ratio of one beam-splitter side. `Ideal` stands for an infinite ratio.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum Extinction {
    #[default]
    Ideal,
    Ratio(f64),
}

impl Extinction {
    /// Infinite input maps to `Ideal`; finite input must be at least 1.
    pub fn new(e: f64) -> Result<Self> {
        if e == f64::INFINITY {
            Ok(Extinction::Ideal)
        } else if e.is_finite() && e >= 1.0 {
            Ok(Extinction::Ratio(e))
        } else {
            Err(Error::InvalidParameter(format!("extinction ratio must be >= 1, got {e}")))
        }
    }

    pub fn value(self) -> f64 {
        match self {
            Extinction::Ideal => f64::INFINITY,
            Extinction::Ratio(e) => e,
        }
    }

    pub fn is_ideal(self) -> bool {
        matches!(self, Extinction::Ideal)
    }

    /// Leak and transmission amplitudes `(s, t)`; exactly `(0, 1)` when ideal.
    pub fn amplitudes(self) -> (f64, f64) {
        match self {
            Extinction::Ideal => (0.0, 1.0),
            Extinction::Ratio(e) => ((1.0 / e).sqrt(), (1.0 - 1.0 / e).sqrt()),
        }
    }
}

impl fmt::Display for Extinction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extinction::Ideal => f.write_str("inf"),
            Extinction::Ratio(e) => write!(f, "{e}"),
        }
    }
}

fn check_coupling(gamma: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&gamma) {
        return Err(Error::InvalidParameter(format!("coupling must lie in [0, 1], got {gamma}")));
    }
    Ok((1.0 - gamma * gamma).max(0.0).sqrt())
}

fn projector(bit: usize) -> Operator {
    if bit == 0 {
        Operator::diagonal(&[1.0, 0.0])
    } else {
        Operator::diagonal(&[0.0, 1.0])
    }
}

fn beam_splitter(e: Extinction) -> Operator {
    let (s, t) = e.amplitudes();
    let h_part = &Operator::identity(2).scale(t) + &Operator::pauli_x().scale_c(C64::new(0.0, s));
    &projector(0).kron(&h_part) + &projector(1).kron(&Operator::pauli_x())
}

/// 4x4 transfer matrix of the interferometer.
pub fn sagnac_unitary(gamma: f64, e1: Extinction, e2: Extinction) -> Result<Operator> {
    let gamma_bar = check_coupling(gamma)?;
    let id = Operator::identity(2);
    let path_flip = &id.kron(&projector(0)) + &Operator::pauli_x().kron(&projector(1));
    let rotation = (&Operator::pauli_z().scale(gamma) + &Operator::pauli_x().scale(gamma_bar)).kron(&id);
    let phase = Operator::pauli_z().kron(&id);
    let factors = [&path_flip, &beam_splitter(e2), &rotation, &phase, &path_flip, &beam_splitter(e1)];
    Ok(factors.iter().skip(1).fold(factors[0].clone(), |acc, f| &acc * f))
}

/// Polarization Kraus operators for exit path 0 and exit path 1, given entry in path 0.
pub fn sagnac_kraus(gamma: f64, e1: Extinction, e2: Extinction) -> Result<[Operator; 2]> {
    let u = sagnac_unitary(gamma, e1, e2)?;
    let block = |path: usize| Operator::from_fn(2, |i, j| u[(2 * i + path, 2 * j)]);
    Ok([block(0), block(1)])
}

/// Pauli coefficients of one element, `a I + b X + c Y + d Z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SagnacCoefficients {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl SagnacCoefficients {
    pub fn operator(&self) -> Operator {
        let terms = [
            Operator::identity(2).scale(self.a),
            Operator::pauli_x().scale(self.b),
            Operator::pauli_y().scale(self.c),
            Operator::pauli_z().scale(self.d),
        ];
        terms.into_iter().sum()
    }
}

/// Coefficients of the `+1` and `-1` elements from their closed forms.
pub fn sagnac_coefficients(gamma: f64, e1: Extinction, e2: Extinction) -> Result<[SagnacCoefficients; 2]> {
    let gamma_bar = check_coupling(gamma)?;
    let (s1, t1) = e1.amplitudes();
    let (s2, t2) = e2.amplitudes();
    let g = 2.0 * gamma * gamma - 1.0;
    let cross = 2.0 * gamma * gamma_bar;
    let shared = cross * s1 * s2 * t1 * t2;
    let leak = s1 * s1 * s2 * s2;

    let a_shift = shared + leak;
    let c_half = 0.5 * (cross * s1 * t2 * t2 - 2.0 * gamma * gamma * t1 * s2 * t2);
    let d_half = 0.5 * (shared + g * t2 * t2 - s2 * s2 + leak);
    Ok([1.0, -1.0].map(|sign| SagnacCoefficients {
        a: 0.5 * (1.0 + sign * a_shift),
        b: 0.0,
        c: sign * c_half,
        d: sign * d_half,
    }))
}

/// Two-outcome POVM built from the Kraus operators.
pub fn sagnac_povm(gamma: f64, e1: Extinction, e2: Extinction) -> Result<PovmSet> {
    let kraus = sagnac_kraus(gamma, e1, e2)?;
    let elements = kraus.iter().map(|k| &k.dagger() * k).collect();
    PovmSet::new(vec![PovmLabel::Binary(Sign::Plus), PovmLabel::Binary(Sign::Minus)], elements)
}

/// Offsets left after dividing the probe marginal by the readout strength:
/// `(identity, Z, Y)` parts of `(Pi_+ - Pi_-) / (2 gamma^2 - 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeOffsets {
    pub identity: f64,
    pub z: f64,
    pub y: f64,
}

pub fn probe_offsets(gamma: f64, e1: Extinction, e2: Extinction) -> Result<ProbeOffsets> {
    let g = weak_strength(gamma)?;
    let [plus, minus] = sagnac_coefficients(gamma, e1, e2)?;
    Ok(ProbeOffsets {
        identity: (plus.a - minus.a) / g,
        z: (plus.d - minus.d) / g,
        y: (plus.c - minus.c) / g,
    })
}

fn meter_extinction(p: &CircuitParams) -> (Extinction, Extinction) {
    p.meter_extinction.unwrap_or((p.e1, p.e2))
}

/// Eight-outcome POVM of the circuit with every CNOT replaced by a Sagnac
/// interferometer. The meter stage uses `cos(theta)` as its coupling.
pub fn imperfect_povm(p: &CircuitParams, basis: Basis) -> Result<PovmSet> {
    if !(0.0..=std::f64::consts::FRAC_PI_2 + 1e-15).contains(&p.theta) {
        return Err(Error::InvalidParameter(format!("meter angle must lie in [0, pi/2], got {}", p.theta)));
    }
    let probe = sagnac_kraus(p.gamma, p.e1, p.e2)?;
    let (m1, m2) = meter_extinction(p);
    let meter = sagnac_kraus(p.theta.cos().min(1.0), m1, m2)?;
    let h = Operator::hadamard();
    let plus_x = (&Operator::identity(2) + &Operator::pauli_x()).scale(0.5);
    let minus_x = (&Operator::identity(2) - &Operator::pauli_x()).scale(0.5);

    let labels = PovmLabel::triples();
    let elements = labels
        .iter()
        .map(|lab| {
            let PovmLabel::Triple { j, k, l } = *lab else { unreachable!() };
            let first = &probe[usize::from(j == Sign::Minus)];
            let first = match basis {
                Basis::Z => first.clone(),
                Basis::X => &(&h * first) * &h,
            };
            let kraus = &meter[usize::from(k == Sign::Minus)] * &first;
            let readout = if l == Sign::Plus { &plus_x } else { &minus_x };
            &(&kraus.dagger() * readout) * &kraus
        })
        .collect();
    PovmSet::new(labels, elements)
}

/// Eight-outcome distributions of both runs with imperfect optics.
pub fn imperfect_runs(p: &CircuitParams) -> Result<(Distribution, Distribution)> {
    let state = p.system_state();
    let z = imperfect_povm(p, Basis::Z)?.probabilities(&state)?;
    let x = imperfect_povm(p, Basis::X)?.probabilities(&state)?;
    Ok((z, x))
}

/// Model output for the circuit built from imperfect interferometers.
#[derive(Debug, Clone)]
pub struct ImperfectProbabilities {
    pub z_run: Distribution,
    pub x_run: Distribution,
    pub scenario: ScenarioDistributions,
    pub report: TradeoffReport,
}

impl ImperfectProbabilities {
    pub fn lhs(&self) -> f64 {
        self.report.lhs()
    }

    pub fn rhs(&self) -> f64 {
        self.report.rhs()
    }
}

pub fn imperfect_probabilities(p: &CircuitParams) -> Result<ImperfectProbabilities> {
    weak_strength(p.gamma)?;
    let (z_run, x_run) = imperfect_runs(p)?;
    let scenario = invert_runs(&z_run, &x_run, p.gamma)?;
    let report = tradeoff_report(&scenario)?;
    Ok(ImperfectProbabilities { z_run, x_run, scenario, report })
}

/// Recovered `(p_a+, p_b+)` from the probe offsets and the system's Bloch vector.
pub fn recovered_from_offsets(p: &CircuitParams) -> Result<(f64, f64)> {
    let o = probe_offsets(p.gamma, p.e1, p.e2)?;
    let (s2, c2) = (2.0 * p.alpha).sin_cos();
    let (x, y, z) = (s2 * p.phi.cos(), s2 * p.phi.sin(), c2);
    let a = 0.5 * (1.0 + o.identity + o.z * z + o.y * y);
    let b = 0.5 * (1.0 + o.identity + o.z * x - o.y * y);
    Ok((a, b))
}
