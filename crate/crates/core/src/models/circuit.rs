//! Three-qubit weak-measurement circuit.
//!
//! The system qubit controls a CNOT onto a probe `gamma|0> + gammabar|1>` and
//! then a CNOT onto a meter `cos(theta)|0> + sin(theta)|1>`. The probe and
//! meter are read in Z and the system in X, giving eight outcomes labeled
//! `(j, k, l)` = (probe, meter, system). In the X run the first CNOT is wrapped
//! in Hadamards on the system, turning the weak probe readout into an X
//! measurement.
//!
//! Outcome index is `4j + 2k + l` with `+` mapped to 0.

use std::fmt;

use super::sagnac::{imperfect_runs, Extinction};
use crate::error::{Error, Result};
use crate::qcore::{born_probabilities, povm_probabilities, Distribution, Operator, QuantumState, STRUCT_TOL};
use crate::tradeoff::ScenarioDistributions;

/// Below this `|2 gamma^2 - 1|` the weak readout cannot be inverted.
const INVERSION_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    fn bit(self) -> usize {
        match self {
            Sign::Plus => 0,
            Sign::Minus => 1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// Which observable the weak probe stage measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis {
    Z,
    X,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Basis::Z => "Z",
            Basis::X => "X",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PovmLabel {
    /// Probe, meter and system outcomes.
    Triple { j: Sign, k: Sign, l: Sign },
    Binary(Sign),
}

impl PovmLabel {
    /// The eight triple labels in outcome-index order.
    pub fn triples() -> Vec<PovmLabel> {
        let mut out = Vec::with_capacity(8);
        for j in Sign::BOTH {
            for k in Sign::BOTH {
                for l in Sign::BOTH {
                    out.push(PovmLabel::Triple { j, k, l });
                }
            }
        }
        out
    }
}

impl fmt::Display for PovmLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PovmLabel::Triple { j, k, l } => write!(f, "{j}{k}{l}"),
            PovmLabel::Binary(s) => write!(f, "{s}"),
        }
    }
}

pub fn triple_index(j: Sign, k: Sign, l: Sign) -> usize {
    4 * j.bit() + 2 * k.bit() + l.bit()
}

/// Labeled positive operators resolving the identity.
#[derive(Debug, Clone)]
pub struct PovmSet {
    labels: Vec<PovmLabel>,
    elements: Vec<Operator>,
}

impl PovmSet {
    pub fn new(labels: Vec<PovmLabel>, elements: Vec<Operator>) -> Result<Self> {
        if labels.len() != elements.len() || elements.is_empty() {
            return Err(Error::LengthMismatch {
                left: labels.len(),
                right: elements.len(),
            });
        }
        let dim = elements[0].dim();
        for e in &elements {
            if !e.is_positive_semidefinite(STRUCT_TOL) {
                let min = crate::qcore::eig_hermitian(e)
                    .map(|d| d.values.last().copied().unwrap_or(0.0))
                    .unwrap_or(f64::NAN);
                return Err(Error::NotPositive { min_eigenvalue: min });
            }
        }
        let total: Operator = elements.iter().cloned().sum();
        let deviation = total.max_abs_diff(&Operator::identity(dim));
        if deviation > STRUCT_TOL {
            return Err(Error::IncompleteMeasurement { deviation });
        }
        Ok(Self { labels, elements })
    }

    pub fn labels(&self) -> &[PovmLabel] {
        &self.labels
    }

    pub fn elements(&self) -> &[Operator] {
        &self.elements
    }

    pub fn probabilities(&self, state: &QuantumState) -> Result<Distribution> {
        povm_probabilities(state, &self.elements)
    }

    /// Sum of the elements whose label satisfies `keep`.
    pub fn coarse_grain(&self, keep: impl Fn(&PovmLabel) -> bool) -> Operator {
        let dim = self.elements[0].dim();
        self.labels
            .iter()
            .zip(&self.elements)
            .filter(|(lab, _)| keep(lab))
            .fold(Operator::zeros(dim), |acc, (_, e)| &acc + e)
    }
}

/// Parameters of the photonic circuit and its optical imperfections.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircuitParams {
    pub alpha: f64,
    pub phi: f64,
    pub gamma: f64,
    pub theta: f64,
    pub e1: Extinction,
    pub e2: Extinction,
    /// Extinction ratios of the meter-stage beam splitters; `None` reuses `(e1, e2)`.
    pub meter_extinction: Option<(Extinction, Extinction)>,
}

impl CircuitParams {
    /// Ideal optics, real amplitudes.
    pub fn new(alpha: f64, gamma: f64, theta: f64) -> Self {
        Self {
            alpha,
            phi: 0.0,
            gamma,
            theta,
            e1: Extinction::Ideal,
            e2: Extinction::Ideal,
            meter_extinction: None,
        }
    }

    pub fn with_extinction(mut self, e1: Extinction, e2: Extinction) -> Self {
        self.e1 = e1;
        self.e2 = e2;
        self
    }

    pub fn with_meter_extinction(mut self, e1: Extinction, e2: Extinction) -> Self {
        self.meter_extinction = Some((e1, e2));
        self
    }

    pub fn is_ideal(&self) -> bool {
        let meter = self.meter_extinction.unwrap_or((self.e1, self.e2));
        [self.e1, self.e2, meter.0, meter.1].iter().all(|e| e.is_ideal())
    }

    pub fn system_state(&self) -> QuantumState {
        QuantumState::qubit(self.alpha, self.phi)
    }

    pub fn gamma_bar(&self) -> f64 {
        (1.0 - self.gamma * self.gamma).max(0.0).sqrt()
    }
}

fn check_gamma(gamma: f64) -> Result<()> {
    let lo = std::f64::consts::FRAC_1_SQRT_2;
    if !(lo - 1e-12..=1.0).contains(&gamma) {
        return Err(Error::InvalidParameter(format!(
            "probe coupling gamma must lie in [1/sqrt2, 1], got {gamma}"
        )));
    }
    Ok(())
}

/// Eight-outcome POVM on the system for the ideal circuit.
pub fn circuit_povm(gamma: f64, theta: f64, basis: Basis) -> Result<PovmSet> {
    check_gamma(gamma)?;
    let g = 2.0 * gamma * gamma - 1.0;
    let cross = 2.0 * gamma * (1.0 - gamma * gamma).max(0.0).sqrt();
    let (s, c) = (2.0 * theta).sin_cos();
    let (id, x, z) = (Operator::identity(2), Operator::pauli_x(), Operator::pauli_z());

    let labels = PovmLabel::triples();
    let elements = labels
        .iter()
        .map(|lab| {
            let PovmLabel::Triple { j, k, l } = *lab else { unreachable!() };
            let (j, k, l) = (j.value(), k.value(), l.value());
            let (ci, cx, cz) = match basis {
                Basis::Z => (1.0 + j * k * g * c, l * cross * s, j * g + k * c),
                Basis::X => (1.0 + j * l * g * s, j * g + l * s, k * cross * c),
            };
            &(&id.scale(ci) + &x.scale(cx)) + &z.scale(cz)
        })
        .map(|e| e.scale(0.125))
        .collect();
    PovmSet::new(labels, elements)
}

fn kron3(a: &Operator, b: &Operator, c: &Operator) -> Operator {
    a.kron(b).kron(c)
}

/// Outcome distribution from a state-vector simulation of the three-qubit circuit.
///
/// Register order is system (x) probe (x) meter.
pub fn simulate_circuit(p: &CircuitParams, basis: Basis) -> Result<Distribution> {
    check_gamma(p.gamma)?;
    let id = Operator::identity(2);
    let p0 = Operator::diagonal(&[1.0, 0.0]);
    let p1 = Operator::diagonal(&[0.0, 1.0]);
    let x = Operator::pauli_x();
    let h = Operator::hadamard();

    let cnot_sp = &kron3(&p0, &id, &id) + &kron3(&p1, &x, &id);
    let cnot_sm = &kron3(&p0, &id, &id) + &kron3(&p1, &id, &x);
    let coupling = match basis {
        Basis::Z => &cnot_sm * &cnot_sp,
        Basis::X => {
            let hs = kron3(&h, &id, &id);
            &cnot_sm * &(&(&hs * &cnot_sp) * &hs)
        }
    };

    let probe = QuantumState::Pure(vec![crate::qcore::C64::new(p.gamma, 0.0), crate::qcore::C64::new(p.gamma_bar(), 0.0)]);
    let meter = QuantumState::qubit(p.theta, 0.0);
    let input = p.system_state().tensor(&probe).tensor(&meter);
    let out = crate::qcore::evolve(&input, &coupling)?;

    let plus_x = &(&id + &x).scale(0.5);
    let minus_x = &(&id - &x).scale(0.5);
    let projectors: Vec<Operator> = PovmLabel::triples()
        .into_iter()
        .map(|lab| {
            let PovmLabel::Triple { j, k, l } = lab else { unreachable!() };
            let zp = if j == Sign::Plus { &p0 } else { &p1 };
            let zm = if k == Sign::Plus { &p0 } else { &p1 };
            let xs = if l == Sign::Plus { plus_x } else { minus_x };
            kron3(xs, zp, zm)
        })
        .collect();
    born_probabilities(&out, &projectors)
}

/// Marginals `(P_j, P_k, P_l)` of an eight-outcome distribution, each as `[P_+, P_-]`.
pub fn marginals(p: &[f64]) -> [[f64; 2]; 3] {
    assert_eq!(p.len(), 8, "expected eight outcomes");
    let mut out = [[0.0; 2]; 3];
    for (idx, &v) in p.iter().enumerate() {
        out[0][(idx >> 2) & 1] += v;
        out[1][(idx >> 1) & 1] += v;
        out[2][idx & 1] += v;
    }
    out
}

/// Readout strength `2 gamma^2 - 1`, rejecting the point where inversion fails.
pub fn weak_strength(gamma: f64) -> Result<f64> {
    let g = 2.0 * gamma * gamma - 1.0;
    if g.abs() < INVERSION_TOL {
        return Err(Error::InversionUndefined);
    }
    Ok(g)
}

/// Recovers the sharp distributions from the two runs.
///
/// The first-stage marginal of each run is divided by the readout strength,
/// which can push entries outside `[0, 1]`; those distributions are always
/// flagged non-physical. Meter and system marginals are direct observations.
pub fn invert_runs(z_run: &Distribution, x_run: &Distribution, gamma: f64) -> Result<ScenarioDistributions> {
    let g = weak_strength(gamma)?;
    let mz = marginals(z_run.as_slice());
    let mx = marginals(x_run.as_slice());
    let invert = |m: [f64; 2]| {
        let mean = (m[0] - m[1]) / g;
        Distribution::unnormalized(vec![0.5 * (1.0 + mean), 0.5 * (1.0 - mean)])
    };
    ScenarioDistributions::new(
        invert(mz[0])?,
        invert(mx[0])?,
        Distribution::new(mz[1].to_vec())?,
        Distribution::new(mx[2].to_vec())?,
    )
}

/// Both eight-outcome runs and the recovered scenario.
#[derive(Debug, Clone)]
pub struct CircuitProbabilities {
    pub z_run: Distribution,
    pub x_run: Distribution,
    pub scenario: ScenarioDistributions,
}

/// Ideal-optics circuit model.
pub fn circuit_probabilities(p: &CircuitParams) -> Result<CircuitProbabilities> {
    if !p.is_ideal() {
        return Err(Error::InvalidParameter(
            "finite extinction ratios need the imperfect Sagnac model".into(),
        ));
    }
    weak_strength(p.gamma)?;
    let state = p.system_state();
    let z_run = circuit_povm(p.gamma, p.theta, Basis::Z)?.probabilities(&state)?;
    let x_run = circuit_povm(p.gamma, p.theta, Basis::X)?.probabilities(&state)?;
    let scenario = invert_runs(&z_run, &x_run, p.gamma)?;
    Ok(CircuitProbabilities { z_run, x_run, scenario })
}

/// Eight-outcome distributions of both runs, ideal or imperfect.
pub fn run_distributions(p: &CircuitParams) -> Result<(Distribution, Distribution)> {
    if p.is_ideal() {
        let c = circuit_probabilities(p)?;
        Ok((c.z_run, c.x_run))
    } else {
        imperfect_runs(p)
    }
}
