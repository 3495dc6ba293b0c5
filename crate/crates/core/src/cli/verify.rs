//! Randomized check of the trade-off on generic indirect measurements.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::output::{Table, Value};
use crate::error::{Error, Result};
use crate::models::IndirectMeasurement;
use crate::qcore::random;
use crate::shots::derive_seed;
use crate::tradeoff::tradeoff_report;

/// Slack below `-VIOLATION_TOL` counts as a violation.
pub const VIOLATION_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyConfig {
    pub dim: usize,
    pub trials: usize,
    pub seed: u64,
}

impl VerifyConfig {
    pub fn validate(&self) -> Result<()> {
        if !(2..=5).contains(&self.dim) {
            return Err(Error::InvalidParameter(format!("dim must lie in [2, 5], got {}", self.dim)));
        }
        if self.trials == 0 {
            return Err(Error::InvalidParameter("trials must be positive".into()));
        }
        Ok(())
    }

    /// Seed that reproduces trial `t` via [`sample_instance`].
    pub fn instance_seed(&self, t: usize) -> u64 {
        derive_seed(self.seed, t as u64)
    }
}

/// Random pure system and meter states, Haar-like coupling and random
/// observables, all of dimension `dim`.
pub fn sample_instance(dim: usize, instance_seed: u64) -> IndirectMeasurement {
    let mut rng = ChaCha8Rng::seed_from_u64(instance_seed);
    IndirectMeasurement {
        system: random::pure_state(&mut rng, dim),
        meter: random::pure_state(&mut rng, dim),
        coupling: random::unitary(&mut rng, dim * dim),
        a: random::observable(&mut rng, dim),
        b: random::observable(&mut rng, dim),
        meter_observable: random::observable(&mut rng, dim),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub seed: u64,
    pub what: String,
    pub value: f64,
    pub instance: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifySummary {
    pub dim: usize,
    pub trials: usize,
    pub min_slack: f64,
    pub mean_slack: f64,
    pub min_slack_seed: u64,
    /// Instances on which the rms relation was also evaluated (qubits only).
    pub ozawa_checked: usize,
    pub violations: Vec<Violation>,
}

impl VerifySummary {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn table(&self) -> Table {
        let header = ["dim", "trials", "violations", "min_slack", "mean_slack", "min_slack_seed", "ozawa_checked"];
        Table {
            header: header.map(String::from).to_vec(),
            rows: vec![vec![
                Value::Int(self.dim as u64),
                Value::Int(self.trials as u64),
                Value::Int(self.violations.len() as u64),
                Value::Num(self.min_slack),
                Value::Num(self.mean_slack),
                Value::Int(self.min_slack_seed),
                Value::Int(self.ozawa_checked as u64),
            ]],
        }
    }
}

struct Trial {
    seed: u64,
    slack: f64,
    violations: Vec<Violation>,
}

fn run_trial(dim: usize, seed: u64) -> Result<Trial> {
    let inst = sample_instance(dim, seed);
    let report = tradeoff_report(&inst.distributions()?)?;
    let mut violations = Vec::new();
    let mut flag = |what: &str, value: f64| {
        violations.push(Violation {
            seed,
            what: what.into(),
            value,
            instance: format!("{inst:#?}"),
        })
    };
    if report.slack < -VIOLATION_TOL {
        flag("slack", report.slack);
    }
    if dim == 2 {
        let oz = inst.ozawa()?;
        if oz.lhs < oz.rhs_dab - VIOLATION_TOL {
            flag("rms lhs - state-dependent bound", oz.lhs - oz.rhs_dab);
        }
        if oz.rhs_dab < oz.rhs_commutator - VIOLATION_TOL {
            flag("state-dependent bound - commutator bound", oz.rhs_dab - oz.rhs_commutator);
        }
    }
    Ok(Trial {
        seed,
        slack: report.slack,
        violations,
    })
}

pub fn run_verify(cfg: &VerifyConfig) -> Result<VerifySummary> {
    cfg.validate()?;
    let trials = (0..cfg.trials)
        .into_par_iter()
        .map(|t| run_trial(cfg.dim, cfg.instance_seed(t)))
        .collect::<Result<Vec<_>>>()?;
    let worst = trials
        .iter()
        .min_by(|a, b| a.slack.total_cmp(&b.slack))
        .expect("at least one trial");
    Ok(VerifySummary {
        dim: cfg.dim,
        trials: cfg.trials,
        min_slack: worst.slack,
        mean_slack: trials.iter().map(|t| t.slack).sum::<f64>() / trials.len() as f64,
        min_slack_seed: worst.seed,
        ozawa_checked: if cfg.dim == 2 { cfg.trials } else { 0 },
        violations: trials.into_iter().flat_map(|t| t.violations).collect(),
    })
}
