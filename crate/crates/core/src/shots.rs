//! Photon-count simulation and the estimation pipeline applied to counts.
//!
//! Each of the eight detector channels fires independently with Poisson
//! statistics. Random streams come from ChaCha8 keyed by the user seed, with
//! the stream number selecting the replicate, so results are reproducible
//! independent of thread scheduling.

use rand::SeedableRng;
use rand::{Rng, RngCore};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution as _, Poisson};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::models::{invert_runs, marginals, weak_strength, Basis};
use crate::qcore::Distribution;
use crate::tradeoff::{tradeoff_report, TradeoffReport};

pub const CHANNELS: usize = 8;

/// Detector counts of one run, indexed like the circuit outcomes (`4j + 2k + l`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountRecord {
    counts: [u64; CHANNELS],
    basis: Basis,
    total: u64,
    seed: u64,
}

impl CountRecord {
    pub fn new(counts: [u64; CHANNELS], basis: Basis, seed: u64) -> Self {
        Self {
            counts,
            basis,
            total: counts.iter().sum(),
            seed,
        }
    }

    pub fn counts(&self) -> &[u64; CHANNELS] {
        &self.counts
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Observed relative frequencies.
    pub fn frequencies(&self) -> Result<Distribution> {
        if self.total == 0 {
            return Err(Error::EmptyCounts);
        }
        let n = self.total as f64;
        Distribution::new(self.counts.iter().map(|&c| c as f64 / n).collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimateWithError {
    pub value: f64,
    pub std: f64,
}

/// Generator for `(seed, stream)`; distinct streams never overlap.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// A child seed for the `index`-th independent task under `seed`.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    stream_rng(seed, index).next_u64()
}

fn poisson<R: Rng + ?Sized>(mean: f64, rng: &mut R) -> Result<u64> {
    if mean == 0.0 {
        return Ok(0);
    }
    let dist = Poisson::new(mean).map_err(|e| Error::InvalidParameter(format!("Poisson mean {mean}: {e}")))?;
    Ok(dist.sample(rng) as u64)
}

fn sample_counts<R: Rng + ?Sized>(means: impl Iterator<Item = f64>, rng: &mut R) -> Result<[u64; CHANNELS]> {
    let mut counts = [0u64; CHANNELS];
    for (slot, mean) in counts.iter_mut().zip(means) {
        *slot = poisson(mean, rng)?;
    }
    Ok(counts)
}

/// Draws each channel from a Poisson law with mean `mean_total * P_i`.
pub fn simulate_counts(probabilities: &Distribution, mean_total: f64, basis: Basis, seed: u64) -> Result<CountRecord> {
    if probabilities.len() != CHANNELS {
        return Err(Error::LengthMismatch {
            left: CHANNELS,
            right: probabilities.len(),
        });
    }
    if !probabilities.is_physical() {
        return Err(Error::NonphysicalDistribution("count simulation needs a physical distribution".into()));
    }
    if !(mean_total.is_finite() && mean_total > 0.0) {
        return Err(Error::InvalidParameter(format!("mean total must be positive, got {mean_total}")));
    }
    let mut rng = stream_rng(seed, 0);
    let means = probabilities.as_slice().iter().map(|&p| mean_total * p.max(0.0));
    Ok(CountRecord::new(sample_counts(means, &mut rng)?, basis, seed))
}

/// `+` outcome probability of the probe, meter and system readouts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarginalEstimates {
    pub probe: EstimateWithError,
    pub meter: EstimateWithError,
    pub system: EstimateWithError,
}

/// Marginal frequencies with first-order Poisson error propagation.
///
/// For `P = S / N` with `S` and `N - S` independent Poisson counts the
/// propagated variance is `S (N - S) / N^3`.
pub fn estimate_probabilities(c: &CountRecord) -> Result<MarginalEstimates> {
    if c.total == 0 {
        return Err(Error::EmptyCounts);
    }
    let n = c.total as f64;
    let counts: Vec<f64> = c.counts.iter().map(|&x| x as f64).collect();
    let m = marginals(&counts);
    let est = |plus: f64| EstimateWithError {
        value: plus / n,
        std: (plus * (n - plus) / (n * n * n)).max(0.0).sqrt(),
    };
    Ok(MarginalEstimates {
        probe: est(m[0][0]),
        meter: est(m[1][0]),
        system: est(m[2][0]),
    })
}

#[derive(Debug, Clone)]
pub struct TradeoffEstimate {
    pub lhs: EstimateWithError,
    pub rhs: EstimateWithError,
    pub report: TradeoffReport,
}

fn check_pair(z_run: &CountRecord, x_run: &CountRecord) -> Result<()> {
    if z_run.basis != Basis::Z || x_run.basis != Basis::X {
        return Err(Error::InvalidParameter("expected a Z run followed by an X run".into()));
    }
    if z_run.total == 0 || x_run.total == 0 {
        return Err(Error::EmptyCounts);
    }
    Ok(())
}

fn report_from_counts(z: &CountRecord, x: &CountRecord, gamma: f64) -> Result<TradeoffReport> {
    tradeoff_report(&invert_runs(&z.frequencies()?, &x.frequencies()?, gamma)?)
}

fn sample_std(values: &[f64]) -> f64 {
    if values.len() < 2 {
        return 0.0;
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
}

/// Point estimate of the trade-off from counts, with parametric-bootstrap errors.
///
/// Replicate `i` redraws every channel from a Poisson law centred on the
/// observed count, using stream `i + 1` of `seed`.
pub fn estimate_tradeoff(z_run: &CountRecord, x_run: &CountRecord, gamma: f64, bootstrap: usize, seed: u64) -> Result<TradeoffEstimate> {
    weak_strength(gamma)?;
    check_pair(z_run, x_run)?;
    if bootstrap == 0 {
        return Err(Error::InvalidParameter("bootstrap count must be positive".into()));
    }
    let report = report_from_counts(z_run, x_run, gamma)?;
    if bootstrap == 1 {
        log::warn!("a single bootstrap replicate gives no spread; reporting std = 0");
    }

    let replicates: Vec<(f64, f64)> = (0..bootstrap as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(seed, i + 1);
            let mut redraw = |c: &CountRecord| -> Result<CountRecord> {
                let counts = sample_counts(c.counts.iter().map(|&n| n as f64), &mut rng)?;
                Ok(CountRecord::new(counts, c.basis, seed))
            };
            let (z, x) = (redraw(z_run)?, redraw(x_run)?);
            let r = report_from_counts(&z, &x, gamma)?;
            Ok((r.lhs(), r.rhs()))
        })
        .collect::<Result<_>>()?;

    let (lhs, rhs): (Vec<f64>, Vec<f64>) = replicates.into_iter().unzip();
    Ok(TradeoffEstimate {
        lhs: EstimateWithError {
            value: report.lhs(),
            std: sample_std(&lhs),
        },
        rhs: EstimateWithError {
            value: report.rhs(),
            std: sample_std(&rhs),
        },
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uniform() -> Distribution {
        Distribution::new(vec![0.125; 8]).unwrap()
    }

    #[test]
    fn same_seed_same_counts() {
        let a = simulate_counts(&uniform(), 1e4, Basis::Z, 7).unwrap();
        let b = simulate_counts(&uniform(), 1e4, Basis::Z, 7).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, simulate_counts(&uniform(), 1e4, Basis::Z, 8).unwrap());
    }

    #[test]
    fn empty_channel_stays_empty() {
        let p = Distribution::new(vec![0.5, 0.0, 0.5, 0.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        let c = simulate_counts(&p, 1e5, Basis::X, 1).unwrap();
        assert_eq!(c.counts()[1], 0);
        assert_eq!(c.total(), c.counts().iter().sum::<u64>());
    }

    #[test]
    fn all_counts_in_first_channel() {
        let c = CountRecord::new([10, 0, 0, 0, 0, 0, 0, 0], Basis::Z, 0);
        let m = estimate_probabilities(&c).unwrap();
        for e in [m.probe, m.meter, m.system] {
            assert_eq!(e.value, 1.0);
            assert_eq!(e.std, 0.0);
        }
    }

    #[test]
    fn empty_record_rejected() {
        let c = CountRecord::new([0; 8], Basis::Z, 0);
        assert_eq!(estimate_probabilities(&c).unwrap_err(), Error::EmptyCounts);
    }

    #[test]
    fn single_replicate_has_zero_spread() {
        let z = CountRecord::new([100; 8], Basis::Z, 0);
        let x = CountRecord::new([100; 8], Basis::X, 0);
        let e = estimate_tradeoff(&z, &x, 0.9, 1, 3).unwrap();
        assert_eq!((e.lhs.std, e.rhs.std), (0.0, 0.0));
    }

    #[test]
    fn runs_must_be_ordered() {
        let z = CountRecord::new([100; 8], Basis::Z, 0);
        assert!(estimate_tradeoff(&z, &z, 0.9, 5, 3).is_err());
    }
}
