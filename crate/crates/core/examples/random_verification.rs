//! Randomized search for violations of the trade-off over generic
//! indirect measurements in dimensions 2 through 5.

use errdist::cli::{run_verify, sample_instance, VerifyConfig};
use errdist::tradeoff::tradeoff_report;

fn main() -> errdist::Result<()> {
    for dim in 2..=5 {
        let cfg = VerifyConfig { dim, trials: 2000, seed: 42 };
        let s = run_verify(&cfg)?;
        println!(
            "dim {dim}: {} trials, {} violations, min slack {:.3e}, mean slack {:.4}",
            s.trials,
            s.violations.len(),
            s.min_slack,
            s.mean_slack
        );
        // The tightest instance can be rebuilt from its seed alone.
        let worst = tradeoff_report(&sample_instance(dim, s.min_slack_seed).distributions()?)?;
        assert_eq!(worst.slack, s.min_slack);
    }
    Ok(())
}
