//! Poisson photon counts for one setting, estimated probabilities and a
//! bootstrap error bar on both sides of the trade-off.

use errdist::models::{circuit_probabilities, Basis, CircuitParams};
use errdist::shots::{derive_seed, estimate_probabilities, estimate_tradeoff, simulate_counts};
use errdist::tradeoff::tradeoff_report;

fn main() -> errdist::Result<()> {
    let seed = 7;
    let p = CircuitParams::new(40f64.to_radians(), 0.766, 10f64.to_radians());
    let m = circuit_probabilities(&p)?;
    let model = tradeoff_report(&m.scenario)?;
    for mean_total in [1e3, 1e4, 1e6] {
        let z = simulate_counts(&m.z_run, mean_total, Basis::Z, derive_seed(seed, 0))?;
        let x = simulate_counts(&m.x_run, mean_total, Basis::X, derive_seed(seed, 1))?;
        let est = estimate_tradeoff(&z, &x, p.gamma, 200, derive_seed(seed, 2))?;
        println!(
            "N = {mean_total:>7.0e}: lhs {:.4} +- {:.4} (model {:.4}), rhs {:.4} +- {:.4} (model {:.4})",
            est.lhs.value, est.lhs.std, model.lhs(), est.rhs.value, est.rhs.std, model.rhs()
        );
    }
    let z = simulate_counts(&m.z_run, 1e5, Basis::Z, seed)?;
    let marg = estimate_probabilities(&z)?;
    println!("Z-run counts {:?}", z.counts());
    println!("meter marginal p+ = {:.4} +- {:.4}", marg.meter.value, marg.meter.std);
    Ok(())
}
