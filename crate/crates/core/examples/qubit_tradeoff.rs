//! Error, disturbance and bound for a qubit read out through a partial CNOT.
//!
//! Run with `cargo run --example qubit_tradeoff`.

use errdist::models::{diagonal_axis, qubit_closed_forms, qubit_cnot_model, QubitParams, X_AXIS};
use errdist::tradeoff::tradeoff_report;

fn main() -> errdist::Result<()> {
    for (name, axis) in [("B = X", X_AXIS), ("B = diag", diagonal_axis())] {
        println!("{name}");
        println!("{:>6} {:>6} {:>10} {:>10} {:>10} {:>10}", "alpha", "theta", "error", "disturb", "bound", "slack");
        for alpha_deg in [0.0f64, 30.0, 60.0, 90.0] {
            for theta_deg in [0.0f64, 22.5, 45.0] {
                let p = QubitParams::new(alpha_deg.to_radians(), theta_deg.to_radians(), axis);
                let r = tradeoff_report(&qubit_cnot_model(&p)?)?;
                let closed = qubit_closed_forms(&p)?;
                assert!((closed.slack - r.slack).abs() < 1e-10);
                println!(
                    "{alpha_deg:>6.1} {theta_deg:>6.1} {:>10.6} {:>10.6} {:>10.6} {:>10.6}",
                    r.error, r.disturbance, r.bound, r.slack
                );
            }
        }
        println!();
    }
    Ok(())
}
