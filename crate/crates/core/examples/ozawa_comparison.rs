//! Root-mean-square error and disturbance for the qubit CNOT model next to
//! the statistical-distance quantities, across meter strengths.

use errdist::models::{diagonal_axis, QubitParams};
use errdist::tradeoff::tradeoff_report;

fn main() -> errdist::Result<()> {
    let alpha = 35f64.to_radians();
    println!(
        "{:>6} {:>9} {:>9} {:>9} {:>9} {:>9} {:>9}",
        "theta", "eps_rms", "eta_rms", "rms lhs", "rms rhs", "error", "disturb"
    );
    for deg in (0..=45).step_by(5) {
        let p = QubitParams::new(alpha, f64::from(deg).to_radians(), diagonal_axis());
        let im = p.indirect_measurement()?;
        let o = im.ozawa()?;
        let r = tradeoff_report(&im.distributions()?)?;
        println!(
            "{deg:>6} {:>9.5} {:>9.5} {:>9.5} {:>9.5} {:>9.5} {:>9.5}",
            o.eps_rms, o.eta_rms, o.lhs, o.rhs_dab, r.error, r.disturbance
        );
    }
    Ok(())
}
