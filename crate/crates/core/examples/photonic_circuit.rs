//! Ideal three-qubit photonic circuit: outcome probabilities of both runs,
//! the inverted system distributions and the resulting trade-off.

use errdist::models::{circuit_probabilities, simulate_circuit, Basis, CircuitParams, PovmLabel};
use errdist::tradeoff::tradeoff_report;

fn main() -> errdist::Result<()> {
    let p = CircuitParams::new(30f64.to_radians(), 0.766, 15f64.to_radians());
    let m = circuit_probabilities(&p)?;
    let sim = simulate_circuit(&p, Basis::Z)?;
    println!("Z run, closed form vs state-vector simulation");
    for ((label, q), s) in PovmLabel::triples().iter().zip(m.z_run.as_slice()).zip(sim.as_slice()) {
        println!("  {label}: {q:.6} {s:.6}");
    }
    println!("recovered p_a = {:?}", m.scenario.a().as_slice());
    println!("recovered p_b = {:?}", m.scenario.b().as_slice());
    let r = tradeoff_report(&m.scenario)?;
    println!("lhs = {:.6}, rhs = {:.6}", r.lhs(), r.rhs());
    println!();
    println!("{:>6} {:>10} {:>10}", "alpha", "lhs", "rhs");
    for deg in (0..=90).step_by(10) {
        let s = circuit_probabilities(&CircuitParams::new(f64::from(deg).to_radians(), 0.766, 0.0))?.scenario;
        let r = tradeoff_report(&s)?;
        println!("{deg:>6} {:>10.6} {:>10.6}", r.lhs(), r.rhs());
    }
    Ok(())
}
