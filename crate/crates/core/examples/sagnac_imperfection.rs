//! Finite polarizer extinction in the interferometric weak measurement:
//! the recovered probabilities leave [0, 1] and the trade-off gap opens.

use errdist::models::{imperfect_probabilities, sagnac_coefficients, CircuitParams, Extinction};

fn main() -> errdist::Result<()> {
    let e = Extinction::Ratio(50.0);
    for (outcome, c) in ["+", "-"].iter().zip(sagnac_coefficients(0.766, e, e)?) {
        println!("outcome {outcome}: {:.5} I + {:.5} Z + {:.5} X + {:.5} Y", c.a, c.b, c.c, c.d);
    }
    println!();
    println!("{:>6} {:>9} {:>9} {:>9} {:>9} {:>9}", "alpha", "ideal gap", "lhs", "p_a+", "p_b+", "gap");
    for deg in (0..=90).step_by(6) {
        let base = CircuitParams::new(f64::from(deg).to_radians(), 0.766, 0.0);
        let ideal = imperfect_probabilities(&base)?;
        let real = imperfect_probabilities(&base.with_extinction(e, e))?;
        println!(
            "{deg:>6} {:>9.5} {:>9.5} {:>9.5} {:>9.5} {:>9.5}",
            ideal.lhs() - ideal.rhs(),
            real.lhs(),
            real.scenario.a()[0],
            real.scenario.b()[0],
            real.lhs() - real.rhs()
        );
    }
    Ok(())
}
