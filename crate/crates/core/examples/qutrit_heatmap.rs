//! Slack of the trade-off over the meter parameters of a qutrit spin-1 model,
//! printed as a coarse character map.

use std::f64::consts::FRAC_PI_4;

use errdist::models::{qutrit_model, QutritParams};
use errdist::tradeoff::tradeoff_report;

const SHADES: &[u8] = b" .:-=+*#%@";

fn main() -> errdist::Result<()> {
    let steps = 24;
    let mut rows = Vec::new();
    let mut max_slack = 0.0f64;
    for i in 0..steps {
        let phi_m = std::f64::consts::FRAC_PI_2 * i as f64 / (steps - 1) as f64;
        let mut row = Vec::new();
        for j in 0..steps {
            let theta = std::f64::consts::FRAC_PI_2 * j as f64 / (steps - 1) as f64;
            let p = QutritParams { alpha: FRAC_PI_4, phi_s: FRAC_PI_4, chi12: 0.0, chi13: 0.0, theta, phi_m };
            let slack = tradeoff_report(&qutrit_model(&p)?)?.slack;
            max_slack = max_slack.max(slack);
            row.push(slack);
        }
        rows.push(row);
    }
    println!("rows: phi_m 0..90 deg, columns: theta 0..90 deg, shade ~ slack / {max_slack:.3}");
    for row in rows.iter().rev() {
        let line: String = row
            .iter()
            .map(|s| SHADES[((s / max_slack).clamp(0.0, 1.0) * (SHADES.len() - 1) as f64).round() as usize] as char)
            .collect();
        println!("|{line}|");
    }
    Ok(())
}
