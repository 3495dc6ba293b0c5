//! One line per acceptance criterion, with the measured figure and runtime.
//! Exits nonzero if any criterion fails.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
use std::time::{Duration, Instant};

use errdist::cli::{preset, run_verify, Format, SweepConfig, VerifyConfig};
use errdist::models::*;
use errdist::qcore::{born_probabilities, random, Observable, Operator};
use errdist::tradeoff::{ozawa_quantities, tradeoff_report, ScenarioDistributions};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOL: f64 = 1e-10;
const TIGHT: f64 = 1e-12;
/// Seed for the shot-noise criterion.
const SHOT_SEED: u64 = 20_240_601;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn theorem_suite() -> Outcome {
    let mut worst = f64::INFINITY;
    for dim in [2, 3, 4] {
        let s = run_verify(&VerifyConfig { dim, trials: 10_000, seed: 1 }).map_err(err)?;
        ensure(s.passed(), || format!("dim {dim}: {} violations", s.violations.len()))?;
        worst = worst.min(s.min_slack);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..10_000 {
        let n = rng.random_range(2..=4);
        let mut d = || random::distribution(&mut rng, n);
        let s = ScenarioDistributions::new(d(), d(), d(), d()).map_err(err)?;
        let slack = tradeoff_report(&s).map_err(err)?.slack;
        ensure(slack >= -TOL, || format!("raw quadruple slack {slack:e}"))?;
        worst = worst.min(slack);
    }
    Ok(format!("3 x 1e4 quantum + 1e4 raw instances, min slack {worst:.2e}"))
}

fn qubit_oracle() -> Outcome {
    let mut max_dev = 0.0f64;
    let mut max_orth = 0.0f64;
    for (b_axis, orthogonal) in [(X_AXIS, true), (diagonal_axis(), false)] {
        for &alpha in &grid(0.0, FRAC_PI_2, 91) {
            for &theta in &grid(0.0, FRAC_PI_4, 46) {
                let p = QubitParams::new(alpha, theta, b_axis);
                let r = tradeoff_report(&qubit_cnot_model(&p).map_err(err)?).map_err(err)?;
                let f = qubit_closed_forms(&p).map_err(err)?;
                for (x, y) in [(r.error, f.error), (r.disturbance, f.disturbance), (r.bound, f.bound), (r.slack, f.slack)] {
                    max_dev = max_dev.max((x - y).abs());
                }
                if orthogonal {
                    max_orth = max_orth.max(r.slack.abs());
                }
            }
        }
    }
    ensure(max_dev <= TOL, || format!("closed forms deviate by {max_dev:e}"))?;
    ensure(max_orth <= TOL, || format!("orthogonal slack {max_orth:e}"))?;
    Ok(format!("max deviation {max_dev:.1e}, max |slack| orthogonal {max_orth:.1e}"))
}

fn qutrit_anchors() -> Outcome {
    let states = [
        (FRAC_PI_4, FRAC_PI_4, 0.0, 0.0),
        (std::f64::consts::FRAC_PI_3, FRAC_PI_2, 0.0, 0.0),
        (std::f64::consts::FRAC_PI_3, FRAC_PI_2, std::f64::consts::FRAC_PI_6, std::f64::consts::FRAC_PI_3),
    ];
    let mut worst = f64::INFINITY;
    let (mut eps_max, mut eta_max) = (0.0f64, 0.0f64);
    for (alpha, phi_s, chi12, chi13) in states {
        let base = QutritParams { alpha, phi_s, chi12, chi13, theta: 0.0, phi_m: 0.0 };
        let sharp = QutritParams { theta: FRAC_PI_2, ..base };
        eps_max = eps_max.max(tradeoff_report(&qutrit_model(&sharp).map_err(err)?).map_err(err)?.error);
        let weak = QutritParams { theta: 2f64.sqrt().atan(), phi_m: FRAC_PI_4, ..base };
        eta_max = eta_max.max(tradeoff_report(&qutrit_model(&weak).map_err(err)?).map_err(err)?.disturbance);
        for &theta in &grid(0.0, FRAC_PI_2, 46) {
            for &phi_m in &grid(0.0, FRAC_PI_2, 46) {
                let r = tradeoff_report(&qutrit_model(&QutritParams { theta, phi_m, ..base }).map_err(err)?).map_err(err)?;
                worst = worst.min(r.slack);
            }
        }
    }
    ensure(eps_max <= TOL, || format!("sharp-meter error {eps_max:e}"))?;
    ensure(eta_max <= TOL, || format!("weak-limit disturbance {eta_max:e}"))?;
    ensure(worst >= -TOL, || format!("min slack {worst:e}"))?;
    Ok(format!("error {eps_max:.1e}, disturbance {eta_max:.1e}, min slack over 3 grids {worst:.2e}"))
}

fn circuit_consistency() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut sim_dev, mut inv_dev) = (0.0f64, 0.0f64);
    for _ in 0..200 {
        let mut p = CircuitParams::new(rng.random_range(0.0..std::f64::consts::PI), 0.766, rng.random_range(0.0..FRAC_PI_2));
        p.phi = rng.random_range(0.0..std::f64::consts::TAU);
        let m = circuit_probabilities(&p).map_err(err)?;
        for (basis, run) in [(Basis::Z, &m.z_run), (Basis::X, &m.x_run)] {
            let sim = simulate_circuit(&p, basis).map_err(err)?;
            for (u, v) in sim.as_slice().iter().zip(run.as_slice()) {
                sim_dev = sim_dev.max((u - v).abs());
            }
        }
        let state = p.system_state();
        let pa = born_probabilities(&state, Observable::pauli_z().projectors()).map_err(err)?;
        let pb = born_probabilities(&state, Observable::pauli_x().projectors()).map_err(err)?;
        for i in 0..2 {
            inv_dev = inv_dev.max((pa[i] - m.scenario.a()[i]).abs()).max((pb[i] - m.scenario.b()[i]).abs());
        }
    }
    let mut gap = 0.0f64;
    for theta_deg in [0.0f64, 9.0, 18.0, 27.0] {
        for &alpha in &grid(0.0, FRAC_PI_2, 91) {
            let r = tradeoff_report(&circuit_probabilities(&CircuitParams::new(alpha, 0.766, theta_deg.to_radians())).map_err(err)?.scenario)
                .map_err(err)?;
            gap = gap.max((r.lhs() - r.rhs()).abs());
        }
    }
    ensure(sim_dev <= TIGHT, || format!("formula vs simulation {sim_dev:e}"))?;
    ensure(inv_dev <= TOL, || format!("inversion vs Born {inv_dev:e}"))?;
    ensure(gap <= TOL, || format!("ideal |lhs - rhs| {gap:e}"))?;
    Ok(format!("formula vs simulation {sim_dev:.1e}, inversion {inv_dev:.1e}, max |lhs - rhs| {gap:.1e}"))
}

fn sagnac_model() -> Outcome {
    let es = [Extinction::Ideal, Extinction::Ratio(1.0), Extinction::Ratio(2.0), Extinction::Ratio(10.0), Extinction::Ratio(50.0), Extinction::Ratio(1e4)];
    let (mut unit_dev, mut coef_dev, mut ideal_dev) = (0.0f64, 0.0f64, 0.0f64);
    for &gamma in &grid(0.0, 1.0, 21) {
        for &e1 in &es {
            for &e2 in &es {
                unit_dev = unit_dev.max(sagnac_unitary(gamma, e1, e2).map_err(err)?.unitary_deviation());
                let povm = sagnac_povm(gamma, e1, e2).map_err(err)?;
                for (el, c) in povm.elements().iter().zip(sagnac_coefficients(gamma, e1, e2).map_err(err)?) {
                    coef_dev = coef_dev.max(el.max_abs_diff(&c.operator()));
                }
            }
        }
        let ideal = sagnac_povm(gamma, Extinction::Ideal, Extinction::Ideal).map_err(err)?;
        let g = 2.0 * gamma * gamma - 1.0;
        for (el, sign) in ideal.elements().iter().zip([1.0, -1.0]) {
            let want = (&Operator::identity(2) + &Operator::pauli_z().scale(sign * g)).scale(0.5);
            ideal_dev = ideal_dev.max(el.max_abs_diff(&want));
        }
    }
    let e50 = Extinction::Ratio(50.0);
    let (mut max_pa, mut max_gap, mut gap_at) = (f64::NEG_INFINITY, f64::NEG_INFINITY, 0.0);
    for deg in 0..=90 {
        let r = imperfect_probabilities(&CircuitParams::new(f64::from(deg).to_radians(), 0.766, 0.0).with_extinction(e50, e50)).map_err(err)?;
        max_pa = max_pa.max(r.scenario.a()[0]);
        if (40..=55).contains(&deg) && r.lhs() - r.rhs() > max_gap {
            max_gap = r.lhs() - r.rhs();
            gap_at = f64::from(deg);
        }
    }
    ensure(unit_dev <= TIGHT, || format!("unitarity {unit_dev:e}"))?;
    ensure(coef_dev <= TIGHT, || format!("coefficients vs Kraus {coef_dev:e}"))?;
    ensure(ideal_dev <= TIGHT, || format!("ideal limit {ideal_dev:e}"))?;
    ensure(max_pa > 1.0, || format!("max p_a+ {max_pa}"))?;
    ensure(max_gap > 1e-3, || format!("gap in [40, 55] deg {max_gap:e}"))?;
    Ok(format!(
        "unitarity {unit_dev:.1e}, coefficients {coef_dev:.1e}, ideal {ideal_dev:.1e}, max p_a+ {max_pa:.4}, gap {max_gap:.3} at {gap_at} deg"
    ))
}

fn ozawa_comparison() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut margin = f64::INFINITY;
    for i in 0..1000 {
        let rho = if i % 2 == 0 { random::pure_state(&mut rng, 2) } else { random::mixed_state(&mut rng, 2) };
        let mu = random::pure_state(&mut rng, 2);
        let (a, b, m) = (random::observable(&mut rng, 2), random::observable(&mut rng, 2), random::observable(&mut rng, 2));
        let u = random::unitary(&mut rng, 4);
        let o = ozawa_quantities(&rho, &mu, &a, &b, &u, &m).map_err(err)?;
        margin = margin.min(o.lhs - o.rhs_dab).min(o.rhs_dab - o.rhs_commutator);
    }
    let mut sharp = 0.0f64;
    for &alpha in &grid(0.0, FRAC_PI_2, 19) {
        let o = QubitParams::new(alpha, 0.0, X_AXIS).indirect_measurement().map_err(err)?.ozawa().map_err(err)?;
        sharp = sharp.max(o.eps_rms);
    }
    ensure(margin >= -TOL, || format!("ordering margin {margin:e}"))?;
    ensure(sharp <= TOL, || format!("sharp rms error {sharp:e}"))?;
    Ok(format!("min ordering margin {margin:.2e}, sharp-readout rms error {sharp:.1e}"))
}

fn shot_pipeline() -> Outcome {
    let mut raw = preset("fig3-shots").ok_or("missing preset")?.configs.remove(0);
    raw.set("seed", &SHOT_SEED.to_string());
    let cfg = SweepConfig::from_raw(&raw).map_err(err)?;
    let render = || -> Result<Vec<u8>, String> {
        let t = cfg.run().map_err(err)?;
        let mut buf = Vec::new();
        t.write(&mut buf, Format::Csv).map_err(err)?;
        Ok(buf)
    };
    let first = render()?;
    ensure(first == render()?, || "re-run differs".into())?;
    let t = cfg.run().map_err(err)?;
    let col = |name: &str| -> Vec<f64> {
        let i = t.column(name).expect("column");
        t.rows.iter().map(|r| r[i].as_f64().unwrap()).collect()
    };
    let (ml, l, ls, mr, r, rs) = (col("model_lhs"), col("lhs"), col("lhs_std"), col("model_rhs"), col("rhs"), col("rhs_std"));
    let within = (0..l.len()).filter(|&i| (l[i] - ml[i]).abs() <= 3.0 * ls[i] && (r[i] - mr[i]).abs() <= 3.0 * rs[i]).count();
    let frac = within as f64 / l.len() as f64;
    ensure(frac >= 0.95, || format!("only {within}/{} points within 3 std", l.len()))?;
    Ok(format!("{within}/{} points within 3 std (seed {SHOT_SEED}, N = 1e6, 200 replicates), re-run identical", l.len()))
}

struct Criterion {
    id: usize,
    title: &'static str,
    budget: Duration,
    check: fn() -> Outcome,
}

fn main() {
    let criteria = [
        Criterion { id: 1, title: "trade-off holds on random instances", budget: Duration::from_secs(30), check: theorem_suite },
        Criterion { id: 2, title: "qubit closed forms match the generic pipeline", budget: Duration::from_secs(5), check: qubit_oracle },
        Criterion { id: 3, title: "qutrit anchor points and grids", budget: Duration::from_secs(10), check: qutrit_anchors },
        Criterion { id: 4, title: "circuit formulas, simulation and inversion", budget: Duration::from_secs(5), check: circuit_consistency },
        Criterion { id: 5, title: "interferometer model and imperfect optics", budget: Duration::from_secs(5), check: sagnac_model },
        Criterion { id: 6, title: "rms relation ordering", budget: Duration::from_secs(5), check: ozawa_comparison },
        Criterion { id: 7, title: "shot-noise pipeline", budget: Duration::from_secs(60), check: shot_pipeline },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.check)();
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) if elapsed <= c.budget => (true, d),
            Ok(d) => (false, format!("{d}; over budget {:.0?}", c.budget)),
            Err(e) => (false, e),
        };
        failed += usize::from(!ok);
        println!(
            "[{}] criterion {}: {} | {} | {:.2}s",
            if ok { "PASS" } else { "FAIL" },
            c.id,
            c.title,
            detail,
            elapsed.as_secs_f64()
        );
    }
    println!("acceptance: {} passed, {} failed", criteria.len() - failed, failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
