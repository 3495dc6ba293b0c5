use errdist::models::{qubit_cnot_model, QubitParams, X_AXIS};
use errdist::qcore::{random, Distribution, Operator};
use errdist::tradeoff::*;
use errdist::Error;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Independent enumeration: insert the next index at every position.
fn oracle_perms(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in oracle_perms(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn relabel(p: &[f64], s: &[usize]) -> Vec<f64> {
    s.iter().map(|&i| p[i]).collect()
}

fn dist(p: &[f64], q: &[f64]) -> f64 {
    p.iter().zip(q).map(|(a, b)| (a - b).abs()).sum()
}

fn oracle_min(p: &[f64], q: &[f64]) -> (f64, Vec<Vec<usize>>) {
    let perms = oracle_perms(p.len());
    let best = perms.iter().map(|s| dist(&relabel(p, s), q)).fold(f64::INFINITY, f64::min);
    let arg = perms.into_iter().filter(|s| dist(&relabel(p, s), q) <= best + TIE_TOL).collect();
    (best, arg)
}

fn oracle_xi(a: &[f64], b: &[f64], c: &[f64], d: &[f64]) -> f64 {
    oracle_perms(a.len())
        .iter()
        .map(|s| {
            let (a, c) = (relabel(a, s), relabel(c, s));
            (0..a.len()).map(|i| (a[i] - b[i]).abs() - (c[i] - d[i]).abs()).sum::<f64>().abs()
        })
        .fold(0.0, f64::max)
}

fn oracle_report(a: &[f64], b: &[f64], c: &[f64], d: &[f64]) -> (f64, f64, f64) {
    let (eps, sa) = oracle_min(a, c);
    let (eta, sb) = oracle_min(b, d);
    let mut bound = f64::NEG_INFINITY;
    for x in &sa {
        for y in &sb {
            bound = bound.max(oracle_xi(&relabel(a, x), &relabel(b, y), c, d));
        }
    }
    (eps, eta, bound)
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn quadruple(n: usize, seed: u64) -> ScenarioDistributions {
    let mut r = rng(seed);
    let mut next = || random::distribution(&mut r, n);
    ScenarioDistributions::new(next(), next(), next(), next()).unwrap()
}

fn raw_vec() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-0.5..1.5f64, 4)
}

#[test]
fn oracle_enumeration_is_complete() {
    let mut p = oracle_perms(4);
    assert_eq!(p.len(), 24);
    p.sort();
    p.dedup();
    assert_eq!(p.len(), 24);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn report_matches_oracle(n in 2usize..=4, seed in any::<u64>()) {
        let s = quadruple(n, seed);
        let r = tradeoff_report(&s).unwrap();
        let (eps, eta, bound) = oracle_report(s.a().as_slice(), s.b().as_slice(), s.c().as_slice(), s.d().as_slice());
        prop_assert!((r.error - eps).abs() < 1e-12);
        prop_assert!((r.disturbance - eta).abs() < 1e-12);
        prop_assert!((r.bound - bound).abs() < 1e-12);
        prop_assert_eq!(r.slack, r.error + r.disturbance - r.bound);
    }

    #[test]
    fn slack_nonnegative_for_arbitrary_vectors(a in raw_vec(), b in raw_vec(), c in raw_vec(), d in raw_vec()) {
        let u = |v: Vec<f64>| Distribution::unnormalized(v).unwrap();
        let s = ScenarioDistributions::new(u(a), u(b), u(c), u(d)).unwrap();
        prop_assert!(tradeoff_report(&s).unwrap().slack >= -1e-10);
    }

    #[test]
    fn every_tie_choice_is_valid(seed in any::<u64>()) {
        // Duplicated entries force ties among minimizers.
        let mut r = rng(seed);
        let base = random::distribution(&mut r, 2).into_vec();
        let dup = |x: &[f64]| Distribution::new(vec![x[0] / 2.0, x[0] / 2.0, x[1]]).unwrap();
        let s = ScenarioDistributions::new(dup(&base), random::distribution(&mut r, 3), dup(&base), random::distribution(&mut r, 3)).unwrap();
        let eps = min_permutation_distance(s.a(), s.c()).unwrap();
        let eta = min_permutation_distance(s.b(), s.d()).unwrap();
        prop_assert!(eps.minimizers.len() >= 2);
        for x in &eps.minimizers {
            for y in &eta.minimizers {
                let xi = xi_g_max(&s, std::slice::from_ref(x), std::slice::from_ref(y)).unwrap();
                prop_assert!(eps.value + eta.value - xi.value >= -1e-10);
            }
        }
    }

    #[test]
    fn relabeling_both_arguments_preserves_distance(n in 2usize..=5, seed in any::<u64>(), k in 0usize..120) {
        let mut r = rng(seed);
        let (p, q) = (random::distribution(&mut r, n), random::distribution(&mut r, n));
        let perms = oracle_perms(n);
        let s = &perms[k % perms.len()];
        let a = min_permutation_distance(&p, &q).unwrap().value;
        let b = min_permutation_distance(&p.permuted(s), &q.permuted(s)).unwrap().value;
        prop_assert!((a - b).abs() < 1e-12);
        prop_assert!(a <= statistical_distance(&p, &q).unwrap() + 1e-15);
    }

    #[test]
    fn distance_is_a_metric(n in 1usize..=6, seed in any::<u64>()) {
        let mut r = rng(seed);
        let (p, q, w) = (random::distribution(&mut r, n), random::distribution(&mut r, n), random::distribution(&mut r, n));
        let d = |x: &Distribution, y: &Distribution| statistical_distance(x, y).unwrap();
        prop_assert_eq!(d(&p, &q), d(&q, &p));
        prop_assert!(d(&p, &p) < 1e-12);
        prop_assert!(d(&p, &w) <= d(&p, &q) + d(&q, &w) + 1e-12);
        prop_assert!((0.0..=2.0 + 1e-12).contains(&d(&p, &q)));
    }

    #[test]
    fn bound_dominates_plain_gap_and_modes_agree(n in 2usize..=4, seed in any::<u64>()) {
        let s = quadruple(n, seed);
        let standard = xi_g_max_with_mode(&s, &[], &[], XiMode::Standard).unwrap();
        let joint = xi_g_max_with_mode(&s, &[], &[], XiMode::Joint).unwrap();
        prop_assert!(standard.value >= plain_gap(&s) - 1e-15);
        prop_assert!((standard.value - joint.value).abs() < 1e-12);
    }

    #[test]
    fn ozawa_chain_on_random_qubits(seed in any::<u64>()) {
        let mut r = rng(seed);
        let rho = if seed % 2 == 0 { random::pure_state(&mut r, 2) } else { random::mixed_state(&mut r, 2) };
        let mu = random::pure_state(&mut r, 2);
        let (a, b, m) = (random::observable(&mut r, 2), random::observable(&mut r, 2), random::observable(&mut r, 2));
        let u = random::unitary(&mut r, 4);
        let o = ozawa_quantities(&rho, &mu, &a, &b, &u, &m).unwrap();
        prop_assert!(o.lhs >= o.rhs_dab - 1e-10);
        prop_assert!(o.rhs_dab >= o.rhs_commutator - 1e-10);
    }
}

#[test]
fn distance_examples() {
    let d = |v: &[f64]| Distribution::new(v.to_vec()).unwrap();
    assert_eq!(statistical_distance(&d(&[1.0, 0.0]), &d(&[0.0, 1.0])).unwrap(), 2.0);
    let m = min_permutation_distance(&d(&[0.7, 0.3]), &d(&[0.3, 0.7])).unwrap();
    assert_eq!(m.value, 0.0);
    assert_eq!(m.minimizers, vec![vec![1, 0]]);
    let s = qubit_cnot_model(&QubitParams::new(std::f64::consts::FRAC_PI_8, 0.0, X_AXIS)).unwrap();
    assert!(statistical_distance(s.a(), s.b()).unwrap() < 1e-15);
}

#[test]
fn identical_readouts_have_zero_bound() {
    let s = quadruple(3, 5);
    let same = ScenarioDistributions::new(s.a().clone(), s.b().clone(), s.a().clone(), s.b().clone()).unwrap();
    assert_eq!(xi_g_max(&same, &[], &[]).unwrap().value, 0.0);
}

#[test]
fn too_many_outcomes_rejected() {
    let p = Distribution::new(vec![1.0 / 7.0; 7]).unwrap();
    assert!(matches!(min_permutation_distance(&p, &p), Err(Error::PermutationBound { .. })));
    let s = ScenarioDistributions::new(p.clone(), p.clone(), p.clone(), p).unwrap();
    assert!(tradeoff_report(&s).is_err());
    let q = Distribution::new(vec![0.5, 0.5]).unwrap();
    let r = Distribution::new(vec![1.0]).unwrap();
    assert!(matches!(statistical_distance(&q, &r), Err(Error::LengthMismatch { .. })));
}

#[test]
fn sharp_readout_has_no_rms_error() {
    let z = errdist::qcore::Observable::pauli_z();
    let system = errdist::qcore::QuantumState::qubit(0.7, 0.3);
    let meter = errdist::qcore::QuantumState::basis(2, 0);
    let o = ozawa_quantities(&system, &meter, &z, &errdist::qcore::Observable::pauli_x(), &Operator::cnot(), &z).unwrap();
    assert!(o.eps_rms <= 1e-10);
}
