use super::distance::{all_permutations, ensure_same_len, ensure_searchable, l1, min_permutation_distance};
use super::ozawa::OzawaReport;
use super::Permutation;
use crate::error::Result;
use crate::qcore::Distribution;

/// The four outcome distributions entering the trade-off.
///
/// * `a`: ideal measurement of the first observable on the input state.
/// * `b`: ideal measurement of the second observable on the input state.
/// * `c`: meter readout approximating `a`.
/// * `d`: second observable measured after the interaction.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioDistributions {
    a: Distribution,
    b: Distribution,
    c: Distribution,
    d: Distribution,
}

impl ScenarioDistributions {
    pub fn new(a: Distribution, b: Distribution, c: Distribution, d: Distribution) -> Result<Self> {
        ensure_same_len(&a, &b)?;
        ensure_same_len(&a, &c)?;
        ensure_same_len(&a, &d)?;
        Ok(Self { a, b, c, d })
    }

    pub fn a(&self) -> &Distribution {
        &self.a
    }

    pub fn b(&self) -> &Distribution {
        &self.b
    }

    pub fn c(&self) -> &Distribution {
        &self.c
    }

    pub fn d(&self) -> &Distribution {
        &self.d
    }

    pub fn outcomes(&self) -> usize {
        self.a.len()
    }

    pub fn all_physical(&self) -> bool {
        [&self.a, &self.b, &self.c, &self.d].iter().all(|p| p.is_physical())
    }
}

/// Which relabelings the maximization ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum XiMode {
    /// One relabeling applied jointly to the `a` and `c` indices.
    #[default]
    Standard,
    /// Additionally relabel `b` and `d` jointly. Reindexing the sum shows this
    /// attains the same maximum; kept as a cross-check.
    Joint,
}

/// Result of the bound maximization, including the relabelings that attained it.
#[derive(Debug, Clone, PartialEq)]
pub struct XiMax {
    pub value: f64,
    pub sigma_a: Permutation,
    pub sigma_b: Permutation,
    pub sigma_star: Permutation,
    /// Joint `(b, d)` relabeling; `None` in standard mode.
    pub tau_star: Option<Permutation>,
}

fn signed_gap(a: &[f64], b: &[f64], c: &[f64], d: &[f64], sigma: &[usize], tau: &[usize]) -> f64 {
    sigma
        .iter()
        .zip(tau)
        .map(|(&s, &t)| (a[s] - b[t]).abs() - (c[s] - d[t]).abs())
        .sum::<f64>()
        .abs()
}

/// `max_sigma |sum_i (|a_sigma(i) - b_i| - |c_sigma(i) - d_i|)|` after relabeling `a`
/// and `b`, maximized over the supplied relabeling choices.
pub fn xi_g_max(s: &ScenarioDistributions, sigma_a_choices: &[Permutation], sigma_b_choices: &[Permutation]) -> Result<XiMax> {
    xi_g_max_with_mode(s, sigma_a_choices, sigma_b_choices, XiMode::Standard)
}

pub fn xi_g_max_with_mode(
    s: &ScenarioDistributions,
    sigma_a_choices: &[Permutation],
    sigma_b_choices: &[Permutation],
    mode: XiMode,
) -> Result<XiMax> {
    let n = s.outcomes();
    ensure_searchable(n)?;
    let identity: Permutation = (0..n).collect();
    let perms: Vec<Permutation> = all_permutations(n).collect();
    let taus: &[Permutation] = match mode {
        XiMode::Standard => std::slice::from_ref(&identity),
        XiMode::Joint => &perms,
    };
    let default_choice = [identity.clone()];
    let sa_choices = if sigma_a_choices.is_empty() { &default_choice[..] } else { sigma_a_choices };
    let sb_choices = if sigma_b_choices.is_empty() { &default_choice[..] } else { sigma_b_choices };

    let (c, d) = (s.c.as_slice(), s.d.as_slice());
    let mut best: Option<XiMax> = None;
    for sa in sa_choices {
        let a = s.a.permuted(sa);
        for sb in sb_choices {
            let b = s.b.permuted(sb);
            for tau in taus {
                for sigma in &perms {
                    let v = signed_gap(a.as_slice(), b.as_slice(), c, d, sigma, tau);
                    if best.as_ref().is_none_or(|m| v > m.value) {
                        best = Some(XiMax {
                            value: v,
                            sigma_a: sa.clone(),
                            sigma_b: sb.clone(),
                            sigma_star: sigma.clone(),
                            tau_star: (mode == XiMode::Joint).then(|| tau.clone()),
                        });
                    }
                }
            }
        }
    }
    Ok(best.expect("at least one permutation is searched"))
}

/// Error, disturbance, their lower bound and the slack of the trade-off.
#[derive(Debug, Clone, PartialEq)]
pub struct TradeoffReport {
    /// Minimal distance between `a` and `c` over relabelings.
    pub error: f64,
    /// Minimal distance between `b` and `d` over relabelings.
    pub disturbance: f64,
    /// Permutation-maximized lower bound on `error + disturbance`.
    pub bound: f64,
    /// `error + disturbance - bound`.
    pub slack: f64,
    pub sigma_a: Permutation,
    pub sigma_b: Permutation,
    pub sigma_star: Permutation,
    pub ozawa: Option<OzawaReport>,
}

impl TradeoffReport {
    pub fn lhs(&self) -> f64 {
        self.error + self.disturbance
    }

    pub fn rhs(&self) -> f64 {
        self.bound
    }
}

/// Evaluates the trade-off. When several relabelings minimize the error or the
/// disturbance, every combination is tried and the largest bound is kept.
pub fn tradeoff_report(s: &ScenarioDistributions) -> Result<TradeoffReport> {
    let eps = min_permutation_distance(&s.a, &s.c)?;
    let eta = min_permutation_distance(&s.b, &s.d)?;
    let xi = xi_g_max(s, &eps.minimizers, &eta.minimizers)?;
    Ok(TradeoffReport {
        error: eps.value,
        disturbance: eta.value,
        bound: xi.value,
        slack: eps.value + eta.value - xi.value,
        sigma_a: xi.sigma_a,
        sigma_b: xi.sigma_b,
        sigma_star: xi.sigma_star,
        ozawa: None,
    })
}

/// Unmaximized gap `|zeta(a, b) - zeta(c, d)|` in the given labeling.
pub fn plain_gap(s: &ScenarioDistributions) -> f64 {
    (l1(s.a.as_slice(), s.b.as_slice()) - l1(s.c.as_slice(), s.d.as_slice())).abs()
}
