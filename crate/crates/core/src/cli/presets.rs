//! Named sweeps regenerating the data behind each figure. Angles are in degrees.
//!
//! Heat maps use 1 degree steps for the qubit maps and 2 degree steps
//! elsewhere; any key can be overridden with `--set`.

use super::config::RawConfig;

pub struct Preset {
    pub name: &'static str,
    pub summary: &'static str,
    /// Sweeps whose rows are concatenated in order.
    pub configs: Vec<RawConfig>,
}

pub const PRESET_NAMES: &[&str] = &[
    "fig1",
    "fig2",
    "fig3",
    "fig3-imperfect",
    "fig3-shots",
    "fig4",
    "figS1",
    "figS2",
    "figS5",
    "figS6",
    "figS7",
];

const FIG3_GRID: [(&str, &str); 3] = [("alpha", "0:90:46"), ("theta", "0:27:4"), ("gamma", "0.766")];

fn with(base: &[(&str, &str)], extra: &[(&str, &str)]) -> RawConfig {
    let mut c = RawConfig::from_pairs(base);
    c.merge(&RawConfig::from_pairs(extra));
    c
}

pub fn preset(name: &str) -> Option<Preset> {
    let qubit_map = [("scenario", "qubit"), ("alpha", "0:90:91"), ("theta", "0:45:46"), ("phi", "0")];
    let qutrit_map = [("scenario", "qutrit"), ("theta", "0:90:46"), ("phi_m", "0:90:46")];
    let single_alpha_e50 = [("scenario", "sagnac"), ("alpha", "0:90:46"), ("theta", "0"), ("e1", "50"), ("e2", "50")];

    let (summary, configs) = match name {
        "fig1" => ("qubit map, B = (X+Y+Z)/sqrt3", vec![with(&qubit_map, &[("b_axis", "diag")])]),
        "fig4" | "figS1" => ("qubit map, B = X", vec![with(&qubit_map, &[("b_axis", "x")])]),
        "fig2" => ("qutrit map, alpha = phi_s = 45", vec![with(&qutrit_map, &[("alpha", "45"), ("phi_s", "45")])]),
        "figS2" => (
            "qutrit maps, alpha = 60, phi_s = 90, both phase settings",
            [("0", "0"), ("30", "60")]
                .iter()
                .map(|&(c12, c13)| with(&qutrit_map, &[("alpha", "60"), ("phi_s", "90"), ("chi12", c12), ("chi13", c13)]))
                .collect(),
        ),
        "fig3" => ("circuit lhs/rhs, ideal optics", vec![with(&[("scenario", "circuit")], &FIG3_GRID)]),
        "fig3-imperfect" => (
            "circuit lhs/rhs, extinction ratio 50",
            vec![with(&[("scenario", "sagnac"), ("e1", "50"), ("e2", "50")], &FIG3_GRID)],
        ),
        "figS5" => ("recovered probabilities at theta = 0, extinction 50", vec![with(&single_alpha_e50, &[("alpha", "0:90:91")])]),
        "figS6" => (
            "lhs/rhs at theta = 0, ideal then extinction 50",
            vec![with(&single_alpha_e50, &[("e1", "inf"), ("e2", "inf")]), with(&single_alpha_e50, &[])],
        ),
        "fig3-shots" => (
            "simulated counts, ideal optics, N = 1e6",
            vec![with(&[("scenario", "shots"), ("mean_total", "1e6"), ("bootstrap", "200")], &FIG3_GRID)],
        ),
        "figS7" => (
            "simulated counts, circular polarization, extinction 50",
            vec![with(
                &[("scenario", "shots"), ("phi", "90"), ("e1", "50"), ("e2", "50"), ("mean_total", "1e6"), ("bootstrap", "200")],
                &FIG3_GRID,
            )],
        ),
        _ => return None,
    };
    let name = PRESET_NAMES.iter().find(|n| **n == name).copied()?;
    Some(Preset { name, summary, configs })
}
