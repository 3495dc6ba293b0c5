//! Typed sweep configuration and per-point evaluation.

use std::path::PathBuf;
use std::str::FromStr;

use itertools::Itertools;
use rayon::prelude::*;

use super::config::{parse_f64, Format, Grid, RawConfig};
use super::output::{Table, Value};
use super::CliError;
use crate::error::{Error, Result};
use crate::models::{
    circuit_probabilities, diagonal_axis, imperfect_probabilities, invert_runs, qubit_cnot_model, qutrit_model,
    run_distributions, Basis, CircuitParams, Extinction, QubitParams, QutritParams, X_AXIS, Z_AXIS,
};
use crate::shots::{derive_seed, estimate_tradeoff, simulate_counts, CountRecord};
use crate::tradeoff::{tradeoff_report, ScenarioDistributions, TradeoffReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    Qubit,
    Qutrit,
    Circuit,
    Sagnac,
    Shots,
    Verify,
}

impl FromStr for Scenario {
    type Err = CliError;

    fn from_str(s: &str) -> std::result::Result<Self, CliError> {
        Ok(match s {
            "qubit" => Scenario::Qubit,
            "qutrit" => Scenario::Qutrit,
            "circuit" => Scenario::Circuit,
            "sagnac" => Scenario::Sagnac,
            "shots" => Scenario::Shots,
            "verify" => Scenario::Verify,
            _ => return Err(CliError::Usage(format!("unknown scenario `{s}`"))),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Unit {
    Degrees,
    Plain,
}

struct ParamSpec {
    name: &'static str,
    unit: Unit,
    default: &'static str,
}

const fn deg(name: &'static str, default: &'static str) -> ParamSpec {
    ParamSpec { name, unit: Unit::Degrees, default }
}

const fn plain(name: &'static str, default: &'static str) -> ParamSpec {
    ParamSpec { name, unit: Unit::Plain, default }
}

const QUBIT: &[ParamSpec] = &[deg("alpha", "0:90:46"), deg("phi", "0"), deg("theta", "0:45:23")];
const QUTRIT: &[ParamSpec] = &[
    deg("alpha", "45"),
    deg("phi_s", "45"),
    deg("chi12", "0"),
    deg("chi13", "0"),
    deg("theta", "0:90:46"),
    deg("phi_m", "0:90:46"),
];
const CIRCUIT: &[ParamSpec] = &[deg("alpha", "0:90:46"), deg("phi", "0"), deg("theta", "0"), plain("gamma", "0.766")];
const SAGNAC: &[ParamSpec] = &[
    deg("alpha", "0:90:46"),
    deg("phi", "0"),
    deg("theta", "0"),
    plain("gamma", "0.766"),
    plain("e1", "50"),
    plain("e2", "50"),
];
const SHOTS: &[ParamSpec] = &[
    deg("alpha", "0:90:46"),
    deg("phi", "0"),
    deg("theta", "0"),
    plain("gamma", "0.766"),
    plain("e1", "inf"),
    plain("e2", "inf"),
];

fn grid_specs(s: Scenario) -> &'static [ParamSpec] {
    match s {
        Scenario::Qubit => QUBIT,
        Scenario::Qutrit => QUTRIT,
        Scenario::Circuit => CIRCUIT,
        Scenario::Sagnac => SAGNAC,
        Scenario::Shots => SHOTS,
        Scenario::Verify => &[],
    }
}

/// Non-gridded keys and their defaults. An empty default means "unset".
fn setting_specs(s: Scenario) -> &'static [(&'static str, &'static str)] {
    match s {
        Scenario::Qubit => &[("a_axis", "z"), ("b_axis", "diag")],
        Scenario::Sagnac => &[("meter_e1", ""), ("meter_e2", "")],
        Scenario::Shots => &[
            ("meter_e1", ""),
            ("meter_e2", ""),
            ("mean_total", "1e6"),
            ("bootstrap", "200"),
            ("dump_counts", "false"),
        ],
        Scenario::Verify => &[("dim", "2"), ("trials", "1000")],
        Scenario::Qutrit | Scenario::Circuit => &[],
    }
}

const GLOBAL_KEYS: &[&str] = &["scenario", "out", "seed", "format", "jobs"];

#[derive(Debug, Clone, PartialEq)]
struct Settings {
    a_axis: [f64; 3],
    b_axis: [f64; 3],
    meter: [Option<Extinction>; 2],
    mean_total: f64,
    bootstrap: usize,
    dump_counts: bool,
}

/// Fully parsed sweep description.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub scenario: Scenario,
    /// Every scenario parameter in evaluation order; the first varies slowest.
    pub grid: Vec<(String, Grid)>,
    pub output: Option<PathBuf>,
    pub seed: u64,
    pub format: Format,
    pub jobs: Option<usize>,
    raw: RawConfig,
    settings: Settings,
}

fn parse_axis(key: &str, s: &str) -> std::result::Result<[f64; 3], CliError> {
    match s {
        "x" => return Ok(X_AXIS),
        "y" => return Ok([0.0, 1.0, 0.0]),
        "z" => return Ok(Z_AXIS),
        "diag" => return Ok(diagonal_axis()),
        _ => {}
    }
    let parts: Vec<f64> = s
        .split([',', ' '])
        .filter(|p| !p.is_empty())
        .map(|p| p.parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| CliError::Usage(format!("`{key}`: expected x, y, z, diag or three components")))?;
    let [x, y, z] = parts[..] else {
        return Err(CliError::Usage(format!("`{key}`: expected three components")));
    };
    let norm = (x * x + y * y + z * z).sqrt();
    if norm == 0.0 {
        return Err(CliError::Usage(format!("`{key}`: zero vector")));
    }
    Ok([x / norm, y / norm, z / norm])
}

fn parse_value<T: FromStr>(key: &str, s: &str) -> std::result::Result<T, CliError> {
    s.parse().map_err(|_| CliError::Usage(format!("`{key}`: cannot parse `{s}`")))
}

fn parse_extinction(key: &str, s: &str) -> std::result::Result<Option<Extinction>, CliError> {
    if s.is_empty() {
        return Ok(None);
    }
    let e = parse_f64(s).ok_or_else(|| CliError::Usage(format!("`{key}`: cannot parse `{s}`")))?;
    Extinction::new(e).map(Some).map_err(|e| CliError::Usage(format!("`{key}`: {e}")))
}

impl SweepConfig {
    pub fn from_raw(raw: &RawConfig) -> std::result::Result<Self, CliError> {
        let scenario: Scenario = raw
            .get("scenario")
            .ok_or_else(|| CliError::Usage("missing `scenario`".into()))?
            .parse()?;
        let specs = grid_specs(scenario);
        let settings_spec = setting_specs(scenario);
        for key in raw.keys() {
            let known = GLOBAL_KEYS.contains(&key)
                || specs.iter().any(|p| p.name == key)
                || settings_spec.iter().any(|(k, _)| *k == key);
            if !known {
                return Err(CliError::Usage(format!("scenario {scenario:?} does not accept `{key}`")));
            }
        }
        let value = |key: &str, default: &'static str| raw.get(key).unwrap_or(default).to_string();

        let grid = specs
            .iter()
            .map(|p| Ok((p.name.to_string(), Grid::parse(p.name, &value(p.name, p.default))?)))
            .collect::<std::result::Result<Vec<_>, CliError>>()?;

        let setting = |key: &str| {
            let default = settings_spec.iter().find(|(k, _)| *k == key).map_or("", |(_, d)| *d);
            raw.get(key).unwrap_or(default).to_string()
        };
        let settings = Settings {
            a_axis: parse_axis("a_axis", &value("a_axis", "z"))?,
            b_axis: parse_axis("b_axis", &value("b_axis", "diag"))?,
            meter: [parse_extinction("meter_e1", &setting("meter_e1"))?, parse_extinction("meter_e2", &setting("meter_e2"))?],
            mean_total: parse_value("mean_total", &value("mean_total", "1e6"))?,
            bootstrap: parse_value("bootstrap", &value("bootstrap", "200"))?,
            dump_counts: parse_value("dump_counts", &value("dump_counts", "false"))?,
        };
        if settings.bootstrap == 0 {
            return Err(CliError::Usage("`bootstrap` must be positive".into()));
        }
        if !(settings.mean_total.is_finite() && settings.mean_total > 0.0) {
            return Err(CliError::Usage("`mean_total` must be positive".into()));
        }

        let jobs = raw.get("jobs").map(|s| parse_value::<usize>("jobs", s)).transpose()?;
        if jobs == Some(0) {
            return Err(CliError::Usage("`jobs` must be positive".into()));
        }
        Ok(Self {
            scenario,
            grid,
            output: raw.get("out").filter(|s| !s.is_empty()).map(PathBuf::from),
            seed: raw.get("seed").map(|s| parse_value("seed", s)).transpose()?.unwrap_or(0),
            format: raw.get("format").map(str::parse).transpose()?.unwrap_or_default(),
            jobs,
            raw: raw.clone(),
            settings,
        })
    }

    pub fn raw(&self) -> &RawConfig {
        &self.raw
    }

    /// Every grid point, row-major with the first parameter slowest.
    pub fn points(&self) -> Vec<Vec<f64>> {
        self.grid.iter().map(|(_, g)| g.values()).multi_cartesian_product().collect()
    }

    fn unit(&self, i: usize) -> Unit {
        grid_specs(self.scenario)[i].unit
    }

    /// Parameter values converted to internal units.
    fn internal(&self, point: &[f64]) -> Vec<f64> {
        point
            .iter()
            .enumerate()
            .map(|(i, &v)| if self.unit(i) == Unit::Degrees { v.to_radians() } else { v })
            .collect()
    }

    fn outcomes(&self) -> usize {
        if self.scenario == Scenario::Qutrit {
            3
        } else {
            2
        }
    }

    pub fn header(&self) -> Vec<String> {
        let mut h: Vec<String> = self.grid.iter().map(|(k, _)| k.clone()).collect();
        match self.scenario {
            Scenario::Qubit => h.extend(["a_x", "a_y", "a_z", "b_x", "b_y", "b_z"].map(String::from)),
            Scenario::Sagnac | Scenario::Shots => h.extend(["meter_e1", "meter_e2"].map(String::from)),
            _ => {}
        }
        if self.scenario == Scenario::Shots {
            h.extend(["mean_total", "bootstrap", "model_lhs", "model_rhs", "lhs", "lhs_std", "rhs", "rhs_std"].map(String::from));
            h.extend(report_columns());
            if self.settings.dump_counts {
                for run in ["z", "x"] {
                    h.extend((0..8).map(|i| format!("{run}_n{i}")));
                }
            }
            return h;
        }
        let n = self.outcomes();
        for dist in ["a", "b", "c", "d"] {
            if n == 2 {
                h.push(format!("p_{dist}+"));
                h.push(format!("p_{dist}-"));
            } else {
                h.extend((1..=n).map(|i| format!("p_{dist}{i}")));
            }
        }
        h.extend(report_columns());
        if matches!(self.scenario, Scenario::Circuit | Scenario::Sagnac) {
            h.extend(["lhs", "rhs"].map(String::from));
        }
        if self.scenario == Scenario::Sagnac {
            h.push("physical".into());
        }
        h
    }

    fn circuit_params(&self, x: &[f64]) -> Result<CircuitParams> {
        let mut p = CircuitParams::new(x[0], x[3], x[2]);
        p.phi = x[1];
        if x.len() > 4 {
            let (e1, e2) = (Extinction::new(x[4])?, Extinction::new(x[5])?);
            p = p.with_extinction(e1, e2);
            if self.settings.meter.iter().any(Option::is_some) {
                let [m1, m2] = self.settings.meter;
                p = p.with_meter_extinction(m1.unwrap_or(e1), m2.unwrap_or(e2));
            }
        }
        Ok(p)
    }

    /// One output row.
    pub fn evaluate(&self, index: usize, point: &[f64]) -> Result<Vec<Value>> {
        let x = self.internal(point);
        let mut row: Vec<Value> = point.iter().map(|&v| Value::Num(v)).collect();
        match self.scenario {
            Scenario::Qubit => {
                let p = QubitParams {
                    alpha: x[0],
                    phi: x[1],
                    theta: x[2],
                    a_axis: self.settings.a_axis,
                    b_axis: self.settings.b_axis,
                };
                row.extend(self.settings.a_axis.iter().chain(&self.settings.b_axis).map(|&v| Value::Num(v)));
                let s = qubit_cnot_model(&p)?;
                push_scenario(&mut row, &s, &tradeoff_report(&s)?);
            }
            Scenario::Qutrit => {
                let p = QutritParams {
                    alpha: x[0],
                    phi_s: x[1],
                    chi12: x[2],
                    chi13: x[3],
                    theta: x[4],
                    phi_m: x[5],
                };
                let s = qutrit_model(&p)?;
                push_scenario(&mut row, &s, &tradeoff_report(&s)?);
            }
            Scenario::Circuit => {
                let s = circuit_probabilities(&self.circuit_params(&x)?)?.scenario;
                let r = tradeoff_report(&s)?;
                push_scenario(&mut row, &s, &r);
                row.extend([Value::Num(r.lhs()), Value::Num(r.rhs())]);
            }
            Scenario::Sagnac => {
                let p = self.circuit_params(&x)?;
                push_meter(&mut row, &p);
                let m = imperfect_probabilities(&p)?;
                push_scenario(&mut row, &m.scenario, &m.report);
                row.extend([Value::Num(m.lhs()), Value::Num(m.rhs())]);
                row.push(Value::Int(u64::from(m.scenario.all_physical())));
            }
            Scenario::Shots => {
                let p = self.circuit_params(&x)?;
                push_meter(&mut row, &p);
                self.shots_row(&mut row, &p, index)?;
            }
            Scenario::Verify => unreachable!("verify has no grid"),
        }
        Ok(row)
    }

    fn shots_row(&self, row: &mut Vec<Value>, p: &CircuitParams, index: usize) -> Result<()> {
        let (z_model, x_model) = run_distributions(p)?;
        let model = tradeoff_report(&invert_runs(&z_model, &x_model, p.gamma)?)?;
        let point_seed = derive_seed(self.seed, index as u64);
        let n = self.settings.mean_total;
        let z = simulate_counts(&z_model, n, Basis::Z, derive_seed(point_seed, 0))?;
        let xr = simulate_counts(&x_model, n, Basis::X, derive_seed(point_seed, 1))?;
        let est = estimate_tradeoff(&z, &xr, p.gamma, self.settings.bootstrap, derive_seed(point_seed, 2))?;
        row.extend([
            Value::Num(n),
            Value::Int(self.settings.bootstrap as u64),
            Value::Num(model.lhs()),
            Value::Num(model.rhs()),
            Value::Num(est.lhs.value),
            Value::Num(est.lhs.std),
            Value::Num(est.rhs.value),
            Value::Num(est.rhs.std),
        ]);
        push_report(row, &est.report);
        if self.settings.dump_counts {
            for c in [&z, &xr] {
                row.extend(counts(c));
            }
        }
        Ok(())
    }

    /// Evaluates every grid point on the current rayon pool, keeping grid order.
    pub fn run(&self) -> Result<Table> {
        let points = self.points();
        let rows = points
            .par_iter()
            .enumerate()
            .map(|(i, pt)| self.evaluate(i, pt))
            .collect::<Result<Vec<_>>>()?;
        Ok(Table { header: self.header(), rows })
    }
}

fn counts(c: &CountRecord) -> impl Iterator<Item = Value> + '_ {
    c.counts().iter().map(|&n| Value::Int(n))
}

fn report_columns() -> [String; 4] {
    ["error", "disturbance", "bound", "slack"].map(String::from)
}

fn push_meter(row: &mut Vec<Value>, p: &CircuitParams) {
    let (m1, m2) = p.meter_extinction.unwrap_or((p.e1, p.e2));
    row.extend([Value::Num(m1.value()), Value::Num(m2.value())]);
}

fn push_report(row: &mut Vec<Value>, r: &TradeoffReport) {
    row.extend([r.error, r.disturbance, r.bound, r.slack].map(Value::Num));
}

fn push_scenario(row: &mut Vec<Value>, s: &ScenarioDistributions, r: &TradeoffReport) {
    for d in [s.a(), s.b(), s.c(), s.d()] {
        row.extend(d.as_slice().iter().map(|&p| Value::Num(p)));
    }
    push_report(row, r);
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Model(e)
    }
}
