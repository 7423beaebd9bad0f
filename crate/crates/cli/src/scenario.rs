//! Scenario-file schema, validation and instantiation.
//!
//! A scenario file is a JSON object with keys `mode`, `soi`, `cci`, `zeta`
//! and `sweep`. SOI powers are written as multiples of the swept SIR Ω
//! (`omega_scale`, or `lambda_*_scale` for correlated eigenvalue groups);
//! interferer powers are absolute. The sweep axis is the SIR in dB.

use crate::error::CliError;
use etamu_outage::coeffs::{CorrelatedSpec, EigenGroup, NumeratorCoefficients};
use etamu_outage::oracles::monte_carlo::SoiModel;
use etamu_outage::params::{
    integer_value, EtaMuInterferers, EtaMuParams, NakagamiInterferers, NakagamiParams,
    ScenarioCci, ScenarioSoi,
};
use serde::Deserialize;
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Type1,
    Type2,
    CorrelatedType1,
    CorrelatedType2,
}

impl Mode {
    pub fn is_correlated(self) -> bool {
        matches!(self, Mode::CorrelatedType1 | Mode::CorrelatedType2)
    }

    fn cci_is_eta_mu(self) -> bool {
        matches!(self, Mode::Type1 | Mode::CorrelatedType1)
    }

    pub fn name(self) -> &'static str {
        match self {
            Mode::Type1 => "type1",
            Mode::Type2 => "type2",
            Mode::CorrelatedType1 => "correlated-type1",
            Mode::CorrelatedType2 => "correlated-type2",
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    mode: Mode,
    soi: Vec<RawSoiEntry>,
    cci: Vec<RawCciEntry>,
    zeta: f64,
    sweep: RawSweep,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSoiEntry {
    omega_scale: Option<f64>,
    eta: Option<f64>,
    mu: Option<f64>,
    lambda_x_scale: Option<f64>,
    lambda_y_scale: Option<f64>,
    xi_x: Option<u32>,
    xi_y: Option<u32>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCciEntry {
    omega: Option<f64>,
    eta: Option<f64>,
    mu: Option<f64>,
    m: Option<f64>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSweep {
    omega_db_min: f64,
    omega_db_max: f64,
    omega_db_step: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct BranchSpec {
    pub omega_scale: f64,
    pub eta: f64,
    pub mu: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct GroupSpec {
    pub lambda_x_scale: f64,
    pub lambda_y_scale: f64,
    pub xi_x: u32,
    pub xi_y: u32,
}

#[derive(Debug, Clone)]
pub enum SoiSpec {
    Branches(Vec<BranchSpec>),
    Groups(Vec<GroupSpec>),
}

#[derive(Debug, Clone)]
pub enum CciSpec {
    EtaMu(Vec<(f64, f64, f64)>),
    Nakagami(Vec<(f64, f64)>),
}

#[derive(Debug, Clone, Copy)]
pub struct Sweep {
    pub omega_db_min: f64,
    pub omega_db_max: f64,
    pub omega_db_step: f64,
}

#[derive(Debug, Clone)]
pub struct Scenario {
    pub mode: Mode,
    pub soi: SoiSpec,
    pub cci: CciSpec,
    pub zeta: f64,
    pub sweep: Sweep,
}

fn schema(msg: String) -> CliError {
    CliError::Schema(format!("schema error: {msg}"))
}

fn require(field: Option<f64>, path: &str, name: &str) -> Result<f64, CliError> {
    field.ok_or_else(|| schema(format!("{path}.{name}: required field is missing")))
}

fn check_positive(value: f64, path: &str, name: &str) -> Result<(), CliError> {
    if !value.is_finite() {
        return Err(schema(format!("{path}.{name}: {name} must be finite (got {value})")));
    }
    if value <= 0.0 {
        return Err(schema(format!(
            "{path}.{name}: {name} must be strictly positive (got {value})"
        )));
    }
    Ok(())
}

fn forbid(field: Option<f64>, path: &str, name: &str, mode: Mode) -> Result<(), CliError> {
    if field.is_some() {
        return Err(schema(format!(
            "{path}.{name}: field is not allowed in mode {}",
            mode.name()
        )));
    }
    Ok(())
}

impl Scenario {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| schema(format!("cannot read {}: {e}", path.display())))?;
        let mut deserializer = serde_json::Deserializer::from_str(&text);
        let raw: RawScenario = serde_path_to_error::deserialize(&mut deserializer)
            .map_err(|e| schema(format!("{}: {e}", path.display())))?;
        Self::validate(raw)
    }

    fn validate(raw: RawScenario) -> Result<Self, CliError> {
        let mode = raw.mode;

        if raw.soi.is_empty() {
            return Err(schema("soi: at least one entry is required".into()));
        }
        if raw.cci.is_empty() {
            return Err(schema("cci: at least one entry is required".into()));
        }

        let soi = if mode.is_correlated() {
            let mut groups = Vec::with_capacity(raw.soi.len());
            for (i, e) in raw.soi.iter().enumerate() {
                let path = format!("soi[{i}]");
                forbid(e.omega_scale, &path, "omega_scale", mode)?;
                forbid(e.eta, &path, "eta", mode)?;
                forbid(e.mu, &path, "mu", mode)?;
                let lambda_x_scale = require(e.lambda_x_scale, &path, "lambda_x_scale")?;
                let lambda_y_scale = require(e.lambda_y_scale, &path, "lambda_y_scale")?;
                check_positive(lambda_x_scale, &path, "lambda_x_scale")?;
                check_positive(lambda_y_scale, &path, "lambda_y_scale")?;
                let xi_x = e
                    .xi_x
                    .ok_or_else(|| schema(format!("{path}.xi_x: required field is missing")))?;
                let xi_y = e
                    .xi_y
                    .ok_or_else(|| schema(format!("{path}.xi_y: required field is missing")))?;
                for (name, xi) in [("xi_x", xi_x), ("xi_y", xi_y)] {
                    if xi == 0 {
                        return Err(schema(format!(
                            "{path}.{name}: {name} must be a positive integer (got 0)"
                        )));
                    }
                }
                groups.push(GroupSpec {
                    lambda_x_scale,
                    lambda_y_scale,
                    xi_x,
                    xi_y,
                });
            }
            SoiSpec::Groups(groups)
        } else {
            let mut branches = Vec::with_capacity(raw.soi.len());
            for (i, e) in raw.soi.iter().enumerate() {
                let path = format!("soi[{i}]");
                forbid(e.lambda_x_scale, &path, "lambda_x_scale", mode)?;
                forbid(e.lambda_y_scale, &path, "lambda_y_scale", mode)?;
                if e.xi_x.is_some() || e.xi_y.is_some() {
                    return Err(schema(format!(
                        "{path}: xi fields are not allowed in mode {}",
                        mode.name()
                    )));
                }
                let omega_scale = require(e.omega_scale, &path, "omega_scale")?;
                let eta = require(e.eta, &path, "eta")?;
                let mu = require(e.mu, &path, "mu")?;
                check_positive(omega_scale, &path, "omega_scale")?;
                check_positive(eta, &path, "eta")?;
                check_positive(mu, &path, "mu")?;
                branches.push(BranchSpec {
                    omega_scale,
                    eta,
                    mu,
                });
            }
            SoiSpec::Branches(branches)
        };

        let cci = if mode.cci_is_eta_mu() {
            let mut list = Vec::with_capacity(raw.cci.len());
            for (i, e) in raw.cci.iter().enumerate() {
                let path = format!("cci[{i}]");
                forbid(e.m, &path, "m", mode)?;
                let omega = require(e.omega, &path, "omega")?;
                let eta = require(e.eta, &path, "eta")?;
                let mu = require(e.mu, &path, "mu")?;
                check_positive(omega, &path, "omega")?;
                check_positive(eta, &path, "eta")?;
                check_positive(mu, &path, "mu")?;
                if integer_value(mu).is_none() {
                    return Err(schema(format!(
                        "{path}.mu: mu must be a positive integer (got {mu})"
                    )));
                }
                list.push((omega, eta, mu));
            }
            CciSpec::EtaMu(list)
        } else {
            let mut list = Vec::with_capacity(raw.cci.len());
            for (i, e) in raw.cci.iter().enumerate() {
                let path = format!("cci[{i}]");
                forbid(e.eta, &path, "eta", mode)?;
                forbid(e.mu, &path, "mu", mode)?;
                let omega = require(e.omega, &path, "omega")?;
                let m = require(e.m, &path, "m")?;
                check_positive(omega, &path, "omega")?;
                check_positive(m, &path, "m")?;
                if integer_value(m).is_none() {
                    return Err(schema(format!(
                        "{path}.m: m must be a positive integer (got {m})"
                    )));
                }
                list.push((omega, m));
            }
            CciSpec::Nakagami(list)
        };

        check_positive(raw.zeta, "zeta", "zeta")
            .map_err(|_| schema(format!("zeta: zeta must be strictly positive and finite (got {})", raw.zeta)))?;

        let s = raw.sweep;
        for (name, v) in [
            ("omega_db_min", s.omega_db_min),
            ("omega_db_max", s.omega_db_max),
        ] {
            if !v.is_finite() {
                return Err(schema(format!("sweep.{name}: must be finite (got {v})")));
            }
        }
        check_positive(s.omega_db_step, "sweep", "omega_db_step")?;
        if s.omega_db_min > s.omega_db_max {
            return Err(schema(format!(
                "sweep.omega_db_min: must not exceed omega_db_max ({} > {})",
                s.omega_db_min, s.omega_db_max
            )));
        }

        Ok(Scenario {
            mode,
            soi,
            cci,
            zeta: raw.zeta,
            sweep: Sweep {
                omega_db_min: s.omega_db_min,
                omega_db_max: s.omega_db_max,
                omega_db_step: s.omega_db_step,
            },
        })
    }

    /// The dB grid of the sweep block: min, min+step, …, up to max.
    pub fn grid(&self) -> Vec<f64> {
        let s = &self.sweep;
        if s.omega_db_min == s.omega_db_max {
            return vec![s.omega_db_min];
        }
        let steps = ((s.omega_db_max - s.omega_db_min) / s.omega_db_step + 1e-9).floor() as usize;
        (0..=steps)
            .map(|i| s.omega_db_min + i as f64 * s.omega_db_step)
            .collect()
    }

    /// `n` evenly spaced dB points across the sweep range (inclusive).
    pub fn grid_of(&self, n: usize) -> Vec<f64> {
        let s = &self.sweep;
        if n <= 1 || s.omega_db_min == s.omega_db_max {
            return vec![s.omega_db_min];
        }
        (0..n)
            .map(|i| {
                s.omega_db_min
                    + (s.omega_db_max - s.omega_db_min) * i as f64 / (n - 1) as f64
            })
            .collect()
    }

    /// Builds the SOI side at a concrete linear SIR.
    pub fn soi_at(&self, omega_linear: f64) -> SoiInstance {
        match &self.soi {
            SoiSpec::Branches(branches) => SoiInstance::Branches(
                ScenarioSoi::new(
                    branches
                        .iter()
                        .map(|b| {
                            EtaMuParams::new(b.omega_scale * omega_linear, b.eta, b.mu)
                                .expect("validated at load")
                        })
                        .collect(),
                )
                .expect("validated at load"),
            ),
            SoiSpec::Groups(groups) => SoiInstance::Groups(
                CorrelatedSpec::new(
                    groups
                        .iter()
                        .map(|g| EigenGroup {
                            lambda_x: g.lambda_x_scale * omega_linear,
                            lambda_y: g.lambda_y_scale * omega_linear,
                            xi_x: g.xi_x,
                            xi_y: g.xi_y,
                        })
                        .collect(),
                )
                .expect("validated at load"),
            ),
        }
    }

    /// Builds the CCI side (independent of the sweep point).
    pub fn cci_instance(&self) -> ScenarioCci {
        match &self.cci {
            CciSpec::EtaMu(list) => ScenarioCci::EtaMu(
                EtaMuInterferers::new(
                    list.iter()
                        .map(|&(omega, eta, mu)| {
                            EtaMuParams::new(omega, eta, mu).expect("validated at load")
                        })
                        .collect(),
                )
                .expect("validated at load"),
            ),
            CciSpec::Nakagami(list) => ScenarioCci::Nakagami(
                NakagamiInterferers::new(
                    list.iter()
                        .map(|&(omega, m)| {
                            NakagamiParams::new(omega, m).expect("validated at load")
                        })
                        .collect(),
                )
                .expect("validated at load"),
            ),
        }
    }
}

/// A concrete SOI at one sweep point.
#[derive(Debug, Clone)]
pub enum SoiInstance {
    Branches(ScenarioSoi),
    Groups(CorrelatedSpec),
}

impl SoiInstance {
    pub fn numerator(&self) -> NumeratorCoefficients {
        match self {
            SoiInstance::Branches(s) => NumeratorCoefficients::from_soi(s),
            SoiInstance::Groups(g) => NumeratorCoefficients::from_correlated(g),
        }
    }

    pub fn model(&self) -> SoiModel<'_> {
        match self {
            SoiInstance::Branches(s) => SoiModel::Independent(s),
            SoiInstance::Groups(g) => SoiModel::Correlated(g),
        }
    }
}
