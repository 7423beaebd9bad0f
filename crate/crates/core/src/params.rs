//! Validated branch and interferer parameters.
//!
//! All η-μ parameters use format 1 (η > 0, μ > 0). Every type validates at
//! construction and is immutable afterwards, so downstream modules only ever
//! see well-formed scenarios.

use thiserror::Error;

/// Relative tolerance of the integer test: scenario files carry decimal
/// text, so a value counts as integer iff |x − round(x)| ≤ tol · max(1, x).
pub const INTEGER_REL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParamError {
    #[error("{field} must be strictly positive (got {value})")]
    NonPositiveParameter { field: &'static str, value: f64 },
    #[error("{field} must be finite (got {value})")]
    NonFiniteParameter { field: &'static str, value: f64 },
    #[error("{field} must be a positive integer (got {value})")]
    NonIntegerParameter { field: &'static str, value: f64 },
    #[error("{field} must be a positive integer or half-integer (got {value})")]
    NonHalfIntegerParameter { field: &'static str, value: f64 },
    #[error("{what} list must not be empty")]
    EmptyScenario { what: &'static str },
}

fn check_positive(field: &'static str, value: f64) -> Result<(), ParamError> {
    if !value.is_finite() {
        Err(ParamError::NonFiniteParameter { field, value })
    } else if value <= 0.0 {
        Err(ParamError::NonPositiveParameter { field, value })
    } else {
        Ok(())
    }
}

/// Rounds `x` to a positive integer if it is one within [`INTEGER_REL_TOL`].
pub fn integer_value(x: f64) -> Option<u32> {
    if !x.is_finite() {
        return None;
    }
    let rounded = x.round();
    if rounded >= 1.0
        && rounded <= f64::from(u32::MAX)
        && (x - rounded).abs() <= INTEGER_REL_TOL * x.abs().max(1.0)
    {
        Some(rounded as u32)
    } else {
        None
    }
}

/// Applies the integer rule to `2x`: returns `2x` as an integer when `x` is
/// a positive integer or half-integer.
pub fn half_integer_doubled(x: f64) -> Option<u32> {
    integer_value(2.0 * x)
}

/// One η-μ faded power envelope in format 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EtaMuParams {
    omega: f64,
    eta: f64,
    mu: f64,
}

impl EtaMuParams {
    pub fn new(omega: f64, eta: f64, mu: f64) -> Result<Self, ParamError> {
        check_positive("omega", omega)?;
        check_positive("eta", eta)?;
        check_positive("mu", mu)?;
        Ok(Self { omega, eta, mu })
    }

    /// Mean power, linear scale.
    pub fn omega(&self) -> f64 {
        self.omega
    }

    /// Format-1 shape parameter η.
    pub fn eta(&self) -> f64 {
        self.eta
    }

    /// Format-1 shape parameter μ.
    pub fn mu(&self) -> f64 {
        self.mu
    }
}

/// One Nakagami-m faded power envelope.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NakagamiParams {
    omega: f64,
    m: f64,
}

impl NakagamiParams {
    pub fn new(omega: f64, m: f64) -> Result<Self, ParamError> {
        check_positive("omega", omega)?;
        check_positive("m", m)?;
        Ok(Self { omega, m })
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    /// The exact η-μ embedding (Ω, η = 1, μ = m/2).
    pub fn as_eta_mu_half(&self) -> EtaMuParams {
        EtaMuParams {
            omega: self.omega,
            eta: 1.0,
            mu: self.m / 2.0,
        }
    }

    /// The limiting η-μ relabeling (Ω, η = eta_small, μ = m), meaningful as
    /// `eta_small → 0`. Used for limit-consistency checks.
    pub fn as_eta_mu_limit(&self, eta_small: f64) -> Result<EtaMuParams, ParamError> {
        EtaMuParams::new(self.omega, eta_small, self.m)
    }
}

/// The SOI side: N ≥ 1 independent MRC branches.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioSoi {
    branches: Vec<EtaMuParams>,
}

impl ScenarioSoi {
    pub fn new(branches: Vec<EtaMuParams>) -> Result<Self, ParamError> {
        if branches.is_empty() {
            return Err(ParamError::EmptyScenario { what: "soi branch" });
        }
        Ok(Self { branches })
    }

    pub fn branches(&self) -> &[EtaMuParams] {
        &self.branches
    }
}

/// η-μ interferers; construction enforces the integer-μ hypothesis the
/// closed form rests on, so a violating scenario cannot be represented.
#[derive(Debug, Clone, PartialEq)]
pub struct EtaMuInterferers {
    interferers: Vec<EtaMuParams>,
}

impl EtaMuInterferers {
    pub fn new(interferers: Vec<EtaMuParams>) -> Result<Self, ParamError> {
        if interferers.is_empty() {
            return Err(ParamError::EmptyScenario { what: "interferer" });
        }
        for p in &interferers {
            if integer_value(p.mu()).is_none() {
                return Err(ParamError::NonIntegerParameter {
                    field: "mu",
                    value: p.mu(),
                });
            }
        }
        Ok(Self { interferers })
    }

    pub fn interferers(&self) -> &[EtaMuParams] {
        &self.interferers
    }
}

/// Nakagami-m interferers with the analogous integer-m restriction.
#[derive(Debug, Clone, PartialEq)]
pub struct NakagamiInterferers {
    interferers: Vec<NakagamiParams>,
}

impl NakagamiInterferers {
    pub fn new(interferers: Vec<NakagamiParams>) -> Result<Self, ParamError> {
        if interferers.is_empty() {
            return Err(ParamError::EmptyScenario { what: "interferer" });
        }
        for p in &interferers {
            if integer_value(p.m()).is_none() {
                return Err(ParamError::NonIntegerParameter {
                    field: "m",
                    value: p.m(),
                });
            }
        }
        Ok(Self { interferers })
    }

    pub fn interferers(&self) -> &[NakagamiParams] {
        &self.interferers
    }
}

/// The CCI side of a scenario, in either fading flavor.
#[derive(Debug, Clone, PartialEq)]
pub enum ScenarioCci {
    EtaMu(EtaMuInterferers),
    Nakagami(NakagamiInterferers),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_figure_caption_branch() {
        assert!(EtaMuParams::new(1.0, 2.6, 1.0).is_ok());
    }

    #[test]
    fn rejects_boundary_and_sign_violations() {
        assert_eq!(
            EtaMuParams::new(1.0, 0.0, 1.0),
            Err(ParamError::NonPositiveParameter {
                field: "eta",
                value: 0.0
            })
        );
        assert_eq!(
            EtaMuParams::new(-1.0, 1.0, 0.5),
            Err(ParamError::NonPositiveParameter {
                field: "omega",
                value: -1.0
            })
        );
    }

    #[test]
    fn rejects_non_finite() {
        assert!(matches!(
            EtaMuParams::new(1.0, f64::NAN, 1.0),
            Err(ParamError::NonFiniteParameter { field: "eta", .. })
        ));
        assert!(matches!(
            EtaMuParams::new(f64::INFINITY, 1.0, 1.0),
            Err(ParamError::NonFiniteParameter { field: "omega", .. })
        ));
    }

    #[test]
    fn half_embedding_examples() {
        let rayleigh = NakagamiParams::new(1.0, 1.0).unwrap().as_eta_mu_half();
        assert_eq!((rayleigh.omega(), rayleigh.eta(), rayleigh.mu()), (1.0, 1.0, 0.5));

        let m4 = NakagamiParams::new(0.5, 4.0).unwrap().as_eta_mu_half();
        assert_eq!((m4.omega(), m4.eta(), m4.mu()), (0.5, 1.0, 2.0));

        let one_sided = NakagamiParams::new(2.0, 0.5).unwrap().as_eta_mu_half();
        assert_eq!((one_sided.omega(), one_sided.eta(), one_sided.mu()), (2.0, 1.0, 0.25));
    }

    #[test]
    fn limit_embedding_relabels() {
        let p = NakagamiParams::new(1.0, 2.0).unwrap();
        let e = p.as_eta_mu_limit(1e-3).unwrap();
        assert_eq!((e.omega(), e.eta(), e.mu()), (1.0, 1e-3, 2.0));
        assert!(p.as_eta_mu_limit(0.0).is_err());
    }

    #[test]
    fn half_embedding_round_trips_through_validation() {
        for (omega, m) in [(1.0, 1.0), (0.25, 7.0), (3.5, 0.5), (10.0, 2.0)] {
            let embedded = NakagamiParams::new(omega, m).unwrap().as_eta_mu_half();
            let revalidated =
                EtaMuParams::new(embedded.omega(), embedded.eta(), embedded.mu()).unwrap();
            assert_eq!(revalidated, embedded);
            assert_eq!(embedded.omega(), omega);
        }
    }

    #[test]
    fn interferer_mu_must_be_integer() {
        let bad = EtaMuParams::new(1.0, 1.5, 1.5).unwrap();
        assert_eq!(
            EtaMuInterferers::new(vec![bad]),
            Err(ParamError::NonIntegerParameter {
                field: "mu",
                value: 1.5
            })
        );
        let good = EtaMuParams::new(1.0, 1.5, 2.0).unwrap();
        assert!(EtaMuInterferers::new(vec![good]).is_ok());
    }

    #[test]
    fn interferer_m_must_be_integer() {
        let bad = NakagamiParams::new(1.0, 2.5).unwrap();
        assert!(NakagamiInterferers::new(vec![bad]).is_err());
    }

    #[test]
    fn empty_lists_are_rejected() {
        assert!(ScenarioSoi::new(vec![]).is_err());
        assert!(EtaMuInterferers::new(vec![]).is_err());
        assert!(NakagamiInterferers::new(vec![]).is_err());
    }

    #[test]
    fn integer_rule_tolerates_decimal_noise() {
        assert_eq!(integer_value(2.0 + 4e-13), Some(2));
        assert_eq!(integer_value(2.0 - 4e-13), Some(2));
        assert_eq!(integer_value(1.5), None);
        assert_eq!(integer_value(0.0), None);
        assert_eq!(integer_value(-3.0), None);
        assert_eq!(integer_value(1e20), None);
    }

    #[test]
    fn half_integer_rule() {
        assert_eq!(half_integer_doubled(0.5), Some(1));
        assert_eq!(half_integer_doubled(2.0), Some(4));
        assert_eq!(half_integer_doubled(1.75), None);
    }
}
