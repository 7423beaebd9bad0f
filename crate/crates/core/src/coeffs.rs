//! Gamma-factorization coefficients of the power-sum MGFs.
//!
//! A squared η-μ envelope with parameters (Ω, η, μ) is the sum of two
//! independent Gamma variates, both of shape μ, with rates
//!
//! ```text
//! rate_a = (μ/Ω) · (2 + η + 1/η) / (1 + η),      rate_b = η · rate_a.
//! ```
//!
//! The SOI power sum therefore has MGF ∏ (1 − s/rate)^(−shape) over 2N
//! Gamma factors ([`NumeratorCoefficients`]), and the interference power sum
//! has MGF ∏ (1 − s/β_j)^(−b_j) over its distinct rates with integer
//! multiplicities ([`PoleSet`]) — the residue locations of the inversion
//! kernel. Spatially correlated MRC keeps the same factor form with
//! eigenvalue-derived shapes and rates supplied directly
//! ([`CorrelatedSpec`]).

use crate::params::{
    half_integer_doubled, integer_value, EtaMuInterferers, EtaMuParams, NakagamiInterferers,
    ParamError, ScenarioCci, ScenarioSoi,
};

/// Two pole rates coincide iff |β − β′| ≤ tol · max(β, β′). Near-coincident
/// unmerged poles make the (β_r − β_j) difference powers in the residue sum
/// cancel catastrophically, so merging is a stability requirement as much as
/// a bookkeeping one.
pub const MERGE_REL_TOL: f64 = 1e-9;

/// One Gamma factor (1 − s/rate)^(−shape) of a power-sum MGF.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaPair {
    pub shape: f64,
    pub rate: f64,
}

/// The two Gamma rates of one η-μ envelope; both components share shape μ.
pub(crate) fn branch_gamma_rates(p: &EtaMuParams) -> (f64, f64) {
    let eta = p.eta();
    let base = (p.mu() / p.omega()) * ((2.0 + eta + 1.0 / eta) / (1.0 + eta));
    (base, eta * base)
}

/// The ordered Gamma factors of the SOI power-sum MGF (two per branch or
/// eigenvalue group).
#[derive(Debug, Clone, PartialEq)]
pub struct NumeratorCoefficients {
    pairs: Vec<GammaPair>,
}

impl NumeratorCoefficients {
    /// Factors of an independent-MRC SOI: branch n contributes shapes
    /// (μ_n, μ_n) and rates (rate_a, η_n · rate_a) in branch order.
    pub fn from_soi(soi: &ScenarioSoi) -> Self {
        let mut pairs = Vec::with_capacity(2 * soi.branches().len());
        for branch in soi.branches() {
            let (rate_a, rate_b) = branch_gamma_rates(branch);
            pairs.push(GammaPair {
                shape: branch.mu(),
                rate: rate_a,
            });
            pairs.push(GammaPair {
                shape: branch.mu(),
                rate: rate_b,
            });
        }
        Self { pairs }
    }

    /// Factors of a correlated-MRC SOI: group v contributes
    /// (ξ_x/2, 1/(2λ_x)) then (ξ_y/2, 1/(2λ_y)).
    pub fn from_correlated(spec: &CorrelatedSpec) -> Self {
        let mut pairs = Vec::with_capacity(2 * spec.groups().len());
        for group in spec.groups() {
            pairs.push(GammaPair {
                shape: f64::from(group.xi_x) / 2.0,
                rate: 1.0 / (2.0 * group.lambda_x),
            });
            pairs.push(GammaPair {
                shape: f64::from(group.xi_y) / 2.0,
                rate: 1.0 / (2.0 * group.lambda_y),
            });
        }
        Self { pairs }
    }

    pub fn pairs(&self) -> &[GammaPair] {
        &self.pairs
    }

    /// Sum of all shape exponents (the algebraic decay order contributed by
    /// the numerator side).
    pub fn shape_sum(&self) -> f64 {
        self.pairs.iter().map(|p| p.shape).sum()
    }
}

/// Per-interferer Gamma rates before pole merging: `rate_b = η · rate_a`,
/// and both components carry the interferer's integer μ as multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterfererRates {
    pub rate_a: f64,
    pub rate_b: f64,
    pub multiplicity: u32,
}

/// The intermediate per-interferer coefficients of an η-μ CCI set.
#[derive(Debug, Clone, PartialEq)]
pub struct IntermediateCoefficients {
    entries: Vec<InterfererRates>,
}

impl IntermediateCoefficients {
    pub fn entries(&self) -> &[InterfererRates] {
        &self.entries
    }
}

/// Maps η-μ interferers to their intermediate Gamma rates.
pub fn cci_intermediate(cci: &EtaMuInterferers) -> IntermediateCoefficients {
    let entries = cci
        .interferers()
        .iter()
        .map(|p| {
            let (rate_a, rate_b) = branch_gamma_rates(p);
            InterfererRates {
                rate_a,
                rate_b,
                multiplicity: integer_value(p.mu()).expect("validated at construction"),
            }
        })
        .collect();
    IntermediateCoefficients { entries }
}

/// A distinct denominator rate with its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pole {
    pub rate: f64,
    pub multiplicity: u32,
}

/// The distinct rates of the interference MGF denominator, ascending, with
/// multiplicities summed over coincident contributions.
#[derive(Debug, Clone, PartialEq)]
pub struct PoleSet {
    poles: Vec<Pole>,
}

impl PoleSet {
    /// Merges raw (rate, multiplicity) candidates into a canonical pole set:
    /// sorted ascending, coincident rates (within [`MERGE_REL_TOL`]) fused by
    /// summing multiplicities.
    pub fn from_candidates(candidates: impl IntoIterator<Item = (f64, u32)>) -> Self {
        let mut raw: Vec<(f64, u32)> = candidates.into_iter().collect();
        assert!(!raw.is_empty(), "a pole set needs at least one candidate");
        raw.sort_by(|a, b| a.0.total_cmp(&b.0));

        let mut poles: Vec<Pole> = Vec::new();
        for (rate, multiplicity) in raw {
            assert!(rate > 0.0 && rate.is_finite(), "pole rates must be positive");
            match poles.last_mut() {
                Some(last) if rate - last.rate <= MERGE_REL_TOL * rate.max(last.rate) => {
                    last.multiplicity += multiplicity;
                }
                _ => poles.push(Pole { rate, multiplicity }),
            }
        }
        Self { poles }
    }

    pub fn poles(&self) -> &[Pole] {
        &self.poles
    }

    pub fn min_rate(&self) -> f64 {
        self.poles[0].rate
    }

    /// Total multiplicity mass Σ b_j.
    pub fn total_multiplicity(&self) -> u32 {
        self.poles.iter().map(|p| p.multiplicity).sum()
    }
}

/// Folds the intermediate η-μ coefficients into the merged pole set. Every
/// interferer contributes both of its rates with multiplicity μ, so the
/// total mass is 2 Σ μ.
pub fn merge_poles(inter: &IntermediateCoefficients) -> PoleSet {
    PoleSet::from_candidates(inter.entries().iter().flat_map(|e| {
        [
            (e.rate_a, e.multiplicity),
            (e.rate_b, e.multiplicity),
        ]
    }))
}

/// Pole set of a Nakagami-m CCI: one rate m/Ω per interferer with
/// multiplicity m, merged; the total mass is Σ m.
pub fn nakagami_poles(cci: &NakagamiInterferers) -> PoleSet {
    PoleSet::from_candidates(cci.interferers().iter().map(|p| {
        (
            p.m() / p.omega(),
            integer_value(p.m()).expect("validated at construction"),
        )
    }))
}

impl ScenarioCci {
    /// The merged denominator pole set for either CCI flavor.
    pub fn pole_set(&self) -> PoleSet {
        match self {
            ScenarioCci::EtaMu(cci) => merge_poles(&cci_intermediate(cci)),
            ScenarioCci::Nakagami(cci) => nakagami_poles(cci),
        }
    }
}

/// One eigenvalue group of a correlated-MRC covariance description.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenGroup {
    pub lambda_x: f64,
    pub lambda_y: f64,
    pub xi_x: u32,
    pub xi_y: u32,
}

/// Eigenvalues and algebraic multiplicities describing a spatially
/// correlated SOI. The covariance matrices themselves are outside this
/// crate's scope; their spectra are accepted directly.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelatedSpec {
    groups: Vec<EigenGroup>,
}

impl CorrelatedSpec {
    pub fn new(groups: Vec<EigenGroup>) -> Result<Self, ParamError> {
        if groups.is_empty() {
            return Err(ParamError::EmptyScenario {
                what: "eigenvalue group",
            });
        }
        for g in &groups {
            for (field, value) in [("lambda_x", g.lambda_x), ("lambda_y", g.lambda_y)] {
                if !value.is_finite() {
                    return Err(ParamError::NonFiniteParameter { field, value });
                }
                if value <= 0.0 {
                    return Err(ParamError::NonPositiveParameter { field, value });
                }
            }
            for (field, value) in [("xi_x", g.xi_x), ("xi_y", g.xi_y)] {
                if value == 0 {
                    return Err(ParamError::NonPositiveParameter {
                        field,
                        value: 0.0,
                    });
                }
            }
        }
        Ok(Self { groups })
    }

    pub fn groups(&self) -> &[EigenGroup] {
        &self.groups
    }
}

/// Recasts an independent SOI as a degenerate correlated spec: one group per
/// branch with λ = 1/(2·rate) and ξ = 2μ. Requires every branch μ to be a
/// positive integer or half-integer, so that ξ is a whole count.
pub fn correlated_from_independent(soi: &ScenarioSoi) -> Result<CorrelatedSpec, ParamError> {
    let mut groups = Vec::with_capacity(soi.branches().len());
    for branch in soi.branches() {
        let xi = half_integer_doubled(branch.mu()).ok_or(ParamError::NonHalfIntegerParameter {
            field: "mu",
            value: branch.mu(),
        })?;
        let (rate_a, rate_b) = branch_gamma_rates(branch);
        groups.push(EigenGroup {
            lambda_x: 1.0 / (2.0 * rate_a),
            lambda_y: 1.0 / (2.0 * rate_b),
            xi_x: xi,
            xi_y: xi,
        });
    }
    CorrelatedSpec::new(groups)
}
