//! Outage probability for interference-limited receivers under η-μ fading.
//!
//! The received signal of interest (SOI) is a maximal-ratio combination of
//! η-μ faded branches; the interference is a sum of η-μ (or Nakagami-m)
//! faded cochannel signals. Because every squared η-μ envelope is a sum of
//! two independent Gamma variates, both power sums have Gamma-product moment
//! generating functions, and the CDF of their ratio — the outage probability
//! at threshold ζ — reduces to a finite residue sum in elementary terms.
//!
//! The crate provides:
//!
//! * [`params`] — validated branch/interferer parameter types,
//! * [`coeffs`] — the Gamma-factorization coefficients and the merged pole
//!   set of the interference MGF,
//! * [`closed_form`] — the residue-sum evaluator ([`closed_form::ratio_cdf`]),
//!   carried in signed-log arithmetic with a cancellation guard,
//! * [`outage`] — one entry point per supported scenario family,
//! * [`oracles`] — two independent ground-truth engines (Monte Carlo over the
//!   Gamma factorization, and quadrature along a Bromwich contour) used to
//!   verify every closed-form output.
//!
//! ```
//! use etamu_outage::params::{NakagamiInterferers, NakagamiParams, EtaMuParams, ScenarioSoi};
//! use etamu_outage::closed_form::EvalConfig;
//! use etamu_outage::outage::outage_type2;
//!
//! // Rayleigh SOI vs a single Rayleigh interferer, equal mean powers:
//! // the outage probability at threshold 1 is exactly 1/2.
//! let soi = ScenarioSoi::new(vec![EtaMuParams::new(1.0, 1.0, 0.5).unwrap()]).unwrap();
//! let cci = NakagamiInterferers::new(vec![NakagamiParams::new(1.0, 1.0).unwrap()]).unwrap();
//! let op = outage_type2(&soi, &cci, 1.0, &EvalConfig::default()).unwrap();
//! assert!((op - 0.5).abs() < 1e-12);
//! ```

pub mod closed_form;
pub mod coeffs;
pub mod compositions;
pub mod oracles;
pub mod outage;
pub mod params;
pub mod signed_log;
pub mod special;

pub use closed_form::{ratio_cdf, EvalConfig, EvalError};
pub use coeffs::{
    cci_intermediate, correlated_from_independent, merge_poles, nakagami_poles, CorrelatedSpec,
    EigenGroup, GammaPair, IntermediateCoefficients, NumeratorCoefficients, Pole, PoleSet,
};
pub use params::{
    EtaMuInterferers, EtaMuParams, NakagamiInterferers, NakagamiParams, ParamError, ScenarioCci,
    ScenarioSoi,
};
