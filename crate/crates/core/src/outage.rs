//! Outage-probability entry points, one per supported scenario family.
//!
//! The outage probability at threshold ζ is the probability that the SOI
//! power sum falls below ζ times the interference power sum — the ratio CDF
//! evaluated at ζ. The four entry points differ only in how the numerator
//! factors and the denominator pole set are built.

use crate::closed_form::{ratio_cdf, EvalConfig, EvalError};
use crate::coeffs::{
    cci_intermediate, merge_poles, nakagami_poles, CorrelatedSpec, NumeratorCoefficients,
};
use crate::params::{EtaMuInterferers, NakagamiInterferers, ScenarioSoi};

/// Independent MRC under η-μ fading vs η-μ interferers (integer μ).
pub fn outage_type1(
    soi: &ScenarioSoi,
    cci: &EtaMuInterferers,
    zeta: f64,
    cfg: &EvalConfig,
) -> Result<f64, EvalError> {
    ratio_cdf(
        zeta,
        &NumeratorCoefficients::from_soi(soi),
        &merge_poles(&cci_intermediate(cci)),
        cfg,
    )
}

/// Independent MRC under η-μ fading vs Nakagami-m interferers (integer m).
pub fn outage_type2(
    soi: &ScenarioSoi,
    cci: &NakagamiInterferers,
    zeta: f64,
    cfg: &EvalConfig,
) -> Result<f64, EvalError> {
    ratio_cdf(
        zeta,
        &NumeratorCoefficients::from_soi(soi),
        &nakagami_poles(cci),
        cfg,
    )
}

/// Spatially correlated MRC (eigenvalue groups) vs η-μ interferers.
pub fn outage_correlated_type1(
    soi: &CorrelatedSpec,
    cci: &EtaMuInterferers,
    zeta: f64,
    cfg: &EvalConfig,
) -> Result<f64, EvalError> {
    ratio_cdf(
        zeta,
        &NumeratorCoefficients::from_correlated(soi),
        &merge_poles(&cci_intermediate(cci)),
        cfg,
    )
}

/// Spatially correlated MRC (eigenvalue groups) vs Nakagami-m interferers.
pub fn outage_correlated_type2(
    soi: &CorrelatedSpec,
    cci: &NakagamiInterferers,
    zeta: f64,
    cfg: &EvalConfig,
) -> Result<f64, EvalError> {
    ratio_cdf(
        zeta,
        &NumeratorCoefficients::from_correlated(soi),
        &nakagami_poles(cci),
        cfg,
    )
}
