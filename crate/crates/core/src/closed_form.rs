//! Closed-form evaluation of the ratio CDF from its Gamma factorization.
//!
//! With the SOI MGF factored as ∏ (1 − s/rate_ℓ)^(−shape_ℓ) and the
//! interference MGF as ∏ (1 − s/β_j)^(−b_j), the CDF of the power ratio at
//! threshold z is a finite sum of kernel residues: one outer sum over the
//! poles β_r, and for each pole an inner sum over all compositions of
//! b_r − 1 derivative orders across the kernel factors (the product rule),
//! with Pochhammer-weighted inverse powers of β_r, (β_r + z·rate_ℓ) and
//! (β_r − β_j).
//!
//! Multiplicities make individual terms enormous while the result stays in
//! [0, 1], so every factor is carried as a [`SignedLogValue`] and terms are
//! accumulated in linear space only after rescaling by the largest term
//! magnitude, with compensated summation and a cancellation diagnostic.

use crate::coeffs::{GammaPair, NumeratorCoefficients, Pole, PoleSet};
use crate::compositions::Compositions;
use crate::signed_log::SignedLogValue;
use crate::special::{ln_factorial, pochhammer_log};
use thiserror::Error;

/// Evaluation limits for the residue sum.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalConfig {
    /// Refuse evaluation when the total composition count exceeds this.
    pub term_budget: u64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self {
            term_budget: 10_000_000,
        }
    }
}

/// Cancellation guard: with f64's ~16 significant digits, a surviving
/// fraction below 1e-10 leaves fewer than ~6 trustworthy digits.
const CANCELLATION_MIN: f64 = 1e-10;

/// Raw results may overshoot [0, 1] by at most this much before clamping;
/// anything worse signals pole clustering the merge tolerance did not catch.
const RANGE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error(
        "unstable evaluation: only {cancellation:.3e} of the leading term magnitude survives \
         cancellation (raw result {raw:.6e}); nearly coincident poles are the usual cause"
    )]
    UnstableEvaluation { cancellation: f64, raw: f64 },
    #[error("problem too large: {terms} residue terms exceed the budget of {budget}")]
    ProblemTooLarge { terms: u128, budget: u64 },
}

/// Total number of residue terms the sum would visit:
/// Σ_r C(b_r − 1 + slots − 1, slots − 1) with one slot per kernel factor.
pub fn residue_term_count(numerator: &NumeratorCoefficients, poles: &PoleSet) -> u128 {
    let slots = numerator.pairs().len() + poles.poles().len();
    poles
        .poles()
        .iter()
        .fold(0u128, |acc, p| {
            acc.saturating_add(Compositions::count(p.multiplicity - 1, slots))
        })
}

/// Per-pole table of log magnitudes and sign flags for every (factor, order)
/// combination, so each residue term is a handful of lookups.
struct FactorTable {
    logs: Vec<f64>,
    negatives: Vec<bool>,
    stride: usize,
}

impl FactorTable {
    fn build(r: usize, z: f64, pairs: &[GammaPair], poles: &[Pole]) -> Self {
        let beta_r = poles[r].rate;
        let stride = poles[r].multiplicity as usize; // orders 0 ..= b_r − 1
        let slots = 1 + pairs.len() + poles.len() - 1;
        let mut logs = vec![0.0; slots * stride];
        let mut negatives = vec![false; slots * stride];

        // Slot 0: the 1/p factor, order q -> (−1)^q / β_r^(q+1).
        let ln_beta_r = beta_r.ln();
        for q in 0..stride {
            logs[q] = -((q as f64) + 1.0) * ln_beta_r;
            negatives[q] = q % 2 == 1;
        }

        // One slot per numerator factor:
        // (−1)^q (shape)_q / (q! (β_r + z·rate)^(shape+q)).
        let mut slot = 1;
        for gp in pairs {
            let ln_base = (beta_r + z * gp.rate).ln();
            for q in 0..stride {
                let qu = q as u32;
                let idx = slot * stride + q;
                logs[idx] = pochhammer_log(gp.shape, qu).log_magnitude()
                    - ln_factorial(qu)
                    - (gp.shape + q as f64) * ln_base;
                negatives[idx] = q % 2 == 1;
            }
            slot += 1;
        }

        // One slot per other pole, ascending and skipping r:
        // (−1)^q (b_j)_q / (q! (β_r − β_j)^(b_j+q)).
        for (j, pole_j) in poles.iter().enumerate() {
            if j == r {
                continue;
            }
            let diff = beta_r - pole_j.rate;
            let ln_diff = diff.abs().ln();
            let diff_negative = diff < 0.0;
            let b_j = pole_j.multiplicity;
            for q in 0..stride {
                let qu = q as u32;
                let idx = slot * stride + q;
                logs[idx] = pochhammer_log(f64::from(b_j), qu).log_magnitude()
                    - ln_factorial(qu)
                    - f64::from(b_j + qu) * ln_diff;
                negatives[idx] = (q % 2 == 1) ^ (diff_negative && (b_j + qu) % 2 == 1);
            }
            slot += 1;
        }

        Self {
            logs,
            negatives,
            stride,
        }
    }

    #[inline]
    fn term_log(&self, parts: &[u32]) -> f64 {
        parts
            .iter()
            .enumerate()
            .map(|(h, &q)| self.logs[h * self.stride + q as usize])
            .sum()
    }

    #[inline]
    fn term(&self, parts: &[u32]) -> (f64, bool) {
        let mut log = 0.0;
        let mut negative = false;
        for (h, &q) in parts.iter().enumerate() {
            let idx = h * self.stride + q as usize;
            log += self.logs[idx];
            negative ^= self.negatives[idx];
        }
        (log, negative)
    }
}

struct KahanSum {
    sum: f64,
    compensation: f64,
}

impl KahanSum {
    fn new() -> Self {
        Self {
            sum: 0.0,
            compensation: 0.0,
        }
    }

    fn add(&mut self, x: f64) {
        let y = x - self.compensation;
        let t = self.sum + y;
        self.compensation = (t - self.sum) - y;
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum
    }
}

/// Evaluates the CDF of `sum(X)/sum(Y)` at `z > 0` from the numerator Gamma
/// factors and the denominator pole set. The result is a probability in
/// [0, 1].
///
/// Fails with [`EvalError::ProblemTooLarge`] when the composition count
/// exceeds the budget, and with [`EvalError::UnstableEvaluation`] when
/// cancellation leaves fewer than ~6 significant digits or the raw result
/// lands outside [0, 1] beyond tolerance.
pub fn ratio_cdf(
    z: f64,
    numerator: &NumeratorCoefficients,
    poles: &PoleSet,
    cfg: &EvalConfig,
) -> Result<f64, EvalError> {
    assert!(z > 0.0 && z.is_finite(), "threshold must be positive and finite");
    let pairs = numerator.pairs();
    let pole_list = poles.poles();
    assert!(!pairs.is_empty(), "numerator must carry at least one Gamma factor");
    let slots = pairs.len() + pole_list.len();

    let terms = residue_term_count(numerator, poles);
    if terms > u128::from(cfg.term_budget) {
        return Err(EvalError::ProblemTooLarge {
            terms,
            budget: cfg.term_budget,
        });
    }

    // Constant prefactor −∏(−β_j)^(b_j) · ∏(z·rate_ℓ)^(shape_ℓ).
    let mut outer = SignedLogValue::from_value(-1.0);
    for p in pole_list {
        outer *= SignedLogValue::from_value(-p.rate).powu(p.multiplicity);
    }
    for gp in pairs {
        outer *= SignedLogValue::positive_pow(z * gp.rate, gp.shape);
    }

    // Residue sum per pole. Pass 1 finds the largest term magnitude, pass 2
    // re-streams the compositions and accumulates rescaled terms.
    let mut pole_sums: Vec<(f64, f64)> = Vec::with_capacity(pole_list.len());
    for r in 0..pole_list.len() {
        let table = FactorTable::build(r, z, pairs, pole_list);
        let degree = pole_list[r].multiplicity - 1;

        let mut max_log = f64::NEG_INFINITY;
        let mut stream = Compositions::new(degree, slots);
        while let Some(parts) = stream.next_parts() {
            let log = table.term_log(parts);
            if log > max_log {
                max_log = log;
            }
        }

        let mut sum = KahanSum::new();
        let mut stream = Compositions::new(degree, slots);
        while let Some(parts) = stream.next_parts() {
            let (log, negative) = table.term(parts);
            let t = (log - max_log).exp();
            sum.add(if negative { -t } else { t });
        }
        pole_sums.push((max_log, sum.value()));
    }

    // Deterministic combine in ascending pole order under a global rescale.
    let global_max = pole_sums
        .iter()
        .map(|&(m, _)| m)
        .fold(f64::NEG_INFINITY, f64::max);
    let mut total = KahanSum::new();
    for &(max_log, scaled) in &pole_sums {
        total.add(scaled * (max_log - global_max).exp());
    }
    let total_scaled = total.value();

    // The largest term rescales to exactly 1, so |total_scaled| is the
    // fraction of the leading magnitude that survives cancellation.
    let cancellation = total_scaled.abs();
    let sign = match total_scaled.partial_cmp(&0.0) {
        Some(std::cmp::Ordering::Greater) => 1,
        Some(std::cmp::Ordering::Less) => -1,
        _ => 0,
    };
    let raw = (outer * SignedLogValue::from_parts(sign, cancellation.ln() + global_max)).value();

    if !(cancellation >= CANCELLATION_MIN && raw >= -RANGE_TOL && raw <= 1.0 + RANGE_TOL) {
        return Err(EvalError::UnstableEvaluation { cancellation, raw });
    }
    Ok(raw.clamp(0.0, 1.0))
}
