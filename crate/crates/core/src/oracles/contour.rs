//! Numerical CDF via quadrature along a vertical contour.
//!
//! The ratio CDF equals the line integral of the kernel
//! Ξ(p) = (1/p) · M_X(−p/z) · M_Y(p) along a vertical path between the
//! origin pole and the smallest denominator pole. With conjugate symmetry
//! the integral reduces to (1/π) ∫₀^∞ Re Ξ(ε + it) dt, evaluated here by
//! adaptive Gauss–Kronrod panels with an analytic algebraic tail bound.
//!
//! This route shares nothing with the residue sum — no compositions, no
//! Pochhammer weights, no pole differences — which is what makes it a
//! genuine oracle for the closed form.

use crate::coeffs::{NumeratorCoefficients, PoleSet};
use num_complex::Complex64;
use std::collections::BinaryHeap;
use thiserror::Error;

/// Contour placement and quadrature limits.
#[derive(Debug, Clone, PartialEq)]
pub struct ContourConfig {
    /// Upper bound on the abscissa ε as a fraction of the smallest pole,
    /// in (0, 1). The evaluator may move the contour closer to the origin
    /// when large multiplicities would otherwise amplify roundoff; the
    /// integral is path-independent between the origin and the first pole.
    pub abscissa_fraction: f64,
    /// Relative accuracy target; also controls tail truncation.
    pub truncation_tol: f64,
    /// Kernel-evaluation budget.
    pub max_nodes: u32,
}

impl Default for ContourConfig {
    fn default() -> Self {
        Self {
            abscissa_fraction: 0.5,
            truncation_tol: 1e-10,
            max_nodes: 200_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ContourError {
    #[error("abscissa fraction must lie strictly between 0 and 1 (got {fraction})")]
    InvalidAbscissa { fraction: f64 },
    #[error(
        "quadrature did not converge: error estimate {achieved:.3e} after exhausting \
         {max_nodes} kernel evaluations"
    )]
    QuadratureNotConverged { achieved: f64, max_nodes: u32 },
}

/// Absolute tolerance floor: `truncation_tol · max(|estimate|, this)` keeps
/// the target meaningful when the probability itself is tiny.
const ESTIMATE_FLOOR: f64 = 1e-4;

/// Cap on Σ b_j · ln(1/(1 − ε/β_j)): bounds the integrand peak the pole
/// factors can build up, keeping cancellation along the path benign.
const PEAK_LOG_CAP: f64 = 4.6;

// 15-point Kronrod extension of 7-point Gauss (positive abscissae).
const XGK: [f64; 8] = [
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
];
const WG: [f64; 4] = [
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
];

fn gauss_kronrod_15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = f(center);
    let mut kronrod = WGK[7] * f_center;
    let mut gauss = WG[3] * f_center;
    let mut magnitude = WGK[7] * f_center.abs();
    for (i, &x) in XGK.iter().enumerate().take(7) {
        let dx = half * x;
        let f_lo = f(center - dx);
        let f_hi = f(center + dx);
        kronrod += WGK[i] * (f_lo + f_hi);
        magnitude += WGK[i] * (f_lo.abs() + f_hi.abs());
        if i % 2 == 1 {
            gauss += WG[i / 2] * (f_lo + f_hi);
        }
    }
    (kronrod * half, (kronrod - gauss).abs() * half, magnitude * half)
}

#[derive(Debug)]
struct Panel {
    err: f64,
    a: f64,
    b: f64,
    value: f64,
    magnitude: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err && self.a == other.a && self.b == other.b
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.err
            .total_cmp(&other.err)
            .then(self.a.total_cmp(&other.a))
    }
}

struct Integrator<'a, F: Fn(f64) -> f64> {
    f: &'a F,
    panels: BinaryHeap<Panel>,
    value: f64,
    err: f64,
    magnitude: f64,
    nodes: u32,
}

impl<'a, F: Fn(f64) -> f64> Integrator<'a, F> {
    fn new(f: &'a F) -> Self {
        Self {
            f,
            panels: BinaryHeap::new(),
            value: 0.0,
            err: 0.0,
            magnitude: 0.0,
            nodes: 0,
        }
    }

    fn push(&mut self, a: f64, b: f64) {
        let (value, err, magnitude) = gauss_kronrod_15(self.f, a, b);
        self.nodes += 15;
        self.value += value;
        self.err += err;
        self.magnitude += magnitude;
        self.panels.push(Panel {
            err,
            a,
            b,
            value,
            magnitude,
        });
    }

    /// Bisects the worst panel; returns false once panels can no longer be
    /// split in f64.
    fn refine(&mut self) -> bool {
        let Some(panel) = self.panels.pop() else {
            return false;
        };
        let mid = 0.5 * (panel.a + panel.b);
        if !(panel.a < mid && mid < panel.b) {
            self.panels.push(panel);
            return false;
        }
        self.value -= panel.value;
        self.err -= panel.err;
        self.magnitude -= panel.magnitude;
        self.push(panel.a, mid);
        self.push(mid, panel.b);
        true
    }

    /// Precise final sum (ascending error order, compensated).
    fn finish(self) -> (f64, f64) {
        let panels = self.panels.into_sorted_vec();
        let mut sum = 0.0f64;
        let mut comp = 0.0f64;
        for p in &panels {
            let y = p.value - comp;
            let t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
        let err: f64 = panels.iter().map(|p| p.err).sum();
        (sum, err)
    }
}

/// Evaluates the ratio CDF at `z` by integrating the kernel along the
/// vertical line Re p = ε, 0 < ε < min β.
pub fn contour_cdf(
    z: f64,
    numerator: &NumeratorCoefficients,
    poles: &PoleSet,
    cfg: &ContourConfig,
) -> Result<f64, ContourError> {
    assert!(z > 0.0 && z.is_finite(), "threshold must be positive and finite");
    if !(cfg.abscissa_fraction > 0.0 && cfg.abscissa_fraction < 1.0) {
        return Err(ContourError::InvalidAbscissa {
            fraction: cfg.abscissa_fraction,
        });
    }

    let pairs = numerator.pairs();
    let pole_list = poles.poles();
    let beta_min = poles.min_rate();

    // Bound the pole-factor peak (1 − ε/β)^(−b) ≤ exp(PEAK_LOG_CAP) by
    // shrinking the abscissa when the total multiplicity is large.
    let mass = f64::from(poles.total_multiplicity());
    let fraction = cfg
        .abscissa_fraction
        .min(1.0 - (-PEAK_LOG_CAP / mass).exp());
    let eps = fraction * beta_min;

    let kernel = move |t: f64| -> f64 {
        let p = Complex64::new(eps, t);
        let mut log_sum = -p.ln();
        for gp in pairs {
            log_sum -= gp.shape * (Complex64::new(1.0, 0.0) + p / (z * gp.rate)).ln();
        }
        for pole in pole_list {
            log_sum -= f64::from(pole.multiplicity)
                * (Complex64::new(1.0, 0.0) - p / pole.rate).ln();
        }
        log_sum.exp().re / std::f64::consts::PI
    };

    // Algebraic tail bound: for t ≥ 2·knee every factor modulus exceeds
    // t/(2·scale), so |Ξ| ≤ C · t^(−1−decay) and the tail beyond T is at
    // most C · T^(−decay) / decay.
    let shape_sum = numerator.shape_sum();
    let decay = shape_sum + mass;
    let knee = pairs
        .iter()
        .map(|gp| z * gp.rate)
        .chain(pole_list.iter().map(|p| p.rate))
        .fold(eps, f64::max);
    let log_tail_const = pairs
        .iter()
        .map(|gp| gp.shape * (2.0 * z * gp.rate).ln())
        .sum::<f64>()
        + pole_list
            .iter()
            .map(|p| f64::from(p.multiplicity) * (2.0 * p.rate).ln())
            .sum::<f64>()
        - std::f64::consts::PI.ln()
        - decay.ln();
    let tail_bound = |t_end: f64| (log_tail_const - decay * t_end.ln()).exp();

    let mut integrator = Integrator::new(&kernel);

    // Seed panels: geometric splits resolve the near-origin structure, then
    // the adaptive loop takes over.
    let mut t_end = 4.0 * knee;
    let mut cut = 0.0;
    let mut next = knee / 64.0;
    while next < t_end {
        integrator.push(cut, next);
        cut = next;
        next *= 2.0;
    }
    integrator.push(cut, t_end);

    loop {
        // Refine the panel set down to the current absolute target. The
        // roundoff floor concedes what f64 panel sums cannot distinguish.
        loop {
            let target = (cfg.truncation_tol * integrator.value.abs().max(ESTIMATE_FLOOR))
                .max(5e-16 * integrator.magnitude);
            if integrator.err <= target {
                break;
            }
            if integrator.nodes + 30 > cfg.max_nodes {
                return Err(ContourError::QuadratureNotConverged {
                    achieved: integrator.err + tail_bound(t_end),
                    max_nodes: cfg.max_nodes,
                });
            }
            if !integrator.refine() {
                break;
            }
        }

        let target = cfg.truncation_tol * integrator.value.abs().max(ESTIMATE_FLOOR);
        if tail_bound(t_end) <= target {
            break;
        }
        if integrator.nodes + 15 > cfg.max_nodes {
            return Err(ContourError::QuadratureNotConverged {
                achieved: integrator.err + tail_bound(t_end),
                max_nodes: cfg.max_nodes,
            });
        }
        integrator.push(t_end, 2.0 * t_end);
        t_end *= 2.0;
    }

    let (value, _err) = integrator.finish();
    Ok(value.clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::{cci_intermediate, merge_poles, nakagami_poles, NumeratorCoefficients};
    use crate::params::{
        EtaMuInterferers, EtaMuParams, NakagamiInterferers, NakagamiParams, ScenarioSoi,
    };

    fn rayleigh_inputs(omega_x: f64, omega_y: f64) -> (NumeratorCoefficients, PoleSet) {
        let soi = ScenarioSoi::new(vec![EtaMuParams::new(omega_x, 1.0, 0.5).unwrap()]).unwrap();
        let cci =
            NakagamiInterferers::new(vec![NakagamiParams::new(omega_y, 1.0).unwrap()]).unwrap();
        (NumeratorCoefficients::from_soi(&soi), nakagami_poles(&cci))
    }

    #[test]
    fn rayleigh_analytic_midpoint() {
        let (num, poles) = rayleigh_inputs(1.0, 1.0);
        let got = contour_cdf(1.0, &num, &poles, &ContourConfig::default()).unwrap();
        assert!((got - 0.5).abs() < 1e-8, "{got}");
    }

    #[test]
    fn rayleigh_analytic_nine_to_one() {
        let (num, poles) = rayleigh_inputs(1.0, 1.0);
        let got = contour_cdf(9.0, &num, &poles, &ContourConfig::default()).unwrap();
        assert!((got - 0.9).abs() < 1e-8, "{got}");
    }

    #[test]
    fn multi_pole_cci_against_mgf_product() {
        // Exponential SOI: the CDF is 1 − ∏ (1 + z/(Ω_X β_j))^(−b_j).
        let omega_x = 0.8;
        let soi = ScenarioSoi::new(vec![EtaMuParams::new(omega_x, 1.0, 0.5).unwrap()]).unwrap();
        let cci = EtaMuInterferers::new(vec![
            EtaMuParams::new(1.0, 3.3, 2.0).unwrap(),
            EtaMuParams::new(1.0, 3.3, 2.0).unwrap(),
            EtaMuParams::new(0.5, 1.7, 1.0).unwrap(),
        ])
        .unwrap();
        let num = NumeratorCoefficients::from_soi(&soi);
        let poles = merge_poles(&cci_intermediate(&cci));
        for z in [0.1, 1.0, 10.0, 100.0] {
            let got = contour_cdf(z, &num, &poles, &ContourConfig::default()).unwrap();
            let want = 1.0
                - poles
                    .poles()
                    .iter()
                    .map(|p| (1.0 + z / (omega_x * p.rate)).powi(-(p.multiplicity as i32)))
                    .product::<f64>();
            assert!((got - want).abs() < 1e-9 * want.max(1e-6), "z={z}: {got} vs {want}");
        }
    }

    #[test]
    fn abscissa_independence() {
        let (num, poles) = rayleigh_inputs(2.0, 0.7);
        let at = |fraction: f64| {
            contour_cdf(
                3.0,
                &num,
                &poles,
                &ContourConfig {
                    abscissa_fraction: fraction,
                    ..ContourConfig::default()
                },
            )
            .unwrap()
        };
        let lo = at(0.25);
        let hi = at(0.5);
        assert!((lo - hi).abs() < 1e-9, "{lo} vs {hi}");
    }

    #[test]
    fn rejects_out_of_range_abscissa() {
        let (num, poles) = rayleigh_inputs(1.0, 1.0);
        for fraction in [0.0, 1.0, -0.5, 1.5] {
            let err = contour_cdf(
                1.0,
                &num,
                &poles,
                &ContourConfig {
                    abscissa_fraction: fraction,
                    ..ContourConfig::default()
                },
            )
            .unwrap_err();
            assert!(matches!(err, ContourError::InvalidAbscissa { .. }));
        }
    }

    #[test]
    fn reports_non_convergence_when_starved() {
        let (num, poles) = rayleigh_inputs(1.0, 1.0);
        let err = contour_cdf(
            1.0,
            &num,
            &poles,
            &ContourConfig {
                max_nodes: 45,
                ..ContourConfig::default()
            },
        )
        .unwrap_err();
        match err {
            ContourError::QuadratureNotConverged { achieved, max_nodes } => {
                assert!(achieved > 0.0);
                assert_eq!(max_nodes, 45);
            }
            other => panic!("expected QuadratureNotConverged, got {other:?}"),
        }
    }

    #[test]
    fn handles_large_multiplicities() {
        // Multiplicity-30 poles: the abscissa cap keeps the integrand peak
        // bounded, and the result sits between the bracketing CDF values of
        // single-rate approximations, i.e. still a sane probability.
        let soi = ScenarioSoi::new(vec![EtaMuParams::new(10.0, 1.0, 0.5).unwrap()]).unwrap();
        let num = NumeratorCoefficients::from_soi(&soi);
        let cci = EtaMuInterferers::new(vec![
            EtaMuParams::new(1.0, 2.0, 30.0).unwrap(),
            EtaMuParams::new(0.5, 3.0, 30.0).unwrap(),
        ])
        .unwrap();
        let poles = merge_poles(&cci_intermediate(&cci));
        let got = contour_cdf(10.0, &num, &poles, &ContourConfig::default()).unwrap();
        // Exponential-SOI product oracle again.
        let want = 1.0
            - poles
                .poles()
                .iter()
                .map(|p| (1.0 + 10.0 / (10.0 * p.rate)).powi(-(p.multiplicity as i32)))
                .product::<f64>();
        assert!((got - want).abs() < 1e-8, "{got} vs {want}");
    }
}
