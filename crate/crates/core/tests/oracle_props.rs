//! Cross-engine agreement: the closed form, the contour integral and the
//! Monte Carlo sampler are three independent computations of one quantity
//! and must agree pairwise within their respective tolerances.

use etamu_outage::closed_form::{ratio_cdf, EvalConfig};
use etamu_outage::coeffs::{cci_intermediate, merge_poles, nakagami_poles, NumeratorCoefficients};
use etamu_outage::oracles::contour::{contour_cdf, ContourConfig};
use etamu_outage::oracles::monte_carlo::{mc_outage, McConfig, SoiModel};
use etamu_outage::params::{
    EtaMuInterferers, EtaMuParams, NakagamiInterferers, NakagamiParams, ScenarioCci, ScenarioSoi,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CONTOUR_REL_TOL: f64 = 1e-6;
const CLOSED_FORM_FLOOR: f64 = 1e-8;
const MC_SIGMA: f64 = 4.0;

/// 4σ band with a 1/n floor: the binomial standard error degenerates to zero
/// when every draw lands on one side, so zero-hit runs still accept any
/// probability up to a few per-sample units.
fn inside_mc_band(closed: f64, p_hat: f64, std_err: f64, samples: u64) -> bool {
    (closed - p_hat).abs() <= MC_SIGMA * std_err.max(1.0 / samples as f64)
}

fn fig1_soi(omega: f64, mu: f64) -> ScenarioSoi {
    ScenarioSoi::new(vec![
        EtaMuParams::new(omega, 2.6, mu).unwrap(),
        EtaMuParams::new(0.8 * omega, 3.4, mu).unwrap(),
        EtaMuParams::new(0.7 * omega, 1.7, mu).unwrap(),
    ])
    .unwrap()
}

fn fig1_cci() -> EtaMuInterferers {
    EtaMuInterferers::new(vec![
        EtaMuParams::new(1.0, 3.3, 2.0).unwrap(),
        EtaMuParams::new(1.0, 3.3, 2.0).unwrap(),
        EtaMuParams::new(0.5, 1.7, 1.0).unwrap(),
    ])
    .unwrap()
}

fn fig2_soi(omega: f64) -> ScenarioSoi {
    ScenarioSoi::new(vec![
        EtaMuParams::new(2.0 * omega, 1.0, 0.5).unwrap(),
        EtaMuParams::new(0.7 * omega, 0.6, 2.0).unwrap(),
    ])
    .unwrap()
}

fn fig2_cci(m: f64) -> NakagamiInterferers {
    NakagamiInterferers::new(vec![
        NakagamiParams::new(1.0, m).unwrap(),
        NakagamiParams::new(1.0, m).unwrap(),
        NakagamiParams::new(0.5, m).unwrap(),
        NakagamiParams::new(0.2, m).unwrap(),
    ])
    .unwrap()
}

#[test]
fn figure_scenario_closed_form_matches_contour() {
    let cfg = EvalConfig::default();
    let ccfg = ContourConfig::default();
    let zeta = 10.0;

    for mu in [1.0, 2.0] {
        let cci = fig1_cci();
        let poles = merge_poles(&cci_intermediate(&cci));
        for omega_db in [0.0, 10.0, 20.0] {
            let omega = 10f64.powf(omega_db / 10.0);
            let num = NumeratorCoefficients::from_soi(&fig1_soi(omega, mu));
            let closed = ratio_cdf(zeta, &num, &poles, &cfg).unwrap();
            let oracle = contour_cdf(zeta, &num, &poles, &ccfg).unwrap();
            if closed >= CLOSED_FORM_FLOOR {
                let rel = (closed - oracle).abs() / closed;
                assert!(
                    rel <= CONTOUR_REL_TOL,
                    "mu={mu} omega_db={omega_db}: closed {closed} vs contour {oracle} (rel {rel:.3e})"
                );
            }
        }
    }
}

#[test]
fn figure_scenario_within_mc_band() {
    let cfg = EvalConfig::default();
    let zeta = 10.0;
    let mc_cfg = McConfig {
        samples: 200_000,
        seed: 20_240_817,
        streams: 4,
    };

    let soi = fig1_soi(10.0, 1.0);
    let cci = fig1_cci();
    let closed = {
        let num = NumeratorCoefficients::from_soi(&soi);
        let poles = merge_poles(&cci_intermediate(&cci));
        ratio_cdf(zeta, &num, &poles, &cfg).unwrap()
    };
    let est = mc_outage(
        &SoiModel::Independent(&soi),
        &ScenarioCci::EtaMu(cci),
        zeta,
        &mc_cfg,
    );
    assert!(
        inside_mc_band(closed, est.p_hat, est.std_err, mc_cfg.samples),
        "closed {closed} vs mc {est:?}"
    );
}

#[test]
fn type2_figure_scenario_triangle() {
    let cfg = EvalConfig::default();
    let ccfg = ContourConfig::default();
    let zeta = 10.0;
    let mc_cfg = McConfig {
        samples: 200_000,
        seed: 7,
        streams: 2,
    };

    for m in [1.0, 2.0] {
        let soi = fig2_soi(10.0);
        let cci = fig2_cci(m);
        let num = NumeratorCoefficients::from_soi(&soi);
        let poles = nakagami_poles(&cci);
        let closed = ratio_cdf(zeta, &num, &poles, &cfg).unwrap();
        let oracle = contour_cdf(zeta, &num, &poles, &ccfg).unwrap();
        assert!(
            (closed - oracle).abs() <= CONTOUR_REL_TOL * closed.max(CLOSED_FORM_FLOOR),
            "m={m}: closed {closed} vs contour {oracle}"
        );

        let est = mc_outage(
            &SoiModel::Independent(&soi),
            &ScenarioCci::Nakagami(cci),
            zeta,
            &mc_cfg,
        );
        assert!(
            inside_mc_band(closed, est.p_hat, est.std_err, mc_cfg.samples),
            "m={m}: closed {closed} vs mc {est:?}"
        );
    }
}

/// Draws a small random scenario with comfortably separated poles; clustered
/// pole sets are legitimately reported as unstable and are covered by the
/// dedicated diagnostic test instead.
fn random_scenario(rng: &mut ChaCha8Rng) -> (ScenarioSoi, EtaMuInterferers) {
    loop {
        let n = rng.random_range(1..=3usize);
        let branches: Vec<EtaMuParams> = (0..n)
            .map(|_| {
                EtaMuParams::new(
                    10f64.powf(rng.random_range(-0.7..0.7)),
                    10f64.powf(rng.random_range(-0.6..0.6)),
                    0.25 + 2.75 * rng.random::<f64>(),
                )
                .unwrap()
            })
            .collect();
        let k = rng.random_range(1..=3usize);
        let interferers: Vec<EtaMuParams> = (0..k)
            .map(|_| {
                EtaMuParams::new(
                    10f64.powf(rng.random_range(-0.7..0.7)),
                    10f64.powf(rng.random_range(-0.6..0.6)),
                    f64::from(rng.random_range(1..=3u32)),
                )
                .unwrap()
            })
            .collect();
        let soi = ScenarioSoi::new(branches).unwrap();
        let cci = EtaMuInterferers::new(interferers).unwrap();
        let poles = merge_poles(&cci_intermediate(&cci));
        let separated = poles
            .poles()
            .windows(2)
            .all(|w| (w[1].rate - w[0].rate) >= 0.25 * w[1].rate);
        if separated {
            return (soi, cci);
        }
    }
}

#[test]
fn randomized_oracle_triangle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0e7a_a0u64);
    let cfg = EvalConfig::default();
    let ccfg = ContourConfig::default();
    let mc_cfg = McConfig {
        samples: 100_000,
        seed: 55,
        streams: 2,
    };

    for case in 0..12 {
        let (soi, cci) = random_scenario(&mut rng);
        let num = NumeratorCoefficients::from_soi(&soi);
        let poles = merge_poles(&cci_intermediate(&cci));
        for z in [0.2, 2.0, 20.0] {
            let closed = ratio_cdf(z, &num, &poles, &cfg).unwrap();
            let oracle = contour_cdf(z, &num, &poles, &ccfg).unwrap();
            if closed >= CLOSED_FORM_FLOOR {
                let rel = (closed - oracle).abs() / closed;
                assert!(
                    rel <= CONTOUR_REL_TOL,
                    "case {case} z={z}: closed {closed} vs contour {oracle} (rel {rel:.3e})"
                );
            }
        }
        let closed = ratio_cdf(1.5, &num, &poles, &cfg).unwrap();
        let est = mc_outage(
            &SoiModel::Independent(&soi),
            &ScenarioCci::EtaMu(cci),
            1.5,
            &mc_cfg,
        );
        assert!(
            inside_mc_band(closed, est.p_hat, est.std_err, mc_cfg.samples),
            "case {case}: closed {closed} vs mc {est:?}"
        );
    }
}

#[test]
fn cdf_saturates_at_extreme_thresholds() {
    let cfg = EvalConfig::default();
    let num = NumeratorCoefficients::from_soi(&fig1_soi(1.0, 1.0));
    let poles = merge_poles(&cci_intermediate(&fig1_cci()));
    assert!(ratio_cdf(1e-9, &num, &poles, &cfg).unwrap() < 1e-4);
    assert!(ratio_cdf(1e9, &num, &poles, &cfg).unwrap() > 1.0 - 1e-4);
}

#[test]
fn nakagami_limit_recovers_type2_poles() {
    // CCI (η=ε, μ=m) approaches the Nakagami pole construction as ε falls;
    // the discrepancy must shrink monotonically along ε = 1e-1, 1e-2, 1e-3.
    let cfg = EvalConfig::default();
    let soi = fig2_soi(10.0);
    let num = NumeratorCoefficients::from_soi(&soi);
    let target_poles = nakagami_poles(&fig2_cci(1.0));

    for z in [1.0, 10.0, 100.0] {
        let target = ratio_cdf(z, &num, &target_poles, &cfg).unwrap();
        let mut previous = f64::INFINITY;
        for eps in [1e-1, 1e-2, 1e-3] {
            let cci = EtaMuInterferers::new(
                [(1.0, 1.0), (1.0, 1.0), (0.5, 1.0), (0.2, 1.0)]
                    .iter()
                    .map(|&(omega, m)| {
                        NakagamiParams::new(omega, m)
                            .unwrap()
                            .as_eta_mu_limit(eps)
                            .unwrap()
                    })
                    .collect(),
            )
            .unwrap();
            let poles = merge_poles(&cci_intermediate(&cci));
            let approx = ratio_cdf(z, &num, &poles, &cfg).unwrap();
            let discrepancy = (approx - target).abs();
            assert!(
                discrepancy < previous,
                "z={z} eps={eps}: discrepancy {discrepancy} did not shrink (was {previous})"
            );
            previous = discrepancy;
        }
    }
}

#[test]
fn contour_abscissa_independence_on_figure_scenario() {
    let num = NumeratorCoefficients::from_soi(&fig1_soi(3.0, 2.0));
    let poles = merge_poles(&cci_intermediate(&fig1_cci()));
    let at = |fraction: f64| {
        contour_cdf(
            10.0,
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
    assert!(
        (lo - hi).abs() <= 1e-8 * lo.max(1e-8),
        "path dependence: {lo} vs {hi}"
    );
}

#[test]
fn correlated_mc_agrees_with_correlated_closed_form() {
    use etamu_outage::coeffs::correlated_from_independent;

    // Build eigenvalue groups from an independent SOI, then check the
    // correlated sampler against the correlated closed form; this exercises
    // the eigenvalue sampling path end to end.
    let soi = ScenarioSoi::new(vec![
        EtaMuParams::new(4.0, 2.6, 1.0).unwrap(),
        EtaMuParams::new(3.0, 3.4, 0.5).unwrap(),
    ])
    .unwrap();
    let spec = correlated_from_independent(&soi).unwrap();
    let cci = fig2_cci(2.0);

    let closed = ratio_cdf(
        2.0,
        &NumeratorCoefficients::from_correlated(&spec),
        &nakagami_poles(&cci),
        &EvalConfig::default(),
    )
    .unwrap();
    let mc_cfg = McConfig {
        samples: 150_000,
        seed: 9,
        streams: 3,
    };
    let est = mc_outage(
        &SoiModel::Correlated(&spec),
        &ScenarioCci::Nakagami(cci),
        2.0,
        &mc_cfg,
    );
    assert!(
        inside_mc_band(closed, est.p_hat, est.std_err, mc_cfg.samples),
        "closed {closed} vs mc {est:?}"
    );
}
