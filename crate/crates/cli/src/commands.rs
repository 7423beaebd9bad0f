//! The `eval`, `sweep` and `verify` subcommands.

use crate::error::CliError;
use crate::scenario::Scenario;
use etamu_outage::closed_form::{ratio_cdf, EvalConfig};
use etamu_outage::coeffs::PoleSet;
use etamu_outage::oracles::contour::{contour_cdf, ContourConfig};
use etamu_outage::oracles::monte_carlo::{mc_outage, McConfig, McEstimate};
use std::path::{Path, PathBuf};

/// Closed-form-vs-contour agreement demanded by `verify`.
const CONTOUR_REL_TOL: f64 = 1e-6;
/// Verification skips the relative check below this probability.
const CLOSED_FORM_FLOOR: f64 = 1e-8;
/// Width of the Monte Carlo acceptance band in standard errors.
const MC_SIGMA: f64 = 4.0;

#[derive(Debug, Clone, Copy, Default)]
pub struct EvalFlags {
    pub budget: Option<u64>,
    pub contour_fallback: bool,
    pub corrupt_pole: Option<f64>,
}

fn eval_config(budget: Option<u64>) -> EvalConfig {
    match budget {
        Some(term_budget) => EvalConfig { term_budget },
        None => EvalConfig::default(),
    }
}

/// Per-run evaluation state: the CCI side (and hence the poles) does not
/// depend on the sweep point, so it is built once.
struct Engine {
    zeta: f64,
    cfg: EvalConfig,
    contour_cfg: ContourConfig,
    contour_fallback: bool,
    poles_true: PoleSet,
    /// What the closed form evaluates; differs from `poles_true` only under
    /// the hidden negative-control hook.
    poles_eval: PoleSet,
}

impl Engine {
    fn new(scenario: &Scenario, flags: EvalFlags) -> Self {
        let poles_true = scenario.cci_instance().pole_set();
        let poles_eval = match flags.corrupt_pole {
            Some(delta) => {
                let mut candidates: Vec<(f64, u32)> = poles_true
                    .poles()
                    .iter()
                    .map(|p| (p.rate, p.multiplicity))
                    .collect();
                candidates[0].0 *= 1.0 + delta;
                PoleSet::from_candidates(candidates)
            }
            None => poles_true.clone(),
        };
        Self {
            zeta: scenario.zeta,
            cfg: eval_config(flags.budget),
            contour_cfg: ContourConfig::default(),
            contour_fallback: flags.contour_fallback,
            poles_true,
            poles_eval,
        }
    }

    fn closed(&self, scenario: &Scenario, omega_db: f64) -> Result<f64, CliError> {
        let numerator = scenario.soi_at(db_to_linear(omega_db)).numerator();
        match ratio_cdf(self.zeta, &numerator, &self.poles_eval, &self.cfg) {
            Ok(p) => Ok(p),
            Err(e) if self.contour_fallback => {
                contour_cdf(self.zeta, &numerator, &self.poles_eval, &self.contour_cfg).map_err(
                    |ce| {
                        CliError::Eval(format!(
                            "closed form failed ({e}) and the contour fallback did not converge: {ce}"
                        ))
                    },
                )
            }
            Err(e) => Err(CliError::Eval(format!(
                "{e}; re-run with --contour-fallback to report the contour-oracle value instead"
            ))),
        }
    }

    fn contour(&self, scenario: &Scenario, omega_db: f64) -> Result<f64, CliError> {
        let numerator = scenario.soi_at(db_to_linear(omega_db)).numerator();
        contour_cdf(self.zeta, &numerator, &self.poles_true, &self.contour_cfg)
            .map_err(|e| CliError::Eval(e.to_string()))
    }

    fn monte_carlo(&self, scenario: &Scenario, omega_db: f64, cfg: &McConfig) -> McEstimate {
        let soi = scenario.soi_at(db_to_linear(omega_db));
        mc_outage(&soi.model(), &scenario.cci_instance(), self.zeta, cfg)
    }
}

fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Probabilities are printed with 17 significant digits so CSV output
/// round-trips f64 exactly.
fn prob(p: f64) -> String {
    format!("{p:.16e}")
}

fn csv_header(with_mc: bool) -> &'static str {
    if with_mc {
        "omega_db,omega_linear,op_closed,op_mc,mc_stderr"
    } else {
        "omega_db,omega_linear,op_closed"
    }
}

struct Row {
    omega_db: f64,
    op_closed: f64,
    mc: Option<McEstimate>,
}

impl Row {
    fn to_csv(&self) -> String {
        let mut line = format!(
            "{},{},{}",
            self.omega_db,
            db_to_linear(self.omega_db),
            prob(self.op_closed)
        );
        if let Some(est) = &self.mc {
            line.push_str(&format!(",{},{}", prob(est.p_hat), prob(est.std_err)));
        }
        line
    }
}

pub fn cmd_eval(path: &Path, omega_db: f64, flags: EvalFlags) -> Result<(), CliError> {
    let scenario = Scenario::load(path)?;
    let engine = Engine::new(&scenario, flags);
    let row = Row {
        omega_db,
        op_closed: engine.closed(&scenario, omega_db)?,
        mc: None,
    };
    println!("{}", csv_header(false));
    println!("{}", row.to_csv());
    Ok(())
}

pub struct SweepOptions {
    pub out: Option<PathBuf>,
    pub with_mc: bool,
    pub mc_samples: u64,
    pub seed: u64,
    pub flags: EvalFlags,
}

pub fn cmd_sweep(path: &Path, opts: SweepOptions) -> Result<(), CliError> {
    let scenario = Scenario::load(path)?;
    let engine = Engine::new(&scenario, opts.flags);
    let mc_cfg = McConfig {
        samples: opts.mc_samples,
        seed: opts.seed,
        streams: 1,
    };

    // All rows are computed before anything is written, so a failed grid
    // point never leaves a partial file behind.
    let mut rows = Vec::new();
    for omega_db in scenario.grid() {
        rows.push(Row {
            omega_db,
            op_closed: engine.closed(&scenario, omega_db)?,
            mc: opts
                .with_mc
                .then(|| engine.monte_carlo(&scenario, omega_db, &mc_cfg)),
        });
    }

    let mut csv = String::from(csv_header(opts.with_mc));
    csv.push('\n');
    for row in &rows {
        csv.push_str(&row.to_csv());
        csv.push('\n');
    }

    match &opts.out {
        Some(out_path) => std::fs::write(out_path, csv).map_err(|e| {
            let _ = std::fs::remove_file(out_path);
            CliError::Schema(format!("cannot write {}: {e}", out_path.display()))
        }),
        None => {
            print!("{csv}");
            Ok(())
        }
    }
}

pub struct VerifyOptions {
    pub grid: Option<usize>,
    pub mc_samples: u64,
    pub seed: u64,
    pub flags: EvalFlags,
}

pub fn cmd_verify(path: &Path, opts: VerifyOptions) -> Result<(), CliError> {
    let scenario = Scenario::load(path)?;
    let engine = Engine::new(&scenario, opts.flags);
    let mc_cfg = McConfig {
        samples: opts.mc_samples,
        seed: opts.seed,
        streams: 1,
    };
    let grid = match opts.grid {
        Some(n) => scenario.grid_of(n),
        None => scenario.grid(),
    };
    println!(
        "verifying {} (mode {}) over {} grid points, {} MC samples each",
        path.display(),
        scenario.mode.name(),
        grid.len(),
        opts.mc_samples
    );

    let mut failures: Vec<String> = Vec::new();
    let mut max_rel: f64 = 0.0;
    let mut outside_band = 0usize;

    for &omega_db in &grid {
        let closed = engine.closed(&scenario, omega_db)?;
        let oracle = engine.contour(&scenario, omega_db)?;
        let est = engine.monte_carlo(&scenario, omega_db, &mc_cfg);

        let rel = if closed >= CLOSED_FORM_FLOOR {
            let rel = (closed - oracle).abs() / closed;
            max_rel = max_rel.max(rel);
            if rel > CONTOUR_REL_TOL {
                failures.push(format!(
                    "omega_db={omega_db}: closed-vs-contour relative error {rel:.3e} exceeds {CONTOUR_REL_TOL:.0e}"
                ));
            }
            Some(rel)
        } else {
            None
        };

        // The band floor of one per-sample unit keeps the check meaningful
        // when zero hits make the binomial standard error collapse.
        let band = MC_SIGMA * est.std_err.max(1.0 / opts.mc_samples as f64);
        let in_band = (closed - est.p_hat).abs() <= band;
        if !in_band {
            outside_band += 1;
            failures.push(format!(
                "omega_db={omega_db}: closed form {closed:.6e} outside the MC {MC_SIGMA}-sigma band around {:.6e} (band {band:.3e})",
                est.p_hat
            ));
        }

        println!(
            "omega_db={omega_db} closed={} contour={} rel={} mc={} stderr={} band={}",
            prob(closed),
            prob(oracle),
            rel.map_or("skipped".to_string(), |r| format!("{r:.3e}")),
            prob(est.p_hat),
            prob(est.std_err),
            if in_band { "ok" } else { "FAIL" },
        );
    }

    println!(
        "max closed-vs-contour relative error: {max_rel:.3e} (tolerance {CONTOUR_REL_TOL:.0e}, floor {CLOSED_FORM_FLOOR:.0e})"
    );
    println!(
        "points outside the MC {MC_SIGMA}-sigma band: {outside_band} of {}",
        grid.len()
    );

    if failures.is_empty() {
        println!("verification passed");
        Ok(())
    } else {
        Err(CliError::VerifyFailed(format!(
            "verification failed at {} of {} grid points:\n  {}",
            failures.len(),
            grid.len(),
            failures.join("\n  ")
        )))
    }
}
