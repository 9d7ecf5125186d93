use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

// f64 math goes through `Float` when std is not linked
#[allow(unused_imports)]
use num_traits::Float;

use super::{generate_scenario, ReceiverChain, SimConfig, SimError};
use crate::splitting::{capacity_of_iteration, iteration_matrix, optimize_alpha, AlphaSample};
use crate::toeplitz::split_matrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Sum rate straight from the MMSE error covariance.
    Traditional,
    /// Sum rate of the splitting iteration matrix at the selected shift.
    SplitAlphaStar,
}

impl Method {
    pub const ALL: [Method; 2] = [Method::Traditional, Method::SplitAlphaStar];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Traditional => "traditional",
            Method::SplitAlphaStar => "split_alpha_star",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SplitDiagnostics {
    pub alpha_star: f64,
    pub sigma: f64,
    pub rho: f64,
    pub projection_residual: f64,
    pub capacity_bits: f64,
    pub bound_valid: bool,
}

/// What happened to one `(snr, frame)` cell.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameOutcome {
    pub snr_db: f64,
    pub frame: usize,
    pub traditional: Result<f64, String>,
    pub split: Result<SplitDiagnostics, String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SumRateRow {
    pub snr_db: f64,
    pub method: Method,
    pub mean_capacity_bits: f64,
    pub stderr_capacity_bits: f64,
    /// Only reported for [`Method::SplitAlphaStar`].
    pub mean_rho: Option<f64>,
    pub mean_sigma: Option<f64>,
    pub mean_projection_residual: Option<f64>,
    pub frames_ok: usize,
    pub frames_failed: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub snr_db: f64,
    pub frame: usize,
    pub alpha: f64,
    pub sigma: f64,
    pub rho: f64,
    pub capacity_bits: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrameFailure {
    pub snr_db: f64,
    pub frame: usize,
    pub method: Method,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ExperimentTable {
    /// Two rows per SNR point, in grid order, traditional first.
    pub sumrate: Vec<SumRateRow>,
    pub sweep: Vec<SweepRow>,
    pub failures: Vec<FrameFailure>,
    pub frames: Vec<FrameOutcome>,
}

impl ExperimentTable {
    pub fn row(&self, snr_db: f64, method: Method) -> Option<&SumRateRow> {
        self.sumrate
            .iter()
            .find(|r| r.snr_db == snr_db && r.method == method)
    }

    /// True when `method` failed on every frame of every SNR point.
    pub fn all_failed(&self, method: Method) -> bool {
        self.sumrate
            .iter()
            .filter(|r| r.method == method)
            .all(|r| r.frames_ok == 0)
    }
}

/// Mean and standard error of the mean, summed in input order.
fn mean_stderr(values: &[f64]) -> (f64, f64) {
    let n = values.len();
    if n == 0 {
        return (f64::NAN, f64::NAN);
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    if n == 1 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1) as f64;
    (mean, (var / n as f64).sqrt())
}

fn mean(values: impl Iterator<Item = f64>) -> f64 {
    let (sum, n) = values.fold((0.0, 0usize), |(s, n), v| (s + v, n + 1));
    if n == 0 {
        f64::NAN
    } else {
        sum / n as f64
    }
}

fn split_frame(
    chain: &ReceiverChain,
    cfg: &SimConfig,
) -> Result<(SplitDiagnostics, Vec<AlphaSample>), SimError> {
    let pair = split_matrix(&chain.error_cov)?;
    let search = optimize_alpha(&pair.circ, &pair.skew, &cfg.alpha_grid)?;
    let at_star = iteration_matrix(&pair.circ, &pair.skew, search.alpha_star)?;
    let capacity_bits = capacity_of_iteration(&at_star)?;
    Ok((
        SplitDiagnostics {
            alpha_star: search.alpha_star,
            sigma: search.sigma_at_star,
            rho: at_star.rho,
            projection_residual: pair.projection_residual,
            capacity_bits,
            bound_valid: search.bound_valid,
        },
        search.sweep,
    ))
}

/// Runs every `(snr, frame)` cell and aggregates per SNR point.
///
/// Per cell: draw the scenario, build the BD/whitening/MMSE chain, record the
/// traditional sum rate, then project `ε^mmse` onto Toeplitz matrices, split
/// it, search the shift and record the iteration matrix's rate and
/// diagnostics. Numerical failures are recorded per cell; only an invalid
/// configuration is an error.
pub fn run_experiment(cfg: &SimConfig) -> Result<ExperimentTable, SimError> {
    cfg.validate()?;
    let mut table = ExperimentTable::default();

    for &snr_db in &cfg.snr_db_grid {
        let mut outcomes = Vec::with_capacity(cfg.frames);
        for frame in 0..cfg.frames {
            let scenario = generate_scenario(cfg, snr_db, frame);
            let outcome = match ReceiverChain::build(&scenario) {
                Err(e) => {
                    let msg = e.to_string();
                    FrameOutcome {
                        snr_db,
                        frame,
                        traditional: Err(msg.clone()),
                        split: Err(msg),
                    }
                }
                Ok(chain) => {
                    let split = match split_frame(&chain, cfg) {
                        Ok((diag, sweep)) => {
                            table.sweep.extend(sweep.iter().map(|s| SweepRow {
                                snr_db,
                                frame,
                                alpha: s.alpha,
                                sigma: s.sigma,
                                rho: s.rho,
                                capacity_bits: s.capacity_bits,
                            }));
                            Ok(diag)
                        }
                        Err(e) => Err(e.to_string()),
                    };
                    FrameOutcome {
                        snr_db,
                        frame,
                        traditional: Ok(chain.capacity_bits),
                        split,
                    }
                }
            };
            if let Err(message) = &outcome.traditional {
                table.failures.push(FrameFailure {
                    snr_db,
                    frame,
                    method: Method::Traditional,
                    message: message.clone(),
                });
            }
            if let Err(message) = &outcome.split {
                table.failures.push(FrameFailure {
                    snr_db,
                    frame,
                    method: Method::SplitAlphaStar,
                    message: message.clone(),
                });
            }
            outcomes.push(outcome);
        }

        let trad: Vec<f64> = outcomes
            .iter()
            .filter_map(|o| o.traditional.clone().ok())
            .collect();
        let (m, se) = mean_stderr(&trad);
        table.sumrate.push(SumRateRow {
            snr_db,
            method: Method::Traditional,
            mean_capacity_bits: m,
            stderr_capacity_bits: se,
            mean_rho: None,
            mean_sigma: None,
            mean_projection_residual: None,
            frames_ok: trad.len(),
            frames_failed: outcomes.len() - trad.len(),
        });

        let split: Vec<&SplitDiagnostics> = outcomes
            .iter()
            .filter_map(|o| o.split.as_ref().ok())
            .collect();
        let caps: Vec<f64> = split.iter().map(|d| d.capacity_bits).collect();
        let (m, se) = mean_stderr(&caps);
        table.sumrate.push(SumRateRow {
            snr_db,
            method: Method::SplitAlphaStar,
            mean_capacity_bits: m,
            stderr_capacity_bits: se,
            mean_rho: Some(mean(split.iter().map(|d| d.rho))),
            mean_sigma: Some(mean(split.iter().map(|d| d.sigma))),
            mean_projection_residual: Some(mean(split.iter().map(|d| d.projection_residual))),
            frames_ok: split.len(),
            frames_failed: outcomes.len() - split.len(),
        });

        table.frames.extend(outcomes);
    }
    Ok(table)
}

impl core::fmt::Display for ExperimentTable {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        writeln!(
            f,
            "{:>8}  {:<17} {:>12} {:>10} {:>8}",
            "snr_db", "method", "capacity", "stderr", "ok/fail"
        )?;
        for r in &self.sumrate {
            let counts = format!("{}/{}", r.frames_ok, r.frames_failed);
            writeln!(
                f,
                "{:>8.1}  {:<17} {:>12.4} {:>10.4} {:>8}",
                r.snr_db,
                r.method.as_str(),
                r.mean_capacity_bits,
                r.stderr_capacity_bits,
                counts
            )?;
        }
        Ok(())
    }
}
